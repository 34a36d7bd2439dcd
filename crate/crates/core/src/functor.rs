//! Functors on explicit modules: Jacquet and co-Jacquet restriction to
//! generalized eigenspaces, Hermitian duals through the anti-involution,
//! and the simultaneous y-weight fingerprint used to compare K-classes.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hmodule::HModule;
use crate::matrix::Matrix;
use crate::perm::Perm;
use crate::scalar::Scalar;

/// Basis (as matrix columns) of the generalized `a`-eigenspace of `op`,
/// computed by iterating kernels of increasing powers of `op - a` until the
/// dimension stabilizes. The result equals the kernel of `(op - a)^dim`.
pub fn generalized_eigenspace(op: &Matrix, a: &Scalar) -> Matrix {
    let n = op.rows();
    let shifted = op.sub_scaled_identity(a);
    let mut power = shifted.clone();
    let mut kernel = power.nullspace();
    loop {
        if kernel.cols() == 0 || kernel.cols() == n {
            return kernel;
        }
        power = power.mul(&shifted);
        let next = power.nullspace();
        if next.cols() == kernel.cols() {
            return kernel;
        }
        kernel = next;
    }
}

/// Expresses the action of `op` on the span of `basis` in the basis
/// coordinates; errors when the span is not `op`-invariant.
pub fn restrict_to(basis: &Matrix, op: &Matrix, context: &str) -> Result<Matrix> {
    basis.solve_exact(&op.mul(basis), context)
}

/// Jacquet functor at `a`: the generalized `a`-eigenspace of `y_1`, as a
/// module over the subalgebra generated by `s_2.., y_2..` reindexed down
/// by one.
pub fn jacquet(module: &HModule, a: &Scalar) -> Result<HModule> {
    if module.m() == 0 {
        return Err(Error::NoGenerators);
    }
    let basis = generalized_eigenspace(module.y_mat(0), a);
    let s = module
        .s_mats()
        .iter()
        .skip(1)
        .enumerate()
        .map(|(idx, mat)| restrict_to(&basis, mat, &format!("s{}", idx + 2)))
        .collect::<Result<Vec<Matrix>>>()?;
    let y = module
        .y_mats()
        .iter()
        .skip(1)
        .enumerate()
        .map(|(idx, mat)| restrict_to(&basis, mat, &format!("y{}", idx + 2)))
        .collect::<Result<Vec<Matrix>>>()?;
    let labels = (0..basis.cols()).map(|i| format!("e{i}")).collect();
    HModule::new(module.m() - 1, s, y, labels, module.eigen_candidates().clone())
}

/// Co-Jacquet functor at `a`: the generalized `a`-eigenspace of `y_m`, as a
/// module over the subalgebra generated by `s_1..s_{m-2}, y_1..y_{m-1}`
/// with unchanged indices.
pub fn cojacquet(module: &HModule, a: &Scalar) -> Result<HModule> {
    let m = module.m();
    if m == 0 {
        return Err(Error::NoGenerators);
    }
    let basis = generalized_eigenspace(module.y_mat(m - 1), a);
    let keep_s = m.saturating_sub(2);
    let s = module.s_mats()[..keep_s]
        .iter()
        .enumerate()
        .map(|(idx, mat)| restrict_to(&basis, mat, &format!("s{}", idx + 1)))
        .collect::<Result<Vec<Matrix>>>()?;
    let y = module.y_mats()[..m - 1]
        .iter()
        .enumerate()
        .map(|(idx, mat)| restrict_to(&basis, mat, &format!("y{}", idx + 1)))
        .collect::<Result<Vec<Matrix>>>()?;
    let labels = (0..basis.cols()).map(|i| format!("e{i}")).collect();
    HModule::new(m - 1, s, y, labels, module.eigen_candidates().clone())
}

/// Hermitian dual: same dimension, with generator `h` acting by the
/// conjugate transpose of `h*` on the original module, for the
/// anti-involution fixing the `s_i` and sending
/// `y_i` to `-w_0 y_{m+1-i} w_0^{-1}`. The longest element `w_0` is realized
/// as the product of the s-matrices along its canonical reduced word.
pub fn hermitian_dual(module: &HModule) -> HModule {
    let m = module.m();
    let dim = module.dim();
    let word = Perm::longest(m.max(1)).reduced_word();
    let mut w0 = Matrix::identity(dim);
    for &k in &word {
        w0 = w0.mul(module.s_mat(k));
    }
    let mut w0_inv = Matrix::identity(dim);
    for &k in word.iter().rev() {
        w0_inv = w0_inv.mul(module.s_mat(k));
    }
    let s = module
        .s_mats()
        .iter()
        .map(Matrix::conj_transpose)
        .collect();
    let y = (0..m)
        .map(|j| {
            let inner = w0.mul(module.y_mat(m - 1 - j)).mul(&w0_inv);
            inner.scale(&-Scalar::one()).conj_transpose()
        })
        .collect();
    let labels = module
        .basis_labels()
        .iter()
        .map(|l| format!("{l}*"))
        .collect();
    let candidates = module
        .eigen_candidates()
        .iter()
        .map(Scalar::neg_conj)
        .collect();
    HModule::new(m, s, y, labels, candidates).expect("dual preserves shape")
}

/// Multiset of simultaneous generalized y-eigenvalue tuples, splitting by
/// `y_1` first and recursing on the restriction of the remaining `y`s.
pub fn y_weight_multiset(module: &HModule) -> Result<BTreeMap<Vec<Scalar>, usize>> {
    let candidates: Vec<Scalar> = module.eigen_candidates().iter().cloned().collect();
    let ys: Vec<Matrix> = module.y_mats().to_vec();
    let mut out = BTreeMap::new();
    let mut prefix = Vec::new();
    split_weights(&ys, module.dim(), &candidates, &mut prefix, &mut out)?;
    Ok(out)
}

fn split_weights(
    ys: &[Matrix],
    dim: usize,
    candidates: &[Scalar],
    prefix: &mut Vec<Scalar>,
    out: &mut BTreeMap<Vec<Scalar>, usize>,
) -> Result<()> {
    if dim == 0 {
        return Ok(());
    }
    let Some((first, rest)) = ys.split_first() else {
        *out.entry(prefix.clone()).or_insert(0) += dim;
        return Ok(());
    };
    let mut accounted = 0;
    for a in candidates {
        let basis = generalized_eigenspace(first, a);
        if basis.cols() == 0 {
            continue;
        }
        accounted += basis.cols();
        let restricted = rest
            .iter()
            .map(|ym| restrict_to(&basis, ym, "y (commuting family)"))
            .collect::<Result<Vec<Matrix>>>()?;
        prefix.push(a.clone());
        split_weights(&restricted, basis.cols(), candidates, prefix, out)?;
        prefix.pop();
    }
    if accounted != dim {
        return Err(Error::CandidateSetIncomplete { found: accounted, dim });
    }
    Ok(())
}

/// Generalized eigenvalues of `y_1` with multiplicities, in scalar order.
/// The dimensions over the candidate set must account for the whole module.
pub fn spectrum_y1(module: &HModule) -> Result<Vec<(Scalar, usize)>> {
    if module.m() == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut accounted = 0;
    for a in module.eigen_candidates() {
        let d = generalized_eigenspace(module.y_mat(0), a).cols();
        if d > 0 {
            accounted += d;
            out.push((a.clone(), d));
        }
    }
    if accounted != module.dim() {
        return Err(Error::CandidateSetIncomplete { found: accounted, dim: module.dim() });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hmodule::DEFAULT_DIM_CAP;
    use crate::segment::Segment;
    use crate::weight::Weight;

    fn sc(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    fn seg(s: &str) -> Segment {
        s.parse().unwrap()
    }

    fn st(s: &str) -> HModule {
        HModule::steinberg(&seg(s))
    }

    fn fingerprint(m: &HModule) -> BTreeMap<Vec<Scalar>, usize> {
        y_weight_multiset(m).unwrap()
    }

    #[test]
    fn jacquet_steinberg_start() {
        let jac = jacquet(&st("[0,2]"), &sc("0")).unwrap();
        assert_eq!(jac.m(), 2);
        assert_eq!(jac.dim(), 1);
        assert_eq!(fingerprint(&jac), fingerprint(&st("[1,2]")));
        assert!(jac.check_relations().pass);
    }

    #[test]
    fn jacquet_steinberg_miss() {
        let jac = jacquet(&st("[0,2]"), &sc("5")).unwrap();
        assert_eq!(jac.dim(), 0);
        assert_eq!(jac.m(), 2);
        // interior points do not count as start points
        assert_eq!(jacquet(&st("[0,2]"), &sc("1")).unwrap().dim(), 0);
    }

    #[test]
    fn jacquet_gaussian_segment() {
        let base = Segment::new(sc("1/2+1 i"), sc("5/2+1 i")).unwrap();
        let jac = jacquet(&HModule::steinberg(&base), &sc("1/2+1 i")).unwrap();
        let shifted = Segment::new(sc("3/2+1 i"), sc("5/2+1 i")).unwrap();
        assert_eq!(fingerprint(&jac), fingerprint(&HModule::steinberg(&shifted)));
    }

    #[test]
    fn jacquet_of_gamma_is_full_at_half() {
        let lam = Weight::from_ints(&[2, 1], &[0, 0]);
        let module = HModule::gamma_module(&lam, DEFAULT_DIM_CAP).unwrap();
        let jac = jacquet(&module, &sc("1/2")).unwrap();
        assert_eq!(jac.dim(), 3);
        assert_eq!(jac.m(), 2);
        assert!(jac.check_relations().pass);
    }

    #[test]
    fn jacquet_requires_generators() {
        assert!(matches!(
            jacquet(&HModule::trivial(), &sc("0")),
            Err(Error::NoGenerators)
        ));
    }

    #[test]
    fn cojacquet_steinberg() {
        let co = cojacquet(&st("[0,2]"), &sc("2")).unwrap();
        assert_eq!(co.dim(), 1);
        assert_eq!(fingerprint(&co), fingerprint(&st("[0,1]")));
        assert_eq!(cojacquet(&st("[0,2]"), &sc("0")).unwrap().dim(), 0);
    }

    #[test]
    fn eigenspace_dims_sum_to_dim() {
        let lam = Weight::from_ints(&[2, 1], &[0, -3]);
        let module = HModule::gamma_module(&lam, DEFAULT_DIM_CAP).unwrap();
        assert_eq!(module.dim(), 15);
        let total: usize = module
            .eigen_candidates()
            .clone()
            .iter()
            .map(|a| jacquet(&module, a).unwrap().dim())
            .sum();
        assert_eq!(total, 15);
        let cototal: usize = module
            .eigen_candidates()
            .clone()
            .iter()
            .map(|a| cojacquet(&module, a).unwrap().dim())
            .sum();
        assert_eq!(cototal, 15);
    }

    #[test]
    fn spectrum_examples() {
        let lam = Weight::from_ints(&[2, 1], &[0, 0]);
        let module = HModule::gamma_module(&lam, DEFAULT_DIM_CAP).unwrap();
        assert_eq!(spectrum_y1(&module).unwrap(), vec![(sc("1/2"), 3)]);

        // mu = (2, 4): multiplicities 5!/4! = 5 and 5!/(2!*3!) = 10
        let lam = Weight::from_ints(&[2, 1], &[0, -3]);
        let module = HModule::gamma_module(&lam, DEFAULT_DIM_CAP).unwrap();
        assert_eq!(
            spectrum_y1(&module).unwrap(),
            vec![(sc("-5/2"), 10), (sc("1/2"), 5)]
        );

        assert_eq!(spectrum_y1(&st("[3,5]")).unwrap(), vec![(sc("3"), 1)]);
    }

    #[test]
    fn spectrum_detects_missing_candidates() {
        let bare = HModule::new(
            1,
            vec![],
            vec![Matrix::from_rows(vec![vec![sc("5")]])],
            vec!["v".into()],
            Default::default(),
        )
        .unwrap();
        assert!(matches!(
            spectrum_y1(&bare),
            Err(Error::CandidateSetIncomplete { found: 0, dim: 1 })
        ));
    }

    #[test]
    fn fingerprints() {
        assert_eq!(
            fingerprint(&st("[1/2,5/2]")),
            [(vec![sc("1/2"), sc("3/2"), sc("5/2")], 1)].into_iter().collect()
        );
        let ind = st("[0,0]").induce(&st("[5,5]"), DEFAULT_DIM_CAP).unwrap();
        assert_eq!(
            fingerprint(&ind),
            [
                (vec![sc("0"), sc("5")], 1),
                (vec![sc("5"), sc("0")], 1),
            ]
            .into_iter()
            .collect()
        );
        let zero = jacquet(&st("[0,0]"), &sc("7")).unwrap();
        assert!(fingerprint(&zero).is_empty());
    }

    #[test]
    fn dual_of_steinberg_is_negated_conjugate() {
        let dual = hermitian_dual(&st("[0,2]"));
        assert_eq!(fingerprint(&dual), fingerprint(&st("[-2,0]")));
        assert!(dual.check_relations().pass);

        let gauss = Segment::new(sc("i-1"), sc("i+1")).unwrap();
        let dual = hermitian_dual(&HModule::steinberg(&gauss));
        let expect = HModule::steinberg(&gauss.negate_conjugate());
        assert_eq!(fingerprint(&dual), fingerprint(&expect));
    }

    #[test]
    fn dual_reverses_products() {
        let lam = Weight::from_ints(&[2, 1], &[0, 0]);
        let module = HModule::gamma_module(&lam, DEFAULT_DIM_CAP).unwrap();
        let dual = hermitian_dual(&module);
        assert!(dual.check_relations().pass);
        let reversed = st("[-1/2,-1/2]")
            .induce(&st("[-3/2,-1/2]"), DEFAULT_DIM_CAP)
            .unwrap();
        assert_eq!(fingerprint(&dual), fingerprint(&reversed));
    }

    #[test]
    fn double_dual_fingerprint() {
        let lam = Weight::from_ints(&[2, 1], &[0, 0]);
        let module = HModule::gamma_module(&lam, DEFAULT_DIM_CAP).unwrap();
        let double = hermitian_dual(&hermitian_dual(&module));
        assert_eq!(fingerprint(&double), fingerprint(&module));
    }

    #[test]
    fn dual_intertwines_jacquet_dims() {
        let lam = Weight::from_ints(&[2, 1], &[0, 0]);
        let module = HModule::gamma_module(&lam, DEFAULT_DIM_CAP).unwrap();
        let a = sc("1/2");
        let lhs = jacquet(&module, &a).unwrap().dim();
        let rhs = cojacquet(&hermitian_dual(&module), &a.neg_conj()).unwrap().dim();
        assert_eq!(lhs, 3);
        assert_eq!(rhs, 3);
    }
}
