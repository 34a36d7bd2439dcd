//! Finite-dimensional modules over the graded Hecke algebra, given by exact
//! generator matrices. Parabolic induction is computed by straightening:
//! basis vectors are `d (x) (b1 (x) b2)` over minimal coset representatives
//! `d`, the symmetric group acts by regrouping cosets, and the polynomial
//! generators act by recursively exchanging `y` letters through a reduced
//! word of `d`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{add_into, Matrix, SparseVec};
use crate::perm::{coset_factorize, is_min_coset_rep, min_coset_reps, Perm};
use crate::scalar::Scalar;
use crate::segment::Segment;
use crate::weight::Weight;

pub const DEFAULT_DIM_CAP: usize = 2000;

/// Default dimension cap, overridable through the `GHK_DIM_CAP` environment
/// variable.
pub fn default_dim_cap() -> usize {
    std::env::var("GHK_DIM_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_DIM_CAP)
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out: u128 = 1;
    for i in 0..k {
        out = out * (n - i) as u128 / (i + 1) as u128;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HModule {
    m: usize,
    dim: usize,
    s: Vec<Matrix>,
    y: Vec<Matrix>,
    basis_labels: Vec<String>,
    eigen_candidates: BTreeSet<Scalar>,
}

impl HModule {
    pub fn new(
        m: usize,
        s: Vec<Matrix>,
        y: Vec<Matrix>,
        basis_labels: Vec<String>,
        eigen_candidates: BTreeSet<Scalar>,
    ) -> Result<Self> {
        let dim = basis_labels.len();
        if s.len() != m.saturating_sub(1) {
            return Err(Error::ModuleData(format!(
                "expected {} s-matrices for m={m}, got {}",
                m.saturating_sub(1),
                s.len()
            )));
        }
        if y.len() != m {
            return Err(Error::ModuleData(format!(
                "expected {m} y-matrices, got {}",
                y.len()
            )));
        }
        for mat in s.iter().chain(y.iter()) {
            if mat.rows() != dim || mat.cols() != dim {
                return Err(Error::ModuleData(format!(
                    "generator matrix is {}x{}, expected {dim}x{dim}",
                    mat.rows(),
                    mat.cols()
                )));
            }
        }
        Ok(HModule { m, dim, s, y, basis_labels, eigen_candidates })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Matrix of `s_{k+1}` (0-based `k < m-1`).
    pub fn s_mat(&self, k: usize) -> &Matrix {
        &self.s[k]
    }

    /// Matrix of `y_{j+1}` (0-based `j < m`).
    pub fn y_mat(&self, j: usize) -> &Matrix {
        &self.y[j]
    }

    pub fn s_mats(&self) -> &[Matrix] {
        &self.s
    }

    pub fn y_mats(&self) -> &[Matrix] {
        &self.y
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn eigen_candidates(&self) -> &BTreeSet<Scalar> {
        &self.eigen_candidates
    }

    /// The trivial module over the degenerate algebra with no generators.
    pub fn trivial() -> HModule {
        HModule {
            m: 0,
            dim: 1,
            s: Vec::new(),
            y: Vec::new(),
            basis_labels: vec!["1".to_string()],
            eigen_candidates: BTreeSet::new(),
        }
    }

    /// Steinberg module of a segment: the symmetric group acts by sign and
    /// `y_j` by the `j`-th point. The empty segment gives the trivial module
    /// with `m = 0`.
    pub fn steinberg(seg: &Segment) -> HModule {
        let points = seg.points();
        let m = points.len();
        if m == 0 {
            return HModule::trivial();
        }
        let minus_one = Matrix::from_rows(vec![vec![-Scalar::one()]]);
        let s = vec![minus_one; m - 1];
        let y = points
            .iter()
            .map(|p| Matrix::from_rows(vec![vec![p.clone()]]))
            .collect();
        HModule {
            m,
            dim: 1,
            s,
            y,
            basis_labels: vec!["v".to_string()],
            eigen_candidates: points.into_iter().collect(),
        }
    }

    /// Evaluation module: the 1-dimensional module with `y_1` acting by `c`.
    pub fn evaluation(c: &Scalar) -> HModule {
        HModule {
            m: 1,
            dim: 1,
            s: Vec::new(),
            y: vec![Matrix::from_rows(vec![vec![c.clone()]])],
            basis_labels: vec!["v".to_string()],
            eigen_candidates: [c.clone()].into_iter().collect(),
        }
    }

    /// Parabolic induction `self x other`, of dimension
    /// `binomial(m1+m2, m1) * dim(self) * dim(other)`.
    pub fn induce(&self, other: &HModule, dim_cap: usize) -> Result<HModule> {
        let m = self.m + other.m;
        let predicted =
            binomial(m, self.m) * self.dim as u128 * other.dim as u128;
        if predicted > dim_cap as u128 {
            return Err(Error::DimensionCap {
                dim: predicted.try_into().unwrap_or(usize::MAX),
                cap: dim_cap,
            });
        }
        let mut candidates = self.eigen_candidates.clone();
        candidates.extend(other.eigen_candidates.iter().cloned());

        let engine = Inducer::new(self, other);
        let dim = engine.total_dim();
        debug_assert_eq!(dim as u128, predicted);

        let mut s = Vec::with_capacity(m.saturating_sub(1));
        for k in 0..m.saturating_sub(1) {
            let columns = (0..dim)
                .map(|t| engine.apply_s_elem(k, &unit_vec(t)))
                .collect();
            s.push(Matrix::from_columns(dim, columns));
        }
        let mut y = Vec::with_capacity(m);
        for j in 0..m {
            let columns = (0..dim).map(|t| engine.y_column(j, t)).collect();
            y.push(Matrix::from_columns(dim, columns));
        }

        let basis_labels = (0..dim).map(|t| engine.label(t)).collect();
        HModule::new(m, s, y, basis_labels, candidates)
    }

    /// The module image of a principal series: the left-nested product of
    /// Steinberg modules on the segments of the weight.
    pub fn gamma_module(lam: &Weight, dim_cap: usize) -> Result<HModule> {
        for (k, mu) in lam.mu().iter().enumerate() {
            if *mu < num::BigInt::from(0) {
                return Err(Error::NegativeMu(k + 1));
            }
        }
        let mut factors = lam
            .segments()
            .into_iter()
            .filter(|seg| !seg.is_empty());
        let Some(first) = factors.next() else {
            return Ok(HModule::trivial());
        };
        let mut acc = HModule::steinberg(&first);
        for seg in factors {
            acc = acc.induce(&HModule::steinberg(&seg), dim_cap)?;
        }
        Ok(acc)
    }

    /// Evaluates every defining relation as an exact matrix identity, in a
    /// fixed order, and reports each outcome.
    pub fn check_relations(&self) -> RelationReport {
        let mut checks = Vec::new();
        let mut push = |name: String, pass: bool| checks.push(RelationCheck { name, pass });
        let nm1 = self.m.saturating_sub(1);
        let id = Matrix::identity(self.dim);

        for k in 0..nm1 {
            push(
                format!("s{0}*s{0} = 1", k + 1),
                self.s[k].mul(&self.s[k]) == id,
            );
        }
        for k in 0..nm1.saturating_sub(1) {
            let lhs = self.s[k].mul(&self.s[k + 1]).mul(&self.s[k]);
            let rhs = self.s[k + 1].mul(&self.s[k]).mul(&self.s[k + 1]);
            push(
                format!("s{0}*s{1}*s{0} = s{1}*s{0}*s{1}", k + 1, k + 2),
                lhs == rhs,
            );
        }
        for k in 0..nm1 {
            for l in k + 2..nm1 {
                push(
                    format!("s{}*s{} = s{}*s{}", k + 1, l + 1, l + 1, k + 1),
                    self.s[k].mul(&self.s[l]) == self.s[l].mul(&self.s[k]),
                );
            }
        }
        for k in 0..nm1 {
            let lhs = self.s[k].mul(&self.y[k]).sub(&self.y[k + 1].mul(&self.s[k]));
            push(format!("s{0}*y{0} - y{1}*s{0} = 1", k + 1, k + 2), lhs == id);
        }
        for k in 0..nm1 {
            for j in 0..self.m {
                if j == k || j == k + 1 {
                    continue;
                }
                push(
                    format!("s{}*y{} = y{}*s{}", k + 1, j + 1, j + 1, k + 1),
                    self.s[k].mul(&self.y[j]) == self.y[j].mul(&self.s[k]),
                );
            }
        }
        for i in 0..self.m {
            for j in i + 1..self.m {
                push(
                    format!("y{}*y{} = y{}*y{}", i + 1, j + 1, j + 1, i + 1),
                    self.y[i].mul(&self.y[j]) == self.y[j].mul(&self.y[i]),
                );
            }
        }

        let first_failure = checks.iter().find(|c| !c.pass).map(|c| c.name.clone());
        let pass = first_failure.is_none();
        RelationReport {
            m: self.m,
            dim: self.dim,
            checks,
            pass,
            first_failure,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(HModuleJson::from(self)).expect("module serialization")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&HModuleJson::from(self)).expect("module serialization")
    }

    pub fn from_json_str(text: &str) -> Result<HModule> {
        let raw: HModuleJson = serde_json::from_str(text)?;
        raw.try_into()
    }
}

fn unit_vec(t: usize) -> SparseVec {
    let mut v = SparseVec::new();
    v.insert(t, Scalar::one());
    v
}

/// Straightening engine for one induction. Basis index layout:
/// `t = (rep_idx * dim1 + b1) * dim2 + b2`.
struct Inducer<'a> {
    left: &'a HModule,
    right: &'a HModule,
    m: usize,
    m1: usize,
    d1: usize,
    d2: usize,
    reps: Vec<Perm>,
    rep_index: HashMap<Vec<usize>, usize>,
    y_memo: std::cell::RefCell<HashMap<(usize, Vec<usize>, usize), SparseVec>>,
}

impl<'a> Inducer<'a> {
    fn new(left: &'a HModule, right: &'a HModule) -> Self {
        let m = left.m + right.m;
        let reps = min_coset_reps(m, left.m);
        let rep_index = reps
            .iter()
            .enumerate()
            .map(|(i, p)| (p.images().to_vec(), i))
            .collect();
        Inducer {
            left,
            right,
            m,
            m1: left.m,
            d1: left.dim,
            d2: right.dim,
            reps,
            rep_index,
            y_memo: Default::default(),
        }
    }

    fn total_dim(&self) -> usize {
        self.reps.len() * self.d1 * self.d2
    }

    fn block(&self) -> usize {
        self.d1 * self.d2
    }

    fn label(&self, t: usize) -> String {
        let (rep, beta) = (t / self.block(), t % self.block());
        let (b1, b2) = (beta / self.d2, beta % self.d2);
        format!(
            "{}|{}|{}",
            self.reps[rep].one_line(),
            self.left.basis_labels[b1],
            self.right.basis_labels[b2]
        )
    }

    /// Applies a generator of one tensor factor to a factor vector
    /// (indexed by `beta = b1 * d2 + b2`).
    fn apply_factor(&self, mat_side: FactorOp, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&beta, c) in v {
            let (b1, b2) = (beta / self.d2, beta % self.d2);
            match mat_side {
                FactorOp::LeftS(g) => {
                    for (&r, a) in self.left.s[g].column(b1) {
                        add_into(&mut out, r * self.d2 + b2, &(a * c));
                    }
                }
                FactorOp::RightS(g) => {
                    for (&r, a) in self.right.s[g].column(b2) {
                        add_into(&mut out, b1 * self.d2 + r, &(a * c));
                    }
                }
                FactorOp::LeftY(g) => {
                    for (&r, a) in self.left.y[g].column(b1) {
                        add_into(&mut out, r * self.d2 + b2, &(a * c));
                    }
                }
                FactorOp::RightY(g) => {
                    for (&r, a) in self.right.y[g].column(b2) {
                        add_into(&mut out, b1 * self.d2 + r, &(a * c));
                    }
                }
            }
        }
        out
    }

    /// Writes `sigma(w)(1 (x) fv)` into `out`, straightening `w` into
    /// `d * (p1 x p2)` and letting the block part act through the factors.
    fn norm_into(&self, w: &Perm, fv: SparseVec, out: &mut SparseVec) {
        let (d, p1, p2) = coset_factorize(w, self.m1);
        let mut v = fv;
        for &k in p1.reduced_word().iter().rev() {
            v = self.apply_factor(FactorOp::LeftS(k), &v);
        }
        for &k in p2.reduced_word().iter().rev() {
            v = self.apply_factor(FactorOp::RightS(k), &v);
        }
        let base = self.rep_index[d.images()] * self.block();
        for (beta, c) in v {
            add_into(out, base + beta, &c);
        }
    }

    /// Module-level action of `s_{k+1}` on an element in the flattened basis.
    fn apply_s_elem(&self, k: usize, elem: &SparseVec) -> SparseVec {
        let s_k = Perm::adjacent_transposition(self.m, k);
        let mut out = SparseVec::new();
        for (&t, c) in elem {
            let (rep, beta) = (t / self.block(), t % self.block());
            let moved = s_k.compose(&self.reps[rep]);
            let mut fv = SparseVec::new();
            fv.insert(beta, c.clone());
            self.norm_into(&moved, fv, &mut out);
        }
        out
    }

    /// `y_{j+1} * sigma(w)(1 (x) e_beta)` via the exchange rules
    /// `y_k s_k = s_k y_{k+1} + 1` and `y_{k+1} s_k = s_k y_k - 1`
    /// (1-based), peeling left descents of `w`.
    fn act_y_unit(&self, j: usize, w: &Perm, beta: usize) -> SparseVec {
        let key = (j, w.images().to_vec(), beta);
        if let Some(hit) = self.y_memo.borrow().get(&key) {
            return hit.clone();
        }
        let result = match w.left_descent() {
            None => {
                let mut fv = SparseVec::new();
                fv.insert(beta, Scalar::one());
                let acted = if j < self.m1 {
                    self.apply_factor(FactorOp::LeftY(j), &fv)
                } else {
                    self.apply_factor(FactorOp::RightY(j - self.m1), &fv)
                };
                let mut out = SparseVec::new();
                let base = self.rep_index[Perm::identity(self.m).images()] * self.block();
                for (b, c) in acted {
                    add_into(&mut out, base + b, &c);
                }
                out
            }
            Some(k) => {
                let shorter = Perm::adjacent_transposition(self.m, k).compose(w);
                let (jp, corr) = if j == k {
                    (k + 1, 1)
                } else if j == k + 1 {
                    (k, -1)
                } else {
                    (j, 0)
                };
                let inner = self.act_y_unit(jp, &shorter, beta);
                let mut out = self.apply_s_elem(k, &inner);
                if corr != 0 {
                    let mut straightened = SparseVec::new();
                    let mut fv = SparseVec::new();
                    fv.insert(beta, Scalar::one());
                    self.norm_into(&shorter, fv, &mut straightened);
                    let c = Scalar::from_int(corr);
                    for (i, v) in straightened {
                        add_into(&mut out, i, &(&v * &c));
                    }
                }
                out
            }
        };
        self.y_memo.borrow_mut().insert(key, result.clone());
        result
    }

    fn y_column(&self, j: usize, t: usize) -> SparseVec {
        let (rep, beta) = (t / self.block(), t % self.block());
        debug_assert!(is_min_coset_rep(&self.reps[rep], self.m1));
        self.act_y_unit(j, &self.reps[rep], beta)
    }
}

#[derive(Clone, Copy)]
enum FactorOp {
    LeftS(usize),
    RightS(usize),
    LeftY(usize),
    RightY(usize),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RelationCheck {
    pub name: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RelationReport {
    pub m: usize,
    pub dim: usize,
    pub checks: Vec<RelationCheck>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "relations for m={} dim={}: {} ({} checks)",
            self.m,
            self.dim,
            if self.pass { "pass" } else { "FAIL" },
            self.checks.len()
        )?;
        if let Some(first) = &self.first_failure {
            writeln!(f, "first failure: {first}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct HModuleJson {
    m: usize,
    dim: usize,
    basis_labels: Vec<String>,
    eigen_candidates: Vec<String>,
    s: Vec<Vec<String>>,
    y: Vec<Vec<String>>,
}

impl From<&HModule> for HModuleJson {
    fn from(module: &HModule) -> Self {
        HModuleJson {
            m: module.m,
            dim: module.dim,
            basis_labels: module.basis_labels.clone(),
            eigen_candidates: module
                .eigen_candidates
                .iter()
                .map(Scalar::to_string)
                .collect(),
            s: module.s.iter().map(Matrix::to_row_major_strings).collect(),
            y: module.y.iter().map(Matrix::to_row_major_strings).collect(),
        }
    }
}

impl TryFrom<HModuleJson> for HModule {
    type Error = Error;

    fn try_from(raw: HModuleJson) -> Result<HModule> {
        if raw.basis_labels.len() != raw.dim {
            return Err(Error::ModuleData(format!(
                "dim {} does not match {} basis labels",
                raw.dim,
                raw.basis_labels.len()
            )));
        }
        let parse_all = |data: &[Vec<String>]| -> Result<Vec<Matrix>> {
            data.iter()
                .map(|flat| Matrix::from_row_major_strings(raw.dim, raw.dim, flat))
                .collect()
        };
        let candidates = raw
            .eigen_candidates
            .iter()
            .map(|s| s.parse::<Scalar>())
            .collect::<Result<BTreeSet<Scalar>>>()?;
        HModule::new(
            raw.m,
            parse_all(&raw.s)?,
            parse_all(&raw.y)?,
            raw.basis_labels,
            candidates,
        )
    }
}

impl Serialize for HModule {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        HModuleJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HModule {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let raw = HModuleJson::deserialize(deserializer)?;
        raw.try_into().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    fn seg(text: &str) -> Segment {
        text.parse().unwrap()
    }

    #[test]
    fn steinberg_action() {
        let st = HModule::steinberg(&seg("[0,1]"));
        assert_eq!(st.m(), 2);
        assert_eq!(st.dim(), 1);
        assert_eq!(st.s_mat(0).get(0, 0), -Scalar::one());
        assert_eq!(st.y_mat(0).get(0, 0), Scalar::zero());
        assert_eq!(st.y_mat(1).get(0, 0), Scalar::one());
        assert!(st.check_relations().pass);

        assert_eq!(HModule::steinberg(&Segment::Empty).m(), 0);
    }

    #[test]
    fn evaluation_matches_singleton_steinberg() {
        let c = sc("3/2 i-1");
        let ev = HModule::evaluation(&c);
        let st = HModule::steinberg(&Segment::singleton(c.clone()));
        assert_eq!(ev.m(), st.m());
        assert_eq!(ev.y_mat(0), st.y_mat(0));
        assert_eq!(ev.eigen_candidates(), st.eigen_candidates());
    }

    #[test]
    fn induce_two_singletons_matrices() {
        let a = HModule::steinberg(&seg("[0,0]"));
        let b = HModule::steinberg(&seg("[5,5]"));
        let ind = a.induce(&b, 100).unwrap();
        assert_eq!(ind.dim(), 2);
        let five = sc("5");
        assert_eq!(
            ind.y_mat(0),
            &Matrix::from_rows(vec![
                vec![Scalar::zero(), Scalar::one()],
                vec![Scalar::zero(), five.clone()],
            ])
        );
        assert_eq!(
            ind.y_mat(1),
            &Matrix::from_rows(vec![
                vec![five.clone(), -Scalar::one()],
                vec![Scalar::zero(), Scalar::zero()],
            ])
        );
        assert_eq!(
            ind.s_mat(0),
            &Matrix::from_rows(vec![
                vec![Scalar::zero(), Scalar::one()],
                vec![Scalar::one(), Scalar::zero()],
            ])
        );
        assert!(ind.check_relations().pass);
    }

    #[test]
    fn induce_with_trivial_is_identity() {
        let st = HModule::steinberg(&seg("[0,2]"));
        for ind in [
            HModule::trivial().induce(&st, 100).unwrap(),
            st.induce(&HModule::trivial(), 100).unwrap(),
        ] {
            assert_eq!(ind.dim(), st.dim());
            assert_eq!(ind.s_mats(), st.s_mats());
            assert_eq!(ind.y_mats(), st.y_mats());
        }
    }

    #[test]
    fn induce_dimension_and_relations() {
        let ind = HModule::steinberg(&seg("[0,0]"))
            .induce(&HModule::steinberg(&seg("[1,2]")), 100)
            .unwrap();
        assert_eq!(ind.m(), 3);
        assert_eq!(ind.dim(), 3);
        assert!(ind.check_relations().pass);
    }

    #[test]
    fn gamma_module_dimensions() {
        let cap = 2000;
        let g = |l: &[i64], r: &[i64]| {
            HModule::gamma_module(&Weight::from_ints(l, r), cap).unwrap()
        };
        assert_eq!(g(&[2, 1], &[0, 0]).dim(), 3);
        assert_eq!(g(&[1, 1], &[0, 0]).dim(), 2);
        let empty = g(&[0, 0], &[0, 0]);
        assert_eq!(empty.m(), 0);
        assert_eq!(empty.dim(), 1);
        assert!(g(&[2, 1], &[0, 0]).check_relations().pass);
    }

    #[test]
    fn gamma_rejects_negative_mu() {
        let lam = Weight::from_ints(&[0, 1], &[1, 1]);
        match HModule::gamma_module(&lam, 2000) {
            Err(Error::NegativeMu(k)) => assert_eq!(k, 1),
            other => panic!("expected NegativeMu, got {other:?}"),
        }
    }

    #[test]
    fn induce_respects_dimension_cap() {
        let a = HModule::steinberg(&seg("[0,2]"));
        let b = HModule::steinberg(&seg("[3,3]"));
        match a.induce(&b, 3) {
            Err(Error::DimensionCap { dim, cap }) => {
                assert_eq!(dim, 4);
                assert_eq!(cap, 3);
            }
            other => panic!("expected DimensionCap, got {other:?}"),
        }
    }

    #[test]
    fn corrupted_module_reports_first_failure() {
        let good = HModule::steinberg(&seg("[0,0]"))
            .induce(&HModule::steinberg(&seg("[1,1]")), 100)
            .unwrap();
        let mut y = good.y_mats().to_vec();
        y[1] = y[1].add(&Matrix::identity(good.dim()));
        let bad = HModule::new(
            good.m(),
            good.s_mats().to_vec(),
            y,
            good.basis_labels().to_vec(),
            good.eigen_candidates().clone(),
        )
        .unwrap();
        let report = bad.check_relations();
        assert!(!report.pass);
        assert_eq!(report.first_failure.as_deref(), Some("s1*y1 - y2*s1 = 1"));
    }

    #[test]
    fn json_round_trip() {
        let module = HModule::gamma_module(&Weight::from_ints(&[2, 1], &[0, 0]), 2000).unwrap();
        let text = module.to_json_string();
        let back = HModule::from_json_str(&text).unwrap();
        assert_eq!(back.m(), module.m());
        assert_eq!(back.dim(), module.dim());
        assert_eq!(back.s_mats(), module.s_mats());
        assert_eq!(back.y_mats(), module.y_mats());
        assert_eq!(back.basis_labels(), module.basis_labels());
        assert_eq!(back.eigen_candidates(), module.eigen_candidates());
        assert!(back.check_relations().pass);
    }

    #[test]
    fn json_rejects_shape_mismatch() {
        let module = HModule::steinberg(&seg("[0,1]"));
        let mut value = module.to_json();
        value["basis_labels"] = serde_json::json!(["a", "b"]);
        assert!(HModule::from_json_str(&value.to_string()).is_err());
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(4, 7), 0);
    }
}
