//! Real-side bookkeeping: weights `(lambdaL, lambdaR)` with integral
//! difference, canonical principal-series symbols `X(lambda)`, the K-group
//! map `gamma` to multisegment monomials, translation functors at K-level,
//! and the two composite paths whose equality is the K-level form of the
//! main comparison.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use num::{BigInt, ToPrimitive};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kring::KElement;
use crate::perm::Perm;
use crate::scalar::Scalar;
use crate::segment::{Multisegment, Segment};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "WeightJson", into = "WeightJson")]
pub struct Weight {
    lambda_l: Vec<Scalar>,
    lambda_r: Vec<Scalar>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct WeightJson {
    lambda_l: Vec<Scalar>,
    lambda_r: Vec<Scalar>,
}

impl TryFrom<WeightJson> for Weight {
    type Error = Error;
    fn try_from(raw: WeightJson) -> Result<Weight> {
        Weight::new(raw.lambda_l, raw.lambda_r)
    }
}

impl From<Weight> for WeightJson {
    fn from(w: Weight) -> WeightJson {
        WeightJson { lambda_l: w.lambda_l, lambda_r: w.lambda_r }
    }
}

impl Weight {
    pub fn new(lambda_l: Vec<Scalar>, lambda_r: Vec<Scalar>) -> Result<Weight> {
        if lambda_l.is_empty() {
            return Err(Error::EmptyWeight);
        }
        if lambda_l.len() != lambda_r.len() {
            return Err(Error::WeightShape(lambda_l.len(), lambda_r.len()));
        }
        for (k, (l, r)) in lambda_l.iter().zip(&lambda_r).enumerate() {
            if l.integer_offset_from(r).is_none() {
                return Err(Error::NonIntegralWeight(k + 1));
            }
        }
        Ok(Weight { lambda_l, lambda_r })
    }

    pub fn from_ints(lambda_l: &[i64], lambda_r: &[i64]) -> Weight {
        Weight::new(
            lambda_l.iter().map(|&v| Scalar::from_int(v)).collect(),
            lambda_r.iter().map(|&v| Scalar::from_int(v)).collect(),
        )
        .expect("integer weights are always valid")
    }

    /// Parses comma-separated coordinate lists, e.g. `"2,1"` and `"0,0"`.
    pub fn parse_lists(lambda_l: &str, lambda_r: &str) -> Result<Weight> {
        let parse = |text: &str| -> Result<Vec<Scalar>> {
            text.split(',').map(|p| p.trim().parse()).collect()
        };
        Weight::new(parse(lambda_l)?, parse(lambda_r)?)
    }

    pub fn n(&self) -> usize {
        self.lambda_l.len()
    }

    pub fn lambda_l(&self) -> &[Scalar] {
        &self.lambda_l
    }

    pub fn lambda_r(&self) -> &[Scalar] {
        &self.lambda_r
    }

    /// `mu = lambdaL - lambdaR`, integral by construction.
    pub fn mu(&self) -> Vec<BigInt> {
        self.lambda_l
            .iter()
            .zip(&self.lambda_r)
            .map(|(l, r)| l.integer_offset_from(r).expect("validated on construction"))
            .collect()
    }

    pub fn nu(&self) -> Vec<Scalar> {
        self.lambda_l.iter().zip(&self.lambda_r).map(|(l, r)| l + r).collect()
    }

    /// `mu` as machine integers when every entry is non-negative.
    pub fn mu_usize(&self) -> Result<Vec<usize>> {
        self.mu()
            .iter()
            .enumerate()
            .map(|(k, v)| v.to_usize().ok_or(Error::NegativeMu(k + 1)))
            .collect()
    }

    /// `sum(mu)` whenever all entries are non-negative, `None` otherwise.
    pub fn m_of(&self) -> Option<usize> {
        self.mu_usize().ok().map(|mu| mu.iter().sum())
    }

    /// `sum(mu)` as a signed integer, defined for every weight.
    pub fn mu_sum(&self) -> i64 {
        self.mu()
            .iter()
            .map(|v| v.to_i64().expect("weight entries are desk-scale"))
            .sum()
    }

    /// The segments `[lambdaR_i + 1/2, lambdaL_i - 1/2]`, empty ones
    /// included positionally.
    pub fn segments(&self) -> Vec<Segment> {
        let half = Scalar::half();
        self.lambda_l
            .iter()
            .zip(&self.lambda_r)
            .map(|(l, r)| {
                Segment::new(r + &half, l - &half).expect("mu is integral")
            })
            .collect()
    }

    /// Replaces `lambdaL` by `(lambdaL_{w(1)}, ..., lambdaL_{w(n)})`.
    pub fn permuted_left(&self, w: &Perm) -> Weight {
        assert_eq!(w.n(), self.n());
        Weight {
            lambda_l: (0..self.n()).map(|i| self.lambda_l[w.apply(i)].clone()).collect(),
            lambda_r: self.lambda_r.clone(),
        }
    }

    pub fn symbol(&self) -> PsSymbol {
        let mut pairs: Vec<(Scalar, Scalar)> = self
            .lambda_l
            .iter()
            .cloned()
            .zip(self.lambda_r.iter().cloned())
            .collect();
        pairs.sort();
        PsSymbol { pairs }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(({}),({}))",
            self.lambda_l.iter().join(","),
            self.lambda_r.iter().join(",")
        )
    }
}

/// A principal series `X(lambda)` in canonical form: the coordinate pairs
/// `(lambdaL_k, lambdaR_k)` sorted lexicographically, so weights in one
/// diagonal Weyl orbit share a symbol.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PsSymbol {
    pairs: Vec<(Scalar, Scalar)>,
}

impl PsSymbol {
    pub fn n(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(Scalar, Scalar)] {
        &self.pairs
    }

    pub fn to_weight(&self) -> Weight {
        Weight {
            lambda_l: self.pairs.iter().map(|p| p.0.clone()).collect(),
            lambda_r: self.pairs.iter().map(|p| p.1.clone()).collect(),
        }
    }
}

impl fmt::Display for PsSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "X(({}),({}))",
            self.pairs.iter().map(|p| &p.0).join(","),
            self.pairs.iter().map(|p| &p.1).join(",")
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    RaiseRight,
    LowerLeft,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::RaiseRight => write!(f, "raise-right"),
            Direction::LowerLeft => write!(f, "lower-left"),
        }
    }
}

/// Integer combination of canonical principal-series symbols: an element of
/// the Harish-Chandra K-group at our level of bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct KHCElement {
    terms: BTreeMap<PsSymbol, i64>,
}

impl KHCElement {
    pub fn zero() -> Self {
        KHCElement::default()
    }

    pub fn from_weight(lam: &Weight) -> Self {
        KHCElement::from_symbol(lam.symbol())
    }

    pub fn from_symbol(symbol: PsSymbol) -> Self {
        let mut e = KHCElement::zero();
        e.add_term(symbol, 1);
        e
    }

    pub fn add_term(&mut self, symbol: PsSymbol, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(symbol) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PsSymbol, i64)> {
        self.terms.iter().map(|(s, &c)| (s, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// K-group image under `Gamma_{n,m}`: symbols with all `mu_k >= 0` and
    /// `sum(mu) = m` map to their multisegment monomial, all others to zero.
    pub fn gamma(&self, m: i64) -> KElement {
        let mut out = KElement::zero();
        for (symbol, coeff) in &self.terms {
            let w = symbol.to_weight();
            let mu = w.mu();
            if mu.iter().any(|v| *v < BigInt::from(0)) {
                continue;
            }
            if mu.iter().sum::<BigInt>() != BigInt::from(m) {
                continue;
            }
            out.add_term(Multisegment::from_segments(w.segments()), *coeff);
        }
        out
    }

    /// Translation at a fixed coordinate value `c`: each symbol is replaced
    /// by the sum over coordinates whose matching-side entry equals `c`,
    /// with that entry raised (RaiseRight, on `lambdaR`) or lowered
    /// (LowerLeft, on `lambdaL`) by one.
    pub fn translate_at_value(&self, c: &Scalar, direction: Direction) -> KHCElement {
        let mut out = KHCElement::zero();
        let one = Scalar::one();
        for (symbol, coeff) in &self.terms {
            for (k, pair) in symbol.pairs.iter().enumerate() {
                let matches = match direction {
                    Direction::RaiseRight => &pair.1 == c,
                    Direction::LowerLeft => &pair.0 == c,
                };
                if !matches {
                    continue;
                }
                let mut pairs = symbol.pairs.clone();
                match direction {
                    Direction::RaiseRight => pairs[k].1 = &pairs[k].1 + &one,
                    Direction::LowerLeft => pairs[k].0 = &pairs[k].0 - &one,
                }
                pairs.sort();
                out.add_term(PsSymbol { pairs }, *coeff);
            }
        }
        out
    }

    /// Translation keyed by the `i`-th coordinate (1-based) of each symbol
    /// in canonical order.
    pub fn translate(&self, i: usize, direction: Direction) -> Result<KHCElement> {
        let mut out = KHCElement::zero();
        for (symbol, coeff) in &self.terms {
            if i == 0 || i > symbol.n() {
                return Err(Error::IndexOutOfRange { index: i, n: symbol.n() });
            }
            let c = match direction {
                Direction::RaiseRight => symbol.pairs[i - 1].1.clone(),
                Direction::LowerLeft => symbol.pairs[i - 1].0.clone(),
            };
            let translated =
                KHCElement::from_symbol(symbol.clone()).translate_at_value(&c, direction);
            for (sym, c2) in translated.terms {
                out.add_term(sym, c2 * coeff);
            }
        }
        Ok(out)
    }
}

/// Translation of a single principal series, keyed by coordinate `i`
/// (1-based) in the coordinate order of `lam` as given. This is the form
/// the worked examples use; canonicalization would otherwise reorder the
/// coordinates before `i` is read.
pub fn translate_weight(lam: &Weight, i: usize, direction: Direction) -> Result<KHCElement> {
    if i == 0 || i > lam.n() {
        return Err(Error::IndexOutOfRange { index: i, n: lam.n() });
    }
    let c = match direction {
        Direction::RaiseRight => lam.lambda_r()[i - 1].clone(),
        Direction::LowerLeft => lam.lambda_l()[i - 1].clone(),
    };
    Ok(KHCElement::from_weight(lam).translate_at_value(&c, direction))
}

impl std::ops::Add for &KHCElement {
    type Output = KHCElement;
    fn add(self, rhs: &KHCElement) -> KHCElement {
        let mut out = self.clone();
        for (s, c) in &rhs.terms {
            out.add_term(s.clone(), *c);
        }
        out
    }
}

impl std::ops::Sub for &KHCElement {
    type Output = KHCElement;
    fn sub(self, rhs: &KHCElement) -> KHCElement {
        let mut out = self.clone();
        for (s, c) in &rhs.terms {
            out.add_term(s.clone(), -c);
        }
        out
    }
}

impl fmt::Display for KHCElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (symbol, coeff)) in self.terms.iter().enumerate() {
            if i == 0 {
                if *coeff < 0 {
                    write!(f, "-")?;
                }
            } else if *coeff < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = coeff.unsigned_abs();
            if abs != 1 {
                write!(f, "{abs}*")?;
            }
            write!(f, "{symbol}")?;
        }
        Ok(())
    }
}

/// Partition of `0..n` grouping coordinates whose difference is an integer.
pub fn integral_weyl_classes(coords: &[Scalar]) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (k, v) in coords.iter().enumerate() {
        let found = classes.iter_mut().find(|class| {
            coords[class[0]].integer_offset_from(v).is_some()
        });
        match found {
            Some(class) => class.push(k),
            None => classes.push(vec![k]),
        }
    }
    classes
}

/// `|W'| = prod |class|!`.
pub fn w_prime_size(classes: &[Vec<usize>]) -> u128 {
    classes
        .iter()
        .map(|c| (1..=c.len() as u128).product::<u128>())
        .product()
}

/// Every element of `W'`: permutations of `0..n` stabilizing each class.
/// Deterministic order.
pub fn w_prime_all(classes: &[Vec<usize>], n: usize) -> Vec<Perm> {
    let per_class: Vec<Vec<Vec<usize>>> = classes
        .iter()
        .map(|class| class.iter().copied().permutations(class.len()).collect())
        .collect();
    per_class
        .iter()
        .multi_cartesian_product()
        .map(|choice| {
            let mut map: Vec<usize> = (0..n).collect();
            for (class, arrangement) in classes.iter().zip(choice) {
                for (pos, &img) in class.iter().zip(arrangement.iter()) {
                    map[*pos] = img;
                }
            }
            Perm::from_images(map).expect("class arrangements are bijections")
        })
        .collect()
}

/// Enumerates `W'` for the left coordinates of `lam`: exhaustive when the
/// group has at most `max` elements, otherwise the identity plus seeded
/// random samples.
pub fn w_prime_for(lam: &Weight, max: usize, seed: u64) -> Vec<Perm> {
    let classes = integral_weyl_classes(lam.lambda_l());
    let n = lam.n();
    if w_prime_size(&classes) <= max as u128 {
        return w_prime_all(&classes, n);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![Perm::identity(n)];
    while out.len() < max.max(1) {
        let mut map: Vec<usize> = (0..n).collect();
        for class in &classes {
            let mut images = class.clone();
            images.shuffle(&mut rng);
            for (pos, &img) in class.iter().zip(images.iter()) {
                map[*pos] = img;
            }
        }
        out.push(Perm::from_images(map).expect("shuffle within classes"));
    }
    out
}

/// The multisegment `{[lambdaR_i + 1/2, lambdaL_{w(i)} - 1/2]}` attached to
/// a permutation; fails when `w` pairs coordinates from different
/// translation classes.
pub fn multisegment_of(w: &Perm, lam: &Weight) -> Result<Multisegment> {
    let half = Scalar::half();
    let mut segments = Vec::with_capacity(lam.n());
    for i in 0..lam.n() {
        segments.push(Segment::new(
            &lam.lambda_r[i] + &half,
            &lam.lambda_l[w.apply(i)] - &half,
        )?);
    }
    Ok(Multisegment::from_segments(segments))
}

/// One verified pair of composite K-group images for a permuted weight.
#[derive(Clone, Debug)]
pub struct KPathCase {
    pub w: Perm,
    pub symbol: PsSymbol,
    pub path_a: KElement,
    pub path_b: KElement,
    pub equal: bool,
}

/// Computes both composite paths for each supplied `w`, deduplicating by
/// canonical symbol. Path A applies `gamma` at level `m` and then the
/// endpoint derivation; path B translates first and applies `gamma` at
/// level `m - 1`. The derivation point and translation value are read from
/// the base weight: coordinate `i` of `lambdaR` (RaiseRight) or `lambdaL`
/// (LowerLeft).
pub fn kgroup_paths(
    lam: &Weight,
    i: usize,
    direction: Direction,
    ws: &[Perm],
) -> Result<Vec<KPathCase>> {
    if i == 0 || i > lam.n() {
        return Err(Error::IndexOutOfRange { index: i, n: lam.n() });
    }
    let m = lam.mu_sum();
    let half = Scalar::half();
    let (value, point) = match direction {
        Direction::RaiseRight => {
            let c = lam.lambda_r[i - 1].clone();
            let p = &c + &half;
            (c, p)
        }
        Direction::LowerLeft => {
            let c = lam.lambda_l[i - 1].clone();
            let p = &c - &half;
            (c, p)
        }
    };
    let mut seen = BTreeSet::new();
    let mut cases = Vec::new();
    for w in ws {
        let symbol = lam.permuted_left(w).symbol();
        if !seen.insert(symbol.clone()) {
            continue;
        }
        let x = KHCElement::from_symbol(symbol.clone());
        let image = x.gamma(m);
        let path_a = match direction {
            Direction::RaiseRight => image.jac(&point),
            Direction::LowerLeft => image.cojac(&point),
        };
        let path_b = x.translate_at_value(&value, direction).gamma(m - 1);
        let equal = path_a == path_b;
        cases.push(KPathCase { w: w.clone(), symbol, path_a, path_b, equal });
    }
    Ok(cases)
}
