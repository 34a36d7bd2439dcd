//! Integer combinations of multisegment monomials. Multiplication is the
//! free commutative product (disjoint union of multisegments), and the two
//! derivations `jac` / `cojac` peel a point off the left or right endpoint
//! of segments, one segment at a time.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::Scalar;
use crate::segment::{Multisegment, Segment};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct KElement {
    terms: BTreeMap<Multisegment, i64>,
}

impl KElement {
    pub fn zero() -> Self {
        KElement::default()
    }

    /// The multiplicative unit: the empty multisegment with coefficient 1.
    pub fn one() -> Self {
        KElement::from_monomial(Multisegment::empty())
    }

    pub fn from_monomial(mono: Multisegment) -> Self {
        let mut e = KElement::zero();
        e.add_term(mono, 1);
        e
    }

    /// `[St(seg)]` as a monomial; the empty segment gives the unit.
    pub fn from_segment(seg: &Segment) -> Self {
        KElement::from_monomial(Multisegment::from_segments([seg.clone()]))
    }

    pub fn add_term(&mut self, mono: Multisegment, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(mono) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Multisegment, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mono: &Multisegment) -> i64 {
        self.terms.get(mono).copied().unwrap_or(0)
    }

    /// Total degree (sum of segment lengths) when every monomial has the
    /// same degree, `None` for 0 or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(Multisegment::total_length);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Derivation at `a`: in each monomial, replace one segment starting at
    /// `a` by its left truncation, summed over all choices.
    pub fn jac(&self, a: &Scalar) -> KElement {
        self.derive(a, true)
    }

    /// Derivation at `a` on right endpoints.
    pub fn cojac(&self, a: &Scalar) -> KElement {
        self.derive(a, false)
    }

    fn derive(&self, a: &Scalar, left: bool) -> KElement {
        let mut out = KElement::zero();
        for (mono, coeff) in &self.terms {
            for (idx, seg) in mono.segments().iter().enumerate() {
                let anchor = if left { seg.start() } else { seg.end() };
                if anchor == Some(a) {
                    let shrunk = if left {
                        seg.truncate_left().expect("segment is nonempty")
                    } else {
                        seg.truncate_right().expect("segment is nonempty")
                    };
                    out.add_term(mono.with_replaced(idx, shrunk), *coeff);
                }
            }
        }
        out
    }

    /// Monomial-wise `-conj` on every segment; an involution that swaps the
    /// roles of the two derivations.
    pub fn hermitian_dual(&self) -> KElement {
        let mut out = KElement::zero();
        for (mono, coeff) in &self.terms {
            out.add_term(mono.negate_conjugate(), *coeff);
        }
        out
    }

    pub fn scale(&self, k: i64) -> KElement {
        let mut out = KElement::zero();
        for (mono, coeff) in &self.terms {
            out.add_term(mono.clone(), coeff * k);
        }
        out
    }
}

impl std::ops::Add for &KElement {
    type Output = KElement;
    fn add(self, rhs: &KElement) -> KElement {
        let mut out = self.clone();
        for (mono, coeff) in &rhs.terms {
            out.add_term(mono.clone(), *coeff);
        }
        out
    }
}

impl std::ops::Sub for &KElement {
    type Output = KElement;
    fn sub(self, rhs: &KElement) -> KElement {
        let mut out = self.clone();
        for (mono, coeff) in &rhs.terms {
            out.add_term(mono.clone(), -coeff);
        }
        out
    }
}

impl std::ops::Mul for &KElement {
    type Output = KElement;
    fn mul(self, rhs: &KElement) -> KElement {
        let mut out = KElement::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.union(m2), c1 * c2);
            }
        }
        out
    }
}

impl std::ops::Neg for &KElement {
    type Output = KElement;
    fn neg(self) -> KElement {
        self.scale(-1)
    }
}

impl fmt::Display for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (mono, coeff)) in self.terms.iter().enumerate() {
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
            write!(f, "{mono}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: i64,
    monomial: Multisegment,
}

impl Serialize for KElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.terms.iter().map(|(mono, &coeff)| TermJson {
            coeff,
            monomial: mono.clone(),
        }))
    }
}

impl<'de> Deserialize<'de> for KElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<TermJson>::deserialize(deserializer)?;
        let mut out = KElement::zero();
        for term in raw {
            if out.coeff(&term.monomial) != 0 {
                return Err(D::Error::custom("duplicate monomial in K element"));
            }
            out.add_term(term.monomial, term.coeff);
        }
        Ok(out)
    }
}
