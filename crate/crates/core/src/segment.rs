//! Segments `[a, a+1, ..., b]` of Gaussian rationals with integral steps,
//! and multisegments (finite multisets of nonempty segments, kept in a
//! canonical sorted order).

use std::fmt;
use std::str::FromStr;

use num::{BigInt, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Segment {
    Empty,
    Closed { start: Scalar, end: Scalar },
}

impl Segment {
    /// Builds `[a, b]`. Returns the empty segment when `b - a` is a negative
    /// integer and an error when `b - a` is not an integer at all.
    pub fn new(a: Scalar, b: Scalar) -> Result<Segment> {
        match b.integer_offset_from(&a) {
            None => Err(Error::NonIntegralDifference(a.to_string(), b.to_string())),
            Some(d) if d < BigInt::from(0) => Ok(Segment::Empty),
            Some(_) => Ok(Segment::Closed { start: a, end: b }),
        }
    }

    pub fn singleton(a: Scalar) -> Segment {
        Segment::Closed { start: a.clone(), end: a }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Segment::Empty)
    }

    pub fn start(&self) -> Option<&Scalar> {
        match self {
            Segment::Empty => None,
            Segment::Closed { start, .. } => Some(start),
        }
    }

    pub fn end(&self) -> Option<&Scalar> {
        match self {
            Segment::Empty => None,
            Segment::Closed { end, .. } => Some(end),
        }
    }

    /// Number of points in the segment.
    pub fn len(&self) -> usize {
        match self {
            Segment::Empty => 0,
            Segment::Closed { start, end } => {
                let d = end.integer_offset_from(start).expect("validated on construction");
                (d.to_usize().expect("segment length fits in usize")) + 1
            }
        }
    }

    /// The points `a, a+1, ..., b` in order.
    pub fn points(&self) -> Vec<Scalar> {
        match self {
            Segment::Empty => Vec::new(),
            Segment::Closed { start, .. } => {
                let mut out = Vec::with_capacity(self.len());
                let mut p = start.clone();
                for _ in 0..self.len() {
                    out.push(p.clone());
                    p = p + Scalar::one();
                }
                out
            }
        }
    }

    /// Removes the left endpoint: `[a, b] -> [a+1, b]`.
    pub fn truncate_left(&self) -> Result<Segment> {
        match self {
            Segment::Empty => Err(Error::EmptySegment),
            Segment::Closed { start, end } => {
                Segment::new(start + &Scalar::one(), end.clone())
            }
        }
    }

    /// Removes the right endpoint: `[a, b] -> [a, b-1]`.
    pub fn truncate_right(&self) -> Result<Segment> {
        match self {
            Segment::Empty => Err(Error::EmptySegment),
            Segment::Closed { start, end } => {
                Segment::new(start.clone(), end - &Scalar::one())
            }
        }
    }

    /// `[a, b] -> [-conj(b), -conj(a)]`, the segment-level shadow of the
    /// Hermitian dual.
    pub fn negate_conjugate(&self) -> Segment {
        match self {
            Segment::Empty => Segment::Empty,
            Segment::Closed { start, end } => Segment::Closed {
                start: end.neg_conj(),
                end: start.neg_conj(),
            },
        }
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Segment::Empty => write!(f, "[]"),
            Segment::Closed { start, end } => write!(f, "[{start},{end}]"),
        }
    }
}

impl FromStr for Segment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| Error::ParseSegment(s.to_string()))?;
        if inner.trim().is_empty() {
            return Ok(Segment::Empty);
        }
        let mut parts = inner.split(',');
        let (a, b) = match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => return Err(Error::ParseSegment(s.to_string())),
        };
        let a: Scalar = a.parse().map_err(|_| Error::ParseSegment(s.to_string()))?;
        let b: Scalar = b.parse().map_err(|_| Error::ParseSegment(s.to_string()))?;
        match Segment::new(a, b) {
            Ok(seg) => Ok(seg),
            Err(_) => Err(Error::ParseSegment(s.to_string())),
        }
    }
}

impl Serialize for Segment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Segment {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Segment::from_str(&s).map_err(serde::de::Error::custom)
    }
}

/// A multiset of nonempty segments in canonical order. Empty segments are
/// dropped on construction, so two multisegments are equal exactly when they
/// contain the same segments with the same multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Multisegment {
    segments: Vec<Segment>,
}

impl Multisegment {
    pub fn empty() -> Self {
        Multisegment::default()
    }

    pub fn from_segments<I: IntoIterator<Item = Segment>>(iter: I) -> Self {
        let mut segments: Vec<Segment> =
            iter.into_iter().filter(|s| !s.is_empty()).collect();
        segments.sort();
        Multisegment { segments }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// Total number of segment points, i.e. the `m` of the monomial.
    pub fn total_length(&self) -> usize {
        self.segments.iter().map(Segment::len).sum()
    }

    /// Returns a copy with the segment at `idx` replaced (or deleted when the
    /// replacement is empty), re-sorted into canonical order.
    pub fn with_replaced(&self, idx: usize, replacement: Segment) -> Multisegment {
        let mut segments = self.segments.clone();
        segments.remove(idx);
        if !replacement.is_empty() {
            segments.push(replacement);
        }
        segments.sort();
        Multisegment { segments }
    }

    pub fn union(&self, other: &Multisegment) -> Multisegment {
        let mut segments = self.segments.clone();
        segments.extend(other.segments.iter().cloned());
        segments.sort();
        Multisegment { segments }
    }

    pub fn negate_conjugate(&self) -> Multisegment {
        Multisegment::from_segments(self.segments.iter().map(Segment::negate_conjugate))
    }

    /// All distinct scalars that occur as points of some segment.
    pub fn point_set(&self) -> std::collections::BTreeSet<Scalar> {
        self.segments.iter().flat_map(|s| s.points()).collect()
    }
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, seg) in self.segments.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{seg}")?;
        }
        write!(f, "}}")
    }
}

impl FromStr for Multisegment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|x| x.strip_suffix('}'))
            .ok_or_else(|| Error::ParseMultisegment(s.to_string()))?;
        let mut segments = Vec::new();
        let mut depth = 0usize;
        let mut cur = String::new();
        for ch in inner.chars() {
            match ch {
                '[' => {
                    depth += 1;
                    cur.push(ch);
                }
                ']' => {
                    depth = depth
                        .checked_sub(1)
                        .ok_or_else(|| Error::ParseMultisegment(s.to_string()))?;
                    cur.push(ch);
                }
                ',' if depth == 0 => {
                    segments.push(std::mem::take(&mut cur));
                }
                _ => cur.push(ch),
            }
        }
        if depth != 0 {
            return Err(Error::ParseMultisegment(s.to_string()));
        }
        if !cur.trim().is_empty() {
            segments.push(cur);
        } else if !segments.is_empty() {
            return Err(Error::ParseMultisegment(s.to_string()));
        }
        let parsed: Result<Vec<Segment>> = segments
            .iter()
            .map(|x| {
                x.parse::<Segment>()
                    .map_err(|_| Error::ParseMultisegment(s.to_string()))
            })
            .collect();
        Ok(Multisegment::from_segments(parsed?))
    }
}

impl Serialize for Multisegment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.segments.iter())
    }
}

impl<'de> Deserialize<'de> for Multisegment {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let segs = Vec::<Segment>::deserialize(deserializer)?;
        Ok(Multisegment::from_segments(segs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    fn seg(s: &str) -> Segment {
        s.parse().unwrap()
    }

    #[test]
    fn construction_and_length() {
        let s = Segment::new(sc("0"), sc("2")).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.to_string(), "[0,2]");

        assert!(Segment::new(sc("2"), sc("0")).unwrap().is_empty());
        assert!(Segment::new(sc("0"), sc("1/2")).is_err());
        assert!(Segment::new(sc("0"), sc("1+1 i")).is_err());

        let g = Segment::new(sc("1/2+1 i"), sc("5/2+1 i")).unwrap();
        assert_eq!(g.len(), 3);
    }

    #[test]
    fn truncation() {
        let s = seg("[0,2]");
        assert_eq!(s.truncate_left().unwrap(), seg("[1,2]"));
        assert_eq!(s.truncate_right().unwrap(), seg("[0,1]"));
        let single = seg("[3,3]");
        assert!(single.truncate_left().unwrap().is_empty());
        assert!(single.truncate_right().unwrap().is_empty());
        assert!(Segment::Empty.truncate_left().is_err());
    }

    #[test]
    fn negate_conjugate_examples() {
        assert_eq!(seg("[0,2]").negate_conjugate(), seg("[-2,0]"));
        // [i-1, i+1] -> [-1+i, 1+i]
        let g = Segment::new(sc("i-1"), sc("i+1")).unwrap();
        assert_eq!(
            g.negate_conjugate(),
            Segment::new(sc("-1+1 i"), sc("1+1 i")).unwrap()
        );
        // self-dual segment
        assert_eq!(seg("[-2,2]").negate_conjugate(), seg("[-2,2]"));
    }

    #[test]
    fn display_parse_round_trip() {
        for text in ["[]", "[0,0]", "[-1,2]", "[1/2,5/2]"] {
            assert_eq!(seg(text).to_string(), text);
        }
        let g = Segment::new(sc("1/2+1/2 i"), sc("3/2+1/2 i")).unwrap();
        assert_eq!(g.to_string().parse::<Segment>().unwrap(), g);
    }

    #[test]
    fn multisegment_canonical_order() {
        let a = Multisegment::from_segments([seg("[2,3]"), seg("[0,1]"), Segment::Empty]);
        let b = Multisegment::from_segments([seg("[0,1]"), seg("[2,3]")]);
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "{[0,1],[2,3]}");
        assert_eq!(a.total_length(), 4);
        assert_eq!(a.len(), 2);
        assert!(Multisegment::empty().is_empty());
        assert_eq!(Multisegment::empty().to_string(), "{}");
    }

    #[test]
    fn multisegment_multiplicity_matters() {
        let one = Multisegment::from_segments([seg("[0,0]")]);
        let two = Multisegment::from_segments([seg("[0,0]"), seg("[0,0]")]);
        assert_ne!(one, two);
    }

    #[test]
    fn multisegment_parse() {
        let m: Multisegment = "{[0,1],[2,2]}".parse().unwrap();
        assert_eq!(m.to_string(), "{[0,1],[2,2]}");
        let empty: Multisegment = "{}".parse().unwrap();
        assert!(empty.is_empty());
        let gauss: Multisegment = "{[1/2+1/2 i,3/2+1/2 i]}".parse().unwrap();
        assert_eq!(gauss.len(), 1);
        assert!("{[0,1]".parse::<Multisegment>().is_err());
        assert!("[0,1]".parse::<Multisegment>().is_err());
    }

    #[test]
    fn replace_keeps_canonical_order() {
        let m: Multisegment = "{[0,1],[2,3]}".parse().unwrap();
        let r = m.with_replaced(0, seg("[5,6]"));
        assert_eq!(r.to_string(), "{[2,3],[5,6]}");
        let gone = m.with_replaced(1, Segment::Empty);
        assert_eq!(gone.to_string(), "{[0,1]}");
    }
}
