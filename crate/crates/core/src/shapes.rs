//! Shape choices, chart classes and the sequence sets built from them.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::weights::{CyclicInterval, GammaProfile, Side, TypeProfile, Weyl};

/// The two shapes per embedding: w0 t_eta and t_{w0(eta)}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Shape {
    #[serde(rename = "w0t_eta")]
    W0TEta,
    #[serde(rename = "t_w0eta")]
    TW0Eta,
}

impl Shape {
    pub const BOTH: [Shape; 2] = [Shape::W0TEta, Shape::TW0Eta];

    pub fn name(self) -> &'static str {
        match self {
            Shape::W0TEta => "w0t_eta",
            Shape::TW0Eta => "t_w0eta",
        }
    }
}

pub type ShapeChoice = Vec<Shape>;

/// All 2^f shape tuples, in binary order (bit j set means t_{w0(eta)} at j).
pub fn all_shapes(f: usize) -> impl Iterator<Item = ShapeChoice> {
    (0u64..(1 << f))
        .map(move |mask| (0..f).map(|j| if mask >> j & 1 == 1 { Shape::TW0Eta } else { Shape::W0TEta }).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ChartClass {
    One,
    Two,
    Three,
    Four,
    Five,
    Empty,
}

impl ChartClass {
    pub fn number(self) -> Option<u8> {
        match self {
            ChartClass::One => Some(1),
            ChartClass::Two => Some(2),
            ChartClass::Three => Some(3),
            ChartClass::Four => Some(4),
            ChartClass::Five => Some(5),
            ChartClass::Empty => None,
        }
    }
}

impl fmt::Display for ChartClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.number() {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "empty"),
        }
    }
}

pub fn class_of(side: Side, shape: Shape, k: u64, s: Weyl) -> Result<ChartClass> {
    use ChartClass::*;
    if k == 0 && s != Weyl::Id {
        return Err(Error::InvalidPair { k, s: s.name() });
    }
    Ok(match (side, shape) {
        (Side::L, Shape::W0TEta) => {
            if k == 1 && s == Weyl::W0 {
                One
            } else {
                Two
            }
        }
        (Side::L, Shape::TW0Eta) => {
            if k == 0 {
                Two
            } else {
                Empty
            }
        }
        (Side::R, shape) => match (k, s, shape) {
            (0, _, _) => Five,
            (1, Weyl::W0, Shape::W0TEta) | (1, Weyl::Id, Shape::TW0Eta) => Three,
            _ => Four,
        },
    })
}

pub fn class_tuple(profile: &TypeProfile, shape: &[Shape]) -> Result<Vec<ChartClass>> {
    if shape.len() != profile.f() {
        return Err(Error::Dimension(format!("shape of length {} for f = {}", shape.len(), profile.f())));
    }
    profile.entries.iter().zip(shape).map(|(e, &w)| class_of(e.side, w, e.k, e.s)).collect()
}

/// A sequence (i-k, ..., i) stored by start index and length l >= 2.
/// For f = 1 the single sequence (0, 0) has length 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TSeq {
    pub start: usize,
    pub len: usize,
}

impl TSeq {
    pub fn end(&self, f: usize) -> usize {
        (self.start + self.len - 1) % f
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TDecomposition {
    pub f: usize,
    pub all_three: bool,
    pub seqs: Vec<TSeq>,
    pub star: Vec<TSeq>,
}

pub fn build_t_decomposition(t: &[ChartClass]) -> Result<TDecomposition> {
    if t.contains(&ChartClass::Empty) {
        return Err(Error::ChartEmpty);
    }
    let f = t.len();
    let all_three = t.iter().all(|&c| c == ChartClass::Three);
    let mut seqs = Vec::new();
    if !all_three {
        for start in 0..f {
            if t[start] == ChartClass::Three {
                continue;
            }
            let mut r = 1;
            while t[(start + r) % f] == ChartClass::Three {
                r += 1;
            }
            seqs.push(TSeq { start, len: r + 1 });
        }
    }
    let star = seqs
        .iter()
        .copied()
        .filter(|s| {
            matches!(t[s.start], ChartClass::One | ChartClass::Two)
                && matches!(t[s.end(f)], ChartClass::One | ChartClass::Five)
        })
        .collect();
    Ok(TDecomposition { f, all_three, seqs, star })
}

/// Cyclic runs (p-1, 1, ..., 1, 0) in gamma.
pub fn heart_subsequences(g: &GammaProfile) -> Vec<CyclicInterval> {
    let f = g.f();
    let p = g.p;
    let mut out = Vec::new();
    for start in 0..f {
        if g.gamma[start] != p - 1 {
            continue;
        }
        let mut r = 1;
        while r < f && g.gamma[(start + r) % f] == 1 {
            r += 1;
        }
        if r < f && g.gamma[(start + r) % f] == 0 {
            out.push(CyclicInterval { start, len: r + 1 });
        }
    }
    out
}

/// Shape tuple, its class tuple, and the decomposition (None for empty charts).
pub type ShapeRow = (ShapeChoice, Vec<ChartClass>, Option<TDecomposition>);

pub fn shape_table(profile: &TypeProfile) -> Result<Vec<ShapeRow>> {
    all_shapes(profile.f())
        .map(|shape| {
            let t = class_tuple(profile, &shape)?;
            let dec = build_t_decomposition(&t).ok();
            Ok((shape, t, dec))
        })
        .collect()
}

/// min over shapes and star sequences of l - 1.
pub fn min_star_length(profile: &TypeProfile) -> Result<Option<usize>> {
    Ok(shape_table(profile)?
        .into_iter()
        .filter_map(|(_, _, d)| d)
        .flat_map(|d| d.star.into_iter().map(|s| s.len - 1))
        .min())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{compute_m, type_profile};
    use ChartClass::*;

    fn profile(p: u64, gamma: Vec<u64>) -> TypeProfile {
        let g = GammaProfile::new(p, gamma).unwrap();
        type_profile(&g, &compute_m(&g).unwrap()).unwrap()
    }

    #[test]
    fn class_examples() {
        assert_eq!(class_of(Side::L, Shape::W0TEta, 1, Weyl::W0), Ok(One));
        assert_eq!(class_of(Side::R, Shape::TW0Eta, 1, Weyl::Id), Ok(Three));
        assert_eq!(class_of(Side::L, Shape::TW0Eta, 2, Weyl::W0), Ok(Empty));
        assert_eq!(class_of(Side::L, Shape::TW0Eta, 0, Weyl::Id), Ok(Two));
        assert_eq!(class_of(Side::R, Shape::W0TEta, 1, Weyl::Id), Ok(Four));
        assert_eq!(class_of(Side::R, Shape::TW0Eta, 1, Weyl::W0), Ok(Four));
        assert_eq!(class_of(Side::R, Shape::W0TEta, 3, Weyl::W0), Ok(Four));
        assert_eq!(class_of(Side::R, Shape::TW0Eta, 0, Weyl::Id), Ok(Five));
        assert!(class_of(Side::R, Shape::TW0Eta, 0, Weyl::W0).is_err());
    }

    #[test]
    fn class_tuple_examples() {
        let a = profile(5, vec![1, 1]);
        assert_eq!(class_tuple(&a, &[Shape::TW0Eta, Shape::TW0Eta]).unwrap(), vec![Three, Three]);
        assert_eq!(class_tuple(&a, &[Shape::W0TEta, Shape::W0TEta]).unwrap(), vec![Four, Four]);
        let b = profile(5, vec![0, 4]);
        assert_eq!(class_tuple(&b, &[Shape::W0TEta, Shape::W0TEta]).unwrap(), vec![One, Three]);
    }

    #[test]
    fn decomposition_examples() {
        let d = build_t_decomposition(&[Three, Three]).unwrap();
        assert!(d.all_three && d.seqs.is_empty());
        let d = build_t_decomposition(&[One, Three]).unwrap();
        assert_eq!(d.seqs, vec![TSeq { start: 0, len: 3 }]);
        assert_eq!(d.star, d.seqs);
        let d = build_t_decomposition(&[Four, Four]).unwrap();
        assert_eq!(d.seqs, vec![TSeq { start: 0, len: 2 }, TSeq { start: 1, len: 2 }]);
        assert!(d.star.is_empty());
        let d = build_t_decomposition(&[Two]).unwrap();
        assert_eq!(d.seqs, vec![TSeq { start: 0, len: 2 }]);
        assert!(build_t_decomposition(&[Empty, Two]).is_err());
    }

    #[test]
    fn heart_examples() {
        let h = heart_subsequences(&GammaProfile::new(5, vec![4, 0]).unwrap());
        assert_eq!(h, vec![CyclicInterval { start: 0, len: 2 }]);
        let h = heart_subsequences(&GammaProfile::new(7, vec![6, 1, 1, 0]).unwrap());
        assert_eq!(h, vec![CyclicInterval { start: 0, len: 4 }]);
        assert!(heart_subsequences(&GammaProfile::new(5, vec![1, 1]).unwrap()).is_empty());
    }

    #[test]
    fn min_star_examples() {
        assert_eq!(min_star_length(&profile(5, vec![0, 4])).unwrap(), Some(2));
        assert_eq!(min_star_length(&profile(5, vec![1, 1, 1])).unwrap(), None);
        // (6,1,1,0) rotated so the origin starts the interval
        assert_eq!(min_star_length(&profile(7, vec![0, 6, 1, 1])).unwrap(), Some(4));
    }
}
