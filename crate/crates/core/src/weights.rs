//! Serre weights and the tame-type data derived from them.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::is_prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Weyl {
    #[serde(rename = "id")]
    Id,
    #[serde(rename = "w0")]
    W0,
}

impl Weyl {
    pub fn compose(self, other: Weyl) -> Weyl {
        if self == other {
            Weyl::Id
        } else {
            Weyl::W0
        }
    }

    /// Action on a cocharacter pair.
    pub fn act(self, mu: (i64, i64)) -> (i64, i64) {
        match self {
            Weyl::Id => mu,
            Weyl::W0 => (mu.1, mu.0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Weyl::Id => "id",
            Weyl::W0 => "w0",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    L,
    R,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SerreWeight {
    pub p: u64,
    pub m: Vec<i64>,
    pub n: Vec<u64>,
}

impl SerreWeight {
    pub fn new(p: u64, m: Vec<i64>, n: Vec<u64>) -> Result<SerreWeight> {
        if !is_prime(p) || p <= 3 {
            return Err(Error::BadCharacteristic(p));
        }
        if n.is_empty() {
            return Err(Error::InvalidWeight("f must be at least 1".into()));
        }
        if m.len() != n.len() {
            return Err(Error::InvalidWeight(format!("m has length {}, n has length {}", m.len(), n.len())));
        }
        if let Some(bad) = n.iter().find(|&&x| x >= p) {
            return Err(Error::InvalidWeight(format!("n_j = {bad} outside [0, {}]", p - 1)));
        }
        Ok(SerreWeight { p, m, n })
    }

    /// Weight with m = 0.
    pub fn from_n(p: u64, n: &[u64]) -> Result<SerreWeight> {
        Self::new(p, vec![0; n.len()], n.to_vec())
    }

    pub fn f(&self) -> usize {
        self.n.len()
    }

    pub fn is_steinberg(&self) -> bool {
        self.n.iter().all(|&x| x == self.p - 1)
    }

    /// Relabel j -> j - shift.
    pub fn rotate(&self, shift: usize) -> SerreWeight {
        SerreWeight { p: self.p, m: rotate_vec(&self.m, shift), n: rotate_vec(&self.n, shift) }
    }
}

impl fmt::Display for SerreWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n: Vec<String> = self.n.iter().map(|x| x.to_string()).collect();
        write!(f, "p={} n=({})", self.p, n.join(","))
    }
}

pub(crate) fn rotate_vec<T: Clone>(v: &[T], shift: usize) -> Vec<T> {
    let f = v.len();
    (0..f).map(|j| v[(j + shift) % f].clone()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaProfile {
    pub p: u64,
    pub gamma: Vec<u64>,
    pub hypothesis_ok: bool,
}

impl GammaProfile {
    pub fn new(p: u64, gamma: Vec<u64>) -> Result<GammaProfile> {
        if let Some(g) = gamma.iter().find(|&&g| g >= p) {
            return Err(Error::OutOfRange(format!("gamma_j = {g}")));
        }
        let hypothesis_ok = gamma.iter().all(|&g| 2 * g < p) || gamma.iter().any(|&g| 2 * g < p - 1);
        Ok(GammaProfile { p, gamma, hypothesis_ok })
    }

    pub fn f(&self) -> usize {
        self.gamma.len()
    }

    pub fn rotate(&self, shift: usize) -> GammaProfile {
        GammaProfile { p: self.p, gamma: rotate_vec(&self.gamma, shift), hypothesis_ok: self.hypothesis_ok }
    }

    fn below_half(&self, j: usize) -> bool {
        2 * self.gamma[j] < self.p - 1
    }

    fn above_half(&self, j: usize) -> bool {
        2 * self.gamma[j] > self.p - 1
    }
}

pub fn gamma_from_weight(w: &SerreWeight) -> GammaProfile {
    GammaProfile::new(w.p, w.n.iter().map(|&n| w.p - 1 - n).collect()).expect("n_j in range gives gamma_j in range")
}

/// Cyclic interval {start, start+1, ..., start+len-1} in Z/fZ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CyclicInterval {
    pub start: usize,
    pub len: usize,
}

impl CyclicInterval {
    pub fn end(&self, f: usize) -> usize {
        (self.start + self.len - 1) % f
    }

    pub fn indices(&self, f: usize) -> Vec<usize> {
        (0..self.len).map(|r| (self.start + r) % f).collect()
    }

    pub fn contains(&self, j: usize, f: usize) -> bool {
        (j + f - self.start) % f < self.len
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaximalSubsets {
    pub f: usize,
    pub intervals: Vec<CyclicInterval>,
}

impl MaximalSubsets {
    pub fn starts(&self) -> Vec<usize> {
        self.intervals.iter().map(|a| a.start).collect()
    }

    pub fn ends(&self) -> Vec<usize> {
        self.intervals.iter().map(|a| a.end(self.f)).collect()
    }

    /// Every index of an interval except its start.
    pub fn non_starts(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.intervals.iter().flat_map(|a| a.indices(self.f).into_iter().skip(1)).collect();
        out.sort_unstable();
        out
    }

    pub fn interval_of(&self, j: usize) -> Option<&CyclicInterval> {
        self.intervals.iter().find(|a| a.contains(j, self.f))
    }
}

/// Maximal cyclic intervals: start below (p-1)/2, interior at least (p-1)/2,
/// end above (p-1)/2.
pub fn compute_m(g: &GammaProfile) -> Result<MaximalSubsets> {
    if !g.hypothesis_ok {
        return Err(Error::HypothesisFails(g.gamma.clone()));
    }
    let f = g.f();
    let mut intervals = Vec::new();
    for s in 0..f {
        if !g.below_half(s) {
            continue;
        }
        let mut last = None;
        let mut r = 1;
        while r < f && !g.below_half((s + r) % f) {
            if g.above_half((s + r) % f) {
                last = Some(r);
            }
            r += 1;
        }
        if let Some(r) = last {
            intervals.push(CyclicInterval { start: s, len: r + 1 });
        }
    }
    Ok(MaximalSubsets { f, intervals })
}

/// 0 lies in no interval, or gamma_0 < (p-1)/2.
pub fn origin_condition(g: &GammaProfile, m: &MaximalSubsets) -> bool {
    m.interval_of(0).is_none() || g.below_half(0)
}

/// Smallest shift after which the hypothesis and origin condition hold.
pub fn origin_rotation(g: &GammaProfile) -> Option<usize> {
    if !g.hypothesis_ok {
        return None;
    }
    (0..g.f()).find(|&s| {
        let r = g.rotate(s);
        compute_m(&r).map(|m| origin_condition(&r, &m)).unwrap_or(false)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TypeEntry {
    /// The pairing of mu_j with the coroot.
    pub k: u64,
    pub s: Weyl,
    pub s_or: Weyl,
    pub side: Side,
    /// Central shift c_j with mu_j = (k_j + c_j, c_j).
    pub c: Option<i64>,
}

impl TypeEntry {
    pub fn mu(&self) -> Option<(i64, i64)> {
        self.c.map(|c| (self.k as i64 + c, c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeProfile {
    pub p: u64,
    pub entries: Vec<TypeEntry>,
}

impl TypeProfile {
    pub fn f(&self) -> usize {
        self.entries.len()
    }

    pub fn with_central_shifts(mut self, c: &[i64]) -> Result<TypeProfile> {
        if c.len() != self.f() {
            return Err(Error::Dimension(format!("{} shifts for f = {}", c.len(), self.f())));
        }
        for (e, &cj) in self.entries.iter_mut().zip(c) {
            e.c = Some(cj);
        }
        Ok(self)
    }

    /// Smallness, k <= p - 2, and s_0 s_1 ... s_{f-1} = id.
    pub fn check_invariants(&self) -> bool {
        let small = self.entries.iter().all(|e| e.k > 0 || e.s == Weyl::Id);
        let bounded = self.entries.iter().all(|e| e.k + 2 <= self.p);
        let product = self.entries.iter().fold(Weyl::Id, |acc, e| acc.compose(e.s));
        small && bounded && product == Weyl::Id
    }
}

/// Per-index (k, s, s_or, S) from the maximal interval decomposition.
pub fn type_profile(g: &GammaProfile, m: &MaximalSubsets) -> Result<TypeProfile> {
    if !origin_condition(g, m) {
        return Err(Error::RotateFirst);
    }
    let f = g.f();
    let p = g.p;
    let entries = (0..f)
        .map(|j| {
            let gam = g.gamma[j];
            match m.interval_of(j) {
                None => TypeEntry { k: gam, s: Weyl::Id, s_or: Weyl::Id, side: Side::R, c: None },
                Some(a) if a.start == j => {
                    TypeEntry { k: gam + 1, s: Weyl::W0, s_or: Weyl::W0, side: Side::L, c: None }
                }
                Some(a) if a.end(f) == j => {
                    TypeEntry { k: p - gam, s: Weyl::W0, s_or: Weyl::Id, side: Side::R, c: None }
                }
                Some(_) => TypeEntry { k: p - 1 - gam, s: Weyl::Id, s_or: Weyl::W0, side: Side::L, c: None },
            }
        })
        .collect();
    Ok(TypeProfile { p, entries })
}

/// gamma -> rotation -> M -> profile, or None when no rotation works.
pub fn profile_for_weight(w: &SerreWeight) -> Option<(usize, TypeProfile)> {
    let g = gamma_from_weight(w);
    let shift = origin_rotation(&g)?;
    let r = g.rotate(shift);
    let m = compute_m(&r).ok()?;
    let prof = type_profile(&r, &m).ok()?;
    Some((shift, prof))
}

/// The exponent pairs a^(j) = sum_i alpha_{-j+i} p^i.
pub fn descent_exponents(profile: &TypeProfile) -> Result<Vec<(i64, i64)>> {
    let f = profile.f();
    let p = profile.p as i64;
    let mus: Vec<(i64, i64)> = profile
        .entries
        .iter()
        .map(|e| e.mu().ok_or_else(|| Error::Dimension("profile lacks central shifts".into())))
        .collect::<Result<_>>()?;
    // alpha_0 = mu_0, alpha_j = s_{f-1}^{-1} ... s_{f-j}^{-1} (mu_{f-j})
    let alpha: Vec<(i64, i64)> = (0..f)
        .map(|j| {
            if j == 0 {
                return mus[0];
            }
            let mut v = mus[f - j];
            for i in (f - j)..f {
                v = profile.entries[i].s.act(v);
            }
            v
        })
        .collect();
    Ok((0..f)
        .map(|j| {
            let mut acc = (0i64, 0i64);
            let mut pw = 1i64;
            for i in 0..f {
                let a = alpha[(i + f - j % f) % f];
                acc.0 += a.0 * pw;
                acc.1 += a.1 * pw;
                pw *= p;
            }
            acc
        })
        .collect())
}

/// a^(j+1) = p a^(j) mod p^f - 1 componentwise for every j.
pub fn descent_congruence_holds(exps: &[(i64, i64)], p: u64) -> bool {
    let f = exps.len();
    let modulus = (p as i64).pow(f as u32) - 1;
    (0..f).all(|j| {
        let (a, b) = exps[j];
        let (c, d) = exps[(j + 1) % f];
        (c - p as i64 * a).rem_euclid(modulus) == 0 && (d - p as i64 * b).rem_euclid(modulus) == 0
    })
}
