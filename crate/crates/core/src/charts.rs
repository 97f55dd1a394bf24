//! Local charts: the eight X templates, the W matrix they produce, the
//! shape conditions on W against the tabulated ideals, and Jacobian checks
//! on the explicit image charts.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec, ProjPoint};
use crate::laurent::{is_in_a_eta, LaurentPoly, Mat2Laurent};
use crate::linalg::{mat2_inv, Mat2};
use crate::poly::{differential_rank, jacobian_rank, IdealSpec, MPoly};
use crate::shapes::{class_of, ChartClass, Shape};
use crate::weights::{Side, Weyl};

/// Chart variables, in this order.
pub const VARS: [&str; 8] = ["x", "y", "x'", "y'", "B", "C", "C'", "D"];
const X: usize = 0;
const Y: usize = 1;
const XP: usize = 2;
const YP: usize = 3;
const B: usize = 4;
const C: usize = 5;
const CP: usize = 6;
const D: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LocalChartCase {
    pub k: u64,
    pub s: Weyl,
    pub shape: Shape,
}

impl LocalChartCase {
    pub fn new(k: u64, s: Weyl, shape: Shape) -> Result<LocalChartCase> {
        if k == 0 && s == Weyl::W0 {
            return Err(Error::InvalidPair { k, s: s.name() });
        }
        Ok(LocalChartCase { k, s, shape })
    }

    /// Every valid (k, s, shape) with k <= kmax.
    pub fn all(kmax: u64) -> Vec<LocalChartCase> {
        let mut out = Vec::new();
        for k in 0..=kmax {
            for s in [Weyl::Id, Weyl::W0] {
                for shape in Shape::BOTH {
                    if let Ok(c) = Self::new(k, s, shape) {
                        out.push(c);
                    }
                }
            }
        }
        out
    }

    /// Case label 1..8 of the case analysis.
    pub fn number(&self) -> u8 {
        use Shape::*;
        use Weyl::*;
        match (self.k, self.s, self.shape) {
            (0, _, W0TEta) => 7,
            (0, _, TW0Eta) => 8,
            (1, W0, W0TEta) => 5,
            (1, Id, TW0Eta) => 6,
            (_, W0, W0TEta) => 1,
            (_, W0, TW0Eta) => 2,
            (_, Id, W0TEta) => 3,
            (_, Id, TW0Eta) => 4,
        }
    }

    /// Variables the X template uses.
    pub fn params(&self) -> &'static [usize] {
        match self.number() {
            1 | 4 => &[B, CP],
            2 | 3 => &[C, CP],
            5 | 6 => &[B, C, D],
            7 => &[C],
            _ => &[B],
        }
    }

    pub fn class(&self, side: Side) -> ChartClass {
        class_of(side, self.shape, self.k, self.s).expect("case is valid")
    }
}

impl fmt::Display for LocalChartCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case {} (k={}, s={}, {})", self.number(), self.k, self.s.name(), self.shape.name())
    }
}

/// Values of the chart variables x, y, x', y', B, C, C', D.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChartPoint(pub [FieldElement; 8]);

impl ChartPoint {
    pub fn get(&self, i: usize) -> FieldElement {
        self.0[i]
    }
}

fn lp(c: FieldElement, n: i64) -> LaurentPoly {
    LaurentPoly::monomial(c, n)
}

/// X matrix of the case with the parameter values in `pt` (other slots ignored).
pub fn x_template(case: &LocalChartCase, pt: &ChartPoint) -> Mat2Laurent {
    let f = pt.get(B).field();
    let one = f.one();
    let k = case.k as i64;
    let (b, c, cp, d) = (pt.get(B), pt.get(C), pt.get(CP), pt.get(D));
    match case.number() {
        1 | 4 => Mat2Laurent::new(lp(one, 0) + lp(b * cp, -k), lp(b, -1), lp(cp, -k + 1), lp(one, 0)),
        2 | 3 => Mat2Laurent::new(lp(one, 0), lp(c, -1) + lp(cp, -k - 1), LaurentPoly::zero(f), lp(one, 0)),
        5 | 6 => Mat2Laurent::new(lp(one, 0) - lp(d, -1), lp(b, -1), lp(c, -1), lp(one, 0) + lp(d, -1)),
        7 => Mat2Laurent::new(lp(one, 0), lp(c, -1), LaurentPoly::zero(f), lp(one, 0)),
        _ => Mat2Laurent::new(lp(one, 0), lp(b, -1), LaurentPoly::zero(f), lp(one, 0)),
    }
}

/// Build a template from named parameters; every named variable must be one the case uses.
pub fn x_template_named(
    case: &LocalChartCase,
    field: &'static FieldSpec,
    params: &[(&str, FieldElement)],
) -> Result<Mat2Laurent> {
    let mut pt = ChartPoint([field.zero(); 8]);
    let allowed = case.params();
    for (name, val) in params {
        let idx = VARS.iter().position(|v| v == name).ok_or_else(|| Error::Variables(format!("unknown {name}")))?;
        if !allowed.contains(&idx) {
            return Err(Error::Variables(format!("{name} is not a parameter of {case}")));
        }
        pt.0[idx] = *val;
    }
    if params.len() != allowed.len() {
        return Err(Error::Variables(format!("{case} needs {} parameters", allowed.len())));
    }
    Ok(x_template(case, &pt))
}

fn vars(field: &'static FieldSpec) -> Vec<MPoly> {
    MPoly::vars(field, VARS.len())
}

/// Relations cutting out the local chart inside P^1 x (params) x P^1.
pub fn chart_relations(case: &LocalChartCase, field: &'static FieldSpec) -> Vec<MPoly> {
    let v = vars(field);
    let (x, y, xp, yp) = (&v[X], &v[Y], &v[XP], &v[YP]);
    let (b, c, cp, d) = (&v[B], &v[C], &v[CP], &v[D]);
    let r_cp = xp - &(yp * cp);
    match case.number() {
        1 => vec![r_cp, x * b],
        2 => vec![r_cp, x.clone()],
        3 => vec![r_cp, x * c],
        4 => vec![r_cp, x.clone()],
        5 => vec![&(xp * d) - &(yp * c), &(xp * b) + &(yp * d), &(x * d) - &(y * c), &(x * b) + &(y * d)],
        6 => vec![&(xp * d) - &(yp * c), &(xp * b) + &(yp * d), &(x * yp) - &(y * xp)],
        7 => vec![x * &(xp - &(yp * c))],
        _ => vec![x * &(&(xp * b) - yp)],
    }
}

/// Ideal of the locus where the shape condition holds on the given side.
/// A generator list containing 1 means the condition never holds; an empty
/// list means it always holds.
pub fn table_ideal(case: &LocalChartCase, side: Side, field: &'static FieldSpec) -> IdealSpec {
    let v = vars(field);
    let (x, y, xp, yp) = (&v[X], &v[Y], &v[XP], &v[YP]);
    let (b, c, d) = (&v[B], &v[C], &v[D]);
    let one = MPoly::constant(field.one(), VARS.len());
    let gens = match (side, case.number()) {
        (Side::L, 1) => vec![b.clone()],
        (Side::L, 3) => vec![c.clone()],
        (Side::L, 2 | 4 | 6) => vec![one],
        (Side::L, 5) => vec![b.clone(), c.clone(), d.clone()],
        (Side::L, 7) => vec![xp - &(yp * c)],
        (Side::L, _) => vec![yp - &(xp * b)],
        (Side::R, 1 | 3 | 7 | 8) => vec![x.clone()],
        (Side::R, 5) => vec![&(x * yp) - &(y * xp)],
        (Side::R, _) => vec![],
    };
    IdealSpec { vars: VARS.to_vec(), gens }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaPointSample {
    pub l: ProjPoint,
    pub kappa: Mat2,
    /// x, y = l kappa and x', y' = r, with the parameters.
    pub point: ChartPoint,
    pub r: ProjPoint,
}

fn row_times(v: (FieldElement, FieldElement), m: Mat2) -> (FieldElement, FieldElement) {
    (v.0 * m[0][0] + v.1 * m[1][0], v.0 * m[0][1] + v.1 * m[1][1])
}

pub fn random_gl2<R: Rng + ?Sized>(field: &'static FieldSpec, rng: &mut R) -> Mat2 {
    loop {
        let m = [[field.random(rng), field.random(rng)], [field.random(rng), field.random(rng)]];
        if mat2_inv(m).is_some() {
            return m;
        }
    }
}

fn proj_pair<R: Rng + ?Sized>(field: &'static FieldSpec, rng: &mut R) -> (FieldElement, FieldElement) {
    let p = ProjPoint::random(field, rng);
    (p.x(), p.y())
}

/// A random point of the (B, C, D) locus with its kernel point, hitting the
/// origin and both cone families.
fn cone_point<R: Rng + ?Sized>(
    field: &'static FieldSpec,
    rng: &mut R,
) -> ([FieldElement; 3], Option<(FieldElement, FieldElement)>) {
    let z = field.zero();
    match rng.gen_range(0..3) {
        0 => ([z, z, z], None),
        1 => {
            // (B, t) -> (B, -B t^2, -B t), kernel [t : 1]
            let b = field.random_nonzero(rng);
            let t = field.random(rng);
            ([b, -b * t * t, -b * t], Some((t, field.one())))
        }
        _ => ([z, field.random_nonzero(rng), z], Some((field.one(), z))),
    }
}

/// One point of the local chart of the case.
pub fn sample_one<R: Rng + ?Sized>(case: &LocalChartCase, field: &'static FieldSpec, rng: &mut R) -> BaPointSample {
    let z = field.zero();
    let one = field.one();
    let mut v = [z; 8];
    let coin = |rng: &mut R| rng.gen_bool(0.5);
    let (xy, r): ((FieldElement, FieldElement), (FieldElement, FieldElement));
    match case.number() {
        n @ (1..=4) => {
            let cp = field.random(rng);
            v[CP] = cp;
            r = (cp, one);
            let other = if n == 1 || n == 4 { B } else { C };
            v[other] = field.random(rng);
            xy = match n {
                2 | 4 => (z, one),
                _ => {
                    if coin(rng) {
                        (z, one)
                    } else {
                        v[other] = z;
                        proj_pair(field, rng)
                    }
                }
            };
        }
        n @ (5 | 6) => {
            let (bcd, ker) = cone_point(field, rng);
            v[B] = bcd[0];
            v[C] = bcd[1];
            v[D] = bcd[2];
            r = ker.unwrap_or_else(|| proj_pair(field, rng));
            xy = match ker {
                Some(k) => k,
                None if n == 6 || coin(rng) => r,
                None => proj_pair(field, rng),
            };
        }
        7 => {
            v[C] = field.random(rng);
            if coin(rng) {
                xy = (z, one);
                r = proj_pair(field, rng);
            } else {
                xy = proj_pair(field, rng);
                r = (v[C], one);
            }
        }
        _ => {
            v[B] = field.random(rng);
            if coin(rng) {
                xy = (z, one);
                r = proj_pair(field, rng);
            } else {
                xy = proj_pair(field, rng);
                r = (one, v[B]);
            }
        }
    }
    let kappa = random_gl2(field, rng);
    let lv = row_times(xy, mat2_inv(kappa).expect("kappa invertible"));
    let l = ProjPoint::new(lv.0, lv.1).expect("nonzero row");
    let lk = row_times((l.x(), l.y()), kappa);
    v[X] = lk.0;
    v[Y] = lk.1;
    let r = ProjPoint::new(r.0, r.1).expect("nonzero r");
    v[XP] = r.x();
    v[YP] = r.y();
    BaPointSample { l, kappa, point: ChartPoint(v), r }
}

/// Seeded samples; each satisfies the chart relations.
pub fn sample_ba_point(
    case: &LocalChartCase,
    field: &'static FieldSpec,
    seed: u64,
    count: usize,
) -> Result<Vec<BaPointSample>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rels = chart_relations(case, field);
    let mut out = Vec::with_capacity(count);
    let cap = 10 * count.max(1);
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > cap {
            return Err(Error::Sampling(cap));
        }
        let s = sample_one(case, field, &mut rng);
        let mut ok = true;
        for g in &rels {
            ok &= g.eval(&s.point.0)?.is_zero();
        }
        if ok {
            out.push(s);
        }
    }
    Ok(out)
}

/// Which lift of a projective point to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lift {
    /// the chart convention: D(y) / D(y') preferred
    Standard,
    /// D(x) / D(x') preferred when available
    Alternate,
}

fn weyl_matrix(s: Weyl, field: &'static FieldSpec) -> Mat2Laurent {
    let (z, o) = (field.zero(), field.one());
    match s {
        Weyl::Id => Mat2Laurent::constant([[o, z], [z, o]]),
        Weyl::W0 => Mat2Laurent::constant([[z, o], [o, z]]),
    }
}

pub fn shape_matrix(shape: Shape, field: &'static FieldSpec) -> Mat2Laurent {
    match shape {
        Shape::W0TEta => Mat2Laurent::antidiag(LaurentPoly::one(field), LaurentPoly::v_pow(field, 1)),
        Shape::TW0Eta => Mat2Laurent::diag(LaurentPoly::one(field), LaurentPoly::v_pow(field, 1)),
    }
}

/// W = (l kappa) X w s^{-1} v^mu r^{-1} v^{-mu} s with mu = (k, 0), using
/// lifts [[u, z], [x, y]] and [[t, -s], [x', y']].
pub fn compute_w_with(
    sample: &BaPointSample,
    case: &LocalChartCase,
    lift: Lift,
    scale_l: FieldElement,
    scale_r: FieldElement,
) -> Result<Mat2Laurent> {
    let pt = &sample.point;
    let field = pt.get(X).field();
    let (z, o) = (field.zero(), field.one());
    let (x, y, xp, yp) = (pt.get(X), pt.get(Y), pt.get(XP), pt.get(YP));
    let use_y = match lift {
        Lift::Standard => !y.is_zero(),
        Lift::Alternate => x.is_zero(),
    };
    let (u, zz) = if use_y { (o, z) } else { (z, o) };
    let use_yp = match lift {
        Lift::Standard => !yp.is_zero(),
        Lift::Alternate => xp.is_zero(),
    };
    let (s, t) = if use_yp { (z, o) } else { (o, z) };
    let lk = [[u * scale_l, zz * scale_l], [x * scale_l, y * scale_l]];
    let rt = [[t * scale_r, -s * scale_r], [xp * scale_r, yp * scale_r]];
    let rinv = mat2_inv(rt).ok_or(Error::Singular)?;
    if mat2_inv(lk).is_none() {
        return Err(Error::Singular);
    }
    let sm = weyl_matrix(case.s, field);
    let k = case.k as i64;
    let vmu = Mat2Laurent::diag(LaurentPoly::v_pow(field, k), LaurentPoly::one(field));
    let vmu_inv = Mat2Laurent::diag(LaurentPoly::v_pow(field, -k), LaurentPoly::one(field));
    let chain = [
        Mat2Laurent::constant(lk),
        x_template(case, pt),
        shape_matrix(case.shape, field),
        sm.clone(),
        vmu,
        Mat2Laurent::constant(rinv),
        vmu_inv,
        sm,
    ];
    Ok(chain.iter().skip(1).fold(chain[0].clone(), |acc, m| &acc * m))
}

pub fn compute_w(sample: &BaPointSample, case: &LocalChartCase) -> Result<Mat2Laurent> {
    let one = sample.point.get(X).field().one();
    compute_w_with(sample, case, Lift::Standard, one, one)
}

/// Side L: v divides the top-left entry; side R: v divides the bottom-right entry.
pub fn shape_condition_check(w: &Mat2Laurent, side: Side) -> bool {
    match side {
        Side::L => w.a.divisible_by_v(),
        Side::R => w.d.divisible_by_v(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRowReport {
    pub case: u8,
    pub k: u64,
    pub s: Weyl,
    pub shape: Shape,
    pub side: Side,
    pub class: String,
    pub field: String,
    pub trials: usize,
    pub in_a_eta: usize,
    pub det_valuation_one: usize,
    pub matches: usize,
    pub mismatches: usize,
    pub condition_true: usize,
    pub lift_independent: usize,
}

impl TableRowReport {
    pub fn passed(&self) -> bool {
        self.in_a_eta == self.trials
            && self.det_valuation_one == self.trials
            && self.matches == self.trials
            && self.lift_independent == self.trials
    }
}

fn field_label(field: &'static FieldSpec) -> String {
    if field.degree() == 1 {
        format!("F_{}", field.characteristic())
    } else {
        format!("F_{}^{}", field.characteristic(), field.degree())
    }
}

/// Sample the chart and compare the shape condition on W with the vanishing
/// of the tabulated ideal, point by point.
pub fn verify_table_row(
    case: &LocalChartCase,
    side: Side,
    field: &'static FieldSpec,
    trials: usize,
    seed: u64,
) -> Result<TableRowReport> {
    let samples = sample_ba_point(case, field, seed, trials)?;
    let ideal = table_ideal(case, side, field);
    let mut rep = TableRowReport {
        case: case.number(),
        k: case.k,
        s: case.s,
        shape: case.shape,
        side,
        class: case.class(side).to_string(),
        field: field_label(field),
        trials,
        in_a_eta: 0,
        det_valuation_one: 0,
        matches: 0,
        mismatches: 0,
        condition_true: 0,
        lift_independent: 0,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    for s in &samples {
        let w = compute_w(s, case)?;
        if is_in_a_eta(&w) {
            rep.in_a_eta += 1;
        }
        if w.det().v_valuation() == Ok(1) {
            rep.det_valuation_one += 1;
        }
        let cond = shape_condition_check(&w, side);
        let vanish = ideal.vanishes_at(&s.point.0)?;
        if cond == vanish {
            rep.matches += 1;
        } else {
            rep.mismatches += 1;
        }
        if cond {
            rep.condition_true += 1;
        }
        let w2 =
            compute_w_with(s, case, Lift::Alternate, field.random_nonzero(&mut rng), field.random_nonzero(&mut rng))?;
        if is_in_a_eta(&w2) == is_in_a_eta(&w) && shape_condition_check(&w2, side) == cond {
            rep.lift_independent += 1;
        }
    }
    Ok(rep)
}

/// Every case with k <= kmax, both sides, over one field.
pub fn verify_tables(field: &'static FieldSpec, kmax: u64, trials: usize, seed: u64) -> Result<Vec<TableRowReport>> {
    let mut out = Vec::new();
    for (i, case) in LocalChartCase::all(kmax).iter().enumerate() {
        for (j, side) in [Side::L, Side::R].into_iter().enumerate() {
            let s = seed.wrapping_mul(1_000_003).wrapping_add((i * 2 + j) as u64);
            out.push(verify_table_row(case, side, field, trials, s)?);
        }
    }
    Ok(out)
}

/// Every nonzero (B, C, D) on the cone D^2 + BC = 0.
pub fn cone_points_off_origin(field: &'static FieldSpec) -> Vec<[FieldElement; 3]> {
    let mut out = Vec::new();
    for b in field.elements() {
        for d in field.elements() {
            match b.inv() {
                Some(bi) => out.push([b, -d * d * bi, d]),
                None if d.is_zero() => {
                    out.extend(field.elements().filter(|c| !c.is_zero()).map(|c| [b, c, d]));
                }
                None => {}
            }
        }
    }
    out
}

/// The cone D^2 + BC in variables (B, C, D).
pub fn cone_ideal(field: &'static FieldSpec) -> IdealSpec {
    let v = MPoly::vars(field, 3);
    IdealSpec { vars: vec!["B", "C", "D"], gens: vec![&(&v[2] * &v[2]) + &(&v[0] * &v[1])] }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConeScan {
    pub field: String,
    pub points: usize,
    pub singular: Vec<[u64; 3]>,
    pub cone_dim: usize,
    pub singular_dim: usize,
    pub codim: usize,
}

impl ConeScan {
    pub fn singular_locus_is_origin(&self) -> bool {
        self.singular == vec![[0, 0, 0]]
    }
}

/// Exhaustive scan of the cone over F_q: Jacobian rank 0 exactly at the
/// singular points; dimensions from the rank of the parametrisation.
pub fn cone_scan(field: &'static FieldSpec) -> Result<ConeScan> {
    let ideal = cone_ideal(field);
    let mut points = 0;
    let mut singular = Vec::new();
    for b in field.elements() {
        for c in field.elements() {
            for d in field.elements() {
                let pt = [b, c, d];
                if !ideal.vanishes_at(&pt)? {
                    continue;
                }
                points += 1;
                if jacobian_rank(&ideal, &pt)? == 0 {
                    singular.push([b.index(), c.index(), d.index()]);
                }
            }
        }
    }
    // (B, t) -> (B, -B t^2, -B t)
    let v = MPoly::vars(field, 2);
    let (b, t) = (&v[0], &v[1]);
    let map = vec![b.clone(), -&(&(b * t) * t), -&(b * t)];
    let mut cone_dim = 0;
    for bv in field.elements().filter(|x| !x.is_zero()) {
        for tv in field.elements() {
            cone_dim = cone_dim.max(differential_rank(&map, &[bv, tv])?);
        }
    }
    let singular_dim = 0;
    Ok(ConeScan { field: field_label(field), points, singular, cone_dim, singular_dim, codim: cone_dim - singular_dim })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductChartScan {
    pub samples: usize,
    pub singular_hits: usize,
    pub smooth_hits: usize,
    pub agreement: usize,
}

/// GL2 x cone x GL2 x A^1: the Jacobian of (D^2 + BC, det-free) drops rank
/// exactly when B = C = D = 0. Coordinates: 4 + 3 + 4 + 1.
pub fn product_chart_scan(field: &'static FieldSpec, samples: usize, seed: u64) -> Result<ProductChartScan> {
    let nv = 12;
    let v = MPoly::vars(field, nv);
    let eq = &(&v[6] * &v[6]) + &(&v[4] * &v[5]);
    let ideal = IdealSpec { vars: vec![], gens: vec![eq] };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = ProductChartScan { samples, singular_hits: 0, smooth_hits: 0, agreement: 0 };
    for _ in 0..samples {
        let g1 = random_gl2(field, &mut rng);
        let g2 = random_gl2(field, &mut rng);
        let (bcd, _) = cone_point(field, &mut rng);
        let mut pt = vec![g1[0][0], g1[0][1], g1[1][0], g1[1][1]];
        pt.extend_from_slice(&bcd);
        pt.extend_from_slice(&[g2[0][0], g2[0][1], g2[1][0], g2[1][1], field.random(&mut rng)]);
        let rank = jacobian_rank(&ideal, &pt)?;
        let at_origin = bcd.iter().all(|x| x.is_zero());
        if rank == 0 {
            rep.singular_hits += 1;
        } else {
            rep.smooth_hits += 1;
        }
        if (rank == 0) == at_origin {
            rep.agreement += 1;
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, Serialize)]
pub struct AllThreeDimensions {
    pub f: usize,
    pub params: usize,
    pub chart_dim: usize,
    pub nonnormal_dim: usize,
    pub codim: usize,
}

/// Dimension count on the all-class-3 chart. Parameters per index j:
/// t_j (kernel point [t_j : 1]), a_j, b_j, d_j (kappa_j with
/// [t_{j-1} : 1] kappa_j = [t_j : 1]), and the cone scale B_j.
/// The image coordinates are kappa_j and (B_j, -B_j t_j^2, -B_j t_j).
pub fn all_three_dimension_count(
    f: usize,
    field: &'static FieldSpec,
    samples: usize,
    seed: u64,
) -> Result<AllThreeDimensions> {
    if f == 0 {
        return Err(Error::OutOfRange("f = 0".into()));
    }
    let nv = 5 * f;
    let v = MPoly::vars(field, nv);
    let t = |j: usize| &v[5 * (j % f)];
    let mut map = Vec::new();
    let mut kappa_only = Vec::new();
    for j in 0..f {
        let (a, b, d, bs) = (&v[5 * j + 1], &v[5 * j + 2], &v[5 * j + 3], &v[5 * j + 4]);
        let tp = t(j + f - 1);
        let tj = t(j);
        let c = &(tj * &(&(tp * b) + d)) - &(tp * a);
        for e in [a.clone(), b.clone(), c, d.clone()] {
            kappa_only.push(e.clone());
            map.push(e);
        }
        map.push(bs.clone());
        map.push(-&(&(bs * tj) * tj));
        map.push(-&(bs * tj));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chart_dim = 0;
    let mut nonnormal_dim = 0;
    for _ in 0..samples {
        let mut pt: Vec<FieldElement> = (0..nv).map(|_| field.random(&mut rng)).collect();
        chart_dim = chart_dim.max(differential_rank(&map, &pt)?);
        // V(N): all cone scales zero, parameters t, a, b, d only
        for j in 0..f {
            pt[5 * j + 4] = field.zero();
        }
        let sub: Vec<usize> = (0..nv).filter(|i| i % 5 != 4).collect();
        let jac = crate::poly::jacobian_at(&kappa_only, &pt)?;
        let mut restricted = crate::linalg::GFMatrix::zeros(field, jac.rows(), sub.len());
        for r in 0..jac.rows() {
            for (cidx, &col) in sub.iter().enumerate() {
                restricted.set(r, cidx, jac.get(r, col));
            }
        }
        nonnormal_dim = nonnormal_dim.max(crate::linalg::matrix_rank(&restricted));
    }
    Ok(AllThreeDimensions { f, params: nv, chart_dim, nonnormal_dim, codim: chart_dim - nonnormal_dim })
}
