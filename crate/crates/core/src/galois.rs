//! Frobenius-matrix linear algebra on the singular loci: splitting of
//! extensions of rank-one modules, the quadratic basis reduction on the
//! non-CM locus, and splitting after an unramified base change.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::laurent::{ad_diag_conj, LaurentPoly, Mat2Laurent};
use crate::linalg::{kernel_basis, mat2_identity, mat2_inv, mat2_mul, solve_linear, GFMatrix, Mat2};

/// Rank-one Breuil-Kisin module data: exponents r_j, scalars, descent exponents c_j.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankOneBK {
    pub p: u64,
    pub r: Vec<u64>,
    #[serde(skip)]
    pub lambda: Vec<FieldElement>,
    pub c: Vec<u64>,
}

impl RankOneBK {
    pub fn f(&self) -> usize {
        self.r.len()
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.f() as u32) - 1
    }

    pub fn check_invariants(&self) -> bool {
        let q = self.modulus();
        self.r.len() == self.lambda.len()
            && self.c.len() == self.r.len()
            && self.r.iter().all(|&r| r <= q)
            && self.c.iter().all(|&c| c < q)
            && self.lambda.iter().all(|l| !l.is_zero())
    }
}

/// sum_i p^i (m_{j-i} + shift) mod p^f - 1.
fn descent_sum(p: u64, m: &[i64], shift: i64, j: usize) -> u64 {
    let f = m.len();
    let q = (p.pow(f as u32) - 1) as i128;
    let mut acc: i128 = 0;
    for i in 0..f {
        acc += (p as i128).pow(i as u32) * (m[(j + f - i) % f] + shift) as i128;
    }
    acc.rem_euclid(q) as u64
}

/// The pair (sub, quotient) on the all-(p-2) locus: r' = 0, r'' = p^f - 1.
pub fn nonnormal_pair(p: u64, m: &[i64], lp: &[FieldElement], lpp: &[FieldElement]) -> Result<(RankOneBK, RankOneBK)> {
    let f = m.len();
    if lp.len() != f || lpp.len() != f {
        return Err(Error::Dimension("scalar tuples must have length f".into()));
    }
    let q = p.pow(f as u32) - 1;
    let sub =
        RankOneBK { p, r: vec![0; f], lambda: lp.to_vec(), c: (0..f).map(|j| descent_sum(p, m, -1, j)).collect() };
    let quo =
        RankOneBK { p, r: vec![q; f], lambda: lpp.to_vec(), c: (0..f).map(|j| descent_sum(p, m, 0, j)).collect() };
    Ok((sub, quo))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusData {
    pub p: u64,
    pub f: usize,
    pub l0: i128,
    pub l1: i128,
}

impl FrobeniusData {
    pub fn in_range(&self) -> bool {
        let q = (self.p as i128).pow(self.f as u32) - 1;
        0 < self.l0 && self.l0 < q && 0 < self.l1 && self.l1 < q
    }

    /// Exponents r' per index for the non-CM sub-module: l0, l1, then 0.
    pub fn sub_exponents(&self) -> Vec<i128> {
        (0..self.f).map(|j| [self.l0, self.l1].get(j).copied().unwrap_or(0)).collect()
    }
}

/// Exponents of u in the Frobenius matrices at indices 0 and 1 of the non-CM locus.
pub fn frobenius_exponents(f: usize, p: u64) -> Result<FrobeniusData> {
    if f < 2 {
        return Err(Error::OutOfRange(format!("f = {f} < 2")));
    }
    let pp = p as i128;
    let l0 = pp.pow(f as u32 - 1) - (0..f - 1).map(|i| pp.pow(i as u32)).sum::<i128>();
    let l1 = -1 + (1..f).map(|i| pp.pow(i as u32)).sum::<i128>();
    Ok(FrobeniusData { p, f, l0, l1 })
}

/// The f x f system killing the off-diagonal entries after normalising
/// lambda'_j = lambda''_j = 1 for j != 0. For f = 1 the 1 x 1 matrix
/// (lambda''_0 - lambda'_0).
pub fn ext_matrix(field: &'static FieldSpec, f: usize, lp0: FieldElement, lpp0: FieldElement) -> Result<GFMatrix> {
    if f == 0 {
        return Err(Error::OutOfRange("f = 0".into()));
    }
    let mut m = GFMatrix::zeros(field, f, f);
    if f == 1 {
        m.set(0, 0, lpp0 - lp0);
        return Ok(m);
    }
    for j in 0..f - 1 {
        m.set(j, j, -field.one());
        m.set(j, j + 1, field.one());
    }
    m.set(f - 1, 0, lpp0);
    m.set(f - 1, f - 1, -lp0);
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionProblem {
    pub lp: Vec<FieldElement>,
    pub lpp: Vec<FieldElement>,
    pub x: Vec<FieldElement>,
}

impl ExtensionProblem {
    pub fn new(lp: Vec<FieldElement>, lpp: Vec<FieldElement>, x: Vec<FieldElement>) -> Result<ExtensionProblem> {
        let f = lp.len();
        if f == 0 || lpp.len() != f || x.len() != f {
            return Err(Error::Dimension("lambda', lambda'', x must share a positive length".into()));
        }
        if lp.iter().chain(&lpp).any(|l| l.is_zero()) {
            return Err(Error::Singular);
        }
        Ok(ExtensionProblem { lp, lpp, x })
    }

    pub fn f(&self) -> usize {
        self.x.len()
    }

    fn field(&self) -> &'static FieldSpec {
        self.x[0].field()
    }

    /// x_j - alpha_{j-1} lambda'_j + alpha_j lambda''_j for each j.
    pub fn residuals(&self, alpha: &[FieldElement]) -> Vec<FieldElement> {
        let f = self.f();
        (0..f).map(|j| self.x[j] - alpha[(j + f - 1) % f] * self.lp[j] + alpha[j] * self.lpp[j]).collect()
    }

    /// Diagonal rescaling (p_j, q_j) with p_0 = q_0 = 1 making lambda'_j = lambda''_j = 1 for j != 0.
    fn scalings(&self) -> (Vec<FieldElement>, Vec<FieldElement>) {
        let f = self.f();
        let one = self.field().one();
        let mut p = vec![one; f];
        let mut q = vec![one; f];
        for j in 1..f {
            p[j] = p[j - 1] * self.lp[j].inv().expect("nonzero");
            q[j] = q[j - 1] * self.lpp[j].inv().expect("nonzero");
        }
        (p, q)
    }

    /// The normalised problem: (lambda'_0, lambda''_0, x).
    pub fn normalized(&self) -> (FieldElement, FieldElement, Vec<FieldElement>) {
        let f = self.f();
        let (p, q) = self.scalings();
        let lp0 = p[0] * self.lp[0] * p[f - 1].inv().expect("nonzero");
        let lpp0 = q[0] * self.lpp[0] * q[f - 1].inv().expect("nonzero");
        let x = (0..f).map(|j| p[j] * self.x[j] * q[(j + f - 1) % f].inv().expect("nonzero")).collect();
        (lp0, lpp0, x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitOutcome {
    /// alpha solving the original equations
    Split { alpha: Vec<FieldElement> },
    /// the class survives; the obstruction is the value of the cokernel functional
    NonSplit1Dim { obstruction: FieldElement },
}

impl SplitOutcome {
    pub fn is_split(&self) -> bool {
        matches!(self, SplitOutcome::Split { .. })
    }
}

pub fn split_extension(prob: &ExtensionProblem) -> Result<SplitOutcome> {
    let f = prob.f();
    let field = prob.field();
    let (lp0, lpp0, xn) = prob.normalized();
    let c = ext_matrix(field, f, lp0, lpp0)?;
    // rows are ordered x_1, ..., x_{f-1}, x_0
    let rhs: Vec<FieldElement> = (0..f).map(|r| -xn[(r + 1) % f]).collect();
    match solve_linear(&c, &rhs)? {
        Some(an) => {
            let (p, q) = prob.scalings();
            let alpha: Vec<FieldElement> = (0..f).map(|j| an[j] * q[j] * p[j].inv().expect("nonzero")).collect();
            if prob.residuals(&alpha).iter().any(|r| !r.is_zero()) {
                return Err(Error::Dimension("split witness fails substitution".into()));
            }
            Ok(SplitOutcome::Split { alpha })
        }
        None => {
            let left = kernel_basis(&c.transpose());
            let y = left.first().ok_or(Error::Singular)?;
            let obstruction = y.iter().zip(&rhs).fold(field.zero(), |acc, (a, b)| acc + *a * *b);
            Ok(SplitOutcome::NonSplit1Dim { obstruction })
        }
    }
}

/// Closed form for solvability: lambda'_0 != lambda''_0 after normalising, or
/// x^n_0 + lambda sum_{j >= 1} x^n_j = 0 on the equal-scalar locus.
pub fn split_expected(prob: &ExtensionProblem) -> bool {
    let (lp0, lpp0, x) = prob.normalized();
    if lp0 != lpp0 {
        return true;
    }
    let tail = x[1..].iter().fold(lp0.field().zero(), |a, b| a + *b);
    (x[0] + lp0 * tail).is_zero()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtensionKind {
    Generic,
    EqualScalars,
    EqualScalarsSolvable,
}

pub fn random_extension_problem<R: Rng + ?Sized>(
    field: &'static FieldSpec,
    f: usize,
    kind: ExtensionKind,
    rng: &mut R,
) -> ExtensionProblem {
    let lp: Vec<_> = (0..f).map(|_| field.random_nonzero(rng)).collect();
    let mut lpp: Vec<_> = (0..f).map(|_| field.random_nonzero(rng)).collect();
    let mut x: Vec<_> = (0..f).map(|_| field.random(rng)).collect();
    if kind != ExtensionKind::Generic {
        let prod = |v: &[FieldElement]| v.iter().fold(field.one(), |a, b| a * *b);
        lpp[0] = lpp[0] * prod(&lp) * prod(&lpp).inv().expect("nonzero");
    }
    let mut prob = ExtensionProblem { lp, lpp, x: x.clone() };
    if kind == ExtensionKind::EqualScalarsSolvable {
        // x^n_0 = x_0 / q_{f-1}
        let (lam, _, xn) = prob.normalized();
        let (_, q) = prob.scalings();
        let tail = xn[1..].iter().fold(field.zero(), |a, b| a + *b);
        x[0] = -lam * tail * q[f - 1];
        prob.x = x;
    }
    prob
}

/// True iff the data describes an unramified twist: split, or the surviving
/// class with equal scalars.
pub fn nonnormal_point_predicate(lp0: FieldElement, lpp0: FieldElement, ext_present: bool) -> bool {
    !ext_present || lp0 == lpp0
}

/// Frobenius matrices over the degree-p unramified extension, pf of them,
/// conjugated by g_j = [[1, -d_j x0 / lambda], [0, 1]] with d_j = floor(j / f).
/// True iff every conjugate is diagonal.
pub fn base_change_split_check(lambda: FieldElement, x0: FieldElement, f: usize, m: &[i64]) -> Result<bool> {
    let field = lambda.field();
    let p = field.characteristic() as usize;
    if lambda.is_zero() {
        return Err(Error::Singular);
    }
    if f == 0 || m.len() != f {
        return Err(Error::Dimension("m must have length f >= 1".into()));
    }
    let n = p * f;
    let li = lambda.inv().expect("nonzero");
    let g = |j: usize| -> Mat2 {
        let d = field.int((j / f) as i64);
        [[field.one(), -d * x0 * li], [field.zero(), field.one()]]
    };
    for j in 0..n {
        let base = if j % f == 0 { [[lambda, x0], [field.zero(), lambda]] } else { mat2_identity(field) };
        let frob = Mat2Laurent::constant(base).scale(&LaurentPoly::v_pow(field, 1 - m[j % f]));
        let gi = mat2_inv(g((j + n - 1) % n)).ok_or(Error::Singular)?;
        let out = &(&Mat2Laurent::constant(g(j)) * &frob) * &Mat2Laurent::constant(gi);
        if !out.b.is_zero() || !out.c.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Frame on the non-CM locus: b_0 arbitrary invertible, b_j upper triangular for j != 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoncmFrame {
    pub b: Vec<Mat2>,
}

#[derive(Clone, Debug)]
pub struct NoncmReduction {
    pub field: &'static FieldSpec,
    pub alpha0: FieldElement,
    pub x1: FieldElement,
    pub used_extension: bool,
    /// total change of basis per index
    pub g: Vec<Mat2>,
    pub reduced: Vec<Mat2>,
    pub top_right_zero: bool,
}

fn upper(m: &Mat2) -> bool {
    m[1][0].is_zero()
}

fn lift(m: Mat2, field: &'static FieldSpec) -> Mat2 {
    let e = |x: FieldElement| field.from_coeffs(x.coeffs());
    [[e(m[0][0]), e(m[0][1])], [e(m[1][0]), e(m[1][1])]]
}

fn weyl_w0(field: &'static FieldSpec) -> Mat2Laurent {
    let (z, o) = (field.zero(), field.one());
    Mat2Laurent::constant([[z, o], [o, z]])
}

/// g_j (b_j w_j) Ad(s_j^{-1} v^{mu_j})(g_{j-1}^{-1}) w_j^{-1} with the
/// profile (1, w0, w0 t_eta) at j = 0, 1 and (1, id, t_{w0 eta}) elsewhere.
pub fn twisted_conjugate(b: &[Mat2], g: &[Mat2]) -> Result<Vec<Mat2Laurent>> {
    let f = b.len();
    let field = b[0][0][0].field();
    let one = LaurentPoly::one(field);
    let v = LaurentPoly::v_pow(field, 1);
    let mut out = Vec::with_capacity(f);
    for j in 0..f {
        let (w, twisted_weyl) = if j < 2 {
            (Mat2Laurent::antidiag(one.clone(), v.clone()), true)
        } else {
            (Mat2Laurent::diag(one.clone(), v.clone()), false)
        };
        let ginv = Mat2Laurent::constant(mat2_inv(g[(j + f - 1) % f]).ok_or(Error::Singular)?);
        let mut ad = ad_diag_conj(&ginv, (1, 0));
        if twisted_weyl {
            let s = weyl_w0(field);
            ad = &(&s * &ad) * &s;
        }
        let winv = w.inverse().ok_or(Error::Singular)?;
        let a = &Mat2Laurent::constant(b[j]) * &w;
        let r = &(&(&Mat2Laurent::constant(g[j]) * &a) * &ad) * &winv;
        out.push(r);
    }
    Ok(out)
}

fn as_constant(m: &Mat2Laurent) -> Option<Mat2> {
    let c = |x: &LaurentPoly| -> Option<FieldElement> {
        if x.is_zero() {
            return Some(x.field().zero());
        }
        match x.as_monomial()? {
            (c, 0) => Some(c),
            _ => None,
        }
    };
    Some([[c(&m.a)?, c(&m.b)?], [c(&m.c)?, c(&m.d)?]])
}

/// Roots of a x^2 + b x + c (a != 0), in the field or its quadratic extension.
fn quadratic_root(a: FieldElement, b: FieldElement, c: FieldElement) -> Result<(FieldElement, bool)> {
    let field = a.field();
    let two = field.int(2);
    let disc = b * b - field.int(4) * a * c;
    let denom = (two * a).inv().ok_or(Error::Singular)?;
    if let Some(s) = disc.sqrt() {
        return Ok(((-b + s) * denom, false));
    }
    if field.degree() != 1 {
        return Err(Error::UnsupportedExtension { p: field.characteristic(), e: 2 * field.degree() });
    }
    let ext = FieldSpec::new(field.characteristic(), 2)?;
    let up = |x: FieldElement| ext.from_coeffs(x.coeffs());
    let s = up(disc).sqrt().ok_or(Error::Singular)?;
    Ok(((-up(b) + s) * up(denom), true))
}

/// Stage one: V = 0, x_j = 0 for j >= 2, lambda'_j = lambda''_j = 1 for j != 0,
/// by constant upper-triangular g_j. Returns (g, reduced b).
fn normalize_frame(b: &[Mat2]) -> Result<(Vec<Mat2>, Vec<Mat2>)> {
    let f = b.len();
    let field = b[0][0][0].field();
    let id = mat2_identity(field);
    let chain = |g0: Mat2, t: FieldElement| -> Result<Vec<Mat2>> {
        // g_j b_j g_{j-1}^{-1} = T_j with T_1 = [[1, t], [0, 1]], T_j = id beyond
        let mut g = vec![g0; f];
        for j in 1..f {
            let tj = if j == 1 { [[field.one(), t], [field.zero(), field.one()]] } else { id };
            g[j] = mat2_mul(mat2_mul(tj, g[j - 1]), mat2_inv(b[j]).ok_or(Error::Singular)?);
        }
        Ok(g)
    };
    let apply = |g: &[Mat2]| -> Result<Vec<Mat2>> {
        (0..f)
            .map(|j| Ok(mat2_mul(mat2_mul(g[j], b[j]), mat2_inv(g[(j + f - 1) % f]).ok_or(Error::Singular)?)))
            .collect()
    };
    let mut g0 = id;
    let mut probe = apply(&chain(g0, field.zero())?)?;
    if probe[0][0][0].is_zero() {
        g0 = [[field.one(), field.one()], [field.zero(), field.one()]];
        probe = apply(&chain(g0, field.zero())?)?;
    }
    // b'_0 = Q T_1^{-1}: top-right q12 - t q11
    let q = probe[0];
    let t = q[0][1] * q[0][0].inv().ok_or(Error::Singular)?;
    let g = chain(g0, t)?;
    let red = apply(&g)?;
    Ok((g, red))
}

pub fn noncm_basis_reduction(frame: &NoncmFrame) -> Result<NoncmReduction> {
    let f = frame.b.len();
    if f < 2 {
        return Err(Error::OutOfRange(format!("f = {f} < 2")));
    }
    if mat2_inv(frame.b[0]).is_none() || frame.b[0][1][0].is_zero() {
        return Err(Error::Singular);
    }
    if frame.b[1..].iter().any(|m| !upper(m) || mat2_inv(*m).is_none()) {
        return Err(Error::Dimension("b_j must be invertible upper triangular for j != 0".into()));
    }
    let (g1, red) = normalize_frame(&frame.b)?;
    let [[u, _], [w, z]] = red[0];
    let x1 = red[1][0][1];
    let (alpha0, used_extension) = quadratic_root(w, u - z - w * x1, -u * x1)?;
    let field = alpha0.field();
    let a1 = alpha0 - field.from_coeffs(x1.coeffs());
    let g2: Vec<Mat2> = (0..f)
        .map(|j| {
            let a = if j == 0 { alpha0 } else { a1 };
            [[field.one(), a], [field.zero(), field.one()]]
        })
        .collect();
    let g: Vec<Mat2> = (0..f).map(|j| mat2_mul(g2[j], lift(g1[j], field))).collect();
    let b: Vec<Mat2> = frame.b.iter().map(|m| lift(*m, field)).collect();
    let conj = twisted_conjugate(&b, &g)?;
    let reduced: Vec<Mat2> = conj.iter().map(as_constant).collect::<Option<_>>().ok_or(Error::OffLocus)?;
    let top_right_zero = reduced.iter().all(|m| m[0][1].is_zero());
    Ok(NoncmReduction { field, alpha0, x1, used_extension, g, reduced, top_right_zero })
}

/// Frame from an already normalised b_0 and x_1: b_1 = [[1, x1], [0, 1]], b_j = id beyond.
pub fn noncm_frame(b0: Mat2, x1: FieldElement, f: usize) -> NoncmFrame {
    let field = x1.field();
    let id = mat2_identity(field);
    let mut b = vec![id; f];
    b[0] = b0;
    if f > 1 {
        b[1] = [[field.one(), x1], [field.zero(), field.one()]];
    }
    NoncmFrame { b }
}

/// Random frame: b_0 invertible with nonzero bottom-left entry, b_j invertible upper triangular.
pub fn random_noncm_frame<R: Rng + ?Sized>(field: &'static FieldSpec, f: usize, rng: &mut R) -> NoncmFrame {
    let b0 = loop {
        let m = [[field.random(rng), field.random(rng)], [field.random_nonzero(rng), field.random(rng)]];
        if mat2_inv(m).is_some() {
            break m;
        }
    };
    let mut b = vec![b0];
    for _ in 1..f {
        b.push([[field.random_nonzero(rng), field.random(rng)], [field.zero(), field.random_nonzero(rng)]]);
    }
    NoncmFrame { b }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct NoncmTally {
    pub trials: usize,
    pub reduced: usize,
    pub via_extension: usize,
}

/// Reduce `trials` random frames; counts those ending with every top-right entry zero.
pub fn noncm_trials<R: Rng + ?Sized>(
    field: &'static FieldSpec,
    f: usize,
    trials: usize,
    rng: &mut R,
) -> Result<NoncmTally> {
    let mut t = NoncmTally { trials, ..Default::default() };
    for _ in 0..trials {
        let r = noncm_basis_reduction(&random_noncm_frame(field, f, rng))?;
        t.reduced += r.top_right_zero as usize;
        t.via_extension += r.used_extension as usize;
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::mat2_det;

    fn f5() -> &'static FieldSpec {
        FieldSpec::prime(5).unwrap()
    }

    #[test]
    fn ext_matrix_examples() {
        let f = f5();
        let m = ext_matrix(f, 2, f.int(2), f.int(3)).unwrap();
        assert_eq!(m, GFMatrix::from_ints(f, &[&[-1, 1], &[3, -2]]));
        let m = ext_matrix(f, 3, f.int(4), f.int(4)).unwrap();
        assert!(m.determinant().unwrap().is_zero());
        assert_eq!(kernel_basis(&m).len(), 1);
        assert_eq!(ext_matrix(f, 1, f.int(1), f.int(3)).unwrap().get(0, 0), f.int(2));
    }

    #[test]
    fn split_examples() {
        let f = f5();
        let p =
            ExtensionProblem::new(vec![f.int(2), f.one()], vec![f.int(3), f.one()], vec![f.one(), f.one()]).unwrap();
        match split_extension(&p).unwrap() {
            SplitOutcome::Split { alpha } => assert!(p.residuals(&alpha).iter().all(|r| r.is_zero())),
            other => panic!("{other:?}"),
        }
        let p = ExtensionProblem::new(vec![f.int(2); 2], vec![f.int(2); 2], vec![f.zero(); 2]).unwrap();
        assert_eq!(split_extension(&p).unwrap(), SplitOutcome::Split { alpha: vec![f.zero(); 2] });
        let p = ExtensionProblem::new(vec![f.int(2); 2], vec![f.int(2); 2], vec![f.one(), f.zero()]).unwrap();
        assert!(!split_extension(&p).unwrap().is_split());
    }

    #[test]
    fn f1_witness_sign() {
        // x_0 + alpha_0 (lambda'' - lambda') = 0
        let f = f5();
        let p = ExtensionProblem::new(vec![f.int(1)], vec![f.int(3)], vec![f.int(4)]).unwrap();
        let SplitOutcome::Split { alpha } = split_extension(&p).unwrap() else { panic!() };
        assert_eq!(alpha[0], -f.int(4) * f.int(2).inv().unwrap());
    }

    #[test]
    fn exponents() {
        let d = frobenius_exponents(2, 5).unwrap();
        assert_eq!((d.l0, d.l1), (4, 4));
        let d = frobenius_exponents(3, 5).unwrap();
        assert_eq!((d.l0, d.l1), (19, 29));
        assert!(frobenius_exponents(1, 5).is_err());
    }

    #[test]
    fn base_change_examples() {
        let f = f5();
        assert!(base_change_split_check(f.one(), f.int(2), 1, &[0]).unwrap());
        assert!(base_change_split_check(f.int(3), f.one(), 2, &[1, 2]).unwrap());
        assert!(base_change_split_check(f.int(3), f.zero(), 2, &[0, 0]).unwrap());
    }

    #[test]
    fn noncm_trivial_case() {
        let f = f5();
        let b0 = [[f.int(2), f.zero()], [f.one(), f.int(2)]];
        let r = noncm_basis_reduction(&noncm_frame(b0, f.zero(), 2)).unwrap();
        assert!(r.alpha0.is_zero() && r.top_right_zero);
        assert_eq!(r.reduced[0], b0);
    }

    #[test]
    fn noncm_needs_extension() {
        // W = 1, U - Z - W x1 = 0, -U x1 = -2: alpha^2 = 2 has no root in F_5
        let f = f5();
        let b0 = [[f.one(), f.zero()], [f.one(), f.int(4)]];
        let r = noncm_basis_reduction(&noncm_frame(b0, f.int(2), 3)).unwrap();
        assert!(r.used_extension && r.top_right_zero);
        assert_eq!(r.field.degree(), 2);
        assert!(!mat2_det(r.reduced[0]).is_zero());
    }

    #[test]
    fn case_a_pair_exponents() {
        let f = f5();
        let (sub, quo) = nonnormal_pair(5, &[1, 2], &[f.one(); 2], &[f.int(2); 2]).unwrap();
        assert!(sub.check_invariants() && quo.check_invariants());
        assert_eq!(quo.r, vec![24, 24]);
        // c''_0 = m_0 + 5 m_1, c''_1 = m_1 + 5 m_0
        assert_eq!(quo.c, vec![11, 7]);
        assert_eq!(sub.c, vec![5, 1]);
    }

    #[test]
    fn random_frames_reduce() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for (p, f) in [(5, 2), (7, 3), (5, 4)] {
            let t = noncm_trials(FieldSpec::prime(p).unwrap(), f, 200, &mut rng).unwrap();
            assert_eq!(t.reduced, t.trials);
            assert!(t.via_extension > 0);
        }
    }

    #[test]
    fn ext_determinant_is_difference() {
        let k = FieldSpec::new(5, 2).unwrap();
        for f in 2..=8 {
            for a in k.elements().step_by(3) {
                for b in k.elements().step_by(4) {
                    let d = ext_matrix(k, f, a, b).unwrap().determinant().unwrap();
                    assert!(d == a - b || d == b - a);
                }
            }
        }
    }

    #[test]
    fn split_matches_closed_form() {
        use rand::SeedableRng;
        let k = FieldSpec::new(5, 2).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for f in 1..=5 {
            for kind in [ExtensionKind::Generic, ExtensionKind::EqualScalars, ExtensionKind::EqualScalarsSolvable] {
                for _ in 0..40 {
                    let p = random_extension_problem(k, f, kind, &mut rng);
                    assert_eq!(split_extension(&p).unwrap().is_split(), split_expected(&p));
                    if kind == ExtensionKind::EqualScalarsSolvable {
                        assert!(split_expected(&p));
                    }
                }
            }
        }
    }

    #[test]
    fn predicate() {
        let f = f5();
        assert!(nonnormal_point_predicate(f.int(1), f.int(2), false));
        assert!(nonnormal_point_predicate(f.int(2), f.int(2), true));
        assert!(!nonnormal_point_predicate(f.int(1), f.int(2), true));
    }
}
