//! Graded linear algebra for the cohomology of the local charts: the
//! two-term Čech complex on a class-3 chart, Künneth tables for the other
//! classes, and the E1 edge maps of the Koszul spectral sequences.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::charts::{cone_points_off_origin, random_gl2};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::linalg::{kernel_basis, mat2_identity, mat2_inv, matrix_rank, GFMatrix, Mat2};
use crate::shapes::ChartClass;

/// Which module of the class-3 complex a piece lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Ambient {
    /// t^s F[t, C t^-2]
    Source { sum: i64 },
    /// F[t^±, C] / F[t^-1, C]
    Target,
}

/// Monomials C^m t^n of one C-degree m inside a t-window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedPiece {
    pub ambient: Ambient,
    pub c_degree: usize,
    pub basis: Vec<i64>,
}

impl GradedPiece {
    fn new(ambient: Ambient, m: usize, tdeg: i64) -> GradedPiece {
        let lo = match ambient {
            Ambient::Source { sum } => (sum - 2 * m as i64).max(-tdeg),
            Ambient::Target => 1,
        };
        GradedPiece { ambient, c_degree: m, basis: (lo..=tdeg).collect() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn position(&self, n: i64) -> Option<usize> {
        let lo = *self.basis.first()?;
        (n >= lo && n <= *self.basis.last()?).then(|| (n - lo) as usize)
    }
}

#[derive(Clone, Debug)]
pub struct GradedMap {
    pub domain: GradedPiece,
    pub codomain: GradedPiece,
    pub matrix: GFMatrix,
}

/// Element of F[B, C, D]/(D^2 + BC) as a list of (coefficient, a, b, c) for B^a C^b D^c.
pub type GammaElem = Vec<(i64, u32, u32, u32)>;

/// Image of B^a C^b D^c under B -> -C t^-2, D -> C t^-1: (sign, C-degree, t-degree).
fn gamma_monomial(a: u32, b: u32, c: u32) -> (i64, usize, i64) {
    let sign = if a.is_multiple_of(2) { 1 } else { -1 };
    (sign, (a + b + c) as usize, -2 * a as i64 - c as i64)
}

/// Laurent terms (coefficient, C-degree, t-degree).
pub type LaurentTerms = Vec<(i64, usize, i64)>;

fn gamma_terms(g: &GammaElem) -> LaurentTerms {
    g.iter()
        .map(|&(k, a, b, c)| {
            let (s, m, n) = gamma_monomial(a, b, c);
            (k * s, m, n)
        })
        .collect()
}

fn homogeneous_degree(terms: &LaurentTerms) -> Result<usize> {
    let d = terms.first().map(|t| t.1).ok_or_else(|| Error::Dimension("empty element".into()))?;
    if terms.iter().any(|t| t.1 != d) {
        return Err(Error::Dimension("inhomogeneous element".into()));
    }
    Ok(d)
}

/// A module presentation: generators in the kernel, relations among them.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub generators: Vec<LaurentTerms>,
    pub relations: Vec<Vec<(usize, GammaElem)>>,
}

fn mono(m: usize, n: i64) -> LaurentTerms {
    vec![(1, m, n)]
}

fn b() -> GammaElem {
    vec![(1, 1, 0, 0)]
}
fn c() -> GammaElem {
    vec![(1, 0, 1, 0)]
}
fn d() -> GammaElem {
    vec![(1, 0, 0, 1)]
}
fn neg(g: GammaElem) -> GammaElem {
    g.into_iter().map(|(k, a, b, c)| (-k, a, b, c)).collect()
}

/// Generators and relations of H^0 on a class-3 chart as stated for each
/// twist sum delta + epsilon.
pub fn stated_presentation(sum: i64) -> Result<Presentation> {
    let pair = || vec![vec![(0, d()), (1, neg(c()))], vec![(0, b()), (1, d())]];
    Ok(match sum {
        0 => Presentation { generators: vec![mono(0, 0)], relations: vec![] },
        -1 => Presentation { generators: vec![mono(0, 0), mono(0, -1)], relations: pair() },
        1 => Presentation { generators: vec![mono(1, 0), mono(1, -1)], relations: pair() },
        -2 => {
            let mut rels = pair();
            rels.push(vec![(0, b()), (2, c())]);
            Presentation { generators: vec![mono(0, 0), mono(0, -1), mono(0, -2)], relations: rels }
        }
        2 => Presentation { generators: vec![mono(1, 0)], relations: vec![] },
        _ => return Err(Error::OutOfRange(format!("twist sum {sum} not in [-2, 2]"))),
    })
}

/// The sum -2 presentation with the relation B e2 + D e3 added.
pub fn completed_presentation_minus_two() -> Presentation {
    let mut p = stated_presentation(-2).expect("valid sum");
    p.relations.push(vec![(1, b()), (2, d())]);
    p
}

/// The truncated two-term complex t^s F[t, C t^-2] -> F[t^±, C]/F[t^-1, C].
#[derive(Clone, Debug)]
pub struct CechComplex {
    pub field: &'static FieldSpec,
    pub sum: i64,
    pub cdeg_bound: usize,
    pub tdeg_bound: i64,
    pub maps: Vec<GradedMap>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRow {
    pub c_degree: usize,
    pub source_dim: usize,
    pub kernel_dim: usize,
    pub cokernel_dim: usize,
    pub generated_dim: usize,
    pub syzygy_dim: usize,
    pub relation_span: usize,
}

impl CechComplex {
    pub fn new(field: &'static FieldSpec, sum: i64, cdeg_bound: usize, tdeg_bound: usize) -> Result<CechComplex> {
        if !(-2..=2).contains(&sum) {
            return Err(Error::OutOfRange(format!("twist sum {sum} not in [-2, 2]")));
        }
        if cdeg_bound < 4 || tdeg_bound < 4 {
            return Err(Error::IncreaseBounds(format!("bounds ({cdeg_bound}, {tdeg_bound}) below 4")));
        }
        let tdeg = tdeg_bound as i64;
        let maps = (0..=cdeg_bound)
            .map(|m| {
                let domain = GradedPiece::new(Ambient::Source { sum }, m, tdeg);
                let codomain = GradedPiece::new(Ambient::Target, m, tdeg);
                let mut matrix = GFMatrix::zeros(field, codomain.dim(), domain.dim());
                for (j, &n) in domain.basis.iter().enumerate() {
                    if let Some(i) = codomain.position(n) {
                        matrix.set(i, j, field.one());
                    }
                }
                GradedMap { domain, codomain, matrix }
            })
            .collect();
        Ok(CechComplex { field, sum, cdeg_bound, tdeg_bound: tdeg, maps })
    }

    /// Largest C-degree whose pieces are not cut off by the t-window.
    pub fn certified_degree(&self) -> usize {
        let reach = (self.tdeg_bound + self.sum.min(0)) / 2;
        self.cdeg_bound.min(reach.max(0) as usize)
    }

    pub fn kernel_dim(&self, m: usize) -> usize {
        let g = &self.maps[m];
        g.domain.dim() - matrix_rank(&g.matrix)
    }

    pub fn cokernel_dim(&self, m: usize) -> usize {
        let g = &self.maps[m];
        g.codomain.dim() - matrix_rank(&g.matrix)
    }

    fn source_vector(&self, m: usize, terms: &LaurentTerms) -> Result<Vec<FieldElement>> {
        let piece = &self.maps[m].domain;
        let mut v = vec![self.field.zero(); piece.dim()];
        for &(k, mm, n) in terms {
            if mm != m {
                return Err(Error::Dimension(format!("term of C-degree {mm} in degree {m}")));
            }
            let i = piece
                .position(n)
                .ok_or_else(|| Error::IncreaseBounds(format!("C^{m} t^{n} outside the source window")))?;
            v[i] += self.field.int(k);
        }
        Ok(v)
    }

    /// Basis of Gamma in C-degree k, as t-degrees of C^k t^j.
    fn gamma_basis(k: usize) -> Vec<i64> {
        (-2 * k as i64..=0).collect()
    }

    /// Check a presentation degree by degree up to the certified degree.
    pub fn check_presentation(&self, pres: &Presentation) -> Result<Vec<DegreeRow>> {
        let top = self.certified_degree();
        let gdeg: Vec<usize> = pres.generators.iter().map(homogeneous_degree).collect::<Result<_>>()?;
        let rel_terms: Vec<Vec<(usize, LaurentTerms)>> =
            pres.relations.iter().map(|r| r.iter().map(|(i, g)| (*i, gamma_terms(g))).collect()).collect();
        let mut rdeg = Vec::new();
        for r in &rel_terms {
            let mut deg = None;
            for (i, t) in r {
                let dd = homogeneous_degree(t)? + gdeg[*i];
                if deg.is_some_and(|x| x != dd) {
                    return Err(Error::Dimension("inhomogeneous relation".into()));
                }
                deg = Some(dd);
            }
            rdeg.push(deg.unwrap_or(0));
        }
        let needed = gdeg.iter().chain(&rdeg).copied().max().unwrap_or(0);
        if needed > top {
            return Err(Error::IncreaseBounds(format!("degree {needed} needed, {top} certified")));
        }
        let mut rows = Vec::new();
        for m in 0..=top {
            let src = &self.maps[m];
            // free module in degree m: for each generator, Gamma_{m - d_i}
            let mut offsets = Vec::new();
            let mut free_dim = 0;
            for &dg in &gdeg {
                offsets.push(free_dim);
                if m >= dg {
                    free_dim += Self::gamma_basis(m - dg).len();
                }
            }
            let mut phi_cols = Vec::new();
            for (gi, g) in pres.generators.iter().enumerate() {
                if m < gdeg[gi] {
                    continue;
                }
                let k = m - gdeg[gi];
                for j in Self::gamma_basis(k) {
                    let prod: LaurentTerms = g.iter().map(|&(c, mm, n)| (c, mm + k, n + j)).collect();
                    phi_cols.push(self.source_vector(m, &prod)?);
                }
            }
            let phi = GFMatrix::from_columns(self.field, src.domain.dim(), &phi_cols);
            for col in &phi_cols {
                if src.matrix.mul_vec(col)?.iter().any(|x| !x.is_zero()) {
                    return Err(Error::Dimension(format!("generator product not in the kernel in degree {m}")));
                }
            }
            let generated = matrix_rank(&phi);
            let syzygy = free_dim - generated;
            let mut rel_vecs = Vec::new();
            for (r, terms) in rel_terms.iter().enumerate() {
                if m < rdeg[r] {
                    continue;
                }
                let k = m - rdeg[r];
                for j in Self::gamma_basis(k) {
                    let mut v = vec![self.field.zero(); free_dim];
                    for (gi, t) in terms {
                        let gk = m - gdeg[*gi];
                        for &(c, _, n) in t {
                            let pos = offsets[*gi] + (n + j + 2 * gk as i64) as usize;
                            v[pos] += self.field.int(c);
                        }
                    }
                    if phi.mul_vec(&v)?.iter().any(|x| !x.is_zero()) {
                        return Err(Error::Dimension(format!("relation {r} fails in degree {m}")));
                    }
                    rel_vecs.push(v);
                }
            }
            let relation_span = if rel_vecs.is_empty() {
                0
            } else {
                matrix_rank(&GFMatrix::from_columns(self.field, free_dim, &rel_vecs))
            };
            rows.push(DegreeRow {
                c_degree: m,
                source_dim: src.domain.dim(),
                kernel_dim: self.kernel_dim(m),
                cokernel_dim: self.cokernel_dim(m),
                generated_dim: generated,
                syzygy_dim: syzygy,
                relation_span,
            });
        }
        Ok(rows)
    }

    /// Cokernel in degree m as the target monomials outside the image.
    fn cokernel_monomials(&self, m: usize) -> Vec<i64> {
        let g = &self.maps[m];
        g.codomain
            .basis
            .iter()
            .enumerate()
            .filter(|(i, _)| g.matrix.row(*i).iter().all(|x| x.is_zero()))
            .map(|(_, &n)| n)
            .collect()
    }

    /// H^1 basis (degree, t-degree) up to the certified degree; errors if the
    /// top certified degree still carries cokernel.
    pub fn h1_basis(&self) -> Result<Vec<(usize, i64)>> {
        let top = self.certified_degree();
        if self.cokernel_dim(top) != 0 {
            return Err(Error::IncreaseBounds("cokernel reaches the top degree".into()));
        }
        Ok((0..=top).flat_map(|m| self.cokernel_monomials(m).into_iter().map(move |n| (m, n))).collect())
    }

    /// X v in H^1 for X one of B, C, D, in H^1 coordinates.
    fn act(&self, basis: &[(usize, i64)], which: usize, v: (usize, i64)) -> Vec<FieldElement> {
        let (sign, dn) = match which {
            0 => (-1, -2),
            1 => (1, 0),
            _ => (1, -1),
        };
        let target = (v.0 + 1, v.1 + dn);
        basis.iter().map(|&e| if e == target { self.field.int(sign) } else { self.field.zero() }).collect()
    }

    pub fn h1_annihilated(&self) -> Result<bool> {
        let basis = self.h1_basis()?;
        Ok(basis.iter().all(|&v| (0..3).all(|w| self.act(&basis, w, v).iter().all(|x| x.is_zero()))))
    }

    /// dim H^1 / m_P H^1 at the point P = (B, C, D).
    pub fn h1_fiber_rank(&self, point: [FieldElement; 3]) -> Result<usize> {
        let basis = self.h1_basis()?;
        if basis.is_empty() {
            return Ok(0);
        }
        let mut cols = Vec::new();
        for (i, &v) in basis.iter().enumerate() {
            for (w, &pw) in point.iter().enumerate() {
                let mut col = self.act(&basis, w, v);
                col[i] -= pw;
                cols.push(col);
            }
        }
        let m = GFMatrix::from_columns(self.field, basis.len(), &cols);
        Ok(basis.len() - matrix_rank(&m))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CechReport {
    pub sum: i64,
    pub cdeg_bound: usize,
    pub tdeg_bound: usize,
    pub certified_degree: usize,
    pub degrees: Vec<DegreeRow>,
    pub h0_generated: bool,
    pub relations_complete: bool,
    pub missing_syzygies: usize,
    pub h1_dim: usize,
    pub h1_annihilated: bool,
}

impl CechReport {
    /// Stated generators, stated relations, and the stated H^1.
    pub fn matches_statement(&self) -> bool {
        let h1_ok = if self.sum == 2 { self.h1_dim == 1 && self.h1_annihilated } else { self.h1_dim == 0 };
        self.h0_generated && self.relations_complete && h1_ok
    }

    fn summary(&self, upto: usize) -> (bool, usize, bool, Vec<DegreeRow>) {
        // the source window grows with the t-bound; everything else must not move
        let rows = self
            .degrees
            .iter()
            .filter(|r| r.c_degree <= upto)
            .map(|r| DegreeRow { source_dim: 0, ..r.clone() })
            .collect();
        (self.h0_generated, self.h1_dim, self.h1_annihilated, rows)
    }
}

pub fn check_against(cx: &CechComplex, pres: &Presentation) -> Result<CechReport> {
    let degrees = cx.check_presentation(pres)?;
    let h1 = cx.h1_basis()?;
    Ok(CechReport {
        sum: cx.sum,
        cdeg_bound: cx.cdeg_bound,
        tdeg_bound: cx.tdeg_bound as usize,
        certified_degree: cx.certified_degree(),
        h0_generated: degrees.iter().all(|r| r.generated_dim == r.kernel_dim),
        relations_complete: degrees.iter().all(|r| r.relation_span == r.syzygy_dim),
        missing_syzygies: degrees.iter().map(|r| r.syzygy_dim - r.relation_span).sum(),
        degrees,
        h1_dim: h1.len(),
        h1_annihilated: cx.h1_annihilated()?,
    })
}

/// Kernel and cokernel of the class-3 complex against the stated presentation.
pub fn cech_class3(field: &'static FieldSpec, sum: i64, cdeg_bound: usize, tdeg_bound: usize) -> Result<CechReport> {
    let cx = CechComplex::new(field, sum, cdeg_bound, tdeg_bound)?;
    check_against(&cx, &stated_presentation(sum)?)
}

/// Same report at doubled bounds agrees on every degree both certify.
pub fn cech_class3_stable(field: &'static FieldSpec, sum: i64, cdeg_bound: usize, tdeg_bound: usize) -> Result<bool> {
    let a = cech_class3(field, sum, cdeg_bound, tdeg_bound)?;
    let b = cech_class3(field, sum, 2 * cdeg_bound, 2 * tdeg_bound)?;
    let upto = a.certified_degree;
    Ok(a.summary(upto) == b.summary(upto))
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberScan {
    pub sum: i64,
    pub origin_rank: usize,
    pub off_origin_points: usize,
    pub off_origin_max_rank: usize,
}

/// Fiber rank of H^1 at the origin and at `samples` seeded nonzero cone points.
pub fn h1_fiber_scan(field: &'static FieldSpec, sum: i64, samples: usize, seed: u64) -> Result<FiberScan> {
    let cx = CechComplex::new(field, sum, 4, 8)?;
    let mut pts = cone_points_off_origin(field);
    pts.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    pts.truncate(samples);
    let mut max = 0;
    for p in &pts {
        max = max.max(cx.h1_fiber_rank(*p)?);
    }
    Ok(FiberScan {
        sum,
        origin_rank: cx.h1_fiber_rank([field.zero(); 3])?,
        off_origin_points: pts.len(),
        off_origin_max_rank: max,
    })
}

/// Kernel basis vectors of the class-3 map in one degree, as t-degrees.
pub fn h0_monomials(field: &'static FieldSpec, sum: i64, m: usize) -> Result<Vec<i64>> {
    let cx = CechComplex::new(field, sum, m.max(4), (2 * m + 4).max(4))?;
    let g = &cx.maps[m];
    let ker = kernel_basis(&g.matrix);
    let mut out: Vec<i64> = ker
        .iter()
        .filter_map(|v| {
            let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
            (nz.len() == 1).then(|| g.domain.basis[nz[0]])
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Cohomology factor for the Künneth rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    /// O(n) on the projective line
    P1(i64),
    /// structure sheaf of the affine line
    A1,
}

/// Nonvanishing of H^0, H^1.
pub fn factor_cohomology(f: Factor) -> [bool; 2] {
    match f {
        Factor::P1(n) => [n >= 0, n <= -2],
        Factor::A1 => [true, false],
    }
}

/// Nonvanishing of H^i of a product, i = 0, 1, 2.
pub fn kunneth(a: Factor, b: Factor) -> [bool; 3] {
    let (x, y) = (factor_cohomology(a), factor_cohomology(b));
    let mut out = [false; 3];
    for i in 0..2 {
        for j in 0..2 {
            out[i + j] |= x[i] && y[j];
        }
    }
    out
}

/// Nonvanishing of R^i Gamma of p^* O(-1)^delta (x) q^* O(-1)^eps on a chart
/// of class 1, 2, 4 or 5.
pub fn kunneth_vanishing_check(class: ChartClass, delta: u8, eps: u8) -> Result<[bool; 3]> {
    if delta > 1 || eps > 1 {
        return Err(Error::OutOfRange("twists must be 0 or 1".into()));
    }
    let (pd, pe) = (Factor::P1(-(delta as i64)), Factor::P1(-(eps as i64)));
    Ok(match class {
        ChartClass::One => kunneth(pd, pe),
        ChartClass::Two => kunneth(pd, Factor::A1),
        ChartClass::Four => kunneth(Factor::A1, Factor::A1),
        ChartClass::Five => kunneth(Factor::A1, pe),
        other => return Err(Error::OutOfRange(format!("class {other} has no product description"))),
    })
}

/// Nonvanishing of R^0, R^1 on a class-3 chart with twist sum s, from the Čech complex.
pub fn class3_cohomology(sum: i64) -> Result<[bool; 2]> {
    let field = FieldSpec::prime(5)?;
    let cx = CechComplex::new(field, sum, 4, 10)?;
    let top = cx.certified_degree();
    Ok([(0..=top).any(|m| cx.kernel_dim(m) > 0), !cx.h1_basis()?.is_empty()])
}

fn factor_degrees(class: ChartClass, delta: u8, eps: u8, class3: &[[bool; 2]; 3]) -> Result<Vec<usize>> {
    let nz: Vec<bool> = match class {
        ChartClass::Three => class3[(delta + eps) as usize].to_vec(),
        c => kunneth_vanishing_check(c, delta, eps)?.to_vec(),
    };
    Ok((0..nz.len()).filter(|&i| nz[i]).collect())
}

/// Nonvanishing of R^b Gamma(wedge^a E) from the per-factor tables.
pub fn koszul_vanishing_pattern(classes: &[ChartClass], a: usize, b: usize) -> Result<bool> {
    let f = classes.len();
    if a == 0 || a > f || b < a {
        return Err(Error::OutOfRange(format!("need 0 < a <= f and b >= a, got a={a}, b={b}, f={f}")));
    }
    if classes.contains(&ChartClass::Empty) {
        return Err(Error::ChartEmpty);
    }
    let class3 = [class3_cohomology(0)?, class3_cohomology(1)?, class3_cohomology(2)?];
    for mask in 0u64..(1 << f) {
        if mask.count_ones() as usize != a {
            continue;
        }
        let e = |j: usize| (mask >> (j % f) & 1) as u8;
        // factor j: q_j^* O(-1)^{e_j} (x) p_j^* O(-1)^{e_{j+1}}
        let mut reach = vec![true];
        for (j, &cl) in classes.iter().enumerate() {
            let degs = factor_degrees(cl, e(j + 1), e(j), &class3)?;
            let mut next = vec![false; reach.len() + 2];
            for (i, &r) in reach.iter().enumerate() {
                if r {
                    for &dd in &degs {
                        next[i + dd] = true;
                    }
                }
            }
            reach = next;
        }
        if reach.get(b).copied().unwrap_or(false) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A linear form a x + b y.
pub type LinearForm = [FieldElement; 2];

/// sum over terms of (form at position p) (x) (form at position q).
#[derive(Clone, Debug)]
pub struct Section {
    pub positions: (usize, usize),
    pub terms: Vec<(LinearForm, LinearForm)>,
}

fn tensor_dim(degrees: &[usize]) -> usize {
    degrees.iter().map(|d| d + 1).product()
}

/// Basis index of a tuple of y-exponents, last position fastest.
fn tensor_index(degrees: &[usize], exps: &[usize]) -> usize {
    degrees.iter().zip(exps).fold(0, |acc, (d, e)| acc * (d + 1) + e)
}

fn tensor_exps(degrees: &[usize], mut idx: usize) -> Vec<usize> {
    let mut out = vec![0; degrees.len()];
    for q in (0..degrees.len()).rev() {
        out[q] = idx % (degrees[q] + 1);
        idx /= degrees[q] + 1;
    }
    out
}

/// Matrix of tensoring with a section, domain degrees -> degrees + 1 at both positions.
pub fn section_matrix(field: &'static FieldSpec, degrees: &[usize], s: &Section) -> GFMatrix {
    let (p, q) = s.positions;
    let mut cod = degrees.to_vec();
    cod[p] += 1;
    cod[q] += 1;
    let mut m = GFMatrix::zeros(field, tensor_dim(&cod), tensor_dim(degrees));
    for col in 0..tensor_dim(degrees) {
        let e = tensor_exps(degrees, col);
        for (l1, l2) in &s.terms {
            for (i1, c1) in l1.iter().enumerate() {
                for (i2, c2) in l2.iter().enumerate() {
                    let coef = *c1 * *c2;
                    if coef.is_zero() {
                        continue;
                    }
                    let mut ee = e.clone();
                    ee[p] += i1;
                    ee[q] += i2;
                    let row = tensor_index(&cod, &ee);
                    m.set(row, col, m.get(row, col) + coef);
                }
            }
        }
    }
    m
}

/// Specialised Koszul data: codomain degrees and, per domain summand, its degrees and section.
#[derive(Clone, Debug)]
pub struct KoszulSpecialization {
    pub codomain: Vec<usize>,
    pub summands: Vec<(Vec<usize>, Section)>,
}

impl KoszulSpecialization {
    pub fn matrix(&self, field: &'static FieldSpec) -> GFMatrix {
        let rows = tensor_dim(&self.codomain);
        let mut cols = Vec::new();
        for (deg, s) in &self.summands {
            let m = section_matrix(field, deg, s);
            for j in 0..m.cols() {
                cols.push((0..rows).map(|i| m.get(i, j)).collect::<Vec<_>>());
            }
        }
        GFMatrix::from_columns(field, rows, &cols)
    }

    /// x_{p} (x) y_{q} - (u x + w y)... : the section [x_p : y_p] kappa^{-1} vs [x_q : y_q].
    fn glue(field: &'static FieldSpec, p: usize, q: usize, kinv: Mat2) -> Section {
        let (z, o) = (field.zero(), field.one());
        // (u, w) = (x, y) kinv
        let u = [kinv[0][0], kinv[1][0]];
        let w = [kinv[0][1], kinv[1][1]];
        Section { positions: (p, q), terms: vec![(u, [z, o]), ([-w[0], -w[1]], [o, z])] }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KoszulRank {
    pub length: usize,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub rank: usize,
    pub cokernel_rank: usize,
    /// the pure-power witnesses stay independent modulo the image
    pub witnesses_independent: Option<bool>,
}

fn pure_vector(degrees: &[usize], pick_y: &[bool], field: &'static FieldSpec) -> Vec<FieldElement> {
    let mut v = vec![field.zero(); tensor_dim(degrees)];
    let exps: Vec<usize> = degrees.iter().zip(pick_y).map(|(d, &y)| if y { *d } else { 0 }).collect();
    v[tensor_index(degrees, &exps)] = field.one();
    v
}

fn independent_mod_image(field: &'static FieldSpec, image: &GFMatrix, witnesses: &[Vec<FieldElement>]) -> Result<bool> {
    let w = GFMatrix::from_columns(field, image.rows(), witnesses);
    let joint = image.hstack(&w)?;
    Ok(matrix_rank(&joint) - matrix_rank(image) == witnesses.len())
}

/// Cokernel rank of the E1 edge map on the all-class-3 chart at the point
/// with kappa = X = id.
pub fn e1_cokernel_rank_all3(field: &'static FieldSpec, f: usize) -> Result<KoszulRank> {
    if !(1..=4).contains(&f) {
        return Err(Error::OutOfRange(format!("f = {f} not in 1..=4")));
    }
    let codomain = vec![2; f];
    let id = mat2_identity(field);
    let spec = if f == 1 {
        // 1 -> x0 y0 - y0 x0 = 0
        KoszulSpecialization { codomain: codomain.clone(), summands: vec![] }
    } else {
        let summands = (0..f)
            .map(|j| {
                let prev = (j + f - 1) % f;
                let mut deg = vec![2; f];
                deg[prev] = 1;
                deg[j] = 1;
                (deg, KoszulSpecialization::glue(field, prev, j, id))
            })
            .collect();
        KoszulSpecialization { codomain: codomain.clone(), summands }
    };
    let codim = tensor_dim(&codomain);
    let domain_dim = if f == 1 { 1 } else { spec.summands.iter().map(|(d, _)| tensor_dim(d)).sum() };
    let m = spec.matrix(field);
    let rank = if spec.summands.is_empty() { 0 } else { matrix_rank(&m) };
    let witnesses_independent = if f == 1 {
        None
    } else {
        let xs = vec![false; f];
        let ys = vec![true; f];
        let mut mixed = vec![false; f];
        mixed[1] = true;
        let w = [xs, mixed, ys].iter().map(|p| pure_vector(&codomain, p, field)).collect::<Vec<_>>();
        Some(independent_mod_image(field, &m, &w)?)
    };
    Ok(KoszulRank {
        length: f,
        domain_dim,
        codomain_dim: codim,
        rank,
        cokernel_rank: codim - rank,
        witnesses_independent,
    })
}

/// Star-sequence E1 map for a sequence of length l >= 4, glued through the
/// given kappas (one per interior position). With all kappas the identity
/// the two pure-power witnesses are also checked.
pub fn e1_cokernel_rank_star_at(field: &'static FieldSpec, l: usize, kappas: &[Mat2]) -> Result<KoszulRank> {
    if l < 4 {
        return Err(Error::OutOfRange(format!("sequence length {l} < 4")));
    }
    let n = l - 2;
    if kappas.len() != n - 1 {
        return Err(Error::Dimension(format!("{} gluing matrices for length {l}", kappas.len())));
    }
    // eps over positions 0..=n; factor q has degree eps_q + eps_{q+1}
    let degrees_for = |eps: &[usize]| (0..n).map(|q| eps[q] + eps[q + 1]).collect::<Vec<_>>();
    let mut top = vec![1; n + 1];
    top[0] = 0;
    top[n] = 0;
    let codomain = degrees_for(&top);
    let mut summands = Vec::new();
    for j in 1..n {
        let mut eps = top.clone();
        eps[j] = 0;
        let kinv = mat2_inv(kappas[j - 1]).ok_or(Error::Singular)?;
        summands.push((degrees_for(&eps), KoszulSpecialization::glue(field, j - 1, j, kinv)));
    }
    let spec = KoszulSpecialization { codomain: codomain.clone(), summands };
    let m = spec.matrix(field);
    let rank = matrix_rank(&m);
    let codim = tensor_dim(&codomain);
    let domain_dim = spec.summands.iter().map(|(d, _)| tensor_dim(d)).sum();
    let at_identity = kappas.iter().all(|k| *k == mat2_identity(field));
    let witnesses_independent = if at_identity {
        let w = [vec![false; n], vec![true; n]].iter().map(|p| pure_vector(&codomain, p, field)).collect::<Vec<_>>();
        Some(independent_mod_image(field, &m, &w)?)
    } else {
        None
    };
    Ok(KoszulRank {
        length: l,
        domain_dim,
        codomain_dim: codim,
        rank,
        cokernel_rank: codim - rank,
        witnesses_independent,
    })
}

/// Minimum cokernel rank over seeded random gluings, plus the identity gluing.
pub fn e1_cokernel_rank_star(
    field: &'static FieldSpec,
    l: usize,
    samples: usize,
    seed: u64,
) -> Result<Vec<KoszulRank>> {
    let n = l.saturating_sub(2).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![e1_cokernel_rank_star_at(field, l, &vec![mat2_identity(field); n - 1])?];
    for _ in 0..samples {
        let ks: Vec<_> = (0..n - 1).map(|_| random_gl2(field, &mut rng)).collect();
        out.push(e1_cokernel_rank_star_at(field, l, &ks)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ChartClass::*;

    fn f5() -> &'static FieldSpec {
        FieldSpec::prime(5).unwrap()
    }

    #[test]
    fn kernel_windows() {
        assert_eq!(h0_monomials(f5(), 0, 1).unwrap(), vec![-2, -1, 0]);
        assert_eq!(h0_monomials(f5(), -2, 0).unwrap(), vec![-2, -1, 0]);
        assert_eq!(h0_monomials(f5(), 2, 0).unwrap(), Vec::<i64>::new());
        assert_eq!(h0_monomials(f5(), 2, 1).unwrap(), vec![0]);
    }

    #[test]
    fn presentations_except_minus_two() {
        for s in [-1, 0, 1, 2] {
            let r = cech_class3(f5(), s, 4, 8).unwrap();
            assert!(r.matches_statement(), "{r:?}");
        }
    }

    #[test]
    fn minus_two_misses_one_degree_one_syzygy() {
        let r = cech_class3(f5(), -2, 4, 8).unwrap();
        assert!(r.h0_generated && r.h1_dim == 0);
        let d1 = &r.degrees[1];
        assert_eq!((d1.syzygy_dim, d1.relation_span), (4, 3));
        assert!(!r.relations_complete);
        let cx = CechComplex::new(f5(), -2, 4, 8).unwrap();
        let fixed = check_against(&cx, &completed_presentation_minus_two()).unwrap();
        assert!(fixed.matches_statement(), "{fixed:?}");
    }

    #[test]
    fn h1_supported_at_origin() {
        let f = FieldSpec::new(7, 2).unwrap();
        let cx = CechComplex::new(f, 2, 4, 8).unwrap();
        assert_eq!(cx.h1_fiber_rank([f.zero(); 3]).unwrap(), 1);
        let (b, t) = (f.int(3), f.int(2));
        assert_eq!(cx.h1_fiber_rank([b, -b * t * t, -b * t]).unwrap(), 0);
        let cx = CechComplex::new(f, 1, 4, 8).unwrap();
        assert_eq!(cx.h1_fiber_rank([f.zero(); 3]).unwrap(), 0);
    }

    #[test]
    fn fiber_scan_off_origin() {
        let f = FieldSpec::new(7, 2).unwrap();
        let s = h1_fiber_scan(f, 2, 60, 1).unwrap();
        assert_eq!((s.origin_rank, s.off_origin_points, s.off_origin_max_rank), (1, 60, 0));
        assert_eq!(cone_points_off_origin(FieldSpec::prime(5).unwrap()).len(), 24);
    }

    #[test]
    fn bounds_are_validated() {
        assert!(matches!(cech_class3(f5(), 0, 3, 8), Err(Error::IncreaseBounds(_))));
        assert!(cech_class3(f5(), 3, 4, 8).is_err());
        assert!(cech_class3_stable(f5(), -1, 4, 4).unwrap());
    }

    #[test]
    fn kunneth_table_cells() {
        for delta in 0..2u8 {
            for eps in 0..2u8 {
                let expect = |cond: bool| [cond, false, false];
                assert_eq!(kunneth_vanishing_check(One, delta, eps).unwrap(), expect(delta == 0 && eps == 0));
                assert_eq!(kunneth_vanishing_check(Two, delta, eps).unwrap(), expect(delta == 0));
                assert_eq!(kunneth_vanishing_check(Four, delta, eps).unwrap(), expect(true));
                assert_eq!(kunneth_vanishing_check(Five, delta, eps).unwrap(), expect(eps == 0));
            }
        }
        assert!(kunneth_vanishing_check(Three, 0, 0).is_err());
        assert_eq!(kunneth(Factor::P1(-2), Factor::P1(-2)), [false, false, true]);
    }

    #[test]
    fn koszul_pattern_examples() {
        assert!(koszul_vanishing_pattern(&[Three, Three], 2, 2).unwrap());
        assert!(!koszul_vanishing_pattern(&[Three, Four], 2, 2).unwrap());
        assert!(!koszul_vanishing_pattern(&[Three, Three], 1, 2).unwrap());
        assert!(koszul_vanishing_pattern(&[Three], 1, 1).unwrap());
        assert!(koszul_vanishing_pattern(&[Three], 0, 1).is_err());
    }

    #[test]
    fn all3_ranks() {
        let r = e1_cokernel_rank_all3(f5(), 1).unwrap();
        assert_eq!((r.codomain_dim, r.cokernel_rank), (3, 3));
        let r = e1_cokernel_rank_all3(f5(), 2).unwrap();
        assert_eq!((r.domain_dim, r.codomain_dim), (8, 9));
        assert!(r.cokernel_rank >= 3);
        assert_eq!(r.witnesses_independent, Some(true));
        assert!(e1_cokernel_rank_all3(f5(), 5).is_err());
    }

    #[test]
    fn star_length_four() {
        let r = e1_cokernel_rank_star_at(f5(), 4, &[mat2_identity(f5())]).unwrap();
        assert_eq!((r.domain_dim, r.codomain_dim, r.rank), (1, 4, 1));
        assert_eq!(r.witnesses_independent, Some(true));
    }
}
