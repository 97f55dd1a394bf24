//! Laurent polynomials in v over F_q and 2x2 matrices of them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    field: &'static FieldSpec,
    terms: BTreeMap<i64, FieldElement>,
}

impl LaurentPoly {
    pub fn zero(field: &'static FieldSpec) -> LaurentPoly {
        LaurentPoly { field, terms: BTreeMap::new() }
    }

    pub fn constant(c: FieldElement) -> LaurentPoly {
        Self::monomial(c, 0)
    }

    pub fn one(field: &'static FieldSpec) -> LaurentPoly {
        Self::constant(field.one())
    }

    /// c v^n
    pub fn monomial(c: FieldElement, n: i64) -> LaurentPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(n, c);
        }
        LaurentPoly { field: c.field(), terms }
    }

    /// v^n
    pub fn v_pow(field: &'static FieldSpec, n: i64) -> LaurentPoly {
        Self::monomial(field.one(), n)
    }

    pub fn from_terms(field: &'static FieldSpec, terms: &[(i64, FieldElement)]) -> LaurentPoly {
        let mut out = Self::zero(field);
        for &(n, c) in terms {
            out = out + Self::monomial(c, n);
        }
        out
    }

    pub fn field(&self) -> &'static FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, n: i64) -> FieldElement {
        self.terms.get(&n).copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, FieldElement)> + '_ {
        self.terms.iter().map(|(&n, &c)| (n, c))
    }

    pub fn v_valuation(&self) -> Result<i64> {
        self.terms.keys().next().copied().ok_or(Error::ZeroValuation)
    }

    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// No negative powers of v.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|&n| n >= 0)
    }

    /// v divides the element inside F[[v]]: polynomial with zero constant term.
    pub fn divisible_by_v(&self) -> bool {
        self.terms.keys().all(|&n| n >= 1)
    }

    /// Multiply by v^n.
    pub fn shift(&self, n: i64) -> LaurentPoly {
        LaurentPoly { field: self.field, terms: self.terms.iter().map(|(&k, &c)| (k + n, c)).collect() }
    }

    pub fn scale(&self, c: FieldElement) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero(self.field);
        }
        LaurentPoly { field: self.field, terms: self.terms.iter().map(|(&k, &x)| (k, x * c)).collect() }
    }

    /// Single term c v^n, if the polynomial is one.
    pub fn as_monomial(&self) -> Option<(FieldElement, i64)> {
        if self.terms.len() == 1 {
            let (&n, &c) = self.terms.iter().next().unwrap();
            Some((c, n))
        } else {
            None
        }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        for (n, c) in rhs.terms {
            let sum = self.coeff(n) + c;
            if sum.is_zero() {
                self.terms.remove(&n);
            } else {
                self.terms.insert(n, sum);
            }
        }
        self
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { field: self.field, terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self + (-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out: BTreeMap<i64, FieldElement> = BTreeMap::new();
        for (&i, &a) in &self.terms {
            for (&j, &b) in &rhs.terms {
                let e = out.entry(i + j).or_insert_with(|| a.field().zero());
                *e += a * b;
            }
        }
        out.retain(|_, c| !c.is_zero());
        LaurentPoly { field: self.field, terms: out }
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&n, c)| match n {
                0 => format!("{c}"),
                1 => format!("({c})v"),
                _ => format!("({c})v^{n}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// [[a, b], [c, d]] over F_q[v, 1/v].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat2Laurent {
    pub a: LaurentPoly,
    pub b: LaurentPoly,
    pub c: LaurentPoly,
    pub d: LaurentPoly,
}

impl Mat2Laurent {
    pub fn new(a: LaurentPoly, b: LaurentPoly, c: LaurentPoly, d: LaurentPoly) -> Mat2Laurent {
        Mat2Laurent { a, b, c, d }
    }

    pub fn identity(field: &'static FieldSpec) -> Mat2Laurent {
        Self::diag(LaurentPoly::one(field), LaurentPoly::one(field))
    }

    pub fn diag(a: LaurentPoly, d: LaurentPoly) -> Mat2Laurent {
        let z = LaurentPoly::zero(a.field());
        Mat2Laurent { a, b: z.clone(), c: z, d }
    }

    /// [[0, b], [c, 0]]
    pub fn antidiag(b: LaurentPoly, c: LaurentPoly) -> Mat2Laurent {
        let z = LaurentPoly::zero(b.field());
        Mat2Laurent { a: z.clone(), b, c, d: z }
    }

    pub fn constant(m: [[FieldElement; 2]; 2]) -> Mat2Laurent {
        Mat2Laurent {
            a: LaurentPoly::constant(m[0][0]),
            b: LaurentPoly::constant(m[0][1]),
            c: LaurentPoly::constant(m[1][0]),
            d: LaurentPoly::constant(m[1][1]),
        }
    }

    pub fn field(&self) -> &'static FieldSpec {
        self.a.field()
    }

    pub fn det(&self) -> LaurentPoly {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn scale(&self, s: &LaurentPoly) -> Mat2Laurent {
        Mat2Laurent { a: &self.a * s, b: &self.b * s, c: &self.c * s, d: &self.d * s }
    }

    /// Inverse when the determinant is a unit c v^n.
    pub fn inverse(&self) -> Option<Mat2Laurent> {
        let (c, n) = self.det().as_monomial()?;
        let inv = LaurentPoly::monomial(c.inv()?, -n);
        Some(Mat2Laurent { a: self.d.clone(), b: -self.b.clone(), c: -self.c.clone(), d: self.a.clone() }.scale(&inv))
    }

    pub fn entries(&self) -> [&LaurentPoly; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }
}

impl Mul for &Mat2Laurent {
    type Output = Mat2Laurent;
    fn mul(self, r: &Mat2Laurent) -> Mat2Laurent {
        Mat2Laurent {
            a: &self.a * &r.a + &self.b * &r.c,
            b: &self.a * &r.b + &self.b * &r.d,
            c: &self.c * &r.a + &self.d * &r.c,
            d: &self.c * &r.b + &self.d * &r.d,
        }
    }
}

pub fn mat_mul(a: &Mat2Laurent, b: &Mat2Laurent) -> Mat2Laurent {
    a * b
}

/// v^nu m v^{-nu} for the diagonal cocharacter nu = (nu0, nu1).
pub fn ad_diag_conj(m: &Mat2Laurent, nu: (i64, i64)) -> Mat2Laurent {
    let k = nu.0 - nu.1;
    Mat2Laurent { a: m.a.clone(), b: m.b.shift(k), c: m.c.shift(-k), d: m.d.clone() }
}

/// Polynomial entries, upper triangular mod v, determinant v times a unit.
pub fn is_in_a_eta(m: &Mat2Laurent) -> bool {
    if !m.entries().iter().all(|e| e.is_polynomial()) {
        return false;
    }
    if !m.c.divisible_by_v() {
        return false;
    }
    matches!(m.det().v_valuation(), Ok(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> &'static FieldSpec {
        FieldSpec::prime(5).unwrap()
    }

    fn v(n: i64) -> LaurentPoly {
        LaurentPoly::v_pow(f5(), n)
    }

    fn zero() -> LaurentPoly {
        LaurentPoly::zero(f5())
    }

    #[test]
    fn valuation_examples() {
        let f = f5();
        assert_eq!((v(1) + v(5)).v_valuation(), Ok(1));
        assert_eq!(LaurentPoly::monomial(f.int(3), -2).v_valuation(), Ok(-2));
        assert_eq!(zero().v_valuation(), Err(Error::ZeroValuation));
    }

    #[test]
    fn product_examples() {
        let f = f5();
        let a = Mat2Laurent::diag(v(1), v(0));
        let b = Mat2Laurent::diag(v(0), v(1));
        assert_eq!(&a * &b, Mat2Laurent::diag(v(1), v(1)));
        assert_eq!(&a * &Mat2Laurent::identity(f), a);
        let w = Mat2Laurent::antidiag(v(0), v(1));
        assert_eq!(&w * &w, Mat2Laurent::diag(v(1), v(1)));
    }

    #[test]
    fn conjugation_examples() {
        let w = Mat2Laurent::antidiag(v(0), v(1));
        assert_eq!(ad_diag_conj(&w, (1, 0)), Mat2Laurent::antidiag(v(1), v(0)));
        let d = Mat2Laurent::diag(v(2), v(-1));
        assert_eq!(ad_diag_conj(&d, (3, -4)), d);
        assert_eq!(ad_diag_conj(&w, (4, 3)), ad_diag_conj(&w, (1, 0)));
    }

    #[test]
    fn a_eta_examples() {
        assert!(is_in_a_eta(&Mat2Laurent::diag(v(0), v(1))));
        assert!(!is_in_a_eta(&Mat2Laurent::diag(v(-1), v(2))));
        assert!(is_in_a_eta(&Mat2Laurent::antidiag(v(0), v(1))));
        // lower-left constant fails the triangularity clause
        assert!(!is_in_a_eta(&Mat2Laurent::new(v(0), zero(), v(0), v(1))));
        // determinant of valuation 2
        assert!(!is_in_a_eta(&Mat2Laurent::diag(v(1), v(1))));
    }

    #[test]
    fn inverse_of_unit_det() {
        let f = f5();
        let m = Mat2Laurent::new(v(0), LaurentPoly::monomial(f.int(3), -1), zero(), v(1));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Mat2Laurent::identity(f));
    }
}
