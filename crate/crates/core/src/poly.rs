//! Sparse multivariate polynomials, enough for evaluation and Jacobians.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::linalg::{matrix_rank, GFMatrix};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPoly {
    field: &'static FieldSpec,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, FieldElement>,
}

impl MPoly {
    pub fn zero(field: &'static FieldSpec, nvars: usize) -> MPoly {
        MPoly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: FieldElement, nvars: usize) -> MPoly {
        let mut p = Self::zero(c.field(), nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(field: &'static FieldSpec, nvars: usize, i: usize) -> MPoly {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        let mut p = Self::zero(field, nvars);
        p.terms.insert(exps, field.one());
        p
    }

    /// The variables x_0, ..., x_{n-1}.
    pub fn vars(field: &'static FieldSpec, nvars: usize) -> Vec<MPoly> {
        (0..nvars).map(|i| Self::var(field, nvars, i)).collect()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: FieldElement) -> MPoly {
        let mut out = Self::zero(self.field, self.nvars);
        if c.is_zero() {
            return out;
        }
        for (e, &x) in &self.terms {
            out.terms.insert(e.clone(), x * c);
        }
        out
    }

    pub fn eval(&self, point: &[FieldElement]) -> Result<FieldElement> {
        if point.len() != self.nvars {
            return Err(Error::Dimension(format!("{} coordinates for {} variables", point.len(), self.nvars)));
        }
        let mut acc = self.field.zero();
        for (exps, &c) in &self.terms {
            let mut t = c;
            for (x, &k) in point.iter().zip(exps) {
                if k > 0 {
                    t *= x.pow(k as u64);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn derivative(&self, i: usize) -> MPoly {
        let mut out = Self::zero(self.field, self.nvars);
        for (exps, &c) in &self.terms {
            let k = exps[i];
            if k == 0 {
                continue;
            }
            let coef = c * self.field.int(k as i64);
            if coef.is_zero() {
                continue;
            }
            let mut e = exps.clone();
            e[i] -= 1;
            out.add_term(e, coef);
        }
        out
    }

    fn add_term(&mut self, exps: Vec<u32>, c: FieldElement) {
        let cur = self.terms.get(&exps).copied().unwrap_or_else(|| self.field.zero());
        let sum = cur + c;
        if sum.is_zero() {
            self.terms.remove(&exps);
        } else {
            self.terms.insert(exps, sum);
        }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut acc = Self::constant(self.field.one(), self.nvars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, &c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self + &(-rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(-self.field.one())
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.field, self.nvars);
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

/// Named generators of an ideal in a polynomial ring.
#[derive(Clone, Debug)]
pub struct IdealSpec {
    pub vars: Vec<&'static str>,
    pub gens: Vec<MPoly>,
}

impl IdealSpec {
    /// Does every generator vanish at the point?
    pub fn vanishes_at(&self, point: &[FieldElement]) -> Result<bool> {
        for g in &self.gens {
            if !g.eval(point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Jacobian matrix (generators by variables) evaluated at a point.
pub fn jacobian_at(gens: &[MPoly], point: &[FieldElement]) -> Result<GFMatrix> {
    let field = point.first().map(|x| x.field()).ok_or_else(|| Error::Dimension("empty point".into()))?;
    let n = point.len();
    let mut m = GFMatrix::zeros(field, gens.len(), n);
    for (i, g) in gens.iter().enumerate() {
        for j in 0..n {
            m.set(i, j, g.derivative(j).eval(point)?);
        }
    }
    Ok(m)
}

/// Rank of the Jacobian of the generators at a point of their zero locus.
pub fn jacobian_rank(equations: &IdealSpec, point: &[FieldElement]) -> Result<usize> {
    if !equations.vanishes_at(point)? {
        return Err(Error::OffLocus);
    }
    Ok(matrix_rank(&jacobian_at(&equations.gens, point)?))
}

/// Rank of the differential of a polynomial map at a point (no locus check).
pub fn differential_rank(map: &[MPoly], point: &[FieldElement]) -> Result<usize> {
    Ok(matrix_rank(&jacobian_at(map, point)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone(f: &'static FieldSpec) -> IdealSpec {
        let v = MPoly::vars(f, 3);
        let (b, c, d) = (&v[0], &v[1], &v[2]);
        IdealSpec { vars: vec!["B", "C", "D"], gens: vec![&(d * d) + &(b * c)] }
    }

    #[test]
    fn cone_jacobian() {
        let f = FieldSpec::prime(5).unwrap();
        let ideal = cone(f);
        assert_eq!(jacobian_rank(&ideal, &[f.zero(), f.zero(), f.zero()]), Ok(0));
        assert_eq!(jacobian_rank(&ideal, &[f.int(1), f.int(-1), f.int(1)]), Ok(1));
        assert_eq!(jacobian_rank(&ideal, &[f.int(1), f.int(1), f.int(1)]), Err(Error::OffLocus));
    }

    #[test]
    fn derivative_of_power() {
        let f = FieldSpec::prime(7).unwrap();
        let x = MPoly::var(f, 1, 0);
        // d/dx x^7 = 7 x^6 = 0 in characteristic 7
        assert!(x.pow(7).derivative(0).is_zero());
        assert_eq!(x.pow(3).derivative(0).eval(&[f.int(2)]).unwrap(), f.int(12));
    }
}
