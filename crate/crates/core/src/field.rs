//! Finite fields F_q, q = p^e with p > 3 prime and e <= 4.
//!
//! Elements are small `Copy` values that point at an interned field
//! descriptor, so the usual operators work without threading a context
//! through every call.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use rand::Rng;

use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 4;

/// Stored defining polynomials, coefficients low to high without the
/// leading 1.
const IRREDUCIBLES: &[(u64, usize, &[u64])] = &[
    (5, 2, &[1, 1]),
    (5, 3, &[1, 0, 1]),
    (5, 4, &[1, 0, 1, 1]),
    (7, 2, &[1, 0]),
    (7, 3, &[1, 0, 1]),
    (7, 4, &[1, 0, 0, 1]),
    (11, 2, &[1, 0]),
    (11, 3, &[1, 0, 4]),
    (11, 4, &[1, 0, 0, 4]),
    (13, 2, &[1, 3]),
    (13, 3, &[1, 0, 4]),
    (13, 4, &[1, 0, 0, 1]),
];

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, PartialEq, Eq)]
pub struct FieldSpec {
    p: u64,
    e: usize,
    /// Monic modulus, low to high, length e + 1.
    modulus: Vec<u64>,
}

fn registry() -> &'static Mutex<Vec<&'static FieldSpec>> {
    static REG: OnceLock<Mutex<Vec<&'static FieldSpec>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(Vec::new()))
}

impl FieldSpec {
    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<&'static FieldSpec> {
        Self::new(p, 1)
    }

    /// F_{p^e} from the stored polynomial table.
    pub fn new(p: u64, e: usize) -> Result<&'static FieldSpec> {
        if e == 1 {
            return Self::with_modulus(p, &[0]);
        }
        let tail = IRREDUCIBLES
            .iter()
            .find(|(q, d, _)| *q == p && *d == e)
            .map(|(_, _, c)| *c)
            .ok_or(Error::UnsupportedExtension { p, e })?;
        Self::with_modulus(p, tail)
    }

    /// Field from an explicit monic modulus X^e + tail[e-1] X^{e-1} + ... + tail[0].
    pub fn with_modulus(p: u64, tail: &[u64]) -> Result<&'static FieldSpec> {
        if !is_prime(p) || p <= 3 || p >= (1 << 31) {
            return Err(Error::BadCharacteristic(p));
        }
        let e = tail.len();
        if e == 0 || e > MAX_DEGREE {
            return Err(Error::UnsupportedExtension { p, e });
        }
        let mut modulus: Vec<u64> = tail.iter().map(|c| c % p).collect();
        modulus.push(1);
        let mut reg = registry().lock().expect("field registry poisoned");
        if let Some(f) = reg.iter().find(|f| f.p == p && f.modulus == modulus) {
            return Ok(f);
        }
        if e > 1 && !rabin_irreducible(p, &modulus) {
            return Err(Error::Reducible(e));
        }
        let spec: &'static FieldSpec = Box::leak(Box::new(FieldSpec { p, e, modulus }));
        reg.push(spec);
        Ok(spec)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.e
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn size(&self) -> u64 {
        self.p.pow(self.e as u32)
    }

    pub fn zero(&'static self) -> FieldElement {
        FieldElement { field: self, c: [0; MAX_DEGREE] }
    }

    pub fn one(&'static self) -> FieldElement {
        self.int(1)
    }

    pub fn int(&'static self, n: i64) -> FieldElement {
        let mut c = [0; MAX_DEGREE];
        c[0] = n.rem_euclid(self.p as i64) as u64;
        FieldElement { field: self, c }
    }

    pub fn from_coeffs(&'static self, coeffs: &[u64]) -> FieldElement {
        let mut c = [0; MAX_DEGREE];
        for (i, x) in coeffs.iter().take(self.e).enumerate() {
            c[i] = x % self.p;
        }
        FieldElement { field: self, c }
    }

    /// The class of X in F_p[X]/(P).
    pub fn generator(&'static self) -> FieldElement {
        if self.e == 1 {
            // any nonzero element generates F_p as an F_p-algebra
            return self.one();
        }
        self.from_coeffs(&[0, 1])
    }

    /// Element with base-p digits of `index` as coefficients.
    pub fn element(&'static self, mut index: u64) -> FieldElement {
        let mut c = [0; MAX_DEGREE];
        for slot in c.iter_mut().take(self.e) {
            *slot = index % self.p;
            index /= self.p;
        }
        FieldElement { field: self, c }
    }

    pub fn elements(&'static self) -> impl Iterator<Item = FieldElement> {
        (0..self.size()).map(move |i| self.element(i))
    }

    pub fn random<R: Rng + ?Sized>(&'static self, rng: &mut R) -> FieldElement {
        let mut c = [0; MAX_DEGREE];
        for slot in c.iter_mut().take(self.e) {
            *slot = rng.gen_range(0..self.p);
        }
        FieldElement { field: self, c }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&'static self, rng: &mut R) -> FieldElement {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }
}

// --- polynomial helpers over F_p used only for the irreducibility test ---

fn trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(prod, m, p)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut n: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while n > 0 {
        if n & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        n >>= 1;
    }
    r
}

fn poly_rem(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    trim(&mut a);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while a.len() > dm && !(a.len() == 1 && a[0] == 0) {
        let da = a.len() - 1;
        let q = a[da] * lead_inv % p;
        if q != 0 {
            for (i, &mi) in m.iter().enumerate() {
                let idx = da - dm + i;
                a[idx] = (a[idx] + p - q * mi % p) % p;
            }
        }
        a.pop();
        trim(&mut a);
    }
    if a.is_empty() {
        a.push(0);
    }
    a
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !(y.len() == 1 && y[0] == 0) {
        let r = poly_rem(x.clone(), &y, p);
        x = y;
        y = r;
    }
    x
}

/// X^{p^d} mod m.
fn frobenius_power(m: &[u64], p: u64, d: usize) -> Vec<u64> {
    let mut x = poly_rem(vec![0, 1], m, p);
    for _ in 0..d {
        let mut acc = vec![1u64];
        let mut base = x.clone();
        let mut n = p;
        while n > 0 {
            if n & 1 == 1 {
                acc = poly_mulmod(&acc, &base, m, p);
            }
            base = poly_mulmod(&base, &base, m, p);
            n >>= 1;
        }
        x = acc;
    }
    x
}

fn x_power_minus_x(m: &[u64], p: u64, d: usize) -> Vec<u64> {
    let mut t = frobenius_power(m, p, d);
    if t.len() < 2 {
        t.resize(2, 0);
    }
    t[1] = (t[1] + p - 1) % p;
    trim(&mut t);
    t
}

/// Rabin's test: X^{p^e} = X mod P and gcd(P, X^{p^{e/r}} - X) = 1 for primes r | e.
fn rabin_irreducible(p: u64, m: &[u64]) -> bool {
    let e = m.len() - 1;
    let full = x_power_minus_x(m, p, e);
    if !(full.len() == 1 && full[0] == 0) {
        return false;
    }
    for r in 2..=e {
        if e.is_multiple_of(r) && is_prime(r as u64) {
            let g = poly_gcd(m, &x_power_minus_x(m, p, e / r), p);
            if g.len() > 1 {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Copy)]
pub struct FieldElement {
    field: &'static FieldSpec,
    c: [u64; MAX_DEGREE],
}

impl FieldElement {
    pub fn field(&self) -> &'static FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c[..self.field.e]
    }

    /// Inverse of `FieldSpec::element`.
    pub fn index(&self) -> u64 {
        self.coeffs().iter().rev().fold(0, |acc, &c| acc * self.field.p + c)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&x| x == 0)
    }

    /// The prime-field value when the element lies in F_p.
    pub fn as_prime(&self) -> Option<u64> {
        if self.c[1..].iter().all(|&x| x == 0) {
            Some(self.c[0])
        } else {
            None
        }
    }

    pub fn pow(self, mut n: u64) -> FieldElement {
        let mut acc = self.field.one();
        let mut base = self;
        while n > 0 {
            if n & 1 == 1 {
                acc *= base;
            }
            base *= base;
            n >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Option<FieldElement> {
        if self.is_zero() {
            None
        } else {
            Some(self.pow(self.field.size() - 2))
        }
    }

    pub fn is_square(self) -> bool {
        self.is_zero() || self.pow((self.field.size() - 1) / 2).is_one()
    }

    /// Tonelli-Shanks square root.
    pub fn sqrt(self) -> Option<FieldElement> {
        if self.is_zero() {
            return Some(self);
        }
        if !self.is_square() {
            return None;
        }
        let q = self.field.size();
        let mut s = 0;
        let mut odd = q - 1;
        while odd.is_multiple_of(2) {
            odd /= 2;
            s += 1;
        }
        let z = self.field.elements().find(|z| !z.is_zero() && !z.is_square()).expect("odd field has a non-square");
        let mut m = s;
        let mut c = z.pow(odd);
        let mut t = self.pow(odd);
        let mut r = self.pow(odd.div_ceil(2));
        while !t.is_one() {
            let mut i = 0;
            let mut tt = t;
            while !tt.is_one() {
                tt *= tt;
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b *= b;
            }
            m = i;
            c = b * b;
            t *= c;
            r *= b;
        }
        Some(r)
    }

    fn same_field(&self, other: &FieldElement) {
        assert!(std::ptr::eq(self.field, other.field), "mixed field arithmetic");
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.field, other.field) && self.c == other.c
    }
}

impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.e == 1 {
            return write!(f, "{}", self.c[0]);
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs().iter().enumerate() {
            if c == 0 {
                continue;
            }
            terms.push(match i {
                0 => format!("{c}"),
                1 if c == 1 => "a".to_string(),
                1 => format!("{c}a"),
                _ if c == 1 => format!("a^{i}"),
                _ => format!("{c}a^{i}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(mut self, rhs: FieldElement) -> FieldElement {
        self.same_field(&rhs);
        let p = self.field.p;
        for i in 0..self.field.e {
            self.c[i] = (self.c[i] + rhs.c[i]) % p;
        }
        self
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(mut self, rhs: FieldElement) -> FieldElement {
        self.same_field(&rhs);
        let p = self.field.p;
        for i in 0..self.field.e {
            self.c[i] = (self.c[i] + p - rhs.c[i]) % p;
        }
        self
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(mut self) -> FieldElement {
        let p = self.field.p;
        for i in 0..self.field.e {
            self.c[i] = (p - self.c[i]) % p;
        }
        self
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        self.same_field(&rhs);
        let f = self.field;
        let p = f.p;
        if f.e == 1 {
            let mut c = [0; MAX_DEGREE];
            c[0] = self.c[0] * rhs.c[0] % p;
            return FieldElement { field: f, c };
        }
        let e = f.e;
        let mut prod = [0u64; 2 * MAX_DEGREE - 1];
        for i in 0..e {
            if self.c[i] == 0 {
                continue;
            }
            for j in 0..e {
                prod[i + j] = (prod[i + j] + self.c[i] * rhs.c[j]) % p;
            }
        }
        for d in (e..2 * e - 1).rev() {
            let q = prod[d];
            if q == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..e {
                let idx = d - e + i;
                prod[idx] = (prod[idx] + p - q * f.modulus[i] % p) % p;
            }
        }
        let mut c = [0; MAX_DEGREE];
        c[..e].copy_from_slice(&prod[..e]);
        FieldElement { field: f, c }
    }
}

impl Div for FieldElement {
    type Output = FieldElement;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: FieldElement) -> FieldElement {
        self * rhs.inv().expect("division by zero in finite field")
    }
}

impl AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: FieldElement) {
        *self = *self + rhs;
    }
}

impl SubAssign for FieldElement {
    fn sub_assign(&mut self, rhs: FieldElement) {
        *self = *self - rhs;
    }
}

impl MulAssign for FieldElement {
    fn mul_assign(&mut self, rhs: FieldElement) {
        *self = *self * rhs;
    }
}

/// A point of P^1, normalised to [x:1] or [1:0].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ProjPoint {
    x: FieldElement,
    y: FieldElement,
}

impl ProjPoint {
    pub fn new(x: FieldElement, y: FieldElement) -> Option<ProjPoint> {
        if !y.is_zero() {
            Some(ProjPoint { x: x / y, y: y.field().one() })
        } else if !x.is_zero() {
            Some(ProjPoint { x: x.field().one(), y })
        } else {
            None
        }
    }

    pub fn x(&self) -> FieldElement {
        self.x
    }

    pub fn y(&self) -> FieldElement {
        self.y
    }

    pub fn random<R: Rng + ?Sized>(field: &'static FieldSpec, rng: &mut R) -> ProjPoint {
        // q + 1 points, uniform
        let k = rng.gen_range(0..=field.size());
        if k == field.size() {
            ProjPoint { x: field.one(), y: field.zero() }
        } else {
            ProjPoint { x: field.element(k), y: field.one() }
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.x, self.y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stored_polynomials_are_irreducible() {
        for &(p, e, _) in IRREDUCIBLES {
            let f = FieldSpec::new(p, e).unwrap();
            assert_eq!(f.size(), p.pow(e as u32));
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        // X^2 - 1 = (X - 1)(X + 1)
        assert_eq!(FieldSpec::with_modulus(5, &[4, 0]), Err(Error::Reducible(2)));
        // X^4 + 1 over F_5 has no roots but splits into quadratics
        assert_eq!(FieldSpec::with_modulus(5, &[1, 0, 0, 0]), Err(Error::Reducible(4)));
    }

    #[test]
    fn bad_characteristic() {
        assert_eq!(FieldSpec::prime(3), Err(Error::BadCharacteristic(3)));
        assert_eq!(FieldSpec::prime(9), Err(Error::BadCharacteristic(9)));
    }

    #[test]
    fn interned() {
        let a = FieldSpec::new(7, 2).unwrap();
        let b = FieldSpec::new(7, 2).unwrap();
        assert!(std::ptr::eq(a, b));
    }

    #[test]
    fn multiplicative_group_is_cyclic_of_order_q_minus_1() {
        for (p, e) in [(5, 2), (7, 3), (5, 4)] {
            let f = FieldSpec::new(p, e).unwrap();
            let q = f.size();
            for x in f.elements().filter(|x| !x.is_zero()) {
                assert!(x.pow(q - 1).is_one());
                assert_eq!(x * x.inv().unwrap(), f.one());
            }
        }
    }

    #[test]
    fn sqrt_exhaustive() {
        for (p, e) in [(5, 1), (13, 1), (5, 2), (7, 2), (7, 3)] {
            let f = FieldSpec::new(p, e).unwrap();
            let mut squares = 0;
            for x in f.elements() {
                match x.sqrt() {
                    Some(r) => {
                        assert_eq!(r * r, x);
                        squares += 1;
                    }
                    None => assert!(!x.is_square()),
                }
            }
            assert_eq!(squares, f.size().div_ceil(2));
        }
    }

    #[test]
    fn index_roundtrip() {
        let f = FieldSpec::new(11, 3).unwrap();
        for i in 0..f.size() {
            assert_eq!(f.element(i).index(), i);
        }
    }

    #[test]
    fn proj_normalisation() {
        let f = FieldSpec::prime(5).unwrap();
        let a = ProjPoint::new(f.int(2), f.int(4)).unwrap();
        let b = ProjPoint::new(f.int(1), f.int(2)).unwrap();
        assert_eq!(a, b);
        assert_eq!(ProjPoint::new(f.int(3), f.zero()).unwrap().x(), f.one());
        assert!(ProjPoint::new(f.zero(), f.zero()).is_none());
    }
}
