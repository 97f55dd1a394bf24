//! Dense matrices over a finite field with Gaussian elimination.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

#[derive(Clone, PartialEq, Eq)]
pub struct GFMatrix {
    field: &'static FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl GFMatrix {
    pub fn zeros(field: &'static FieldSpec, rows: usize, cols: usize) -> GFMatrix {
        GFMatrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &'static FieldSpec, n: usize) -> GFMatrix {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &'static FieldSpec, rows: &[Vec<FieldElement>]) -> Result<GFMatrix> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let data = rows.iter().flatten().copied().collect();
        Ok(GFMatrix { field, rows: rows.len(), cols, data })
    }

    pub fn from_ints(field: &'static FieldSpec, rows: &[&[i64]]) -> GFMatrix {
        let rows: Vec<Vec<FieldElement>> = rows.iter().map(|r| r.iter().map(|&x| field.int(x)).collect()).collect();
        Self::from_rows(field, &rows).expect("ragged integer rows")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &'static FieldSpec, len: usize, cols: &[Vec<FieldElement>]) -> GFMatrix {
        let mut m = Self::zeros(field, len, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn field(&self) -> &'static FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> GFMatrix {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &GFMatrix) -> Result<GFMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, cur + a * other.get(k, j));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(self.field.zero(), |acc, (&a, &b)| acc + a * b))
            .collect())
    }

    /// Side-by-side concatenation.
    pub fn hstack(&self, other: &GFMatrix) -> Result<GFMatrix> {
        if self.rows != other.rows {
            return Err(Error::Dimension("hstack row mismatch".into()));
        }
        let mut m = Self::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j));
            }
        }
        Ok(m)
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).inv().expect("pivot is nonzero");
            for j in c..self.cols {
                let x = self.get(r, j);
                self.set(r, j, x * inv);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let x = self.get(i, j) - factor * self.get(r, j);
                    self.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn determinant(&self) -> Result<FieldElement> {
        if self.rows != self.cols {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = self.field.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(self.field.zero());
            };
            if pr != c {
                for j in 0..n {
                    m.data.swap(pr * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m.get(c, c);
            det *= piv;
            let inv = piv.inv().expect("pivot is nonzero");
            for i in c + 1..n {
                let factor = m.get(i, c) * inv;
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let x = m.get(i, j) - factor * m.get(c, j);
                    m.set(i, j, x);
                }
            }
        }
        Ok(det)
    }
}

impl fmt::Debug for GFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GFMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub fn matrix_rank(m: &GFMatrix) -> usize {
    m.clone().rref().len()
}

/// Basis of { v : m v = 0 }.
pub fn kernel_basis(m: &GFMatrix) -> Vec<Vec<FieldElement>> {
    let mut r = m.clone();
    let pivots = r.rref();
    let field = m.field();
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![field.zero(); m.cols()];
            v[fc] = field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, fc);
            }
            v
        })
        .collect()
}

/// Some x with m x = b, or None when the system is inconsistent.
pub fn solve_linear(m: &GFMatrix, b: &[FieldElement]) -> Result<Option<Vec<FieldElement>>> {
    if b.len() != m.rows() {
        return Err(Error::Dimension(format!("rhs of length {} for {} rows", b.len(), m.rows())));
    }
    let field = m.field();
    let bcol = GFMatrix::from_columns(field, m.rows(), &[b.to_vec()]);
    let mut aug = m.hstack(&bcol)?;
    let pivots = aug.rref();
    if pivots.last() == Some(&m.cols()) {
        return Ok(None);
    }
    let mut x = vec![field.zero(); m.cols()];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug.get(row, m.cols());
    }
    Ok(Some(x))
}

/// Rank of the span of a list of vectors of equal length.
pub fn span_rank(field: &'static FieldSpec, len: usize, vectors: &[Vec<FieldElement>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    matrix_rank(&GFMatrix::from_columns(field, len, vectors))
}

/// Constant 2x2 matrices, row-major.
pub type Mat2 = [[FieldElement; 2]; 2];

pub fn mat2_identity(field: &'static FieldSpec) -> Mat2 {
    [[field.one(), field.zero()], [field.zero(), field.one()]]
}

pub fn mat2_mul(a: Mat2, b: Mat2) -> Mat2 {
    let e = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn mat2_det(m: Mat2) -> FieldElement {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

pub fn mat2_inv(m: Mat2) -> Option<Mat2> {
    let di = mat2_det(m).inv()?;
    Some([[m[1][1] * di, -m[0][1] * di], [-m[1][0] * di, m[0][0] * di]])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> &'static FieldSpec {
        FieldSpec::prime(5).unwrap()
    }

    #[test]
    fn rank_examples() {
        let f = f5();
        assert_eq!(matrix_rank(&GFMatrix::identity(f, 2)), 2);
        assert_eq!(matrix_rank(&GFMatrix::zeros(f, 3, 4)), 0);
        assert_eq!(matrix_rank(&GFMatrix::from_ints(f, &[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        let f = f5();
        assert!(kernel_basis(&GFMatrix::identity(f, 2)).is_empty());
        assert_eq!(kernel_basis(&GFMatrix::zeros(f, 2, 2)).len(), 2);
        let k = kernel_basis(&GFMatrix::from_ints(f, &[&[1, 2], &[2, 4]]));
        assert_eq!(k.len(), 1);
        // proportional to (2, 4)
        let v = &k[0];
        assert_eq!(v[0] * f.int(4), v[1] * f.int(2));
    }

    #[test]
    fn solve_examples() {
        let f = f5();
        let b = vec![f.int(3), f.int(1)];
        assert_eq!(solve_linear(&GFMatrix::identity(f, 2), &b).unwrap(), Some(b.clone()));
        assert_eq!(solve_linear(&GFMatrix::zeros(f, 2, 2), &b).unwrap(), None);
    }

    #[test]
    fn determinant_matches_formula() {
        let f = f5();
        let m = GFMatrix::from_ints(f, &[&[1, 2], &[3, 4]]);
        assert_eq!(m.determinant().unwrap(), f.int(4 - 6));
        let s = GFMatrix::from_ints(f, &[&[0, 1], &[1, 0]]);
        assert_eq!(s.determinant().unwrap(), f.int(-1));
    }
}
