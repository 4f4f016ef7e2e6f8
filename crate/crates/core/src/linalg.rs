//! Exact rational linear algebra.
//!
//! Everything downstream (colimits, limits, factorizations through
//! universal properties, invertibility decisions) reduces to the handful of
//! operations here. All arithmetic is over arbitrary-precision rationals, so
//! every rank and every "is this invertible" answer is a decision.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number. Always stored in lowest terms with positive
/// denominator.
pub type Rational = BigRational;

/// Largest row or column count accepted by [`Matrix::try_zeros`] and the
/// solvers.
pub const MAX_DIM: usize = 512;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats as `num/den`, denominator always present.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Accepts `num/den` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Dense row-major matrix over the rationals. `0 x n` and `n x 0` matrices
/// are legal and stand for maps into and out of the zero space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn try_zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows > MAX_DIM || cols > MAX_DIM {
            return Err(Error::Guardrail(format!(
                "matrix {rows}x{cols} exceeds the {MAX_DIM} dimension cap"
            )));
        }
        Ok(Self::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols, data })
    }

    /// Convenience constructor from small integers; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data: Vec<Rational> = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged integer matrix");
                r.iter().map(|&x| rat(x))
            })
            .collect();
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn column(entries: Vec<Rational>) -> Self {
        Matrix {
            rows: entries.len(),
            cols: 1,
            data: entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = self.get(r, c);
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    /// Matrix product. Panics on inner-dimension mismatch; use
    /// [`Matrix::checked_mul`] where the shapes come from user data.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "matrix product {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let slot = &mut out.data[i * other.cols + j];
                    *slot += a * b;
                }
            }
        }
        out
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul(other))
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "matrix difference shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Copy of the block with top-left corner `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.data[r * cols + c] = self.get(r0 + r, c0 + c).clone();
            }
        }
        out
    }

    /// Writes `src` into `self` with top-left corner `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, src: &Matrix) {
        for r in 0..src.rows {
            for c in 0..src.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = src.get(r, c).clone();
            }
        }
    }

    pub fn hstack(parts: &[Matrix], rows: usize) -> Matrix {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut c0 = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            out.set_block(0, c0, m);
            c0 += m.cols;
        }
        out
    }

    pub fn vstack(parts: &[Matrix], cols: usize) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut r0 = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            out.set_block(r0, 0, m);
            r0 += m.rows;
        }
        out
    }

    pub fn block_diag(parts: &[Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            out.set_block(r0, c0, m);
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                out.set_block(i * other.rows, j * other.cols, &other.scale(a));
            }
        }
        out
    }

    /// Exact reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).recip();
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m.get(r, c) - &factor * m.get(row, c);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref {
            reduced: m,
            rank: pivots.len(),
            pivots,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Columns form a basis of the kernel: one column per free variable of
    /// the rref, with that variable set to 1 and the other free variables 0.
    pub fn kernel_basis(&self) -> Matrix {
        let Rref {
            reduced, pivots, ..
        } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k.set(f, j, Rational::one());
            for (r, &p) in pivots.iter().enumerate() {
                k.set(p, j, -reduced.get(r, f).clone());
            }
        }
        k
    }

    /// Cokernel projection `P` (`dim x rows`) with `P * self = 0` and `P`
    /// surjective. Rows of `P` are the kernel basis of the transpose.
    pub fn cokernel(&self) -> (Matrix, usize) {
        let p = self.transpose().kernel_basis().transpose();
        let dim = p.rows;
        (p, dim)
    }

    /// Some `X` with `self * X = rhs`, free variables set to zero; `None`
    /// when the system is inconsistent.
    pub fn solve(&self, rhs: &Matrix) -> Result<Option<Matrix>> {
        if self.rows != rhs.rows {
            return Err(Error::Shape(format!(
                "solve: system has {} rows, right-hand side has {}",
                self.rows, rhs.rows
            )));
        }
        if self.rows > MAX_DIM || self.cols > MAX_DIM || rhs.cols > MAX_DIM {
            return Err(Error::Guardrail(format!(
                "solve: {}x{} system exceeds the {MAX_DIM} dimension cap",
                self.rows, self.cols
            )));
        }
        let aug = Matrix::hstack(&[self.clone(), rhs.clone()], self.rows);
        let Rref {
            reduced, pivots, ..
        } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (r, &p) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x.set(p, c, reduced.get(r, self.cols + c).clone());
            }
        }
        Ok(Some(x))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        match self.solve(&Matrix::identity(self.rows)) {
            Ok(Some(x)) if self.mul(&x).is_identity() => Some(x),
            _ => None,
        }
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }

    /// Entry strings in `num/den` form, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(format_rational).collect())
            .collect()
    }

    pub fn from_strings(rows: &[Vec<String>], expected: (usize, usize)) -> Result<Matrix> {
        let (r, c) = expected;
        if rows.len() != r {
            return Err(Error::Shape(format!(
                "expected {r} rows, found {}",
                rows.len()
            )));
        }
        let parsed = rows
            .iter()
            .map(|row| row.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(parsed, c)
    }

    pub fn max_abs_entry(&self) -> Rational {
        self.data
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}{:?}", self.rows, self.cols, self.to_strings())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_identity() {
        let i = Matrix::identity(3);
        let r = i.rref();
        assert_eq!(r.reduced, i);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.rank, 3);
    }

    #[test]
    fn rref_zero() {
        let z = Matrix::zeros(2, 3);
        let r = z.rref();
        assert_eq!(r.reduced, z);
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn rref_rank_one() {
        let m = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        let r = m.rref();
        assert_eq!(r.reduced, Matrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn kernel_of_invertible_is_empty() {
        let m = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.kernel_basis().cols(), 0);
    }

    #[test]
    fn kernel_of_row_vector() {
        let m = Matrix::from_i64(&[&[1, 0]]);
        assert_eq!(m.kernel_basis(), Matrix::from_i64(&[&[0], &[1]]));
    }

    #[test]
    fn kernel_with_no_constraints() {
        let m = Matrix::zeros(0, 3);
        assert_eq!(m.kernel_basis(), Matrix::identity(3));
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(Matrix::identity(3).cokernel().1, 0);
        let (p, d) = Matrix::from_i64(&[&[1], &[0]]).cokernel();
        assert_eq!(d, 1);
        assert_eq!(p, Matrix::from_i64(&[&[0, 1]]));
        let (p, d) = Matrix::zeros(0, 4).cokernel();
        assert_eq!((p.shape(), d), ((0, 0), 0));
    }

    #[test]
    fn solve_examples() {
        let m = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        let b = Matrix::from_i64(&[&[3], &[2]]);
        let x = m.solve(&b).unwrap().unwrap();
        assert_eq!(x, m.inverse().unwrap().mul(&b));

        let z = Matrix::zeros(1, 1);
        assert_eq!(z.solve(&Matrix::from_i64(&[&[1]])).unwrap(), None);

        let m = Matrix::from_i64(&[&[1, 1]]);
        let x = m.solve(&Matrix::from_i64(&[&[3]])).unwrap().unwrap();
        assert_eq!(x, Matrix::from_i64(&[&[3], &[0]]));
    }

    #[test]
    fn solve_shape_mismatch() {
        let m = Matrix::identity(2);
        assert!(matches!(m.solve(&Matrix::zeros(3, 1)), Err(Error::Shape(_))));
    }

    #[test]
    fn rational_text_roundtrip() {
        let q = ratio(-6, 4);
        assert_eq!(format_rational(&q), "-3/2");
        assert_eq!(parse_rational("-3/2").unwrap(), q);
        assert_eq!(parse_rational("5").unwrap(), rat(5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn kron_with_identity() {
        let m = Matrix::from_i64(&[&[1, 2]]);
        let k = m.kron(&Matrix::identity(2));
        assert_eq!(k, Matrix::from_i64(&[&[1, 0, 2, 0], &[0, 1, 0, 2]]));
    }
}
