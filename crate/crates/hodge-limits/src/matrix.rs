//! Dense exact matrices over the Gaussian rationals, with the reduced
//! row-echelon machinery everything else is built on. Operators act on
//! column vectors; subspace bases are stored as rows.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use num::{BigInt, BigRational};
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must match shape");
        ExactMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix::new(rows, cols, vec![Scalar::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = Scalar::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        ExactMatrix::new(rows, cols, entries)
    }

    /// Convenience constructor from integer data.
    pub fn from_ints(data: &[&[i64]]) -> Self {
        let rows = data.len();
        let cols = if rows == 0 { 0 } else { data[0].len() };
        ExactMatrix::from_fn(rows, cols, |r, c| Scalar::from_int(data[r][c]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<Scalar> {
        self.row(r).to_vec()
    }

    pub fn transpose(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn conj(&self) -> ExactMatrix {
        self.map(Scalar::conj)
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> ExactMatrix {
        ExactMatrix::new(self.rows, self.cols, self.entries.iter().map(f).collect())
    }

    pub fn is_rational(&self) -> bool {
        self.entries.iter().all(Scalar::is_rational)
    }

    pub fn scale(&self, s: &Scalar) -> ExactMatrix {
        self.map(|e| e * s)
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        ExactMatrix::new(self.rows + other.rows, self.cols, entries)
    }

    /// Concatenate `other` to the right of `self`.
    pub fn hstack(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        ExactMatrix::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                other[(r, c - self.cols)].clone()
            }
        })
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Apply the operator to a column vector given as a slice.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "apply dimension mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for c in 0..self.cols {
                    let e = &self[(r, c)];
                    if !e.is_zero() && !v[c].is_zero() {
                        acc = &acc + &(e * &v[c]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, k: usize) -> ExactMatrix {
        assert!(self.is_square(), "pow of a non-square matrix");
        let mut acc = ExactMatrix::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Commutator [A, B] = AB - BA.
    pub fn commutator(&self, other: &ExactMatrix) -> ExactMatrix {
        &(self * other) - &(other * self)
    }

    /// Reduced row-echelon form together with the pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivots = Vec::new();
        let mut rank = 0usize;
        for col in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            if pivot != rank {
                m.swap_rows(pivot, rank);
            }
            let inv = m[(rank, col)].inv().expect("pivot is nonzero");
            if !m[(rank, col)].is_one() {
                for c in col..cols {
                    if !m[(rank, c)].is_zero() {
                        m[(rank, c)] = &m[(rank, c)] * &inv;
                    }
                }
            }
            for r in 0..rows {
                if r == rank || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..cols {
                    if !m[(rank, c)].is_zero() {
                        let sub = &m[(rank, c)] * &factor;
                        m[(r, c)] = &m[(r, c)] - &sub;
                    }
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == rows {
                break;
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space {x : M x = 0}, one vector per row.
    pub fn kernel_basis(&self) -> ExactMatrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![Scalar::zero(); self.cols];
            v[fc] = Scalar::one();
            for (prow, &pc) in pivots.iter().enumerate() {
                v[pc] = -&r[(prow, fc)];
            }
            rows.push(v);
        }
        ExactMatrix::from_rows(if rows.is_empty() {
            return ExactMatrix::zeros(0, self.cols);
        } else {
            rows
        })
    }

    /// Any exact solution X of `self * X = rhs`, or None when inconsistent.
    pub fn solve(&self, rhs: &ExactMatrix) -> Option<ExactMatrix> {
        assert_eq!(self.rows, rhs.rows, "solve shape mismatch");
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref();
        // A pivot in the right block means the system is inconsistent.
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = ExactMatrix::zeros(self.cols, rhs.cols);
        for (prow, &pc) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x[(pc, c)] = r[(prow, self.cols + c)].clone();
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<ExactMatrix> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let sol = self.solve(&ExactMatrix::identity(self.rows))?;
        if &(self * &sol) == &ExactMatrix::identity(self.rows) {
            Some(sol)
        } else {
            None
        }
    }

    pub fn det(&self) -> Scalar {
        assert!(self.is_square(), "det of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Scalar::zero();
            };
            if pivot != col {
                m.swap_rows(pivot, col);
                det = -det;
            }
            det = &det * &m[(col, col)];
            let inv = m[(col, col)].inv().expect("pivot is nonzero");
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = &m[(r, col)] * &inv;
                for c in col..n {
                    if !m[(col, c)].is_zero() {
                        let sub = &m[(col, c)] * &factor;
                        m[(r, c)] = &m[(r, c)] - &sub;
                    }
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Smallest k with M^{k+1} = 0, or an error when M is not nilpotent.
    pub fn nilpotency_index(&self) -> Result<usize> {
        assert!(self.is_square(), "nilpotency of a non-square matrix");
        if self.is_zero() {
            return Ok(0);
        }
        let mut power = self.clone();
        for k in 1..=self.rows {
            let next = &power * self;
            if next.is_zero() {
                return Ok(k);
            }
            power = next;
        }
        Err(Error::NotNilpotent { power: self.rows })
    }

    /// exp(M) for nilpotent M, as a finite sum.
    pub fn exp_nilpotent(&self) -> Result<ExactMatrix> {
        let index = self.nilpotency_index()?;
        let mut acc = ExactMatrix::identity(self.rows);
        let mut term = ExactMatrix::identity(self.rows);
        let mut factorial = BigRational::from_integer(BigInt::from(1));
        for k in 1..=index {
            term = &term * self;
            factorial *= BigRational::from_integer(BigInt::from(k as i64));
            let coeff = Scalar::from_rational(factorial.recip());
            acc = &acc + &term.scale(&coeff);
        }
        Ok(acc)
    }

    /// exp(z M) for nilpotent M and any Gaussian rational z.
    pub fn exp_scaled(&self, z: &Scalar) -> Result<ExactMatrix> {
        self.scale(z).exp_nilpotent()
    }

    /// log(I + M) for nilpotent M, as a finite sum.
    pub fn log_unipotent_part(&self) -> Result<ExactMatrix> {
        let index = self.nilpotency_index()?;
        let mut acc = ExactMatrix::zeros(self.rows, self.cols);
        let mut term = ExactMatrix::identity(self.rows);
        for k in 1..=index {
            term = &term * self;
            let coeff = Scalar::from_rational(
                BigRational::new(BigInt::from(if k % 2 == 1 { 1 } else { -1 }), BigInt::from(k as i64)),
            );
            acc = &acc + &term.scale(&coeff);
        }
        Ok(acc)
    }

    /// Column-major flattening, for operator-valued linear systems.
    pub fn vec_columns(&self) -> Vec<Scalar> {
        let mut v = Vec::with_capacity(self.rows * self.cols);
        for c in 0..self.cols {
            for r in 0..self.rows {
                v.push(self[(r, c)].clone());
            }
        }
        v
    }

    pub fn from_vec_columns(rows: usize, cols: usize, v: &[Scalar]) -> ExactMatrix {
        assert_eq!(v.len(), rows * cols);
        ExactMatrix::from_fn(rows, cols, |r, c| v[c * rows + r].clone())
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.entries[r * self.cols + c]
    }
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add shape mismatch");
        ExactMatrix::new(
            self.rows,
            self.cols,
            self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        )
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub shape mismatch");
        ExactMatrix::new(
            self.rows,
            self.cols,
            self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        )
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, rhs.rows, "mul shape mismatch");
        let mut out = ExactMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(r, c)] = &out[(r, c)] + &(a * b);
                }
            }
        }
        out
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        self.map(|e| -e)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_identity_and_zero_are_fixed() {
        let id = ExactMatrix::identity(3);
        assert_eq!(id.rref().0, id);
        let z = ExactMatrix::zeros(2, 3);
        assert_eq!(z.rref().0, z);
    }

    #[test]
    fn rref_collapses_dependent_rows() {
        let m = ExactMatrix::from_ints(&[&[2, 4], &[1, 2]]);
        let expected = ExactMatrix::from_ints(&[&[1, 2], &[0, 0]]);
        assert_eq!(m.rref().0, expected);
    }

    #[test]
    fn kernel_of_identity_is_trivial_and_of_zero_is_full() {
        assert_eq!(ExactMatrix::identity(3).kernel_basis().rows(), 0);
        assert_eq!(ExactMatrix::zeros(4, 4).kernel_basis().rows(), 4);
    }

    #[test]
    fn kernel_of_jordan_block_is_first_axis() {
        let n = ExactMatrix::from_ints(&[&[0, 1], &[0, 0]]);
        let k = n.kernel_basis();
        assert_eq!(k.rows(), 1);
        assert_eq!(k.row_vec(0), vec![Scalar::one(), Scalar::zero()]);
    }

    #[test]
    fn solve_and_inverse() {
        let a = ExactMatrix::from_ints(&[&[1, 2], &[3, 5]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, ExactMatrix::identity(2));
        let singular = ExactMatrix::from_ints(&[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
        let rhs = ExactMatrix::from_ints(&[&[1], &[5]]);
        assert!(singular.solve(&rhs).is_none());
    }

    #[test]
    fn exp_log_jordan_block() {
        let e = ExactMatrix::from_ints(&[&[0, 1], &[0, 0]]);
        let t = &ExactMatrix::identity(2) + &e;
        assert_eq!(e.exp_nilpotent().unwrap(), t);
        assert_eq!(e.log_unipotent_part().unwrap(), e);
    }

    #[test]
    fn nilpotency_detects_failure() {
        let m = ExactMatrix::identity(2);
        assert!(matches!(m.nilpotency_index(), Err(crate::error::Error::NotNilpotent { .. })));
    }

    #[test]
    fn det_matches_structure() {
        let a = ExactMatrix::from_ints(&[&[2, 1], &[1, 1]]);
        assert_eq!(a.det(), Scalar::one());
        let s = ExactMatrix::from_ints(&[&[1, 2], &[2, 4]]);
        assert!(s.det().is_zero());
    }
}
