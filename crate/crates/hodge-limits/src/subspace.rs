//! Subspaces of Q(i)^n in canonical form: the stored basis is the reduced
//! row-echelon form of any spanning set, so two equal subspaces always have
//! identical representations and `==` decides subspace equality.

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: ExactMatrix,
}

impl Subspace {
    /// Span of the rows of `m`, canonicalized.
    pub fn from_rows(m: &ExactMatrix) -> Subspace {
        let (r, pivots) = m.rref();
        let rank = pivots.len();
        let basis = ExactMatrix::from_fn(rank, m.cols(), |i, j| r[(i, j)].clone());
        Subspace { ambient_dim: m.cols(), basis }
    }

    pub fn from_vectors(ambient_dim: usize, vectors: Vec<Vec<Scalar>>) -> Subspace {
        if vectors.is_empty() {
            return Subspace::zero(ambient_dim);
        }
        Subspace::from_rows(&ExactMatrix::from_rows(vectors))
    }

    pub fn zero(ambient_dim: usize) -> Subspace {
        Subspace { ambient_dim, basis: ExactMatrix::zeros(0, ambient_dim) }
    }

    pub fn full(ambient_dim: usize) -> Subspace {
        Subspace { ambient_dim, basis: ExactMatrix::identity(ambient_dim) }
    }

    pub fn span_of_axis(ambient_dim: usize, axis: usize) -> Subspace {
        let mut v = vec![Scalar::zero(); ambient_dim];
        v[axis] = Scalar::one();
        Subspace::from_vectors(ambient_dim, vec![v])
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Canonical (echelon) basis, one vector per row.
    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn is_rational(&self) -> bool {
        self.basis.is_rational()
    }

    pub fn conj(&self) -> Subspace {
        // Conjugation is a field automorphism, so the echelon form is stable.
        Subspace { ambient_dim: self.ambient_dim, basis: self.basis.conj() }
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "ambient dimension mismatch");
        let mut work = v.to_vec();
        let (_, pivots) = self.basis.rref();
        for (row, &pc) in pivots.iter().enumerate() {
            if !work[pc].is_zero() {
                let factor = work[pc].clone();
                for c in 0..self.ambient_dim {
                    let b = &self.basis[(row, c)];
                    if !b.is_zero() {
                        let sub = b * &factor;
                        work[c] = &work[c] - &sub;
                    }
                }
            }
        }
        work.iter().all(Scalar::is_zero)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient dimension mismatch");
        (0..other.dim()).all(|r| self.contains_vector(other.basis.row(r)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient dimension mismatch");
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        Subspace::from_rows(&self.basis.vstack(&other.basis))
    }

    /// Null space of the basis matrix under the standard bilinear dot
    /// pairing; applying it twice recovers the subspace.
    fn dot_annihilator(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.ambient_dim);
        }
        Subspace::from_rows(&self.basis.kernel_basis())
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient dimension mismatch");
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient_dim);
        }
        if self.is_full() {
            return other.clone();
        }
        if other.is_full() {
            return self.clone();
        }
        self.dot_annihilator().sum(&other.dot_annihilator()).dot_annihilator()
    }

    /// Canonical complement basis of `self` inside `larger`: the echelon rows
    /// of `larger` whose pivots are not pivots of `self`. Errors unless
    /// `self` is contained in `larger`.
    pub fn quotient_basis(&self, larger: &Subspace) -> Result<ExactMatrix> {
        if !larger.contains(self) {
            return Err(Error::InclusionViolation(format!(
                "quotient basis requested for A (dim {}) not contained in B (dim {})",
                self.dim(),
                larger.dim()
            )));
        }
        let (_, small_pivots) = self.basis.rref();
        let (_, large_pivots) = larger.basis.rref();
        let rows: Vec<Vec<Scalar>> = large_pivots
            .iter()
            .enumerate()
            .filter(|(_, pc)| !small_pivots.contains(pc))
            .map(|(r, _)| larger.basis.row_vec(r))
            .collect();
        Ok(if rows.is_empty() {
            ExactMatrix::zeros(0, self.ambient_dim)
        } else {
            ExactMatrix::from_rows(rows)
        })
    }

    /// Image of the subspace under an operator acting on column vectors.
    pub fn apply(&self, op: &ExactMatrix) -> Subspace {
        assert_eq!(op.cols(), self.ambient_dim, "operator shape mismatch");
        if self.is_zero() {
            return Subspace::zero(op.rows());
        }
        Subspace::from_rows(&(&self.basis * &op.transpose()))
    }
}

/// Column space of an operator.
pub fn image(m: &ExactMatrix) -> Subspace {
    Subspace::from_rows(&m.transpose())
}

/// Null space {x : M x = 0} of an operator.
pub fn kernel(m: &ExactMatrix) -> Subspace {
    Subspace::from_rows(&m.kernel_basis())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axes_in_the_plane() {
        let x = Subspace::span_of_axis(2, 0);
        let y = Subspace::span_of_axis(2, 1);
        assert!(x.intersect(&y).is_zero());
        assert!(x.sum(&y).is_full());
    }

    #[test]
    fn canonical_representation_is_unique() {
        let a = Subspace::from_rows(&ExactMatrix::from_ints(&[&[1, 1, 0], &[0, 2, 2]]));
        let b = Subspace::from_rows(&ExactMatrix::from_ints(&[&[1, 3, 2], &[2, 2, 0]]));
        assert_eq!(a, b);
    }

    #[test]
    fn quotient_requires_inclusion() {
        let a = Subspace::span_of_axis(3, 0);
        let b = Subspace::from_rows(&ExactMatrix::from_ints(&[&[0, 1, 0], &[0, 0, 1]]));
        assert!(a.quotient_basis(&b).is_err());
        let big = a.sum(&b);
        let q = a.quotient_basis(&big).unwrap();
        assert_eq!(q.rows(), 2);
    }

    #[test]
    fn kernel_and_image_of_jordan_block() {
        let n = ExactMatrix::from_ints(&[&[0, 1], &[0, 0]]);
        assert_eq!(kernel(&n), Subspace::span_of_axis(2, 0));
        assert_eq!(image(&n), Subspace::span_of_axis(2, 0));
        assert_eq!(kernel(&ExactMatrix::identity(4)), Subspace::zero(4));
        assert_eq!(kernel(&ExactMatrix::zeros(4, 4)), Subspace::full(4));
    }

    #[test]
    fn double_annihilator_is_identity() {
        let s = Subspace::from_rows(&ExactMatrix::from_ints(&[&[1, 2, 3], &[0, 1, 5]]));
        assert_eq!(s.dot_annihilator().dot_annihilator(), s);
    }
}
