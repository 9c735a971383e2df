//! Bilinear forms S(u, v) = u G v^T with declared symmetry. The form is
//! extended bilinearly (not sesquilinearly) to Q(i); Hermitian pairings are
//! assembled where needed by conjugating one argument explicitly.

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::Scalar;
use crate::subspace::{kernel, Subspace};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
}

impl Symmetry {
    /// Symmetry forced on a weight-m polarization: S(u,v) = (-1)^m S(v,u).
    pub fn for_weight(m: i64) -> Symmetry {
        if m.rem_euclid(2) == 0 {
            Symmetry::Symmetric
        } else {
            Symmetry::Antisymmetric
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BilinearForm {
    gram: ExactMatrix,
    symmetry: Symmetry,
}

impl BilinearForm {
    pub fn new(gram: ExactMatrix, symmetry: Symmetry) -> Result<BilinearForm> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch("gram matrix must be square".into()));
        }
        let t = gram.transpose();
        let ok = match symmetry {
            Symmetry::Symmetric => t == gram,
            Symmetry::Antisymmetric => (&t + &gram).is_zero(),
        };
        if !ok {
            return Err(Error::SymmetryMismatch(format!("{symmetry:?}")));
        }
        Ok(BilinearForm { gram, symmetry })
    }

    /// Block-diagonal sum of 2x2 symplectic blocks [[0,1],[-1,0]] on
    /// consecutive coordinate pairs.
    pub fn standard_symplectic(dim: usize) -> BilinearForm {
        assert!(dim % 2 == 0, "symplectic form needs even dimension");
        let mut g = ExactMatrix::zeros(dim, dim);
        for k in 0..dim / 2 {
            g[(2 * k, 2 * k + 1)] = Scalar::one();
            g[(2 * k + 1, 2 * k)] = Scalar::from_int(-1);
        }
        BilinearForm { gram: g, symmetry: Symmetry::Antisymmetric }
    }

    pub fn gram(&self) -> &ExactMatrix {
        &self.gram
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram.rank() == self.dim()
    }

    pub fn eval(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        let gv = self.gram.apply(v);
        u.iter()
            .zip(&gv)
            .fold(Scalar::zero(), |acc, (a, b)| if a.is_zero() || b.is_zero() { acc } else { &acc + &(a * b) })
    }

    /// Pairing matrix [S(u_r, v_c)] for two row-bases.
    pub fn pairing_matrix(&self, rows_u: &ExactMatrix, rows_v: &ExactMatrix) -> ExactMatrix {
        &(rows_u * &self.gram) * &rows_v.transpose()
    }

    /// {v : S(v, a) = 0 for all a in A}. Requires a nondegenerate form.
    pub fn annihilator(&self, a: &Subspace) -> Result<Subspace> {
        if a.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch("annihilator ambient mismatch".into()));
        }
        if !self.is_nondegenerate() {
            return Err(Error::DegenerateForm { rank: self.gram.rank(), dim: self.dim() });
        }
        if a.is_zero() {
            return Ok(Subspace::full(self.dim()));
        }
        // S(v, a_r) = 0 for each basis row a_r reads (A G^T) v = 0.
        let constraints = a.basis() * &self.gram.transpose();
        Ok(kernel(&constraints))
    }

    /// S(N u, v) + S(u, N v) = 0 as a matrix identity; on failure reports a
    /// witness pair of standard basis vectors.
    pub fn check_infinitesimal_isometry(&self, n: &ExactMatrix) -> Result<()> {
        let lhs = &(&n.transpose() * &self.gram) + &(&self.gram * n);
        if lhs.is_zero() {
            return Ok(());
        }
        for i in 0..lhs.rows() {
            for j in 0..lhs.cols() {
                if !lhs[(i, j)].is_zero() {
                    return Err(Error::NotInfinitesimalIsometry { i, j });
                }
            }
        }
        unreachable!("nonzero matrix has a nonzero entry");
    }

    /// Restriction of the form to a subspace, as a gram matrix in the
    /// subspace's canonical basis.
    pub fn restrict(&self, s: &Subspace) -> ExactMatrix {
        self.pairing_matrix(s.basis(), s.basis())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ExactMatrix;

    #[test]
    fn symmetry_is_checked() {
        let g = ExactMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert!(BilinearForm::new(g.clone(), Symmetry::Symmetric).is_ok());
        assert!(BilinearForm::new(g, Symmetry::Antisymmetric).is_err());
    }

    #[test]
    fn annihilator_extremes() {
        let s = BilinearForm::standard_symplectic(4);
        assert!(s.annihilator(&Subspace::zero(4)).unwrap().is_full());
        assert!(s.annihilator(&Subspace::full(4)).unwrap().is_zero());
    }

    #[test]
    fn annihilator_of_first_axis_under_standard_symplectic() {
        // Pairs (e1,e2), (e3,e4): S(v, e1) = -v_2, so the annihilator is
        // spanned by e1, e3, e4.
        let s = BilinearForm::standard_symplectic(4);
        let ann = s.annihilator(&Subspace::span_of_axis(4, 0)).unwrap();
        let expected = Subspace::from_rows(&ExactMatrix::from_ints(&[
            &[1, 0, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
        ]));
        assert_eq!(ann, expected);
    }

    #[test]
    fn degenerate_form_is_rejected() {
        let g = ExactMatrix::zeros(2, 2);
        let f = BilinearForm::new(g, Symmetry::Symmetric).unwrap();
        assert!(matches!(
            f.annihilator(&Subspace::span_of_axis(2, 0)),
            Err(crate::error::Error::DegenerateForm { .. })
        ));
    }

    #[test]
    fn infinitesimal_isometry_witness() {
        let s = BilinearForm::standard_symplectic(2);
        let n = ExactMatrix::from_ints(&[&[0, 1], &[0, 0]]);
        assert!(s.check_infinitesimal_isometry(&n).is_ok());
        let bad = ExactMatrix::identity(2);
        assert!(s.check_infinitesimal_isometry(&bad).is_err());
    }
}
