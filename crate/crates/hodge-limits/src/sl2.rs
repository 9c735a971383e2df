//! Gradings of a weight filtration, sl(2)-triple completion, the space
//! c = ker(ad N) ∩ im(ad N), nilpotent-orbit evaluation exp(zN)F at
//! Gaussian-rational z, and the correspondence between R-split polarized
//! mixed structures and pure structures at exp(iN)F.
//!
//! Triples follow the bracket normalization [Y, N] = -2N, [Y, N+] = 2N+,
//! [N+, N] = Y, matching the 2x2 matrices n_minus = E12, y = diag(-1, 1),
//! n_plus = E21.

use crate::bilinear::BilinearForm;
use crate::error::{Error, Result};
use crate::hodge::{
    deligne_splitting, is_r_split, validate_pmhs, validate_pure_polarized, BigradedSplitting,
    HodgeFiltration,
};
use crate::matrix::ExactMatrix;
use crate::report::Verdict;
use crate::scalar::Scalar;
use crate::subspace::{kernel, Subspace};
use crate::weight::{monodromy_weight_filtration, CenteredWeightFiltration, NilpotentOperator};
use std::collections::BTreeMap;

/// An sl(2)-triple acting on the ambient space.
#[derive(Clone, Debug)]
pub struct Sl2Triple {
    pub n_minus: NilpotentOperator,
    pub y: ExactMatrix,
    pub n_plus: ExactMatrix,
}

impl Sl2Triple {
    pub fn new(n_minus: NilpotentOperator, y: ExactMatrix, n_plus: ExactMatrix) -> Result<Sl2Triple> {
        let t = Sl2Triple { n_minus, y, n_plus };
        t.check_brackets()?;
        Ok(t)
    }

    pub fn check_brackets(&self) -> Result<()> {
        let n = self.n_minus.matrix();
        if self.y.commutator(n) != n.scale(&Scalar::from_int(-2)) {
            return Err(Error::Defect("[Y, N] != -2N".into()));
        }
        if self.y.commutator(&self.n_plus) != self.n_plus.scale(&Scalar::from_int(2)) {
            return Err(Error::Defect("[Y, N+] != 2N+".into()));
        }
        if self.n_plus.commutator(n) != self.y {
            return Err(Error::Defect("[N+, N] != Y".into()));
        }
        Ok(())
    }
}

/// The standard 2x2 triple.
pub fn standard_triple() -> Sl2Triple {
    let n_minus = NilpotentOperator::new(ExactMatrix::from_ints(&[&[0, 1], &[0, 0]])).unwrap();
    let y = ExactMatrix::from_ints(&[&[-1, 0], &[0, 1]]);
    let n_plus = ExactMatrix::from_ints(&[&[0, 0], &[1, 0]]);
    Sl2Triple { n_minus, y, n_plus }
}

/// A semisimple operator grading a centered weight filtration: H_l is the
/// l-eigenspace (centered, so W_{m+l} = ⊕_{λ<=l} H_λ) and N shifts the
/// grading down by two.
#[derive(Clone, Debug)]
pub struct GradingElement {
    pub y: ExactMatrix,
    pub eigenspaces: BTreeMap<i64, Subspace>,
}

impl GradingElement {
    /// Checks the grading conditions against (W, N).
    pub fn verify(&self, w: &CenteredWeightFiltration, n: &NilpotentOperator) -> Verdict {
        let mut verdict = Verdict::new();
        let m = w.center() as i64;
        let dim = w.ambient_dim();
        let total: usize = self.eigenspaces.values().map(Subspace::dim).sum();
        verdict.record("eigenspaces span", total == dim, format!("total {total} of {dim}"));
        for l in -m..=m {
            let mut acc = Subspace::zero(dim);
            for (&lam, h) in &self.eigenspaces {
                if lam <= l {
                    acc = acc.sum(h);
                }
            }
            let ok = acc == w.step(m + l);
            verdict.record(
                format!("W at level {l}"),
                ok,
                if ok { String::new() } else { format!("direct sum up to {l} differs from W_{}", m + l) },
            );
        }
        for (&l, h) in &self.eigenspaces {
            let moved = h.apply(n.matrix());
            let target =
                self.eigenspaces.get(&(l - 2)).cloned().unwrap_or_else(|| Subspace::zero(dim));
            let ok = target.contains(&moved);
            verdict.record(
                format!("N shifts level {l}"),
                ok,
                if ok { String::new() } else { "image escapes the level below".into() },
            );
        }
        let ok = self.y.commutator(n.matrix()) == n.matrix().scale(&Scalar::from_int(-2));
        verdict.record("[Y, N] = -2N", ok, String::new());
        verdict
    }
}

/// Grading attached to an R-split splitting: Y acts on I^{p,q} by p+q-k.
/// Rejects non-R-split input, where Y would fail to be real.
pub fn canonical_grading(splitting: &BigradedSplitting, k: i64) -> Result<GradingElement> {
    if !is_r_split(splitting) {
        return Err(Error::NotRSplit("canonical grading needs an R-split structure".into()));
    }
    let n = splitting.ambient_dim();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut weights: Vec<i64> = Vec::new();
    for (&(p, q), s) in splitting.pieces() {
        for r in 0..s.dim() {
            rows.push(s.basis().row_vec(r));
            weights.push(p + q - k);
        }
    }
    let basis_cols = ExactMatrix::from_rows(rows).transpose();
    let inv = basis_cols
        .inverse()
        .ok_or_else(|| Error::Defect("splitting basis is singular".into()))?;
    let mut diag = ExactMatrix::zeros(n, n);
    for (i, &lam) in weights.iter().enumerate() {
        diag[(i, i)] = Scalar::from_int(lam);
    }
    let y = &(&basis_cols * &diag) * &inv;
    if !y.is_rational() {
        return Err(Error::Defect("canonical grading operator is not real".into()));
    }
    let mut eigenspaces = BTreeMap::new();
    for &lam in weights.iter() {
        eigenspaces.entry(lam).or_insert_with(|| {
            let mut shifted = y.clone();
            for d in 0..n {
                shifted[(d, d)] = &shifted[(d, d)] - &Scalar::from_int(lam);
            }
            kernel(&shifted)
        });
    }
    Ok(GradingElement { y, eigenspaces })
}

fn kron(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    ExactMatrix::from_fn(a.rows() * b.rows(), a.cols() * b.cols(), |r, c| {
        let (ar, br) = (r / b.rows(), r % b.rows());
        let (ac, bc) = (c / b.cols(), c % b.cols());
        &a[(ar, ac)] * &b[(br, bc)]
    })
}

/// Matrix of ad_A(X) = AX - XA on column-vectorized operators.
pub fn ad_operator(a: &ExactMatrix) -> ExactMatrix {
    let id = ExactMatrix::identity(a.rows());
    &kron(&id, a) - &kron(&a.transpose(), &id)
}

/// The unique N+ completing (N, Y) to an sl(2)-triple, found as the exact
/// solution of [Y, N+] = 2N+ and [N+, N] = Y. Inconsistent pairs are
/// rejected.
pub fn complete_sl2_triple(n: &NilpotentOperator, y: &ExactMatrix) -> Result<Sl2Triple> {
    let dim = n.dim();
    if y.rows() != dim || y.cols() != dim {
        return Err(Error::DimensionMismatch("grading and operator dimensions differ".into()));
    }
    if y.commutator(n.matrix()) != n.matrix().scale(&Scalar::from_int(-2)) {
        return Err(Error::NoSolution("[Y, N] != -2N, the pair is not part of a triple".into()));
    }
    let two = ExactMatrix::identity(dim * dim).scale(&Scalar::from_int(2));
    let eq1 = &ad_operator(y) - &two;
    // [X, N] = XN - NX = -ad_N(X).
    let eq2 = -&ad_operator(n.matrix());
    let lhs = eq1.vstack(&eq2);
    let zero = ExactMatrix::zeros(dim * dim, 1);
    let yvec = ExactMatrix::from_fn(dim * dim, 1, |r, _| y.vec_columns()[r].clone());
    let rhs = zero.vstack(&yvec);
    let sol = lhs
        .solve(&rhs)
        .ok_or_else(|| Error::NoSolution("no raising operator for this (N, Y) pair".into()))?;
    let n_plus = ExactMatrix::from_vec_columns(dim, dim, &sol.vec_columns());
    Sl2Triple::new(n.clone(), y.clone(), n_plus)
}

/// Basis of c = ker(ad N) ∩ im(ad N) inside the endomorphism space.
#[derive(Clone, Debug)]
pub struct CSpace {
    pub dim_ambient: usize,
    pub basis: Vec<ExactMatrix>,
}

impl CSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn element(&self, coords: &[Scalar]) -> ExactMatrix {
        assert_eq!(coords.len(), self.basis.len());
        let mut acc = ExactMatrix::zeros(self.dim_ambient, self.dim_ambient);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = &acc + &b.scale(c);
            }
        }
        acc
    }
}

pub fn compute_c_space(n: &NilpotentOperator) -> CSpace {
    let dim = n.dim();
    let ad = ad_operator(n.matrix());
    let meet = kernel(&ad).intersect(&crate::subspace::image(&ad));
    let basis = (0..meet.dim())
        .map(|r| ExactMatrix::from_vec_columns(dim, dim, meet.basis().row(r)))
        .collect();
    CSpace { dim_ambient: dim, basis }
}

/// exp(zN) applied to every step of the filtration; exact because N is
/// nilpotent and z is a Gaussian rational.
pub fn nilpotent_orbit_eval(
    n: &NilpotentOperator,
    f: &HodgeFiltration,
    z: &Scalar,
) -> Result<HodgeFiltration> {
    if n.dim() != f.ambient_dim() {
        return Err(Error::DimensionMismatch("operator and filtration dimensions differ".into()));
    }
    f.apply(&n.matrix().exp_scaled(z)?)
}

/// Forward direction of the correspondence between R-split polarized mixed
/// structures and pure polarized structures at exp(iN)F:
/// * (S, N, W(N), F) passes the polarized-mixed validator and is R-split;
/// * exp(iN)F is a pure polarized structure of the same weight;
/// * the completed triple is horizontal there: N + iY + N+ shifts the
///   Hodge bigrading of the moved structure by (-1, +1).
pub fn check_orbit_correspondence(
    s: &BilinearForm,
    n: &NilpotentOperator,
    f: &HodgeFiltration,
) -> Result<Verdict> {
    let m = f.weight();
    if m < 0 {
        return Err(Error::WeightOutOfRange { k: m, reason: "negative weight".into() });
    }
    let w = monodromy_weight_filtration(n, m as usize)?;
    let mut verdict = Verdict::new();
    let pmhs = validate_pmhs(s, n, &w, f)?;
    verdict.record(
        "polarized mixed structure",
        pmhs.passed(),
        pmhs.first_failure().map(|c| format!("{}: {}", c.name, c.details)).unwrap_or_default(),
    );
    let splitting = deligne_splitting(&w, f)?;
    verdict.record("splits over R", is_r_split(&splitting), String::new());
    if !verdict.passed() {
        return Ok(verdict);
    }
    let moved = nilpotent_orbit_eval(n, f, &Scalar::i())?;
    let (pure, _) = validate_pure_polarized(&moved, s);
    verdict.record(
        "exp(iN)F is pure polarized",
        pure.passed(),
        pure.first_failure().map(|c| format!("{}: {}", c.name, c.details)).unwrap_or_default(),
    );
    let grading = canonical_grading(&splitting, m)?;
    let triple = complete_sl2_triple(n, &grading.y)?;
    let x_minus = &(n.matrix() + &grading.y.scale(&Scalar::i())) + &triple.n_plus;
    let mut horizontal = true;
    let mut detail = String::new();
    for p in moved.min_index()..=moved.max_index() {
        let q = m - p;
        let piece = moved.step(p).intersect(&moved.step(q).conj());
        if piece.is_zero() {
            continue;
        }
        let target = moved.step(p - 1).intersect(&moved.step(q + 1).conj());
        for r in 0..piece.dim() {
            let img = x_minus.apply(piece.basis().row(r));
            if img.iter().all(Scalar::is_zero) {
                continue;
            }
            if !target.contains_vector(&img) {
                horizontal = false;
                detail =
                    format!("image of a type ({p},{q}) vector leaves type ({},{})", p - 1, q + 1);
            }
        }
    }
    verdict.record("horizontality of the triple", horizontal, detail);
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_triple_brackets_hold() {
        standard_triple().check_brackets().unwrap();
    }

    #[test]
    fn completion_recovers_standard_raising_operator() {
        let t = standard_triple();
        let completed = complete_sl2_triple(&t.n_minus, &t.y).unwrap();
        assert_eq!(completed.n_plus, t.n_plus);
    }

    #[test]
    fn completion_of_zero_pair_is_zero() {
        let n = NilpotentOperator::zero(3);
        let t = complete_sl2_triple(&n, &ExactMatrix::zeros(3, 3)).unwrap();
        assert!(t.n_plus.is_zero());
    }

    #[test]
    fn completion_is_blockwise_for_two_blocks() {
        // Jordan type (2,2): block-diagonal N and Y give block-diagonal N+.
        let n = NilpotentOperator::new(crate::weight::jordan_blocks(&[2, 2])).unwrap();
        let mut y = ExactMatrix::zeros(4, 4);
        for (idx, lam) in [(0, -1), (1, 1), (2, -1), (3, 1)] {
            y[(idx, idx)] = Scalar::from_int(lam);
        }
        let t = complete_sl2_triple(&n, &y).unwrap();
        let mut expected = ExactMatrix::zeros(4, 4);
        expected[(1, 0)] = Scalar::one();
        expected[(3, 2)] = Scalar::one();
        assert_eq!(t.n_plus, expected);
    }

    #[test]
    fn inconsistent_pair_is_rejected() {
        let n = NilpotentOperator::new(crate::weight::jordan_blocks(&[2])).unwrap();
        assert!(complete_sl2_triple(&n, &ExactMatrix::identity(2)).is_err());
    }

    #[test]
    fn c_space_of_zero_is_trivial() {
        let c = compute_c_space(&NilpotentOperator::zero(2));
        assert_eq!(c.dim(), 0);
    }

    #[test]
    fn c_space_of_jordan_block_is_spanned_by_n() {
        let n = NilpotentOperator::new(crate::weight::jordan_blocks(&[2])).unwrap();
        let c = compute_c_space(&n);
        assert_eq!(c.dim(), 1);
        let gen = &c.basis[0];
        assert!(gen[(1, 0)].is_zero() && gen[(0, 0)].is_zero() && gen[(1, 1)].is_zero());
        assert!(!gen[(0, 1)].is_zero());
    }

    #[test]
    fn c_space_type_2_1() {
        let n = NilpotentOperator::new(crate::weight::jordan_blocks(&[2, 1])).unwrap();
        let c = compute_c_space(&n);
        // Lowest-weight vectors of the nontrivial ad-irreps: one from the
        // adjoint of the 2-block, two from the mixed 2-dim irreps.
        assert_eq!(c.dim(), 3);
        for b in &c.basis {
            assert!(n.matrix().commutator(b).is_zero());
        }
    }

    #[test]
    fn orbit_eval_at_zero_and_for_zero_operator() {
        let f = HodgeFiltration::new(
            1,
            vec![(0, Subspace::full(2)), (1, Subspace::span_of_axis(2, 1))],
        )
        .unwrap();
        let n = NilpotentOperator::new(crate::weight::jordan_blocks(&[2])).unwrap();
        assert_eq!(nilpotent_orbit_eval(&n, &f, &Scalar::zero()).unwrap(), f);
        let z = Scalar::gaussian(2, 3, -1, 2);
        let zero = NilpotentOperator::zero(2);
        assert_eq!(nilpotent_orbit_eval(&zero, &f, &z).unwrap(), f);
    }

    #[test]
    fn orbit_eval_group_law_instance() {
        let n = NilpotentOperator::new(crate::weight::jordan_blocks(&[3])).unwrap();
        let f = HodgeFiltration::new(
            2,
            vec![
                (0, Subspace::full(3)),
                (1, Subspace::from_rows(&ExactMatrix::from_ints(&[&[1, 0, 0], &[0, 0, 1]]))),
                (2, Subspace::span_of_axis(3, 2)),
            ],
        )
        .unwrap();
        let z = Scalar::gaussian(1, 2, 1, 3);
        let w = Scalar::gaussian(-2, 5, 1, 7);
        let lhs = nilpotent_orbit_eval(&n, &nilpotent_orbit_eval(&n, &f, &w).unwrap(), &z).unwrap();
        let rhs = nilpotent_orbit_eval(&n, &f, &(&z + &w)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn weight_one_model_satisfies_the_correspondence() {
        let s = BilinearForm::standard_symplectic(2);
        let n = NilpotentOperator::new(crate::weight::jordan_blocks(&[2])).unwrap();
        let f = HodgeFiltration::new(
            1,
            vec![(0, Subspace::full(2)), (1, Subspace::span_of_axis(2, 1))],
        )
        .unwrap();
        let verdict = check_orbit_correspondence(&s, &n, &f).unwrap();
        assert!(verdict.passed(), "{verdict}");
    }

    #[test]
    fn zero_operator_with_pure_structure_passes() {
        let s = BilinearForm::standard_symplectic(2);
        let n = NilpotentOperator::zero(2);
        let f = HodgeFiltration::new(
            1,
            vec![
                (0, Subspace::full(2)),
                (1, Subspace::from_vectors(2, vec![vec![Scalar::i(), Scalar::one()]])),
            ],
        )
        .unwrap();
        let verdict = check_orbit_correspondence(&s, &n, &f).unwrap();
        assert!(verdict.passed(), "{verdict}");
    }

    #[test]
    fn canonical_grading_of_tate_pair() {
        // Tate(0) at weight 0 plus Tate(1) at weight 2, center 1: Y = diag(-1, 1).
        let w = CenteredWeightFiltration::new(
            1,
            vec![
                Subspace::span_of_axis(2, 0),
                Subspace::span_of_axis(2, 0),
                Subspace::full(2),
            ],
        )
        .unwrap();
        let f = HodgeFiltration::new(
            1,
            vec![(0, Subspace::full(2)), (1, Subspace::span_of_axis(2, 1))],
        )
        .unwrap();
        let splitting = deligne_splitting(&w, &f).unwrap();
        let grading = canonical_grading(&splitting, 1).unwrap();
        assert_eq!(grading.y, ExactMatrix::from_ints(&[&[-1, 0], &[0, 1]]));
        let n = NilpotentOperator::new(crate::weight::jordan_blocks(&[2])).unwrap();
        assert!(grading.verify(&w, &n).passed());
    }

    #[test]
    fn non_r_split_grading_rejected() {
        let c = Scalar::gaussian(0, 1, 1, 1);
        let v = vec![c, Scalar::one()];
        let w = CenteredWeightFiltration::new(
            1,
            vec![
                Subspace::span_of_axis(2, 0),
                Subspace::span_of_axis(2, 0),
                Subspace::full(2),
            ],
        )
        .unwrap();
        let f = HodgeFiltration::new(
            1,
            vec![(0, Subspace::full(2)), (1, Subspace::from_vectors(2, vec![v]))],
        )
        .unwrap();
        let splitting = deligne_splitting(&w, &f).unwrap();
        assert!(matches!(canonical_grading(&splitting, 1), Err(Error::NotRSplit(_))));
    }
}
