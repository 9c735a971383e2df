//! Monodromy weight filtrations of nilpotent operators.
//!
//! The filtration W(N) centered at m is built by the closed-form convolution
//!
//!     W_{m+j} = sum over b >= max(0, -j) of  ker N^{j+b+1}  ∩  im N^b ,
//!
//! then re-checked against the two defining conditions (N lowers the
//! filtration by two; N^l induces an isomorphism Gr_{m+l} -> Gr_{m-l}), so
//! every value returned from this module is self-certifying.

use crate::bilinear::BilinearForm;
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::report::Verdict;
use crate::scalar::Scalar;
use crate::subspace::{image, kernel, Subspace};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct NilpotentOperator {
    matrix: ExactMatrix,
    nilpotency_index: usize,
}

impl NilpotentOperator {
    pub fn new(matrix: ExactMatrix) -> Result<NilpotentOperator> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch("nilpotent operator must be square".into()));
        }
        let nilpotency_index = matrix.nilpotency_index()?;
        Ok(NilpotentOperator { matrix, nilpotency_index })
    }

    pub fn zero(dim: usize) -> NilpotentOperator {
        NilpotentOperator { matrix: ExactMatrix::zeros(dim, dim), nilpotency_index: 0 }
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Smallest k with N^{k+1} = 0; zero operator has index 0.
    pub fn index(&self) -> usize {
        self.nilpotency_index
    }

    pub fn exp(&self) -> ExactMatrix {
        self.matrix.exp_nilpotent().expect("nilpotent by construction")
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

#[derive(Clone, Debug)]
pub struct UnipotentOperator {
    matrix: ExactMatrix,
    unipotency_index: usize,
}

impl UnipotentOperator {
    pub fn new(matrix: ExactMatrix) -> Result<UnipotentOperator> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch("unipotent operator must be square".into()));
        }
        let e = &matrix - &ExactMatrix::identity(matrix.rows());
        let unipotency_index = e.nilpotency_index().map_err(|err| match err {
            Error::NotNilpotent { power } => Error::NotUnipotent { power },
            other => other,
        })?;
        Ok(UnipotentOperator { matrix, unipotency_index })
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn index(&self) -> usize {
        self.unipotency_index
    }
}

/// N = log T for unipotent T, as the finite series -sum_n (I-T)^n / n.
/// The unipotency index of T equals the nilpotency index of N.
pub fn log_unipotent(t: &UnipotentOperator) -> Result<NilpotentOperator> {
    let e = t.matrix() - &ExactMatrix::identity(t.matrix().rows());
    let log = e.log_unipotent_part()?;
    let n = NilpotentOperator::new(log)?;
    if n.index() != t.index() {
        return Err(Error::Defect(format!(
            "log changed the index: unipotency {} vs nilpotency {}",
            t.index(),
            n.index()
        )));
    }
    Ok(n)
}

/// An increasing chain W_0 ⊆ ... ⊆ W_{2m} = H with center m.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CenteredWeightFiltration {
    center: usize,
    steps: Vec<Subspace>,
}

impl CenteredWeightFiltration {
    pub fn new(center: usize, steps: Vec<Subspace>) -> Result<CenteredWeightFiltration> {
        if steps.len() != 2 * center + 1 {
            return Err(Error::DimensionMismatch(format!(
                "expected {} steps for center {center}, got {}",
                2 * center + 1,
                steps.len()
            )));
        }
        let ambient = steps[0].ambient_dim();
        for w in &steps {
            if w.ambient_dim() != ambient {
                return Err(Error::DimensionMismatch("steps in different ambient spaces".into()));
            }
        }
        for l in 1..steps.len() {
            if !steps[l].contains(&steps[l - 1]) {
                return Err(Error::InclusionViolation(format!("W_{} does not contain W_{}", l, l - 1)));
            }
        }
        if !steps[2 * center].is_full() {
            return Err(Error::InclusionViolation("top step is not the full space".into()));
        }
        Ok(CenteredWeightFiltration { center, steps })
    }

    pub fn center(&self) -> usize {
        self.center
    }

    pub fn ambient_dim(&self) -> usize {
        self.steps[0].ambient_dim()
    }

    /// W_l with the convention W_l = 0 for l < 0 and W_l = H for l > 2m.
    pub fn step(&self, l: i64) -> Subspace {
        if l < 0 {
            Subspace::zero(self.ambient_dim())
        } else if (l as usize) >= self.steps.len() {
            Subspace::full(self.ambient_dim())
        } else {
            self.steps[l as usize].clone()
        }
    }

    pub fn steps(&self) -> &[Subspace] {
        &self.steps
    }

    pub fn step_dims(&self) -> Vec<usize> {
        self.steps.iter().map(Subspace::dim).collect()
    }

    pub fn gr_dim(&self, l: i64) -> usize {
        self.step(l).dim() - self.step(l - 1).dim()
    }

    pub fn gr_dims(&self) -> Vec<usize> {
        (0..=2 * self.center as i64).map(|l| self.gr_dim(l)).collect()
    }

    /// Echelon-canonical lift of a basis of Gr_l = W_l / W_{l-1}, one row
    /// per graded basis vector.
    pub fn gr_lift(&self, l: i64) -> ExactMatrix {
        self.step(l - 1)
            .quotient_basis(&self.step(l))
            .expect("filtration steps are nested by construction")
    }

    /// Coordinates of the class of `v` in the canonical basis of Gr_l.
    /// Errors when v does not lie in W_l.
    pub fn gr_coords(&self, l: i64, v: &[Scalar]) -> Result<Vec<Scalar>> {
        let wl = self.step(l);
        if !wl.contains_vector(v) {
            return Err(Error::InclusionViolation(format!("vector not in W_{l}")));
        }
        let lower = self.step(l - 1);
        let lift = self.gr_lift(l);
        if lift.rows() == 0 {
            return Ok(Vec::new());
        }
        // v = (coeffs on W_{l-1} basis) + (coeffs on lift rows); solve for both.
        let stacked = if lower.dim() == 0 { lift.clone() } else { lower.basis().vstack(&lift) };
        let rhs = ExactMatrix::from_fn(v.len(), 1, |r, _| v[r].clone());
        let sol = stacked
            .transpose()
            .solve(&rhs)
            .ok_or_else(|| Error::Defect("graded coordinates have no solution".into()))?;
        Ok((lower.dim()..lower.dim() + lift.rows()).map(|r| sol[(r, 0)].clone()).collect())
    }

    /// Matrix of the map Gr_from -> Gr_to induced by `op`, acting on column
    /// coordinate vectors in the canonical lift bases. Errors when op does
    /// not map W_from into W_to.
    pub fn induced_map(&self, op: &ExactMatrix, from_l: i64, to_l: i64) -> Result<ExactMatrix> {
        let lift = self.gr_lift(from_l);
        let to_dim = self.gr_dim(to_l);
        let mut t = ExactMatrix::zeros(to_dim, lift.rows());
        for i in 0..lift.rows() {
            let img = op.apply(lift.row(i));
            let coords = self.gr_coords(to_l, &img).map_err(|_| {
                Error::InclusionViolation(format!("operator does not map W_{from_l} into W_{to_l}"))
            })?;
            for (j, c) in coords.into_iter().enumerate() {
                t[(j, i)] = c;
            }
        }
        Ok(t)
    }

    /// Vectors of the ambient space representing a subspace of Gr_l given
    /// in canonical lift coordinates.
    pub fn lift_gr_subspace(&self, l: i64, sub: &Subspace) -> Vec<Vec<Scalar>> {
        let lift = self.gr_lift(l);
        assert_eq!(sub.ambient_dim(), lift.rows(), "graded coordinate mismatch");
        (0..sub.dim())
            .map(|r| {
                let coords = sub.basis().row(r);
                let mut v = vec![Scalar::zero(); self.ambient_dim()];
                for (i, c) in coords.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (slot, lv) in v.iter_mut().zip(lift.row(i)) {
                        if !lv.is_zero() {
                            *slot = &*slot + &(c * lv);
                        }
                    }
                }
                v
            })
            .collect()
    }
}

/// The unique filtration of the defining proposition, centered at m.
/// Requires the nilpotency index of N to be at most m.
pub fn monodromy_weight_filtration(
    n: &NilpotentOperator,
    center: usize,
) -> Result<CenteredWeightFiltration> {
    if n.index() > center {
        return Err(Error::IndexExceedsCenter { index: n.index(), center });
    }
    let dim = n.dim();
    let m = center as i64;
    // Cache kernels and images of all powers that can appear.
    let max_pow = 2 * center + 2;
    let mut powers = Vec::with_capacity(max_pow + 1);
    powers.push(ExactMatrix::identity(dim));
    for _ in 1..=max_pow {
        powers.push(&powers[powers.len() - 1] * n.matrix());
    }
    let kernels: Vec<Subspace> = powers.iter().map(kernel).collect();
    let images: Vec<Subspace> = powers.iter().map(image).collect();
    let mut steps = Vec::with_capacity(2 * center + 1);
    for l in 0..=2 * m {
        let j = l - m;
        let mut acc = Subspace::zero(dim);
        let mut b = std::cmp::max(0, -j);
        loop {
            let a = j + b + 1;
            debug_assert!(a >= 1);
            let ker = &kernels[std::cmp::min(a as usize, max_pow)];
            let im = &images[std::cmp::min(b as usize, max_pow)];
            let term = ker.intersect(im);
            acc = acc.sum(&term);
            b += 1;
            if b as usize > n.index() {
                // im N^b is stable (zero once b exceeds the index).
                break;
            }
        }
        steps.push(acc);
    }
    let w = CenteredWeightFiltration::new(center, steps)?;
    let verdict = verify_weight_filtration(n, &w);
    if !verdict.passed() {
        return Err(Error::Defect(format!(
            "constructed filtration fails its defining conditions: {}",
            verdict.first_failure().map(|c| c.name.clone()).unwrap_or_default()
        )));
    }
    Ok(w)
}

/// The two defining conditions, checked exactly:
/// (1) N(W_l) ⊆ W_{l-2};
/// (2) N^l : Gr_{m+l} -> Gr_{m-l} is an isomorphism for every l >= 0.
pub fn verify_weight_filtration(n: &NilpotentOperator, w: &CenteredWeightFiltration) -> Verdict {
    let mut verdict = Verdict::new();
    let m = w.center() as i64;
    if n.dim() != w.ambient_dim() {
        verdict.record("ambient", false, "operator and filtration dimensions differ");
        return verdict;
    }
    for l in 0..=2 * m {
        let moved = w.step(l).apply(n.matrix());
        let ok = w.step(l - 2).contains(&moved);
        verdict.record(
            format!("lowering W_{l}"),
            ok,
            if ok { String::new() } else { format!("N(W_{l}) is not inside W_{}", l - 2) },
        );
    }
    for l in 0..=m {
        let power = n.matrix().pow(l as usize);
        let up = w.gr_dim(m + l);
        let down = w.gr_dim(m - l);
        if up != down {
            verdict.record(format!("iso Gr_{}", m + l), false, format!("dim Gr_{} = {up} but dim Gr_{} = {down}", m + l, m - l));
            continue;
        }
        match w.induced_map(&power, m + l, m - l) {
            Ok(t) => {
                let ok = t.rank() == up;
                verdict.record(
                    format!("iso Gr_{}", m + l),
                    ok,
                    if ok {
                        String::new()
                    } else {
                        format!("N^{l}: Gr_{} -> Gr_{} has rank {} < {up}", m + l, m - l, t.rank())
                    },
                );
            }
            Err(e) => verdict.record(format!("iso Gr_{}", m + l), false, e.to_string()),
        }
    }
    verdict
}

/// Lefschetz-type primitive decomposition of the graded pieces.
/// Subspaces are expressed in the canonical lift coordinates of their Gr.
#[derive(Clone, Debug)]
pub struct PrimitiveDecomposition {
    /// P_{m+l} ⊆ Gr_{m+l} for l >= 0, keyed by the weight m+l.
    pub parts: BTreeMap<i64, Subspace>,
    /// For each weight k, the summands N^i(P_{k+2i}) realizing Gr_k,
    /// recorded as (source weight, i, image subspace of Gr_k).
    pub summands: BTreeMap<i64, Vec<(i64, usize, Subspace)>>,
}

/// P_{m+l} = ker(N^{l+1} : Gr_{m+l} -> Gr_{m-l-2});  Gr_k = ⊕_i N^i(P_{k+2i}).
pub fn primitive_decomposition(
    n: &NilpotentOperator,
    w: &CenteredWeightFiltration,
) -> Result<PrimitiveDecomposition> {
    let recomputed = monodromy_weight_filtration(n, w.center())?;
    if &recomputed != w {
        return Err(Error::MismatchedPair("filtration is not W(N) for this operator".into()));
    }
    let m = w.center() as i64;
    let mut parts = BTreeMap::new();
    for l in 0..=m {
        let weight = m + l;
        if w.gr_dim(weight) == 0 {
            parts.insert(weight, Subspace::zero(0));
            continue;
        }
        let t = w.induced_map(&n.matrix().pow(l as usize + 1), weight, m - l - 2)?;
        parts.insert(weight, kernel(&t));
    }
    let mut summands = BTreeMap::new();
    for k in 0..=2 * m {
        let mut pieces = Vec::new();
        let mut i = std::cmp::max(m - k, 0);
        while k + 2 * i <= 2 * m {
            let source = k + 2 * i;
            let p = &parts[&source];
            if !p.is_zero() {
                let vectors = w.lift_gr_subspace(source, p);
                let power = n.matrix().pow(i as usize);
                let mut image_coords = Vec::new();
                for v in &vectors {
                    let moved = power.apply(v);
                    image_coords.push(w.gr_coords(k, &moved)?);
                }
                let img = Subspace::from_vectors(w.gr_dim(k), image_coords);
                if !img.is_zero() {
                    pieces.push((source, i as usize, img));
                }
            }
            i += 1;
        }
        // Direct-sum audit: summand dimensions add up to dim Gr_k.
        let total: usize = pieces.iter().map(|(_, _, s)| s.dim()).sum();
        let mut union = Subspace::zero(w.gr_dim(k));
        for (_, _, s) in &pieces {
            union = union.sum(s);
        }
        if total != w.gr_dim(k) || union.dim() != total {
            return Err(Error::Defect(format!(
                "primitive summands of Gr_{k} are not a direct sum: {} pieces totalling {total}, dim Gr = {}",
                pieces.len(),
                w.gr_dim(k)
            )));
        }
        summands.insert(k, pieces);
    }
    Ok(PrimitiveDecomposition { parts, summands })
}

/// Graded dimensions of the kernel K = ker N inside Gr_k for k <= m:
/// dim Gr_k H = sum over a of dim Gr_{k-2a}(K), Gr taken in W ∩ K.
pub fn kernel_graded_decomposition(
    n: &NilpotentOperator,
    w: &CenteredWeightFiltration,
    k: i64,
) -> Result<Vec<usize>> {
    let m = w.center() as i64;
    if k > m {
        return Err(Error::WeightOutOfRange { k, reason: format!("decomposition requires k <= center {m}") });
    }
    if k < 0 {
        return Err(Error::WeightOutOfRange { k, reason: "negative weight".into() });
    }
    let ker = kernel(n.matrix());
    let mut dims = Vec::new();
    for a in 0..=(k / 2) {
        let top = w.step(k - 2 * a).intersect(&ker);
        let bot = w.step(k - 2 * a - 1).intersect(&ker);
        dims.push(top.dim() - bot.dim());
    }
    let total: usize = dims.iter().sum();
    if total != w.gr_dim(k) {
        return Err(Error::Defect(format!(
            "kernel decomposition of Gr_{k} sums to {total}, expected {}",
            w.gr_dim(k)
        )));
    }
    Ok(dims)
}

/// Compatibility of a polarization with the weight filtration:
/// W_l^⊥ = W_{2m-l-1} for all l, and the induced pairing S(., N^l .) is
/// nondegenerate on Gr_{m+l}. On Gr_{m-l} the artifact uses the transported
/// form S_t(N^l x, N^l y) := S(N^l x, y), which is nondegenerate whenever
/// the pairing on Gr_{m+l} is.
pub fn check_polarization_compat(
    n: &NilpotentOperator,
    s: &BilinearForm,
    w: &CenteredWeightFiltration,
) -> Result<Verdict> {
    if s.dim() != w.ambient_dim() {
        return Err(Error::DimensionMismatch("form and filtration dimensions differ".into()));
    }
    s.check_infinitesimal_isometry(n.matrix())?;
    if !s.is_nondegenerate() {
        return Err(Error::DegenerateForm { rank: s.gram().rank(), dim: s.dim() });
    }
    let mut verdict = Verdict::new();
    let m = w.center() as i64;
    for l in 0..=2 * m {
        let ann = s.annihilator(&w.step(l))?;
        let expected = w.step(2 * m - l - 1);
        let ok = ann == expected;
        verdict.record(
            format!("orthogonal W_{l}"),
            ok,
            if ok {
                String::new()
            } else {
                format!("ann(W_{l}) has dim {}, expected W_{} of dim {}", ann.dim(), 2 * m - l - 1, expected.dim())
            },
        );
    }
    for l in 0..=m {
        let g = w.gr_dim(m + l);
        if g == 0 {
            continue;
        }
        let lift = w.gr_lift(m + l);
        let gram = &(&lift * s.gram()) * &(&n.matrix().pow(l as usize) * &lift.transpose());
        let ok = gram.rank() == g;
        verdict.record(
            format!("pairing on Gr_{}", m + l),
            ok,
            if ok {
                String::new()
            } else {
                format!("S(., N^{l} .) on Gr_{} has rank {} < {g}", m + l, gram.rank())
            },
        );
    }
    Ok(verdict)
}

/// Nilpotent matrix with the given Jordan block sizes (eigenvalue zero).
pub fn jordan_blocks(sizes: &[usize]) -> ExactMatrix {
    let dim: usize = sizes.iter().sum();
    let mut m = ExactMatrix::zeros(dim, dim);
    let mut offset = 0;
    for &size in sizes {
        for k in 0..size.saturating_sub(1) {
            m[(offset + k, offset + k + 1)] = Scalar::one();
        }
        offset += size;
    }
    m
}
