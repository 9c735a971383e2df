//! Mixed Hodge structures over the Gaussian rationals: validation of pure
//! and mixed structures, the Deligne bigraded splitting, the unique real
//! operator delta with (W, exp(-i delta) F) split over R, and the five
//! polarization conditions.
//!
//! Conventions fixed by this crate (and exercised by the weight-one model
//! in the test suite):
//!
//! * the standard basis is real; conjugation is entrywise;
//! * a pure weight-k structure is positively polarized when the Hermitian
//!   pairing  h(u, v) = i^(p-q) S(conj(u), v)  is positive definite on each
//!   H^{p,q};
//! * on the primitive part P_{m+l} the polarizing form is
//!   S_l(u, v) = S(N^l u, v), i.e. the iterate is applied to the first
//!   argument, and the transported form on Gr_{m-l} is defined by
//!   S_t(N^l x, N^l y) = S(N^l x, y).

use crate::bilinear::{BilinearForm, Symmetry};
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::report::Verdict;
use crate::scalar::Scalar;
use crate::subspace::Subspace;
use crate::weight::{monodromy_weight_filtration, CenteredWeightFiltration, NilpotentOperator};
use std::collections::BTreeMap;

/// Marker for the rational structure: the standard basis is declared real,
/// so conjugation acts entrywise and fixes exactly the rational points.
#[derive(Clone, Copy, Debug)]
pub struct RationalStructure {
    pub dim: usize,
}

impl RationalStructure {
    pub fn conj_vector(&self, v: &[Scalar]) -> Vec<Scalar> {
        v.iter().map(Scalar::conj).collect()
    }

    pub fn is_real_vector(&self, v: &[Scalar]) -> bool {
        v.iter().all(Scalar::is_rational)
    }

    pub fn is_real_operator(&self, m: &ExactMatrix) -> bool {
        m.is_rational()
    }
}

/// A decreasing filtration F^{p_max} ⊆ ... ⊆ F^{p_min} = H. Steps are
/// stored sparsely; F^p is the step at the smallest stored index >= p, and
/// the zero space above the stored range.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HodgeFiltration {
    weight: i64,
    steps: BTreeMap<i64, Subspace>,
}

impl HodgeFiltration {
    pub fn new(weight: i64, steps: Vec<(i64, Subspace)>) -> Result<HodgeFiltration> {
        if steps.is_empty() {
            return Err(Error::DimensionMismatch("a filtration needs at least one step".into()));
        }
        let map: BTreeMap<i64, Subspace> = steps.into_iter().collect();
        let ambient = map.values().next().unwrap().ambient_dim();
        for s in map.values() {
            if s.ambient_dim() != ambient {
                return Err(Error::DimensionMismatch(
                    "filtration steps in different ambient spaces".into(),
                ));
            }
        }
        let keys: Vec<i64> = map.keys().copied().collect();
        for pair in keys.windows(2) {
            if !map[&pair[0]].contains(&map[&pair[1]]) {
                return Err(Error::InclusionViolation(format!(
                    "F^{} does not contain F^{}",
                    pair[0], pair[1]
                )));
            }
        }
        if !map[&keys[0]].is_full() {
            return Err(Error::InclusionViolation("lowest stored step must be the full space".into()));
        }
        Ok(HodgeFiltration { weight, steps: map })
    }

    /// One-dimensional Tate structure Q(-j): weight 2j, F^j = H, F^{j+1} = 0.
    pub fn tate(j: i64) -> HodgeFiltration {
        HodgeFiltration::new(2 * j, vec![(j, Subspace::full(1))]).unwrap()
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn ambient_dim(&self) -> usize {
        self.steps.values().next().unwrap().ambient_dim()
    }

    pub fn min_index(&self) -> i64 {
        *self.steps.keys().next().unwrap()
    }

    pub fn max_index(&self) -> i64 {
        *self.steps.keys().last().unwrap()
    }

    pub fn step(&self, p: i64) -> Subspace {
        match self.steps.range(p..).next() {
            Some((_, s)) => s.clone(),
            None => Subspace::zero(self.ambient_dim()),
        }
    }

    pub fn stored(&self) -> &BTreeMap<i64, Subspace> {
        &self.steps
    }

    /// Image filtration under an invertible operator.
    pub fn apply(&self, op: &ExactMatrix) -> Result<HodgeFiltration> {
        let steps = self.steps.iter().map(|(&p, s)| (p, s.apply(op))).collect::<Vec<_>>();
        HodgeFiltration::new(self.weight, steps)
    }

    pub fn conj(&self) -> HodgeFiltration {
        HodgeFiltration {
            weight: self.weight,
            steps: self.steps.iter().map(|(&p, s)| (p, s.conj())).collect(),
        }
    }

    /// dim F^p / F^{p+1} for every p in the stored range.
    pub fn level_dims(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for p in self.min_index()..=self.max_index() {
            let d = self.step(p).dim() - self.step(p + 1).dim();
            if d > 0 {
                out.insert(p, d);
            }
        }
        out
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HodgeNumbers {
    pub weight: i64,
    pub h: BTreeMap<(i64, i64), usize>,
}

impl HodgeNumbers {
    pub fn total(&self) -> usize {
        self.h.values().sum()
    }

    pub fn get(&self, p: i64, q: i64) -> usize {
        self.h.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.h.iter().all(|(&(p, q), &v)| self.get(q, p) == v)
    }
}

/// A weight filtration over Q together with a Hodge filtration over Q(i).
#[derive(Clone, Debug)]
pub struct MixedHodgeStructure {
    pub w: CenteredWeightFiltration,
    pub f: HodgeFiltration,
}

impl MixedHodgeStructure {
    pub fn new(w: CenteredWeightFiltration, f: HodgeFiltration) -> Result<MixedHodgeStructure> {
        if w.ambient_dim() != f.ambient_dim() {
            return Err(Error::DimensionMismatch(
                "weight and Hodge filtration dimensions differ".into(),
            ));
        }
        for step in w.steps() {
            if !step.is_rational() {
                return Err(Error::InvalidMhs("weight filtration must be defined over Q".into()));
            }
        }
        Ok(MixedHodgeStructure { w, f })
    }
}

/// Pure Hodge structure test: F^p ⊕ conj(F^{k-p+1}) = H for all p.
/// On success the Hodge numbers h^{p,k-p} = dim F^p/F^{p+1} are returned.
pub fn validate_pure(f: &HodgeFiltration) -> (Verdict, Option<HodgeNumbers>) {
    let mut verdict = Verdict::new();
    let k = f.weight();
    let n = f.ambient_dim();
    let lo = std::cmp::min(f.min_index(), k - f.max_index());
    let hi = std::cmp::max(f.max_index(), k - f.min_index()) + 1;
    for p in lo..=hi {
        let a = f.step(p);
        let b = f.step(k - p + 1).conj();
        let meets = a.intersect(&b);
        let spans = a.sum(&b);
        let ok = meets.is_zero() && spans.dim() == n;
        verdict.record(
            format!("splitting at p={p}"),
            ok,
            if ok {
                String::new()
            } else {
                format!(
                    "F^{p} (dim {}) and conj F^{} (dim {}) meet in dim {} and span dim {}",
                    a.dim(),
                    k - p + 1,
                    b.dim(),
                    meets.dim(),
                    spans.dim()
                )
            },
        );
    }
    if !verdict.passed() {
        return (verdict, None);
    }
    let mut h = BTreeMap::new();
    for (p, d) in f.level_dims() {
        h.insert((p, k - p), d);
    }
    (verdict, Some(HodgeNumbers { weight: k, h }))
}

/// Hermitian pairing h(u,v) = i^(p-q) S(twist(conj u), v) on vectors of
/// type (p, q); checks Hermitian symmetry and positive definiteness through
/// leading principal minors.
fn hermitian_positive_definite(
    s: &BilinearForm,
    vectors: &[Vec<Scalar>],
    p: i64,
    q: i64,
    twist: &ExactMatrix,
) -> std::result::Result<(), String> {
    let k = vectors.len();
    if k == 0 {
        return Ok(());
    }
    let phase = Scalar::i_pow(p - q);
    let mut gram = ExactMatrix::zeros(k, k);
    for a in 0..k {
        let twisted = twist.apply(&vectors[a].iter().map(Scalar::conj).collect::<Vec<_>>());
        for b in 0..k {
            gram[(a, b)] = &phase * &s.eval(&twisted, &vectors[b]);
        }
    }
    if gram.conj().transpose() != gram {
        return Err(format!("pairing on type ({p},{q}) is not Hermitian"));
    }
    for lead in 1..=k {
        let minor = ExactMatrix::from_fn(lead, lead, |r, c| gram[(r, c)].clone()).det();
        if !minor.is_rational() {
            return Err(format!("minor {lead} on type ({p},{q}) is not real"));
        }
        if minor.rational_sign().unwrap_or(0) <= 0 {
            return Err(format!("leading minor {lead} on type ({p},{q}) is {minor}, not positive"));
        }
    }
    Ok(())
}

/// Polarized pure structure: validate_pure, S(F^p, F^{k-p+1}) = 0, and
/// positivity of i^(p-q) S(conj ., .) on each H^{p,q} = F^p ∩ conj F^q.
pub fn validate_pure_polarized(
    f: &HodgeFiltration,
    s: &BilinearForm,
) -> (Verdict, Option<HodgeNumbers>) {
    let (mut verdict, numbers) = validate_pure(f);
    let k = f.weight();
    if s.symmetry() != Symmetry::for_weight(k) {
        verdict.record(
            "polarization symmetry",
            false,
            format!("form symmetry does not match weight {k}"),
        );
    }
    for p in f.min_index()..=f.max_index() {
        let a = f.step(p);
        let b = f.step(k - p + 1);
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let pairing = s.pairing_matrix(a.basis(), b.basis());
        let ok = pairing.is_zero();
        verdict.record(
            format!("isotropy S(F^{p}, F^{})", k - p + 1),
            ok,
            if ok { String::new() } else { "nonzero pairing".into() },
        );
    }
    if verdict.passed() {
        let id = ExactMatrix::identity(f.ambient_dim());
        for p in f.min_index()..=f.max_index() {
            let q = k - p;
            let piece = f.step(p).intersect(&f.step(q).conj());
            if piece.is_zero() {
                continue;
            }
            let vectors: Vec<Vec<Scalar>> =
                (0..piece.dim()).map(|r| piece.basis().row_vec(r)).collect();
            match hermitian_positive_definite(s, &vectors, p, q, &id) {
                Ok(()) => verdict.record(format!("positivity on H^{{{p},{q}}}"), true, String::new()),
                Err(msg) => verdict.record(format!("positivity on H^{{{p},{q}}}"), false, msg),
            }
        }
    }
    let numbers = if verdict.passed() { numbers } else { None };
    (verdict, numbers)
}

/// Filtration induced on Gr^W_k, in the canonical lift coordinates.
pub fn induced_graded_filtration(
    w: &CenteredWeightFiltration,
    f: &HodgeFiltration,
    k: i64,
) -> Result<HodgeFiltration> {
    let g = w.gr_dim(k);
    let wk = w.step(k);
    let mut steps: Vec<(i64, Subspace)> = vec![(f.min_index() - 1, Subspace::full(g))];
    for p in f.min_index()..=f.max_index() + 1 {
        let cut = f.step(p).intersect(&wk);
        let mut coords = Vec::new();
        for r in 0..cut.dim() {
            coords.push(w.gr_coords(k, cut.basis().row(r))?);
        }
        steps.push((p, Subspace::from_vectors(g, coords)));
    }
    HodgeFiltration::new(k, steps)
}

/// A mixed structure is valid when every graded piece is pure of its weight.
pub fn validate_mhs(
    w: &CenteredWeightFiltration,
    f: &HodgeFiltration,
) -> (Verdict, Vec<HodgeNumbers>) {
    let mut verdict = Verdict::new();
    let mut graded = Vec::new();
    if w.ambient_dim() != f.ambient_dim() {
        verdict.record("ambient", false, "weight and Hodge filtration dimensions differ");
        return (verdict, graded);
    }
    if w.steps().iter().any(|s| !s.is_rational()) {
        verdict.record("rationality", false, "weight filtration must be defined over Q");
        return (verdict, graded);
    }
    for k in 0..=2 * w.center() as i64 {
        if w.gr_dim(k) == 0 {
            continue;
        }
        match induced_graded_filtration(w, f, k) {
            Ok(gf) => {
                let (v, numbers) = validate_pure(&gf);
                let ok = v.passed();
                verdict.record(
                    format!("pure on Gr_{k}"),
                    ok,
                    if ok {
                        String::new()
                    } else {
                        v.first_failure().map(|c| c.details.clone()).unwrap_or_default()
                    },
                );
                if let Some(numbers) = numbers {
                    graded.push(numbers);
                }
            }
            Err(e) => verdict.record(format!("pure on Gr_{k}"), false, e.to_string()),
        }
    }
    (verdict, graded)
}

/// Deligne's bigraded splitting I^{a,b}.
#[derive(Clone, Debug)]
pub struct BigradedSplitting {
    ambient_dim: usize,
    center: usize,
    pieces: BTreeMap<(i64, i64), Subspace>,
}

impl BigradedSplitting {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn center(&self) -> usize {
        self.center
    }

    /// Nonzero pieces only.
    pub fn pieces(&self) -> &BTreeMap<(i64, i64), Subspace> {
        &self.pieces
    }

    pub fn piece(&self, a: i64, b: i64) -> Subspace {
        self.pieces
            .get(&(a, b))
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.ambient_dim))
    }

    /// Direct sum of pieces with a+b <= l.
    pub fn weight_step(&self, l: i64) -> Subspace {
        let mut acc = Subspace::zero(self.ambient_dim);
        for (&(a, b), s) in &self.pieces {
            if a + b <= l {
                acc = acc.sum(s);
            }
        }
        acc
    }

    /// Direct sum of pieces with a >= p.
    pub fn hodge_step(&self, p: i64) -> Subspace {
        let mut acc = Subspace::zero(self.ambient_dim);
        for (&(a, _), s) in &self.pieces {
            if a >= p {
                acc = acc.sum(s);
            }
        }
        acc
    }

    /// Direct sum of pieces strictly lower in both indices than (p, q).
    pub fn lower_corner(&self, p: i64, q: i64) -> Subspace {
        let mut acc = Subspace::zero(self.ambient_dim);
        for (&(a, b), s) in &self.pieces {
            if a < p && b < q {
                acc = acc.sum(s);
            }
        }
        acc
    }
}

/// I^{a,b} = F^a ∩ W_{a+b} ∩ (conj F^b ∩ W_{a+b} + Σ_{j>=1} conj F^{b-j} ∩ W_{a+b-j-1}).
/// The result is validated: pieces recombine to W and F, and the
/// conjugation congruence holds modulo the lower-corner sum.
pub fn deligne_splitting(
    w: &CenteredWeightFiltration,
    f: &HodgeFiltration,
) -> Result<BigradedSplitting> {
    let (verdict, _) = validate_mhs(w, f);
    if !verdict.passed() {
        return Err(Error::InvalidMhs(
            verdict
                .first_failure()
                .map(|c| format!("{}: {}", c.name, c.details))
                .unwrap_or_default(),
        ));
    }
    let n = w.ambient_dim();
    let top = 2 * w.center() as i64;
    let p_hi = f.max_index();
    let mut pieces = BTreeMap::new();
    for l in 0..=top {
        for a in (l - p_hi)..=p_hi {
            let b = l - a;
            let mut inner = f.step(b).conj().intersect(&w.step(l));
            for j in 1..=l {
                let term = f.step(b - j).conj().intersect(&w.step(l - j - 1));
                inner = inner.sum(&term);
            }
            let piece = f.step(a).intersect(&w.step(l)).intersect(&inner);
            if !piece.is_zero() {
                pieces.insert((a, b), piece);
            }
        }
    }
    let splitting = BigradedSplitting { ambient_dim: n, center: w.center(), pieces };
    let total: usize = splitting.pieces.values().map(Subspace::dim).sum();
    let union = splitting.weight_step(top);
    if total != n || union.dim() != n {
        return Err(Error::Defect(format!(
            "splitting pieces total dim {total}, union dim {}, ambient {n}",
            union.dim()
        )));
    }
    for l in 0..=top {
        if splitting.weight_step(l) != w.step(l) {
            return Err(Error::Defect(format!("splitting does not rebuild W_{l}")));
        }
    }
    for p in f.min_index()..=f.max_index() {
        if splitting.hodge_step(p) != f.step(p) {
            return Err(Error::Defect(format!("splitting does not rebuild F^{p}")));
        }
    }
    for (&(a, b), s) in &splitting.pieces {
        let target = splitting.piece(a, b).sum(&splitting.lower_corner(a, b));
        let conj_piece = splitting.piece(b, a).conj();
        if !target.contains(&conj_piece) || s.dim() != splitting.piece(b, a).dim() {
            return Err(Error::Defect(format!("conjugation congruence fails at ({a},{b})")));
        }
    }
    Ok(splitting)
}

/// True when I^{p,q} = conj(I^{q,p}) exactly for all (p, q).
pub fn is_r_split(splitting: &BigradedSplitting) -> bool {
    splitting.pieces.iter().all(|(&(a, b), s)| &splitting.piece(b, a).conj() == s)
}

/// The unique real operator delta, strictly lowering both bigraded indices,
/// with (W, exp(-i delta) F) split over R.
///
/// The splitting of the moved structure is exp(-i delta) applied to the
/// splitting of (W, F), so the defining condition reads
/// exp(-2i delta) I^{p,q} = conj(I^{q,p}) for all (p, q). The transfer
/// operator Theta, defined on I^{p,q} as the unique map onto conj(I^{q,p})
/// fixing the (p,q)-component, is unipotent; this pins
/// delta = (i/2) log Theta in closed form. Realness, strict lowering, and
/// R-splitness of the moved filtration are all re-checked on the result.
pub fn r_split_delta(w: &CenteredWeightFiltration, f: &HodgeFiltration) -> Result<ExactMatrix> {
    let splitting = deligne_splitting(w, f)?;
    let n = w.ambient_dim();
    if is_r_split(&splitting) {
        return Ok(ExactMatrix::zeros(n, n));
    }
    // Global change of basis: columns are the piece basis vectors.
    let mut order: Vec<(i64, i64)> = Vec::new();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (&key, s) in splitting.pieces() {
        for r in 0..s.dim() {
            order.push(key);
            rows.push(s.basis().row_vec(r));
        }
    }
    let basis = ExactMatrix::from_rows(rows);
    let p_cols = basis.transpose();
    let p_inv = p_cols
        .inverse()
        .ok_or_else(|| Error::Defect("splitting basis is singular".into()))?;
    let mut theta_cols = ExactMatrix::zeros(n, n);
    for (slot, &(a, b)) in order.iter().enumerate() {
        let conj_piece = splitting.piece(b, a).conj();
        let c_rows = conj_piece.basis();
        let c_coords = &p_inv * &c_rows.transpose();
        let block_rows: Vec<usize> = order
            .iter()
            .enumerate()
            .filter(|&(_, &key)| key == (a, b))
            .map(|(idx, _)| idx)
            .collect();
        let mut block = ExactMatrix::zeros(block_rows.len(), c_coords.cols());
        for (bi, &ri) in block_rows.iter().enumerate() {
            for c in 0..c_coords.cols() {
                block[(bi, c)] = c_coords[(ri, c)].clone();
            }
        }
        let local = block_rows.iter().position(|&r| r == slot).expect("slot is in its block");
        let mut unit = ExactMatrix::zeros(block_rows.len(), 1);
        unit[(local, 0)] = Scalar::one();
        let t = block.solve(&unit).ok_or_else(|| {
            Error::Defect("conjugate piece does not project onto its partner".into())
        })?;
        let combo = &c_rows.transpose() * &t;
        for r in 0..n {
            theta_cols[(r, slot)] = combo[(r, 0)].clone();
        }
    }
    let theta = &theta_cols * &p_inv;
    let log = (&theta - &ExactMatrix::identity(n)).log_unipotent_part()?;
    let delta = log.scale(&(&Scalar::i() * &Scalar::from_ratio(1, 2)));
    if !delta.is_rational() {
        return Err(Error::Defect("delta is not real".into()));
    }
    for (&(a, b), s) in splitting.pieces() {
        let lower = splitting.lower_corner(a, b);
        for r in 0..s.dim() {
            let moved = delta.apply(s.basis().row(r));
            if !lower.contains_vector(&moved) {
                return Err(Error::Defect(format!("delta does not strictly lower ({a},{b})")));
            }
        }
    }
    let moved_f = f.apply(&delta.scale(&-Scalar::i()).exp_nilpotent()?)?;
    let moved_split = deligne_splitting(w, &moved_f)?;
    if !is_r_split(&moved_split) {
        return Err(Error::Defect("exp(-i delta) F is not split over R".into()));
    }
    Ok(delta)
}

/// The five conditions of a polarized mixed Hodge structure of weight m:
/// (1) N^{m+1} = 0; (2) W = W(N); (3) N F^p ⊆ F^{p-1};
/// (4) S(F^p, F^{m-p+1}) = 0; (5) Hodge-Riemann positivity on every
/// primitive part P_{m+l} for the form S_l(u, v) = S(N^l u, v).
pub fn validate_pmhs(
    s: &BilinearForm,
    n: &NilpotentOperator,
    w: &CenteredWeightFiltration,
    f: &HodgeFiltration,
) -> Result<Verdict> {
    let m = w.center() as i64;
    if s.symmetry() != Symmetry::for_weight(m) {
        return Err(Error::Precondition(format!(
            "polarization of weight {m} must be {:?}",
            Symmetry::for_weight(m)
        )));
    }
    s.check_infinitesimal_isometry(n.matrix())?;
    let mut verdict = Verdict::new();
    verdict.record(
        "(1) nilpotency",
        n.index() as i64 <= m,
        format!("index {} vs weight {m}", n.index()),
    );
    let wn = monodromy_weight_filtration(n, w.center())?;
    let same = &wn == w;
    verdict.record(
        "(2) weight filtration",
        same,
        if same { String::new() } else { "W differs from W(N)".into() },
    );
    for p in f.min_index()..=f.max_index() {
        let moved = f.step(p).apply(n.matrix());
        let ok = f.step(p - 1).contains(&moved);
        verdict.record(
            format!("(3) N F^{p} ⊆ F^{}", p - 1),
            ok,
            if ok { String::new() } else { "image escapes the lower step".into() },
        );
    }
    let lo = std::cmp::min(f.min_index(), m - f.max_index());
    let hi = std::cmp::max(f.max_index(), m - f.min_index());
    for p in lo..=hi {
        let a = f.step(p);
        let b = f.step(m - p + 1);
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let ok = s.pairing_matrix(a.basis(), b.basis()).is_zero();
        verdict.record(
            format!("(4) S(F^{p}, F^{}) = 0", m - p + 1),
            ok,
            if ok { String::new() } else { "nonzero pairing".into() },
        );
    }
    if !verdict.passed() {
        return Ok(verdict);
    }
    // (5) positivity on primitive parts, computed on graded pieces.
    for l in 0..=m {
        let weight = m + l;
        if w.gr_dim(weight) == 0 {
            continue;
        }
        let power = n.matrix().pow(l as usize + 1);
        let to_kernel = w.induced_map(&power, weight, m - l - 2)?;
        let primitive = crate::subspace::kernel(&to_kernel);
        if primitive.is_zero() {
            continue;
        }
        let graded_f = induced_graded_filtration(w, f, weight)?;
        let twist = n.matrix().pow(l as usize);
        let mut covered = 0;
        for p in graded_f.min_index()..=graded_f.max_index() {
            let q = weight - p;
            let piece = graded_f.step(p).intersect(&graded_f.step(q).conj()).intersect(&primitive);
            if piece.is_zero() {
                continue;
            }
            covered += piece.dim();
            let vectors = w.lift_gr_subspace(weight, &piece);
            match hermitian_positive_definite(s, &vectors, p, q, &twist) {
                Ok(()) => {
                    verdict.record(format!("(5) positivity on P_{weight}^{{{p},{q}}}"), true, String::new())
                }
                Err(msg) => verdict.record(format!("(5) positivity on P_{weight}^{{{p},{q}}}"), false, msg),
            }
        }
        verdict.record(
            format!("(5) P_{weight} decomposes"),
            covered == primitive.dim(),
            format!("typed pieces cover {covered} of {}", primitive.dim()),
        );
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::jordan_blocks;

    fn weight_one_limit_model(
    ) -> (BilinearForm, NilpotentOperator, CenteredWeightFiltration, HodgeFiltration) {
        let s = BilinearForm::standard_symplectic(2);
        let n = NilpotentOperator::new(jordan_blocks(&[2])).unwrap();
        let w = monodromy_weight_filtration(&n, 1).unwrap();
        let f = HodgeFiltration::new(
            1,
            vec![(0, Subspace::full(2)), (1, Subspace::span_of_axis(2, 1))],
        )
        .unwrap();
        (s, n, w, f)
    }

    #[test]
    fn tate_is_pure() {
        for j in [-2i64, 0, 3] {
            let f = HodgeFiltration::tate(j);
            let (v, numbers) = validate_pure(&f);
            assert!(v.passed(), "{v}");
            let numbers = numbers.unwrap();
            assert_eq!(numbers.get(j, j), 1);
            assert_eq!(numbers.total(), 1);
        }
    }

    #[test]
    fn weight_one_elliptic_point_is_pure() {
        let v1 = vec![Scalar::i(), Scalar::one()];
        let f = HodgeFiltration::new(
            1,
            vec![(0, Subspace::full(2)), (1, Subspace::from_vectors(2, vec![v1]))],
        )
        .unwrap();
        let (verdict, numbers) = validate_pure(&f);
        assert!(verdict.passed(), "{verdict}");
        let numbers = numbers.unwrap();
        assert_eq!(numbers.get(1, 0), 1);
        assert_eq!(numbers.get(0, 1), 1);
        assert!(numbers.is_symmetric());
    }

    #[test]
    fn real_line_fails_purity() {
        let f = HodgeFiltration::new(
            1,
            vec![(0, Subspace::full(2)), (1, Subspace::span_of_axis(2, 0))],
        )
        .unwrap();
        let (verdict, numbers) = validate_pure(&f);
        assert!(!verdict.passed());
        assert!(numbers.is_none());
    }

    #[test]
    fn polarized_reference_point_passes() {
        let s = BilinearForm::standard_symplectic(2);
        let v1 = vec![Scalar::i(), Scalar::one()];
        let f = HodgeFiltration::new(
            1,
            vec![(0, Subspace::full(2)), (1, Subspace::from_vectors(2, vec![v1]))],
        )
        .unwrap();
        let (verdict, _) = validate_pure_polarized(&f, &s);
        assert!(verdict.passed(), "{verdict}");
    }

    #[test]
    fn mixed_structure_from_tate_sum_passes() {
        // Q(0) at weight 0 plus Q(-1) at weight 2 on a 2-dim space.
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
            0,
            vec![(0, Subspace::full(2)), (1, Subspace::span_of_axis(2, 1))],
        )
        .unwrap();
        let (verdict, graded) = validate_mhs(&w, &f);
        assert!(verdict.passed(), "{verdict}");
        assert_eq!(graded.len(), 2);
        assert_eq!(graded[0].get(0, 0), 1);
        assert_eq!(graded[1].get(1, 1), 1);
    }

    #[test]
    fn shuffled_filtration_fails_with_weight() {
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
            0,
            vec![(1, Subspace::full(2)), (2, Subspace::span_of_axis(2, 1))],
        )
        .unwrap();
        let (verdict, _) = validate_mhs(&w, &f);
        assert!(!verdict.passed());
        assert!(verdict.first_failure().unwrap().name.contains("Gr_0"));
    }

    #[test]
    fn pure_splitting_is_f_cap_conj_f() {
        let v1 = vec![Scalar::i(), Scalar::one()];
        let f = HodgeFiltration::new(
            1,
            vec![(0, Subspace::full(2)), (1, Subspace::from_vectors(2, vec![v1]))],
        )
        .unwrap();
        // Pure weight-1 viewed as a mixed structure concentrated at W_1.
        let w = CenteredWeightFiltration::new(
            1,
            vec![Subspace::zero(2), Subspace::full(2), Subspace::full(2)],
        )
        .unwrap();
        let split = deligne_splitting(&w, &f).unwrap();
        assert!(is_r_split(&split));
        let expected = f.step(1).intersect(&f.step(0).conj());
        assert_eq!(split.piece(1, 0), expected);
    }

    #[test]
    fn two_step_splitting_recovers_chosen_bigrading() {
        // Pieces chosen first: I^{1,1} = span(i e1 + e2), I^{0,0} = span(e1).
        let v = vec![Scalar::i(), Scalar::one()];
        let i11 = Subspace::from_vectors(2, vec![v]);
        let i00 = Subspace::span_of_axis(2, 0);
        let w = CenteredWeightFiltration::new(
            1,
            vec![i00.clone(), i00.clone(), Subspace::full(2)],
        )
        .unwrap();
        let f = HodgeFiltration::new(1, vec![(0, Subspace::full(2)), (1, i11.clone())]).unwrap();
        let split = deligne_splitting(&w, &f).unwrap();
        assert_eq!(split.piece(1, 1), i11);
        assert_eq!(split.piece(0, 0), i00);
        assert!(!is_r_split(&split));
    }

    #[test]
    fn delta_on_r_split_input_is_zero() {
        let (_, _, w, f) = weight_one_limit_model();
        let delta = r_split_delta(&w, &f).unwrap();
        assert!(delta.is_zero());
    }

    #[test]
    fn delta_matches_family_parameter() {
        // I^{1,1} = span((g + b i) e1 + e2) over I^{0,0} = span(e1): the
        // unique strictly-lowering real delta is b E_{12}.
        for (g, b) in [(0i64, 1i64), (1, 2), (-3, 5)] {
            let c = Scalar::new(
                num::BigRational::from_integer(g.into()),
                num::BigRational::from_integer(b.into()),
            );
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
            let delta = r_split_delta(&w, &f).unwrap();
            let mut expected = ExactMatrix::zeros(2, 2);
            expected[(0, 1)] = Scalar::from_int(b);
            assert_eq!(delta, expected, "family point ({g},{b})");
        }
    }

    #[test]
    fn pmhs_weight_one_model_passes_and_sign_flip_fails() {
        let (s, n, w, f) = weight_one_limit_model();
        let verdict = validate_pmhs(&s, &n, &w, &f).unwrap();
        assert!(verdict.passed(), "{verdict}");

        let flipped = BilinearForm::new(-s.gram(), Symmetry::Antisymmetric).unwrap();
        let verdict = validate_pmhs(&flipped, &n, &w, &f).unwrap();
        assert!(!verdict.passed());
        assert!(verdict.first_failure().unwrap().name.contains("(5)"));
    }

    #[test]
    fn pmhs_zero_operator_pure_case() {
        let s = BilinearForm::standard_symplectic(2);
        let n = NilpotentOperator::zero(2);
        let w = monodromy_weight_filtration(&n, 1).unwrap();
        let v1 = vec![Scalar::i(), Scalar::one()];
        let f = HodgeFiltration::new(
            1,
            vec![(0, Subspace::full(2)), (1, Subspace::from_vectors(2, vec![v1]))],
        )
        .unwrap();
        let verdict = validate_pmhs(&s, &n, &w, &f).unwrap();
        assert!(verdict.passed(), "{verdict}");
    }
}
