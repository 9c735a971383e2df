//! Finite graded commutative rings with integer structure constants: the
//! cohomology rings of the surfaces underlying the catalogue (P^2, P^2xP^2,
//! Gr(2,6)) plus the Betti-only shell of the Cayley plane. Ring data is
//! loaded from frozen JSON catalogue files and audited at load time:
//! associativity on all basis triples, graded commutativity, and
//! unimodularity of the duality pairing.

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::Scalar;
use crate::subspace::Subspace;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const P2_JSON: &str = include_str!("../data/rings/p2.json");
pub const P2XP2_JSON: &str = include_str!("../data/rings/p2xp2.json");
pub const GR26_JSON: &str = include_str!("../data/rings/gr26.json");
pub const OP2_SHELL_JSON: &str = include_str!("../data/rings/op2_shell.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasisClass {
    pub symbol: String,
    pub degree: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    pub value: Vec<(String, i64)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RingFile {
    pub schema_version: u32,
    pub name: String,
    pub top_degree: i64,
    pub basis: Vec<BasisClass>,
    /// None for Betti-only shells.
    pub products: Option<Vec<ProductEntry>>,
    pub integration: Vec<(String, i64)>,
    #[serde(default)]
    pub note: Option<String>,
}

/// A graded ring with a fixed integer basis. Products beyond the top
/// degree vanish; a ring without product data only answers Betti queries.
#[derive(Clone, Debug)]
pub struct GradedRing {
    name: String,
    top_degree: i64,
    basis: Vec<BasisClass>,
    index: BTreeMap<String, usize>,
    products: Option<BTreeMap<(usize, usize), Vec<(usize, i64)>>>,
    integration: BTreeMap<usize, i64>,
    note: Option<String>,
}

/// Integer combination of basis classes of one ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingElement {
    pub coeffs: BTreeMap<usize, i64>,
}

impl RingElement {
    pub fn zero() -> RingElement {
        RingElement { coeffs: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|&c| c == 0)
    }

    fn add_term(&mut self, idx: usize, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let slot = self.coeffs.entry(idx).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.coeffs.remove(&idx);
        }
    }

    pub fn plus(&self, other: &RingElement) -> RingElement {
        let mut out = self.clone();
        for (&i, &c) in &other.coeffs {
            out.add_term(i, c);
        }
        out
    }

    pub fn scaled(&self, k: i64) -> RingElement {
        let mut out = RingElement::zero();
        for (&i, &c) in &self.coeffs {
            out.add_term(i, c * k);
        }
        out
    }
}

impl GradedRing {
    pub fn from_file(file: RingFile) -> Result<GradedRing> {
        let mut index = BTreeMap::new();
        for (i, b) in file.basis.iter().enumerate() {
            if b.degree < 0 || b.degree > file.top_degree || b.degree % 2 != 0 {
                return Err(Error::Schema(format!(
                    "basis class {} has degree {} outside the even range 0..{}",
                    b.symbol, b.degree, file.top_degree
                )));
            }
            if index.insert(b.symbol.clone(), i).is_some() {
                return Err(Error::Schema(format!("duplicate basis symbol {}", b.symbol)));
            }
        }
        let products = match file.products {
            None => None,
            Some(entries) => {
                let mut map = BTreeMap::new();
                for e in entries {
                    let li = *index
                        .get(&e.left)
                        .ok_or_else(|| Error::Schema(format!("unknown symbol {}", e.left)))?;
                    let ri = *index
                        .get(&e.right)
                        .ok_or_else(|| Error::Schema(format!("unknown symbol {}", e.right)))?;
                    let mut value = Vec::new();
                    for (sym, c) in e.value {
                        let vi = *index
                            .get(&sym)
                            .ok_or_else(|| Error::Schema(format!("unknown symbol {sym}")))?;
                        value.push((vi, c));
                    }
                    let key = (li.min(ri), li.max(ri));
                    map.insert(key, value);
                }
                Some(map)
            }
        };
        let mut integration = BTreeMap::new();
        for (sym, c) in file.integration {
            let i = *index
                .get(&sym)
                .ok_or_else(|| Error::Schema(format!("unknown symbol {sym}")))?;
            integration.insert(i, c);
        }
        let ring = GradedRing {
            name: file.name,
            top_degree: file.top_degree,
            basis: file.basis,
            index,
            products,
            integration,
            note: file.note,
        };
        ring.audit()?;
        Ok(ring)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn top_degree(&self) -> i64 {
        self.top_degree
    }

    pub fn note(&self) -> Option<&str> {
        self.note.as_deref()
    }

    pub fn has_products(&self) -> bool {
        self.products.is_some()
    }

    pub fn basis(&self) -> &[BasisClass] {
        &self.basis
    }

    pub fn basis_of_degree(&self, degree: i64) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| self.basis[i].degree == degree).collect()
    }

    /// Cohomological Betti vector, index = degree, odd entries zero.
    pub fn betti(&self) -> Vec<usize> {
        let mut b = vec![0usize; self.top_degree as usize + 1];
        for c in &self.basis {
            b[c.degree as usize] += 1;
        }
        b
    }

    pub fn unit(&self) -> RingElement {
        self.class("1").expect("ring has a unit symbol")
    }

    pub fn class(&self, symbol: &str) -> Result<RingElement> {
        let i = *self
            .index
            .get(symbol)
            .ok_or_else(|| Error::Schema(format!("unknown symbol {symbol} in ring {}", self.name)))?;
        let mut e = RingElement::zero();
        e.add_term(i, 1);
        Ok(e)
    }

    pub fn element(&self, terms: &[(&str, i64)]) -> Result<RingElement> {
        let mut e = RingElement::zero();
        for &(sym, c) in terms {
            let i = *self
                .index
                .get(sym)
                .ok_or_else(|| Error::Schema(format!("unknown symbol {sym} in ring {}", self.name)))?;
            e.add_term(i, c);
        }
        Ok(e)
    }

    pub fn describe(&self, e: &RingElement) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (&i, &c) in &e.coeffs {
            let sym = &self.basis[i].symbol;
            parts.push(match c {
                1 => sym.clone(),
                -1 => format!("-{sym}"),
                c => format!("{c}*{sym}"),
            });
        }
        parts.join(" + ")
    }

    /// Degree of a homogeneous element; None for 0 or mixed degrees.
    pub fn degree_of(&self, e: &RingElement) -> Option<i64> {
        let mut deg = None;
        for (&i, _) in &e.coeffs {
            match deg {
                None => deg = Some(self.basis[i].degree),
                Some(d) if d == self.basis[i].degree => {}
                _ => return None,
            }
        }
        deg
    }

    /// Homogeneous component in the given degree.
    pub fn component(&self, e: &RingElement, degree: i64) -> RingElement {
        let mut out = RingElement::zero();
        for (&i, &c) in &e.coeffs {
            if self.basis[i].degree == degree {
                out.add_term(i, c);
            }
        }
        out
    }

    fn product_of_basis(&self, i: usize, j: usize) -> Result<Vec<(usize, i64)>> {
        let products = self
            .products
            .as_ref()
            .ok_or_else(|| Error::MissingProducts(self.name.clone()))?;
        if self.basis[i].degree + self.basis[j].degree > self.top_degree {
            return Ok(Vec::new());
        }
        let key = (i.min(j), i.max(j));
        Ok(products.get(&key).cloned().unwrap_or_default())
    }

    pub fn multiply(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        let mut out = RingElement::zero();
        for (&i, &ca) in &a.coeffs {
            for (&j, &cb) in &b.coeffs {
                for (k, c) in self.product_of_basis(i, j)? {
                    out.add_term(k, ca * cb * c);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, a: &RingElement, k: usize) -> Result<RingElement> {
        let mut acc = self.unit();
        for _ in 0..k {
            acc = self.multiply(&acc, a)?;
        }
        Ok(acc)
    }

    /// Top-degree functional normalized so the class of a point gives 1.
    pub fn integrate(&self, e: &RingElement) -> i64 {
        let mut total = 0;
        for (&i, &c) in &e.coeffs {
            if let Some(&w) = self.integration.get(&i) {
                total += c * w;
            }
        }
        total
    }

    /// Load-time audit: graded commutativity is built into the symmetric
    /// storage; associativity is checked on all basis triples and the
    /// duality pairing deg d x deg (top-d) must be unimodular.
    fn audit(&self) -> Result<()> {
        if self.products.is_none() {
            return Ok(());
        }
        let n = self.basis.len();
        for i in 0..n {
            for j in 0..n {
                for (k, _) in self.product_of_basis(i, j)? {
                    let expect = self.basis[i].degree + self.basis[j].degree;
                    if self.basis[k].degree != expect {
                        return Err(Error::Schema(format!(
                            "product {}*{} has a term of wrong degree",
                            self.basis[i].symbol, self.basis[j].symbol
                        )));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let d = self.basis[i].degree + self.basis[j].degree + self.basis[k].degree;
                    if d > self.top_degree {
                        continue;
                    }
                    let ei = self.class(&self.basis[i].symbol)?;
                    let ej = self.class(&self.basis[j].symbol)?;
                    let ek = self.class(&self.basis[k].symbol)?;
                    let lhs = self.multiply(&self.multiply(&ei, &ej)?, &ek)?;
                    let rhs = self.multiply(&ei, &self.multiply(&ej, &ek)?)?;
                    if lhs != rhs {
                        return Err(Error::Schema(format!(
                            "associativity fails at {} * {} * {}",
                            self.basis[i].symbol, self.basis[j].symbol, self.basis[k].symbol
                        )));
                    }
                }
            }
        }
        for d in (0..=self.top_degree / 2).map(|k| 2 * k) {
            let rows = self.basis_of_degree(d);
            let cols = self.basis_of_degree(self.top_degree - d);
            if rows.len() != cols.len() {
                return Err(Error::Schema(format!(
                    "duality rank mismatch in degree {d}: {} vs {}",
                    rows.len(),
                    cols.len()
                )));
            }
            if rows.is_empty() {
                continue;
            }
            let mut gram = ExactMatrix::zeros(rows.len(), cols.len());
            for (r, &i) in rows.iter().enumerate() {
                for (c, &j) in cols.iter().enumerate() {
                    let mut p = RingElement::zero();
                    for (k, v) in self.product_of_basis(i, j)? {
                        p.add_term(k, v);
                    }
                    gram[(r, c)] = Scalar::from_int(self.integrate(&p));
                }
            }
            let det = gram.det();
            if !(det == Scalar::one() || det == -Scalar::one()) {
                return Err(Error::Schema(format!(
                    "duality pairing in degree {d} has determinant {det}, not a unit"
                )));
            }
        }
        Ok(())
    }
}

/// Load one of the catalogue rings: P2, P2xP2, Gr26, or OP2-shell.
pub fn load_ring(name: &str) -> Result<GradedRing> {
    let json = match name {
        "P2" => P2_JSON,
        "P2xP2" => P2XP2_JSON,
        "Gr26" => GR26_JSON,
        "OP2-shell" => OP2_SHELL_JSON,
        other => return Err(Error::UnknownRing(other.to_string())),
    };
    let file: RingFile =
        serde_json::from_str(json).map_err(|e| Error::Schema(format!("ring {name}: {e}")))?;
    GradedRing::from_file(file)
}

/// Total Chern class of the hypersurface cut out by `divisor`, restricted
/// Euler characteristic included: c(T_V) = c(T_S)/(1 + [V]) truncated, and
/// chi(V) is the integral of the top component times [V].
#[derive(Clone, Debug)]
pub struct ChernRestriction {
    pub total: RingElement,
    pub chi: i64,
    /// Set when the divisor class is zero; `total` is then c(T_S) itself.
    pub degenerate: bool,
}

pub fn chern_hypersurface(
    ring: &GradedRing,
    tangent_total: &RingElement,
    divisor: &RingElement,
) -> Result<ChernRestriction> {
    if !ring.has_products() {
        return Err(Error::MissingProducts(ring.name().to_string()));
    }
    let unit_part = ring.component(tangent_total, 0);
    if unit_part != ring.unit() {
        return Err(Error::Precondition(
            "total Chern class must have unit degree-0 term to be invertible".into(),
        ));
    }
    if divisor.is_zero() {
        return Ok(ChernRestriction { total: tangent_total.clone(), chi: 0, degenerate: true });
    }
    if ring.degree_of(divisor) != Some(2) {
        return Err(Error::Precondition("divisor class must be homogeneous of degree 2".into()));
    }
    // (1 + V)^{-1} = sum of (-V)^k through the top degree.
    let mut inverse = ring.unit();
    let mut power = ring.unit();
    let mut k = 0;
    loop {
        k += 1;
        if 2 * k as i64 > ring.top_degree() {
            break;
        }
        power = ring.multiply(&power, divisor)?;
        if power.is_zero() {
            break;
        }
        inverse = inverse.plus(&power.scaled(if k % 2 == 0 { 1 } else { -1 }));
    }
    let total = ring.multiply(tangent_total, &inverse)?;
    let top_v = ring.component(&total, ring.top_degree() - 2);
    let chi = ring.integrate(&ring.multiply(&top_v, divisor)?);
    Ok(ChernRestriction { total, chi, degenerate: false })
}

/// Column space of cup product with the divisor class, as a rational
/// subspace of the target-degree coordinate space.
pub fn cup_with_divisor_image(
    ring: &GradedRing,
    divisor: &RingElement,
    source_deg: i64,
) -> Result<Subspace> {
    if !ring.has_products() {
        return Err(Error::MissingProducts(ring.name().to_string()));
    }
    let target_deg = source_deg + 2;
    let source = ring.basis_of_degree(source_deg);
    let target = ring.basis_of_degree(target_deg);
    if divisor.is_zero() {
        return Ok(Subspace::zero(target.len()));
    }
    if ring.degree_of(divisor) != Some(2) {
        return Err(Error::Precondition("divisor class must be homogeneous of degree 2".into()));
    }
    let mut rows = Vec::new();
    for &i in &source {
        let b = ring.class(&ring.basis()[i].symbol)?;
        let product = ring.multiply(&b, divisor)?;
        let row: Vec<Scalar> = target
            .iter()
            .map(|&t| Scalar::from_int(product.coeffs.get(&t).copied().unwrap_or(0)))
            .collect();
        rows.push(row);
    }
    Ok(Subspace::from_vectors(target.len(), rows))
}

/// Middle cohomology data of an even-dimensional quadric fiber: two
/// generators in the middle, with the canonical class power landing on
/// their sum.
#[derive(Clone, Debug)]
pub struct FiberMiddleData {
    pub fiber_dim: i64,
    pub lambda1: String,
    pub lambda2: String,
}

impl FiberMiddleData {
    pub fn quadric(fiber_dim: i64) -> Result<FiberMiddleData> {
        if fiber_dim <= 0 || fiber_dim % 2 != 0 {
            return Err(Error::Precondition(
                "middle fiber data applies to even-dimensional quadrics".into(),
            ));
        }
        Ok(FiberMiddleData {
            fiber_dim,
            lambda1: "l1".to_string(),
            lambda2: "l2".to_string(),
        })
    }

    /// The only relation imposed in the middle: eta^(d/4) spans l1 + l2.
    pub fn relation(&self) -> String {
        format!("eta^{} = {} + {}", self.fiber_dim / 2, self.lambda1, self.lambda2)
    }
}

#[derive(Clone, Debug)]
pub struct CokerRho {
    pub rank: usize,
    pub representative: Option<String>,
}

/// Rank of the quotient of H^d(S) ⊗ <l1, l2> by the classes supported on
/// the divisor image tensored with each generator together with all
/// sigma ⊗ (l1 + l2).
pub fn coker_rho_rank(
    ring: &GradedRing,
    divisor: &RingElement,
    fiber: &FiberMiddleData,
) -> Result<CokerRho> {
    if !ring.has_products() {
        return Err(Error::MissingProducts(format!(
            "{}; middle-degree products are recorded by citation only",
            ring.name()
        )));
    }
    let d = ring.top_degree() / 2;
    let target = ring.basis_of_degree(d);
    let nd = target.len();
    let image = cup_with_divisor_image(ring, divisor, d - 2)?;
    // Coordinates on H^d ⊗ l1 直 H^d ⊗ l2: first nd slots for l1.
    let mut relations: Vec<Vec<Scalar>> = Vec::new();
    for r in 0..image.dim() {
        let row = image.basis().row_vec(r);
        let mut with_l1 = row.clone();
        with_l1.extend(vec![Scalar::zero(); nd]);
        relations.push(with_l1);
        let mut with_l2 = vec![Scalar::zero(); nd];
        with_l2.extend(row);
        relations.push(with_l2);
    }
    for k in 0..nd {
        let mut diag = vec![Scalar::zero(); 2 * nd];
        diag[k] = Scalar::one();
        diag[nd + k] = Scalar::one();
        relations.push(diag);
    }
    let span = Subspace::from_vectors(2 * nd, relations);
    let rank = 2 * nd - span.dim();
    let representative = if rank == 0 {
        None
    } else {
        target
            .iter()
            .enumerate()
            .find(|(k, _)| {
                let mut v = vec![Scalar::zero(); 2 * nd];
                v[*k] = Scalar::one();
                !span.contains_vector(&v)
            })
            .map(|(_, &i)| format!("{} (x) {}", ring.basis()[i].symbol, fiber.lambda1))
    };
    Ok(CokerRho { rank, representative })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schubert;

    #[test]
    fn all_catalogue_rings_load_and_audit() {
        for name in ["P2", "P2xP2", "Gr26", "OP2-shell"] {
            let ring = load_ring(name).unwrap();
            assert_eq!(ring.name(), name);
        }
        assert!(matches!(load_ring("nope"), Err(Error::UnknownRing(_))));
    }

    #[test]
    fn p2xp2_degree_four_has_rank_three() {
        let ring = load_ring("P2xP2").unwrap();
        assert_eq!(ring.basis_of_degree(4).len(), 3);
    }

    #[test]
    fn op2_shell_betti_and_rejection() {
        let ring = load_ring("OP2-shell").unwrap();
        let b = ring.betti();
        assert_eq!(b[14], 2);
        assert_eq!(b[16], 3);
        assert_eq!(b.iter().sum::<usize>(), 27);
        let e = ring.class("x14_1").unwrap();
        assert!(matches!(ring.multiply(&e, &e), Err(Error::MissingProducts(_))));
    }

    #[test]
    fn unit_multiplication_and_point_normalization() {
        let ring = load_ring("P2xP2").unwrap();
        let x = ring.element(&[("H1*H2", 3), ("H1^2", -1)]).unwrap();
        assert_eq!(ring.multiply(&ring.unit(), &x).unwrap(), x);
        let h1sq = ring.class("H1^2").unwrap();
        let h2sq = ring.class("H2^2").unwrap();
        let point = ring.multiply(&h1sq, &h2sq).unwrap();
        assert_eq!(ring.integrate(&point), 1);
    }

    #[test]
    fn gr26_pieri_lines_match_stored_constants() {
        let ring = load_ring("Gr26").unwrap();
        let s1 = ring.class("s1").unwrap();
        let s3 = ring.class("s3").unwrap();
        let s21 = ring.class("s2,1").unwrap();
        assert_eq!(
            ring.multiply(&s3, &s1).unwrap(),
            ring.element(&[("s4", 1), ("s3,1", 1)]).unwrap()
        );
        assert_eq!(
            ring.multiply(&s21, &s1).unwrap(),
            ring.element(&[("s3,1", 1), ("s2,2", 1)]).unwrap()
        );
        assert_eq!(
            ring.multiply(&s1, &s1).unwrap(),
            ring.element(&[("s2", 1), ("s1,1", 1)]).unwrap()
        );
    }

    #[test]
    fn gr26_table_matches_pieri_generator() {
        let ring = load_ring("Gr26").unwrap();
        for ((x, y), expected) in schubert::gr26_multiplication_table() {
            let a = ring.class(&schubert::symbol(x)).unwrap();
            let b = ring.class(&schubert::symbol(y)).unwrap();
            let product = ring.multiply(&a, &b).unwrap();
            let mut want = RingElement::zero();
            for (part, coeff) in expected {
                let idx = ring.class(&schubert::symbol(part)).unwrap();
                let (&i, _) = idx.coeffs.iter().next().unwrap();
                want.add_term(i, coeff);
            }
            assert_eq!(product, want, "at {x:?} * {y:?}");
        }
    }

    #[test]
    fn segre_chern_numbers() {
        let ring = load_ring("P2xP2").unwrap();
        // c(T) = (1+H1)^3 (1+H2)^3, [V] = 3(H1+H2).
        let c_tangent = ring
            .element(&[
                ("1", 1),
                ("H1", 3),
                ("H2", 3),
                ("H1^2", 3),
                ("H1*H2", 9),
                ("H2^2", 3),
                ("H1^2*H2", 9),
                ("H1*H2^2", 9),
                ("H1^2*H2^2", 9),
            ])
            .unwrap();
        let divisor = ring.element(&[("H1", 3), ("H2", 3)]).unwrap();
        let res = chern_hypersurface(&ring, &c_tangent, &divisor).unwrap();
        assert!(!res.degenerate);
        assert_eq!(res.chi, -162);
        let c2 = ring.component(&res.total, 4);
        assert_eq!(c2, ring.element(&[("H1*H2", 9), ("H1^2", 3), ("H2^2", 3)]).unwrap());
        // Displayed closing identity: c3 = 9(H1^2 H2 + H1 H2^2) - 3 c2 (H1+H2).
        let c3 = ring.component(&res.total, 6);
        let h1_plus_h2 = ring.element(&[("H1", 1), ("H2", 1)]).unwrap();
        let correction = ring.multiply(&c2, &h1_plus_h2).unwrap().scaled(-3);
        let displayed = ring
            .element(&[("H1^2*H2", 9), ("H1*H2^2", 9)])
            .unwrap()
            .plus(&correction);
        assert_eq!(c3, displayed);
    }

    #[test]
    fn plane_cubic_has_zero_euler_characteristic() {
        let ring = load_ring("P2").unwrap();
        let c_tangent = ring.element(&[("1", 1), ("H", 3), ("H^2", 3)]).unwrap();
        let divisor = ring.element(&[("H", 3)]).unwrap();
        let res = chern_hypersurface(&ring, &c_tangent, &divisor).unwrap();
        assert_eq!(res.chi, 0);
    }

    #[test]
    fn zero_divisor_is_degenerate() {
        let ring = load_ring("P2").unwrap();
        let c_tangent = ring.element(&[("1", 1), ("H", 3), ("H^2", 3)]).unwrap();
        let res = chern_hypersurface(&ring, &c_tangent, &RingElement::zero()).unwrap();
        assert!(res.degenerate);
        assert_eq!(res.total, c_tangent);
    }

    #[test]
    fn cup_image_on_segre_and_grassmannian() {
        let ring = load_ring("P2xP2").unwrap();
        let divisor = ring.element(&[("H1", 3), ("H2", 3)]).unwrap();
        let img = cup_with_divisor_image(&ring, &divisor, 2).unwrap();
        assert_eq!(img.dim(), 2);
        // Spanned by H1(H1+H2) and H2(H1+H2) in coordinates (H1^2, H1*H2, H2^2).
        let expected = Subspace::from_vectors(
            3,
            vec![
                vec![Scalar::from_int(1), Scalar::from_int(1), Scalar::from_int(0)],
                vec![Scalar::from_int(0), Scalar::from_int(1), Scalar::from_int(1)],
            ],
        );
        assert_eq!(img, expected);

        let gr = load_ring("Gr26").unwrap();
        let divisor = gr.element(&[("s1", 3)]).unwrap();
        let img = cup_with_divisor_image(&gr, &divisor, 6).unwrap();
        assert_eq!(img.dim(), 2);
        // Spanned by s4+s3,1 and s3,1+s2,2 in coordinates (s4, s3,1, s2,2).
        let expected = Subspace::from_vectors(
            3,
            vec![
                vec![Scalar::from_int(1), Scalar::from_int(1), Scalar::from_int(0)],
                vec![Scalar::from_int(0), Scalar::from_int(1), Scalar::from_int(1)],
            ],
        );
        assert_eq!(img, expected);

        let zero = cup_with_divisor_image(&ring, &RingElement::zero(), 2).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn cokernel_rank_one_for_catalogue_rings() {
        for (name, div) in [("P2xP2", vec![("H1", 3), ("H2", 3)]), ("Gr26", vec![("s1", 3)])] {
            let ring = load_ring(name).unwrap();
            let divisor = ring.element(&div).unwrap();
            let fiber = FiberMiddleData::quadric(if name == "P2xP2" { 2 } else { 4 }).unwrap();
            let coker = coker_rho_rank(&ring, &divisor, &fiber).unwrap();
            assert_eq!(coker.rank, 1, "ring {name}");
            assert!(coker.representative.is_some());
        }
    }

    #[test]
    fn cokernel_scale_invariance() {
        let ring = load_ring("Gr26").unwrap();
        let fiber = FiberMiddleData::quadric(4).unwrap();
        for k in [1, 2, 7] {
            let divisor = ring.element(&[("s1", 3 * k)]).unwrap();
            assert_eq!(coker_rho_rank(&ring, &divisor, &fiber).unwrap().rank, 1);
        }
    }

    #[test]
    fn cokernel_vanishes_when_cup_is_surjective() {
        // Counter-model: on P^2 the cup product H^0 -> H^2 with [V] = H is
        // onto, so the diagonal relations exhaust the doubled middle.
        let ring = load_ring("P2").unwrap();
        let divisor = ring.element(&[("H", 1)]).unwrap();
        let fiber = FiberMiddleData::quadric(2).unwrap();
        let coker = coker_rho_rank(&ring, &divisor, &fiber).unwrap();
        assert_eq!(coker.rank, 0);
        assert!(coker.representative.is_none());
    }

    #[test]
    fn shell_cokernel_is_rejected() {
        let ring = load_ring("OP2-shell").unwrap();
        let fiber = FiberMiddleData::quadric(8).unwrap();
        let err = coker_rho_rank(&ring, &RingElement::zero(), &fiber).unwrap_err();
        assert!(matches!(err, Error::MissingProducts(_)));
    }
}
