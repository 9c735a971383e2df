//! The Severi catalogue and the arithmetic attached to degenerations onto
//! the secant cubic: middle Hodge numbers of the smooth cubic, the graded
//! shape of the limit mixed structure, the cross-check through Chern
//! classes on the Segre fourfold, and the Luna-slice dimension identities.
//!
//! Every number stored in the catalogue file is recomputed from first
//! principles at load time (binomials, the Weyl dimension formula, the ring
//! catalogue); a mismatch refuses to load.

use crate::error::{Error, Result};
use crate::hodge::HodgeNumbers;
use crate::report::Verdict;
use crate::rings::{chern_hypersurface, load_ring, GradedRing};
use crate::weyl::{binomial, rep_dimension, GroupId, WeightSpec};
use num::{BigInt, ToPrimitive};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::str::FromStr;

pub const SEVERI_JSON: &str = include_str!("../data/severi.json");

/// Environment variable overriding the catalogue path.
pub const CATALOGUE_ENV: &str = "HODGE_LIMITS_CATALOGUE";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SectionModule {
    pub group: String,
    pub weight: String,
}

/// Catalogue record for one Severi variety.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeveriDatum {
    pub name: String,
    /// dim S.
    pub d: i64,
    /// Middle degree of the ambient cubic: m = (3d + 2) / 2.
    pub m: i64,
    pub ambient_proj_dim: i64,
    pub dim_g: i64,
    pub dim_h: i64,
    /// dim Sym^3 W = C(m+4, 3).
    pub rep_dim_sym3: i64,
    pub sections_dim: i64,
    pub ring: String,
    pub section_module: SectionModule,
    /// Golden geometric Hodge vector of V, listed from h^{d-1,0} down to
    /// the middle; absent for the excluded two-dimensional case.
    pub v_hodge_expected: Option<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeveriCatalogue {
    pub schema_version: u32,
    pub entries: Vec<SeveriDatum>,
}

impl SeveriCatalogue {
    pub fn get(&self, name: &str) -> Result<&SeveriDatum> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| Error::CatalogueInvalid {
                entry: name.to_string(),
                reason: "no such catalogue entry".into(),
            })
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.name.as_str()).collect()
    }
}

fn big_to_i64(b: &BigInt) -> Result<i64> {
    b.to_i64().ok_or_else(|| Error::Defect("count does not fit in 64 bits".into()))
}

fn validate_entry(e: &SeveriDatum) -> Result<()> {
    let fail = |reason: String| Error::CatalogueInvalid { entry: e.name.clone(), reason };
    if 3 * e.d != 2 * (e.m - 1) {
        return Err(fail(format!("d = {} does not satisfy d = 2(m-1)/3 for m = {}", e.d, e.m)));
    }
    if e.ambient_proj_dim != e.m + 1 {
        return Err(fail("ambient projective dimension must be m+1".into()));
    }
    if e.dim_g != (e.m + 2) * (e.m + 2) - 1 {
        return Err(fail(format!("dim G must be (m+2)^2 - 1 = {}", (e.m + 2) * (e.m + 2) - 1)));
    }
    let sym3 = big_to_i64(&binomial(e.m + 4, 3))?;
    if e.rep_dim_sym3 != sym3 {
        return Err(fail(format!("dim Sym^3 W must be C(m+4,3) = {sym3}")));
    }
    let group = GroupId::from_str(&e.section_module.group)?;
    let weight = WeightSpec::parse(&e.section_module.weight)?;
    let sections = big_to_i64(&rep_dimension(group, &weight)?)?;
    if e.sections_dim != sections {
        return Err(fail(format!("section space has dimension {sections}, catalogue says {}", e.sections_dim)));
    }
    if (e.rep_dim_sym3 - 1) - (e.dim_g - e.dim_h) != e.sections_dim {
        return Err(fail("Luna-slice dimension identity fails".into()));
    }
    load_ring(&e.ring).map_err(|err| fail(format!("ring {}: {err}", e.ring)))?;
    match (&e.v_hodge_expected, e.d > 2) {
        (Some(stored), true) => {
            let summary = limit_mhs_summary(e)?;
            if stored != &summary.geometric_half {
                return Err(fail(format!(
                    "stored Hodge vector {stored:?} differs from recomputed {:?}",
                    summary.geometric_half
                )));
            }
        }
        (None, true) => return Err(fail("missing golden Hodge vector".into())),
        (Some(_), false) => return Err(fail("two-dimensional case carries no Hodge vector".into())),
        (None, false) => {}
    }
    Ok(())
}

/// Load and self-validate the catalogue, honoring the override variable.
pub fn load_catalogue() -> Result<SeveriCatalogue> {
    let text = match std::env::var(CATALOGUE_ENV) {
        Ok(path) => std::fs::read_to_string(path)?,
        Err(_) => SEVERI_JSON.to_string(),
    };
    let catalogue: SeveriCatalogue =
        serde_json::from_str(&text).map_err(|e| Error::Schema(format!("severi catalogue: {e}")))?;
    for entry in &catalogue.entries {
        validate_entry(entry)?;
    }
    Ok(catalogue)
}

/// Middle Hodge numbers of a smooth cubic hypersurface of odd dimension m:
/// h^{p, m-p} = C(m+2, 2m+1-3p).
pub fn cubic_hodge_numbers(m: i64) -> Result<HodgeNumbers> {
    if m % 2 == 0 || m < 3 {
        return Err(Error::WeightOutOfRange {
            k: m,
            reason: "middle Hodge numbers are tabulated for odd m >= 3".into(),
        });
    }
    let mut h = BTreeMap::new();
    for p in 0..=m {
        let value = big_to_i64(&binomial(m + 2, 2 * m + 1 - 3 * p))?;
        if value > 0 {
            h.insert((p, m - p), value as usize);
        }
    }
    Ok(HodgeNumbers { weight: m, h })
}

/// Shape of the limit mixed structure for one catalogue entry.
#[derive(Clone, Debug)]
pub struct LimitMhsSummary {
    /// Dimensions of W_{m-1} ⊆ W_m ⊆ W_{m+1}.
    pub w_shape: (usize, usize, usize),
    /// Graded Hodge numbers at weights m-1, m, m+1.
    pub graded: Vec<HodgeNumbers>,
    /// The rank-one pieces: Q((1-m)/2) below, Q(-(1+m)/2) above.
    pub tate_below: String,
    pub tate_above: String,
    /// Twist (m-d+1)/2 identifying Gr_m with the geometric middle of V.
    pub twist: i64,
    /// Hodge numbers of V in weight d-1 after the twist.
    pub geometric: HodgeNumbers,
    /// h^{p, d-1-p}(V) for p = d-1 down to d/2.
    pub geometric_half: Vec<i64>,
    /// The comparison of intersection forms carries the sign (-1)^n with
    /// n = d/4 + 1; reported separately from the twist.
    pub polarization_sign: i64,
}

/// The limit arithmetic: start from the cubic's middle Hodge numbers,
/// remove one class at each of p = (m-1)/2 and (m+1)/2 (absorbed by the two
/// Tate pieces), and read the remainder as the middle cohomology of V
/// after a Tate twist.
pub fn limit_mhs_summary(datum: &SeveriDatum) -> Result<LimitMhsSummary> {
    if datum.d <= 2 {
        return Err(Error::Precondition(format!(
            "limit shape applies to dim S > 2; {} has d = {}",
            datum.name, datum.d
        )));
    }
    let m = datum.m;
    let cubic = cubic_hodge_numbers(m)?;
    let mut middle = BTreeMap::new();
    for (&(p, q), &v) in &cubic.h {
        let drop = usize::from(p == (m - 1) / 2 || p == (m + 1) / 2);
        if drop > v {
            return Err(Error::Defect(format!("no class to absorb at p = {p}")));
        }
        if v - drop > 0 {
            middle.insert((p, q), v - drop);
        }
    }
    let mid_total: usize = middle.values().sum();
    if mid_total + 2 != cubic.total() {
        return Err(Error::Defect("limit pieces do not exhaust the cubic's middle cohomology".into()));
    }
    let graded = vec![
        HodgeNumbers {
            weight: m - 1,
            h: BTreeMap::from([(((m - 1) / 2, (m - 1) / 2), 1)]),
        },
        HodgeNumbers { weight: m, h: middle.clone() },
        HodgeNumbers {
            weight: m + 1,
            h: BTreeMap::from([(((m + 1) / 2, (m + 1) / 2), 1)]),
        },
    ];
    let twist = (m - datum.d + 1) / 2;
    let mut geometric = BTreeMap::new();
    for (&(p, q), &v) in &middle {
        geometric.insert((p - twist, q - twist), v);
    }
    let geometric = HodgeNumbers { weight: datum.d - 1, h: geometric };
    let geometric_half: Vec<i64> =
        (datum.d / 2..=datum.d - 1).rev().map(|p| geometric.get(p, datum.d - 1 - p) as i64).collect();
    let n = datum.d / 4 + 1;
    Ok(LimitMhsSummary {
        w_shape: (1, 1 + mid_total, 2 + mid_total),
        graded,
        tate_below: format!("Q({})", (1 - m) / 2),
        tate_above: format!("Q({})", -(1 + m) / 2),
        twist,
        geometric,
        geometric_half,
        polarization_sign: if n % 2 == 0 { 1 } else { -1 },
    })
}

/// The Segre cross-check: the Chern-class pipeline gives chi(V) = -162;
/// with b_0 = b_6 = 1, h^{1,1} = 2 and h^{3,0} = 1 this forces
/// h^{2,1} = 83, which must agree with the limit arithmetic and with
/// C(9,3) - 1.
pub fn segre_cy_crosscheck(catalogue: &SeveriCatalogue) -> Result<Verdict> {
    let mut verdict = Verdict::new();
    let segre = catalogue.get("Segre")?;
    let ring = load_ring(&segre.ring)?;
    let c_tangent = segre_tangent_chern(&ring)?;
    let divisor = ring.element(&[("H1", 3), ("H2", 3)])?;
    let res = chern_hypersurface(&ring, &c_tangent, &divisor)?;
    verdict.record("chi(V) = -162", res.chi == -162, format!("computed {}", res.chi));
    // chi = 2 + 2 h^{1,1} - 2 (1 + h^{2,1}) with h^{1,1} = 2.
    let h11 = 2i64;
    let h21 = (2 + 2 * h11 - 2 - res.chi) / 2;
    verdict.record("h^{2,1} = 83", h21 == 83, format!("computed {h21}"));
    let summary = limit_mhs_summary(segre)?;
    verdict.record(
        "agreement with the limit arithmetic",
        summary.geometric_half == vec![1, h21],
        format!("limit gives {:?}", summary.geometric_half),
    );
    let expected = big_to_i64(&binomial(9, 3))? - 1;
    verdict.record("h^{2,1} = C(9,3) - 1", h21 == expected, format!("{h21} vs {expected}"));
    Ok(verdict)
}

/// Hyperplane class of the catalogue embedding, in the ring's basis: the
/// embedding line bundle restricts to twice the plane class for the
/// Veronese surface, to the sum of the two plane classes on the Segre
/// fourfold, and to the special Schubert class on the Grassmannian.
pub fn hyperplane_class(ring: &GradedRing) -> Result<crate::rings::RingElement> {
    match ring.name() {
        "P2" => ring.element(&[("H", 2)]),
        "P2xP2" => ring.element(&[("H1", 1), ("H2", 1)]),
        "Gr26" => ring.element(&[("s1", 1)]),
        other => Err(Error::MissingProducts(other.to_string())),
    }
}

/// c(T) for the product of two planes: (1 + H1)^3 (1 + H2)^3.
pub fn segre_tangent_chern(ring: &GradedRing) -> Result<crate::rings::RingElement> {
    let one_plus_h1 = ring.element(&[("1", 1), ("H1", 1)])?;
    let one_plus_h2 = ring.element(&[("1", 1), ("H2", 1)])?;
    let a = ring.pow(&one_plus_h1, 3)?;
    let b = ring.pow(&one_plus_h2, 3)?;
    ring.multiply(&a, &b)
}

/// The Luna-slice identity (dim Sym^3 W - 1) - (dim G - dim H) = dim of the
/// cubic-section space, all six constituents recomputed independently.
pub fn luna_slice_check(datum: &SeveriDatum) -> Result<Verdict> {
    let mut verdict = Verdict::new();
    let sym3 = big_to_i64(&binomial(datum.m + 4, 3))?;
    verdict.record(
        "dim Sym^3 W",
        sym3 == datum.rep_dim_sym3,
        format!("C({},3) = {sym3}", datum.m + 4),
    );
    let dim_g = (datum.m + 2) * (datum.m + 2) - 1;
    verdict.record("dim G", dim_g == datum.dim_g, format!("(m+2)^2 - 1 = {dim_g}"));
    let group = GroupId::from_str(&datum.section_module.group)?;
    let weight = WeightSpec::parse(&datum.section_module.weight)?;
    let sections = big_to_i64(&rep_dimension(group, &weight)?)?;
    verdict.record(
        "section space",
        sections == datum.sections_dim,
        format!("Weyl formula gives {sections}"),
    );
    let lhs = (sym3 - 1) - (dim_g - datum.dim_h);
    verdict.record(
        "dimension identity",
        lhs == sections,
        format!("({sym3} - 1) - ({dim_g} - {}) = {lhs} vs {sections}", datum.dim_h),
    );
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_loads_and_self_validates() {
        let cat = load_catalogue().unwrap();
        assert_eq!(cat.names(), vec!["Veronese", "Segre", "Gr26", "OP2"]);
    }

    #[test]
    fn cubic_numbers_m7() {
        let h = cubic_hodge_numbers(7).unwrap();
        assert_eq!(h.get(5, 2), 1);
        assert_eq!(h.get(4, 3), 84);
        assert_eq!(h.get(3, 4), 84);
        assert_eq!(h.get(2, 5), 1);
        assert_eq!(h.get(7, 0), 0);
        assert_eq!(h.get(6, 1), 0);
        assert_eq!(h.total(), 170);
    }

    #[test]
    fn cubic_numbers_m13_and_m25() {
        let h = cubic_hodge_numbers(13).unwrap();
        assert_eq!(h.get(9, 4), 1);
        assert_eq!(h.get(8, 5), 455);
        assert_eq!(h.get(7, 6), 5005);
        let h = cubic_hodge_numbers(25).unwrap();
        assert_eq!(h.get(17, 8), 1);
        assert_eq!(h.get(16, 9), 2925);
        assert_eq!(h.get(15, 10), 296010);
        assert_eq!(h.get(14, 11), 4686825);
        assert_eq!(h.get(13, 12), 17383860);
    }

    #[test]
    fn even_dimension_rejected() {
        assert!(cubic_hodge_numbers(4).is_err());
        assert!(cubic_hodge_numbers(1).is_err());
    }

    #[test]
    fn limit_summaries_match_golden_vectors() {
        let cat = load_catalogue().unwrap();
        let segre = limit_mhs_summary(cat.get("Segre").unwrap()).unwrap();
        assert_eq!(segre.geometric_half, vec![1, 83]);
        assert_eq!(segre.w_shape, (1, 169, 170));
        assert_eq!(segre.tate_below, "Q(-3)");
        assert_eq!(segre.tate_above, "Q(-4)");
        assert_eq!(segre.twist, 2);
        assert_eq!(segre.polarization_sign, 1);

        let gr = limit_mhs_summary(cat.get("Gr26").unwrap()).unwrap();
        assert_eq!(gr.geometric_half, vec![0, 1, 455, 5004]);
        assert_eq!(gr.polarization_sign, -1);

        let op2 = limit_mhs_summary(cat.get("OP2").unwrap()).unwrap();
        assert_eq!(
            op2.geometric_half,
            vec![0, 0, 0, 1, 2925, 296010, 4686825, 17383859]
        );
    }

    #[test]
    fn veronese_is_excluded() {
        let cat = load_catalogue().unwrap();
        assert!(matches!(
            limit_mhs_summary(cat.get("Veronese").unwrap()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn rank_one_tate_pieces() {
        let cat = load_catalogue().unwrap();
        for name in ["Segre", "Gr26", "OP2"] {
            let s = limit_mhs_summary(cat.get(name).unwrap()).unwrap();
            assert_eq!(s.graded[0].total(), 1, "{name}");
            assert_eq!(s.graded[2].total(), 1, "{name}");
            assert!(s.graded[0].h.keys().all(|&(p, q)| p == q));
            assert!(s.graded[2].h.keys().all(|&(p, q)| p == q));
        }
    }

    #[test]
    fn dimension_conservation() {
        let cat = load_catalogue().unwrap();
        for name in ["Segre", "Gr26", "OP2"] {
            let datum = cat.get(name).unwrap();
            let s = limit_mhs_summary(datum).unwrap();
            let cubic = cubic_hodge_numbers(datum.m).unwrap();
            assert_eq!(s.graded[1].total() + 2, cubic.total(), "{name}");
        }
    }

    #[test]
    fn luna_identities() {
        let cat = load_catalogue().unwrap();
        for (name, numbers) in [
            ("Segre", (165, 64, 100)),
            ("Gr26", (680, 189, 490)),
            ("OP2", (3654, 650, 3003)),
        ] {
            let datum = cat.get(name).unwrap();
            let verdict = luna_slice_check(datum).unwrap();
            assert!(verdict.passed(), "{name}: {verdict}");
            let (sym3, orbit, sections) = numbers;
            assert_eq!(datum.rep_dim_sym3, sym3);
            assert_eq!(datum.dim_g - datum.dim_h, orbit);
            assert_eq!(datum.sections_dim, sections);
        }
    }

    #[test]
    fn segre_crosscheck_passes() {
        let cat = load_catalogue().unwrap();
        let verdict = segre_cy_crosscheck(&cat).unwrap();
        assert!(verdict.passed(), "{verdict}");
    }

    #[test]
    fn catalogue_override_with_corrupt_data_fails() {
        let dir = std::env::temp_dir().join("hodge-limits-test-catalogue");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.json");
        let mut cat: SeveriCatalogue = serde_json::from_str(SEVERI_JSON).unwrap();
        cat.entries[1].sections_dim = 99;
        std::fs::write(&path, serde_json::to_string(&cat).unwrap()).unwrap();
        // Validate directly rather than through the env var to keep the
        // test process-parallel safe.
        let text = std::fs::read_to_string(&path).unwrap();
        let parsed: SeveriCatalogue = serde_json::from_str(&text).unwrap();
        let err = validate_entry(&parsed.entries[1]).unwrap_err();
        assert!(matches!(err, Error::CatalogueInvalid { .. }));
    }
}
