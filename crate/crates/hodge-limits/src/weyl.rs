//! Weyl dimension formula over exact rationals for the simply-laced root
//! systems needed by the catalogue: A2, A2 x A2, A5 and E6. Root systems
//! are generated from their Cartan matrices alone; positive roots are built
//! height by height through root strings.

use crate::error::{Error, Result};
use num::{BigInt, BigRational, One, Zero};
use std::collections::BTreeSet;
use std::str::FromStr;

#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
}

fn a_n_cartan(n: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; n]; n];
    for i in 0..n {
        c[i][i] = 2;
        if i + 1 < n {
            c[i][i + 1] = -1;
            c[i + 1][i] = -1;
        }
    }
    c
}

fn e6_cartan() -> Vec<Vec<i64>> {
    // Nodes 1..6 with the chain 1-3-4-5-6 and node 2 attached to node 4.
    let edges = [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)];
    let mut c = vec![vec![0i64; 6]; 6];
    for i in 0..6 {
        c[i][i] = 2;
    }
    for &(a, b) in &edges {
        c[a - 1][b - 1] = -1;
        c[b - 1][a - 1] = -1;
    }
    c
}

impl RootSystem {
    pub fn from_cartan(cartan: Vec<Vec<i64>>) -> RootSystem {
        let rank = cartan.len();
        let mut roots: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut frontier: Vec<Vec<i64>> = Vec::new();
        for i in 0..rank {
            let mut alpha = vec![0i64; rank];
            alpha[i] = 1;
            roots.insert(alpha.clone());
            frontier.push(alpha);
        }
        // <beta, alpha_i^vee> = sum_j beta_j C[j][i]; beta + alpha_i is a
        // root exactly when the down-string length exceeds that pairing.
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for beta in &frontier {
                for i in 0..rank {
                    let pairing: i64 = (0..rank).map(|j| beta[j] * cartan[j][i]).sum();
                    let mut down = 0i64;
                    let mut probe = beta.clone();
                    loop {
                        probe[i] -= 1;
                        if probe.iter().all(|&x| x == 0) || roots.contains(&probe) {
                            down += 1;
                            if probe.iter().all(|&x| x == 0) {
                                break;
                            }
                        } else {
                            break;
                        }
                    }
                    if down - pairing >= 1 {
                        let mut gamma = beta.clone();
                        gamma[i] += 1;
                        if roots.insert(gamma.clone()) {
                            next.push(gamma);
                        }
                    }
                }
            }
            frontier = next;
        }
        let mut positive_roots: Vec<Vec<i64>> = roots.into_iter().collect();
        positive_roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
        RootSystem { cartan, positive_roots }
    }

    pub fn a(n: usize) -> RootSystem {
        RootSystem::from_cartan(a_n_cartan(n))
    }

    pub fn e6() -> RootSystem {
        RootSystem::from_cartan(e6_cartan())
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// dim V(lambda) = prod over positive roots of <lambda+rho, alpha> / <rho, alpha>.
    /// Simply laced, so both pairings reduce to integer sums over the
    /// simple-root coordinates of alpha.
    pub fn weyl_dimension(&self, lambda: &[i64]) -> Result<BigInt> {
        if lambda.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "weight has {} coordinates, rank is {}",
                lambda.len(),
                self.rank()
            )));
        }
        if let Some(idx) = lambda.iter().position(|&c| c < 0) {
            return Err(Error::NonDominantWeight { index: idx + 1 });
        }
        let mut dim = BigRational::one();
        for alpha in &self.positive_roots {
            let numer: i64 = alpha.iter().zip(lambda).map(|(&c, &l)| c * (l + 1)).sum();
            let denom: i64 = alpha.iter().sum();
            dim *= BigRational::new(BigInt::from(numer), BigInt::from(denom));
        }
        if !dim.denom().is_one() {
            return Err(Error::Defect(format!("dimension formula returned non-integer {dim}")));
        }
        Ok(dim.numer().clone())
    }
}

/// The groups appearing in the catalogue's section-space computations.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroupId {
    A2,
    A2xA2,
    A5,
    E6,
}

impl FromStr for GroupId {
    type Err = Error;
    fn from_str(s: &str) -> Result<GroupId> {
        match s {
            "A2" => Ok(GroupId::A2),
            "A2xA2" => Ok(GroupId::A2xA2),
            "A5" => Ok(GroupId::A5),
            "E6" => Ok(GroupId::E6),
            other => Err(Error::UnknownRootSystem(other.to_string())),
        }
    }
}

/// Dominant weight given per simple factor, e.g. "3w2" or "3w1,3w1".
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightSpec {
    pub factors: Vec<Vec<(usize, i64)>>,
}

impl WeightSpec {
    /// Parse "3w1+w2" style terms, comma-separated per factor.
    pub fn parse(s: &str) -> Result<WeightSpec> {
        let mut factors = Vec::new();
        for chunk in s.split(',') {
            let chunk = chunk.trim();
            if chunk.is_empty() || chunk == "0" {
                factors.push(Vec::new());
                continue;
            }
            let mut terms = Vec::new();
            for term in chunk.split('+') {
                let term = term.trim();
                let (coeff, rest) = match term.find('w') {
                    Some(0) => (1i64, &term[1..]),
                    Some(pos) => {
                        let c = term[..pos]
                            .parse::<i64>()
                            .map_err(|_| Error::Parse(format!("bad weight term {term:?}")))?;
                        (c, &term[pos + 1..])
                    }
                    None => return Err(Error::Parse(format!("bad weight term {term:?}"))),
                };
                let idx = rest
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad weight index in {term:?}")))?;
                if idx == 0 {
                    return Err(Error::Parse("fundamental weights are numbered from 1".into()));
                }
                terms.push((idx, coeff));
            }
            factors.push(terms);
        }
        Ok(WeightSpec { factors })
    }

    fn coordinates(&self, factor: usize, rank: usize) -> Result<Vec<i64>> {
        let mut coords = vec![0i64; rank];
        for &(idx, coeff) in self.factors.get(factor).unwrap_or(&Vec::new()) {
            if idx > rank {
                return Err(Error::Parse(format!("weight index w{idx} exceeds rank {rank}")));
            }
            coords[idx - 1] += coeff;
        }
        Ok(coords)
    }
}

/// Dimension of the irreducible representation with the given dominant
/// highest weight, via the Weyl dimension formula.
pub fn rep_dimension(group: GroupId, weight: &WeightSpec) -> Result<BigInt> {
    let factor_ranks: Vec<usize> = match group {
        GroupId::A2 => vec![2],
        GroupId::A2xA2 => vec![2, 2],
        GroupId::A5 => vec![5],
        GroupId::E6 => vec![6],
    };
    if weight.factors.len() != factor_ranks.len() {
        return Err(Error::Parse(format!(
            "expected {} comma-separated weight factors, got {}",
            factor_ranks.len(),
            weight.factors.len()
        )));
    }
    let mut dim = BigInt::one();
    for (k, &rank) in factor_ranks.iter().enumerate() {
        let rs = match group {
            GroupId::E6 => RootSystem::e6(),
            _ => RootSystem::a(rank),
        };
        let coords = weight.coordinates(k, rank)?;
        dim *= rs.weyl_dimension(&coords)?;
    }
    Ok(dim)
}

/// Binomial coefficient with C(n, k) = 0 outside 0 <= k <= n.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n || n < 0 {
        return BigInt::zero();
    }
    let mut out = BigInt::one();
    for j in 0..k {
        out = out * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_root_counts() {
        assert_eq!(RootSystem::a(2).positive_roots().len(), 3);
        assert_eq!(RootSystem::a(5).positive_roots().len(), 15);
        assert_eq!(RootSystem::e6().positive_roots().len(), 36);
    }

    #[test]
    fn cubics_on_the_plane() {
        let rs = RootSystem::a(2);
        assert_eq!(rs.weyl_dimension(&[3, 0]).unwrap(), BigInt::from(10));
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(rs.weyl_dimension(&[6, 0]).unwrap(), BigInt::from(28));
    }

    #[test]
    fn grassmannian_cubic_sections() {
        let dim = rep_dimension(GroupId::A5, &WeightSpec::parse("3w2").unwrap()).unwrap();
        assert_eq!(dim, BigInt::from(490));
    }

    #[test]
    fn segre_cubic_sections() {
        let dim = rep_dimension(GroupId::A2xA2, &WeightSpec::parse("3w1,3w1").unwrap()).unwrap();
        assert_eq!(dim, BigInt::from(100));
    }

    #[test]
    fn e6_minuscule_and_cubic_sections() {
        let rs = RootSystem::e6();
        assert_eq!(rs.weyl_dimension(&[1, 0, 0, 0, 0, 0]).unwrap(), BigInt::from(27));
        assert_eq!(rs.weyl_dimension(&[0, 0, 0, 0, 0, 1]).unwrap(), BigInt::from(27));
        assert_eq!(rs.weyl_dimension(&[0, 1, 0, 0, 0, 0]).unwrap(), BigInt::from(78));
        let dim = rep_dimension(GroupId::E6, &WeightSpec::parse("3w1").unwrap()).unwrap();
        assert_eq!(dim, BigInt::from(3003));
    }

    #[test]
    fn non_dominant_weight_rejected() {
        let rs = RootSystem::a(2);
        assert!(matches!(
            rs.weyl_dimension(&[-1, 0]),
            Err(Error::NonDominantWeight { index: 1 })
        ));
    }

    #[test]
    fn weight_spec_parsing() {
        assert_eq!(
            WeightSpec::parse("3w2").unwrap().factors,
            vec![vec![(2usize, 3i64)]]
        );
        assert_eq!(
            WeightSpec::parse("w1+2w3").unwrap().factors,
            vec![vec![(1, 1), (3, 2)]]
        );
        assert_eq!(WeightSpec::parse("3w1,3w1").unwrap().factors.len(), 2);
        assert!(WeightSpec::parse("3x1").is_err());
    }

    #[test]
    fn binomial_edge_cases() {
        assert_eq!(binomial(9, 3), BigInt::from(84));
        assert_eq!(binomial(9, -1), BigInt::zero());
        assert_eq!(binomial(3, 9), BigInt::zero());
        assert_eq!(binomial(27, 12), BigInt::from(17383860i64));
    }
}
