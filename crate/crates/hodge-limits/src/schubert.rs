//! Schubert calculus for the Grassmannian of 2-planes in a 6-space.
//! Classes are indexed by partitions (a, b) with 4 >= a >= b >= 0; products
//! are computed from the Pieri rule through the Giambelli determinant. The
//! frozen multiplication table shipped in the ring catalogue is regenerated
//! here and compared entry by entry in the tests.

use std::collections::BTreeMap;

pub const BOX_WIDTH: i64 = 4;

/// Partitions (a, b) with BOX_WIDTH >= a >= b >= 0, ordered by degree then
/// reverse-lexicographically (s4 before s3,1 before s2,2).
pub fn gr26_partitions() -> Vec<(i64, i64)> {
    let mut parts = Vec::new();
    for degree in 0..=2 * BOX_WIDTH {
        for b in 0..=degree / 2 {
            let a = degree - b;
            if a <= BOX_WIDTH && a >= b {
                parts.push((a, b));
            }
        }
    }
    parts
}

pub fn symbol(p: (i64, i64)) -> String {
    match p {
        (0, 0) => "1".to_string(),
        (a, 0) => format!("s{a}"),
        (a, b) => format!("s{a},{b}"),
    }
}

/// Formal non-negative integer combination of Schubert classes.
pub type Combination = BTreeMap<(i64, i64), i64>;

fn add_to(acc: &mut Combination, part: (i64, i64), coeff: i64) {
    if coeff != 0 {
        *acc.entry(part).or_insert(0) += coeff;
        if acc[&part] == 0 {
            acc.remove(&part);
        }
    }
}

/// Pieri step: multiply a single class by the special class of degree c.
/// The result ranges over partitions adding a horizontal strip of size c.
pub fn pieri(part: (i64, i64), c: i64) -> Combination {
    let (a, b) = part;
    let mut out = Combination::new();
    if c < 0 || c > BOX_WIDTH {
        return out;
    }
    if c == 0 {
        add_to(&mut out, part, 1);
        return out;
    }
    for f in b..=a {
        let e = a + b + c - f;
        if e >= a && e <= BOX_WIDTH && e >= f {
            add_to(&mut out, (e, f), 1);
        }
    }
    out
}

fn pieri_on(comb: &Combination, c: i64) -> Combination {
    let mut out = Combination::new();
    for (&part, &coeff) in comb {
        for (res, mult) in pieri(part, c) {
            add_to(&mut out, res, coeff * mult);
        }
    }
    out
}

/// Product of two Schubert classes via Giambelli:
/// s_{(c,d)} = s_c s_d - s_{c+1} s_{d-1}, with special classes outside
/// 0..=BOX_WIDTH read as zero.
pub fn product(x: (i64, i64), y: (i64, i64)) -> Combination {
    let (c, d) = y;
    let mut start = Combination::new();
    add_to(&mut start, x, 1);
    let mut out = pieri_on(&pieri_on(&start, c), d);
    if d >= 1 {
        let correction = pieri_on(&pieri_on(&start, c + 1), d - 1);
        for (part, coeff) in correction {
            add_to(&mut out, part, -coeff);
        }
    }
    out
}

/// The full multiplication table over the 15 basis classes.
pub fn gr26_multiplication_table() -> BTreeMap<((i64, i64), (i64, i64)), Combination> {
    let parts = gr26_partitions();
    let mut table = BTreeMap::new();
    for &x in &parts {
        for &y in &parts {
            if x <= y {
                table.insert((x, y), product(x, y));
            }
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(part: (i64, i64)) -> Combination {
        let mut c = Combination::new();
        c.insert(part, 1);
        c
    }

    #[test]
    fn fifteen_classes() {
        assert_eq!(gr26_partitions().len(), 15);
    }

    #[test]
    fn special_products() {
        // s1*s1 = s2 + s1,1
        let mut expected = one((2, 0));
        expected.insert((1, 1), 1);
        assert_eq!(product((1, 0), (1, 0)), expected);
        // s3*s1 = s4 + s3,1
        let mut expected = one((4, 0));
        expected.insert((3, 1), 1);
        assert_eq!(product((3, 0), (1, 0)), expected);
        // s2,1*s1 = s3,1 + s2,2
        let mut expected = one((3, 1));
        expected.insert((2, 2), 1);
        assert_eq!(product((2, 1), (1, 0)), expected);
    }

    #[test]
    fn giambelli_handles_corners() {
        // s1,1 * s1,1 = s2,2
        assert_eq!(product((1, 1), (1, 1)), one((2, 2)));
        // s4 * s4 = s4,4 (the point class)
        assert_eq!(product((4, 0), (4, 0)), one((4, 4)));
    }

    #[test]
    fn poincare_duality_on_classes() {
        // Complementary partitions pair to the point class, others to zero.
        let parts = gr26_partitions();
        for &(a, b) in &parts {
            for &(c, d) in &parts {
                if a + b + c + d != 2 * BOX_WIDTH {
                    continue;
                }
                let p = product((a, b), (c, d));
                let coeff = p.get(&(BOX_WIDTH, BOX_WIDTH)).copied().unwrap_or(0);
                let dual = (BOX_WIDTH - b, BOX_WIDTH - a);
                assert_eq!(coeff, i64::from((c, d) == dual), "({a},{b}) x ({c},{d})");
            }
        }
    }

    #[test]
    fn products_are_commutative_and_associative() {
        let parts = gr26_partitions();
        for &x in &parts {
            for &y in &parts {
                assert_eq!(product(x, y), product(y, x));
            }
        }
        for &x in &parts {
            for &y in &parts {
                for &z in &parts {
                    if x.0 + x.1 + y.0 + y.1 + z.0 + z.1 > 2 * BOX_WIDTH {
                        continue;
                    }
                    let mut lhs = Combination::new();
                    for (p, c) in product(x, y) {
                        for (r, m) in product(p, z) {
                            *lhs.entry(r).or_insert(0) += c * m;
                        }
                    }
                    let mut rhs = Combination::new();
                    for (p, c) in product(y, z) {
                        for (r, m) in product(x, p) {
                            *rhs.entry(r).or_insert(0) += c * m;
                        }
                    }
                    lhs.retain(|_, v| *v != 0);
                    rhs.retain(|_, v| *v != 0);
                    assert_eq!(lhs, rhs, "associativity at {x:?} {y:?} {z:?}");
                }
            }
        }
    }
}
