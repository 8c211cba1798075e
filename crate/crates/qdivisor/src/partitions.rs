//! Two-distinct-part partitions with both multiplicities coprime to 3,
//! split into classes by whether the multiplicities agree mod 3, and the
//! weight-preserving bijection between the classes that misses exactly the
//! partitions of shape `(2d)^f1 d^f2`.

use crate::rational::{Int, Rat};
use crate::series::QSeries;
use num::Zero;

/// A partition `n1^f1 n2^f2` into exactly two different parts, stored
/// canonically with `n1 < n2`. The maps reorder internally as needed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoPartPartition {
    n1: u64,
    f1: u64,
    n2: u64,
    f2: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionClass {
    /// Both multiplicities coprime to 3 and congruent mod 3.
    P0,
    /// Both multiplicities coprime to 3 and incongruent mod 3.
    P1,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("not in class P1: {0:?}")]
    NotInP1(TwoPartPartition),
    #[error("not in class P0: {0:?}")]
    NotInP0(TwoPartPartition),
}

/// Result of the reverse map: a genuine preimage, or the marker for the
/// partitions `(2d)^f1 d^f2` whose difference of parts collides with the
/// smaller part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InverseOutcome {
    Preimage(TwoPartPartition),
    Exceptional,
}

impl TwoPartPartition {
    pub fn new(n1: u64, f1: u64, n2: u64, f2: u64) -> TwoPartPartition {
        assert!(n1 >= 1 && n2 >= 1 && f1 >= 1 && f2 >= 1, "parts and multiplicities are positive");
        assert_ne!(n1, n2, "the two parts must differ");
        if n1 < n2 {
            TwoPartPartition { n1, f1, n2, f2 }
        } else {
            TwoPartPartition { n1: n2, f1: f2, n2: n1, f2: f1 }
        }
    }

    pub fn n1(&self) -> u64 {
        self.n1
    }

    pub fn f1(&self) -> u64 {
        self.f1
    }

    pub fn n2(&self) -> u64 {
        self.n2
    }

    pub fn f2(&self) -> u64 {
        self.f2
    }

    pub fn weight(&self) -> u64 {
        self.f1 * self.n1 + self.f2 * self.n2
    }

    /// Class membership; `None` when a multiplicity is divisible by 3.
    pub fn class(&self) -> Option<PartitionClass> {
        if self.f1 % 3 == 0 || self.f2 % 3 == 0 {
            None
        } else if self.f1 % 3 == self.f2 % 3 {
            Some(PartitionClass::P0)
        } else {
            Some(PartitionClass::P1)
        }
    }
}

/// All weight-n members of the class, in increasing `(n1, n2, f2)` order.
pub fn enumerate_class(n: u64, class: PartitionClass) -> Vec<TwoPartPartition> {
    assert!(n >= 1);
    let mut out = Vec::new();
    for n1 in 1..=n {
        for n2 in (n1 + 1)..=n {
            let mut f2 = 1;
            while n1 + f2 * n2 <= n {
                let rest = n - f2 * n2;
                if rest % n1 == 0 {
                    let p = TwoPartPartition::new(n1, rest / n1, n2, f2);
                    if p.class() == Some(class) {
                        out.push(p);
                    }
                }
                f2 += 1;
            }
        }
    }
    out
}

/// `n1^f1 n2^f2 -> (n1+n2)^f1 n2^(f2-f1)`, taken with `f2 > f1`; sends a
/// P1 partition to a P0 partition of the same weight.
pub fn forward_map(p: &TwoPartPartition) -> Result<TwoPartPartition, PartitionError> {
    if p.class() != Some(PartitionClass::P1) {
        return Err(PartitionError::NotInP1(*p));
    }
    // Incongruent multiplicities are never equal, so one order is strict.
    let ((a, fa), (b, fb)) = if p.f1 < p.f2 {
        ((p.n1, p.f1), (p.n2, p.f2))
    } else {
        ((p.n2, p.f2), (p.n1, p.f1))
    };
    Ok(TwoPartPartition::new(a + b, fa, b, fb - fa))
}

/// `n1^f1 n2^f2 -> (n1-n2)^f1 n2^(f1+f2)`, taken with `n1 > n2`; recovers
/// the P1 preimage of a P0 partition except when `n1 = 2 n2`, where the two
/// image parts would coincide.
pub fn inverse_map(p: &TwoPartPartition) -> Result<InverseOutcome, PartitionError> {
    if p.class() != Some(PartitionClass::P0) {
        return Err(PartitionError::NotInP0(*p));
    }
    let ((big, fbig), (small, fsmall)) = ((p.n2, p.f2), (p.n1, p.f1));
    if big == 2 * small {
        return Ok(InverseOutcome::Exceptional);
    }
    Ok(InverseOutcome::Preimage(TwoPartPartition::new(
        big - small,
        fbig,
        small,
        fbig + fsmall,
    )))
}

/// Number of weight-n P0 partitions of shape `(2d)^f1 d^f2`, counted by
/// enumeration. Nonzero only when 3 divides n, where it equals sigma(n/3).
pub fn exceptional_count(n: u64) -> u64 {
    assert!(n >= 1);
    enumerate_class(n, PartitionClass::P0)
        .iter()
        .filter(|p| p.n2 == 2 * p.n1)
        .count() as u64
}

/// `sum_n (P0(n) - P1(n)) q^n` as an exact series, for the analytic
/// cross-check against `sum_n q^(3n)/(1-q^(3n))^2`.
pub fn class_difference_series(order: usize) -> QSeries {
    let mut coeffs = vec![Rat::zero(); order + 1];
    for n in 1..=order {
        let p0 = enumerate_class(n as u64, PartitionClass::P0).len() as i64;
        let p1 = enumerate_class(n as u64, PartitionClass::P1).len() as i64;
        coeffs[n] = Rat::from_integer(Int::from(p0 - p1));
    }
    QSeries::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::etatheta::{lambert_s, sigma};
    use std::collections::BTreeSet;

    fn p(n1: u64, f1: u64, n2: u64, f2: u64) -> TwoPartPartition {
        TwoPartPartition::new(n1, f1, n2, f2)
    }

    #[test]
    fn canonical_order_and_weight() {
        assert_eq!(p(7, 1, 1, 2), p(1, 2, 7, 1));
        assert_eq!(p(7, 1, 1, 2).weight(), 9);
        assert_eq!(p(2, 2, 5, 1).class(), Some(PartitionClass::P1));
        assert_eq!(p(3, 1, 6, 1).class(), Some(PartitionClass::P0));
        assert_eq!(p(1, 3, 2, 1).class(), None);
    }

    #[test]
    fn small_class_counts() {
        // Weight 3: only 1^1 2^1, which sits in P0.
        assert_eq!(enumerate_class(3, PartitionClass::P0), vec![p(1, 1, 2, 1)]);
        assert!(enumerate_class(3, PartitionClass::P1).is_empty());
        // Weights coprime to 3 balance exactly.
        for n in [7u64, 8, 10, 11, 13] {
            assert_eq!(
                enumerate_class(n, PartitionClass::P0).len(),
                enumerate_class(n, PartitionClass::P1).len(),
                "n={n}"
            );
        }
    }

    #[test]
    fn forward_map_examples() {
        // 1^1 2^2 -> 3^1 2^1.
        assert_eq!(forward_map(&p(1, 1, 2, 2)).unwrap(), p(2, 1, 3, 1));
        assert_eq!(
            forward_map(&p(1, 3, 2, 1)),
            Err(PartitionError::NotInP1(p(1, 3, 2, 1)))
        );
        assert_eq!(
            forward_map(&p(3, 1, 6, 1)),
            Err(PartitionError::NotInP1(p(3, 1, 6, 1)))
        );
    }

    #[test]
    fn inverse_map_examples() {
        // 8^1 1^1 -> 7^1 1^2.
        assert_eq!(
            inverse_map(&p(1, 1, 8, 1)).unwrap(),
            InverseOutcome::Preimage(p(1, 2, 7, 1))
        );
        assert_eq!(inverse_map(&p(3, 1, 6, 1)).unwrap(), InverseOutcome::Exceptional);
        assert_eq!(
            inverse_map(&p(1, 1, 2, 2)),
            Err(PartitionError::NotInP0(p(1, 1, 2, 2)))
        );
    }

    #[test]
    fn worked_example_weight_nine() {
        let p1: BTreeSet<_> = enumerate_class(9, PartitionClass::P1).into_iter().collect();
        let expected_p1: BTreeSet<_> =
            [p(1, 2, 7, 1), p(2, 2, 5, 1), p(1, 1, 4, 2), p(1, 5, 4, 1)].into_iter().collect();
        assert_eq!(p1, expected_p1);

        let pairs = [
            (p(1, 2, 7, 1), p(1, 1, 8, 1)),
            (p(2, 2, 5, 1), p(2, 1, 7, 1)),
            (p(1, 1, 4, 2), p(4, 1, 5, 1)),
            (p(1, 5, 4, 1), p(1, 4, 5, 1)),
        ];
        for (from, to) in &pairs {
            assert_eq!(forward_map(from).unwrap(), *to);
        }

        let p0: BTreeSet<_> = enumerate_class(9, PartitionClass::P0).into_iter().collect();
        let images: BTreeSet<_> = pairs.iter().map(|(_, to)| *to).collect();
        let unmatched: BTreeSet<_> =
            [p(3, 1, 6, 1), p(1, 1, 2, 4), p(1, 5, 2, 2), p(1, 7, 2, 1)].into_iter().collect();
        let mut union = images.clone();
        union.extend(unmatched.iter().copied());
        assert_eq!(p0, union);
        assert!(images.is_disjoint(&unmatched));
        assert_eq!(exceptional_count(9), 4);
        for q in &unmatched {
            assert_eq!(inverse_map(q).unwrap(), InverseOutcome::Exceptional);
        }
    }

    #[test]
    fn class_difference_is_divisor_sum_on_multiples_of_three() {
        for n in 1..=120u64 {
            let p0 = enumerate_class(n, PartitionClass::P0).len() as i64;
            let p1 = enumerate_class(n, PartitionClass::P1).len() as i64;
            let expect = if n % 3 == 0 {
                i64::try_from(sigma((n / 3) as usize)).unwrap()
            } else {
                0
            };
            assert_eq!(p0 - p1, expect, "n={n}");
            assert_eq!(exceptional_count(n), expect.max(0) as u64, "n={n}");
        }
    }

    #[test]
    fn bijection_structure() {
        for n in 1..=60u64 {
            let p1 = enumerate_class(n, PartitionClass::P1);
            let p0: BTreeSet<_> = enumerate_class(n, PartitionClass::P0).into_iter().collect();
            let mut images = BTreeSet::new();
            for q in &p1 {
                let img = forward_map(q).unwrap();
                assert_eq!(img.weight(), n, "weight preserved at n={n}");
                assert_eq!(img.class(), Some(PartitionClass::P0));
                assert!(images.insert(img), "forward map not injective at n={n}");
                assert_eq!(inverse_map(&img).unwrap(), InverseOutcome::Preimage(*q));
            }
            assert!(images.is_subset(&p0));
            // The complement of the image is exactly the exceptional set.
            for q in p0.difference(&images) {
                assert_eq!(inverse_map(q).unwrap(), InverseOutcome::Exceptional, "n={n} {q:?}");
            }
        }
    }

    #[test]
    fn generating_function_cross_check() {
        let lhs = class_difference_series(120);
        let rhs = lambert_s(1, 120).substitute_power(3).unwrap();
        assert_eq!(lhs, rhs);
    }
}
