//! Exact rational scalars and small combinatorial helpers.
//!
//! Every coefficient in this crate is a [`Rat`] (`num::BigRational`); nothing
//! is ever rounded. Binomials follow the convention `binomial(p, r) = 0`
//! whenever `r < 0` or `r > p`; all sums in this crate have natural bounds,
//! so no generalized binomials are needed.

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// The fraction n/d. Panics if d == 0.
pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// Binomial coefficient with `binomial(p, r) = 0` for `r < 0` or `r > p >= 0`.
/// `p` must be non-negative.
pub fn binomial(p: i64, r: i64) -> Int {
    assert!(p >= 0, "binomial: negative upper index {p}");
    if r < 0 || r > p {
        return Int::zero();
    }
    let r = r.min(p - r);
    let mut acc = Int::one();
    for i in 0..r {
        acc = acc * Int::from(p - i) / Int::from(i + 1);
    }
    acc
}

/// n! as a big integer.
pub fn factorial(n: i64) -> Int {
    assert!(n >= 0, "factorial: negative argument {n}");
    let mut acc = Int::one();
    for i in 2..=n {
        acc *= Int::from(i);
    }
    acc
}

/// b^e for a small integer base and non-negative exponent.
pub fn int_pow(b: i64, e: u32) -> Int {
    Int::from(b).pow(e)
}

/// (-1)^e as a rational sign.
pub fn sign(e: i64) -> Rat {
    if e.rem_euclid(2) == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

/// Render a rational as `p` or `p/q` (q > 1), the wire format used by every
/// JSON and CSV emitter in this crate.
pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse the `rat_to_string` format back into a rational.
pub fn rat_from_str(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: Int = num.parse().ok()?;
    let d: Int = den.parse().ok()?;
    if d.is_zero() || d.sign() == Sign::Minus {
        return None;
    }
    Some(Rat::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(5, 0), int(1));
        assert_eq!(binomial(5, 5), int(1));
        assert_eq!(binomial(5, 6), int(0));
        assert_eq!(binomial(5, -1), int(0));
        assert_eq!(binomial(0, 0), int(1));
    }

    #[test]
    fn binomial_matches_pascal() {
        for p in 1..40i64 {
            for r in 1..p {
                assert_eq!(
                    binomial(p, r),
                    binomial(p - 1, r - 1) + binomial(p - 1, r),
                    "pascal failed at ({p},{r})"
                );
            }
        }
    }

    #[test]
    fn factorial_small() {
        assert_eq!(factorial(0), int(1));
        assert_eq!(factorial(5), int(120));
        assert_eq!(factorial(10), int(3628800));
    }

    #[test]
    fn rational_wire_format_round_trips() {
        for x in [rat(0), rat(-7), frac(1, 3), frac(-22, 8), frac(355, 113)] {
            let s = rat_to_string(&x);
            assert_eq!(rat_from_str(&s), Some(x.clone()), "round trip of {s}");
        }
        assert_eq!(rat_to_string(&frac(-22, 8)), "-11/4");
        assert_eq!(rat_from_str("3/0"), None);
        assert_eq!(rat_from_str("x"), None);
    }
}
