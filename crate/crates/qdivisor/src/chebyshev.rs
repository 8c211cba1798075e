//! Odd-index Chebyshev polynomials and coefficient extraction.
//!
//! `to_n(x) := T_{2n+1}(sqrt(x)) / sqrt(x)` is a degree-n polynomial in x.
//! The closed forms for `U_t(a,q)` need the coefficient `[x^t] to_n((x+a+2)/4)`,
//! which this module computes two independent ways: a finite hypergeometric
//! sum (`cheb_coeff_sum`) and a Riordan-array generating function in an
//! auxiliary variable z (`riordan_coeff`, expanded with the series engine).
//! The two must agree everywhere; several piecewise closed forms for special
//! (a, t) columns are also provided and cross-checked.

use crate::rational::{binomial, int_pow, rat, sign, Int, Rat};
use crate::series::QSeries;
use num::Zero;

/// A single coefficient request: `[x^t] to_n((x+a+2)/4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChebCoeffQuery {
    pub n: i64,
    pub t: i64,
    pub a: i64,
}

impl ChebCoeffQuery {
    pub fn new(n: i64, t: i64, a: i64) -> ChebCoeffQuery {
        assert!(n >= 0 && t >= 0, "indices must be non-negative");
        assert!((-2..=2).contains(&a), "a must lie in -2..=2");
        ChebCoeffQuery { n, t, a }
    }
}

/// Coefficients of `to_n(x)`, index = power of x:
/// `to_n(x) = (2n+1) sum_k (-1)^(n+k) binom(n+k+1, 2k+1) (4x)^k / (n+k+1)`.
pub fn to_n_poly(n: i64) -> Vec<Rat> {
    assert!(n >= 0);
    (0..=n)
        .map(|k| {
            let num = Rat::from_integer(Int::from(2 * n + 1) * binomial(n + k + 1, 2 * k + 1))
                * Rat::from_integer(int_pow(4, k as u32));
            sign(n + k) * num / Rat::from_integer(Int::from(n + k + 1))
        })
        .collect()
}

/// `[x^t] to_n((x+a+2)/4)` by the finite sum
/// `(2n+1) sum_k (-1)^(n+k) binom(n+k+1,2k+1)/(n+k+1) binom(k,t) (a+2)^(k-t)`.
/// At a = -2 only the k = t term survives (0^0 = 1 convention).
pub fn cheb_coeff_sum(q: ChebCoeffQuery) -> Rat {
    let ChebCoeffQuery { n, t, a } = q;
    let base = a + 2;
    let mut acc = Rat::zero();
    for k in t..=n {
        if base == 0 && k > t {
            break;
        }
        let pow = int_pow(base, (k - t) as u32);
        let term = sign(n + k)
            * Rat::from_integer(binomial(n + k + 1, 2 * k + 1) * binomial(k, t) * pow)
            / Rat::from_integer(Int::from(n + k + 1));
        acc += term;
    }
    acc * rat(2 * n + 1)
}

/// The same coefficient by the Riordan route:
/// `(-1)^(n-t) [z^n] z^t (1+z) / (1 + a z + z^2)^(t+1)`, with the rational
/// function expanded as a truncated series in z.
pub fn riordan_coeff(q: ChebCoeffQuery) -> Rat {
    let ChebCoeffQuery { n, t, a } = q;
    if t > n {
        return Rat::zero();
    }
    let order = (n - t) as usize;
    let mut den = QSeries::one(order);
    if order >= 1 {
        den = den.add(&QSeries::monomial(rat(a), 1, order)).expect("shift 0");
    }
    if order >= 2 {
        den = den.add(&QSeries::monomial(rat(1), 2, order)).expect("shift 0");
    }
    let expanded = den.pow(t as u32 + 1).invert().expect("constant term 1");
    // [z^n] z^t (1+z) f(z) = [z^(n-t)] f + [z^(n-t-1)] f.
    let mut val = expanded.cn(order).clone();
    if order >= 1 {
        val += expanded.cn(order - 1);
    }
    sign(n - t) * val
}

/// The (a=1, t=2) column in closed piecewise form:
/// `(-1)^(j-1) j(3j+1)/2` at n = 3j, `0` at n = 3j+1,
/// `(-1)^(j-1) j(3j-1)/2` at n = 3j-1.
pub fn c_n_closed(n: i64) -> Rat {
    assert!(n >= 0);
    match n % 3 {
        0 => {
            let j = n / 3;
            sign(j - 1) * rat(j * (3 * j + 1)) / rat(2)
        }
        1 => Rat::zero(),
        _ => {
            let j = (n + 1) / 3;
            sign(j - 1) * rat(j * (3 * j - 1)) / rat(2)
        }
    }
}

/// Coefficients of `1/(1+z+z^2)^3` in closed piecewise form: `j+1` at n = 3j,
/// `-3(j+1)(j+2)/2` at n = 3j+1, `3j(j+1)/2` at n = 3j-1.
pub fn a128504_term(n: i64) -> Rat {
    assert!(n >= 0);
    match n % 3 {
        0 => rat(n / 3 + 1),
        1 => {
            let j = (n - 1) / 3;
            rat(-3 * (j + 1) * (j + 2)) / rat(2)
        }
        _ => {
            let j = (n + 1) / 3;
            rat(3 * j * (j + 1)) / rat(2)
        }
    }
}

/// The recursive family behind the a = 1 closed forms:
/// `f_t(n) = sum_k (-1)^k (2n+1) binom(2n+1-k, k)/(2n+1-k) binom(n-k, t) 3^(n-k-t)`.
/// Coincides with `cheb_coeff_sum` at a = 1 and satisfies
/// `f_t(n+2) - f_t(n+1) + f_t(n) = f_(t-1)(n+1)`, which follows from the
/// three-term recurrence of to_n under x -> (x+3)/4 (the polynomials
/// P_n = to_n((x+3)/4) obey P_(n+2) = (x+1) P_(n+1) - P_n). Note the n+1 on
/// the right-hand side: the unshifted variant fails already at t=1, n=0.
pub fn f_t_eval(t: i64, n: i64) -> Rat {
    assert!(t >= 0 && n >= 0);
    let mut acc = Rat::zero();
    for k in 0..=(n - t).max(-1) {
        let b = binomial(n - k, t);
        if b.is_zero() {
            continue;
        }
        let term = sign(k)
            * Rat::from_integer(
                Int::from(2 * n + 1) * binomial(2 * n + 1 - k, k) * b * int_pow(3, (n - k - t) as u32),
            )
            / Rat::from_integer(Int::from(2 * n + 1 - k));
        acc += term;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::One;

    /// Independent oracle for to_n via the three-term recurrence
    /// to_n = 2(2x-1) to_(n-1) - to_(n-2), to_0 = 1, to_1 = 4x - 3.
    fn to_n_by_recurrence(n: i64) -> Vec<Rat> {
        let mut prev = vec![rat(1)];
        if n == 0 {
            return prev;
        }
        let mut cur = vec![rat(-3), rat(4)];
        for _ in 2..=n {
            // next = (4x - 2) * cur - prev
            let mut next = vec![Rat::zero(); cur.len() + 1];
            for (i, c) in cur.iter().enumerate() {
                next[i + 1] += rat(4) * c;
                next[i] -= rat(2) * c;
            }
            for (i, p) in prev.iter().enumerate() {
                next[i] -= p;
            }
            prev = cur;
            cur = next;
        }
        cur
    }

    fn eval_poly(p: &[Rat], x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in p.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    #[test]
    fn to_n_poly_small_cases() {
        assert_eq!(to_n_poly(0), vec![rat(1)]);
        assert_eq!(to_n_poly(1), vec![rat(-3), rat(4)]);
        // T_5(c) = 16c^5 - 20c^3 + 5c, so to_2(x) = 16x^2 - 20x + 5.
        assert_eq!(to_n_poly(2), vec![rat(5), rat(-20), rat(16)]);
    }

    #[test]
    fn to_n_poly_matches_recurrence() {
        for n in 0..=25 {
            assert_eq!(to_n_poly(n), to_n_by_recurrence(n), "to_{n}");
        }
    }

    #[test]
    fn to_n_at_one_is_one() {
        // T_(2n+1)(1) = cos(0) = 1.
        for n in 0..=30 {
            assert_eq!(eval_poly(&to_n_poly(n), &rat(1)), rat(1), "to_{n}(1)");
        }
    }

    #[test]
    fn to_n_coefficients_are_integers() {
        for n in 0..=30 {
            for c in to_n_poly(n) {
                assert!(c.is_integer(), "to_{n} has non-integer coefficient {c}");
            }
        }
    }

    #[test]
    fn coeff_sum_reassembles_to_n() {
        // sum_t cheb_coeff_sum(n,t,a) x^t == to_n((x+a+2)/4) as polynomials.
        for a in [-2i64, -1, 0, 1, 2] {
            for n in 0..=20 {
                let p = to_n_poly(n);
                let mut composed = vec![Rat::zero(); (n + 1) as usize];
                for (k, pk) in p.iter().enumerate() {
                    let scale = pk / Rat::from_integer(int_pow(4, k as u32));
                    for t in 0..=k {
                        composed[t] += &scale
                            * Rat::from_integer(
                                binomial(k as i64, t as i64) * int_pow(a + 2, (k - t) as u32),
                            );
                    }
                }
                for (t, expect) in composed.iter().enumerate() {
                    let got = cheb_coeff_sum(ChebCoeffQuery::new(n, t as i64, a));
                    assert_eq!(&got, expect, "a={a} n={n} t={t}");
                }
            }
        }
    }

    #[test]
    fn coeff_sum_leading_term_is_one() {
        for a in [-2i64, -1, 0, 1, 2] {
            for n in 0..=12 {
                assert!(cheb_coeff_sum(ChebCoeffQuery::new(n, n, a)).is_one());
            }
        }
    }

    #[test]
    fn riordan_agrees_with_sum_on_grid() {
        for a in [-2i64, -1, 0, 1, 2] {
            for n in 0..=18 {
                for t in 0..=n {
                    let q = ChebCoeffQuery::new(n, t, a);
                    assert_eq!(riordan_coeff(q), cheb_coeff_sum(q), "a={a} n={n} t={t}");
                }
            }
        }
    }

    #[test]
    fn moriarty_column_a_two() {
        for n in 0..=40 {
            for t in 0..=n {
                assert_eq!(
                    cheb_coeff_sum(ChebCoeffQuery::new(n, t, 2)),
                    Rat::from_integer(binomial(n + t, 2 * t)),
                    "n={n} t={t}"
                );
            }
        }
    }

    #[test]
    fn closed_forms_a_neg_two_and_zero() {
        for n in 0..=30 {
            for t in 0..=n {
                let via_binom = sign(n - t)
                    * Rat::from_integer(
                        binomial(n + t + 1, 2 * t + 1) + binomial(n + t, 2 * t + 1),
                    );
                assert_eq!(riordan_coeff(ChebCoeffQuery::new(n, t, -2)), via_binom);

                let j = (n + t) / 2;
                let a0 = sign(n + j) * Rat::from_integer(binomial(j, t));
                assert_eq!(riordan_coeff(ChebCoeffQuery::new(n, t, 0)), a0, "n={n} t={t}");
            }
        }
    }

    #[test]
    fn c_n_piecewise_matches_sum_and_shifted_a128504() {
        assert_eq!(c_n_closed(0), rat(0));
        assert_eq!(c_n_closed(3), rat(2));
        assert_eq!(c_n_closed(4), rat(0));
        for n in 0..=60 {
            assert_eq!(c_n_closed(n), cheb_coeff_sum(ChebCoeffQuery::new(n, 2, 1)), "c_{n}");
            // The generating-function route: c_n = (-1)^n (a_(n-2) + a_(n-3)).
            let shifted = [n - 2, n - 3]
                .iter()
                .filter(|&&m| m >= 0)
                .map(|&m| a128504_term(m))
                .fold(Rat::zero(), |acc, v| acc + v);
            assert_eq!(c_n_closed(n), sign(n) * shifted, "shifted route at {n}");
        }
    }

    #[test]
    fn a128504_matches_series_expansion() {
        let order = 60usize;
        let den = QSeries::from_coeffs(
            (0..=order).map(|i| if i <= 2 { rat(1) } else { rat(0) }).collect(),
        );
        let series = den.pow(3).invert().unwrap();
        assert_eq!(a128504_term(0), rat(1));
        assert_eq!(a128504_term(1), rat(-3));
        assert_eq!(a128504_term(2), rat(3));
        for n in 0..=order {
            assert_eq!(&a128504_term(n as i64), series.cn(n), "a_{n}");
        }
    }

    #[test]
    fn f_t_recurrence_and_column_identification() {
        for t in 1..=5i64 {
            for n in 0..=40 {
                assert_eq!(
                    f_t_eval(t, n + 2) - f_t_eval(t, n + 1) + f_t_eval(t, n),
                    f_t_eval(t - 1, n + 1),
                    "t={t} n={n}"
                );
            }
        }
        for t in 0..=5i64 {
            for n in 0..=40 {
                assert_eq!(
                    f_t_eval(t, n),
                    cheb_coeff_sum(ChebCoeffQuery::new(n, t, 1)),
                    "t={t} n={n}"
                );
            }
        }
        for t in 1..=5i64 {
            for n in 0..t {
                assert!(f_t_eval(t, n).is_zero(), "f_{t}({n}) below the diagonal");
            }
        }
    }
}
