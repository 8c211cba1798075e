//! Standard q-series building blocks: Pochhammer products, the pentagonal
//! number expansion, theta functions, Lambert series and divisor sums.
//!
//! Conventions. `omega(n) = n(3n+1)/2`, so the pentagonal number theorem
//! reads `(q;q)_inf = sum over n in Z of (-1)^n q^omega(n)`. Bilateral sums
//! are folded to one-sided form before evaluation (send `n -> -n` on the
//! negative half); the engine is one-sided.

use crate::identities::IdentityReport;
use crate::rational::{rat, Int, Rat};
use crate::series::QSeries;
use num::{One, Zero};
use std::sync::OnceLock;
use std::time::Instant;

/// The infinite product `(q^a; q^b)_inf = prod_{k>=0} (1 - q^(a+kb))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PochhammerSpec {
    pub a_exp: usize,
    pub b_exp: usize,
}

impl PochhammerSpec {
    pub fn new(a_exp: usize, b_exp: usize) -> PochhammerSpec {
        assert!(a_exp >= 1 && b_exp >= 1, "pochhammer exponents must be >= 1");
        PochhammerSpec { a_exp, b_exp }
    }
}

/// Truncated `(q^a; q^b)_inf`, multiplying only factors with `a + kb <= order`.
pub fn pochhammer_inf(spec: PochhammerSpec, order: usize) -> QSeries {
    finite_product(spec, order, -1)
}

/// Truncated `prod_{k>=0} (1 + q^(a+kb))`, the sign-flipped companion of
/// [`pochhammer_inf`]; shows up when an identity carries `(-q^a; q^b)_inf`.
pub fn pochhammer_inf_neg(spec: PochhammerSpec, order: usize) -> QSeries {
    finite_product(spec, order, 1)
}

fn finite_product(spec: PochhammerSpec, order: usize, sign: i64) -> QSeries {
    let mut acc = vec![Rat::zero(); order + 1];
    acc[0] = Rat::one();
    let mut top = 0usize;
    let mut m = spec.a_exp;
    while m <= order {
        // Multiply acc by (1 + sign*q^m) in place, highest terms first.
        top = (top + m).min(order);
        for i in (0..=top.saturating_sub(m)).rev() {
            if acc[i].is_zero() {
                continue;
            }
            let add = &acc[i] * rat(sign);
            acc[i + m] += add;
        }
        m += spec.b_exp;
    }
    QSeries::from_coeffs(acc)
}

/// `(q;q)_inf`, the Euler product.
pub fn euler_product(order: usize) -> QSeries {
    pochhammer_inf(PochhammerSpec::new(1, 1), order)
}

/// The pentagonal exponent `omega(n) = n(3n+1)/2`, defined for all integers.
pub fn omega(n: i64) -> i64 {
    n * (3 * n + 1) / 2
}

/// `sum over n in Z of (-1)^n q^omega(n)`, which the pentagonal number
/// theorem equates with `(q;q)_inf`. Built independently of the product so
/// the two constructions check each other.
pub fn euler_pentagonal(order: usize) -> QSeries {
    let mut coeffs = vec![Rat::zero(); order + 1];
    coeffs[0] = Rat::one();
    let mut n = 1i64;
    // omega(-n) = n(3n-1)/2 is the smaller of the pair, so it gates the loop.
    while omega(-n) <= order as i64 {
        let sgn = rat(if n % 2 == 0 { 1 } else { -1 });
        for e in [omega(n), omega(-n)] {
            if e <= order as i64 {
                coeffs[e as usize] += &sgn;
            }
        }
        n += 1;
    }
    QSeries::from_coeffs(coeffs)
}

/// `sum over n in Z of (-1)^n n q^omega(n)`, the pentagonal expansion of
/// `-D log` applied through the Euler product (one fold: the `-n` half
/// contributes `(-1)^(n+1) n q^(n(3n-1)/2)`).
pub fn pentagonal_derivative(order: usize) -> QSeries {
    let mut coeffs = vec![Rat::zero(); order + 1];
    let mut n = 1i64;
    while omega(-n) <= order as i64 {
        let term = rat(if n % 2 == 0 { n } else { -n });
        if omega(n) <= order as i64 {
            coeffs[omega(n) as usize] += &term;
        }
        coeffs[omega(-n) as usize] -= &term;
        n += 1;
    }
    QSeries::from_coeffs(coeffs)
}

/// `theta3(q^k) = sum over n in Z of q^(k n^2)`, folded to `1 + 2 sum_{n>=1}`.
pub fn theta3(k: usize, order: usize) -> QSeries {
    assert!(k >= 1, "theta3 scale must be >= 1");
    let mut coeffs = vec![Rat::zero(); order + 1];
    coeffs[0] = Rat::one();
    let mut n = 1usize;
    while k * n * n <= order {
        coeffs[k * n * n] += rat(2);
        n += 1;
    }
    QSeries::from_coeffs(coeffs)
}

/// `theta3(-q^k) = 1 + 2 sum_{n>=1} (-1)^n q^(k n^2)`, using
/// `(-q)^(n^2) = (-1)^n q^(n^2)`.
pub fn theta3_neg(k: usize, order: usize) -> QSeries {
    assert!(k >= 1, "theta3 scale must be >= 1");
    let mut coeffs = vec![Rat::zero(); order + 1];
    coeffs[0] = Rat::one();
    let mut n = 1usize;
    while k * n * n <= order {
        coeffs[k * n * n] += rat(if n % 2 == 0 { 2 } else { -2 });
        n += 1;
    }
    QSeries::from_coeffs(coeffs)
}

/// `theta2(q^k) = sum over n in Z of q^(k (n+1/2)^2)`: a series with shift
/// `k/4` and integer part `2 sum_{n>=0} q^(k(n^2+n))`.
pub fn theta2(k: usize, order: usize) -> QSeries {
    assert!(k >= 1, "theta2 scale must be >= 1");
    let mut coeffs = vec![Rat::zero(); order + 1];
    let mut n = 0usize;
    while k * (n * n + n) <= order {
        coeffs[k * (n * n + n)] += rat(2);
        n += 1;
    }
    QSeries::with_shift(Rat::new(Int::from(k), Int::from(4)), coeffs)
        .expect("k/4 is a valid shift")
}

const SIGMA_TABLE_CAP: usize = 4096;

fn sigma1_table() -> &'static Vec<u64> {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![0u64; SIGMA_TABLE_CAP + 1];
        for d in 1..=SIGMA_TABLE_CAP {
            for m in (d..=SIGMA_TABLE_CAP).step_by(d) {
                t[m] += d as u64;
            }
        }
        t
    })
}

/// Divisor sum `sigma(n) = sum of d over d | n`.
pub fn sigma(n: usize) -> Int {
    assert!(n >= 1, "sigma needs n >= 1");
    if n <= SIGMA_TABLE_CAP {
        return Int::from(sigma1_table()[n]);
    }
    sigma_pow(1, n)
}

/// Divisor power sum `sigma_j(n) = sum of d^j over d | n`.
pub fn sigma_pow(j: u32, n: usize) -> Int {
    assert!(n >= 1, "sigma_pow needs n >= 1");
    let mut acc = Int::zero();
    let mut d = 1usize;
    while d * d <= n {
        if n % d == 0 {
            acc += Int::from(d).pow(j);
            let e = n / d;
            if e != d {
                acc += Int::from(e).pow(j);
            }
        }
        d += 1;
    }
    acc
}

/// Lambert series `S_j(q) = sum_{k>=1} k^j q^k / (1 - q^k)`, whose q^n
/// coefficient is `sigma_j(n)`.
pub fn lambert_s(j: u32, order: usize) -> QSeries {
    let mut coeffs = vec![Rat::zero(); order + 1];
    for k in 1..=order.max(1) {
        if k > order {
            break;
        }
        let kj = Rat::from_integer(Int::from(k).pow(j));
        let mut e = k;
        while e <= order {
            coeffs[e] += &kj;
            e += k;
        }
    }
    QSeries::from_coeffs(coeffs)
}

/// Lambert series restricted to one residue class:
/// `sum_{k>=1, k = r mod m} q^k / (1 - q^k)`. The q^n coefficient counts
/// divisors of n congruent to r mod m.
pub fn lambert_residue(r: usize, m: usize, order: usize) -> QSeries {
    assert!(m >= 1 && r >= 1 && r <= m, "residue class needs 1 <= r <= m");
    let mut coeffs = vec![Rat::zero(); order + 1];
    let mut k = r;
    while k <= order {
        let mut e = k;
        while e <= order {
            coeffs[e] += rat(1);
            e += k;
        }
        k += m;
    }
    QSeries::from_coeffs(coeffs)
}

/// Jacobi's triple product specialized at z = 1:
/// `prod_{m>=1} (1 + q^m)(1 - q^(2m)) == sum_{n>=0} q^(n(n+1)/2)`.
pub fn jtp_z1_check(order: usize) -> IdentityReport {
    let started = Instant::now();
    let lhs = pochhammer_inf_neg(PochhammerSpec::new(1, 1), order)
        .mul(&pochhammer_inf(PochhammerSpec::new(2, 2), order));
    let mut coeffs = vec![Rat::zero(); order + 1];
    let mut n = 0usize;
    while n * (n + 1) / 2 <= order {
        coeffs[n * (n + 1) / 2] = Rat::one();
        n += 1;
    }
    let rhs = QSeries::from_coeffs(coeffs);
    IdentityReport::from_series("jtp-z1", order, &lhs, &rhs, started)
}
