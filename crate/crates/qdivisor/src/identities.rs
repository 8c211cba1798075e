//! Registry of named, checkable identities.
//!
//! Every identity the crate knows about is registered here by a string id,
//! with a closure that computes both sides to a requested order and compares
//! them exactly. The result is an [`IdentityReport`]: pass, or fail with the
//! minimal mismatching exponent and both values. This is the single surface
//! the CLI and the acceptance tests drive.
//!
//! The registration functions live at the bottom of the file, grouped by
//! subject. Bilateral sums are folded to one-sided form at registration
//! (`n -> -n` on the negative half); each fold is noted on the identity.

use crate::chebyshev::{f_t_eval, to_n_poly};
use crate::etatheta::{
    euler_pentagonal, euler_product, lambert_residue, pentagonal_derivative, pochhammer_inf,
    theta2, theta3, theta3_neg, PochhammerSpec,
};
use crate::macmahon::{cheb_prefactor, denom_product, q_m_factor, u_cheb, u_direct, u_product, MacParams};
use crate::quasimodular::{eisenstein, EisensteinId};
use crate::rational::{binomial, frac, int_pow, rat, rat_to_string, Rat};
use crate::series::{QSeries, XPoly};
use num::Zero;
use serde::{Deserialize, Serialize};
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Minimal differing position between two sides. `x` is only present for
/// identities compared in the marker-variable ring (coefficientwise in x).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub x: Option<usize>,
    pub n: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: String,
    pub order_checked: usize,
    pub verdict: Verdict,
    pub first_mismatch: Option<Mismatch>,
    pub elapsed_ms: f64,
}

impl IdentityReport {
    pub fn from_mismatch(
        id: &str,
        order: usize,
        mismatch: Option<Mismatch>,
        started: Instant,
    ) -> IdentityReport {
        IdentityReport {
            id: id.to_string(),
            order_checked: order,
            verdict: if mismatch.is_none() { Verdict::Pass } else { Verdict::Fail },
            first_mismatch: mismatch,
            elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
        }
    }

    /// Compare two q-series coefficientwise up to `order`.
    pub fn from_series(
        id: &str,
        order: usize,
        lhs: &QSeries,
        rhs: &QSeries,
        started: Instant,
    ) -> IdentityReport {
        let mismatch = lhs.first_mismatch(rhs).map(|(n, l, r)| Mismatch {
            x: None,
            n,
            lhs: rat_to_string(&l),
            rhs: rat_to_string(&r),
        });
        IdentityReport::from_mismatch(id, order, mismatch, started)
    }

    /// Compare two x-polynomials, scanning x-degree then q-exponent.
    pub fn from_xpoly(
        id: &str,
        order: usize,
        lhs: &XPoly,
        rhs: &XPoly,
        started: Instant,
    ) -> IdentityReport {
        let mismatch = lhs.first_mismatch(rhs).map(|(x, n, l, r)| Mismatch {
            x: Some(x),
            n,
            lhs: rat_to_string(&l),
            rhs: rat_to_string(&r),
        });
        IdentityReport::from_mismatch(id, order, mismatch, started)
    }

    /// Report from a list of scalar claims `(label_exponent, lhs, rhs)`;
    /// used by grid checks whose natural index is not a q-exponent.
    pub fn from_values(
        id: &str,
        order: usize,
        values: impl IntoIterator<Item = (usize, Rat, Rat)>,
        started: Instant,
    ) -> IdentityReport {
        let mismatch = values.into_iter().find(|(_, l, r)| l != r).map(|(n, l, r)| Mismatch {
            x: None,
            n,
            lhs: rat_to_string(&l),
            rhs: rat_to_string(&r),
        });
        IdentityReport::from_mismatch(id, order, mismatch, started)
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Equality on everything except the timing, which is the part excluded
    /// from round-trip comparisons.
    pub fn same_outcome(&self, other: &IdentityReport) -> bool {
        self.id == other.id
            && self.order_checked == other.order_checked
            && self.verdict == other.verdict
            && self.first_mismatch == other.first_mismatch
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown identity id {0:?}; see list-identities")]
pub struct UnknownIdentity(pub String);

pub struct Identity {
    pub id: &'static str,
    pub summary: &'static str,
    check: fn(usize) -> IdentityReport,
}

/// All registered identities, sorted by id.
pub fn registry() -> &'static [Identity] {
    &REGISTRY
}

pub fn check(id: &str, order: usize) -> Result<IdentityReport, UnknownIdentity> {
    match REGISTRY.iter().find(|e| e.id == id) {
        Some(entry) => Ok((entry.check)(order)),
        None => Err(UnknownIdentity(id.to_string())),
    }
}

/// Run every registered identity at the given order. Checks run in parallel;
/// the report list is ordered by id regardless of completion order.
pub fn check_all(order: usize) -> Vec<IdentityReport> {
    use rayon::prelude::*;
    let mut reports: Vec<IdentityReport> =
        REGISTRY.par_iter().map(|e| (e.check)(order)).collect();
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    reports
}

// ---------------------------------------------------------------------------
// Shared builders.
// ---------------------------------------------------------------------------

fn mismatch_at(x: Option<usize>, n: usize, lhs: &Rat, rhs: &Rat) -> Mismatch {
    Mismatch { x, n, lhs: rat_to_string(lhs), rhs: rat_to_string(rhs) }
}

/// `sum_{n>=1} q^(3n)/(1-q^(3n))^2`, expanded term by term through the
/// geometric square `q^m/(1-q^m)^2 = sum_{j>=1} j q^(mj)`.
fn triple_divisor_sum(order: usize) -> QSeries {
    let mut coeffs = vec![Rat::zero(); order + 1];
    let mut n = 1usize;
    while 3 * n <= order {
        let mut j = 1usize;
        while 3 * n * j <= order {
            coeffs[3 * n * j] += rat(j as i64);
            j += 1;
        }
        n += 1;
    }
    QSeries::from_coeffs(coeffs)
}

/// `sum_{n>=1} q^n/(1+(-q)^n+q^(2n))`: for even n the denominator is the
/// a = 1 trinomial, for odd n the a = -1 trinomial.
fn alternating_sign_divisor_sum(order: usize) -> QSeries {
    let mut acc = QSeries::zero(order);
    for n in 1..=order.max(1) {
        if n > order {
            break;
        }
        let a = if n % 2 == 0 { 1 } else { -1 };
        acc = acc.add(&q_m_factor(a, n, order)).expect("shift 0");
    }
    acc
}

fn u_closed(a: i64, t: i64, order: usize) -> QSeries {
    u_cheb(&MacParams::new(a, t, order).expect("valid parameters"))
}

/// `[x^i] to_n((x+c)/4)` for i = 0..=cap, via binomial expansion of the
/// affine substitution applied to the plain coefficients of to_n.
fn to_n_shifted_columns(n: i64, c: i64, cap: usize) -> Vec<Rat> {
    let poly = to_n_poly(n);
    (0..=cap)
        .map(|i| {
            let mut acc = Rat::zero();
            for (j, pj) in poly.iter().enumerate().skip(i) {
                if pj.is_zero() {
                    continue;
                }
                let b = binomial(j as i64, i as i64) * int_pow(c, (j - i) as u32);
                acc += pj * Rat::from_integer(b) / Rat::from_integer(int_pow(4, j as u32));
            }
            acc
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Chebyshev expansions of the generating product.
// ---------------------------------------------------------------------------

/// The odd-index Chebyshev generating identity behind everything else, both
/// equalities at once:
/// `sum_n 2 T_(2n+1)(x/2) q^(n^2+n)`
///   `== x (q^2;q^2)^3 prod_m (1 + x^2 q^(2m)/(1-q^(2m))^2)`
///   `== (q^2;q^2)^3 sum_t U_t(-2,q^2) x^(2t+1)`,
/// compared as x-polynomials up to degree 9 (t <= 4). The left side uses
/// `2 T_(2n+1)(x/2) = x to_n(x^2/4)`.
fn check_cheb_ar(order: usize) -> IdentityReport {
    let started = Instant::now();
    let cap = 9usize;

    let mut left = vec![vec![Rat::zero(); order + 1]; cap + 1];
    let mut n = 0i64;
    while (n * n + n) as usize <= order {
        let e = (n * n + n) as usize;
        for (j, c) in to_n_poly(n).iter().enumerate() {
            let col = 2 * j + 1;
            if col > cap {
                break;
            }
            left[col][e] += c / Rat::from_integer(int_pow(4, j as u32));
        }
        n += 1;
    }
    let left = XPoly::new(left.into_iter().map(QSeries::from_coeffs).collect());

    let p22_cubed = pochhammer_inf(PochhammerSpec::new(2, 2), order).pow(3);
    // Product over m in the variable y = x^2, capped at y^4.
    let mut even = XPoly::one(order);
    for m in 1..=order.max(1) {
        if 2 * m > order {
            break;
        }
        let mut lm = vec![Rat::zero(); order + 1];
        let mut j = 1usize;
        while 2 * m * j <= order {
            lm[2 * m * j] += rat(j as i64);
            j += 1;
        }
        let factor = XPoly::new(vec![QSeries::one(order), QSeries::from_coeffs(lm)]);
        even = even.mul_capped(&factor, 4);
    }
    let mut middle = vec![QSeries::zero(order); cap + 1];
    for (j, s) in even.coeffs_x().iter().enumerate() {
        if 2 * j + 1 <= cap {
            middle[2 * j + 1] = s.clone();
        }
    }
    let middle = XPoly::new(middle).scale_series(&p22_cubed);

    let mut right = vec![QSeries::zero(order); cap + 1];
    for t in 0..=4usize {
        let u2 = u_closed(-2, t as i64, order).substitute_power(2).expect("shift 0");
        right[2 * t + 1] = u2;
    }
    let right = XPoly::new(right).scale_series(&p22_cubed);

    let mismatch = left
        .first_mismatch(&middle)
        .or_else(|| middle.first_mismatch(&right))
        .map(|(x, n, l, r)| mismatch_at(Some(x), n, &l, &r));
    IdentityReport::from_mismatch("cheb-ar-2.1", order, mismatch, started)
}

/// `sum_t U_t(a,q) x^t == prefactor(a) * sum_n to_n((x+a+2)/4) q^(n(n+1)/2)`
/// for all five a, compared as x-polynomials up to degree 4. The left side
/// comes from the incremental product route, the right from the Chebyshev
/// columns under the affine substitution.
fn check_core(order: usize) -> IdentityReport {
    let started = Instant::now();
    let cap = 4usize;
    for a in [-2i64, -1, 0, 1, 2] {
        let lhs = u_product(a, cap as i64, order);
        let mut cols = vec![vec![Rat::zero(); order + 1]; cap + 1];
        let mut n = 0i64;
        while (n * (n + 1) / 2) as usize <= order {
            let e = (n * (n + 1) / 2) as usize;
            for (i, v) in to_n_shifted_columns(n, a + 2, cap).into_iter().enumerate() {
                cols[i][e] += v;
            }
            n += 1;
        }
        let rhs = XPoly::new(cols.into_iter().map(QSeries::from_coeffs).collect())
            .scale_series(&cheb_prefactor(a, order));
        if let Some((x, n, l, r)) = lhs.first_mismatch(&rhs) {
            let m = mismatch_at(Some(x), n, &l, &r);
            return IdentityReport::from_mismatch("core-2.4", order, Some(m), started);
        }
    }
    IdentityReport::from_mismatch("core-2.4", order, None, started)
}

// ---------------------------------------------------------------------------
// The t = 2, a = 1 evaluation and its pentagonal companion.
// ---------------------------------------------------------------------------

/// `U_2(1,q) == sum_{n>=1} q^(3n)/(1-q^(3n))^2`, with the left side computed
/// by the defining double sum over index tuples.
fn check_thm_u2(order: usize) -> IdentityReport {
    let started = Instant::now();
    let lhs = u_direct(&MacParams::new(1, 2, order).expect("valid parameters"));
    IdentityReport::from_series("thm-1.1", order, &lhs, &triple_divisor_sum(order), started)
}

/// `sum_{n>=1} q^(3n)/(1-q^(3n))^2
///    == (sum_Z (-1)^(n-1) w(n) q^(3 w(n))) / (q^3;q^3)_inf`
/// where w(n) = n(3n+1)/2. The numerator is `-D` of the pentagonal expansion
/// of `(q;q)_inf` with q -> q^3; the denominator uses the product form, so
/// the two sides share no construction.
fn check_lem_pent_quotient(order: usize) -> IdentityReport {
    let started = Instant::now();
    let lhs = triple_divisor_sum(order);
    let numer = euler_pentagonal(order)
        .derive()
        .negate()
        .substitute_power(3)
        .expect("shift 0");
    let p33_inv = pochhammer_inf(PochhammerSpec::new(3, 3), order)
        .invert()
        .expect("constant 1");
    IdentityReport::from_series("lem-3.1", order, &lhs, &numer.mul(&p33_inv), started)
}

// ---------------------------------------------------------------------------
// Route agreement and prefactor simplification, one id per a.
// ---------------------------------------------------------------------------

/// Closed form vs the product route for t = 0..=4 at a fixed a; the x slot
/// of a mismatch reports the failing t.
fn mac_routes_check(id: &'static str, a: i64, order: usize) -> IdentityReport {
    let started = Instant::now();
    let prod = u_product(a, 4, order);
    for t in 0..=4usize {
        let closed = u_closed(a, t as i64, order);
        if let Some((n, l, r)) = closed.first_mismatch(&prod.coeff_x(t)) {
            let m = mismatch_at(Some(t), n, &l, &r);
            return IdentityReport::from_mismatch(id, order, Some(m), started);
        }
    }
    IdentityReport::from_mismatch(id, order, None, started)
}

fn check_mac_neg2(order: usize) -> IdentityReport {
    mac_routes_check("mac-neg2", -2, order)
}
fn check_mac_neg1(order: usize) -> IdentityReport {
    mac_routes_check("mac-neg1", -1, order)
}
fn check_mac_0(order: usize) -> IdentityReport {
    mac_routes_check("mac-0", 0, order)
}
fn check_mac_1(order: usize) -> IdentityReport {
    mac_routes_check("mac-1", 1, order)
}
fn check_mac_2(order: usize) -> IdentityReport {
    mac_routes_check("mac-2", 2, order)
}

/// The stored Pochhammer-quotient prefactor times the literal denominator
/// product times `(q;q)_inf` must collapse to 1.
fn prefactor_check(id: &'static str, a: i64, order: usize) -> IdentityReport {
    let started = Instant::now();
    let lhs = cheb_prefactor(a, order)
        .mul(&denom_product(a, order))
        .mul(&euler_product(order));
    IdentityReport::from_series(id, order, &lhs, &QSeries::one(order), started)
}

fn check_prefactor_neg2(order: usize) -> IdentityReport {
    prefactor_check("prefactor-neg2", -2, order)
}
fn check_prefactor_neg1(order: usize) -> IdentityReport {
    prefactor_check("prefactor-neg1", -1, order)
}
fn check_prefactor_0(order: usize) -> IdentityReport {
    prefactor_check("prefactor-0", 0, order)
}
fn check_prefactor_1(order: usize) -> IdentityReport {
    prefactor_check("prefactor-1", 1, order)
}
fn check_prefactor_2(order: usize) -> IdentityReport {
    prefactor_check("prefactor-2", 2, order)
}

// ---------------------------------------------------------------------------
// Theta evaluations at t = 1.
// ---------------------------------------------------------------------------

fn u1_zero_theta(id: &'static str, order: usize) -> IdentityReport {
    let started = Instant::now();
    let lhs = u_closed(0, 1, order);
    let rhs = theta3(1, order)
        .pow(2)
        .add_scalar(&rat(-1))
        .expect("shift 0")
        .scale(&frac(1, 4));
    IdentityReport::from_series(id, order, &lhs, &rhs, started)
}

/// `U_1(0,q) == (theta3(q)^2 - 1)/4`: the two-squares count.
fn check_u1_0(order: usize) -> IdentityReport {
    u1_zero_theta("u1-0", order)
}

/// `U_1(1,q) == sum_Z (-1)^n n q^(w(n)) / sum_Z (-1)^n q^(w(n))`, both
/// pentagonal series built by direct bilateral folding.
fn check_u1_1_pent(order: usize) -> IdentityReport {
    let started = Instant::now();
    let lhs = u_closed(1, 1, order);
    let rhs = pentagonal_derivative(order)
        .mul(&euler_pentagonal(order).invert().expect("constant 1"));
    IdentityReport::from_series("u1-1-pent", order, &lhs, &rhs, started)
}

/// `U_1(-1,q) == (theta3(-q^3)^3/theta3(-q) - 1)/2`.
fn check_u1_neg1_theta(order: usize) -> IdentityReport {
    let started = Instant::now();
    let lhs = u_closed(-1, 1, order);
    let rhs = theta3_neg(3, order)
        .pow(3)
        .mul(&theta3_neg(1, order).invert().expect("constant 1"))
        .add_scalar(&rat(-1))
        .expect("shift 0")
        .scale(&frac(1, 2));
    IdentityReport::from_series("u1-neg1-theta", order, &lhs, &rhs, started)
}

/// Both bilateral sums `sum_Z q^n/(1+q^(3n))` and `sum_Z q^(2n)/(1+q^(3n))`
/// fold (n -> -n on the negative half) to the same one-sided series, which
/// must equal `1/2 + U_1(-1,q)`. The fold is built from raw alternating
/// geometric expansions, the right side from the Chebyshev closed form.
fn check_bilateral_fold(order: usize) -> IdentityReport {
    let started = Instant::now();
    let mut coeffs = vec![Rat::zero(); order + 1];
    coeffs[0] = frac(1, 2);
    let mut n = 1usize;
    while n <= order {
        for base in [n, 2 * n] {
            let mut e = base;
            let mut sign = 1i64;
            while e <= order {
                coeffs[e] += rat(sign);
                sign = -sign;
                e += 3 * n;
            }
        }
        n += 1;
    }
    let folded = QSeries::from_coeffs(coeffs);
    let rhs = u_closed(-1, 1, order).add_scalar(&frac(1, 2)).expect("shift 0");
    IdentityReport::from_series("bilateral-fold", order, &folded, &rhs, started)
}

/// `sum_{n>=1} q^n/(1+(-q)^n+q^(2n)) == (theta3(q)^3/theta3(q^3) - 1)/6`:
/// the signed-trinomial divisor sum counts representations by x^2+xy+y^2
/// through the cubic theta quotient.
fn check_a113661(order: usize) -> IdentityReport {
    let started = Instant::now();
    let lhs = alternating_sign_divisor_sum(order);
    let rhs = theta3(1, order)
        .pow(3)
        .mul(&theta3(3, order).invert().expect("constant 1"))
        .add_scalar(&rat(-1))
        .expect("shift 0")
        .scale(&frac(1, 6));
    IdentityReport::from_series("a113661", order, &lhs, &rhs, started)
}

/// `U_1(1,q^4) == theta3(-q^3)^3/(4 theta3(-q)) - theta3(q)^3/(12 theta3(q^3)) - 1/6`.
fn check_u1_1_q4(order: usize) -> IdentityReport {
    let started = Instant::now();
    let lhs = u_closed(1, 1, order).substitute_power(4).expect("shift 0");
    let neg_quotient = theta3_neg(3, order)
        .pow(3)
        .mul(&theta3_neg(1, order).invert().expect("constant 1"));
    let pos_quotient = theta3(1, order)
        .pow(3)
        .mul(&theta3(3, order).invert().expect("constant 1"));
    let rhs = neg_quotient
        .scale(&frac(1, 4))
        .add(&pos_quotient.scale(&frac(-1, 12)))
        .expect("shift 0")
        .add_scalar(&frac(-1, 6))
        .expect("shift 0");
    IdentityReport::from_series("u1-1-q4", order, &lhs, &rhs, started)
}

/// `U_1(-1,q) - sum_{n>=1} q^n/(1+(-q)^n+q^(2n)) == 2 U_1(1,q^4)`.
fn check_relay_q4(order: usize) -> IdentityReport {
    let started = Instant::now();
    let lhs = u_closed(-1, 1, order)
        .sub(&alternating_sign_divisor_sum(order))
        .expect("shift 0");
    let rhs = u_closed(1, 1, order)
        .substitute_power(4)
        .expect("shift 0")
        .scale(&rat(2));
    IdentityReport::from_series("relay-q4", order, &lhs, &rhs, started)
}

// ---------------------------------------------------------------------------
// The theta-product triple and the hexagonal lattice count.
// ---------------------------------------------------------------------------

/// `U_1(0,q) == (theta3(q)^2 - 1)/4`, re-registered as the first member of
/// the three-part theta lemma.
fn check_lem_theta_a(order: usize) -> IdentityReport {
    u1_zero_theta("lem-7.1-a", order)
}

/// `U_1(1,q) == (theta2(q)theta2(q^3) + theta3(q)theta3(q^3) - 1)/6`.
fn check_lem_theta_b(order: usize) -> IdentityReport {
    let started = Instant::now();
    let lhs = u_closed(1, 1, order);
    let rhs = theta2(1, order)
        .mul(&theta2(3, order))
        .add(&theta3(1, order).mul(&theta3(3, order)))
        .expect("shift 0")
        .add_scalar(&rat(-1))
        .expect("shift 0")
        .scale(&frac(1, 6));
    IdentityReport::from_series("lem-7.1-b", order, &lhs, &rhs, started)
}

/// `U_1(-1,q) == (2 theta2(q^2)theta2(q^6) + 2 theta3(q^2)theta3(q^6)
///               + theta2(q)theta2(q^3) + theta3(q)theta3(q^3) - 3)/6`.
fn check_lem_theta_c(order: usize) -> IdentityReport {
    let started = Instant::now();
    let lhs = u_closed(-1, 1, order);
    let doubled = theta2(2, order)
        .mul(&theta2(6, order))
        .add(&theta3(2, order).mul(&theta3(6, order)))
        .expect("shift 0")
        .scale(&rat(2));
    let single = theta2(1, order)
        .mul(&theta2(3, order))
        .add(&theta3(1, order).mul(&theta3(3, order)))
        .expect("shift 0");
    let rhs = doubled
        .add(&single)
        .expect("shift 0")
        .add_scalar(&rat(-3))
        .expect("shift 0")
        .scale(&frac(1, 6));
    IdentityReport::from_series("lem-7.1-c", order, &lhs, &rhs, started)
}

/// `sum_{a,b in Z} q^(a^2+ab+b^2)`, enumerated directly over the lattice
/// (the form bounds |a|, |b| by sqrt(4N/3)), must equal both
/// `theta2(q)theta2(q^3) + theta3(q)theta3(q^3)` and the classical
/// `1 + 6 sum (q^(3n-2)/(1-q^(3n-2)) - q^(3n-1)/(1-q^(3n-1)))`.
fn check_hex_lattice(order: usize) -> IdentityReport {
    let started = Instant::now();
    let mut coeffs = vec![Rat::zero(); order + 1];
    let bound = ((4.0 * order as f64 / 3.0).sqrt() as i64) + 2;
    for a in -bound..=bound {
        for b in -bound..=bound {
            let e = a * a + a * b + b * b;
            if e >= 0 && (e as usize) <= order {
                coeffs[e as usize] += rat(1);
            }
        }
    }
    let lattice = QSeries::from_coeffs(coeffs);
    let theta_side = theta2(1, order)
        .mul(&theta2(3, order))
        .add(&theta3(1, order).mul(&theta3(3, order)))
        .expect("shift 0");
    let classical = lambert_residue(1, 3, order)
        .sub(&lambert_residue(2, 3, order))
        .expect("shift 0")
        .scale(&rat(6))
        .add_scalar(&rat(1))
        .expect("shift 0");
    let mismatch = lattice
        .first_mismatch(&theta_side)
        .or_else(|| lattice.first_mismatch(&classical))
        .map(|(n, l, r)| mismatch_at(None, n, &l, &r));
    IdentityReport::from_mismatch("hex-lattice", order, mismatch, started)
}

// ---------------------------------------------------------------------------
// Worked-example block: theta convolution, Eisenstein form, eta quotient.
// ---------------------------------------------------------------------------

/// `theta3(q) theta3(q^3) == 2 U_1(1,q) + 4 U_1(1,q^4) + 1`.
fn check_ex_theta(order: usize) -> IdentityReport {
    let started = Instant::now();
    let lhs = theta3(1, order).mul(&theta3(3, order));
    let rhs = u_closed(1, 1, order)
        .scale(&rat(2))
        .add(
            &u_closed(1, 1, order)
                .substitute_power(4)
                .expect("shift 0")
                .scale(&rat(4)),
        )
        .expect("shift 0")
        .add_scalar(&rat(1))
        .expect("shift 0");
    IdentityReport::from_series("ex-7-theta", order, &lhs, &rhs, started)
}

/// `U_2(1,q) == (1 - E2(q^3))/24`.
fn check_ex_e2(order: usize) -> IdentityReport {
    let started = Instant::now();
    let lhs = u_closed(1, 2, order);
    let e2_cubed = eisenstein(EisensteinId::new(2, 3).expect("valid weight"), order);
    let rhs = e2_cubed
        .scale(&frac(-1, 24))
        .add_scalar(&frac(1, 24))
        .expect("shift 0");
    IdentityReport::from_series("ex-7-e2", order, &lhs, &rhs, started)
}

/// `U_1(0,q) == (q^2;q^2) sum_Z (-1)^n n q^(n(2n+1)) / ((q;q)(q^4;q^4))`,
/// the bilateral sum folded as `n >= 1` plus the mirrored
/// `(-1)^(n+1) n q^(n(2n-1))` half.
fn check_ex_eta(order: usize) -> IdentityReport {
    let started = Instant::now();
    let lhs = u_closed(0, 1, order);
    let mut coeffs = vec![Rat::zero(); order + 1];
    let mut n = 1i64;
    while (n * (2 * n - 1)) as usize <= order {
        let term = rat(if n % 2 == 0 { n } else { -n });
        if (n * (2 * n + 1)) as usize <= order {
            coeffs[(n * (2 * n + 1)) as usize] += &term;
        }
        coeffs[(n * (2 * n - 1)) as usize] -= &term;
        n += 1;
    }
    let numer = QSeries::from_coeffs(coeffs);
    let p = |e: usize| pochhammer_inf(PochhammerSpec::new(e, e), order);
    let rhs = p(2)
        .mul(&numer)
        .mul(&p(1).mul(&p(4)).invert().expect("constant 1"));
    IdentityReport::from_series("ex-7-eta", order, &lhs, &rhs, started)
}

// ---------------------------------------------------------------------------
// The f_t recursion at a = 1.
// ---------------------------------------------------------------------------

/// The three-term recursion `f_t(n+2) - f_t(n+1) + f_t(n) == f_(t-1)(n+1)`
/// on a grid, and the series relation it induces:
/// `U_(t-1)(1,q) == -U_t(1,q)
///    + (sum_n f_t(n+1) q^T(n) + sum_{n>=1} f_t(n-1) q^T(n)) / (q^3;q^3)`.
/// A mismatch reports t in the x slot.
fn check_prop_ft(order: usize) -> IdentityReport {
    let started = Instant::now();
    for t in 1..=6i64 {
        for n in 0..=60i64 {
            let lhs = f_t_eval(t, n + 2) - f_t_eval(t, n + 1) + f_t_eval(t, n);
            let rhs = f_t_eval(t - 1, n + 1);
            if lhs != rhs {
                let m = mismatch_at(Some(t as usize), n as usize, &lhs, &rhs);
                return IdentityReport::from_mismatch("prop-7-ft", order, Some(m), started);
            }
        }
    }
    let p33_inv = pochhammer_inf(PochhammerSpec::new(3, 3), order)
        .invert()
        .expect("constant 1");
    for t in 1..=4i64 {
        let mut up = vec![Rat::zero(); order + 1];
        let mut down = vec![Rat::zero(); order + 1];
        let mut n = 0i64;
        while (n * (n + 1) / 2) as usize <= order {
            let e = (n * (n + 1) / 2) as usize;
            up[e] += f_t_eval(t, n + 1);
            if n >= 1 {
                down[e] += f_t_eval(t, n - 1);
            }
            n += 1;
        }
        let numer = QSeries::from_coeffs(up).add(&QSeries::from_coeffs(down)).expect("shift 0");
        let rhs = numer.mul(&p33_inv).sub(&u_closed(1, t, order)).expect("shift 0");
        let lhs = u_closed(1, t - 1, order);
        if let Some((n, l, r)) = lhs.first_mismatch(&rhs) {
            let m = mismatch_at(Some(t as usize), n, &l, &r);
            return IdentityReport::from_mismatch("prop-7-ft", order, Some(m), started);
        }
    }
    IdentityReport::from_mismatch("prop-7-ft", order, None, started)
}

/// `U_1(-1,q) - U_1(1,q) == 2 sum_{n>=1} q^(2n)(1-q^(2n))/(1-q^(6n))`,
/// the right side expanded through the geometric series in q^(6n).
fn check_u1_difference(order: usize) -> IdentityReport {
    let started = Instant::now();
    let lhs = u_closed(-1, 1, order).sub(&u_closed(1, 1, order)).expect("shift 0");
    let mut coeffs = vec![Rat::zero(); order + 1];
    let mut n = 1usize;
    while 2 * n <= order {
        let mut e = 2 * n;
        while e <= order {
            coeffs[e] += rat(2);
            if e + 2 * n <= order {
                coeffs[e + 2 * n] -= rat(2);
            }
            e += 6 * n;
        }
        n += 1;
    }
    IdentityReport::from_series(
        "u1-neg1-minus-u1-1",
        order,
        &lhs,
        &QSeries::from_coeffs(coeffs),
        started,
    )
}

static REGISTRY: &[Identity] = &[
    Identity {
        id: "a113661",
        summary: "sum q^n/(1+(-q)^n+q^2n) == (theta3(q)^3/theta3(q^3) - 1)/6",
        check: check_a113661,
    },
    Identity {
        id: "bilateral-fold",
        summary: "folded bilateral sums q^n/(1+q^3n) and q^2n/(1+q^3n) == 1/2 + U_1(-1,q)",
        check: check_bilateral_fold,
    },
    Identity {
        id: "cheb-ar-2.1",
        summary: "sum 2T_(2n+1)(x/2) q^(n^2+n) == x-product == (q^2;q^2)^3 sum U_t(-2,q^2) x^(2t+1)",
        check: check_cheb_ar,
    },
    Identity {
        id: "core-2.4",
        summary: "sum_t U_t(a,q) x^t == prefactor(a) sum_n to_n((x+a+2)/4) q^T(n), all five a",
        check: check_core,
    },
    Identity {
        id: "ex-7-e2",
        summary: "U_2(1,q) == (1 - E2(q^3))/24",
        check: check_ex_e2,
    },
    Identity {
        id: "ex-7-eta",
        summary: "U_1(0,q) == (q^2;q^2) sum_Z (-1)^n n q^(n(2n+1)) / ((q;q)(q^4;q^4))",
        check: check_ex_eta,
    },
    Identity {
        id: "ex-7-theta",
        summary: "theta3(q)theta3(q^3) == 2U_1(1,q) + 4U_1(1,q^4) + 1",
        check: check_ex_theta,
    },
    Identity {
        id: "hex-lattice",
        summary: "sum q^(a^2+ab+b^2) == theta2theta2(q^3) + theta3theta3(q^3) == 1 + 6 Lambert difference",
        check: check_hex_lattice,
    },
    Identity {
        id: "jtp-z1",
        summary: "triple product at z=1: prod (1+q^m)(1-q^2m) == sum of q^T(n)",
        check: crate::etatheta::jtp_z1_check,
    },
    Identity {
        id: "lem-3.1",
        summary: "sum q^3n/(1-q^3n)^2 == sum_Z (-1)^(n-1) w(n) q^(3w(n)) / (q^3;q^3)",
        check: check_lem_pent_quotient,
    },
    Identity {
        id: "lem-7.1-a",
        summary: "U_1(0,q) == (theta3(q)^2 - 1)/4",
        check: check_lem_theta_a,
    },
    Identity {
        id: "lem-7.1-b",
        summary: "U_1(1,q) == (theta2theta2(q^3) + theta3theta3(q^3) - 1)/6",
        check: check_lem_theta_b,
    },
    Identity {
        id: "lem-7.1-c",
        summary: "U_1(-1,q) == (2 theta-pair at q^2 + theta-pair at q - 3)/6",
        check: check_lem_theta_c,
    },
    Identity {
        id: "mac-0",
        summary: "closed form vs product route for U_t(0,q), t <= 4",
        check: check_mac_0,
    },
    Identity {
        id: "mac-1",
        summary: "closed form vs product route for U_t(1,q), t <= 4",
        check: check_mac_1,
    },
    Identity {
        id: "mac-2",
        summary: "closed form vs product route for U_t(2,q), t <= 4",
        check: check_mac_2,
    },
    Identity {
        id: "mac-neg1",
        summary: "closed form vs product route for U_t(-1,q), t <= 4",
        check: check_mac_neg1,
    },
    Identity {
        id: "mac-neg2",
        summary: "closed form vs product route for U_t(-2,q), t <= 4",
        check: check_mac_neg2,
    },
    Identity {
        id: "prefactor-0",
        summary: "prod 1/((1+q^2m)(1-q^m)) == (q^2;q^2)/((q;q)(q^4;q^4))",
        check: check_prefactor_0,
    },
    Identity {
        id: "prefactor-1",
        summary: "prod 1/((1+q^m+q^2m)(1-q^m)) == 1/(q^3;q^3)",
        check: check_prefactor_1,
    },
    Identity {
        id: "prefactor-2",
        summary: "prod 1/((1+q^m)^2(1-q^m)) == (q;q)/(q^2;q^2)^2",
        check: check_prefactor_2,
    },
    Identity {
        id: "prefactor-neg1",
        summary: "prod 1/((1-q^m+q^2m)(1-q^m)) == (q^2;q^2)(q^3;q^3)/((q;q)^2(q^6;q^6))",
        check: check_prefactor_neg1,
    },
    Identity {
        id: "prefactor-neg2",
        summary: "prod 1/(1-q^m)^3 == 1/(q;q)^3",
        check: check_prefactor_neg2,
    },
    Identity {
        id: "prop-7-ft",
        summary: "f_t(n+2)-f_t(n+1)+f_t(n) == f_(t-1)(n+1), and the induced U_(t-1)(1,q) relation",
        check: check_prop_ft,
    },
    Identity {
        id: "relay-q4",
        summary: "U_1(-1,q) - sum q^n/(1+(-q)^n+q^2n) == 2U_1(1,q^4)",
        check: check_relay_q4,
    },
    Identity {
        id: "thm-1.1",
        summary: "U_2(1,q) == sum q^3n/(1-q^3n)^2, left side by the defining double sum",
        check: check_thm_u2,
    },
    Identity {
        id: "u1-0",
        summary: "U_1(0,q) == (theta3(q)^2 - 1)/4",
        check: check_u1_0,
    },
    Identity {
        id: "u1-1-pent",
        summary: "U_1(1,q) == pentagonal derivative / pentagonal series",
        check: check_u1_1_pent,
    },
    Identity {
        id: "u1-1-q4",
        summary: "U_1(1,q^4) == theta3(-q^3)^3/(4 theta3(-q)) - theta3(q)^3/(12 theta3(q^3)) - 1/6",
        check: check_u1_1_q4,
    },
    Identity {
        id: "u1-neg1-minus-u1-1",
        summary: "U_1(-1,q) - U_1(1,q) == 2 sum q^2n(1-q^2n)/(1-q^6n)",
        check: check_u1_difference,
    },
    Identity {
        id: "u1-neg1-theta",
        summary: "U_1(-1,q) == (theta3(-q^3)^3/theta3(-q) - 1)/2",
        check: check_u1_neg1_theta,
    },
];
