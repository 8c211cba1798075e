//! The MacMahon-type sums of divisors `U_t(a, q)` by three independent
//! routes, plus the congruence scans over their coefficients `MO(a,t;n)`.
//!
//! Routes:
//! * `u_direct`: literal enumeration of index tuples `n_1 < ... < n_t`,
//!   multiplying factors `Q_m = q^m / (1 + a q^m + q^(2m))`; recursion over
//!   prefixes with pruning on the remaining exponent budget.
//! * `u_product`: coefficient of `x^t` in the incremental product
//!   `prod_m (1 + Q_m x)`, carried as an x-polynomial truncated at a degree
//!   cap.
//! * `u_cheb`: per-a closed form, a Pochhammer-quotient prefactor times a
//!   triangular-number sum with Chebyshev-extracted coefficients.
//!
//! The three must agree coefficientwise, and every route asserts its output
//! has integer coefficients before returning.

use crate::chebyshev::{cheb_coeff_sum, ChebCoeffQuery};
use crate::etatheta::{pochhammer_inf, PochhammerSpec};
use crate::identities::{IdentityReport, Mismatch};
use crate::rational::{binomial, rat, rat_to_string, sign, Int, Rat};
use crate::series::{QSeries, XPoly};
use num::{One, Zero};
use std::time::Instant;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MacError {
    #[error("parameter a must be one of -2, -1, 0, 1, 2; got {0}")]
    UnsupportedA(i64),
    #[error("t must be non-negative; got {0}")]
    NegativeT(i64),
}

/// Parameters of one `U_t(a, q)` computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MacParams {
    pub a: i64,
    pub t: i64,
    pub order: usize,
}

impl MacParams {
    pub fn new(a: i64, t: i64, order: usize) -> Result<MacParams, MacError> {
        if !(-2..=2).contains(&a) {
            return Err(MacError::UnsupportedA(a));
        }
        if t < 0 {
            return Err(MacError::NegativeT(t));
        }
        Ok(MacParams { a, t, order })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Direct,
    Product,
    Cheb,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Direct => "direct",
            Route::Product => "product",
            Route::Cheb => "cheb",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RouteResult {
    pub route: Route,
    pub series: QSeries,
}

/// One `U_t(a,q)` by the requested route. `U_0 = 1` on every route.
pub fn compute_route(p: &MacParams, route: Route) -> RouteResult {
    let series = match route {
        Route::Direct if p.t == 0 => QSeries::one(p.order),
        Route::Direct => u_direct(p),
        Route::Product => u_product(p.a, p.t, p.order).coeff_x(p.t as usize),
        Route::Cheb => u_cheb(p),
    };
    RouteResult { route, series }
}

/// `Q_m(a,q) = q^m / (1 + a q^m + q^(2m))`, expanded by inverting the
/// denominator. The lowest term is `q^m`.
pub fn q_m_factor(a: i64, m: usize, order: usize) -> QSeries {
    assert!(m >= 1, "factor index must be >= 1");
    let mut den = vec![Rat::zero(); order + 1];
    den[0] = Rat::one();
    if m <= order {
        den[m] += rat(a);
    }
    if 2 * m <= order {
        den[2 * m] += rat(1);
    }
    let inv = QSeries::from_coeffs(den).invert().expect("constant term 1");
    if m > order {
        return QSeries::zero(order);
    }
    inv.mul(&QSeries::monomial(Rat::one(), m, order))
}

/// Coefficients of `G(y) = y / (1 + a y + y^2) = sum_{j>=1} g_j y^j`, so that
/// `Q_m(a,q) = G(q^m)`. Three-term recurrence `g_j = -a g_(j-1) - g_(j-2)`
/// with `g_1 = 1`, `g_2 = -a`; all values stay small for `|a| <= 2`.
fn g_table(a: i64, order: usize) -> Vec<i128> {
    let mut g = vec![0i128; order + 1];
    if order >= 1 {
        g[1] = 1;
    }
    if order >= 2 {
        g[2] = -a as i128;
    }
    for j in 3..=order.max(2) {
        if j > order {
            break;
        }
        g[j] = -(a as i128) * g[j - 1] - g[j - 2];
    }
    g
}

/// `G(y)` as a series in y, for substitution-based cross-checks and `H_r`.
pub fn g_series(a: i64, order: usize) -> QSeries {
    QSeries::from_coeffs(g_table(a, order).iter().map(|&c| rat_i128(c)).collect())
}

fn rat_i128(c: i128) -> Rat {
    Rat::from_integer(Int::from(c))
}

/// `U_t(a,q)` by direct tuple enumeration. Integer-only inner arithmetic:
/// partial products over a tuple prefix live in `i128` (checked), and the
/// final accumulator converts to rationals once.
pub fn u_direct(p: &MacParams) -> QSeries {
    let &MacParams { a, t, order } = p;
    assert!(t >= 1, "u_direct needs t >= 1; U_0 is the constant 1");
    let t = t as usize;
    let g = g_table(a, order);
    let mut acc = vec![0i128; order + 1];
    let mut unit = vec![0i128; order + 1];
    unit[0] = 1;
    descend(&g, t, 1, 0, &unit, &mut acc, order);
    let series = QSeries::from_coeffs(acc.iter().map(|&c| rat_i128(c)).collect());
    debug_assert!(series.is_integral());
    series
}

/// Extend every tuple prefix by one index `m >= m_min`; `s` is the sum of
/// indices chosen so far. A branch is cut when even the cheapest completion
/// `m, m+1, ..., m+r-1` overshoots the truncation order, which is sound
/// because the factor at index m contributes nothing below `q^m`.
fn descend(
    g: &[i128],
    remaining: usize,
    m_min: usize,
    s: usize,
    cur: &[i128],
    acc: &mut [i128],
    order: usize,
) {
    let r = remaining;
    let mut m = m_min;
    while s + r * m + r * (r - 1) / 2 <= order {
        if r == 1 {
            convolve_g_into(cur, g, m, acc);
        } else {
            let mut next = vec![0i128; order + 1];
            convolve_g_into(cur, g, m, &mut next);
            descend(g, r - 1, m + 1, s + m, &next, acc, order);
        }
        m += 1;
    }
}

/// `out += cur * G(q^m)`, truncated at the length of `out`.
fn convolve_g_into(cur: &[i128], g: &[i128], m: usize, out: &mut [i128]) {
    let order = out.len() - 1;
    let mut j = 1usize;
    while j * m <= order {
        let c = g[j];
        if c != 0 {
            let e = j * m;
            for i in 0..=(order - e) {
                let x = cur[i];
                if x != 0 {
                    let add = x.checked_mul(c).expect("tuple product overflow");
                    out[i + e] = out[i + e].checked_add(add).expect("tuple sum overflow");
                }
            }
        }
        j += 1;
    }
}

/// The generating product `prod_{m>=1} (1 + Q_m(a,q) x)` with x-degree capped
/// at `t_max`; the coefficient of `x^t` is `U_t(a,q)` and `x^0` carries the
/// `U_0 = 1` convention.
pub fn u_product(a: i64, t_max: i64, order: usize) -> XPoly {
    assert!((-2..=2).contains(&a), "a out of range");
    assert!(t_max >= 0);
    let t_max = t_max as usize;
    let mut cols = vec![QSeries::zero(order); t_max + 1];
    cols[0] = QSeries::one(order);
    if t_max >= 1 {
        for m in 1..=order.max(1) {
            if m > order {
                break;
            }
            let qm = q_m_factor(a, m, order);
            for t in (1..=t_max).rev() {
                let add = cols[t - 1].mul(&qm);
                cols[t] = cols[t].add(&add).expect("shift 0");
            }
        }
    }
    let xp = XPoly::new(cols);
    for c in xp.coeffs_x() {
        assert!(c.is_integral(), "U_t(a,q) must have integer coefficients");
    }
    xp
}

/// The Pochhammer-quotient prefactor of the closed form, i.e. the value of
/// `prod_m 1/((1 + a q^m + q^(2m))(1 - q^m))` in simplified product form.
pub fn cheb_prefactor(a: i64, order: usize) -> QSeries {
    let p = |ae: usize, be: usize| pochhammer_inf(PochhammerSpec::new(ae, be), order);
    match a {
        -2 => p(1, 1).pow(3).invert(),
        2 => Ok(p(1, 1).mul(&p(2, 2).pow(2).invert().expect("constant 1"))),
        1 => p(3, 3).invert(),
        -1 => Ok(p(2, 2)
            .mul(&p(3, 3))
            .mul(&p(1, 1).pow(2).mul(&p(6, 6)).invert().expect("constant 1"))),
        0 => Ok(p(2, 2).mul(&p(1, 1).mul(&p(4, 4)).invert().expect("constant 1"))),
        _ => panic!("a out of range"),
    }
    .expect("constant 1")
}

/// The literal denominator product `prod_{m=1..order} (1 + a q^m + q^(2m))`,
/// used to verify the prefactor simplifications independently.
pub fn denom_product(a: i64, order: usize) -> QSeries {
    let mut acc = vec![Rat::zero(); order + 1];
    acc[0] = Rat::one();
    for m in 1..=order.max(1) {
        if m > order {
            break;
        }
        // Multiply in place by (1 + a q^m + q^(2m)), highest exponents first.
        for i in (0..=order).rev() {
            if acc[i].is_zero() {
                continue;
            }
            let v = acc[i].clone();
            if i + m <= order {
                acc[i + m] += &v * rat(a);
            }
            if i + 2 * m <= order {
                acc[i + 2 * m] += v;
            }
        }
    }
    QSeries::from_coeffs(acc)
}

/// The coefficient `[x^t] to_n((x+a+2)/4)` in the cheapest available form:
/// closed binomial expressions at a = -2, 0, 2, the hypergeometric sum at
/// a = 1 and a = -1.
fn cheb_column(a: i64, n: i64, t: i64) -> Rat {
    match a {
        -2 => {
            sign(n + t) * Rat::from_integer(Int::from(2 * n + 1) * binomial(n + t, 2 * t))
                / rat(2 * t + 1)
        }
        2 => Rat::from_integer(binomial(n + t, 2 * t)),
        0 => {
            let j = (n + t) / 2;
            sign(n + j) * Rat::from_integer(binomial(j, t))
        }
        1 | -1 => cheb_coeff_sum(ChebCoeffQuery::new(n, t, a)),
        _ => panic!("a out of range"),
    }
}

/// `U_t(a,q)` by the closed form: prefactor times
/// `sum_n cheb_column(a,n,t) q^(n(n+1)/2)`, the outer sum cut off once the
/// triangular exponent passes the order.
pub fn u_cheb(p: &MacParams) -> QSeries {
    let &MacParams { a, t, order } = p;
    let mut coeffs = vec![Rat::zero(); order + 1];
    let mut n = 0i64;
    while (n * (n + 1) / 2) as usize <= order {
        coeffs[(n * (n + 1) / 2) as usize] += cheb_column(a, n, t);
        n += 1;
    }
    let series = QSeries::from_coeffs(coeffs).mul(&cheb_prefactor(a, order));
    assert!(series.is_integral(), "U_t(a,q) must have integer coefficients");
    series
}

/// Coefficient `MO(a,t;n)` of `q^n` in `U_t(a,q)`, via the closed-form route
/// (the three-route agreement is established by the cross-route tests, so a
/// single fast route serves lookups).
pub fn mo_coeff(a: i64, t: i64, n: usize) -> Rat {
    let p = MacParams::new(a, t, n).expect("valid parameters");
    if t == 0 {
        return if n == 0 { Rat::one() } else { Rat::zero() };
    }
    u_cheb(&p).cn(n).clone()
}

/// A congruence scan's result: the usual report plus bookkeeping on how many
/// coefficients were inspected and the first nonzero one encountered.
#[derive(Debug, Clone)]
pub struct ScanOutcome {
    pub report: IdentityReport,
    pub checked: usize,
    pub first_nonzero: Option<(i64, usize, Rat)>,
}

/// Verifies `MO(1,t;3n+2) = 0` for every `t <= t_max` and `3n+2 <= order`.
/// A violation is reported with its t in the mismatch's x slot.
pub fn scan_congruence_2mod3(t_max: i64, order: usize) -> ScanOutcome {
    let started = Instant::now();
    let mut checked = 0usize;
    let mut mismatch = None;
    'scan: for t in 0..=t_max.max(0) {
        let series = if t == 0 {
            QSeries::one(order)
        } else {
            u_cheb(&MacParams::new(1, t, order).expect("valid parameters"))
        };
        let mut e = 2usize;
        while e <= order {
            checked += 1;
            if !series.cn(e).is_zero() {
                mismatch = Some(Mismatch {
                    x: Some(t as usize),
                    n: e,
                    lhs: rat_to_string(series.cn(e)),
                    rhs: "0".to_string(),
                });
                break 'scan;
            }
            e += 3;
        }
    }
    ScanOutcome {
        report: IdentityReport::from_mismatch("scan-2mod3", order, mismatch, started),
        checked,
        first_nonzero: None,
    }
}

/// Verifies `MO(1,3;3n+1) = 0 (mod 3)` for every `3n+1 <= order`, and records
/// the first nonzero coefficient it sees along the way.
pub fn scan_congruence_1mod3_mod3(order: usize) -> ScanOutcome {
    let started = Instant::now();
    let series = u_cheb(&MacParams::new(1, 3, order).expect("valid parameters"));
    let mut checked = 0usize;
    let mut mismatch = None;
    let mut first_nonzero = None;
    let mut e = 1usize;
    while e <= order {
        checked += 1;
        let c = series.cn(e);
        if !c.is_zero() && first_nonzero.is_none() {
            first_nonzero = Some((3, e, c.clone()));
        }
        if (c.numer() % Int::from(3)) != Int::zero() {
            mismatch = Some(Mismatch {
                x: Some(3),
                n: e,
                lhs: rat_to_string(c),
                rhs: "0 (mod 3)".to_string(),
            });
            break;
        }
        e += 3;
    }
    ScanOutcome {
        report: IdentityReport::from_mismatch("scan-1mod3-mod3", order, mismatch, started),
        checked,
        first_nonzero,
    }
}

/// Power sums of the factors: `H_r(a,q) = sum_{m>=1} Q_m(a,q)^r`, assembled
/// from one expansion of `G(y)^r` laid down at every stride m.
pub fn h_r_series(a: i64, r: u32, order: usize) -> QSeries {
    assert!(r >= 1, "H_r needs r >= 1");
    let gr = g_series(a, order).pow(r);
    let mut coeffs = vec![Rat::zero(); order + 1];
    let mut m = 1usize;
    while m * (r as usize) <= order {
        let mut j = r as usize;
        while j * m <= order {
            if !gr.cn(j).is_zero() {
                coeffs[j * m] += gr.cn(j);
            }
            j += 1;
        }
        m += 1;
    }
    QSeries::from_coeffs(coeffs)
}
