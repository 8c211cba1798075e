//! Wilf-Zeilberger verification for the binomial identities behind the
//! closed forms: an explicit certificate pair checked on an exact grid, a
//! direct-summation check for the piecewise identity whose certificate is
//! not published, and a JSON hook for supplying such a certificate later.

use crate::chebyshev::{c_n_closed, cheb_coeff_sum, ChebCoeffQuery};
use crate::identities::{IdentityReport, Mismatch};
use crate::rational::{binomial, factorial, int_pow, rat_from_str, rat_to_string, sign, Int, Rat};
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use std::time::Instant;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WzError {
    #[error("certificate denominator vanishes at n={n}, k={k} where the summand is nonzero")]
    DenominatorVanishes { n: i64, k: i64 },
    #[error("malformed certificate: {0}")]
    BadCertificate(String),
}

/// One WZ verification grid: the summand f and certificate g as exact
/// evaluators in (n, k), both zero outside finite k-support for each n.
pub struct WzGridSpec<'a> {
    pub t: i64,
    pub n_max: i64,
    pub summand: &'a dyn Fn(i64, i64) -> Rat,
    pub certificate: &'a dyn Fn(i64, i64) -> Rat,
}

/// `f_1(n,k) = (-1)^(n+k) (2n+1)/(n+k+1) binom(n+k+1,2k+1) binom(k,t)
/// 4^(k-t) / binom(n+t,2t)`; zero outside `t <= k <= n`.
pub fn wz1_f(t: i64, n: i64, k: i64) -> Rat {
    assert!(n >= t, "f_1 needs n >= t so the fixed denominator is nonzero");
    if k < t || k > n {
        return Rat::zero();
    }
    sign(n + k)
        * Rat::from_integer(
            Int::from(2 * n + 1) * binomial(n + k + 1, 2 * k + 1) * binomial(k, t)
                * int_pow(4, (k - t) as u32),
        )
        / Rat::from_integer(Int::from(n + k + 1) * binomial(n + t, 2 * t))
}

/// The certificate returned by Zeilberger's algorithm, as the fully
/// cancelled expression
/// `g_1(n,k) = (-1)^(n+k) 2(n+1)(k-t) (n+k)!/((2k)!(n-k+1)!) binom(k,t)
/// 4^(k-t) / ((n+t+1) binom(n+t,2t))`.
/// The cancellation matters at k = n+1, where the textbook form
/// `f_1 * rational` is 0 * infinity; here it evaluates cleanly. Support is
/// `t <= k <= n+1` (the factor k-t kills k = t).
pub fn wz1_g(t: i64, n: i64, k: i64) -> Rat {
    assert!(n >= t, "g_1 needs n >= t so the fixed denominator is nonzero");
    if k < t || k > n + 1 {
        return Rat::zero();
    }
    sign(n + k)
        * Rat::from_integer(
            Int::from(2 * (n + 1) * (k - t))
                * factorial(n + k)
                * binomial(k, t)
                * int_pow(4, (k - t) as u32),
        )
        / Rat::from_integer(
            factorial(2 * k)
                * factorial(n - k + 1)
                * Int::from(n + t + 1)
                * binomial(n + t, 2 * t),
        )
}

/// Verifies the WZ pair relation `f(n+1,k) - f(n,k) == g(n,k+1) - g(n,k)`
/// on `t <= n <= n_max`, `0 <= k <= n+3` (so the zero-extension beyond
/// support is exercised), plus `sum_k f(n,k) == 1` for each n. A violation
/// reports k in the mismatch's x slot.
pub fn wz1_check(t: i64, n_max: i64) -> IdentityReport {
    assert!(t >= 0 && n_max >= t);
    let started = Instant::now();
    let spec = WzGridSpec {
        t,
        n_max,
        summand: &move |n, k| wz1_f(t, n, k),
        certificate: &move |n, k| wz1_g(t, n, k),
    };
    let mut mismatch = None;
    'grid: for n in spec.t..=spec.n_max {
        for k in 0..=(n + 3) {
            let lhs = (spec.summand)(n + 1, k) - (spec.summand)(n, k);
            let rhs = (spec.certificate)(n, k + 1) - (spec.certificate)(n, k);
            if lhs != rhs {
                mismatch = Some(Mismatch {
                    x: Some(k as usize),
                    n: n as usize,
                    lhs: rat_to_string(&lhs),
                    rhs: rat_to_string(&rhs),
                });
                break 'grid;
            }
        }
        let total: Rat = (0..=n).map(|k| (spec.summand)(n, k)).sum();
        if !total.is_one() {
            mismatch = Some(Mismatch {
                x: None,
                n: n as usize,
                lhs: rat_to_string(&total),
                rhs: "1".to_string(),
            });
            break 'grid;
        }
    }
    IdentityReport::from_mismatch(&format!("wz1-t{t}"), n_max as usize, mismatch, started)
}

/// Direct exact summation for the piecewise identity: the left side
/// `(2n+1) sum_k (-1)^(n+k) binom(n+k+1,2k+1)/(n+k+1) binom(k,2) 3^(k-2)`
/// against the closed three-case form, for every n <= n_max.
pub fn wz2_direct_check(n_max: i64) -> IdentityReport {
    assert!(n_max >= 0);
    let started = Instant::now();
    let values = (0..=n_max).map(|n| {
        (
            n as usize,
            cheb_coeff_sum(ChebCoeffQuery::new(n, 2, 1)),
            c_n_closed(n),
        )
    });
    IdentityReport::from_values("wz2-direct", n_max as usize, values, started)
}

/// The normalized summand for the `n -> 3n` case:
/// `f_2(n,k) = (-1)^(k-1) (6n+1)/(n(3n+1)(3n+k+1)) binom(3n+k+1,2k+1)
/// binom(k,2) 3^(k-2)`; zero outside `2 <= k <= 3n`, defined for n >= 1.
pub fn wz2_f(n: i64, k: i64) -> Rat {
    assert!(n >= 1, "the n(3n+1) prefactor needs n >= 1");
    if k < 2 || k > 3 * n {
        return Rat::zero();
    }
    sign(k - 1)
        * Rat::from_integer(
            Int::from(6 * n + 1)
                * binomial(3 * n + k + 1, 2 * k + 1)
                * binomial(k, 2)
                * int_pow(3, (k - 2) as u32),
        )
        / Rat::from_integer(Int::from(n) * Int::from(3 * n + 1) * Int::from(3 * n + k + 1))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PolyTerm {
    n_exp: u32,
    k_exp: u32,
    coeff: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct BivariatePolyWire {
    terms: Vec<PolyTerm>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CertificateWire {
    numerator: BivariatePolyWire,
    denominator: BivariatePolyWire,
}

/// A rational function R(n,k) given by integer-coefficient polynomials in
/// n and k, the interchange format for externally produced certificates.
#[derive(Debug, Clone)]
pub struct Certificate {
    numerator: Vec<(u32, u32, Rat)>,
    denominator: Vec<(u32, u32, Rat)>,
}

impl Certificate {
    pub fn from_json(json: &str) -> Result<Certificate, WzError> {
        let wire: CertificateWire =
            serde_json::from_str(json).map_err(|e| WzError::BadCertificate(e.to_string()))?;
        let conv = |p: &BivariatePolyWire| -> Result<Vec<(u32, u32, Rat)>, WzError> {
            p.terms
                .iter()
                .map(|t| {
                    let c = rat_from_str(&t.coeff)
                        .ok_or_else(|| WzError::BadCertificate(format!("bad coefficient {:?}", t.coeff)))?;
                    Ok((t.n_exp, t.k_exp, c))
                })
                .collect()
        };
        let numerator = conv(&wire.numerator)?;
        let denominator = conv(&wire.denominator)?;
        if denominator.is_empty() {
            return Err(WzError::BadCertificate("empty denominator".to_string()));
        }
        Ok(Certificate { numerator, denominator })
    }

    pub fn to_json(&self) -> String {
        let wire = CertificateWire {
            numerator: BivariatePolyWire {
                terms: self
                    .numerator
                    .iter()
                    .map(|(n, k, c)| PolyTerm { n_exp: *n, k_exp: *k, coeff: rat_to_string(c) })
                    .collect(),
            },
            denominator: BivariatePolyWire {
                terms: self
                    .denominator
                    .iter()
                    .map(|(n, k, c)| PolyTerm { n_exp: *n, k_exp: *k, coeff: rat_to_string(c) })
                    .collect(),
            },
        };
        serde_json::to_string_pretty(&wire).expect("serializable")
    }

    fn poly_eval(poly: &[(u32, u32, Rat)], n: i64, k: i64) -> Rat {
        poly.iter()
            .map(|(ne, ke, c)| {
                c * Rat::from_integer(int_pow(n, *ne) * int_pow(k, *ke))
            })
            .sum()
    }

    /// `Some(R(n,k))`, or `None` when the denominator vanishes there.
    pub fn eval(&self, n: i64, k: i64) -> Option<Rat> {
        let den = Certificate::poly_eval(&self.denominator, n, k);
        if den.is_zero() {
            return None;
        }
        Some(Certificate::poly_eval(&self.numerator, n, k) / den)
    }
}

/// Verifies a certificate R against a summand f on `first_n <= n < n_max`,
/// with per-n support bound `k_max(n)`. For each n the certificate claims
/// `g(n,k) := R(n,k) f(n,k)` satisfies the pair relation with g(n,0) = 0;
/// equivalently `g(n,k)` must equal the running sum
/// `sum_(j<k) (f(n+1,j) - f(n,j))` at every k, and the full sum over k must
/// vanish. Where R's denominator vanishes: the cell is skipped when
/// f(n,k) = 0 (a removable 0 * infinity, the running sum carries the value),
/// and is an unremovable-pole error otherwise.
pub fn check_certificate(
    id: &str,
    summand: &dyn Fn(i64, i64) -> Rat,
    cert: &Certificate,
    first_n: i64,
    n_max: i64,
    k_max: &dyn Fn(i64) -> i64,
) -> Result<IdentityReport, WzError> {
    let started = Instant::now();
    let mut mismatch = None;
    'grid: for n in first_n..n_max {
        let mut running = Rat::zero();
        for k in 0..=k_max(n) {
            let f_here = summand(n, k);
            match cert.eval(n, k) {
                Some(r) => {
                    let g = r * &f_here;
                    if g != running {
                        mismatch = Some(Mismatch {
                            x: Some(k as usize),
                            n: n as usize,
                            lhs: rat_to_string(&g),
                            rhs: rat_to_string(&running),
                        });
                        break 'grid;
                    }
                }
                None if f_here.is_zero() => {}
                None => return Err(WzError::DenominatorVanishes { n, k }),
            }
            running += summand(n + 1, k) - f_here;
        }
        if !running.is_zero() {
            mismatch = Some(Mismatch {
                x: None,
                n: n as usize,
                lhs: rat_to_string(&running),
                rhs: "0".to_string(),
            });
            break 'grid;
        }
    }
    Ok(IdentityReport::from_mismatch(id, n_max as usize, mismatch, started))
}

/// Plug-in point for an externally supplied WZ2 certificate: checks the
/// JSON-described R(n,k) against the `n -> 3n` summand `f_2`.
pub fn check_wz2_certificate(json: &str, n_max: i64) -> Result<IdentityReport, WzError> {
    let cert = Certificate::from_json(json)?;
    check_certificate("wz2-certificate", &wz2_f, &cert, 1, n_max, &|n| 3 * n + 4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};

    #[test]
    fn summand_support_and_base_point() {
        assert_eq!(wz1_f(1, 5, 0), Rat::zero());
        assert_eq!(wz1_f(1, 5, 6), Rat::zero());
        // Single surviving term at n = t.
        for t in 0..=4 {
            assert_eq!(wz1_f(t, t, t), Rat::one(), "t={t}");
            let total: Rat = (0..=t).map(|k| wz1_f(t, t, k)).sum();
            assert_eq!(total, Rat::one(), "t={t}");
        }
    }

    #[test]
    fn certificate_boundary_values() {
        // g vanishes at the left edge of support and is nonzero at k = n+1,
        // exactly where the uncancelled form would be 0 * infinity.
        assert_eq!(wz1_g(1, 4, 1), Rat::zero());
        assert_eq!(wz1_g(0, 0, 1), rat(-4));
        assert!(!wz1_g(1, 4, 5).is_zero());
        assert_eq!(wz1_g(1, 4, 6), Rat::zero());
        // Boundary relation at k = n+1: f(n+1, n+1) == -g(n, n+1).
        for t in 0..=3 {
            for n in t..=12 {
                assert_eq!(wz1_f(t, n + 1, n + 1), -wz1_g(t, n, n + 1), "t={t} n={n}");
            }
        }
    }

    #[test]
    fn pair_relation_grids() {
        for t in 0..=3 {
            let report = wz1_check(t, 40);
            assert!(report.passed(), "t={t}: {:?}", report.first_mismatch);
        }
    }

    #[test]
    fn telescoping_differences_vanish() {
        for t in 0..=3i64 {
            for n in t..=25 {
                let total: Rat = (0..=n + 1).map(|k| wz1_f(t, n + 1, k) - wz1_f(t, n, k)).sum();
                assert!(total.is_zero(), "t={t} n={n}");
            }
        }
    }

    #[test]
    fn direct_summation_cases() {
        assert_eq!(cheb_coeff_sum(ChebCoeffQuery::new(3, 2, 1)), rat(2));
        assert_eq!(cheb_coeff_sum(ChebCoeffQuery::new(4, 2, 1)), rat(0));
        let report = wz2_direct_check(100);
        assert!(report.passed(), "{:?}", report.first_mismatch);
    }

    #[test]
    fn normalized_summand_is_constant() {
        // The n -> 3n normalization sums to 1/2 for every n, consistent
        // with the closed form at n = 3j:
        // sum_k f_2 = |c_(3n)| / (n(3n+1)) = 1/2.
        for n in 1..=50i64 {
            let total: Rat = (0..=3 * n).map(|k| wz2_f(n, k)).sum();
            assert_eq!(total, frac(1, 2), "n={n}");
        }
    }

    fn wz1_t1_certificate_json() -> String {
        // R(n,k) = 2(n+1)(k-1)(2k+1) / ((2n+1)(n+2)(n-k+1)), the t = 1
        // instance of the published certificate ratio g_1/f_1.
        r#"{
            "numerator": {"terms": [
                {"n_exp": 1, "k_exp": 2, "coeff": "4"},
                {"n_exp": 1, "k_exp": 1, "coeff": "-2"},
                {"n_exp": 1, "k_exp": 0, "coeff": "-2"},
                {"n_exp": 0, "k_exp": 2, "coeff": "4"},
                {"n_exp": 0, "k_exp": 1, "coeff": "-2"},
                {"n_exp": 0, "k_exp": 0, "coeff": "-2"}
            ]},
            "denominator": {"terms": [
                {"n_exp": 3, "k_exp": 0, "coeff": "2"},
                {"n_exp": 2, "k_exp": 0, "coeff": "7"},
                {"n_exp": 2, "k_exp": 1, "coeff": "-2"},
                {"n_exp": 1, "k_exp": 0, "coeff": "7"},
                {"n_exp": 1, "k_exp": 1, "coeff": "-5"},
                {"n_exp": 0, "k_exp": 1, "coeff": "-2"},
                {"n_exp": 0, "k_exp": 0, "coeff": "2"}
            ]}
        }"#
        .to_string()
    }

    #[test]
    fn certificate_round_trip_and_eval() {
        let cert = Certificate::from_json(&wz1_t1_certificate_json()).unwrap();
        let back = Certificate::from_json(&cert.to_json()).unwrap();
        // R(2,2) = 2*3*1*5 / (5*4*1) = 3/2.
        assert_eq!(cert.eval(2, 2), Some(frac(3, 2)));
        assert_eq!(back.eval(2, 2), Some(frac(3, 2)));
        // Pole along k = n+1.
        assert_eq!(cert.eval(4, 5), None);
        assert!(Certificate::from_json("{}").is_err());
        assert!(matches!(
            Certificate::from_json(
                r#"{"numerator":{"terms":[]},"denominator":{"terms":[]}}"#
            ),
            Err(WzError::BadCertificate(_))
        ));
    }

    #[test]
    fn certificate_grid_accepts_the_real_pair() {
        let cert = Certificate::from_json(&wz1_t1_certificate_json()).unwrap();
        let report =
            check_certificate("wz1-t1-json", &|n, k| wz1_f(1, n, k), &cert, 1, 25, &|n| n + 3)
                .unwrap();
        assert!(report.passed(), "{:?}", report.first_mismatch);
    }

    #[test]
    fn certificate_grid_rejects_wrong_ratio() {
        // R = 1 is not a certificate for f_1; the grid must fail, not error.
        let cert = Certificate::from_json(
            r#"{"numerator":{"terms":[{"n_exp":0,"k_exp":0,"coeff":"1"}]},
                "denominator":{"terms":[{"n_exp":0,"k_exp":0,"coeff":"1"}]}}"#,
        )
        .unwrap();
        let report =
            check_certificate("wz1-t1-wrong", &|n, k| wz1_f(1, n, k), &cert, 1, 10, &|n| n + 3)
                .unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn certificate_unremovable_pole_is_an_error() {
        // Denominator n + k - 3 vanishes at (1, 2), the first cell where
        // f_2 is nonzero, so the pole is hit before any value mismatch.
        let cert = Certificate::from_json(
            r#"{"numerator":{"terms":[{"n_exp":0,"k_exp":0,"coeff":"1"}]},
                "denominator":{"terms":[
                    {"n_exp":1,"k_exp":0,"coeff":"1"},
                    {"n_exp":0,"k_exp":1,"coeff":"1"},
                    {"n_exp":0,"k_exp":0,"coeff":"-3"}]}}"#,
        )
        .unwrap();
        let err = check_wz2_certificate(&cert.to_json(), 10).unwrap_err();
        assert_eq!(err, WzError::DenominatorVanishes { n: 1, k: 2 });
    }
}
