//! Truncated formal power series in q over exact rationals.
//!
//! A [`QSeries`] holds coefficients `c_0 ..= c_order` of
//! `q^shift * (c_0 + c_1 q + ... + c_order q^order)`. The shift is a
//! non-negative rational whose denominator divides 24; it is `0` for almost
//! everything and only becomes fractional for theta-like prefactors
//! (`q^{1/4}`, `q^{1/8}`, `q^{1/24}`). Whenever an operation produces an
//! integral shift it is renormalized away, so two series that are equal as
//! formal sums compare equal coefficientwise.
//!
//! All arithmetic is exact; truncation order is the only approximation, and
//! every operation states the order of its result. Comparisons are only
//! meaningful up to `min` of the operands' orders.
//!
//! [`XPoly`] layers a polynomial in a marker variable `x` on top, with
//! `QSeries` coefficients. It exists for the generating function
//! `prod_m (1 + Q_m(a,q) x)`, whose coefficient of `x^t` is `U_t(a,q)`.

use crate::rational::{rat, Rat};
use num::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Errors surfaced by series operations. Everything else panics, because it
/// indicates a broken invariant rather than bad input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("shift mismatch: {0} vs {1}")]
    ShiftMismatch(String, String),
    #[error("operation requires integral shift, found {0}")]
    FractionalShift(String),
    #[error("cannot invert a series with zero constant term")]
    NotInvertible,
    #[error("coefficient index {index} exceeds truncation order {order}")]
    OutOfRange { index: usize, order: usize },
    #[error("substitution power must be >= 1")]
    BadPower,
    #[error("invalid shift {0}: must be >= 0 with denominator dividing 24")]
    BadShift(String),
}

#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    shift: Rat,
    coeffs: Vec<Rat>,
}

impl QSeries {
    /// Series from coefficients `c_0 ..= c_n` with shift 0. The truncation
    /// order is `coeffs.len() - 1`; `coeffs` must be non-empty.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> QSeries {
        assert!(!coeffs.is_empty(), "series needs at least the q^0 slot");
        QSeries { shift: Rat::zero(), coeffs }
    }

    /// Series `q^shift * sum c_n q^n`. The shift must be non-negative with
    /// denominator dividing 24, and is renormalized away if integral.
    pub fn with_shift(shift: Rat, coeffs: Vec<Rat>) -> Result<QSeries, SeriesError> {
        assert!(!coeffs.is_empty(), "series needs at least the q^0 slot");
        let den_ok = (rat(24) * &shift).is_integer();
        if shift.is_negative() || !den_ok {
            return Err(SeriesError::BadShift(shift.to_string()));
        }
        let mut s = QSeries { shift, coeffs };
        s.renormalize();
        Ok(s)
    }

    pub fn zero(order: usize) -> QSeries {
        QSeries::from_coeffs(vec![Rat::zero(); order + 1])
    }

    pub fn one(order: usize) -> QSeries {
        QSeries::constant(Rat::one(), order)
    }

    pub fn constant(c: Rat, order: usize) -> QSeries {
        let mut coeffs = vec![Rat::zero(); order + 1];
        coeffs[0] = c;
        QSeries::from_coeffs(coeffs)
    }

    /// The monomial `c * q^e`, truncated at `order`. Requires `e <= order`.
    pub fn monomial(c: Rat, e: usize, order: usize) -> QSeries {
        assert!(e <= order, "monomial exponent {e} beyond order {order}");
        let mut coeffs = vec![Rat::zero(); order + 1];
        coeffs[e] = c;
        QSeries::from_coeffs(coeffs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn shift(&self) -> &Rat {
        &self.shift
    }

    /// Coefficient of `q^(shift + n)`. Fails beyond the truncation order.
    pub fn coefficient(&self, n: usize) -> Result<Rat, SeriesError> {
        self.coeffs
            .get(n)
            .cloned()
            .ok_or(SeriesError::OutOfRange { index: n, order: self.order() })
    }

    /// Coefficient of `q^(shift + n)`, panicking beyond the order. Internal
    /// callers know their bounds; external ones should use `coefficient`.
    pub fn cn(&self, n: usize) -> &Rat {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Drop coefficients beyond `order`. Requires `order <= self.order()`.
    pub fn truncated(&self, order: usize) -> QSeries {
        assert!(order <= self.order(), "cannot extend a series by truncating");
        QSeries { shift: self.shift.clone(), coeffs: self.coeffs[..=order].to_vec() }
    }

    /// Sum of two series with equal shifts. Result order is the min of the
    /// operands' orders.
    pub fn add(&self, other: &QSeries) -> Result<QSeries, SeriesError> {
        if self.shift != other.shift {
            return Err(SeriesError::ShiftMismatch(
                self.shift.to_string(),
                other.shift.to_string(),
            ));
        }
        let n = self.coeffs.len().min(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        Ok(QSeries { shift: self.shift.clone(), coeffs })
    }

    pub fn sub(&self, other: &QSeries) -> Result<QSeries, SeriesError> {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> QSeries {
        QSeries {
            shift: self.shift.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> QSeries {
        if c.is_zero() {
            return QSeries { shift: self.shift.clone(), coeffs: vec![Rat::zero(); self.coeffs.len()] };
        }
        QSeries {
            shift: self.shift.clone(),
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Add a constant. Requires shift 0, since the constant lives at `q^0`.
    pub fn add_scalar(&self, c: &Rat) -> Result<QSeries, SeriesError> {
        if !self.shift.is_zero() {
            return Err(SeriesError::FractionalShift(self.shift.to_string()));
        }
        let mut coeffs = self.coeffs.clone();
        coeffs[0] += c;
        Ok(QSeries { shift: self.shift.clone(), coeffs })
    }

    /// Cauchy product. Shifts add and are renormalized if integral. Result
    /// order is the min of the operands' orders.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut coeffs = vec![Rat::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        let mut out = QSeries { shift: &self.shift + &other.shift, coeffs };
        out.renormalize();
        out
    }

    /// Integer power by repeated squaring. `pow(0)` is the constant 1.
    pub fn pow(&self, e: u32) -> QSeries {
        let mut result = QSeries::one(self.order());
        if e == 0 {
            return result;
        }
        let mut base = self.clone();
        let mut e = e;
        loop {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e == 0 {
                return result;
            }
            base = base.mul(&base);
        }
    }

    /// Multiplicative inverse. Requires shift 0 and nonzero constant term.
    pub fn invert(&self) -> Result<QSeries, SeriesError> {
        if !self.shift.is_zero() {
            return Err(SeriesError::FractionalShift(self.shift.to_string()));
        }
        if self.coeffs[0].is_zero() {
            return Err(SeriesError::NotInvertible);
        }
        let n = self.coeffs.len();
        let a0_inv = self.coeffs[0].recip();
        let mut inv = vec![Rat::zero(); n];
        inv[0] = a0_inv.clone();
        for m in 1..n {
            let mut acc = Rat::zero();
            for k in 1..=m {
                if self.coeffs[k].is_zero() || inv[m - k].is_zero() {
                    continue;
                }
                acc += &self.coeffs[k] * &inv[m - k];
            }
            if !acc.is_zero() {
                inv[m] = -(acc * &a0_inv);
            }
        }
        Ok(QSeries { shift: Rat::zero(), coeffs: inv })
    }

    /// The operator `D = q d/dq`: multiplies the coefficient of `q^e` by `e`,
    /// including the fractional part of the shift.
    pub fn derive(&self) -> QSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| (&self.shift + rat(n as i64)) * c)
            .collect();
        QSeries { shift: self.shift.clone(), coeffs }
    }

    /// Substitute `q -> q^k` for `k >= 1`. Requires shift 0. The result keeps
    /// the same truncation order, which is correct but wastes nothing: the
    /// input only needed order `order / k` to fill it.
    pub fn substitute_power(&self, k: usize) -> Result<QSeries, SeriesError> {
        if k == 0 {
            return Err(SeriesError::BadPower);
        }
        if !self.shift.is_zero() {
            return Err(SeriesError::FractionalShift(self.shift.to_string()));
        }
        let order = self.order();
        let mut coeffs = vec![Rat::zero(); order + 1];
        for (n, c) in self.coeffs.iter().enumerate() {
            let e = n * k;
            if e > order {
                break;
            }
            coeffs[e] = c.clone();
        }
        Ok(QSeries { shift: Rat::zero(), coeffs })
    }

    /// First exponent (relative to the shift) where the two series differ,
    /// scanning up to the smaller order. `None` means they agree that far.
    /// Shifts must match for the comparison to mean anything; mismatched
    /// shifts report a difference at index 0.
    pub fn first_mismatch(&self, other: &QSeries) -> Option<(usize, Rat, Rat)> {
        if self.shift != other.shift {
            return Some((0, self.coeffs[0].clone(), other.coeffs[0].clone()));
        }
        let n = self.coeffs.len().min(other.coeffs.len());
        for i in 0..n {
            if self.coeffs[i] != other.coeffs[i] {
                return Some((i, self.coeffs[i].clone(), other.coeffs[i].clone()));
            }
        }
        None
    }

    /// Equal through order `n` (inclusive). Panics if either series is too
    /// short to decide.
    pub fn agrees_to(&self, other: &QSeries, n: usize) -> bool {
        assert!(self.order() >= n && other.order() >= n, "series too short to compare to order {n}");
        match self.first_mismatch(other) {
            None => true,
            Some((i, _, _)) => i > n,
        }
    }

    fn renormalize(&mut self) {
        if self.shift.is_zero() {
            return;
        }
        if !self.shift.is_integer() {
            return;
        }
        let s = self.shift.to_integer().to_usize().expect("non-negative shift");
        let order = self.order();
        let mut coeffs = vec![Rat::zero(); order + 1];
        for (n, c) in self.coeffs.iter().enumerate() {
            if s + n > order {
                break;
            }
            coeffs[s + n] = c.clone();
        }
        self.shift = Rat::zero();
        self.coeffs = coeffs;
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries(shift {}; order {};", self.shift, self.order())?;
        let mut shown = 0;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            write!(f, " {c}*q^{n}")?;
            shown += 1;
            if shown >= 8 {
                write!(f, " ...")?;
                break;
            }
        }
        write!(f, ")")
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    /// Panicking sugar for equal-shift addition; the checked form is
    /// [`QSeries::add`].
    fn add(self, rhs: &QSeries) -> QSeries {
        QSeries::add(self, rhs).expect("shift mismatch in +")
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        QSeries::sub(self, rhs).expect("shift mismatch in -")
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        QSeries::mul(self, rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        self.negate()
    }
}

/// Polynomial in a marker variable `x` with `QSeries` coefficients, all of
/// shift 0 and a common truncation order. `coeffs[t]` is the coefficient of
/// `x^t`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct XPoly {
    coeffs: Vec<QSeries>,
}

impl XPoly {
    pub fn new(coeffs: Vec<QSeries>) -> XPoly {
        assert!(!coeffs.is_empty(), "x-polynomial needs at least the x^0 slot");
        let order = coeffs[0].order();
        for c in &coeffs {
            assert!(c.shift().is_zero(), "x-polynomial coefficients must have shift 0");
            assert_eq!(c.order(), order, "x-polynomial coefficients must share one order");
        }
        XPoly { coeffs }
    }

    /// The constant polynomial 1 at the given series order.
    pub fn one(order: usize) -> XPoly {
        XPoly::new(vec![QSeries::one(order)])
    }

    pub fn xdeg(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn order(&self) -> usize {
        self.coeffs[0].order()
    }

    /// Coefficient of `x^t`; zero (at the right order) beyond the degree.
    pub fn coeff_x(&self, t: usize) -> QSeries {
        self.coeffs.get(t).cloned().unwrap_or_else(|| QSeries::zero(self.order()))
    }

    pub fn coeffs_x(&self) -> &[QSeries] {
        &self.coeffs
    }

    pub fn add(&self, other: &XPoly) -> XPoly {
        let order = self.order().min(other.order());
        let deg = self.xdeg().max(other.xdeg());
        let coeffs = (0..=deg)
            .map(|t| {
                self.coeff_x(t)
                    .truncated(order)
                    .add(&other.coeff_x(t).truncated(order))
                    .expect("shift 0")
            })
            .collect();
        XPoly::new(coeffs)
    }

    /// Product truncated at x-degree `cap`. Series order is the min of the
    /// operands' orders.
    pub fn mul_capped(&self, other: &XPoly, cap: usize) -> XPoly {
        let order = self.order().min(other.order());
        let deg = (self.xdeg() + other.xdeg()).min(cap);
        let mut coeffs = vec![QSeries::zero(order); deg + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > deg {
                break;
            }
            if a.is_zero() {
                continue;
            }
            let a = a.truncated(order);
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > deg {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(&b.truncated(order))).expect("shift 0");
            }
        }
        XPoly::new(coeffs)
    }

    /// Multiply every x-coefficient by one q-series.
    pub fn scale_series(&self, s: &QSeries) -> XPoly {
        let order = self.order().min(s.order());
        XPoly::new(self.coeffs.iter().map(|c| c.truncated(order).mul(&s.truncated(order))).collect())
    }

    /// Substitute `x -> -x`.
    pub fn negate_x(&self) -> XPoly {
        XPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(t, c)| if t % 2 == 1 { c.negate() } else { c.clone() })
                .collect(),
        )
    }

    /// Substitute `q -> q^k` in every coefficient.
    pub fn substitute_power_q(&self, k: usize) -> Result<XPoly, SeriesError> {
        let coeffs: Result<Vec<_>, _> = self.coeffs.iter().map(|c| c.substitute_power(k)).collect();
        Ok(XPoly::new(coeffs?))
    }

    /// First disagreement, scanning x-degrees in increasing order and within
    /// each degree the q-exponents in increasing order. Returns
    /// `(x_degree, q_exponent, lhs, rhs)`.
    pub fn first_mismatch(&self, other: &XPoly) -> Option<(usize, usize, Rat, Rat)> {
        let deg = self.xdeg().max(other.xdeg());
        let order = self.order().min(other.order());
        for t in 0..=deg {
            let a = self.coeff_x(t).truncated(order);
            let b = other.coeff_x(t).truncated(order);
            if let Some((n, x, y)) = a.first_mismatch(&b) {
                return Some((t, n, x, y));
            }
        }
        None
    }
}
