//! Exact q-series engine for MacMahon-type sums of divisors.
//!
//! The central object is `U_t(a, q)`, the generating function
//!
//! ```text
//! U_t(a, q) = sum over 1 <= n_1 < ... < n_t of
//!             q^(n_1 + ... + n_t) / prod_k (1 + a q^(n_k) + q^(2 n_k))
//! ```
//!
//! for integer parameter `a` in `{-2, -1, 0, 1, 2}`. The crate computes it by
//! several independent routes (direct enumeration, an incremental product
//! over a marker variable, and closed forms driven by Chebyshev-like
//! coefficient polynomials), and ships a registry of identities,
//! congruences and recurrences relating these series to eta and theta
//! functions, Eisenstein series and quasimodular forms. Everything is exact:
//! coefficients are big rationals and a check either matches through its
//! stated order or reports the first mismatching exponent.

pub mod chebyshev;
pub mod cli;
pub mod etatheta;
pub mod identities;
pub mod macmahon;
pub mod partitions;
pub mod quasimodular;
pub mod rational;
pub mod series;
pub mod wz;

pub use cli::run;
