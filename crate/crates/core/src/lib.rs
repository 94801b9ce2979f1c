//! Exact arithmetic in the Hurwitz series ring `H_R[[t]]` at finite
//! precision.
//!
//! Coefficients live in the integers, the rationals or `Z/mZ`
//! ([`ring`]). A [`HurwitzSeries`] stores `a_0, ..., a_{N-1}` with `a_n` the
//! coefficient of `t^n / n!`, multiplied by binomial convolution.
//!
//! - [`bell`]: ordinary Bell polynomials, the Invert transform and the
//!   closed-form series inverse.
//! - [`transforms`]: alternating sign, binomial interpolated, Boustrophedon,
//!   Stirling, and formal `exp`/`log`.
//! - [`br`]: the subgroup `B_R = {a : E(a) = a^{-1}}`, its reconstruction
//!   from odd or even terms, and the autoconvolution dynamics.
//! - [`verify`]: seeded randomized property suites.
//! - [`format`], [`pipeline`]: the file format and step pipelines used by the
//!   command-line tool.

pub mod bell;
pub mod br;
pub mod error;
pub mod format;
pub mod oracle;
pub mod par;
pub mod pipeline;
pub mod ring;
pub mod series;
pub mod transforms;
pub mod triangle;
pub mod verify;

pub use error::{Error, Result};
pub use par::Execution;
pub use ring::{Modulus, Ring, RingValue};
pub use series::{DeltaValue, HurwitzSeries};
