use thiserror::Error;

/// Errors raised by the counting routines.
///
/// Infeasible parameter combinations are not errors: they count zero
/// configurations. These variants cover malformed inputs and internal
/// consistency failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("multinomial parts sum to {sum}, expected {n}")]
    PartsMismatch { n: usize, sum: usize },

    #[error("alternating sum for {{{n} brace {k}}} is not divisible by {k}!")]
    NotDivisible { n: usize, k: usize },

    #[error("value is not an integer: {0}")]
    NotIntegral(&'static str),

    #[error("r-Stirling number needs r <= n (got n = {n}, r = {r})")]
    PrefixTooLong { n: usize, r: usize },

    #[error("r-Stirling identity needs r <= k <= n (got n = {n}, k = {k}, r = {r})")]
    RStirlingRange { n: usize, k: usize, r: usize },

    #[error("invalid size band: lower bound {lo}, upper bound {hi:?}")]
    InvalidBand { lo: usize, hi: Option<usize> },

    #[error("cell specification needs at least one label")]
    NoLabels,

    #[error("cell specification has {counts} counts but {flags} emptiness flags")]
    PolicyLength { counts: usize, flags: usize },

    #[error("strict cell specification has no cells")]
    NoCells,

    #[error("label {0} may be empty; use the relaxed count")]
    RelaxedLabel(usize),

    #[error("algorithms disagree: {0}")]
    Disagreement(&'static str),

    #[error("block-size class contains 0")]
    EmptyBlockClass,

    #[error("inner series has a non-zero constant term")]
    NonZeroConstant,

    #[error("coefficient {n} requested from a series truncated at order {order}")]
    BeyondOrder { n: usize, order: usize },

    #[error("n! [x^{n}] is not a non-negative integer")]
    NotACount { n: usize },

    #[error("oracle query with n = {n} exceeds the cap {cap}")]
    AboveCap { n: usize, cap: usize },

    #[error("distinct prefix {prefix} longer than n = {n}")]
    PrefixBeyondN { n: usize, prefix: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
