use thiserror::Error;

/// Errors raised while building or evaluating superoscillation specs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("polynomial coefficients must be finite (index {index} is {value})")]
    NonFiniteCoefficient { index: usize, value: f64 },

    #[error("polynomial degree {degree} exceeds the supported maximum of {max}")]
    DegreeTooHigh { degree: usize, max: usize },

    #[error("least-squares design is rank deficient: {reason}")]
    RankDeficient { reason: String },

    #[error("sample t = {t} lies outside the fit interval (-{a}, {a})")]
    SampleOutsideInterval { t: f64, a: f64 },

    #[error("sinc-power envelope needs m >= 2, got {m}")]
    InvalidSincPower { m: usize },

    #[error("derivative order {n} exceeds the envelope's admissible maximum {max}")]
    DerivativeOrder { n: usize, max: usize },

    #[error(
        "polynomial of degree {degree} is not admissible with an envelope of max order {max_order}; \
         use sinc_power(m) with m >= {required_m} (m = {suggested_m} decays faster) or the bump envelope"
    )]
    Inadmissible {
        degree: usize,
        max_order: usize,
        required_m: usize,
        suggested_m: usize,
    },

    #[error("finite-difference stencil [{lo}, {hi}] crosses the breakpoint {breakpoint}")]
    StencilCrossesBreakpoint { lo: f64, hi: f64, breakpoint: f64 },

    #[error("no superoscillation evidence: found {zeros} zero(s) in the interval, need at least 2")]
    NoSuperoscillationEvidence { zeros: usize },

    #[error("dilation values must be >= 1 and sorted ascending")]
    InvalidDilations,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
