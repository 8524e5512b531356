use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("floating-point overflow evaluating {what}")]
    Overflow { what: &'static str },

    #[error("hypergeometric denominator (c)_k vanishes at k = {index}")]
    DegenerateDenominator { index: usize },

    #[error("no bound states for delta = {delta} (need delta > 1/2)")]
    NoBoundStates { delta: f64 },

    #[error("level {n} is outside the bound spectrum ({num_levels} levels)")]
    IndexOutOfSpectrum { n: usize, num_levels: usize },

    #[error("wavefunction tail {tail:e} (relative to peak) exceeds threshold; widen the grid")]
    NonConvergentTail { tail: f64 },

    #[error("level-set truncation dropped probability mass {loss:e} > bound {bound:e}")]
    TruncationTooLarge { loss: f64, bound: f64 },

    #[error("numerical breakdown: {0}")]
    NumericalBreakdown(String),

    #[error("cycle is not operating as an engine")]
    NotEngineRegime,

    #[error("cycle is not operating as a refrigerator")]
    NotRefrigeratorRegime,

    #[error("metric is undefined on every grid cell")]
    MetricUndefinedEverywhere,

    #[error("i/o failure on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Short stable tag used in sweep artifacts.
    pub fn tag(&self) -> &'static str {
        match self {
            Error::InvalidParameter { .. } => "invalid_parameter",
            Error::Overflow { .. } => "overflow",
            Error::DegenerateDenominator { .. } => "degenerate_denominator",
            Error::NoBoundStates { .. } => "no_bound_states",
            Error::IndexOutOfSpectrum { .. } => "index_out_of_spectrum",
            Error::NonConvergentTail { .. } => "non_convergent_tail",
            Error::TruncationTooLarge { .. } => "truncation_too_large",
            Error::NumericalBreakdown(_) => "numerical_breakdown",
            Error::NotEngineRegime => "not_engine_regime",
            Error::NotRefrigeratorRegime => "not_refrigerator_regime",
            Error::MetricUndefinedEverywhere => "metric_undefined_everywhere",
            Error::Io { .. } => "io",
        }
    }

    /// True for errors caused by bad user input rather than numerics.
    pub fn is_invalid_input(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter { .. }
                | Error::NoBoundStates { .. }
                | Error::IndexOutOfSpectrum { .. }
        )
    }

    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
