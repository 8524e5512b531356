//! Quantum Otto thermal machine with a q-deformed modified Pöschl–Teller
//! working substance.
//!
//! The numerics are generic over the floating-point scalar (`f32`/`f64`);
//! the aliases at the bottom of this file fix the scalar to `f64`, which is
//! what the sweep driver and the command-line tool use.
//!
//! Units are natural throughout: ħ = μ = k_B = 1.

// `!(a < b)` is used on purpose so that NaN inputs fail validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod deformed_math;
mod error;
pub mod otto_cycle;
pub mod potential_spectrum;
mod scalar;
pub mod sweep;
pub mod thermo;

pub use error::{Error, Result};
pub use scalar::Real;

pub use deformed_math::{
    cosh_q, dawson, erf, erfc, erfi, erfi_scaled, hyp2f1_poly, sinh_q, tanh_q, DeformParam,
};
pub use otto_cycle::{
    classify_regime, CycleConfig, CycleOptions, CycleResult, Method, ReducedCycleParams, Regime,
};
pub use potential_spectrum::{
    n_max, normalize, potential, schrodinger_residual, spectrum, wavefunction, Eigenfunction,
    GridSpec, PotentialParams, ReducedVariables, Spectrum,
};

pub use sweep::{emit, find_optimum, run_sweep, Metric, OutputFormat, SweepGrid, SweepSpec};
pub use thermo::{partition_closed, partition_sum, thermal_state, ThermalState};

/// Double-precision working-substance parameters.
pub type Params = PotentialParams<f64>;
/// Double-precision bound-state ladder.
pub type Spectrum64 = Spectrum<f64>;
/// Double-precision thermal state.
pub type ThermalState64 = ThermalState<f64>;
/// Double-precision cycle configuration.
pub type Cycle = CycleConfig<f64>;
/// Double-precision cycle outcome.
pub type CycleResult64 = CycleResult<f64>;
/// Single-precision working-substance parameters.
pub type Params32 = PotentialParams<f32>;
