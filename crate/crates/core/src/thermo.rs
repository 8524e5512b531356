//! Canonical thermodynamics of a single working-substance configuration.

use crate::deformed_math::dawson;
use crate::potential_spectrum::{PotentialParams, Spectrum};
use crate::{Error, Real, Result};

fn inverse_temperature<T: Real>(temperature: T) -> Result<T> {
    if temperature.is_finite() && temperature > T::zero() {
        Ok(temperature.recip())
    } else if temperature == T::infinity() {
        Ok(T::zero())
    } else {
        Err(Error::invalid(
            "temperature",
            format!("must be > 0, got {temperature}"),
        ))
    }
}

/// `ln Z` for the exact finite sum, factored about the ground term so that
/// every Boltzmann ratio is at most one.
pub fn log_partition_sum<T: Real>(s: &Spectrum<T>, temperature: T) -> Result<T> {
    let beta = inverse_temperature(temperature)?;
    let e = s.energies();
    let e0 = e[0];
    let rest = e
        .iter()
        .skip(1)
        .fold(T::zero(), |acc, &en| acc + (-beta * (en - e0)).exp());
    Ok(-beta * e0 + rest.ln_1p())
}

/// `Z = Σ_n exp(−E_n/T)` over the bound levels.
pub fn partition_sum<T: Real>(s: &Spectrum<T>, temperature: T) -> Result<T> {
    let log_z = log_partition_sum(s, temperature)?;
    if log_z > T::max_exp_arg() {
        return Err(Error::Overflow {
            what: "partition_sum",
        });
    }
    Ok(log_z.exp())
}

/// `σ = ½ − √((Δ² − ¼)/(α² q²) + ¼)` in the form used by the closed
/// thermodynamic expressions.
pub fn closed_form_sigma<T: Real>(p: &PotentialParams<T>) -> T {
    let a = p.alpha();
    let q = p.q();
    T::lit(0.5) - (p.well_strength() / (a * a * q * q) + T::lit(0.25)).sqrt()
}

/// `ln` of the closed-form partition function
/// `Z = √π (−erfi(√(βp) σ)) / (2√(βp))`, `p = α²/2`.
///
/// Written as `βpσ² + ln(−F(√(βp)σ)/√(βp))` with Dawson's `F`, so it never
/// overflows.
pub fn log_partition_closed<T: Real>(p: &PotentialParams<T>, temperature: T) -> Result<T> {
    let beta = inverse_temperature(temperature)?;
    if beta == T::zero() {
        return Err(Error::invalid(
            "temperature",
            "closed form needs a finite temperature",
        ));
    }
    let pp = p.alpha() * p.alpha() * T::lit(0.5);
    let sigma = closed_form_sigma(p);
    let root = (beta * pp).sqrt();
    let f = -dawson(root * sigma);
    if !(f > T::zero()) {
        return Err(Error::NumericalBreakdown(format!(
            "Dawson factor {f} is not positive"
        )));
    }
    Ok(beta * pp * sigma * sigma + (f / root).ln())
}

/// Closed-form (continuum) partition function.
pub fn partition_closed<T: Real>(p: &PotentialParams<T>, temperature: T) -> Result<T> {
    let log_z = log_partition_closed(p, temperature)?;
    if log_z > T::max_exp_arg() {
        return Err(Error::Overflow {
            what: "partition_closed",
        });
    }
    Ok(log_z.exp())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThermalState<T> {
    pub beta: T,
    /// `ln Z` of the exact sum; kept in log form so deep wells stay finite.
    pub log_z: T,
    /// Occupation probabilities aligned with the spectrum's levels.
    pub probs: Vec<T>,
}

impl<T: Real> ThermalState<T> {
    /// Partition value; `+∞` if it exceeds the exponent range.
    pub fn z_value(&self) -> T {
        self.log_z.exp()
    }

    pub fn mean_energy(&self, energies: &[T]) -> T {
        self.probs
            .iter()
            .zip(energies)
            .fold(T::zero(), |acc, (&p, &e)| acc + p * e)
    }
}

/// Gibbs populations `P_n = exp(−E_n/T)/Z`, normalized by the exact sum.
pub fn thermal_state<T: Real>(s: &Spectrum<T>, temperature: T) -> Result<ThermalState<T>> {
    let beta = inverse_temperature(temperature)?;
    let e0 = s.energies()[0];
    let weights: Vec<T> = s
        .energies()
        .iter()
        .map(|&e| (-beta * (e - e0)).exp())
        .collect();
    let total = weights.iter().fold(T::zero(), |acc, &w| acc + w);
    let probs = weights.into_iter().map(|w| w / total).collect();
    Ok(ThermalState {
        beta,
        log_z: -beta * e0 + total.ln(),
        probs,
    })
}
