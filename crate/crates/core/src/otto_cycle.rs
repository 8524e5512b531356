//! Quasi-static four-stroke Otto cycle.
//!
//! Strokes: hot isochore A→B at width `α_h`, adiabat B→C (`α_h → α_c`,
//! populations frozen), cold isochore C→D at `α_c`, adiabat D→A. Heats
//! follow the sign convention
//!
//! ```text
//! Q_h = Σ_n E_n^h [P_n^B − P_n^D]
//! Q_c = Σ_n E_n^c [P_n^D − P_n^B]
//! W   = Σ_n (E_n^h − E_n^c)[P_n^B − P_n^D] = Q_h + Q_c
//! ```
//!
//! Two evaluation routes exist: the exact discrete sums over the shared
//! bound levels, and the closed continuum expressions in which the level
//! index is integrated over `[0, |σ|]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::deformed_math::dawson;
use crate::potential_spectrum::{spectrum, PotentialParams};
use crate::thermo::{closed_form_sigma, thermal_state};
use crate::{Error, Real, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleConfig<T> {
    pub q: T,
    pub delta: T,
    pub alpha_h: T,
    pub alpha_c: T,
    pub t_h: T,
    pub t_c: T,
}

impl<T: Real> CycleConfig<T> {
    /// Validates both isochore configurations (each must bind at least one
    /// level) and `t_h ≥ t_c > 0`.
    pub fn new(q: T, delta: T, alpha_h: T, alpha_c: T, t_h: T, t_c: T) -> Result<Self> {
        let cfg = Self {
            q,
            delta,
            alpha_h,
            alpha_c,
            t_h,
            t_c,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_c.is_finite() && self.t_c > T::zero()) {
            return Err(Error::invalid(
                "t_c",
                format!("must be finite and > 0, got {}", self.t_c),
            ));
        }
        if !(self.t_h.is_finite() && self.t_h >= self.t_c) {
            return Err(Error::invalid(
                "t_h",
                format!("must be >= t_c, got {}", self.t_h),
            ));
        }
        spectrum(&self.hot_params()?)?;
        spectrum(&self.cold_params()?)?;
        Ok(())
    }

    pub fn hot_params(&self) -> Result<PotentialParams<T>> {
        PotentialParams::new(self.q, self.delta, self.alpha_h)
    }

    pub fn cold_params(&self) -> Result<PotentialParams<T>> {
        PotentialParams::new(self.q, self.delta, self.alpha_c)
    }
}

/// Inverse temperatures, energy scales `p = α²/2` and the closed-form
/// level bounds `σ` of the two isochores.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedCycleParams<T> {
    pub beta_h: T,
    pub beta_c: T,
    pub p_h: T,
    pub p_c: T,
    pub sigma_h: T,
    pub sigma_c: T,
}

impl<T: Real> ReducedCycleParams<T> {
    pub fn new(c: &CycleConfig<T>) -> Result<Self> {
        let half = T::lit(0.5);
        Ok(Self {
            beta_h: c.t_h.recip(),
            beta_c: c.t_c.recip(),
            p_h: c.alpha_h * c.alpha_h * half,
            p_c: c.alpha_c * c.alpha_c * half,
            sigma_h: closed_form_sigma(&c.hot_params()?),
            sigma_c: closed_form_sigma(&c.cold_params()?),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[serde(rename = "closed")]
    ClosedForm,
    #[serde(rename = "sum")]
    DiscreteSum,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed",
            Method::DiscreteSum => "sum",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Engine,
    Refrigerator,
    Heater,
    Accelerator,
    Idle,
    /// Sign pattern outside the four machine types (second-law violating
    /// or not first-law consistent).
    Unclassified,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Engine => "engine",
            Regime::Refrigerator => "refrigerator",
            Regime::Heater => "heater",
            Regime::Accelerator => "accelerator",
            Regime::Idle => "idle",
            Regime::Unclassified => "unclassified",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleOptions {
    /// Largest probability mass the discrete route may drop when the hot and
    /// cold ladders are cut to their common levels.
    pub truncation_bound: f64,
    /// Energy band treated as zero when classifying the regime.
    pub regime_tol: f64,
}

impl Default for CycleOptions {
    fn default() -> Self {
        Self {
            truncation_bound: 1e-3,
            regime_tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CycleResult<T> {
    pub q_hot: T,
    pub q_cold: T,
    pub work: T,
    pub efficiency: Option<T>,
    pub cop: Option<T>,
    pub regime: Regime,
    pub method: Method,
    /// Only for [`Method::DiscreteSum`].
    pub truncation_loss: Option<T>,
}

pub fn classify_regime<T: Real>(q_hot: T, q_cold: T, work: T, tol: T) -> Regime {
    if !(q_hot.is_finite() && q_cold.is_finite() && work.is_finite()) {
        return Regime::Unclassified;
    }
    if work.abs() <= tol {
        return Regime::Idle;
    }
    if work > tol {
        return if q_hot > tol && q_cold < -tol {
            Regime::Engine
        } else {
            Regime::Unclassified
        };
    }
    if q_cold > tol && q_hot < -tol {
        Regime::Refrigerator
    } else if q_hot > tol && q_cold < -tol {
        Regime::Accelerator
    } else if q_hot <= tol && q_cold <= tol {
        Regime::Heater
    } else {
        Regime::Unclassified
    }
}

// ---------------------------------------------------------------------------
// Closed forms

// Real part of the printed thermal-energy term
//   [√π √(β(−p)) erfc(σ√(β(−p))) − 2βpσ e^{βpσ²}] / [2√π β^{3/2} √p erfi(√(βp) σ)]
// i.e. 1/(2β) − pσ / (2√(βp) F(σ√(βp))).
fn own_term<T: Real>(beta: T, p: T, sigma: T) -> Result<T> {
    let root = (beta * p).sqrt();
    let f = dawson(sigma * root);
    if f == T::zero() || !f.is_finite() {
        return Err(Error::NumericalBreakdown(format!(
            "Dawson denominator vanished at {}",
            (sigma * root).as_f64()
        )));
    }
    Ok(T::lit(0.5) / beta - p * sigma / (T::lit(2.0) * root * f))
}

// Real part of the printed cross term
//   √(βp) p_e Υ / [2√π (β(−p))^{3/2} erfi(√(βp) σ)],
//   Υ = √π erf(σ√(β(−p)))(1 − 2βp(σ − σ_e)²) + Υ_exp + Υ_const,
//   Υ_exp = 2√(β(−p)) (σ − 2σ_e) e^{βpσ²},  Υ_const = √π(2βp(σ − σ_e)² − 1).
// With √(−x) = i√x, erf(iy) = i erfi(y) and (−x)^{3/2} = −i x^{3/2}, the
// Υ_const piece is purely imaginary and the real part is
//   p_e [ (σ − σ_e)² − 1/(2βp) − (σ − 2σ_e) / (2√(βp) F(σ√(βp))) ].
fn cross_term<T: Real>(p_e: T, sigma_e: T, beta: T, p: T, sigma: T) -> Result<T> {
    let c = beta * p;
    let root = c.sqrt();
    let f = dawson(sigma * root);
    if f == T::zero() || !f.is_finite() {
        return Err(Error::NumericalBreakdown(format!(
            "Dawson denominator vanished at {}",
            (sigma * root).as_f64()
        )));
    }
    let d = sigma - sigma_e;
    let erf_part = d * d - T::lit(0.5) / c;
    let exp_part = (sigma - sigma_e - sigma_e) / (T::lit(2.0) * root * f);
    Ok(p_e * (erf_part - exp_part))
}

fn finite<T: Real>(v: T, what: &str) -> Result<T> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NumericalBreakdown(format!("{what} is not finite")))
    }
}

/// Closed-form heat exchanged with the hot reservoir.
///
/// The printed expression contains `√(−βp)` factors; the value returned is
/// its real part on the principal branch, with every `e^{βpσ²}/erfi(·)`
/// ratio formed through Dawson's function.
pub fn q_hot_closed<T: Real>(c: &CycleConfig<T>) -> Result<T> {
    let r = ReducedCycleParams::new(c)?;
    let v = cross_term(r.p_h, r.sigma_h, r.beta_c, r.p_c, r.sigma_c)?
        + own_term(r.beta_h, r.p_h, r.sigma_h)?;
    finite(v, "q_hot_closed")
}

/// Closed-form heat exchanged with the cold reservoir (hot/cold indices of
/// [`q_hot_closed`] swapped).
pub fn q_cold_closed<T: Real>(c: &CycleConfig<T>) -> Result<T> {
    let r = ReducedCycleParams::new(c)?;
    let v = cross_term(r.p_c, r.sigma_c, r.beta_h, r.p_h, r.sigma_h)?
        + own_term(r.beta_c, r.p_c, r.sigma_c)?;
    finite(v, "q_cold_closed")
}

// ---------------------------------------------------------------------------
// Discrete sums

/// Hot and cold ladders cut to their common levels, with the thermal
/// populations at B (hot) and D (cold) renormalized on that set.
#[derive(Debug, Clone)]
pub struct DiscreteCycle<T> {
    pub energies_hot: Vec<T>,
    pub energies_cold: Vec<T>,
    pub pop_b: Vec<T>,
    pub pop_d: Vec<T>,
    pub truncation_loss: T,
}

impl<T: Real> DiscreteCycle<T> {
    pub fn new(c: &CycleConfig<T>, opts: &CycleOptions) -> Result<Self> {
        c.validate()?;
        let hot = spectrum(&c.hot_params()?)?;
        let cold = spectrum(&c.cold_params()?)?;
        let b = thermal_state(&hot, c.t_h)?;
        let d = thermal_state(&cold, c.t_c)?;
        let shared = hot.num_levels().min(cold.num_levels());

        let cut = |probs: &[T]| -> (Vec<T>, T) {
            let kept = probs[..shared].iter().fold(T::zero(), |a, &p| a + p);
            let dropped = probs[shared..].iter().fold(T::zero(), |a, &p| a + p);
            (probs[..shared].iter().map(|&p| p / kept).collect(), dropped)
        };
        let (pop_b, loss_b) = cut(&b.probs);
        let (pop_d, loss_d) = cut(&d.probs);
        let truncation_loss = loss_b.max(loss_d);
        if truncation_loss.as_f64() > opts.truncation_bound {
            return Err(Error::TruncationTooLarge {
                loss: truncation_loss.as_f64(),
                bound: opts.truncation_bound,
            });
        }
        Ok(Self {
            energies_hot: hot.energies()[..shared].to_vec(),
            energies_cold: cold.energies()[..shared].to_vec(),
            pop_b,
            pop_d,
            truncation_loss,
        })
    }

    pub fn q_hot(&self) -> T {
        self.dot(&self.energies_hot, |b, d| b - d)
    }

    pub fn q_cold(&self) -> T {
        self.dot(&self.energies_cold, |b, d| d - b)
    }

    pub fn work(&self) -> T {
        self.energies_hot
            .iter()
            .zip(&self.energies_cold)
            .zip(self.pop_b.iter().zip(&self.pop_d))
            .fold(T::zero(), |acc, ((&eh, &ec), (&b, &d))| {
                acc + (eh - ec) * (b - d)
            })
    }

    fn dot(&self, energies: &[T], bracket: impl Fn(T, T) -> T) -> T {
        energies
            .iter()
            .zip(self.pop_b.iter().zip(&self.pop_d))
            .fold(T::zero(), |acc, (&e, (&b, &d))| acc + e * bracket(b, d))
    }
}

/// `(Q_h, truncation_loss)` from the discrete sum.
pub fn q_hot_sum<T: Real>(c: &CycleConfig<T>, opts: &CycleOptions) -> Result<(T, T)> {
    let d = DiscreteCycle::new(c, opts)?;
    Ok((d.q_hot(), d.truncation_loss))
}

/// `(Q_c, truncation_loss)` from the discrete sum.
pub fn q_cold_sum<T: Real>(c: &CycleConfig<T>, opts: &CycleOptions) -> Result<(T, T)> {
    let d = DiscreteCycle::new(c, opts)?;
    Ok((d.q_cold(), d.truncation_loss))
}

/// Net work per cycle. The closed route has no separate expression and is
/// defined as `Q_h + Q_c`.
pub fn work<T: Real>(c: &CycleConfig<T>, method: Method, opts: &CycleOptions) -> Result<T> {
    match method {
        Method::DiscreteSum => Ok(DiscreteCycle::new(c, opts)?.work()),
        Method::ClosedForm => Ok(q_hot_closed(c)? + q_cold_closed(c)?),
    }
}

/// `η = W / Q_h`, only in the engine regime.
pub fn efficiency<T: Real>(c: &CycleConfig<T>, method: Method, opts: &CycleOptions) -> Result<T> {
    evaluate(c, method, opts)?
        .efficiency
        .ok_or(Error::NotEngineRegime)
}

/// `COP = Q_c / |W|`, only in the refrigerator regime.
pub fn cop<T: Real>(c: &CycleConfig<T>, method: Method, opts: &CycleOptions) -> Result<T> {
    evaluate(c, method, opts)?
        .cop
        .ok_or(Error::NotRefrigeratorRegime)
}

/// Full cycle evaluation by one route.
pub fn evaluate<T: Real>(
    c: &CycleConfig<T>,
    method: Method,
    opts: &CycleOptions,
) -> Result<CycleResult<T>> {
    let (q_hot, q_cold, work, truncation_loss) = match method {
        Method::DiscreteSum => {
            let d = DiscreteCycle::new(c, opts)?;
            (d.q_hot(), d.q_cold(), d.work(), Some(d.truncation_loss))
        }
        Method::ClosedForm => {
            c.validate()?;
            let qh = q_hot_closed(c)?;
            let qc = q_cold_closed(c)?;
            (qh, qc, qh + qc, None)
        }
    };
    let regime = classify_regime(q_hot, q_cold, work, T::lit(opts.regime_tol));
    let efficiency = (regime == Regime::Engine).then(|| work / q_hot);
    let cop = (regime == Regime::Refrigerator).then(|| q_cold / work.abs());
    Ok(CycleResult {
        q_hot,
        q_cold,
        work,
        efficiency,
        cop,
        regime,
        method,
        truncation_loss,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn loose() -> CycleOptions {
        CycleOptions {
            truncation_bound: 1.0,
            ..CycleOptions::default()
        }
    }

    #[test]
    fn sign_table() {
        assert_eq!(classify_regime(1.6, -1.0, 0.6, 1e-10), Regime::Engine);
        assert_eq!(
            classify_regime(-2.0, 1.5, -0.5, 1e-10),
            Regime::Refrigerator
        );
        assert_eq!(classify_regime(0.5e-6, -0.5e-6, 1e-12, 1e-6), Regime::Idle);
        assert_eq!(classify_regime(1.0, -1.5, -0.5, 1e-10), Regime::Accelerator);
        assert_eq!(classify_regime(-1.0, -0.5, -1.5, 1e-10), Regime::Heater);
        assert_eq!(classify_regime(0.5, 0.5, 1.0, 1e-10), Regime::Unclassified);
        assert_eq!(
            classify_regime(f64::NAN, 0.5, 1.0, 1e-10),
            Regime::Unclassified
        );
    }

    #[test]
    fn identical_isochores_exchange_nothing() {
        let c = CycleConfig::new(0.9_f64, 2.5, 0.7, 0.7, 2.0, 2.0).unwrap();
        assert!(q_hot_closed(&c).unwrap().abs() < 1e-10);
        assert!(q_cold_closed(&c).unwrap().abs() < 1e-10);
        assert_eq!(q_hot_sum(&c, &loose()).unwrap().0, 0.0);
        assert_eq!(q_cold_sum(&c, &loose()).unwrap().0, 0.0);
        let r = evaluate(&c, Method::DiscreteSum, &loose()).unwrap();
        assert_eq!(r.regime, Regime::Idle);
    }

    #[test]
    fn equal_widths_do_no_work() {
        let c = CycleConfig::new(0.85_f64, 3.0, 0.6, 0.6, 5.0, 1.0).unwrap();
        assert_eq!(work(&c, Method::DiscreteSum, &loose()).unwrap(), 0.0);
        assert!(matches!(
            efficiency(&c, Method::DiscreteSum, &loose()),
            Err(Error::NotEngineRegime)
        ));
        assert!(matches!(
            cop(&c, Method::DiscreteSum, &loose()),
            Err(Error::NotRefrigeratorRegime)
        ));
    }

    // Boltzmann weights and heats rebuilt level by level from the energy
    // formula, independent of the spectrum/thermo modules.
    fn brute_force(q: f64, delta: f64, ah: f64, ac: f64, th: f64, tc: f64) -> (f64, f64, f64) {
        let levels = |a: f64| {
            let w = (0.25 + (delta * delta - 0.25) / (a * a) / q).sqrt();
            let mut e = Vec::new();
            let mut n = 0.0;
            while n < w - 0.5 {
                e.push(-(a * a / 2.0) * (n + 0.5 - w).powi(2));
                n += 1.0;
            }
            e
        };
        let (eh, ec) = (levels(ah), levels(ac));
        let m = eh.len().min(ec.len());
        let mut zb = 0.0;
        let mut zd = 0.0;
        for i in 0..m {
            zb += (-eh[i] / th).exp();
            zd += (-ec[i] / tc).exp();
        }
        let (mut qh, mut qc, mut w) = (0.0, 0.0, 0.0);
        for i in 0..m {
            let pb = (-eh[i] / th).exp() / zb;
            let pd = (-ec[i] / tc).exp() / zd;
            qh += eh[i] * (pb - pd);
            qc += ec[i] * (pd - pb);
            w += (eh[i] - ec[i]) * (pb - pd);
        }
        (qh, qc, w)
    }

    #[test]
    fn discrete_matches_brute_force() {
        let c = CycleConfig::new(1.0_f64, 2.0, 1.118, 0.5, 5.0, 1.0).unwrap();
        let (qh, loss) = q_hot_sum(&c, &loose()).unwrap();
        let (qc, _) = q_cold_sum(&c, &loose()).unwrap();
        let (bh, bc, bw) = brute_force(1.0, 2.0, 1.118, 0.5, 5.0, 1.0);
        assert!((qh - bh).abs() < 1e-12);
        assert!((qc - bc).abs() < 1e-12);
        assert!((work(&c, Method::DiscreteSum, &loose()).unwrap() - bw).abs() < 1e-12);
        // 40-digit reference values
        assert!((qh - 0.12441326415950322).abs() < 1e-14);
        assert!((qc + 0.09004639549197899).abs() < 1e-14);
        assert!((loss - 0.26684072655935266).abs() < 1e-14);
        assert!(matches!(
            q_hot_sum(&c, &CycleOptions::default()),
            Err(Error::TruncationTooLarge { .. })
        ));
    }

    #[test]
    fn closed_form_reference_values() {
        // Real part of the printed expressions, 40-digit complex arithmetic.
        let c = CycleConfig::new(0.85_f64, 4.5, 1.118, 0.5, 5.0, 1.0).unwrap();
        assert!((q_hot_closed(&c).unwrap() - 2.912952393925888).abs() < 1e-12);
        assert!((q_cold_closed(&c).unwrap() + 1.305121102374598).abs() < 1e-12);
        let c = CycleConfig::new(0.82_f64, 0.98, 1.118, 0.5, 5.0, 1.0).unwrap();
        let (qh, qc): (f64, f64) = (-2.84855034666042, 2.042371807804345);
        assert!((q_hot_closed(&c).unwrap() - qh).abs() < 1e-12);
        assert!((q_cold_closed(&c).unwrap() - qc).abs() < 1e-12);
        let r = evaluate(&c, Method::ClosedForm, &CycleOptions::default()).unwrap();
        assert_eq!(r.regime, Regime::Refrigerator);
        assert!((r.cop.unwrap() - qc / (qh + qc).abs()).abs() < 1e-12);
    }

    #[test]
    fn fig4_interior_point() {
        let c = CycleConfig::new(0.85_f64, 4.5, 1.118, 0.5, 5.0, 1.0).unwrap();
        let closed = evaluate(&c, Method::ClosedForm, &CycleOptions::default()).unwrap();
        assert_eq!(closed.regime, Regime::Engine);
        let eta = closed.efficiency.unwrap();
        assert!(eta > 0.0 && eta < 0.8);
        // the shared-level cut drops 1.0157e-3 here, just over the default bound
        let sum = evaluate(&c, Method::DiscreteSum, &loose()).unwrap();
        assert!((sum.truncation_loss.unwrap() - 1.0156757472322543e-3).abs() < 1e-15);
        assert!((sum.q_hot - 2.1849605898485205).abs() < 1e-12);
        assert_eq!(sum.regime, Regime::Engine);
    }

    #[test]
    fn fig5_interior_point() {
        let c = CycleConfig::new(0.9_f64, 0.95, 1.118, 0.5, 5.0, 1.0).unwrap();
        assert!(q_cold_closed(&c).unwrap() > 0.0);
        // one shared bound level: the discrete cycle is idle
        let r = evaluate(&c, Method::DiscreteSum, &loose()).unwrap();
        assert_eq!(r.work, 0.0);
        assert!(matches!(
            evaluate(&c, Method::DiscreteSum, &CycleOptions::default()),
            Err(Error::TruncationTooLarge { .. })
        ));
    }

    #[test]
    fn invalid_configs() {
        assert!(CycleConfig::new(0.9_f64, 2.0, 1.0, 0.5, 1.0, 2.0).is_err());
        assert!(CycleConfig::new(0.9_f64, 0.5, 1.0, 0.5, 2.0, 1.0).is_err());
        assert!(CycleConfig::new(0.0_f64, 2.0, 1.0, 0.5, 2.0, 1.0).is_err());
    }

    proptest! {
        #[test]
        fn first_law_holds_for_discrete_route(
            q in 0.3f64..1.0, delta in 0.6f64..6.0, ah in 0.2f64..2.0, ac in 0.2f64..2.0,
            tc in 0.1f64..5.0, dt in 0.0f64..10.0,
        ) {
            let c = CycleConfig::new(q, delta, ah, ac, tc + dt, tc).unwrap();
            let r = evaluate(&c, Method::DiscreteSum, &loose()).unwrap();
            prop_assert!((r.work - (r.q_hot + r.q_cold)).abs() <= 1e-12 * r.work.abs().max(1.0));
            if r.regime == Regime::Engine {
                prop_assert!(r.efficiency.unwrap() <= 1.0 - c.t_c / c.t_h + 1e-9);
            }
            if r.regime == Regime::Refrigerator {
                prop_assert!(r.cop.unwrap() > 0.0);
            }
        }

        #[test]
        fn closed_and_discrete_hot_heat_share_sign_in_engine_box(
            q in 0.8f64..0.9, delta in 3.7f64..5.0,
        ) {
            let c = CycleConfig::new(q, delta, 1.118, 0.5, 5.0, 1.0).unwrap();
            let closed = q_hot_closed(&c).unwrap();
            let (sum, _) = q_hot_sum(&c, &loose()).unwrap();
            prop_assert_eq!(closed.signum(), sum.signum());
        }
    }
}
