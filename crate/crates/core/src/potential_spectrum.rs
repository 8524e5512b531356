//! The q-deformed modified Pöschl–Teller well
//!
//! ```text
//! U_q(x) = −(Δ² − ¼) / (2 cosh_q²(αx))
//! ```
//!
//! its bound-state ladder, and its eigenfunctions. Because
//! `cosh_q(y) = √q cosh(y − ½ ln q)`, the deformed well is an undeformed one
//! of depth `(Δ² − ¼)/q` centred at `x* = ln q / (2α)`; every evaluation below
//! uses that shifted form so nothing overflows for large `|x|`.

use crate::deformed_math::{DeformParam, Hyp2F1Poly};
use crate::{Error, Real, Result};

/// Endpoint amplitude, relative to the peak, above which a grid is
/// considered too narrow for the state being integrated.
pub const TAIL_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialParams<T> {
    q: DeformParam<T>,
    delta: T,
    alpha: T,
}

impl<T: Real> PotentialParams<T> {
    /// Validates `q > 0`, `α > 0` and `Δ ≥ ½`. `Δ = ½` is a zero-depth well:
    /// the potential is defined but [`spectrum`] reports no bound states.
    pub fn new(q: T, delta: T, alpha: T) -> Result<Self> {
        let q = DeformParam::new(q)?;
        if !(alpha.is_finite() && alpha > T::zero()) {
            return Err(Error::invalid(
                "alpha",
                format!("must be finite and > 0, got {alpha}"),
            ));
        }
        if !(delta.is_finite() && delta >= T::lit(0.5)) {
            return Err(Error::invalid(
                "delta",
                format!("must be finite and >= 1/2, got {delta}"),
            ));
        }
        Ok(Self { q, delta, alpha })
    }

    pub fn q(&self) -> T {
        self.q.get()
    }

    pub fn deform(&self) -> DeformParam<T> {
        self.q
    }

    pub fn delta(&self) -> T {
        self.delta
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    /// `Δ² − ¼`.
    pub fn well_strength(&self) -> T {
        self.delta * self.delta - T::lit(0.25)
    }

    /// Location of the potential minimum, `ln q / (2α)`.
    pub fn well_center(&self) -> T {
        self.q.shift() / self.alpha
    }

    pub fn reduced(&self) -> ReducedVariables<T> {
        let xi = self.well_strength() / (self.alpha * self.alpha);
        let w_tilde = (T::lit(0.25) + xi / self.q()).sqrt();
        ReducedVariables { xi, w_tilde }
    }
}

/// Dimensionless combinations appearing in the hypergeometric reduction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedVariables<T> {
    /// `ξ = (Δ² − ¼)/α²`
    pub xi: T,
    /// `w̃ = √(¼ + ξ/q)`
    pub w_tilde: T,
}

impl<T: Real> ReducedVariables<T> {
    /// `ν(n) = w̃ − n − ½ = √(−2E_n)/α`; positive exactly for bound levels.
    pub fn nu(&self, n: usize) -> T {
        self.w_tilde - T::lit(n as f64) - T::lit(0.5)
    }
}

/// `sech²(u)` without overflow.
#[inline]
fn sech_sq<T: Real>(u: T) -> T {
    let e = (-(u.abs() + u.abs())).exp();
    let d = T::one() + e;
    T::lit(4.0) * e / (d * d)
}

pub fn potential<T: Real>(x: T, p: &PotentialParams<T>) -> T {
    let u = p.alpha * x - p.q.shift();
    -p.well_strength() * sech_sq(u) / (T::lit(2.0) * p.q())
}

/// Real-valued upper bound on the level index, `w̃ − ½`.
pub fn n_max<T: Real>(p: &PotentialParams<T>) -> T {
    p.reduced().w_tilde - T::lit(0.5)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    params: PotentialParams<T>,
    n_max_real: T,
    energies: Vec<T>,
}

impl<T: Real> Spectrum<T> {
    pub fn params(&self) -> &PotentialParams<T> {
        &self.params
    }

    pub fn n_max_real(&self) -> T {
        self.n_max_real
    }

    pub fn num_levels(&self) -> usize {
        self.energies.len()
    }

    /// Strictly increasing, strictly negative.
    pub fn energies(&self) -> &[T] {
        &self.energies
    }

    pub fn energy(&self, n: usize) -> Result<T> {
        self.energies
            .get(n)
            .copied()
            .ok_or(Error::IndexOutOfSpectrum {
                n,
                num_levels: self.num_levels(),
            })
    }

    pub fn reduced(&self) -> ReducedVariables<T> {
        self.params.reduced()
    }
}

/// All strictly bound levels `E_n = −(α²/2)(n + ½ − w̃)²`, `n < n_max`.
pub fn spectrum<T: Real>(p: &PotentialParams<T>) -> Result<Spectrum<T>> {
    if p.delta <= T::lit(0.5) {
        return Err(Error::NoBoundStates {
            delta: p.delta.as_f64(),
        });
    }
    let reduced = p.reduced();
    let n_max_real = reduced.w_tilde - T::lit(0.5);
    let half_alpha_sq = p.alpha * p.alpha * T::lit(0.5);
    let energies: Vec<T> = (0..)
        .take_while(|&n| T::lit(n as f64) < n_max_real)
        .map(|n| {
            let nu = reduced.nu(n);
            -half_alpha_sq * nu * nu
        })
        .collect();
    if energies.is_empty() {
        return Err(Error::NoBoundStates {
            delta: p.delta.as_f64(),
        });
    }
    Ok(Spectrum {
        params: *p,
        n_max_real,
        energies,
    })
}

/// Unnormalized bound state
///
/// ```text
/// Ψ_n(x) = (1 − z²)^{ν/2} ₂F₁(−n, −n + 2w̃; −n + w̃ + ½; (1 − z)/2),  z = tanh_q(αx)
/// ```
#[derive(Debug, Clone)]
pub struct Eigenfunction<T> {
    n: usize,
    nu: T,
    energy: T,
    alpha: T,
    shift: T,
    poly: Hyp2F1Poly<T>,
}

impl<T: Real> Eigenfunction<T> {
    pub fn new(spectrum: &Spectrum<T>, n: usize) -> Result<Self> {
        let energy = spectrum.energy(n)?;
        let p = spectrum.params();
        let reduced = p.reduced();
        let nu = reduced.nu(n);
        let nf = T::lit(n as f64);
        let poly = Hyp2F1Poly::new(
            n,
            -nf + T::lit(2.0) * reduced.w_tilde,
            -nf + reduced.w_tilde + T::lit(0.5),
        )?;
        Ok(Self {
            n,
            nu,
            energy,
            alpha: p.alpha(),
            shift: p.deform().shift(),
            poly,
        })
    }

    pub fn level(&self) -> usize {
        self.n
    }

    pub fn nu(&self) -> T {
        self.nu
    }

    pub fn energy(&self) -> T {
        self.energy
    }

    pub fn eval(&self, x: T) -> T {
        // z = tanh_q(αx) = tanh(u)
        let u = self.alpha * x - self.shift;
        let a = u.abs();
        let e = (-(a + a)).exp();
        // (1 − z²)^{ν/2} = sech(u)^ν
        let envelope = (self.nu * (T::LN_2() - a - e.ln_1p())).exp();
        // (1 − z)/2 = 1/(1 + e^{2u})
        let arg = if u > T::zero() {
            e / (T::one() + e)
        } else {
            T::one() / (T::one() + e)
        };
        envelope * self.poly.eval(arg)
    }

    pub fn sample(&self, grid: &GridSpec<T>) -> Vec<T> {
        grid.nodes().map(|x| self.eval(x)).collect()
    }
}

/// Unnormalized amplitude of level `n` at `x`.
pub fn wavefunction<T: Real>(n: usize, x: T, p: &PotentialParams<T>) -> Result<T> {
    let s = spectrum(p)?;
    Ok(Eigenfunction::new(&s, n)?.eval(x))
}

/// Uniform grid with an odd number of nodes (composite Simpson needs one).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec<T> {
    x_min: T,
    x_max: T,
    points: usize,
}

impl<T: Real> GridSpec<T> {
    pub fn new(x_min: T, x_max: T, points: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
            return Err(Error::invalid("grid", "need finite x_min < x_max"));
        }
        if points < 3 || points.is_multiple_of(2) {
            return Err(Error::invalid(
                "grid",
                format!("points must be odd and >= 3, got {points}"),
            ));
        }
        Ok(Self {
            x_min,
            x_max,
            points,
        })
    }

    /// Grid of spacing `step` reaching at least `half_width` either side of
    /// `center`.
    pub fn centered(center: T, half_width: T, step: T) -> Result<Self> {
        if !(step > T::zero() && half_width > T::zero()) {
            return Err(Error::invalid("grid", "step and half_width must be > 0"));
        }
        let half = (half_width / step)
            .ceil()
            .to_usize()
            .ok_or_else(|| Error::invalid("grid", "too many points"))?;
        let span = step * T::lit(half as f64);
        Self::new(center - span, center + span, 2 * half + 1)
    }

    /// Default grid for level `n`: centred on the well minimum, wide enough
    /// for the `e^{−να|x|}` tail to fall below [`TAIL_THRESHOLD`].
    pub fn for_level(spectrum: &Spectrum<T>, n: usize) -> Result<Self> {
        let p = spectrum.params();
        let nu = p.reduced().nu(n);
        if n >= spectrum.num_levels() {
            return Err(Error::IndexOutOfSpectrum {
                n,
                num_levels: spectrum.num_levels(),
            });
        }
        let step = T::lit(15.0) / (T::lit(2000.0) * p.alpha());
        Self::centered(p.well_center(), default_half_width(nu) / p.alpha(), step)
    }

    /// Grid with the given spacing that covers every bound level.
    pub fn for_all_levels(spectrum: &Spectrum<T>, step: T) -> Result<Self> {
        let p = spectrum.params();
        let top = spectrum.num_levels() - 1;
        let nu = p.reduced().nu(top);
        Self::centered(p.well_center(), default_half_width(nu) / p.alpha(), step)
    }

    pub fn x_min(&self) -> T {
        self.x_min
    }

    pub fn x_max(&self) -> T {
        self.x_max
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn step(&self) -> T {
        (self.x_max - self.x_min) / T::lit((self.points - 1) as f64)
    }

    /// Same interval with the spacing halved.
    pub fn refined(&self) -> Self {
        Self {
            points: 2 * self.points - 1,
            ..*self
        }
    }

    /// Nodes laid out from the midpoint, so rounding in the positions grows
    /// with distance from the centre instead of from `x_min`.
    pub fn nodes(&self) -> impl Iterator<Item = T> + '_ {
        let h = self.step();
        let mid = (self.x_min + self.x_max) * T::lit(0.5);
        let m = (self.points - 1) / 2;
        (0..self.points).map(move |i| mid + h * (T::lit(i as f64) - T::lit(m as f64)))
    }
}

fn default_half_width<T: Real>(nu: T) -> T {
    T::lit(15.0).max(T::lit(32.0) / nu)
}

fn check_tail<T: Real>(values: &[T]) -> Result<()> {
    let peak = values.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    let tail = values[0].abs().max(values[values.len() - 1].abs());
    let rel = if peak > T::zero() {
        tail / peak
    } else {
        T::zero()
    };
    if rel > T::lit(TAIL_THRESHOLD) {
        Err(Error::NonConvergentTail { tail: rel.as_f64() })
    } else {
        Ok(())
    }
}

/// Composite Simpson rule on an odd number of equally spaced samples.
pub(crate) fn simpson<T: Real>(values: &[T], h: T) -> T {
    debug_assert!(values.len() % 2 == 1 && values.len() >= 3);
    let last = values.len() - 1;
    let mut odd = T::zero();
    let mut even = T::zero();
    for (i, &v) in values.iter().enumerate().take(last).skip(1) {
        if i % 2 == 1 {
            odd = odd + v;
        } else {
            even = even + v;
        }
    }
    h / T::lit(3.0) * (values[0] + values[last] + T::lit(4.0) * odd + T::lit(2.0) * even)
}

/// Constant `N > 0` with `∫ |N Ψ_n|² dx = 1` on `grid`.
pub fn normalize<T: Real>(n: usize, p: &PotentialParams<T>, grid: &GridSpec<T>) -> Result<T> {
    let s = spectrum(p)?;
    let ef = Eigenfunction::new(&s, n)?;
    let values = ef.sample(grid);
    check_tail(&values)?;
    let squares: Vec<T> = values.iter().map(|&v| v * v).collect();
    Ok(simpson(&squares, grid.step()).sqrt().recip())
}

/// `‖(−½ d²/dx² + U_q − E_n) Ψ_n‖₂ / ‖Ψ_n‖₂` with a three-point second
/// difference on the grid interior.
pub fn schrodinger_residual<T: Real>(
    n: usize,
    p: &PotentialParams<T>,
    grid: &GridSpec<T>,
) -> Result<T> {
    let s = spectrum(p)?;
    let ef = Eigenfunction::new(&s, n)?;
    residual_at_energy(&ef, p, grid, ef.energy())
}

/// As [`schrodinger_residual`], but against an arbitrary trial energy.
pub fn residual_at_energy<T: Real>(
    ef: &Eigenfunction<T>,
    p: &PotentialParams<T>,
    grid: &GridSpec<T>,
    energy: T,
) -> Result<T> {
    let values = ef.sample(grid);
    check_tail(&values)?;
    let h = grid.step();
    let inv_h2 = (h * h).recip();
    let half = T::lit(0.5);
    let mut res_sq = T::zero();
    for (i, x) in grid.nodes().enumerate().skip(1).take(values.len() - 2) {
        let lap = (values[i + 1] - values[i] - values[i] + values[i - 1]) * inv_h2;
        let r = -half * lap + (potential(x, p) - energy) * values[i];
        res_sq = res_sq + r * r;
    }
    let norm_sq = values.iter().fold(T::zero(), |acc, &v| acc + v * v);
    Ok((res_sq / norm_sq).sqrt())
}

/// Overlap matrix `⟨Ψ_m|Ψ_n⟩` of the normalized bound states on `grid`.
pub fn overlap_matrix<T: Real>(spectrum: &Spectrum<T>, grid: &GridSpec<T>) -> Result<Vec<Vec<T>>> {
    let h = grid.step();
    let mut states = Vec::with_capacity(spectrum.num_levels());
    for n in 0..spectrum.num_levels() {
        let values = Eigenfunction::new(spectrum, n)?.sample(grid);
        check_tail(&values)?;
        let squares: Vec<T> = values.iter().map(|&v| v * v).collect();
        let norm = simpson(&squares, h).sqrt().recip();
        states.push(values.into_iter().map(|v| v * norm).collect::<Vec<_>>());
    }
    let levels = states.len();
    let mut gram = vec![vec![T::zero(); levels]; levels];
    for m in 0..levels {
        for n in m..levels {
            let prod: Vec<T> = states[m]
                .iter()
                .zip(&states[n])
                .map(|(&a, &b)| a * b)
                .collect();
            let v = simpson(&prod, h);
            gram[m][n] = v;
            gram[n][m] = v;
        }
    }
    Ok(gram)
}
