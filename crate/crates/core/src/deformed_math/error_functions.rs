//! Error function family for real arguments.
//!
//! * `erf` uses the everywhere-positive series
//!   `erf x = 2/√π · e^{−x²} Σ 2^k x^{2k+1} / (2k+1)!!` below `x = 3` and the
//!   complementary continued fraction above it.
//! * `erfc` switches to the continued fraction for `Γ(½, x²)` once
//!   `x² ≥ 3/2`, where it converges in well under 100 steps.
//! * Dawson's integral uses `F(x) = e^{−x²} Σ x^{2k+1} / (k!(2k+1))` for
//!   `|x| < 6.5` and the asymptotic series beyond; at the seam the smallest
//!   asymptotic term is below `e^{−42}`.
//!
//! Every `e^{±x²}` factor is formed from the exact product `x·x = hi + lo`
//! so that large arguments do not lose accuracy through the rounding of `x²`.

use crate::{Error, Real, Result};

const DAWSON_SEAM: f64 = 6.5;
const ERF_SERIES_LIMIT: f64 = 3.0;
const ERFC_FRACTION_START_SQ: f64 = 1.5;
const MAX_TERMS: usize = 2000;

/// `e^{sign · x²}` with the rounding error of `x²` folded back in.
#[inline]
fn exp_square<T: Real>(x: T, negate: bool) -> T {
    let hi = x * x;
    let lo = x.mul_add(x, -hi);
    if negate {
        (-hi).exp() * (T::one() - lo)
    } else {
        hi.exp() * (T::one() + lo)
    }
}

#[inline]
fn two_over_sqrt_pi<T: Real>() -> T {
    T::FRAC_2_SQRT_PI()
}

pub fn erf<T: Real>(x: T) -> T {
    if x.is_nan() {
        return x;
    }
    if x < T::zero() {
        return -erf(-x);
    }
    if x == T::zero() {
        return T::zero();
    }
    if x < T::lit(ERF_SERIES_LIMIT) {
        erf_series(x)
    } else {
        T::one() - erfc_fraction(x)
    }
}

pub fn erfc<T: Real>(x: T) -> T {
    if x.is_nan() {
        return x;
    }
    if x < T::zero() {
        return T::lit(2.0) - erfc(-x);
    }
    if x * x < T::lit(ERFC_FRACTION_START_SQ) {
        T::one() - erf_series(x)
    } else {
        erfc_fraction(x)
    }
}

fn erf_series<T: Real>(x: T) -> T {
    let two_x2 = (x * x) * T::lit(2.0);
    let tol = T::epsilon() * T::lit(0.1);
    let mut term = x;
    let mut sum = x;
    for k in 1..MAX_TERMS {
        term = term * two_x2 / T::lit((2 * k + 1) as f64);
        sum = sum + term;
        if term <= tol * sum {
            break;
        }
    }
    two_over_sqrt_pi::<T>() * exp_square(x, true) * sum
}

// Modified Lentz evaluation of Γ(½, x²) = e^{−x²} x · h.
fn erfc_fraction<T: Real>(x: T) -> T {
    let a = T::lit(0.5);
    let z = x * x;
    let tiny = T::min_positive_value() * T::lit(1e10);
    let two = T::lit(2.0);
    let mut b = z + T::one() - a;
    let mut c = T::one() / tiny;
    let mut d = T::one() / b;
    let mut h = d;
    for i in 1..MAX_TERMS {
        let fi = T::lit(i as f64);
        let an = -fi * (fi - a);
        b = b + two;
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = T::one() / d;
        let delta = d * c;
        h = h * delta;
        if (delta - T::one()).abs() <= T::epsilon() {
            break;
        }
    }
    exp_square(x, true) * x * h / T::PI().sqrt()
}

/// Dawson's integral `F(x) = e^{−x²} ∫₀ˣ e^{t²} dt`.
pub fn dawson<T: Real>(x: T) -> T {
    if x.is_nan() {
        return x;
    }
    if x < T::zero() {
        return -dawson(-x);
    }
    if x == T::zero() {
        return T::zero();
    }
    if x < T::lit(DAWSON_SEAM) {
        dawson_series(x)
    } else {
        dawson_asymptotic(x)
    }
}

fn dawson_series<T: Real>(x: T) -> T {
    let x2 = x * x;
    let tol = T::epsilon() * T::lit(0.1);
    let mut power = x;
    let mut sum = x;
    for k in 1..MAX_TERMS {
        power = power * x2 / T::lit(k as f64);
        let term = power / T::lit((2 * k + 1) as f64);
        sum = sum + term;
        if term <= tol * sum {
            break;
        }
    }
    exp_square(x, true) * sum
}

fn dawson_asymptotic<T: Real>(x: T) -> T {
    let y = T::one() / (T::lit(2.0) * x * x);
    let mut term = T::one();
    let mut sum = T::one();
    for k in 1..MAX_TERMS {
        let next = term * T::lit((2 * k - 1) as f64) * y;
        if next > term || next <= T::epsilon() * T::lit(0.1) * sum {
            break;
        }
        term = next;
        sum = sum + term;
    }
    sum / (T::lit(2.0) * x)
}

/// `erfi(x) · e^{−x²} = 2 F(x) / √π`; finite for every finite `x`.
pub fn erfi_scaled<T: Real>(x: T) -> T {
    two_over_sqrt_pi::<T>() * dawson(x)
}

/// Imaginary error function `erfi(x) = −i erf(ix)`.
///
/// Fails with [`Error::Overflow`] once `e^{x²}` leaves the exponent range;
/// use [`erfi_scaled`] to form ratios of such terms.
pub fn erfi<T: Real>(x: T) -> Result<T> {
    if x * x > T::max_exp_arg() {
        return Err(Error::Overflow { what: "erfi" });
    }
    let value = erfi_scaled(x) * exp_square(x, false);
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow { what: "erfi" })
    }
}
