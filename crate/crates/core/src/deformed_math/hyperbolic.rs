use crate::{Error, Real, Result};

/// Deformation parameter `q > 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DeformParam<T>(T);

impl<T: Real> DeformParam<T> {
    pub fn new(q: T) -> Result<Self> {
        if q.is_finite() && q > T::zero() {
            Ok(Self(q))
        } else {
            Err(Error::invalid(
                "q",
                format!("must be finite and > 0, got {q}"),
            ))
        }
    }

    /// The undeformed case `q = 1`.
    pub fn one() -> Self {
        Self(T::one())
    }

    #[inline]
    pub fn get(self) -> T {
        self.0
    }

    /// Shift `½ ln q` such that `cosh_q(y) = √q cosh(y − shift)`.
    #[inline]
    pub(crate) fn shift(self) -> T {
        self.0.ln() * T::lit(0.5)
    }
}

/// `(e^y + q e^{-y}) / 2`, evaluated without intermediate overflow.
pub fn cosh_q<T: Real>(y: T, q: DeformParam<T>) -> Result<T> {
    combine(y, q, T::one(), "cosh_q")
}

/// `(e^y − q e^{-y}) / 2`, evaluated without intermediate overflow.
pub fn sinh_q<T: Real>(y: T, q: DeformParam<T>) -> Result<T> {
    combine(y, q, -T::one(), "sinh_q")
}

// (e^y + sign·q e^{-y}) / 2, factoring out the dominant exponential.
fn combine<T: Real>(y: T, q: DeformParam<T>, sign: T, what: &'static str) -> Result<T> {
    if !y.is_finite() {
        return Err(Error::invalid("y", format!("must be finite, got {y}")));
    }
    let q = q.get();
    let ln2 = T::LN_2();
    let value = if y >= T::zero() {
        (y - ln2).exp() * (T::one() + sign * q * (-(y + y)).exp())
    } else {
        sign * (-y + q.ln() - ln2).exp() * (T::one() + sign * (y + y).exp() / q)
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow { what })
    }
}

/// `sinh_q(y) / cosh_q(y)`, always in `(−1, 1)`.
pub fn tanh_q<T: Real>(y: T, q: DeformParam<T>) -> T {
    let q = q.get();
    let one = T::one();
    if y >= T::zero() {
        let t = q * (-(y + y)).exp();
        (one - t) / (one + t)
    } else {
        let t = (y + y).exp();
        (t - q) / (t + q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: f64) -> DeformParam<f64> {
        DeformParam::new(v).unwrap()
    }

    #[test]
    fn values_at_origin() {
        assert_eq!(cosh_q(0.0, q(1.0)).unwrap(), 1.0);
        assert!((cosh_q(0.0, q(0.5)).unwrap() - 0.75).abs() < 1e-16);
        assert_eq!(sinh_q(0.0, q(1.0)).unwrap(), 0.0);
        assert!((sinh_q(0.0, q(0.8)).unwrap() - 0.1).abs() < 1e-16);
        assert_eq!(tanh_q(0.0, q(1.0)), 0.0);
        for &qq in &[0.1, 0.5, 0.9, 2.0] {
            let expected = (1.0 - qq) / (1.0 + qq);
            assert!((tanh_q(0.0, q(qq)) - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn pythagorean_identity() {
        let c = cosh_q(1.3, q(0.7)).unwrap();
        let s = sinh_q(1.3, q(0.7)).unwrap();
        assert!((c * c - s * s - 0.7).abs() < 1e-14);
    }

    #[test]
    fn ratio_identity() {
        let c = cosh_q(2.0, q(0.9)).unwrap();
        let s = sinh_q(2.0, q(0.9)).unwrap();
        assert!((s / c - tanh_q(2.0, q(0.9))).abs() < 1e-14);
    }

    #[test]
    fn tanh_saturates() {
        assert!((tanh_q(50.0, q(0.5)) - 1.0).abs() < 1e-15);
        assert!((tanh_q(-50.0, q(0.5)) + 1.0).abs() < 1e-15);
        assert!(tanh_q(800.0, q(0.5)) <= 1.0);
    }

    #[test]
    fn overflow_is_reported() {
        assert!(matches!(cosh_q(1.0e4, q(1.0)), Err(Error::Overflow { .. })));
        assert!(matches!(
            sinh_q(-1.0e4, q(1.0)),
            Err(Error::Overflow { .. })
        ));
        // just beyond where a naive e^y would overflow
        assert!(cosh_q(709.9, q(1.0)).unwrap().is_finite());
    }

    #[test]
    fn rejects_nonpositive_q() {
        assert!(DeformParam::new(0.0).is_err());
        assert!(DeformParam::new(-1.0).is_err());
        assert!(DeformParam::new(f64::NAN).is_err());
    }

    #[test]
    fn works_in_single_precision() {
        let q32 = DeformParam::new(0.5f32).unwrap();
        assert!((cosh_q(0.0f32, q32).unwrap() - 0.75).abs() < 1e-7);
    }
}
