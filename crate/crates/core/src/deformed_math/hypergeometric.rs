use crate::{Error, Real, Result};

/// Terminating series `₂F₁(−n, b; c; x)` with its coefficients cached, so
/// that repeated evaluation is a single Horner pass.
#[derive(Debug, Clone)]
pub struct Hyp2F1Poly<T> {
    coefficients: Vec<T>,
}

impl<T: Real> Hyp2F1Poly<T> {
    pub fn new(n: usize, b: T, c: T) -> Result<Self> {
        let mut coefficients = Vec::with_capacity(n + 1);
        let mut coef = T::one();
        coefficients.push(coef);
        for k in 0..n {
            let ck = c + T::lit(k as f64);
            if ck == T::zero() {
                return Err(Error::DegenerateDenominator { index: k });
            }
            let kf = T::lit(k as f64);
            // (−n)_{k+1}/(−n)_k = k − n, and likewise for b and c
            coef = coef * (kf - T::lit(n as f64)) * (b + kf) / (ck * (kf + T::one()));
            coefficients.push(coef);
        }
        Ok(Self { coefficients })
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coefficients
    }

    pub fn eval(&self, x: T) -> T {
        self.coefficients
            .iter()
            .rev()
            .fold(T::zero(), |acc, &c| acc.mul_add(x, c))
    }
}

/// `₂F₁(−n, b; c; x)` as the finite sum over `k = 0..=n`.
pub fn hyp2f1_poly<T: Real>(n: usize, b: T, c: T, x: T) -> Result<T> {
    Ok(Hyp2F1Poly::new(n, b, c)?.eval(x))
}
