//! 256-bit reference values for the error-function family, summed straight
//! from the defining Maclaurin series.

use astro_float::{BigFloat, Consts, RoundingMode};

const P: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

fn big(x: f64) -> BigFloat {
    BigFloat::from_f64(x, P)
}

fn two_over_sqrt_pi(cc: &mut Consts) -> BigFloat {
    big(2.0).div(&cc.pi(P, RM).sqrt(P, RM), P, RM)
}

/// `Σ s^k x^{2k+1} / (k! (2k+1))` with `s = ±1`, run until the terms are
/// below 2^-300 of the running sum.
fn series(x: f64, alternating: bool) -> BigFloat {
    let x = big(x);
    let x2 = x.mul(&x, P, RM);
    let x2 = if alternating { x2.neg() } else { x2 };
    let mut power = x.clone();
    let mut sum = x;
    let eps = big(2f64.powi(-300));
    for k in 1u64..100_000 {
        power = power.mul(&x2, P, RM).div(&BigFloat::from_u64(k, P), P, RM);
        let term = power.div(&BigFloat::from_u64(2 * k + 1, P), P, RM);
        sum = sum.add(&term, P, RM);
        let ratio = term.div(&sum, P, RM).abs();
        if ratio.cmp(&eps) == Some(-1) && k as f64 > 2.0 * x2.abs().exponent().unwrap_or(0) as f64 {
            break;
        }
    }
    sum
}

pub struct Oracle {
    cc: Consts,
}

impl Oracle {
    pub fn new() -> Self {
        Self {
            cc: Consts::new().expect("constant cache"),
        }
    }

    pub fn erf(&mut self, x: f64) -> BigFloat {
        two_over_sqrt_pi(&mut self.cc).mul(&series(x, true), P, RM)
    }

    pub fn erfi(&mut self, x: f64) -> BigFloat {
        two_over_sqrt_pi(&mut self.cc).mul(&series(x, false), P, RM)
    }

    /// `e^{−x²} Σ x^{2k+1} / (k! (2k+1))`
    pub fn dawson(&mut self, x: f64) -> BigFloat {
        let b = big(x);
        let decay = b.mul(&b, P, RM).neg().exp(P, RM, &mut self.cc);
        series(x, false).mul(&decay, P, RM)
    }
}

/// `|value − reference| / |reference|`, rounded to `f64`.
pub fn rel_err(value: f64, reference: &BigFloat) -> f64 {
    let diff = big(value).sub(reference, P, RM).div(reference, P, RM).abs();
    to_f64(&diff)
}

pub fn to_f64(v: &BigFloat) -> f64 {
    let text = format!("{v}");
    text.parse()
        .unwrap_or_else(|_| panic!("unparseable oracle output {text}"))
}
