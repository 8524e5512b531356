//! Foundation numerics: q-deformed hyperbolic functions, the error-function
//! family (erf, erfc, Dawson, erfi) and terminating Gauss hypergeometric
//! polynomials.
//!
//! Everything here is pure and allocation-free except [`Hyp2F1Poly`], which
//! caches its coefficient table.

mod error_functions;
mod hyperbolic;
mod hypergeometric;

pub use error_functions::{dawson, erf, erfc, erfi, erfi_scaled};
pub use hyperbolic::{cosh_q, sinh_q, tanh_q, DeformParam};
pub use hypergeometric::{hyp2f1_poly, Hyp2F1Poly};
