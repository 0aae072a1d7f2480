//! Modified Bessel function of the second kind from its integral representation
//!
//! ```text
//! K_nu(x) = int_0^inf exp(-x cosh u) cosh(nu u) du
//! ```
//!
//! evaluated as `exp(-x) int_0^U exp(-2x sinh^2(u/2)) cosh(nu u) du`, with `U`
//! past the point where the integrand has decayed by `exp(-45)`.

use crate::error::{Error, Result};
use crate::numeric::quadrature::Quadrature;

const TAIL_DECAY: f64 = 45.0;

fn upper_limit(nu: f64, x: f64) -> f64 {
    let nu = nu.abs();
    let mut u: f64 = 1.0;
    while x * 2.0 * (0.5 * u).sinh().powi(2) - nu * u < TAIL_DECAY {
        u += 0.5;
    }
    u
}

/// `K_nu(x)` for `x > 0`; relative accuracy about 1e-13 for `x` in `[1e-3, 50]`, `|nu| <= 2`.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 || x.is_infinite() {
        return Err(Error::Domain(format!("K_nu(x) needs x > 0, got {x}")));
    }
    let quad = Quadrature::with_rel_tol(1e-13);
    let upper = upper_limit(nu, x);
    let integrand = |u: f64| (-2.0 * x * (0.5 * u).sinh().powi(2)).exp() * (nu * u).cosh();
    let est = quad.integrate(integrand, 0.0, upper)?;
    Ok(est.value * (-x).exp())
}
