//! Floating-point cross-checks of the two Bessel-K densities whose moments
//! are the Dunkl factorials.
//!
//! * signed: `|x|^(nu+1) (K_nu(|x|) + sgn(x) K_(nu+1)(|x|)) / (2^(nu+1) Gamma(nu+1))`,
//!   moments `gamma(n)`; a positive density for `-1 < nu <= -1/2`.
//! * even: `|x|^(nu+1) K_nu(|x|) / (2^(nu+1) Gamma(nu+1))`, moments
//!   `gamma(2k)` at `n = 2k` and zero at odd `n`; positive for `nu > -1`.

mod bessel;
mod quadrature;

pub use bessel::bessel_k;
pub use quadrature::{Estimate, Quadrature};

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::rational::{to_f64, DunklParam, Rational};

/// Largest moment index the quadrature budget is sized for.
pub const MAX_MOMENT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DensityKind {
    BesselKSigned,
    BesselKEven,
}

impl DensityKind {
    pub fn name(self) -> &'static str {
        match self {
            DensityKind::BesselKSigned => "besselK_signed",
            DensityKind::BesselKEven => "besselK_even",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "besselK_signed" | "besselk-signed" | "signed" => Ok(DensityKind::BesselKSigned),
            "besselK_even" | "besselk-even" | "even" => Ok(DensityKind::BesselKEven),
            _ => Err(Error::Parse(format!("unknown density {s:?}"))),
        }
    }
}

/// A density at a fixed parameter, validated against its positivity range.
#[derive(Debug, Clone)]
pub struct DensityEval {
    kind: DensityKind,
    nu: f64,
    exact_nu: Option<DunklParam>,
    norm: f64,
}

impl DensityEval {
    pub fn new(kind: DensityKind, nu: f64) -> Result<Self> {
        let valid = match kind {
            DensityKind::BesselKSigned => nu > -1.0 && nu <= -0.5,
            DensityKind::BesselKEven => nu > -1.0,
        };
        if !valid || !nu.is_finite() {
            let range = match kind {
                DensityKind::BesselKSigned => "-1 < nu <= -1/2",
                DensityKind::BesselKEven => "nu > -1",
            };
            return Err(Error::Domain(format!("{} needs {range}, got {nu}", kind.name())));
        }
        let norm = 2f64.powf(nu + 1.0) * gamma(nu + 1.0);
        Ok(Self { kind, nu, exact_nu: None, norm })
    }

    /// Keeps the exact parameter so targets are computed in rationals.
    pub fn from_param(kind: DensityKind, nu: &DunklParam) -> Result<Self> {
        let mut d = Self::new(kind, nu.to_f64())?;
        d.exact_nu = Some(nu.clone());
        Ok(d)
    }

    pub fn kind(&self) -> DensityKind {
        self.kind
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// Density value at `x != 0`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        let y = x.abs();
        let base = y.powf(self.nu + 1.0) * bessel_k(self.nu, y)?;
        let value = match self.kind {
            DensityKind::BesselKEven => base,
            DensityKind::BesselKSigned => {
                let odd = y.powf(self.nu + 1.0) * bessel_k(self.nu + 1.0, y)?;
                base + x.signum() * odd
            }
        };
        Ok(value / self.norm)
    }

    /// Power of `y` governing `|y|^n * density` near the origin.
    fn origin_exponent(&self, n: usize) -> f64 {
        let worst_order = match self.kind {
            DensityKind::BesselKEven => self.nu.abs(),
            DensityKind::BesselKSigned => self.nu.abs().max((self.nu + 1.0).abs()),
        };
        n as f64 + self.nu + 1.0 - worst_order
    }

    /// Exact target moment: `gamma(n)` (signed) or `gamma(n)`/0 by parity (even).
    pub fn target_moment(&self, n: usize) -> f64 {
        let even_only = self.kind == DensityKind::BesselKEven;
        if even_only && n % 2 == 1 {
            return 0.0;
        }
        match &self.exact_nu {
            Some(p) => to_f64(&p.gamma(n)),
            None => gamma_factorial_f64(n, self.nu),
        }
    }

    pub fn target_moment_exact(&self, n: usize) -> Option<Rational> {
        let p = self.exact_nu.as_ref()?;
        if self.kind == DensityKind::BesselKEven && n % 2 == 1 {
            return Some(Rational::zero());
        }
        Some(p.gamma(n))
    }
}

/// Floating-point `gamma(n, nu)` for parameters without an exact form.
pub fn gamma_factorial_f64(n: usize, nu: f64) -> f64 {
    (1..=n).fold(1.0, |acc, m| acc * if m % 2 == 0 { m as f64 } else { m as f64 + 2.0 * nu + 1.0 })
}

/// `int x^n density(x) dx` over the real line, one half-line at a time.
pub fn density_moment(d: &DensityEval, n: usize, quad: &Quadrature) -> Result<f64> {
    density_moment_estimate(d, n, quad).map(|e| e.value)
}

pub fn density_moment_estimate(d: &DensityEval, n: usize, quad: &Quadrature) -> Result<Estimate> {
    if n > MAX_MOMENT {
        return Err(Error::Domain(format!("moment index {n} exceeds {MAX_MOMENT}")));
    }
    let exponent = d.origin_exponent(n);
    let mut total = Estimate { value: 0.0, error: 0.0 };
    for side in [1.0f64, -1.0] {
        let sign = side.powi(n as i32);
        let integrand = |y: f64| -> f64 {
            if y <= 0.0 {
                return 0.0;
            }
            // outside the contracted domain K is still finite; treat failures as 0 only past underflow
            match d.eval(side * y) {
                Ok(v) => sign * y.powi(n as i32) * v,
                Err(_) => 0.0,
            }
        };
        let near = quad.integrate_power_singular(integrand, 1.0, exponent)?;
        let far = quad.integrate_to_infinity(integrand, 1.0)?;
        total.value += near.value + far.value;
        total.error += near.error + far.error;
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentRow {
    pub n: usize,
    pub numeric: f64,
    pub target: f64,
    pub rel_err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub density: String,
    pub nu: f64,
    pub rows: Vec<MomentRow>,
    pub pass: bool,
}

/// Compares quadrature moments `0..=n_max` with their targets.
///
/// `rel_err` is `|numeric - target| / |target|`, or `|numeric|` when the target is zero.
pub fn crosscheck_moments(d: &DensityEval, n_max: usize, tol: f64) -> Result<CrosscheckReport> {
    let quad = Quadrature::with_rel_tol((tol * 1e-3).max(1e-12));
    let rows = (0..=n_max)
        .map(|n| {
            let numeric = density_moment(d, n, &quad)?;
            let target = d.target_moment(n);
            let rel_err = if target == 0.0 { numeric.abs() } else { ((numeric - target) / target).abs() };
            Ok(MomentRow { n, numeric, target, rel_err })
        })
        .collect::<Result<Vec<_>>>()?;
    let pass = rows.iter().all(|r| r.rel_err <= tol);
    Ok(CrosscheckReport { density: d.kind.name().to_string(), nu: d.nu, rows, pass })
}
