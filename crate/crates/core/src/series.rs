//! Truncated formal power series in `t` over [`Rational`].
//!
//! A [`Series`] stores the coefficients of `t^0 .. t^N` and nothing beyond;
//! every operation reports the order of its result, and equality compares
//! coefficients up to the smaller of the two orders.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, DunklParam, Rational};

/// `(n_k, d)` with `c_k = n_k / d` and `d` the lcm of the denominators.
fn scaled_integers(coeffs: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let nums = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (nums, den)
}

/// Default truncation order when none is configured.
pub const DEFAULT_ORDER: usize = 16;

#[derive(Clone)]
pub struct Series {
    coeffs: Vec<Rational>,
    nu: DunklParam,
}

/// The four Dunkl kernel series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    /// `E(t) = sum t^n / gamma(n)`
    E,
    /// even part, `sum t^(2n) / gamma(2n)`
    I,
    /// odd part, `t * I_(nu+1)(t) = 2(nu+1) sum t^(2n+1) / gamma(2n+1)`
    G,
    /// even part taken at `nu + 1`, still tagged with `nu`
    IShift,
}

impl Series {
    /// Pads with zeros or truncates so that exactly `order + 1` coefficients are kept.
    pub fn new(mut coeffs: Vec<Rational>, order: usize, nu: &DunklParam) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        Self { coeffs, nu: nu.clone() }
    }

    pub fn zero(order: usize, nu: &DunklParam) -> Self {
        Self::new(Vec::new(), order, nu)
    }

    pub fn one(order: usize, nu: &DunklParam) -> Self {
        Self::new(vec![Rational::one()], order, nu)
    }

    /// The series `t`.
    pub fn identity(order: usize, nu: &DunklParam) -> Self {
        Self::new(vec![Rational::zero(), Rational::one()], order, nu)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn nu(&self) -> &DunklParam {
        &self.nu
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^n`; zero past the truncation order.
    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_unit_type(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    pub fn is_delta_type(&self) -> bool {
        self.coeffs[0].is_zero() && self.coeffs.get(1).is_some_and(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()), &self.nu)
    }

    fn check_nu(&self, other: &Series) -> Result<()> {
        if self.nu != other.nu {
            return Err(Error::ParamMismatch(self.nu.to_string(), other.nu.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_nu(other)?;
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|n| &self.coeffs[n] + &other.coeffs[n]).collect();
        Ok(Series::new(coeffs, order, &self.nu))
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.check_nu(other)?;
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|n| &self.coeffs[n] - &other.coeffs[n]).collect();
        Ok(Series::new(coeffs, order, &self.nu))
    }

    pub fn scale(&self, c: &Rational) -> Series {
        Series::new(self.coeffs.iter().map(|a| a * c).collect(), self.order(), &self.nu)
    }

    /// Cauchy product, truncated at the smaller order.
    pub fn multiply(&self, other: &Series) -> Result<Series> {
        self.check_nu(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        // convolve integer numerators over a common denominator, reducing once per coefficient
        let (a, da) = scaled_integers(&self.coeffs[..=order]);
        let (b, db) = scaled_integers(&other.coeffs[..=order]);
        let mut out = vec![BigInt::zero(); order + 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(order + 1 - i) {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        let den = da * db;
        let coeffs = out.into_iter().map(|n| Rational::new(n, den.clone())).collect();
        Series::new(coeffs, order, &self.nu)
    }

    /// Multiplicative inverse of a unit-type series.
    pub fn reciprocal(&self) -> Result<Series> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NotInvertible("constant term is zero".into()));
        }
        let inv_a0 = a0.recip();
        let mut r: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        r.push(inv_a0.clone());
        for n in 1..=self.order() {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &r[n - k];
                }
            }
            r.push(-acc * &inv_a0);
        }
        Ok(Series::new(r, self.order(), &self.nu))
    }

    /// `self(inner(t))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        self.check_nu(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(Error::Domain("inner series of a composition must have zero constant term".into()));
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = Series::new(vec![self.coeffs[order].clone()], order, &self.nu);
        for k in (0..order).rev() {
            acc = acc.mul_unchecked(&inner);
            acc.coeffs[0] += &self.coeffs[k];
        }
        Ok(acc)
    }

    /// Compositional inverse of a delta-type series, by Lagrange inversion:
    /// `[t^n] rev = (1/n) [u^(n-1)] (u / f(u))^n`.
    pub fn reverse(&self) -> Result<Series> {
        if !self.is_delta_type() {
            return Err(Error::NotInvertible("reversion needs zero constant term and nonzero linear term".into()));
        }
        let order = self.order();
        // u / f(u), known to order - 1
        let shifted = Series::new(self.coeffs[1..].to_vec(), order - 1, &self.nu);
        let h = shifted.reciprocal()?;
        let mut out = vec![Rational::zero(); order + 1];
        let mut power = Series::one(order - 1, &self.nu);
        for (n, slot) in out.iter_mut().enumerate().skip(1) {
            power = power.mul_unchecked(&h);
            *slot = power.coeffs[n - 1].clone() / Rational::from_integer((n as i64).into());
        }
        Ok(Series::new(out, order, &self.nu))
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            nu: format_rational(self.nu.nu()),
            order: self.order(),
            coeffs: self.coeffs.iter().map(format_rational).collect(),
        }
    }

    pub fn from_json(json: &SeriesJson) -> Result<Series> {
        let nu = DunklParam::parse(&json.nu)?;
        let coeffs = json.coeffs.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>()?;
        if coeffs.len() != json.order + 1 {
            return Err(Error::Parse(format!("expected {} coefficients, got {}", json.order + 1, coeffs.len())));
        }
        Ok(Series::new(coeffs, json.order, &nu))
    }
}

impl PartialEq for Series {
    fn eq(&self, other: &Self) -> bool {
        let order = self.order().min(other.order());
        self.nu == other.nu && self.coeffs[..=order] == other.coeffs[..=order]
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        write!(f, "Series(nu={}, [{}] + O(t^{}))", self.nu, coeffs.join(", "), self.order() + 1)
    }
}

/// Wire form: `{"nu":"p/q","order":N,"coeffs":["c0",...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub nu: String,
    pub order: usize,
    pub coeffs: Vec<String>,
}

/// Builds one of the Dunkl kernel series up to `t^order`.
pub fn dunkl_kernel_series(kind: KernelKind, nu: &DunklParam, order: usize) -> Series {
    let mut coeffs = vec![Rational::zero(); order + 1];
    match kind {
        KernelKind::E => {
            for (n, c) in coeffs.iter_mut().enumerate() {
                *c = nu.gamma(n).recip();
            }
        }
        KernelKind::I => {
            for n in (0..=order).step_by(2) {
                coeffs[n] = nu.gamma(n).recip();
            }
        }
        KernelKind::G => {
            let shifted = nu.shifted();
            for n in (1..=order).step_by(2) {
                coeffs[n] = shifted.gamma(n - 1).recip();
            }
        }
        KernelKind::IShift => {
            let shifted = nu.shifted();
            for n in (0..=order).step_by(2) {
                coeffs[n] = shifted.gamma(n).recip();
            }
        }
    }
    Series::new(coeffs, order, nu)
}
