//! Exact polynomials in `x` and the Dunkl operator calculus acting on them.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{dunkl_binomial, format_rational, int, parse_rational, DunklParam, Rational};
use crate::series::Series;

/// Polynomial in `x`, coefficients in ascending degree, trailing zeros trimmed.
#[derive(Clone)]
pub struct Poly {
    coeffs: Vec<Rational>,
    nu: DunklParam,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>, nu: &DunklParam) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs, nu: nu.clone() }
    }

    pub fn zero(nu: &DunklParam) -> Self {
        Self::new(Vec::new(), nu)
    }

    pub fn constant(c: Rational, nu: &DunklParam) -> Self {
        Self::new(vec![c], nu)
    }

    /// `c x^n`
    pub fn monomial(n: usize, c: Rational, nu: &DunklParam) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = c;
        Self::new(coeffs, nu)
    }

    pub fn nu(&self) -> &DunklParam {
        &self.nu
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k) + other.coeff(k)).collect(), &self.nu)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k) - other.coeff(k)).collect(), &self.nu)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect(), &self.nu)
    }

    /// Ordinary `m`-th derivative `d^m/dx^m`.
    pub fn derivative(&self, m: usize) -> Poly {
        if m >= self.coeffs.len() {
            return Poly::zero(&self.nu);
        }
        let coeffs = (m..self.coeffs.len())
            .map(|k| {
                let falling: i64 = ((k - m + 1)..=k).map(|j| j as i64).product();
                &self.coeffs[k] * int(falling)
            })
            .collect();
        Poly::new(coeffs, &self.nu)
    }

    /// `Lambda^r p`, using `Lambda x^n = (gamma(n)/gamma(n-1)) x^(n-1)`.
    pub fn dunkl_derivative(&self, r: usize) -> Poly {
        let mut p = self.clone();
        for _ in 0..r {
            p = p.dunkl_derivative_once();
            if p.is_zero() {
                break;
            }
        }
        p
    }

    fn dunkl_derivative_once(&self) -> Poly {
        let coeffs =
            (1..self.coeffs.len()).map(|n| &self.coeffs[n] * self.nu.gamma(n) / self.nu.gamma(n - 1)).collect();
        Poly::new(coeffs, &self.nu)
    }

    /// Dunkl translation `tau_y p(x) = sum_n Lambda^n p(x) y^n / gamma(n)`.
    pub fn translate(&self) -> BiPoly {
        let mut out = BiPoly::zero(&self.nu);
        let mut power = self.clone();
        let mut n = 0;
        while !power.is_zero() {
            let scale = self.nu.gamma(n).recip();
            for (i, c) in power.coeffs.iter().enumerate() {
                out.add_term(i, n, c * &scale);
            }
            power = power.dunkl_derivative_once();
            n += 1;
        }
        out.trim();
        out
    }

    /// `L_f p = sum_{n>=1} f_n Lambda^n p`, applied `r` times, where `f_n` is
    /// the `t^n` coefficient of the delta-type series `f`.
    pub fn apply_lf(&self, f: &Series, r: usize) -> Result<Poly> {
        if !f.is_delta_type() {
            return Err(Error::Domain("L_f needs a delta-type series (f_0 = 0, f_1 != 0)".into()));
        }
        if f.nu() != &self.nu {
            return Err(Error::ParamMismatch(f.nu().to_string(), self.nu.to_string()));
        }
        let degree = self.degree().unwrap_or(0);
        if f.order() < degree {
            return Err(Error::Precision { needed: degree, available: f.order() });
        }
        let mut p = self.clone();
        for _ in 0..r {
            if p.is_zero() {
                break;
            }
            p = apply_lf_once(f, &p);
        }
        Ok(p)
    }

    /// `(nu+1)(tau_1 p - tau_{-1} p)`.
    pub fn discrete_difference(&self) -> Poly {
        let tau = self.translate();
        let diff = tau.specialize_y(&int(1)).sub(&tau.specialize_y(&int(-1)));
        diff.scale(&(self.nu.nu() + Rational::one()))
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson { nu: format_rational(self.nu.nu()), coeffs: self.coeffs.iter().map(format_rational).collect() }
    }

    pub fn from_json(json: &PolyJson) -> Result<Poly> {
        let nu = DunklParam::parse(&json.nu)?;
        let coeffs = json.coeffs.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(coeffs, &nu))
    }
}

fn apply_lf_once(f: &Series, p: &Poly) -> Poly {
    let mut acc = Poly::zero(&p.nu);
    let mut power = p.dunkl_derivative_once();
    let mut n = 1;
    while !power.is_zero() {
        let fn_coeff = f.coeff(n);
        if !fn_coeff.is_zero() {
            acc = acc.add(&power.scale(&fn_coeff));
        }
        power = power.dunkl_derivative_once();
        n += 1;
    }
    acc
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.nu == other.nu && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    /// `x^3 - 2/3*x + 1`, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let power = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            if k == 0 {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{power}")?;
            } else {
                write!(f, "{magnitude}*{power}")?;
            }
        }
        Ok(())
    }
}

/// Wire form: `{"nu":"p/q","coeffs":["c0",...,"cd"]}`, ascending degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub nu: String,
    pub coeffs: Vec<String>,
}

/// Polynomial in `(x, y)`: `coeffs[i][j]` multiplies `x^i y^j`.
#[derive(Clone)]
pub struct BiPoly {
    coeffs: Vec<Vec<Rational>>,
    nu: DunklParam,
}

impl BiPoly {
    pub fn zero(nu: &DunklParam) -> Self {
        Self { coeffs: Vec::new(), nu: nu.clone() }
    }

    pub fn nu(&self) -> &DunklParam {
        &self.nu
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        self.coeffs.get(i).and_then(|row| row.get(j)).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, i: usize, j: usize, c: Rational) {
        if self.coeffs.len() <= i {
            self.coeffs.resize(i + 1, Vec::new());
        }
        let row = &mut self.coeffs[i];
        if row.len() <= j {
            row.resize(j + 1, Rational::zero());
        }
        row[j] += c;
    }

    fn trim(&mut self) {
        for row in &mut self.coeffs {
            while row.last().is_some_and(|c| c.is_zero()) {
                row.pop();
            }
        }
        while self.coeffs.last().is_some_and(|r| r.is_empty()) {
            self.coeffs.pop();
        }
    }

    /// Largest power of `y` that appears.
    pub fn y_degree(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(|row| row.len().checked_sub(1)).max()
    }

    /// The polynomial in `x` multiplying `y^j`.
    pub fn y_coefficient(&self, j: usize) -> Poly {
        Poly::new(self.coeffs.iter().map(|row| row.get(j).cloned().unwrap_or_else(Rational::zero)).collect(), &self.nu)
    }

    /// Substitutes `y = c`.
    pub fn specialize_y(&self, c: &Rational) -> Poly {
        let coeffs =
            self.coeffs.iter().map(|row| row.iter().rev().fold(Rational::zero(), |acc, a| acc * c + a)).collect();
        Poly::new(coeffs, &self.nu)
    }

    /// Substitutes `x = c`, leaving a polynomial in `y`.
    pub fn specialize_x(&self, c: &Rational) -> Poly {
        let len = self.y_degree().map_or(0, |d| d + 1);
        let mut coeffs = vec![Rational::zero(); len];
        let mut x_pow = Rational::one();
        for row in &self.coeffs {
            for (j, a) in row.iter().enumerate() {
                coeffs[j] += a * &x_pow;
            }
            x_pow *= c;
        }
        Poly::new(coeffs, &self.nu)
    }
}

impl PartialEq for BiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.nu == other.nu && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    terms.push(format!("({c})x^{i}y^{j}"));
                }
            }
        }
        write!(f, "BiPoly(nu={}, {})", self.nu, terms.join(" + "))
    }
}

/// `translate(x^n)` built from the Dunkl-binomial rule.
pub fn translate_monomial_binomial(n: usize, nu: &DunklParam) -> BiPoly {
    let mut out = BiPoly::zero(nu);
    for k in 0..=n {
        out.add_term(n - k, k, dunkl_binomial(n, k as i64, nu));
    }
    out.trim();
    out
}
