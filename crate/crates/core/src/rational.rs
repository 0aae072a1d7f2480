//! Exact scalars, the Dunkl parameter and the generalized factorials.
//!
//! Every coefficient in the crate is a [`Rational`]. The Dunkl parameter
//! carries a shared, lazily grown table of the factorials
//!
//! ```text
//! gamma(2k)   = 2^(2k)   k! (nu+1)_k
//! gamma(2k+1) = 2^(2k+1) k! (nu+1)_(k+1)
//! ```
//!
//! which replace `n!` throughout the Dunkl calculus.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Builds `num/den` from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"-0.75"`.
///
/// Both ASCII `-` and the unicode minus sign are accepted.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let cleaned = s.trim().replace('\u{2212}', "-");
    if cleaned.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((int_part, frac_part)) = cleaned.split_once('.') {
        if cleaned.contains('/') {
            return Err(Error::Parse(format!("bad rational {s:?}")));
        }
        let negative = int_part.starts_with('-');
        let digits = format!("{}{}", int_part.trim_start_matches(['-', '+']), frac_part);
        let num = BigInt::from_str(&digits).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        let den = num_traits::pow(BigInt::from(10), frac_part.len());
        let value = Rational::new(num, den);
        return Ok(if negative { -value } else { value });
    }
    let value = Rational::from_str(&cleaned).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    Ok(value)
}

/// Canonical `"p/q"` (or `"p"`) string used by every serialized format.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Rising factorial `a (a+1) ... (a+k-1)`.
pub fn pochhammer(a: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    let mut term = a.clone();
    for _ in 0..k {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

/// Memo of `gamma(n, nu)` for one parameter value.
#[derive(Debug)]
pub struct GammaTable {
    nu: Rational,
    values: RwLock<Vec<Rational>>,
}

impl GammaTable {
    fn new(nu: Rational) -> Self {
        Self { nu, values: RwLock::new(vec![Rational::one()]) }
    }

    /// `gamma(n) / gamma(n-1)`: `n` for even `n`, `n + 2nu + 1` for odd `n`.
    fn step_ratio(&self, n: usize) -> Rational {
        let n_r = int(n as i64);
        if n.is_multiple_of(2) {
            n_r
        } else {
            n_r + int(2) * &self.nu + Rational::one()
        }
    }

    pub fn get(&self, n: usize) -> Rational {
        if let Some(v) = self.values.read().expect("gamma table poisoned").get(n) {
            return v.clone();
        }
        let mut values = self.values.write().expect("gamma table poisoned");
        while values.len() <= n {
            let m = values.len();
            let next = &values[m - 1] * self.step_ratio(m);
            values.push(next);
        }
        values[n].clone()
    }
}

/// The Dunkl parameter `nu > -1`, together with its factorial memo.
///
/// Clones share the memo. Equality and hashing look at `nu` only.
#[derive(Clone)]
pub struct DunklParam {
    nu: Rational,
    table: Arc<GammaTable>,
}

impl DunklParam {
    pub fn new(nu: Rational) -> Result<Self> {
        if nu <= -Rational::one() {
            return Err(Error::Domain(format!("nu must be > -1, got {nu}")));
        }
        Ok(Self { table: Arc::new(GammaTable::new(nu.clone())), nu })
    }

    /// Shorthand for `DunklParam::new(rat(num, den))`.
    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        Self::new(rat(num, den))
    }

    /// The classical parameter `nu = -1/2`, where the Dunkl calculus reduces to ordinary calculus.
    pub fn classical() -> Self {
        Self::new(rat(-1, 2)).expect("-1/2 > -1")
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(parse_rational(s)?)
    }

    pub fn nu(&self) -> &Rational {
        &self.nu
    }

    /// `nu + 1` as a parameter; used for the shifted kernel.
    pub fn shifted(&self) -> Self {
        Self::new(&self.nu + Rational::one()).expect("nu + 1 > -1")
    }

    pub fn gamma(&self, n: usize) -> Rational {
        self.table.get(n)
    }

    pub fn table(&self) -> &GammaTable {
        &self.table
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.nu)
    }
}

impl PartialEq for DunklParam {
    fn eq(&self, other: &Self) -> bool {
        self.nu == other.nu
    }
}

impl Eq for DunklParam {}

impl fmt::Debug for DunklParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DunklParam({})", self.nu)
    }
}

impl fmt::Display for DunklParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.nu)
    }
}

/// `gamma(n, nu)`; always positive.
pub fn gamma_factorial(n: usize, nu: &DunklParam) -> Rational {
    nu.gamma(n)
}

/// `gamma(n) / (gamma(k) gamma(n-k))` for `0 <= k <= n`, zero otherwise.
pub fn dunkl_binomial(n: usize, k: i64, nu: &DunklParam) -> Rational {
    if k < 0 || k as usize > n {
        return Rational::zero();
    }
    let k = k as usize;
    nu.gamma(n) / (nu.gamma(k) * nu.gamma(n - k))
}
