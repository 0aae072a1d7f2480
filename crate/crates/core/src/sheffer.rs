//! Sheffer-Dunkl sequences: generation from a pair `(g, f)`, the named
//! families, and reconstruction from a moment sequence.
//!
//! A pair `(g, f)` with `g(0) != 0` and `f(0) = 0, f'(0) != 0` determines
//! polynomials `s_n` through
//!
//! ```text
//! E(x fbar(t)) / g(fbar(t)) = sum_n s_n(x) t^n / gamma(n)
//! ```
//!
//! where `fbar` is the compositional inverse of `f` and `E` the Dunkl kernel.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Poly, PolyJson};
use crate::rational::{format_rational, int, DunklParam, Rational};
use crate::series::{dunkl_kernel_series, KernelKind, Series};

/// A validated generating pair.
#[derive(Clone, Debug)]
pub struct FamilySpec {
    g: Series,
    f: Series,
    name: Option<String>,
}

impl FamilySpec {
    pub fn new(g: Series, f: Series, name: Option<String>) -> Result<Self> {
        if g.nu() != f.nu() {
            return Err(Error::ParamMismatch(g.nu().to_string(), f.nu().to_string()));
        }
        if !g.is_unit_type() {
            return Err(Error::Domain("g must have a nonzero constant term".into()));
        }
        if !f.is_delta_type() {
            return Err(Error::Domain("f must have zero constant term and nonzero linear term".into()));
        }
        Ok(Self { g, f, name })
    }

    pub fn g(&self) -> &Series {
        &self.g
    }

    pub fn f(&self) -> &Series {
        &self.f
    }

    pub fn nu(&self) -> &DunklParam {
        self.g.nu()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Usable truncation order of the pair.
    pub fn order(&self) -> usize {
        self.g.order().min(self.f.order())
    }

    /// The pair `(1, f)` generating the associated sequence of `f`.
    pub fn associated(&self) -> FamilySpec {
        let g = Series::one(self.f.order(), self.nu());
        FamilySpec { g, f: self.f.clone(), name: Some(format!("associated({})", self.name.as_deref().unwrap_or("f"))) }
    }

    /// `g` is identically one.
    pub fn is_associated(&self) -> bool {
        self.g.coeff(0).is_one() && self.g.coeffs().iter().skip(1).all(Zero::is_zero)
    }
}

/// `s_0 .. s_N` together with the pair that generated them.
#[derive(Clone, Debug)]
pub struct PolySequence {
    spec: FamilySpec,
    polys: Vec<Poly>,
}

impl PolySequence {
    pub fn new(spec: FamilySpec, polys: Vec<Poly>) -> Self {
        Self { spec, polys }
    }

    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn get(&self, n: usize) -> &Poly {
        &self.polys[n]
    }

    /// Index of the last polynomial.
    pub fn max_index(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn nu(&self) -> &DunklParam {
        self.spec.nu()
    }

    pub fn to_json(&self) -> PolySequenceJson {
        PolySequenceJson {
            family: self.spec.name().unwrap_or("custom").to_string(),
            nu: format_rational(self.nu().nu()),
            polys: self.polys.iter().map(Poly::to_json).collect(),
        }
    }
}

impl PartialEq for PolySequence {
    /// Compares the polynomials only.
    fn eq(&self, other: &Self) -> bool {
        self.polys == other.polys
    }
}

/// Wire form: `{"family":name,"nu":"p/q","polys":[Poly,...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolySequenceJson {
    pub family: String,
    pub nu: String,
    pub polys: Vec<PolyJson>,
}

/// Expands the generating function of `spec` into `s_0 ..= s_max_n`.
pub fn generate_sequence(spec: &FamilySpec, max_n: usize) -> Result<PolySequence> {
    if spec.order() < max_n {
        return Err(Error::Precision { needed: max_n, available: spec.order() });
    }
    let nu = spec.nu();
    let f = spec.f.truncate(max_n);
    let g = spec.g.truncate(max_n);
    let inverse = f.reverse()?;
    let weight = g.compose(&inverse)?.reciprocal()?;

    // column m holds [t^n] weight * inverse^m
    let mut columns = Vec::with_capacity(max_n + 1);
    let mut current = weight;
    for _ in 0..=max_n {
        columns.push(current.clone());
        current = current.multiply(&inverse)?;
    }

    let polys = (0..=max_n)
        .map(|n| {
            let gamma_n = nu.gamma(n);
            let coeffs = (0..=n).map(|m| &gamma_n * columns[m].coeff(n) / nu.gamma(m)).collect();
            Poly::new(coeffs, nu)
        })
        .collect();
    Ok(PolySequence::new(spec.clone(), polys))
}

/// Reconstructs `s_0 ..= s_max_n` from the moments `mu` of a functional
/// satisfying `mu(L_f^r s_n) = gamma(n) delta(n, r)`.
///
/// The coefficients of each `s_n` solve an upper-triangular system whose
/// entries are `mu(L_f^r x^k)`; entries vanish for `k < r` and the diagonal is
/// `mu_0 f_1^r gamma(r)`, so `mu_0 != 0` is exactly the solvability condition.
pub fn sequence_from_thorne(f: &Series, mu: &[Rational], max_n: usize) -> Result<PolySequence> {
    let nu = f.nu();
    if !f.is_delta_type() {
        return Err(Error::Domain("f must have zero constant term and nonzero linear term".into()));
    }
    if f.order() < max_n {
        return Err(Error::Precision { needed: max_n, available: f.order() });
    }
    if mu.len() <= max_n {
        return Err(Error::Precision { needed: max_n, available: mu.len().saturating_sub(1) });
    }
    if mu[0].is_zero() {
        return Err(Error::Singular("mu_0 = 0".into()));
    }
    let functional = |p: &Poly| -> Rational { p.coeffs().iter().zip(mu).map(|(c, m)| c * m).sum() };

    // matrix[r][k] = mu(L_f^r x^k)
    let mut matrix = vec![vec![Rational::zero(); max_n + 1]; max_n + 1];
    for k in 0..=max_n {
        let mut p = Poly::monomial(k, Rational::one(), nu);
        for row in matrix.iter_mut().take(k + 1) {
            row[k] = functional(&p);
            p = p.apply_lf(f, 1)?;
        }
    }

    let mut polys = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        let mut c = vec![Rational::zero(); n + 1];
        for r in (0..=n).rev() {
            let rhs = if r == n { nu.gamma(n) } else { Rational::zero() };
            let known: Rational = ((r + 1)..=n).map(|k| &matrix[r][k] * &c[k]).sum();
            let pivot = &matrix[r][r];
            if pivot.is_zero() {
                return Err(Error::Singular(format!("zero pivot at r = {r}")));
            }
            c[r] = (rhs - known) / pivot;
        }
        polys.push(Poly::new(c, nu));
    }

    let g = generating_from_moments(mu, nu, max_n);
    let spec = FamilySpec::new(g, f.truncate(max_n), Some("thorne".into()))?;
    Ok(PolySequence::new(spec, polys))
}

/// `sum_n moments[n] t^n / gamma(n)` up to `t^order`.
pub fn generating_from_moments(moments: &[Rational], nu: &DunklParam, order: usize) -> Series {
    let coeffs = (0..=order).map(|n| moments.get(n).map_or_else(Rational::zero, |m| m / nu.gamma(n))).collect();
    Series::new(coeffs, order, nu)
}

/// Moment sequence `n -> gamma(n) [t^n] s` of a series.
pub fn moments_of(s: &Series) -> Vec<Rational> {
    s.coeffs().iter().enumerate().map(|(n, c)| c * s.nu().gamma(n)).collect()
}

/// The named families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Preset {
    /// `(1 - t, t)`: truncated Appell-Dunkl
    Truncated,
    /// `(1 - t^2, t)`
    TruncatedT2,
    /// `(I_(nu+1), t)`: Bernoulli-Dunkl
    Bernoulli,
    /// `(I_nu, t)`: Euler-Dunkl
    Euler,
    /// `(1 - t, G)`: discrete truncated
    AppellDiscreteTruncated,
    /// `(1, G)`: Dunkl factorial polynomials
    Factorial,
    /// `(u / G(u), G)`: Bernoulli-Dunkl of the second kind
    Bernoulli2nd,
    /// `(I_nu, G)`: Boole-Dunkl
    Boole,
}

impl Preset {
    pub const ALL: [Preset; 8] = [
        Preset::Truncated,
        Preset::TruncatedT2,
        Preset::Bernoulli,
        Preset::Euler,
        Preset::AppellDiscreteTruncated,
        Preset::Factorial,
        Preset::Bernoulli2nd,
        Preset::Boole,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Truncated => "truncated",
            Preset::TruncatedT2 => "truncated_t2",
            Preset::Bernoulli => "bernoulli",
            Preset::Euler => "euler",
            Preset::AppellDiscreteTruncated => "appell_discrete_truncated",
            Preset::Factorial => "factorial",
            Preset::Bernoulli2nd => "bernoulli_2nd",
            Preset::Boole => "boole",
        }
    }

    /// Whether `f = G` (difference-operator families) rather than `f = t`.
    pub fn is_discrete(self) -> bool {
        matches!(self, Preset::AppellDiscreteTruncated | Preset::Factorial | Preset::Bernoulli2nd | Preset::Boole)
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s || p.name().replace('_', "-") == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// The `(g, f)` pair of a named family, truncated at `order`.
pub fn preset_family(preset: Preset, nu: &DunklParam, order: usize) -> FamilySpec {
    let t = Series::identity(order, nu);
    let odd = || dunkl_kernel_series(KernelKind::G, nu, order);
    let one_minus = |k: usize| {
        let mut c = vec![Rational::zero(); k + 1];
        c[0] = Rational::one();
        c[k] = int(-1);
        Series::new(c, order, nu)
    };
    let (g, f) = match preset {
        Preset::Truncated => (one_minus(1), t),
        Preset::TruncatedT2 => (one_minus(2), t),
        Preset::Bernoulli => (dunkl_kernel_series(KernelKind::IShift, nu, order), t),
        Preset::Euler => (dunkl_kernel_series(KernelKind::I, nu, order), t),
        Preset::AppellDiscreteTruncated => (one_minus(1), odd()),
        Preset::Factorial => (Series::one(order, nu), odd()),
        Preset::Bernoulli2nd => {
            // u / G(u): G(u)/u is G shifted down one place, so build G one order higher
            let wide = dunkl_kernel_series(KernelKind::G, nu, order + 1);
            let g_over_u = Series::new(wide.coeffs()[1..].to_vec(), order, nu);
            let g = g_over_u.reciprocal().expect("G(u)/u has constant term 1");
            (g, odd())
        }
        Preset::Boole => (dunkl_kernel_series(KernelKind::I, nu, order), odd()),
    };
    FamilySpec::new(g, f, Some(preset.name().to_string())).expect("preset pairs are valid")
}

/// Shorthand for `generate_sequence(&preset_family(..), max_n)` with order `max_n`.
pub fn preset_sequence(preset: Preset, nu: &DunklParam, max_n: usize) -> PolySequence {
    generate_sequence(&preset_family(preset, nu, max_n), max_n).expect("order matches request")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{dunkl_binomial, rat};

    fn params() -> Vec<DunklParam> {
        [rat(-1, 2), rat(0, 1), rat(1, 4), rat(3, 2)].into_iter().map(|n| DunklParam::new(n).unwrap()).collect()
    }

    fn factorial(n: usize) -> Rational {
        (1..=n as i64).fold(Rational::one(), |acc, k| acc * int(k))
    }

    #[test]
    fn truncated_closed_form() {
        for nu in params() {
            let seq = preset_sequence(Preset::Truncated, &nu, 10);
            for n in 0..=10 {
                let expected = Poly::new((0..=n).map(|k| nu.gamma(n) / nu.gamma(k)).collect(), &nu);
                assert_eq!(seq.get(n), &expected);
            }
        }
        let nu0 = DunklParam::from_ratio(0, 1).unwrap();
        let s2 = preset_sequence(Preset::Truncated, &nu0, 2).get(2).clone();
        assert_eq!(s2, Poly::new(vec![int(4), int(2), int(1)], &nu0));

        let classical = DunklParam::classical();
        let seq = preset_sequence(Preset::Truncated, &classical, 8);
        for n in 0..=8 {
            let expected = Poly::new((0..=n).map(|k| factorial(n) / factorial(k)).collect(), &classical);
            assert_eq!(seq.get(n), &expected);
        }
    }

    #[test]
    fn truncated_t2_closed_form() {
        for nu in params() {
            let seq = preset_sequence(Preset::TruncatedT2, &nu, 10);
            for n in 0..=10usize {
                let mut coeffs = vec![Rational::zero(); n + 1];
                for k in 0..=n / 2 {
                    coeffs[n - 2 * k] = nu.gamma(n) / nu.gamma(n - 2 * k);
                }
                assert_eq!(seq.get(n), &Poly::new(coeffs, &nu));
            }
        }
    }

    #[test]
    fn trivial_pair_gives_monomials() {
        let nu = DunklParam::from_ratio(1, 4).unwrap();
        let spec = FamilySpec::new(Series::one(9, &nu), Series::identity(9, &nu), None).unwrap();
        let seq = generate_sequence(&spec, 9).unwrap();
        for n in 0..=9 {
            assert_eq!(seq.get(n), &Poly::monomial(n, int(1), &nu));
        }
    }

    #[test]
    fn euler_values_at_plus_minus_one() {
        // E(t)/I(t) = 1 + G(t) / (2(nu+1) I(t)): the even-index values at +-1
        // vanish and the odd-index ones are opposite and nonzero.
        for nu in params() {
            let seq = preset_sequence(Preset::Euler, &nu, 12);
            for n in 1..=12 {
                let (plus, minus) = (seq.get(n).eval(&int(1)), seq.get(n).eval(&int(-1)));
                assert!((&plus + &minus).is_zero());
                assert_eq!(plus.is_zero(), n % 2 == 0, "n = {n}");
            }
            assert_eq!(seq.get(1).eval(&int(1)), int(1));
        }
    }

    #[test]
    fn degree_and_normalization() {
        for nu in params() {
            for preset in Preset::ALL {
                let spec = preset_family(preset, &nu, 10);
                let seq = generate_sequence(&spec, 10).unwrap();
                assert_eq!(seq.get(0), &Poly::constant(spec.g().coeff(0).recip(), &nu));
                for n in 0..=10 {
                    assert_eq!(seq.get(n).degree(), Some(n), "{preset} n={n}");
                }
            }
        }
    }

    #[test]
    fn lowering_identity_all_presets() {
        for nu in params() {
            for preset in Preset::ALL {
                let seq = preset_sequence(preset, &nu, 12);
                let f = seq.spec().f();
                for n in 1..=12 {
                    let lhs = seq.get(n).apply_lf(f, 1).unwrap();
                    let rhs = seq.get(n - 1).scale(&(nu.gamma(n) / nu.gamma(n - 1)));
                    assert_eq!(lhs, rhs, "{preset} nu={nu} n={n}");
                }
            }
        }
    }

    #[test]
    fn preset_pairs() {
        let nu = DunklParam::from_ratio(1, 4).unwrap();
        let b = preset_family(Preset::Bernoulli, &nu, 8);
        assert_eq!(b.g(), &dunkl_kernel_series(KernelKind::IShift, &nu, 8));
        assert_eq!(b.f(), &Series::identity(8, &nu));
        let fact = preset_family(Preset::Factorial, &nu, 8);
        assert!(fact.is_associated());
        assert_eq!(fact.f(), &dunkl_kernel_series(KernelKind::G, &nu, 8));
        // second kind: g(u) G(u) = u
        let b2 = preset_family(Preset::Bernoulli2nd, &nu, 8);
        let product = b2.g().multiply(b2.f()).unwrap();
        assert_eq!(product, Series::identity(8, &nu));
        // and 1/g = I_(nu+1) through the top coefficient
        let inverse = dunkl_kernel_series(KernelKind::IShift, &nu, 8).reciprocal().unwrap();
        assert_eq!(b2.g(), &inverse);
        assert!("nonsense".parse::<Preset>().is_err());
        assert_eq!("bernoulli-2nd".parse::<Preset>().unwrap(), Preset::Bernoulli2nd);
    }

    #[test]
    fn classical_factorial_inverse_is_arcsinh() {
        let nu = DunklParam::classical();
        let fact = preset_family(Preset::Factorial, &nu, 9);
        let inv = fact.f().reverse().unwrap();
        assert_eq!(inv.coeff(3), rat(-1, 6));
        assert_eq!(inv.coeff(5), rat(3, 40));
        assert_eq!(inv.coeff(7), rat(-5, 112));
        // classical Euler: E_1(x) = x - 1/2 scaled by gamma: generating e^{xt}/cosh t
        let euler = preset_sequence(Preset::Euler, &nu, 3);
        assert_eq!(euler.get(1), &Poly::monomial(1, int(1), &nu));
        assert_eq!(euler.get(2), &Poly::new(vec![int(-1), int(0), int(1)], &nu));
    }

    #[test]
    fn precision_error_when_order_too_small() {
        let nu = DunklParam::from_ratio(0, 1).unwrap();
        let spec = preset_family(Preset::Euler, &nu, 6);
        assert!(matches!(generate_sequence(&spec, 7), Err(Error::Precision { needed: 7, available: 6 })));
    }

    #[test]
    fn associated_binomial_identity() {
        for nu in params() {
            for preset in [Preset::Factorial] {
                let seq = preset_sequence(preset, &nu, 9);
                let (x, u) = (rat(2, 3), rat(-7, 5));
                for n in 0..=9usize {
                    let lhs = seq.get(n).translate().specialize_y(&u).eval(&x);
                    let rhs: Rational = (0..=n)
                        .map(|k| dunkl_binomial(n, k as i64, &nu) * seq.get(k).eval(&x) * seq.get(n - k).eval(&u))
                        .sum();
                    assert_eq!(lhs, rhs);
                }
            }
            // g = 1 with f = t: monomials; and a non-trivial f
            let f = Series::new(vec![int(0), int(2), int(1), rat(-1, 3)], 8, &nu).add(&Series::zero(8, &nu)).unwrap();
            let spec = FamilySpec::new(Series::one(8, &nu), f, None).unwrap();
            let seq = generate_sequence(&spec, 8).unwrap();
            let (x, u) = (rat(1, 2), int(3));
            for n in 0..=8usize {
                let lhs = seq.get(n).translate().specialize_y(&u).eval(&x);
                let rhs: Rational = (0..=n)
                    .map(|k| dunkl_binomial(n, k as i64, &nu) * seq.get(k).eval(&x) * seq.get(n - k).eval(&u))
                    .sum();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn thorne_reconstruction_examples() {
        for nu in params() {
            let t = Series::identity(10, &nu);
            let mut mu = vec![Rational::zero(); 11];
            mu[0] = int(1);
            let monomials = sequence_from_thorne(&t, &mu, 10).unwrap();
            for n in 0..=10 {
                assert_eq!(monomials.get(n), &Poly::monomial(n, int(1), &nu));
            }
            mu[1] = -nu.gamma(1);
            let truncated = sequence_from_thorne(&t, &mu, 10).unwrap();
            assert_eq!(truncated, preset_sequence(Preset::Truncated, &nu, 10));
            mu[0] = int(0);
            assert!(matches!(sequence_from_thorne(&t, &mu, 10), Err(Error::Singular(_))));
        }
    }

    #[test]
    fn thorne_reconstruction_matches_generation() {
        for nu in params() {
            for preset in Preset::ALL {
                let spec = preset_family(preset, &nu, 10);
                let mu = moments_of(spec.g());
                let rebuilt = sequence_from_thorne(spec.f(), &mu, 10).unwrap();
                assert_eq!(rebuilt, generate_sequence(&spec, 10).unwrap(), "{preset}");
                assert_eq!(rebuilt.spec().g(), spec.g());
            }
        }
    }
}
