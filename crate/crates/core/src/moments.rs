//! Moment functionals on polynomials and the two integral characterizations
//! of Sheffer-Dunkl sequences.
//!
//! * Thorne type: a functional `alpha` with `alpha(L_f^r s_n) = gamma(n) delta(n, r)`,
//!   whose moments are the coefficients of `g`.
//! * Sheffer type: a functional `beta` with `s_n(x) = beta_t(tau_t p_n(x))`,
//!   `p_n` the associated sequence of `f`, whose moments are the coefficients of `1/g`.
//!
//! Point masses may carry derivatives. An atom `(x0, m, w)` acts as
//! `w (-1)^m p^(m)(x0)`, the distributional derivative of a Dirac mass.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::DensityKind;
use crate::poly::Poly;
use crate::rational::{format_rational, int, DunklParam, Rational};
use crate::series::Series;
use crate::sheffer::{
    generate_sequence, generating_from_moments, sequence_from_thorne, FamilySpec, PolySequence, Preset,
};

/// `weight * (-1)^derivative_order * p^(derivative_order)(location)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub location: Rational,
    pub derivative_order: usize,
    pub weight: Rational,
}

impl Atom {
    pub fn new(location: Rational, derivative_order: usize, weight: Rational) -> Self {
        Self { location, derivative_order, weight }
    }
}

/// Densities known by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityId {
    /// `(nu+1) |x|^(2nu+1)` on `(-1, 1)`
    BernoulliWeight,
    BesselK(DensityKind),
}

#[derive(Debug, Clone, PartialEq)]
pub enum MomentFunctional {
    Atomic(Vec<Atom>),
    /// Acts on `sum c_k x^k` as `sum c_k omega_k`.
    MomentSeq(Vec<Rational>),
    NamedDensity {
        id: DensityId,
        nu: DunklParam,
    },
}

impl MomentFunctional {
    /// Unit point mass at the origin.
    pub fn dirac_origin() -> Self {
        MomentFunctional::Atomic(vec![Atom::new(Rational::zero(), 0, Rational::one())])
    }

    /// `delta_0 + gamma(1) delta_0'`: moments `1, -gamma(1), 0, 0, ...`.
    pub fn truncated_measure(nu: &DunklParam) -> Self {
        MomentFunctional::Atomic(vec![
            Atom::new(Rational::zero(), 0, Rational::one()),
            Atom::new(Rational::zero(), 1, nu.gamma(1)),
        ])
    }

    /// `delta_0 - (gamma(2)/2) delta_0''`: moments `1, 0, -gamma(2), 0, ...`.
    pub fn truncated_t2_measure(nu: &DunklParam) -> Self {
        MomentFunctional::Atomic(vec![
            Atom::new(Rational::zero(), 0, Rational::one()),
            Atom::new(Rational::zero(), 2, -nu.gamma(2) / int(2)),
        ])
    }

    /// `(delta_{-1} + delta_1) / 2`.
    pub fn symmetric_pair() -> Self {
        let half = Rational::new(1.into(), 2.into());
        MomentFunctional::Atomic(vec![Atom::new(int(-1), 0, half.clone()), Atom::new(int(1), 0, half)])
    }

    pub fn bernoulli_weight(nu: &DunklParam) -> Self {
        MomentFunctional::NamedDensity { id: DensityId::BernoulliWeight, nu: nu.clone() }
    }

    /// Exact `k`-th moment when one is available.
    pub fn moment(&self, k: usize) -> Result<Rational> {
        self.apply(&Poly::monomial(k, Rational::one(), &DunklParam::classical()))
    }

    pub fn moments(&self, max_k: usize) -> Result<Vec<Rational>> {
        (0..=max_k).map(|k| self.moment(k)).collect()
    }

    pub fn apply(&self, p: &Poly) -> Result<Rational> {
        apply_functional(self, p)
    }
}

pub fn apply_functional(m: &MomentFunctional, p: &Poly) -> Result<Rational> {
    match m {
        MomentFunctional::Atomic(atoms) => Ok(atoms
            .iter()
            .map(|a| {
                let value = p.derivative(a.derivative_order).eval(&a.location) * &a.weight;
                if a.derivative_order % 2 == 1 {
                    -value
                } else {
                    value
                }
            })
            .sum()),
        MomentFunctional::MomentSeq(omega) => {
            if p.coeffs().len() > omega.len() {
                return Err(Error::Precision {
                    needed: p.coeffs().len() - 1,
                    available: omega.len().saturating_sub(1),
                });
            }
            Ok(p.coeffs().iter().zip(omega).map(|(c, w)| c * w).sum())
        }
        MomentFunctional::NamedDensity { id: DensityId::BernoulliWeight, nu } => {
            Ok(p.coeffs().iter().enumerate().map(|(k, c)| c * bernoulli_weight_moment(k, nu)).sum())
        }
        MomentFunctional::NamedDensity { id: DensityId::BesselK(kind), .. } => {
            Err(Error::UnsupportedExact(kind.name().to_string()))
        }
    }
}

/// Exact moments of `(nu+1)|x|^(2nu+1)` on `(-1, 1)`: zero for odd `k`,
/// `(nu+1)/(nu+m+1)` for `k = 2m`.
pub fn bernoulli_weight_moment(k: usize, nu: &DunklParam) -> Rational {
    if k % 2 == 1 {
        return Rational::zero();
    }
    let m = int((k / 2) as i64);
    let a = nu.nu() + Rational::one();
    &a / (&a + m)
}

/// One `(n, r)` cell of a Thorne table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThorneRow {
    pub n: usize,
    pub r: usize,
    pub value: String,
    pub expected: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThorneReport {
    pub pairs: Vec<ThorneRow>,
    pub all_pass: bool,
}

impl ThorneReport {
    pub fn first_failure(&self) -> Option<(usize, usize)> {
        self.pairs.iter().find(|row| !row.pass).map(|row| (row.n, row.r))
    }
}

/// Tabulates `m(L_f^r s_n)` against `gamma(n) delta(n, r)` for `0 <= r <= n`.
pub fn thorne_verify(m: &MomentFunctional, seq: &PolySequence) -> Result<ThorneReport> {
    let nu = seq.nu();
    let f = seq.spec().f();
    let mut pairs = Vec::new();
    for (n, s_n) in seq.polys().iter().enumerate() {
        let mut lowered = s_n.clone();
        for r in 0..=n {
            let value = apply_functional(m, &lowered)?;
            let expected = if r == n { nu.gamma(n) } else { Rational::zero() };
            pairs.push(ThorneRow {
                n,
                r,
                pass: value == expected,
                value: format_rational(&value),
                expected: format_rational(&expected),
            });
            if r < n {
                lowered = lowered.apply_lf(f, 1)?;
            }
        }
    }
    let all_pass = pairs.iter().all(|row| row.pass);
    Ok(ThorneReport { pairs, all_pass })
}

/// `s_n(x) = sum_j omega_j [t^j] tau_t(p_n)(x)` for an associated sequence `p_n`.
pub fn sheffer_reconstruct(omega: &[Rational], assoc: &PolySequence) -> Result<PolySequence> {
    if !assoc.spec().is_associated() {
        return Err(Error::Domain("sheffer_reconstruct needs an associated sequence (g = 1)".into()));
    }
    let max_n = assoc.max_index();
    if omega.len() <= max_n {
        return Err(Error::Precision { needed: max_n, available: omega.len().saturating_sub(1) });
    }
    if omega[0].is_zero() {
        return Err(Error::Singular("omega_0 = 0".into()));
    }
    let nu = assoc.nu();
    let polys = assoc
        .polys()
        .iter()
        .map(|p_n| {
            let tau = p_n.translate();
            let degree = tau.y_degree().unwrap_or(0);
            (0..=degree).fold(Poly::zero(nu), |acc, j| acc.add(&tau.y_coefficient(j).scale(&omega[j])))
        })
        .collect();
    let g = generating_from_moments(omega, nu, max_n).reciprocal()?;
    let spec = FamilySpec::new(g, assoc.spec().f().clone(), Some("sheffer".into()))?;
    Ok(PolySequence::new(spec, polys))
}

/// `2 pi F(t)` split into real and imaginary parts.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSeries {
    pub real: Series,
    pub imag: Series,
}

/// `2 pi F(t) = sum_n i^n mu_n t^n / n!`, exact; the `1/(2 pi)` factor is left out.
pub fn auxiliary_f(mu: &[Rational], nu: &DunklParam, order: usize) -> ComplexSeries {
    let mut real = vec![Rational::zero(); order + 1];
    let mut imag = vec![Rational::zero(); order + 1];
    let mut factorial = Rational::one();
    for n in 0..=order {
        if n > 0 {
            factorial *= int(n as i64);
        }
        let Some(m) = mu.get(n) else { break };
        let term = m / &factorial;
        // i^n cycles 1, i, -1, -i
        match n % 4 {
            0 => real[n] = term,
            1 => imag[n] = term,
            2 => real[n] = -term,
            _ => imag[n] = -term,
        }
    }
    ComplexSeries { real: Series::new(real, order, nu), imag: Series::new(imag, order, nu) }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `g(t) = sum mu_n t^n / gamma(n)`
    GFromMu,
    /// `1/g(t) = sum omega_n t^n / gamma(n)`
    GinvFromOmega,
}

/// Builds `sum moments[n] t^n / gamma(n)`, which is `g` for Thorne moments
/// and `1/g` for Sheffer moments.
pub fn reconstruct_generating(direction: Direction, moments: &[Rational], nu: &DunklParam, order: usize) -> Series {
    match direction {
        Direction::GFromMu | Direction::GinvFromOmega => generating_from_moments(moments, nu, order),
    }
}

/// Thorne moments `mu_n = gamma(n) [t^n] g`.
pub fn thorne_moments(spec: &FamilySpec) -> Vec<Rational> {
    crate::sheffer::moments_of(spec.g())
}

/// Sheffer moments `omega_n = gamma(n) [t^n] (1/g)`.
pub fn sheffer_moments(spec: &FamilySpec) -> Result<Vec<Rational>> {
    Ok(crate::sheffer::moments_of(&spec.g().reciprocal()?))
}

/// One `n` of a generation-versus-reconstruction comparison; polynomials in display form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceRow {
    pub n: usize,
    pub generated: String,
    pub from_thorne: String,
    pub from_sheffer: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub family: String,
    pub nu: String,
    pub rows: Vec<EquivalenceRow>,
    pub all_pass: bool,
}

/// Rebuilds `s_0 ..= s_max_n` from the Thorne moments of `g` and, through the
/// associated sequence, from the Sheffer moments of `1/g`, and compares both
/// with direct generation.
pub fn equivalence_verify(spec: &FamilySpec, max_n: usize) -> Result<EquivalenceReport> {
    let generated = generate_sequence(spec, max_n)?;
    let thorne = sequence_from_thorne(spec.f(), &thorne_moments(spec), max_n)?;
    let assoc = generate_sequence(&spec.associated(), max_n)?;
    let sheffer = sheffer_reconstruct(&sheffer_moments(spec)?, &assoc)?;
    let rows: Vec<EquivalenceRow> = (0..=max_n)
        .map(|n| {
            let (s, a, b) = (generated.get(n), thorne.get(n), sheffer.get(n));
            EquivalenceRow {
                n,
                generated: s.to_string(),
                from_thorne: a.to_string(),
                from_sheffer: b.to_string(),
                pass: s == a && s == b,
            }
        })
        .collect();
    let all_pass = rows.iter().all(|r| r.pass);
    Ok(EquivalenceReport {
        family: spec.name().unwrap_or("custom").to_string(),
        nu: format_rational(spec.nu().nu()),
        rows,
        all_pass,
    })
}

/// The Thorne-type functional stated in closed form for each named family.
pub fn preset_thorne_measure(preset: Preset, nu: &DunklParam) -> MomentFunctional {
    match preset {
        Preset::Truncated | Preset::AppellDiscreteTruncated => MomentFunctional::truncated_measure(nu),
        Preset::TruncatedT2 => MomentFunctional::truncated_t2_measure(nu),
        Preset::Bernoulli | Preset::Bernoulli2nd => MomentFunctional::bernoulli_weight(nu),
        Preset::Euler | Preset::Boole => MomentFunctional::symmetric_pair(),
        Preset::Factorial => MomentFunctional::dirac_origin(),
    }
}
