//! Acceptance suite: every criterion is run at its stated tolerance and
//! reported as one PASS/FAIL line. Exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use dunkl_core::moments::{
    auxiliary_f, preset_thorne_measure, reconstruct_generating, sheffer_moments, sheffer_reconstruct, thorne_moments,
    thorne_verify, Direction, MomentFunctional,
};
use dunkl_core::numeric::{crosscheck_moments, DensityEval, DensityKind};
use dunkl_core::rational::{dunkl_binomial, gamma_factorial, int, pochhammer, rat, DunklParam, Rational};
use dunkl_core::series::{dunkl_kernel_series, KernelKind, Series};
use dunkl_core::sheffer::{generate_sequence, preset_family, preset_sequence, sequence_from_thorne, Preset};
use dunkl_core::Poly;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into() }
    }
}

fn params(list: &[(i64, i64)]) -> Vec<DunklParam> {
    list.iter().map(|&(p, q)| DunklParam::from_ratio(p, q).unwrap()).collect()
}

const FOUR: [(i64, i64); 4] = [(-1, 2), (0, 1), (1, 4), (3, 2)];
const THREE: [(i64, i64); 3] = [(-1, 2), (0, 1), (1, 4)];

fn factorial_reduction() -> Outcome {
    let nu = DunklParam::classical();
    let mut factorial = Rational::one();
    for n in 0..=30usize {
        if n > 0 {
            factorial *= int(n as i64);
        }
        if gamma_factorial(n, &nu) != factorial {
            return Outcome::new(false, format!("n = {n}"));
        }
    }
    Outcome::new(true, "n = 0..30")
}

fn reversion_roundtrip() -> Outcome {
    let order = 32;
    let classical = DunklParam::classical();
    let mut cases = vec![("t + t^2".to_string(), Series::new(vec![int(0), int(1), int(1)], order, &classical))];
    for nu in params(&FOUR) {
        cases.push((format!("G at nu = {nu}"), dunkl_kernel_series(KernelKind::G, &nu, order)));
    }
    for (label, f) in &cases {
        let back = f.compose(&f.reverse().unwrap()).unwrap();
        if back != Series::identity(order, f.nu()) {
            return Outcome::new(false, label.clone());
        }
    }
    Outcome::new(true, format!("{} series, mod t^33", cases.len()))
}

fn lowering_identity() -> Outcome {
    let max_n = 12;
    for nu in params(&FOUR) {
        for preset in Preset::ALL {
            let seq = preset_sequence(preset, &nu, max_n);
            let f = seq.spec().f();
            for n in 1..=max_n {
                let lowered = seq.get(n).apply_lf(f, 1).unwrap();
                let ratio = nu.gamma(n) / nu.gamma(n - 1);
                if lowered != seq.get(n - 1).scale(&ratio) {
                    return Outcome::new(false, format!("{preset} nu = {nu} n = {n}"));
                }
            }
        }
    }
    Outcome::new(true, "8 presets x 4 params, n = 1..12")
}

fn discrete_operator() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut checked = 0;
    for nu in params(&FOUR) {
        let g = dunkl_kernel_series(KernelKind::G, &nu, 12);
        for _ in 0..25 {
            let degree = rng.random_range(0..=12usize);
            let coeffs = (0..=degree).map(|_| rat(rng.random_range(-20..=20), rng.random_range(1..=7))).collect();
            let p = Poly::new(coeffs, &nu);
            if p.apply_lf(&g, 1).unwrap() != p.discrete_difference() {
                return Outcome::new(false, format!("nu = {nu}, p = {p}"));
            }
            checked += 1;
        }
    }
    Outcome::new(true, format!("{checked} random polynomials of degree <= 12"))
}

fn thorne_tables() -> Outcome {
    let pairings: [(&str, &[Preset]); 6] = [
        ("truncated / delta_0 + gamma_1 delta_0'", &[Preset::Truncated]),
        ("discrete truncated / delta_0 + gamma_1 delta_0'", &[Preset::AppellDiscreteTruncated]),
        ("1 - t^2 / delta_0 - (gamma_2/2) delta_0''", &[Preset::TruncatedT2]),
        ("Bernoulli / Bernoulli weight", &[Preset::Bernoulli]),
        ("Bernoulli 2nd kind / Bernoulli weight", &[Preset::Bernoulli2nd]),
        ("Euler, Boole / (delta_-1 + delta_1)/2", &[Preset::Euler, Preset::Boole]),
    ];
    let mut failures = Vec::new();
    for (label, presets) in pairings {
        let mut first_failure = None;
        for nu in params(&THREE) {
            for &preset in presets {
                let seq = preset_sequence(preset, &nu, 10);
                let report = thorne_verify(&preset_thorne_measure(preset, &nu), &seq).unwrap();
                if let (None, Some((n, r))) = (&first_failure, report.first_failure()) {
                    first_failure = Some(format!("{preset} nu = {nu} at (n, r) = ({n}, {r})"));
                }
            }
        }
        match first_failure {
            None => println!("    ok    {label}"),
            Some(at) => {
                println!("    FAIL  {label}: {at}");
                failures.push(label);
            }
        }
    }
    if failures.is_empty() {
        Outcome::new(true, "6 pairings x 3 params, n, r <= 10")
    } else {
        Outcome::new(false, format!("failing pairings: {}", failures.join("; ")))
    }
}

fn special_values() -> Outcome {
    let mut failures = Vec::new();
    let (one, minus_one) = (int(1), int(-1));
    for nu in params(&THREE) {
        let euler = preset_sequence(Preset::Euler, &nu, 12);
        let boole = preset_sequence(Preset::Boole, &nu, 12);
        for (name, seq) in [("Euler", &euler), ("Boole", &boole)] {
            let bad: Vec<usize> = (1..=12)
                .filter(|&n| !seq.get(n).eval(&one).is_zero() || !seq.get(n).eval(&minus_one).is_zero())
                .collect();
            if !bad.is_empty() {
                failures.push(format!("{name}(+-1) != 0 at nu = {nu} for n in {bad:?}"));
            }
        }

        let bernoulli = preset_sequence(Preset::Bernoulli, &nu, 10);
        let bad: Vec<usize> = (1..=10usize)
            .filter(|&n| {
                let expansion = (0..=n).fold(Poly::zero(&nu), |acc, l| {
                    let c = rat(l as i64, n as i64)
                        * dunkl_binomial(n, l as i64, &nu)
                        * bernoulli.get(n - l).eval(&Rational::zero());
                    acc.add(&euler.get(l).scale(&c))
                });
                &expansion != boole.get(n)
            })
            .collect();
        if !bad.is_empty() {
            failures.push(format!("Boole expansion fails at nu = {nu} for n in {bad:?}"));
        }
    }
    for f in &failures {
        println!("    FAIL  {f}");
    }
    Outcome::new(failures.is_empty(), format!("{} sub-claims failing", failures.len()))
}

fn theorem_equivalences() -> Outcome {
    let presets = [Preset::Truncated, Preset::AppellDiscreteTruncated, Preset::Euler, Preset::Bernoulli];
    for nu in params(&THREE) {
        for preset in presets {
            let spec = preset_family(preset, &nu, 10);
            let expected = generate_sequence(&spec, 10).unwrap();
            let from_thorne = sequence_from_thorne(spec.f(), &thorne_moments(&spec), 10).unwrap();
            if from_thorne != expected {
                return Outcome::new(false, format!("Thorne direction: {preset} nu = {nu}"));
            }
            let assoc = generate_sequence(&spec.associated(), 10).unwrap();
            let from_sheffer = sheffer_reconstruct(&sheffer_moments(&spec).unwrap(), &assoc).unwrap();
            if from_sheffer != expected {
                return Outcome::new(false, format!("Sheffer direction: {preset} nu = {nu}"));
            }
        }
    }
    Outcome::new(true, "4 presets x 3 params, both directions, n <= 10")
}

fn corollary_reconstructions() -> Outcome {
    let order = 16;
    for nu in params(&FOUR) {
        let cases = [
            ("1 - t", MomentFunctional::truncated_measure(&nu), Series::new(vec![int(1), int(-1)], order, &nu)),
            (
                "1 - t^2",
                MomentFunctional::truncated_t2_measure(&nu),
                Series::new(vec![int(1), int(0), int(-1)], order, &nu),
            ),
            ("I_(nu+1)", MomentFunctional::bernoulli_weight(&nu), dunkl_kernel_series(KernelKind::IShift, &nu, order)),
        ];
        for (label, functional, expected) in cases {
            let mu = functional.moments(order).unwrap();
            let g = reconstruct_generating(Direction::GFromMu, &mu, &nu, order);
            if g != expected {
                return Outcome::new(false, format!("{label} at nu = {nu}"));
            }
        }
        // the coefficient form: [t^2k] I_(nu+1) = ((nu+1)/(nu+k+1)) / gamma(2k)
        let g = reconstruct_generating(
            Direction::GFromMu,
            &MomentFunctional::bernoulli_weight(&nu).moments(order).unwrap(),
            &nu,
            order,
        );
        for k in 0..=order / 2 {
            let a = nu.nu() + Rational::one();
            if g.coeff(2 * k) != &a / (&a + int(k as i64)) / nu.gamma(2 * k) {
                return Outcome::new(false, format!("coefficient t^{} at nu = {nu}", 2 * k));
            }
        }
    }
    Outcome::new(true, "3 generating functions x 4 params, mod t^17")
}

fn auxiliary_function() -> Outcome {
    let order = 12;
    let factorial = |n: usize| (1..=n).fold(Rational::one(), |acc, m| acc * int(m as i64));
    for nu in params(&FOUR) {
        let zero = Series::zero(order, &nu);

        let trunc = auxiliary_f(&MomentFunctional::truncated_measure(&nu).moments(order).unwrap(), &nu, order);
        let imag = Series::new(vec![int(0), -nu.gamma(1)], order, &nu);
        if trunc.real != Series::one(order, &nu) || trunc.imag != imag {
            return Outcome::new(false, format!("1 - i gamma_1 t at nu = {nu}"));
        }

        let cos: Vec<Rational> = (0..=order)
            .map(|n| match n % 4 {
                0 => factorial(n).recip(),
                2 => -factorial(n).recip(),
                _ => Rational::zero(),
            })
            .collect();
        let euler = auxiliary_f(&MomentFunctional::symmetric_pair().moments(order).unwrap(), &nu, order);
        if euler.real != Series::new(cos, order, &nu) || euler.imag != zero {
            return Outcome::new(false, format!("cos t at nu = {nu}"));
        }

        // 1F2(nu+1; nu+2, 1/2; -t^2/4) = sum_k (nu+1)_k / ((nu+2)_k (1/2)_k k!) (-1/4)^k t^2k
        let a = nu.nu() + Rational::one();
        let hyper: Vec<Rational> = (0..=order)
            .map(|n| {
                if n % 2 == 1 {
                    return Rational::zero();
                }
                let k = n / 2;
                let quarter = rat(-1, 4);
                let power = (0..k).fold(Rational::one(), |acc, _| acc * &quarter);
                pochhammer(&a, k) / (pochhammer(&(&a + Rational::one()), k) * pochhammer(&rat(1, 2), k) * factorial(k))
                    * power
            })
            .collect();
        let bern = auxiliary_f(&MomentFunctional::bernoulli_weight(&nu).moments(order).unwrap(), &nu, order);
        if bern.real != Series::new(hyper, order, &nu) || bern.imag != zero {
            return Outcome::new(false, format!("1F2 at nu = {nu}"));
        }
    }
    Outcome::new(true, "3 functions x 4 params, mod t^13")
}

fn numeric_densities() -> Outcome {
    let cases = [
        (DensityKind::BesselKSigned, (-1, 2)),
        (DensityKind::BesselKSigned, (-3, 4)),
        (DensityKind::BesselKEven, (-1, 2)),
        (DensityKind::BesselKEven, (0, 1)),
        (DensityKind::BesselKEven, (1, 1)),
    ];
    let mut pass = true;
    for (kind, (p, q)) in cases {
        let nu = DunklParam::from_ratio(p, q).unwrap();
        let d = DensityEval::from_param(kind, &nu).unwrap();
        match crosscheck_moments(&d, 8, 1e-6) {
            Ok(report) => {
                let worst = report.rows.iter().map(|r| r.rel_err).fold(0.0, f64::max);
                println!(
                    "    {}  {} nu = {nu}: max rel err {worst:.2e}",
                    if report.pass { "ok  " } else { "FAIL" },
                    kind.name()
                );
                pass &= report.pass;
            }
            Err(e) => {
                println!("    FAIL  {} nu = {nu}: {e}", kind.name());
                pass = false;
            }
        }
    }

    // nu = -1/2: the signed density is exp(-x) on x > 0 and zero on x < 0
    let d = DensityEval::from_param(DensityKind::BesselKSigned, &DunklParam::classical()).unwrap();
    let mut worst: f64 = 0.0;
    for i in 1..=200 {
        let x = i as f64 * 0.1;
        let e = (-x).exp();
        worst = worst.max(((d.eval(x).unwrap() - e) / e).abs()).max(d.eval(-x).unwrap().abs() / e);
    }
    let closed = worst <= 1e-9;
    let moments = crosscheck_moments(&d, 8, 1e-9).map(|r| r.pass).unwrap_or(false);
    println!(
        "    {}  exp(-x) reduction: density max rel err {worst:.2e}, moments = n! at 1e-9: {moments}",
        if closed && moments { "ok  " } else { "FAIL" }
    );
    pass &= closed && moments;
    Outcome::new(pass, "5 density/parameter cases, n <= 8, rel tol 1e-6")
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome, Duration);
    let criteria: [Criterion; 10] = [
        ("factorial reduction", factorial_reduction, Duration::from_secs(1)),
        ("reversion roundtrip", reversion_roundtrip, Duration::from_secs(1)),
        ("lowering identity", lowering_identity, Duration::from_secs(10)),
        ("discrete operator identity", discrete_operator, Duration::from_secs(1)),
        ("Thorne tables", thorne_tables, Duration::from_secs(30)),
        ("special values", special_values, Duration::from_secs(5)),
        ("theorem equivalences", theorem_equivalences, Duration::from_secs(30)),
        ("corollary reconstructions", corollary_reconstructions, Duration::from_secs(1)),
        ("auxiliary function", auxiliary_function, Duration::from_secs(1)),
        ("numeric densities", numeric_densities, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        let slow = if elapsed > *budget { " [over time budget]" } else { "" };
        println!(
            "{tag} criterion {:>2} {name}: {} ({:.2}s of {}s){slow}",
            i + 1,
            outcome.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
        if !outcome.pass {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
