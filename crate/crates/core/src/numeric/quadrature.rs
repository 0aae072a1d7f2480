//! Globally adaptive 15-point Gauss-Kronrod quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

// Kronrod abscissae (ascending from the centre's furthest node) and weights;
// every other node is a 7-point Gauss node.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

/// Quadrature result with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self { rel_tol: 1e-10, abs_tol: 1e-300, max_subdivisions: 2000 }
    }
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK.iter().zip(&WGK).take(7).enumerate() {
        let dx = half * x;
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs();
    (value, error)
}

impl Quadrature {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self { rel_tol, ..Self::default() }
    }

    fn accepted(&self, value: f64, error: f64) -> bool {
        error <= self.abs_tol.max(self.rel_tol * value.abs())
    }

    /// Integral of `f` over the finite interval `[a, b]`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> Result<Estimate> {
        let (value, error) = gauss_kronrod(&f, a, b);
        let mut heap = BinaryHeap::new();
        heap.push(Segment { a, b, value, error });
        let (mut total, mut total_err) = (value, error);
        let mut splits = 0;
        while !self.accepted(total, total_err) {
            if splits >= self.max_subdivisions {
                return Err(Error::Quadrature { estimate: total, error: total_err });
            }
            let worst = heap.pop().expect("heap is never empty");
            let mid = 0.5 * (worst.a + worst.b);
            let (lv, le) = gauss_kronrod(&f, worst.a, mid);
            let (rv, re) = gauss_kronrod(&f, mid, worst.b);
            total += lv + rv - worst.value;
            total_err += le + re - worst.error;
            heap.push(Segment { a: worst.a, b: mid, value: lv, error: le });
            heap.push(Segment { a: mid, b: worst.b, value: rv, error: re });
            splits += 1;
            // resum to shed accumulated rounding in the running totals
            if splits % 64 == 0 {
                total = heap.iter().map(|s| s.value).sum();
                total_err = heap.iter().map(|s| s.error).sum();
            }
        }
        let value: f64 = heap.iter().map(|s| s.value).sum();
        let error: f64 = heap.iter().map(|s| s.error).sum();
        if !value.is_finite() {
            return Err(Error::Quadrature { estimate: value, error });
        }
        Ok(Estimate { value, error })
    }

    /// Integral over `[a, inf)` through `x = a + s/(1-s)`, `s` in `[0, 1)`.
    pub fn integrate_to_infinity<F: Fn(f64) -> f64>(&self, f: F, a: f64) -> Result<Estimate> {
        let mapped = |s: f64| {
            let one_minus = 1.0 - s;
            if one_minus <= 0.0 {
                return 0.0;
            }
            let x = a + s / one_minus;
            let v = f(x) / (one_minus * one_minus);
            if v.is_finite() {
                v
            } else {
                0.0
            }
        };
        self.integrate(mapped, 0.0, 1.0)
    }

    /// Integral over `[0, b]` of an integrand that behaves like `x^exponent`
    /// at the origin (`exponent > -1`), through `x = b u^q` with `q` chosen so
    /// the transformed integrand vanishes at `u = 0`.
    pub fn integrate_power_singular<F: Fn(f64) -> f64>(&self, f: F, b: f64, exponent: f64) -> Result<Estimate> {
        if exponent <= -1.0 {
            return Err(Error::Domain(format!("endpoint exponent {exponent} is not integrable")));
        }
        let q = if exponent >= 1.0 { 1.0 } else { 2.0 / (exponent + 1.0) };
        let mapped = |u: f64| {
            if u <= 0.0 {
                return 0.0;
            }
            let x = b * u.powf(q);
            f(x) * b * q * u.powf(q - 1.0)
        };
        self.integrate(mapped, 0.0, 1.0)
    }
}
