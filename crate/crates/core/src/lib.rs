//! Exact arithmetic for Dunkl-Appell and Dunkl-Sheffer polynomial sequences,
//! their moment functionals, and floating-point checks of the Bessel-K
//! densities behind them.

pub mod error;
pub mod moments;
pub mod numeric;
pub mod poly;
pub mod rational;
pub mod series;
pub mod sheffer;

pub use error::{Error, Result};
pub use moments::MomentFunctional;
pub use poly::{BiPoly, Poly};
pub use rational::{DunklParam, Rational};
pub use series::{KernelKind, Series};
pub use sheffer::{FamilySpec, PolySequence, Preset};
