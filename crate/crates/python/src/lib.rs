//! Python module `sheffer_dunkl`.
//!
//! Rationals cross the boundary as `fractions.Fraction`; anything whose `str()`
//! parses as a rational (`int`, `Fraction`, `"3/4"`, `"0.25"`) is accepted as input.

use num_bigint::BigInt;
use pyo3::exceptions::{PyArithmeticError, PyKeyError, PyValueError};
use pyo3::prelude::*;

use dunkl_core::moments::{
    auxiliary_f as core_auxiliary_f, equivalence_verify, preset_thorne_measure, sheffer_moments, thorne_moments,
    thorne_verify,
};
use dunkl_core::numeric::{bessel_k as core_bessel_k, crosscheck_moments as core_crosscheck, DensityEval, DensityKind};
use dunkl_core::rational::{dunkl_binomial as core_binomial, parse_rational};
use dunkl_core::series::{dunkl_kernel_series, KernelKind, DEFAULT_ORDER};
use dunkl_core::sheffer::{generate_sequence, preset_family, FamilySpec, Preset};
use dunkl_core::{DunklParam, Error, Poly, Rational, Series};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::UnknownFamily(_) => PyKeyError::new_err(e.to_string()),
        Error::Quadrature { .. } => PyArithmeticError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn rational_arg(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    parse_rational(&obj.str()?.to_string()).map_err(py_err)
}

fn param_arg(obj: &Bound<'_, PyAny>) -> PyResult<DunklParam> {
    DunklParam::new(rational_arg(obj)?).map_err(py_err)
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    let numer: &BigInt = r.numer();
    let denom: &BigInt = r.denom();
    py.import("fractions")?.getattr("Fraction")?.call1((numer.clone(), denom.clone()))
}

fn fractions<'py>(py: Python<'py>, values: &[Rational]) -> PyResult<Vec<Bound<'py, PyAny>>> {
    values.iter().map(|r| fraction(py, r)).collect()
}

fn json_to_py<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn family(name: &str, nu: &DunklParam, order: Option<usize>, n: usize) -> PyResult<FamilySpec> {
    let preset: Preset = name.parse().map_err(py_err)?;
    let order = order.unwrap_or(DEFAULT_ORDER.max(n));
    if n > order {
        return Err(py_err(Error::Precision { needed: n, available: order }));
    }
    Ok(preset_family(preset, nu, order))
}

/// Exact polynomial in `x` attached to a Dunkl parameter.
#[pyclass(name = "Poly", module = "sheffer_dunkl", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPoly {
    inner: Poly,
}

impl PyPoly {
    fn same_nu(&self, other: &PyPoly) -> PyResult<()> {
        if self.inner.nu() != other.inner.nu() {
            return Err(py_err(Error::ParamMismatch(self.inner.nu().to_string(), other.inner.nu().to_string())));
        }
        Ok(())
    }
}

#[pymethods]
impl PyPoly {
    /// `Poly([c0, c1, ...], nu)`, ascending powers of `x`.
    #[new]
    fn new(coeffs: Vec<Bound<'_, PyAny>>, nu: &Bound<'_, PyAny>) -> PyResult<Self> {
        let nu = param_arg(nu)?;
        let coeffs = coeffs.iter().map(rational_arg).collect::<PyResult<Vec<_>>>()?;
        Ok(Self { inner: Poly::new(coeffs, &nu) })
    }

    #[getter]
    fn coeffs<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        fractions(py, self.inner.coeffs())
    }

    #[getter]
    fn nu<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, self.inner.nu().nu())
    }

    #[getter]
    fn degree(&self) -> Option<usize> {
        self.inner.degree()
    }

    fn __call__<'py>(&self, py: Python<'py>, x: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.eval(&rational_arg(x)?))
    }

    fn __add__(&self, other: PyRef<'_, PyPoly>) -> PyResult<PyPoly> {
        self.same_nu(&other)?;
        Ok(PyPoly { inner: self.inner.add(&other.inner) })
    }

    fn __sub__(&self, other: PyRef<'_, PyPoly>) -> PyResult<PyPoly> {
        self.same_nu(&other)?;
        Ok(PyPoly { inner: self.inner.sub(&other.inner) })
    }

    fn __mul__(&self, scalar: &Bound<'_, PyAny>) -> PyResult<PyPoly> {
        Ok(PyPoly { inner: self.inner.scale(&rational_arg(scalar)?) })
    }

    fn __rmul__(&self, scalar: &Bound<'_, PyAny>) -> PyResult<PyPoly> {
        self.__mul__(scalar)
    }

    /// Ordinary derivative of order `m`.
    #[pyo3(signature = (m = 1))]
    fn derivative(&self, m: usize) -> PyPoly {
        PyPoly { inner: self.inner.derivative(m) }
    }

    /// Dunkl operator applied `r` times.
    #[pyo3(signature = (r = 1))]
    fn dunkl_derivative(&self, r: usize) -> PyPoly {
        PyPoly { inner: self.inner.dunkl_derivative(r) }
    }

    /// `L_f` applied `r` times for a delta-type series `f`.
    #[pyo3(signature = (f, r = 1))]
    fn apply_lf(&self, f: PyRef<'_, PySeries>, r: usize) -> PyResult<PyPoly> {
        Ok(PyPoly { inner: self.inner.apply_lf(&f.inner, r).map_err(py_err)? })
    }

    /// `(nu+1)(tau_1 p - tau_{-1} p)`.
    fn discrete_difference(&self) -> PyPoly {
        PyPoly { inner: self.inner.discrete_difference() }
    }

    /// Dunkl translate as a nested list: `result[i][j]` multiplies `x^i y^j`.
    fn translate<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        let tau = self.inner.translate();
        let deg = self.inner.degree().unwrap_or(0);
        (0..=deg).map(|i| (0..=deg - i).map(|j| fraction(py, &tau.coeff(i, j))).collect()).collect()
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner.to_json()).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly({}, nu={})", self.inner, self.inner.nu())
    }
}

/// Truncated power series in `t` with exact coefficients.
#[pyclass(name = "Series", module = "sheffer_dunkl", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PySeries {
    inner: Series,
}

#[pymethods]
impl PySeries {
    /// `Series([c0, c1, ...], nu, order=len-1)`.
    #[new]
    #[pyo3(signature = (coeffs, nu, order = None))]
    fn new(coeffs: Vec<Bound<'_, PyAny>>, nu: &Bound<'_, PyAny>, order: Option<usize>) -> PyResult<Self> {
        let nu = param_arg(nu)?;
        let coeffs = coeffs.iter().map(rational_arg).collect::<PyResult<Vec<_>>>()?;
        let order = order.unwrap_or(coeffs.len().saturating_sub(1));
        Ok(Self { inner: Series::new(coeffs, order, &nu) })
    }

    /// One of the kernel series `"E"`, `"I"`, `"G"`, `"I_shift"`.
    #[staticmethod]
    #[pyo3(signature = (kind, nu, order = DEFAULT_ORDER))]
    fn kernel(kind: &str, nu: &Bound<'_, PyAny>, order: usize) -> PyResult<Self> {
        let kind = match kind {
            "E" => KernelKind::E,
            "I" => KernelKind::I,
            "G" => KernelKind::G,
            "I_shift" => KernelKind::IShift,
            _ => return Err(PyValueError::new_err(format!("unknown kernel {kind:?}"))),
        };
        Ok(Self { inner: dunkl_kernel_series(kind, &param_arg(nu)?, order) })
    }

    #[getter]
    fn coeffs<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        fractions(py, self.inner.coeffs())
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn __add__(&self, other: PyRef<'_, PySeries>) -> PyResult<PySeries> {
        Ok(PySeries { inner: self.inner.add(&other.inner).map_err(py_err)? })
    }

    fn __sub__(&self, other: PyRef<'_, PySeries>) -> PyResult<PySeries> {
        Ok(PySeries { inner: self.inner.sub(&other.inner).map_err(py_err)? })
    }

    fn __mul__(&self, other: PyRef<'_, PySeries>) -> PyResult<PySeries> {
        Ok(PySeries { inner: self.inner.multiply(&other.inner).map_err(py_err)? })
    }

    fn reciprocal(&self) -> PyResult<PySeries> {
        Ok(PySeries { inner: self.inner.reciprocal().map_err(py_err)? })
    }

    /// `self(inner(t))`.
    fn compose(&self, inner: PyRef<'_, PySeries>) -> PyResult<PySeries> {
        Ok(PySeries { inner: self.inner.compose(&inner.inner).map_err(py_err)? })
    }

    /// Compositional inverse.
    fn reverse(&self) -> PyResult<PySeries> {
        Ok(PySeries { inner: self.inner.reverse().map_err(py_err)? })
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

#[pyfunction]
fn gamma_factorial<'py>(py: Python<'py>, n: usize, nu: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &param_arg(nu)?.gamma(n))
}

#[pyfunction]
fn dunkl_binomial<'py>(py: Python<'py>, n: usize, k: i64, nu: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &core_binomial(n, k, &param_arg(nu)?))
}

/// Names accepted wherever a family is expected.
#[pyfunction]
fn presets() -> Vec<&'static str> {
    Preset::ALL.iter().map(|p| p.name()).collect()
}

/// `[s_0, ..., s_n]` of a named family.
#[pyfunction]
#[pyo3(signature = (family_name, nu, n, order = None))]
fn sequence(family_name: &str, nu: &Bound<'_, PyAny>, n: usize, order: Option<usize>) -> PyResult<Vec<PyPoly>> {
    let nu = param_arg(nu)?;
    let spec = family(family_name, &nu, order, n)?;
    let seq = generate_sequence(&spec, n).map_err(py_err)?;
    Ok(seq.polys().iter().map(|p| PyPoly { inner: p.clone() }).collect())
}

/// Thorne table `{"pairs": [...], "all_pass": bool}` for the family's closed-form functional.
#[pyfunction]
#[pyo3(signature = (family_name, nu, n_max = 10))]
fn verify_thorne<'py>(
    py: Python<'py>,
    family_name: &str,
    nu: &Bound<'py, PyAny>,
    n_max: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let nu = param_arg(nu)?;
    let preset: Preset = family_name.parse().map_err(py_err)?;
    let spec = family(family_name, &nu, None, n_max)?;
    let seq = generate_sequence(&spec, n_max).map_err(py_err)?;
    let report = thorne_verify(&preset_thorne_measure(preset, &nu), &seq).map_err(py_err)?;
    json_to_py(py, &report)
}

/// Generation compared with reconstruction from Thorne and Sheffer moments.
#[pyfunction]
#[pyo3(signature = (family_name, nu, n_max = 10))]
fn verify_sheffer<'py>(
    py: Python<'py>,
    family_name: &str,
    nu: &Bound<'py, PyAny>,
    n_max: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let nu = param_arg(nu)?;
    let report = equivalence_verify(&family(family_name, &nu, None, n_max)?, n_max).map_err(py_err)?;
    json_to_py(py, &report)
}

/// `(mu, omega)`: Thorne moments of `g` and Sheffer moments of `1/g`.
#[pyfunction]
#[pyo3(signature = (family_name, nu, n_max = 10))]
#[allow(clippy::type_complexity)]
fn moments<'py>(
    py: Python<'py>,
    family_name: &str,
    nu: &Bound<'py, PyAny>,
    n_max: usize,
) -> PyResult<(Vec<Bound<'py, PyAny>>, Vec<Bound<'py, PyAny>>)> {
    let nu = param_arg(nu)?;
    let spec = family(family_name, &nu, None, n_max)?;
    let mu = thorne_moments(&spec);
    let omega = sheffer_moments(&spec).map_err(py_err)?;
    Ok((fractions(py, &mu[..=n_max])?, fractions(py, &omega[..=n_max])?))
}

/// Real and imaginary coefficient lists of `2 pi F(t)` for moments `mu`.
#[pyfunction]
#[pyo3(signature = (mu, nu, order = 12))]
#[allow(clippy::type_complexity)]
fn auxiliary_f<'py>(
    py: Python<'py>,
    mu: Vec<Bound<'py, PyAny>>,
    nu: &Bound<'py, PyAny>,
    order: usize,
) -> PyResult<(Vec<Bound<'py, PyAny>>, Vec<Bound<'py, PyAny>>)> {
    let mu = mu.iter().map(rational_arg).collect::<PyResult<Vec<_>>>()?;
    let f = core_auxiliary_f(&mu, &param_arg(nu)?, order);
    Ok((fractions(py, f.real.coeffs())?, fractions(py, f.imag.coeffs())?))
}

#[pyfunction]
fn bessel_k(nu: f64, x: f64) -> PyResult<f64> {
    core_bessel_k(nu, x).map_err(py_err)
}

/// Quadrature moments of `"besselK_signed"` / `"besselK_even"` against their exact targets.
#[pyfunction]
#[pyo3(signature = (density, nu, n_max = 8, tol = 1e-6))]
fn crosscheck_moments<'py>(
    py: Python<'py>,
    density: &str,
    nu: &Bound<'py, PyAny>,
    n_max: usize,
    tol: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let d = DensityEval::from_param(DensityKind::parse(density).map_err(py_err)?, &param_arg(nu)?).map_err(py_err)?;
    let report = py.detach(|| core_crosscheck(&d, n_max, tol)).map_err(py_err)?;
    json_to_py(py, &report)
}

#[pymodule]
fn sheffer_dunkl(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_class::<PySeries>()?;
    m.add_function(wrap_pyfunction!(gamma_factorial, m)?)?;
    m.add_function(wrap_pyfunction!(dunkl_binomial, m)?)?;
    m.add_function(wrap_pyfunction!(presets, m)?)?;
    m.add_function(wrap_pyfunction!(sequence, m)?)?;
    m.add_function(wrap_pyfunction!(verify_thorne, m)?)?;
    m.add_function(wrap_pyfunction!(verify_sheffer, m)?)?;
    m.add_function(wrap_pyfunction!(moments, m)?)?;
    m.add_function(wrap_pyfunction!(auxiliary_f, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_k, m)?)?;
    m.add_function(wrap_pyfunction!(crosscheck_moments, m)?)?;
    Ok(())
}
