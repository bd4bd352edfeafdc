//! Python bindings for `lawson-spectrum`.
//!
//! Results come back as plain dicts and lists. Invalid parameters raise
//! `ValueError`; numerical failures raise `RuntimeError`.

use lawson_spectrum::floquet::{periodic_spectrum, HalfPeriodClass, Parity, Period};
use lawson_spectrum::{
    classify as classify_surface, count_n2 as count, ellip_e as e_of, ellip_k as k_of, extremal,
    Modulus, SpectrumError, SurfaceParams,
};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py(e: SpectrumError) -> PyErr {
    if e.is_invalid_input() {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

fn surface(m: u32, k: u32, cover: bool) -> PyResult<SurfaceParams> {
    classify_surface(m, k, cover).map_err(to_py)
}

fn parity_name(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
        Parity::Pair => "pair",
    }
}

fn half_period_name(h: HalfPeriodClass) -> &'static str {
    match h {
        HalfPeriodClass::PiPeriodic => "pi-periodic",
        HalfPeriodClass::PiAntiperiodic => "pi-antiperiodic",
        HalfPeriodClass::Pair => "pair",
    }
}

/// Validated `(m, k)` in conventional order with its kind.
#[pyfunction]
#[pyo3(signature = (m, k, cover = false))]
fn classify<'py>(py: Python<'py>, m: u32, k: u32, cover: bool) -> PyResult<Bound<'py, PyDict>> {
    let p = surface(m, k, cover)?;
    let d = PyDict::new(py);
    d.set_item("m", p.m)?;
    d.set_item("k", p.k)?;
    d.set_item("kind", p.kind.to_string())?;
    d.set_item("cover", p.cover)?;
    Ok(d)
}

/// Extremal index `j`, `Lambda_j` (numeric and symbolic), area and crossover `l_c`.
#[pyfunction]
#[pyo3(signature = (m, k, cover = false))]
fn invariants<'py>(py: Python<'py>, m: u32, k: u32, cover: bool) -> PyResult<Bound<'py, PyDict>> {
    let p = surface(m, k, cover)?;
    let ex = extremal(&p);
    let d = PyDict::new(py);
    d.set_item("kind", p.kind.to_string())?;
    d.set_item("m", p.m)?;
    d.set_item("k", p.k)?;
    d.set_item("cover", p.cover)?;
    d.set_item("j", ex.j)?;
    d.set_item("lambda", ex.lambda_value)?;
    d.set_item("symbolic", ex.symbolic)?;
    d.set_item("area", lawson_spectrum::surface::area(&p))?;
    d.set_item("crossover", (p.norm_sq() as f64).sqrt())?;
    Ok(d)
}

/// `N(2)`, the multiplicity of 2 and the Laplace eigenvalues up to 2.
#[pyfunction]
#[pyo3(signature = (m, k, cover = false))]
fn count_n2<'py>(py: Python<'py>, m: u32, k: u32, cover: bool) -> PyResult<Bound<'py, PyDict>> {
    let p = surface(m, k, cover)?;
    let r = py.detach(|| count(&p)).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("n_of_two", r.n_of_two)?;
    d.set_item("multiplicity_of_two", r.multiplicity_of_two)?;
    d.set_item("eigenvalues", r.laplace_eigenvalues)?;
    Ok(d)
}

/// Transfer matrix entries and discriminant over one period (`pi` or `2 pi`).
#[pyfunction]
#[pyo3(signature = (m, k, l, lam, full = true, cover = false))]
fn monodromy<'py>(
    py: Python<'py>,
    m: u32,
    k: u32,
    l: f64,
    lam: f64,
    full: bool,
    cover: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let p = surface(m, k, cover)?;
    let period = if full { Period::Full } else { Period::Half };
    let t = py.detach(|| lawson_spectrum::floquet::monodromy(&p, l, lam, period)).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("phi_end", t.phi_end)?;
    d.set_item("dphi_end", t.dphi_end)?;
    d.set_item("psi_end", t.psi_end)?;
    d.set_item("dpsi_end", t.dpsi_end)?;
    d.set_item("discriminant", t.discriminant)?;
    Ok(d)
}

/// `2 pi`-periodic eigenvalues below `lambda_max` at Fourier index `l`.
#[pyfunction]
#[pyo3(signature = (m, k, l, lambda_max))]
fn eigenvalues<'py>(
    py: Python<'py>,
    m: u32,
    k: u32,
    l: f64,
    lambda_max: f64,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let p = surface(m, k, false)?;
    let modes = py.detach(|| periodic_spectrum(&p, l, lambda_max)).map_err(to_py)?;
    modes
        .into_iter()
        .map(|e| {
            let d = PyDict::new(py);
            d.set_item("i", e.i)?;
            d.set_item("lambda", e.lambda)?;
            d.set_item("multiplicity", e.multiplicity)?;
            d.set_item("parity", parity_name(e.parity))?;
            d.set_item("half_period", half_period_name(e.half_period))?;
            Ok(d)
        })
        .collect()
}

/// Compare the numerical `N(2)` and `2 x area` with the closed forms.
#[pyfunction]
#[pyo3(signature = (m, k, cover = false))]
fn verify<'py>(py: Python<'py>, m: u32, k: u32, cover: bool) -> PyResult<Bound<'py, PyDict>> {
    let p = surface(m, k, cover)?;
    let r = py.detach(|| lawson_spectrum::verify(&p)).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("j", r.j)?;
    d.set_item("n_of_two", r.n_of_two)?;
    d.set_item("lambda_closed_form", r.lambda_closed_form)?;
    d.set_item("lambda_from_area", r.lambda_from_area)?;
    d.set_item("relative_error", r.relative_error)?;
    d.set_item("passed", r.passed())?;
    Ok(d)
}

/// Complete elliptic integral of the first kind `K(k)`.
#[pyfunction]
fn ellip_k(k: f64) -> PyResult<f64> {
    k_of(Modulus::new(k).map_err(to_py)?).map_err(to_py)
}

/// Complete elliptic integral of the second kind `E(k)`.
#[pyfunction]
fn ellip_e(k: f64) -> PyResult<f64> {
    Ok(e_of(Modulus::new(k).map_err(to_py)?))
}

#[pymodule]
fn lawson_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(invariants, m)?)?;
    m.add_function(wrap_pyfunction!(count_n2, m)?)?;
    m.add_function(wrap_pyfunction!(monodromy, m)?)?;
    m.add_function(wrap_pyfunction!(eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(ellip_k, m)?)?;
    m.add_function(wrap_pyfunction!(ellip_e, m)?)?;
    Ok(())
}
