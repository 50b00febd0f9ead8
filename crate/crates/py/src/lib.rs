//! Python bindings: the main exact-arithmetic entry points exposed as plain
//! functions returning dicts, lists and arbitrary-precision ints.

use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use split_spectral::cohomology::{build_cover_model, so_fiber_model};
use split_spectral::components::{self, Group};
use split_spectral::covers::{self, CurveParams};
use split_spectral::degrees;
use split_spectral::divisors::{self, Divisor};
use split_spectral::gf2::BitVector;
use split_spectral::hitchin;
use split_spectral::ledger;
use split_spectral::swdata::{self, SpectralDatum};

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn params(m: i64, g: i64) -> PyResult<CurveParams> {
    CurveParams::new(m, g).map_err(value_err)
}

#[pyfunction]
fn cover_geometry<'py>(py: Python<'py>, m: i64, g: i64) -> PyResult<Bound<'py, PyDict>> {
    let geo = covers::build_geometry(params(m, g)?);
    let d = PyDict::new(py);
    d.set_item("g_S", geo.g_S)?;
    d.set_item("g_Sbar", geo.g_Sbar)?;
    d.set_item("N", geo.N)?;
    d.set_item("deg_K", geo.deg_K)?;
    d.set_item("dim_prym", geo.dim_prym)?;
    d.set_item("dim_hitchin_base", geo.dim_hitchin_base)?;
    d.set_item("dim_prym2", geo.dim_prym2)?;
    d.set_item("dim_so_fiber", geo.dim_so_fiber)?;
    Ok(d)
}

#[pyfunction]
fn hitchin_base_dims(m: i64, g: i64) -> PyResult<Vec<i64>> {
    Ok(covers::hitchin_base_dims(params(m, g)?))
}

#[pyfunction]
fn count_by_m(n: usize, m: usize) -> PyResult<BigUint> {
    divisors::count_by_m(n, m).map_err(value_err)
}

#[pyfunction]
fn count_classes(n: usize) -> PyResult<BigUint> {
    divisors::count_classes(n).map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (n, max_m=None))]
fn enumerate_classes(n: usize, max_m: Option<usize>) -> PyResult<Vec<(String, usize)>> {
    Ok(divisors::enumerate_classes(n, max_m)
        .map_err(value_err)?
        .map(|c| (c.rep().support().to_binary_string(), c.m_invariant()))
        .collect())
}

#[pyfunction]
fn canonicalize(bits: &str) -> PyResult<(String, usize)> {
    let d = Divisor::from_binary_str(bits).map_err(value_err)?;
    let c = divisors::canonicalize(&d).map_err(value_err)?;
    Ok((c.rep().support().to_binary_string(), c.m_invariant()))
}

#[pyfunction]
fn degree_profile<'py>(py: Python<'py>, m: i64, g: i64, m_invariant: i64) -> PyResult<Bound<'py, PyDict>> {
    let p = degrees::degree_profile(m, g, m_invariant).map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("M", p.m_invariant)?;
    d.set_item("deg_U", p.deg_U)?;
    d.set_item("deg_U_plus", p.deg_U_plus)?;
    d.set_item("deg_U_minus", p.deg_U_minus)?;
    d.set_item("deg_W", p.deg_W)?;
    d.set_item("toledo", p.toledo)?;
    Ok(d)
}

#[pyfunction]
fn milnor_wood<'py>(py: Python<'py>, m: i64, g: i64, m_invariant: i64) -> PyResult<Bound<'py, PyDict>> {
    let r = degrees::milnor_wood(m, g, m_invariant).map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("toledo", r.toledo)?;
    d.set_item("within_bound", r.within_bound)?;
    d.set_item("c1_mod2", r.c1_mod2)?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (m, g, f, d, w2v, eps_sigma=false, eps_sbar=false))]
#[allow(clippy::too_many_arguments)]
fn sw_classes<'py>(
    py: Python<'py>,
    m: i64,
    g: i64,
    f: &str,
    d: &str,
    w2v: bool,
    eps_sigma: bool,
    eps_sbar: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let p = params(m, g)?;
    let model = build_cover_model(p, eps_sigma, eps_sbar);
    let dim = model.h_sbar().dim();
    let f = if let Some(hex) = f.strip_prefix("0x") {
        BitVector::from_hex(&format!("0x{hex}"), dim).map_err(value_err)?
    } else {
        BitVector::from_binary_str(f).map_err(value_err)?
    };
    let divisor = Divisor::from_binary_str(d).map_err(value_err)?;
    let class = divisors::canonicalize(&divisor).map_err(value_err)?;
    let datum = SpectralDatum {
        f,
        d: class,
        w2_total: w2v,
    };
    let a = swdata::sw_classes(&datum, &model).map_err(value_err)?;
    let b = swdata::sw_classes_spin(&datum, &model).map_err(value_err)?;
    if a != b {
        return Err(PyValueError::new_err(
            "the two class computation routes disagree",
        ));
    }
    let out = PyDict::new(py);
    out.set_item("w1_Vplus", a.w1_Vplus.to_binary_string())?;
    out.set_item("w2_Vplus", a.w2_Vplus)?;
    out.set_item("w2_Vminus", a.w2_Vminus)?;
    out.set_item("M", a.m_invariant)?;
    Ok(out)
}

#[pyfunction]
fn hitchin_bundles<'py>(py: Python<'py>, m: i64) -> PyResult<Bound<'py, PyDict>> {
    if m < 1 {
        return Err(PyValueError::new_err(format!(
            "rank parameter m must be >= 1, got {m}"
        )));
    }
    let (plus, minus) = hitchin::parity_split(m);
    let d = PyDict::new(py);
    d.set_item("symplectic", hitchin::sp_bundle(m).half_exponents)?;
    d.set_item("orthogonal", hitchin::so_bundle(m).half_exponents)?;
    d.set_item("lagrangian_half", hitchin::sp_half_bundle(m).half_exponents)?;
    d.set_item("parity_plus", plus.half_exponents)?;
    d.set_item("parity_minus", minus.half_exponents)?;
    d.set_item("twisted_rank_m", hitchin::sl_twisted_bundle(m).half_exponents)?;
    d.set_item("all_checks_pass", hitchin::all_checks_pass(m))?;
    Ok(d)
}

#[pyfunction]
fn gothen_count(g: u32) -> PyResult<BigUint> {
    if g < 2 {
        return Err(PyValueError::new_err(format!("genus must be >= 2, got {g}")));
    }
    Ok(components::gothen_count(g))
}

#[pyfunction]
fn so_fiber<'py>(py: Python<'py>, m: i64, g: i64) -> PyResult<Bound<'py, PyDict>> {
    let r = so_fiber_model(params(m, g)?);
    let d = PyDict::new(py);
    d.set_item("dim", r.dim)?;
    d.set_item("copies", r.copies)?;
    d.set_item("points_per_copy", r.points_per_copy)?;
    Ok(d)
}

#[pyfunction]
fn fiber_count(group: &str, m: i64, g: i64, m_invariant: i64) -> PyResult<BigUint> {
    let p = params(m, g)?;
    let descriptor = match group {
        "sp" => components::sp_component(p, m_invariant),
        "so" => components::so_component(p, m_invariant),
        _ => {
            return Err(PyValueError::new_err(format!(
                "group must be 'sp' or 'so', got {group:?}"
            )))
        }
    }
    .map_err(value_err)?;
    Ok(descriptor.fiber_count_per_point)
}

#[pyfunction]
fn convention_ledger<'py>(py: Python<'py>, m: i64, g: i64) -> PyResult<Vec<Bound<'py, PyDict>>> {
    params(m, g)?;
    ledger::convention_ledger(m, g)
        .into_iter()
        .map(|e| {
            let d = PyDict::new(py);
            d.set_item("id", e.id)?;
            d.set_item("adopted", e.adopted)?;
            d.set_item("rejected", e.rejected)?;
            d.set_item("evidence", e.evidence)?;
            d.set_item("resolved", e.resolved)?;
            Ok(d)
        })
        .collect()
}

#[pyfunction]
fn grading_totals<'py>(py: Python<'py>, m: i64, g: i64) -> PyResult<Bound<'py, PyDict>> {
    let p = params(m, g)?;
    let d = PyDict::new(py);
    d.set_item("sp", components::grading_table(Group::SpReal, p).total)?;
    d.set_item("so", components::grading_table(Group::SoSplit, p).total)?;
    Ok(d)
}

#[pymodule]
fn _split_spectral(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(cover_geometry, m)?)?;
    m.add_function(wrap_pyfunction!(hitchin_base_dims, m)?)?;
    m.add_function(wrap_pyfunction!(count_by_m, m)?)?;
    m.add_function(wrap_pyfunction!(count_classes, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_classes, m)?)?;
    m.add_function(wrap_pyfunction!(canonicalize, m)?)?;
    m.add_function(wrap_pyfunction!(degree_profile, m)?)?;
    m.add_function(wrap_pyfunction!(milnor_wood, m)?)?;
    m.add_function(wrap_pyfunction!(sw_classes, m)?)?;
    m.add_function(wrap_pyfunction!(hitchin_bundles, m)?)?;
    m.add_function(wrap_pyfunction!(gothen_count, m)?)?;
    m.add_function(wrap_pyfunction!(so_fiber, m)?)?;
    m.add_function(wrap_pyfunction!(fiber_count, m)?)?;
    m.add_function(wrap_pyfunction!(convention_ledger, m)?)?;
    m.add_function(wrap_pyfunction!(grading_totals, m)?)?;
    Ok(())
}
