//! Python bindings: `import zdkit`.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::{json, Value};

use ::zdkit::algebra::DEFAULT_MAX_ORDER;
use ::zdkit::reproduce::{self, Context, Target};
use ::zdkit::{cli, codes, construct, dss, exact, fhs, io, zd, Element, FunctionTable as CoreTable, Ring, RingDescriptor};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    Ok(match v {
        Value::Null => py.None(),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any().unbind(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_pyobject(py)?.into_any().unbind(),
            None => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any().unbind(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any().unbind(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(to_py(py, item)?)?;
            }
            list.into_any().unbind()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, to_py(py, item)?)?;
            }
            dict.into_any().unbind()
        }
    })
}

/// A function table over a finite ring.
#[pyclass(name = "FunctionTable", module = "zdkit", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyTable {
    inner: CoreTable,
}

#[pymethods]
impl PyTable {
    /// Table from a JSON document `{"group": ..., "m": ..., "values": [...]}`.
    #[staticmethod]
    #[pyo3(signature = (text, max_order = DEFAULT_MAX_ORDER))]
    fn from_json(text: &str, max_order: usize) -> PyResult<Self> {
        let doc: io::TableDocument = serde_json::from_str(text).map_err(err)?;
        Ok(PyTable {
            inner: io::import_table(&doc, max_order).map_err(err)?,
        })
    }

    /// Table on `Z_n` from arbitrary labels, compacted in first-occurrence order.
    #[staticmethod]
    fn from_sequence(labels: Vec<String>) -> PyResult<Self> {
        let ring = Arc::new(Ring::zn(labels.len()).map_err(err)?);
        Ok(PyTable {
            inner: CoreTable::from_labels(ring, &labels).map_err(err)?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&io::export_table(&self.inner)).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn values(&self) -> Vec<usize> {
        self.inner.values().to_vec()
    }

    #[getter]
    fn group(&self) -> String {
        self.inner.ring().descriptor().to_string()
    }

    fn with_zero_label(&self, label: usize) -> PyResult<Self> {
        Ok(PyTable {
            inner: self.inner.with_zero_label(label).map_err(err)?,
        })
    }

    /// Spectrum, classification and preimage sizes.
    fn spectrum(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let s = zd::zd_spectrum(&self.inner).map_err(err)?;
        let stats = zd::preimage_stats(&self.inner);
        let c = zd::classify(&s, &stats);
        let report = zd::identity_report(&s, &stats);
        to_py(
            py,
            &json!({
                "values": s.values,
                "lambda": s.counts,
                "max": s.max,
                "min": s.min,
                "mean": exact::format_ratio(&s.mean),
                "sizes": stats.sizes,
                "zdb": c.zdb,
                "type_a": c.type_a,
                "type_b": c.type_b,
                "almost_balanced": c.almost_balanced,
                "identities_hold": report.all_hold(),
            }),
        )
    }

    /// Cyclic-shift code metrics with the CWC and CCC certificates.
    fn code(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let code = codes::build_code(&self.inner).map_err(err)?;
        let cwc = code
            .constant_weight()
            .map(|w| codes::cwc_certify(code.n, code.d, w, code.q, code.size()));
        let ccc = code
            .constant_composition()
            .map(|c| codes::ccc_certify(code.n, code.d, c, code.size()));
        to_py(
            py,
            &json!({
                "parameters": reproduce::format_cwc(&code),
                "n": code.n,
                "size": code.size(),
                "d": code.d,
                "q": code.q,
                "weight": code.constant_weight(),
                "cwc": cwc,
                "ccc": ccc,
                "words": code.render(),
            }),
        )
    }

    fn dss(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let s = zd::zd_spectrum(&self.inner).map_err(err)?;
        let d = dss::build_dss(&self.inner);
        let cert = dss::dss_certify(self.inner.n(), self.inner.m(), s.max, None).map_err(err)?;
        to_py(
            py,
            &json!({
                "weights": d.weights(),
                "rho": d.rho,
                "tau": d.tau(),
                "perfect": d.perfect,
                "bound": cert.bound as u64,
                "optimal": cert.optimal(),
                "optimal_iff": cert.optimal_iff,
            }),
        )
    }

    #[pyo3(signature = (alpha = None))]
    fn fhs(&self, py: Python<'_>, alpha: Option<usize>) -> PyResult<Py<PyAny>> {
        let s = fhs::build_fhs(&self.inner, alpha.map(Element::new)).map_err(err)?;
        let spec = zd::zd_spectrum(&self.inner).map_err(err)?;
        let ab = zd::almost_balanced(&zd::preimage_stats(&self.inner));
        let cert = fhs::fhs_certify(s.h_max, spec.mean, s.n(), s.m, ab).map_err(err)?;
        to_py(
            py,
            &json!({
                "sequence": s.values,
                "h_max": s.h_max,
                "c": exact::format_ratio(&s.c),
                "bound": s.lg_bound as i64,
                "optimal": cert.optimal,
            }),
        )
    }

    fn __repr__(&self) -> PyResult<String> {
        let s = zd::zd_spectrum(&self.inner).map_err(err)?;
        Ok(format!(
            "FunctionTable({} over {})",
            reproduce::format_zd(self.inner.n(), self.inner.m(), &s.values),
            self.group()
        ))
    }
}

/// Coset ZDB function on `Z_n` with an order-`e` unit subgroup.
#[pyfunction]
#[pyo3(signature = (n, e, max_order = DEFAULT_MAX_ORDER))]
fn construct_zn(n: usize, e: usize, max_order: usize) -> PyResult<PyTable> {
    Ok(PyTable {
        inner: construct::family_zn(n, e, max_order).map_err(err)?.table,
    })
}

/// Coset ZDB function on a product of fields given as `[(p, r), ...]`.
#[pyfunction]
#[pyo3(signature = (factors, e, max_order = DEFAULT_MAX_ORDER))]
fn construct_product_fields(factors: Vec<(u64, u32)>, e: usize, max_order: usize) -> PyResult<PyTable> {
    Ok(PyTable {
        inner: construct::family_product_fields(&factors, e, max_order).map_err(err)?.table,
    })
}

/// Moves `a0` (default: the singleton point) into the class of `a` (default: the first
/// point outside the class of `a0`). Returns the new table and the case name.
#[pyfunction]
#[pyo3(signature = (table, a0 = None, a = None))]
fn change_point(table: &PyTable, a0: Option<usize>, a: Option<usize>) -> PyResult<(PyTable, String)> {
    let f = &table.inner;
    let a0 = a0.map_or_else(|| construct::singleton_point(f).unwrap_or(Element::ZERO), Element::new);
    let a = a.map(Element::new).unwrap_or_else(|| {
        f.ring()
            .elements()
            .find(|&x| f.value(x) != f.value(a0))
            .unwrap_or(Element::new(1))
    });
    let cp = construct::change_point_general(f, a0, a).map_err(err)?;
    let case = serde_json::to_value(cp.case).map_err(err)?;
    Ok((PyTable { inner: cp.table }, case.as_str().unwrap_or_default().to_string()))
}

/// `nd / (nd - n^2 + Σ w^2)` as `"p/q"`, or `None` when inapplicable.
#[pyfunction]
fn ccc_bound(n: usize, d: usize, composition: Vec<usize>) -> Option<String> {
    codes::ccc_bound(n, d, &composition).map(|b| exact::format_ratio(&b))
}

#[pyfunction]
fn cwc_bound(n: usize, d: usize, w: usize, q: usize) -> Option<String> {
    codes::cwc_bound(n, d, w, q).map(|b| exact::format_ratio(&b))
}

#[pyfunction]
fn dss_bound(n: usize, q: usize, rho: usize) -> PyResult<u64> {
    Ok(dss::dss_bound(n, q, rho).map_err(err)? as u64)
}

/// `(C, ceil(C))` with `C` as `"p/q"`.
#[pyfunction]
fn lg_bound(n: usize, m: usize) -> PyResult<(String, i64)> {
    let (c, ceil) = fhs::lg_bound(n, m).map_err(err)?;
    Ok((exact::format_ratio(&c), ceil as i64))
}

/// Reproduction rows as dictionaries.
#[pyfunction]
#[pyo3(signature = (target = "all", n_limit = 64, fixtures = None))]
fn reproduce_rows(py: Python<'_>, target: &str, n_limit: usize, fixtures: Option<String>) -> PyResult<Py<PyAny>> {
    let target = <Target as clap::ValueEnum>::from_str(target, true).map_err(err)?;
    let ctx = Context {
        max_order: DEFAULT_MAX_ORDER,
        fixtures: fixtures.map_or_else(reproduce::default_fixtures, Into::into),
        n_limit,
    };
    let rows = reproduce::reproduce(target, &ctx);
    to_py(py, &serde_json::to_value(rows).map_err(err)?)
}

/// Runs the command line in process; returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let out = cli::run(std::iter::once("zdkit".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

/// Parses a ring descriptor such as `{"kind": "gf", "p": 3, "r": 2}` and returns its name
/// and order.
#[pyfunction]
fn describe_group(text: &str) -> PyResult<(String, usize)> {
    let desc: RingDescriptor = serde_json::from_str(text).map_err(err)?;
    let ring = Ring::new(&desc).map_err(err)?;
    Ok((desc.to_string(), ring.order()))
}

#[pymodule]
#[pyo3(name = "zdkit")]
pub fn zdkit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTable>()?;
    m.add_function(wrap_pyfunction!(construct_zn, m)?)?;
    m.add_function(wrap_pyfunction!(construct_product_fields, m)?)?;
    m.add_function(wrap_pyfunction!(change_point, m)?)?;
    m.add_function(wrap_pyfunction!(ccc_bound, m)?)?;
    m.add_function(wrap_pyfunction!(cwc_bound, m)?)?;
    m.add_function(wrap_pyfunction!(dss_bound, m)?)?;
    m.add_function(wrap_pyfunction!(lg_bound, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce_rows, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    m.add_function(wrap_pyfunction!(describe_group, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
