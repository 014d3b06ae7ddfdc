//! Python bindings for `opcyl`.

use std::sync::Arc;

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use opcyl::cli::operad;
use opcyl::cylinder::Cylinder;
use opcyl::expr::{parse_element, parse_label, to_text};
use opcyl::json::{from_json, to_json};
use opcyl::latex::{to_latex, Form};
use opcyl::linear::{doubling, reversing, DoubleCylinder};
use opcyl::load::presentation_from_json;
use opcyl::verify::{self, default_presentation, plain_source, Bounds};
use opcyl::{differential, DgOperad, OpError};

create_exception!(opcyl_py, OpcylError, PyValueError);

fn py_err(e: OpError) -> PyErr {
    OpcylError::new_err(e.to_string())
}

fn form(layout: &str) -> PyResult<Form> {
    match layout {
        "auto" => Ok(Form::Auto),
        "tree" => Ok(Form::Tree),
        "nested" => Ok(Form::Nested),
        _ => Err(PyValueError::new_err(format!("unknown layout `{layout}`"))),
    }
}

/// A DG-operad: a built-in presentation, a cylinder or a double cylinder.
#[pyclass(frozen, from_py_object, name = "Operad", module = "opcyl_py")]
#[derive(Clone)]
pub struct PyOperad {
    inner: Arc<dyn DgOperad>,
}

/// An element of an operad, tied to the operad it was built in.
#[pyclass(frozen, from_py_object, name = "Element", module = "opcyl_py")]
#[derive(Clone)]
pub struct PyElement {
    operad: Arc<dyn DgOperad>,
    inner: opcyl::Element,
}

impl PyOperad {
    fn wrap(&self, e: opcyl::Element) -> PyElement {
        PyElement { operad: self.inner.clone(), inner: e }
    }

    fn own(&self, e: &PyElement) -> PyResult<opcyl::Element> {
        if Arc::ptr_eq(&self.inner, &e.operad) {
            Ok(e.inner.clone())
        } else {
            parse_element(&*self.inner, &to_text(&*e.operad, &e.inner)).map_err(py_err)
        }
    }

    fn cylinder(&self) -> Arc<dyn DgOperad> {
        Arc::new(Cylinder::new(plain_source(self.inner.clone())))
    }
}

#[pymethods]
impl PyOperad {
    #[new]
    #[pyo3(signature = (name = "ainf", suspended = false))]
    fn new(name: &str, suspended: bool) -> PyResult<Self> {
        Ok(PyOperad { inner: operad(name, suspended).map_err(py_err)? })
    }

    /// Presentation from the JSON file format.
    #[staticmethod]
    fn from_presentation_json(src: &str) -> PyResult<Self> {
        Ok(PyOperad { inner: Arc::new(presentation_from_json(src).map_err(py_err)?) })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name()
    }

    fn cyl(&self) -> PyOperad {
        PyOperad { inner: self.cylinder() }
    }

    fn double(&self) -> PyOperad {
        PyOperad { inner: Arc::new(DoubleCylinder::new(plain_source(self.inner.clone()))) }
    }

    fn parse(&self, expr: &str) -> PyResult<PyElement> {
        Ok(self.wrap(parse_element(&*self.inner, expr).map_err(py_err)?))
    }

    fn parse_json(&self, src: &str) -> PyResult<PyElement> {
        Ok(self.wrap(from_json(&*self.inner, src).map_err(py_err)?))
    }

    fn diff(&self, e: &PyElement) -> PyResult<PyElement> {
        let x = self.own(e)?;
        Ok(self.wrap(differential(&*self.inner, &x).map_err(py_err)?))
    }

    /// Boundary of `gen` (e.g. `sigma mu_3`) in the cylinder of this operad.
    fn cyl_diff(&self, gen: &str) -> PyResult<PyElement> {
        let c = Cylinder::new(plain_source(self.inner.clone()));
        let l = parse_label(&c, gen).map_err(py_err)?;
        let g = l.cell().ok_or_else(|| OpcylError::new_err(format!("{gen} is not a cell")))?;
        let b = c.boundary(g).map_err(py_err)?;
        Ok(PyElement { operad: Arc::new(c), inner: b })
    }

    /// Cylinder homotopy of an element of the cylinder, given as an expression.
    fn homotopy(&self, expr: &str) -> PyResult<PyElement> {
        let c = Cylinder::new(plain_source(self.inner.clone()));
        let e = parse_element(&c, expr).map_err(py_err)?;
        let h = c.homotopy(&e).map_err(py_err)?;
        Ok(PyElement { operad: Arc::new(c), inner: h })
    }

    fn doubling(&self, expr: &str) -> PyResult<PyElement> {
        let p = plain_source(self.inner.clone());
        let e = parse_element(&Cylinder::new(p.clone()), expr).map_err(py_err)?;
        let d = doubling(&*p, &e).map_err(py_err)?;
        Ok(PyElement { operad: Arc::new(DoubleCylinder::new(p)), inner: d })
    }

    fn reversing(&self, expr: &str) -> PyResult<PyElement> {
        let p = plain_source(self.inner.clone());
        let c = Cylinder::new(p.clone());
        let e = parse_element(&c, expr).map_err(py_err)?;
        let r = reversing(&*p, &e).map_err(py_err)?;
        Ok(PyElement { operad: Arc::new(c), inner: r })
    }

    fn __repr__(&self) -> String {
        format!("Operad({:?})", self.inner.name())
    }
}

#[pymethods]
impl PyElement {
    fn __str__(&self) -> String {
        to_text(&*self.operad, &self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Element({:?})", self.__str__())
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __eq__(&self, other: &PyElement) -> bool {
        self.inner == other.inner
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        to_json(&self.inner).hash(&mut h);
        h.finish()
    }

    fn __add__(&self, other: &PyElement) -> PyResult<PyElement> {
        let s = self.inner.checked_add(&other.inner).map_err(py_err)?;
        Ok(PyElement { operad: self.operad.clone(), inner: s })
    }

    fn __sub__(&self, other: &PyElement) -> PyResult<PyElement> {
        let s = self.inner.checked_add(&-&other.inner).map_err(py_err)?;
        Ok(PyElement { operad: self.operad.clone(), inner: s })
    }

    fn __neg__(&self) -> PyElement {
        PyElement { operad: self.operad.clone(), inner: -&self.inner }
    }

    fn __mul__(&self, k: i64) -> PyElement {
        PyElement { operad: self.operad.clone(), inner: self.inner.scale_i(k) }
    }

    fn __rmul__(&self, k: i64) -> PyElement {
        self.__mul__(k)
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// `(arity, degree)`, or None for zero.
    #[getter]
    fn grading(&self) -> Option<(usize, i64)> {
        self.inner.grading()
    }

    fn diff(&self) -> PyResult<PyElement> {
        let d = differential(&*self.operad, &self.inner).map_err(py_err)?;
        Ok(PyElement { operad: self.operad.clone(), inner: d })
    }

    fn compose(&self, slot: usize, other: &PyElement) -> PyResult<PyElement> {
        let c = self.inner.compose_at(slot, &other.inner).map_err(py_err)?;
        Ok(PyElement { operad: self.operad.clone(), inner: c })
    }

    fn brace(&self, args: Vec<PyElement>) -> PyResult<PyElement> {
        let v: Vec<_> = args.into_iter().map(|a| a.inner).collect();
        let b = self.inner.brace(&v).map_err(py_err)?;
        Ok(PyElement { operad: self.operad.clone(), inner: b })
    }

    fn __call__(&self, args: Vec<PyElement>) -> PyResult<PyElement> {
        let v: Vec<_> = args.into_iter().map(|a| a.inner).collect();
        let c = self.inner.compose_full(&v).map_err(py_err)?;
        Ok(PyElement { operad: self.operad.clone(), inner: c })
    }

    fn to_json(&self) -> String {
        to_json(&self.inner)
    }

    #[pyo3(signature = (layout = "auto"))]
    fn to_latex(&self, layout: &str) -> PyResult<String> {
        Ok(to_latex(&*self.operad, &self.inner, form(layout)?))
    }

    #[getter]
    fn operad(&self) -> PyOperad {
        PyOperad { inner: self.operad.clone() }
    }
}

/// Runs a verification suite. Returns `(passed, summary_line)`.
#[pyfunction]
#[allow(clippy::too_many_arguments)]
#[pyo3(signature = (suite, presentation = None, suspended = false, max_arity = 4, max_vertices = 3, seed = 0, samples = 200))]
fn verify_suite(
    py: Python<'_>,
    suite: &str,
    presentation: Option<&str>,
    suspended: bool,
    max_arity: usize,
    max_vertices: usize,
    seed: u64,
    samples: usize,
) -> PyResult<(bool, String)> {
    let name = presentation.unwrap_or_else(|| default_presentation(suite)).to_string();
    let suite = suite.to_string();
    py.detach(move || {
        let p = operad(&name, suspended)?;
        let b = Bounds { max_arity, max_vertices, seed, samples };
        let r = verify::run(&suite, p, &b)?;
        Ok((r.passed(), r.line()))
    })
    .map_err(py_err)
}

/// Runs the command line with `args` (without the program name).
/// Returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn cli(py: Python<'_>, args: Vec<String>) -> (i32, String, String) {
    py.detach(move || {
        let o = opcyl::cli::run(std::iter::once("opcyl".to_string()).chain(args));
        (o.code, o.stdout, o.stderr)
    })
}

#[pymodule]
pub fn opcyl_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyOperad>()?;
    m.add_class::<PyElement>()?;
    m.add_function(wrap_pyfunction!(verify_suite, m)?)?;
    m.add_function(wrap_pyfunction!(cli, m)?)?;
    m.add("OpcylError", m.py().get_type::<OpcylError>())?;
    m.add("SUITES", verify::SUITES.to_vec())?;
    Ok(())
}
