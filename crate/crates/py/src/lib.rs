//! Python bindings. Rationals cross the boundary as `"p/q"` strings (ints and
//! `fractions.Fraction` are accepted on input); reports come back as dicts.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::Value;
use tannaka_core::catalog;
use tannaka_core::exactlin::rational::{format_rational, parse_rational};
use tannaka_core::exactlin::{QMatrix, QVector, Rational};
use tannaka_core::io;
use tannaka_core::jordan;
use tannaka_core::liealg::LieAlgebra as CoreAlgebra;
use tannaka_core::nilgrp::BCHGroup;
use tannaka_core::oneparam::{self, TorusParam, UnipotentParam};
use tannaka_core::repn::Module as CoreModule;
use tannaka_core::tannaka::{self as tk, CategoryClosure, ClosureOptions, NatFamily};
use tannaka_core::toric;
use tannaka_core::uea;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_q(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if let Ok(i) = obj.extract::<i64>() {
        return Ok(Rational::from_integer(i.into()));
    }
    parse_rational(&obj.str()?.to_string()).map_err(err)
}

fn to_vec(obj: &Bound<'_, PyAny>) -> PyResult<QVector> {
    obj.try_iter()?.map(|x| to_q(&x?)).collect()
}

fn to_matrix(obj: &Bound<'_, PyAny>) -> PyResult<QMatrix> {
    let rows: Vec<QVector> = obj.try_iter()?.map(|r| to_vec(&r?)).collect::<PyResult<_>>()?;
    QMatrix::from_rows(rows).map_err(err)
}

fn vec_out(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn matrix_out(m: &QMatrix) -> Vec<Vec<String>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| format_rational(&m[(i, j)])).collect()).collect()
}

fn json_out<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn report_out<'py, T: serde::Serialize>(py: Python<'py>, t: &T) -> PyResult<Bound<'py, PyAny>> {
    json_out(py, &serde_json::to_value(t).map_err(err)?)
}

#[pyclass(name = "LieAlgebra", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyLieAlgebra {
    inner: Arc<CoreAlgebra>,
}

#[pymethods]
impl PyLieAlgebra {
    /// Parses and validates the JSON algebra format.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyLieAlgebra { inner: Arc::new(io::parse_algebra(text).map_err(err)?) })
    }

    #[staticmethod]
    fn sl2() -> Self {
        PyLieAlgebra { inner: Arc::new(catalog::sl2()) }
    }

    #[staticmethod]
    fn heisenberg() -> Self {
        PyLieAlgebra { inner: Arc::new(catalog::heisenberg()) }
    }

    #[staticmethod]
    fn strictly_upper_triangular(n: usize) -> Self {
        PyLieAlgebra { inner: Arc::new(catalog::strictly_upper_triangular(n)) }
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn names(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    /// Axiom violations as strings; empty when the table is a Lie algebra.
    fn validate(&self) -> Vec<String> {
        match self.inner.validate() {
            Ok(()) => Vec::new(),
            Err(vs) => vs.iter().map(|v| format!("{v:?}")).collect(),
        }
    }

    fn bracket(&self, x: &Bound<'_, PyAny>, y: &Bound<'_, PyAny>) -> PyResult<Vec<String>> {
        Ok(vec_out(&self.inner.bracket(&to_vec(x)?, &to_vec(y)?).map_err(err)?))
    }

    /// `log(exp x · exp y)`; the algebra must be nilpotent.
    fn bch(&self, x: &Bound<'_, PyAny>, y: &Bound<'_, PyAny>) -> PyResult<Vec<String>> {
        let grp = BCHGroup::whole(&self.inner).map_err(err)?;
        Ok(vec_out(&grp.bch(&to_vec(x)?, &to_vec(y)?).map_err(err)?))
    }

    fn to_json(&self) -> String {
        io::canonical_string(&io::algebra_to_json(&self.inner))
    }
}

#[pyclass(name = "Module", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyRepModule {
    inner: CoreModule,
}

#[pymethods]
impl PyRepModule {
    #[staticmethod]
    fn from_json(text: &str, algebra: &PyLieAlgebra) -> PyResult<Self> {
        Ok(PyRepModule { inner: io::parse_module(text, &algebra.inner).map_err(err)? })
    }

    /// Irreducible sl2 module of highest weight `n`.
    #[staticmethod]
    fn sl2_irrep(algebra: &PyLieAlgebra, n: usize) -> Self {
        PyRepModule { inner: catalog::sl2_irrep(&algebra.inner, n) }
    }

    #[staticmethod]
    fn heisenberg_standard(algebra: &PyLieAlgebra) -> Self {
        PyRepModule { inner: catalog::heisenberg_standard(&algebra.inner) }
    }

    #[getter]
    fn id(&self) -> String {
        self.inner.id().to_string()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn act(&self, x: &Bound<'_, PyAny>) -> PyResult<Vec<Vec<String>>> {
        let x = to_vec(x)?;
        if x.len() != self.inner.algebra().dim() {
            return Err(err("element has the wrong length"));
        }
        Ok(matrix_out(&self.inner.act(&x)))
    }

    fn tensor(&self, other: &PyRepModule) -> PyResult<Self> {
        Ok(PyRepModule { inner: self.inner.tensor(&other.inner).map_err(err)? })
    }

    fn direct_sum(&self, other: &PyRepModule) -> PyResult<Self> {
        Ok(PyRepModule { inner: self.inner.direct_sum(&other.inner).map_err(err)? })
    }

    fn dual(&self) -> Self {
        PyRepModule { inner: self.inner.dual() }
    }

    fn is_absolutely_irreducible(&self) -> bool {
        self.inner.is_absolutely_irreducible()
    }

    /// Coefficients of `x ↦ φ(x·v)` in the divided-power PBW basis up to `degree`.
    fn matrix_coefficient<'py>(
        &self,
        py: Python<'py>,
        phi: &Bound<'py, PyAny>,
        v: &Bound<'py, PyAny>,
        degree: u32,
    ) -> PyResult<Bound<'py, PyAny>> {
        let h = uea::matrix_coefficient(&self.inner, &to_vec(phi)?, &to_vec(v)?, degree).map_err(err)?;
        json_out(py, &io::truncated_dual_to_json(&h, self.inner.algebra().names()))
    }

    fn to_json(&self) -> String {
        io::canonical_string(&io::module_to_json(&self.inner))
    }
}

#[pyclass(name = "Closure", frozen)]
pub struct PyClosure {
    inner: CategoryClosure,
}

impl PyClosure {
    fn family(&self, obj: &Bound<'_, PyAny>) -> PyResult<NatFamily> {
        let mut entries = Vec::with_capacity(self.inner.len());
        for id in self.inner.ids() {
            let m = obj.get_item(&id).map_err(|_| err(format!("missing object {id}")))?;
            entries.push(to_matrix(&m)?);
        }
        NatFamily::for_closure(&self.inner, entries).map_err(err)
    }
}

#[pymethods]
impl PyClosure {
    #[new]
    #[pyo3(signature = (algebra, generators, depth = 2, include_duals = false, extract_submodules = true, max_objects = 64))]
    fn new(
        algebra: &PyLieAlgebra,
        generators: Vec<PyRef<'_, PyRepModule>>,
        depth: usize,
        include_duals: bool,
        extract_submodules: bool,
        max_objects: usize,
    ) -> PyResult<Self> {
        let gens: Vec<CoreModule> = generators.iter().map(|m| m.inner.clone()).collect();
        let opts = ClosureOptions { depth, include_duals, extract_submodules, max_objects };
        Ok(PyClosure { inner: tk::build_closure(&algebra.inner, &gens, opts).map_err(err)? })
    }

    fn ids(&self) -> Vec<String> {
        self.inner.ids()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn object(&self, i: usize) -> PyResult<PyRepModule> {
        if i >= self.inner.len() {
            return Err(err("object index out of range"));
        }
        Ok(PyRepModule { inner: self.inner.object(i).clone() })
    }

    /// Basis of the solved Lie(M), one dict `{id: matrix}` per element.
    fn lie_m<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        report_out(py, &tk::lie_m_solve(&self.inner))
    }

    /// The family `(x_V)` of an algebra element.
    fn lie_family<'py>(&self, py: Python<'py>, x: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        report_out(py, &self.inner.lie_family(&to_vec(x)?).map_err(err)?)
    }

    /// Membership in M for a dict `{id: matrix}` covering every object.
    fn m_membership<'py>(&self, py: Python<'py>, family: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        let fam = self.family(family)?;
        report_out(py, &tk::m_membership(&self.inner, &fam))
    }

    fn lie_membership<'py>(&self, py: Python<'py>, family: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        let fam = self.family(family)?;
        report_out(py, &tk::lie_membership(&self.inner, &fam))
    }

    /// `exp(t·x)` on every object; `x` must act nilpotently.
    fn exp_family<'py>(&self, py: Python<'py>, x: &Bound<'py, PyAny>, t: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        let p = UnipotentParam::new(&self.inner, &to_vec(x)?).map_err(err)?;
        report_out(py, &oneparam::exp_family(&p, &to_q(t)?))
    }

    /// `s^h` on every object; `h` must act semisimply with integer eigenvalues.
    fn torus_family<'py>(&self, py: Python<'py>, h: &Bound<'py, PyAny>, s: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        let p = TorusParam::new(&self.inner, &to_vec(h)?).map_err(err)?;
        report_out(py, &oneparam::torus_family(&self.inner, &p, &to_q(s)?).map_err(err)?)
    }
}

/// Additive Jordan–Chevalley parts `(s, n)` of a square matrix.
#[pyfunction]
fn additive_jc(x: &Bound<'_, PyAny>) -> PyResult<(Vec<Vec<String>>, Vec<Vec<String>>)> {
    let jc = jordan::additive_jc(&to_matrix(x)?).map_err(err)?;
    Ok((matrix_out(&jc.s), matrix_out(&jc.n)))
}

/// Multiplicative parts `(e, s, u)` relative to the idempotent `e`.
#[pyfunction]
fn multiplicative_jc(
    x: &Bound<'_, PyAny>,
    e: &Bound<'_, PyAny>,
) -> PyResult<(Vec<Vec<String>>, Vec<Vec<String>>, Vec<Vec<String>>)> {
    let jc = jordan::multiplicative_jc(&to_matrix(x)?, &to_matrix(e)?).map_err(err)?;
    Ok((matrix_out(&jc.e), matrix_out(&jc.s), matrix_out(&jc.u)))
}

#[pyfunction]
fn classify<'py>(py: Python<'py>, x: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    report_out(py, &jordan::classify(&to_matrix(x)?).map_err(err)?)
}

#[pyfunction]
fn peter_weyl<'py>(py: Python<'py>, irreducibles: Vec<PyRef<'py, PyRepModule>>, degree: u32) -> PyResult<Bound<'py, PyAny>> {
    let mods: Vec<CoreModule> = irreducibles.iter().map(|m| m.inner.clone()).collect();
    report_out(py, &tk::peter_weyl_check(&mods, degree).map_err(err)?)
}

/// Faces, idempotents and structure checks for a monoid given as JSON.
#[pyfunction]
fn toric_report<'py>(py: Python<'py>, monoid_json: &str) -> PyResult<Bound<'py, PyAny>> {
    let a = io::parse_monoid(monoid_json).map_err(err)?;
    let lat = toric::faces(&a, toric::DEFAULT_GENERATOR_CAP).map_err(err)?;
    let idempotents: Vec<toric::AtildePoint> = (0..lat.len()).map(|f| toric::idempotent_of_face(&a, &lat, f)).collect();
    let report = toric::toric_structure_report(&a, &lat).map_err(err)?;
    let v = serde_json::json!({
        "monoid": serde_json::to_value(&a).map_err(err)?,
        "faces": serde_json::to_value(&lat).map_err(err)?,
        "idempotents": serde_json::to_value(&idempotents).map_err(err)?,
        "report": serde_json::to_value(&report).map_err(err)?,
    });
    json_out(py, &v)
}

#[pymodule]
fn tannaka_forge(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLieAlgebra>()?;
    m.add_class::<PyRepModule>()?;
    m.add_class::<PyClosure>()?;
    m.add_function(wrap_pyfunction!(additive_jc, m)?)?;
    m.add_function(wrap_pyfunction!(multiplicative_jc, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(peter_weyl, m)?)?;
    m.add_function(wrap_pyfunction!(toric_report, m)?)?;
    m.add("SCHEMA", io::SCHEMA)?;
    Ok(())
}
