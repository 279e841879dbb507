//! Python bindings: polynomials, matrices over the supercommutative
//! coefficients, finite-dimensional algebras, and the verification suites.

use pyo3::exceptions::{PyRuntimeError, PyTypeError, PyValueError};
use pyo3::prelude::*;

use superpi_core::algebras::{evaluate_mat, generic_f, gordienko_a1, grassmann_truncated, m11_over_grassmann, ut2, AlgebraDoc, FinDimAlgebra, MatSC};
use superpi_core::catalog::NAMES;
use superpi_core::expr::{self, Value};
use superpi_core::freealg::{self, derangements, gamma_basis, NCPoly};
use superpi_core::report::SuiteConfig;
use superpi_core::suites::run_suite;
use superpi_core::tideal::spaces::{consequences_pn, identities_pn, identities_pn_m11, membership_residuals, proper_dimension};
use superpi_core::tideal::young::gamma_v_dim;
use superpi_core::tideal::{Limits, TidealError};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn tideal_err(e: TidealError) -> PyErr {
    match e {
        TidealError::Budget { .. } => PyRuntimeError::new_err(e.to_string()),
        other => value_err(other),
    }
}

/// A polynomial in the free associative algebra on `t1, t2, ...`.
#[pyclass(name = "Poly", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPoly(NCPoly);

#[pymethods]
impl PyPoly {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<PyPoly> {
        match expr::eval_str(text).map_err(value_err)? {
            Value::Poly(p) => Ok(PyPoly(p)),
            Value::Num(r) => Ok(PyPoly(NCPoly::zero().add(&NCPoly::monomial(freealg::NCWord(Default::default()), r)))),
            other => Err(PyTypeError::new_err(format!("`{text}` is a {}", other.kind()))),
        }
    }

    #[staticmethod]
    fn var(i: u16) -> PyResult<PyPoly> {
        if i == 0 {
            return Err(value_err("variables are numbered from 1"));
        }
        Ok(PyPoly(NCPoly::var(i)))
    }

    fn __add__(&self, o: &PyPoly) -> PyPoly {
        PyPoly(self.0.add(&o.0))
    }

    fn __sub__(&self, o: &PyPoly) -> PyPoly {
        PyPoly(self.0.sub(&o.0))
    }

    fn __mul__(&self, o: &PyPoly) -> PyPoly {
        PyPoly(self.0.mul(&o.0))
    }

    fn __neg__(&self) -> PyPoly {
        PyPoly(self.0.scale(&(-1i64).into()))
    }

    fn __pow__(&self, e: u32, _modulo: Option<Py<PyAny>>) -> PyPoly {
        PyPoly(self.0.pow(e))
    }

    fn commutator(&self, o: &PyPoly) -> PyPoly {
        PyPoly(freealg::commutator(&self.0, &o.0))
    }

    fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_proper(&self) -> bool {
        self.0.is_proper()
    }

    fn linearization_components(&self) -> Vec<PyPoly> {
        self.0.linearization_components().into_iter().map(PyPoly).collect()
    }

    /// `f(g1, g2, ...)`.
    fn substitute(&self, images: Vec<PyPoly>) -> PyPoly {
        let imgs: Vec<NCPoly> = images.into_iter().map(|p| p.0).collect();
        PyPoly(self.0.substitute_list(&imgs))
    }

    /// The value at `t1 = C1`, `t2 = C2`, or at the given matrices.
    #[pyo3(signature = (values = None))]
    fn on_f(&self, values: Option<Vec<PyMatrix>>) -> PyResult<PyMatrix> {
        let vals = match values {
            Some(v) => v.into_iter().map(|m| m.0).collect(),
            None => {
                let (a, b) = generic_f();
                vec![a, b]
            }
        };
        if (self.0.max_variable() as usize) > vals.len() {
            return Err(value_err(format!("t{} has no value", self.0.max_variable())));
        }
        Ok(PyMatrix(evaluate_mat(&self.0, &vals).map_err(value_err)?))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}')", self.0)
    }
}

/// A square matrix with supercommutative polynomial entries.
#[pyclass(name = "Matrix", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyMatrix(MatSC);

#[pymethods]
impl PyMatrix {
    /// `C1` or `C2`, the generators of the generic algebra.
    #[staticmethod]
    fn generic(i: usize) -> PyResult<PyMatrix> {
        let (a, b) = generic_f();
        match i {
            1 => Ok(PyMatrix(a)),
            2 => Ok(PyMatrix(b)),
            _ => Err(value_err("expected 1 or 2")),
        }
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<PyMatrix> {
        match expr::eval_str(text).map_err(value_err)? {
            Value::Mat(m) => Ok(PyMatrix(m)),
            other => Err(PyTypeError::new_err(format!("`{text}` is a {}", other.kind()))),
        }
    }

    fn __add__(&self, o: &PyMatrix) -> PyResult<PyMatrix> {
        Ok(PyMatrix(self.0.try_add(&o.0).map_err(value_err)?))
    }

    fn __sub__(&self, o: &PyMatrix) -> PyResult<PyMatrix> {
        Ok(PyMatrix(self.0.try_sub(&o.0).map_err(value_err)?))
    }

    fn __mul__(&self, o: &PyMatrix) -> PyResult<PyMatrix> {
        Ok(PyMatrix(self.0.try_mul(&o.0).map_err(value_err)?))
    }

    fn __pow__(&self, e: u32, _modulo: Option<Py<PyAny>>) -> PyMatrix {
        PyMatrix(self.0.pow(e))
    }

    fn commutator(&self, o: &PyMatrix) -> PyMatrix {
        PyMatrix(self.0.commutator(&o.0))
    }

    fn size(&self) -> usize {
        self.0.size()
    }

    fn entry(&self, i: usize, j: usize) -> PyResult<String> {
        if i >= self.0.size() || j >= self.0.size() {
            return Err(value_err("index out of range"));
        }
        Ok(self.0.get(i, j).to_string())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

/// A finite-dimensional algebra given by structure constants.
#[pyclass(name = "Algebra", frozen)]
struct PyAlgebra {
    alg: FinDimAlgebra,
    m11_k: Option<usize>,
}

#[pymethods]
impl PyAlgebra {
    /// `ut2`, `a1`, `grassmann:K` or `m11:K`.
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<PyAlgebra> {
        let k = |s: &str| s.parse::<usize>().ok().filter(|k| (1..=8).contains(k)).ok_or_else(|| value_err(format!("bad truncation `{s}`")));
        let (alg, m11_k) = match name.split_once(':') {
            None if name == "ut2" => (ut2(), None),
            None if name == "a1" => (gordienko_a1(), None),
            Some(("grassmann", s)) => (grassmann_truncated(k(s)?), None),
            Some(("m11", s)) => {
                let k = k(s)?;
                (m11_over_grassmann(k), Some(k))
            }
            _ => return Err(value_err(format!("unknown algebra `{name}`"))),
        };
        Ok(PyAlgebra { alg, m11_k })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<PyAlgebra> {
        let doc: AlgebraDoc = serde_json::from_str(text).map_err(value_err)?;
        Ok(PyAlgebra { alg: FinDimAlgebra::from_json(&doc).map_err(value_err)?, m11_k: None })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.alg.to_json()).map_err(value_err)
    }

    #[getter]
    fn name(&self) -> String {
        self.alg.name().to_string()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.alg.dim()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.alg.labels().to_vec()
    }

    /// Dimension of the multilinear identities of degree `n`.
    fn identity_dim(&self, n: usize) -> PyResult<usize> {
        Ok(self.identities(n)?.dim())
    }

    /// Whether `f` vanishes identically on the algebra.
    fn is_identity(&self, f: &PyPoly) -> PyResult<bool> {
        for c in f.0.linearization_components() {
            if let Some(n) = c.degree() {
                if !self.identities(n)?.contains(&c).map_err(tideal_err)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl PyAlgebra {
    fn identities(&self, n: usize) -> PyResult<superpi_core::tideal::spaces::PnSpace> {
        let l = Limits::with_degree(n.max(1));
        match self.m11_k {
            Some(k) => identities_pn_m11(k, n, &l),
            None => identities_pn(&self.alg, n, &l),
        }
        .map_err(tideal_err)
    }
}

/// Canonical text of an expression; raises `ValueError` with line and column.
#[pyfunction]
fn render(text: &str) -> PyResult<String> {
    Ok(expr::render(&expr::parse(text).map_err(value_err)?))
}

/// Evaluates an expression and returns `(kind, rendered value)`.
#[pyfunction]
fn evaluate(text: &str) -> PyResult<(String, String)> {
    let v = expr::eval_str(text).map_err(value_err)?;
    Ok((v.kind().to_string(), v.to_string()))
}

/// Catalog polynomials by name, e.g. `catalog("fbasis")`, `catalog("dkl", [2, 1])`.
#[pyfunction]
#[pyo3(signature = (name, params = Vec::new()))]
fn catalog(name: &str, params: Vec<i64>) -> PyResult<Vec<PyPoly>> {
    let text = if params.is_empty() { name.to_string() } else { format!("{name}({})", params.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")) };
    let v = expr::eval_str(&text).map_err(value_err)?;
    Ok(v.into_polys().map_err(value_err)?.into_iter().map(PyPoly).collect())
}

#[pyfunction]
fn catalog_names() -> Vec<(String, String, String)> {
    NAMES.iter().map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string())).collect()
}

/// Whether `f` lies in the T-ideal generated by `gens`.
#[pyfunction]
fn member(f: &PyPoly, gens: Vec<PyPoly>) -> PyResult<bool> {
    let g: Vec<NCPoly> = gens.into_iter().map(|p| p.0).collect();
    let d = f.0.degree().unwrap_or(0).max(1);
    let l = Limits { pn_degree: d, gamma_degree: d, multidegree_total: d, deadline: None };
    Ok(membership_residuals(&g, &f.0, &l).map_err(tideal_err)?.is_empty())
}

/// `dim T(gens) ∩ P_n`.
#[pyfunction]
fn consequence_dim(gens: Vec<PyPoly>, n: usize) -> PyResult<usize> {
    let g: Vec<NCPoly> = gens.into_iter().map(|p| p.0).collect();
    Ok(consequences_pn(&g, n, &Limits::with_degree(n)).map_err(tideal_err)?.dim())
}

/// `(derangements, rank-computed dim Γ_n, size of the listed basis, hook-length sum for Γ_n(V))`.
#[pyfunction]
fn gamma_dims(n: usize) -> PyResult<(u64, usize, usize, u64)> {
    let rank = proper_dimension(n, &Limits::with_degree(n)).map_err(tideal_err)?;
    Ok((derangements(n), rank, gamma_basis(n).len(), gamma_v_dim(n) as u64))
}

/// Runs a suite and returns `(exit code, JSON report)`.
#[pyfunction]
#[pyo3(signature = (suite, degree_bound = 6, trunc = 4, seed = 1, trials = 20, budget_seconds = None, heavy = false))]
fn verify(py: Python<'_>, suite: &str, degree_bound: usize, trunc: usize, seed: u64, trials: usize, budget_seconds: Option<u64>, heavy: bool) -> PyResult<(i32, String)> {
    let cfg = SuiteConfig { degree_bound, trunc, seed, trials, budget_seconds, heavy };
    let report = py.detach(|| run_suite(suite, &cfg)).map_err(value_err)?;
    Ok((report.exit_code(), report.to_json()))
}

#[pymodule]
fn superpi(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_class::<PyMatrix>()?;
    m.add_class::<PyAlgebra>()?;
    m.add_function(wrap_pyfunction!(render, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(member, m)?)?;
    m.add_function(wrap_pyfunction!(consequence_dim, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_dims, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
