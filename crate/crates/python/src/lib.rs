//! Python bindings: build algebras, compute `HH¹` and inspect the resulting
//! restricted Lie algebra.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hh1_core::algebra::{self as alg, AlgebraJson, QuiverPresentation};
use hh1_core::hochschild::{self, HH1Presentation, DEFAULT_SEED};
use hh1_core::lie::{self, RestrictedLie};
use hh1_core::linalg::Fp;
use hh1_core::suite::{self, SuiteConfig};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn field(p: u32) -> PyResult<Fp> {
    if p < 3 {
        return Err(PyValueError::new_err(
            "characteristic Char(k):=p≥3 is required",
        ));
    }
    Fp::new(p).map_err(err)
}

/// Serializable value to a Python object through the `json` module.
fn to_py<T: serde::Serialize>(py: Python<'_>, v: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(v).map_err(err)?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

#[pyclass(name = "Algebra", frozen)]
struct PyAlgebra {
    inner: alg::Algebra,
    smash: Option<alg::SmashDescriptor>,
}

impl From<alg::Algebra> for PyAlgebra {
    fn from(inner: alg::Algebra) -> Self {
        PyAlgebra { inner, smash: None }
    }
}

#[pymethods]
impl PyAlgebra {
    /// `A(n, r)`: truncated polynomials in `x` smashed with characters of `Z/p^r`.
    #[staticmethod]
    fn smash(p: u32, n: u32, r: u32) -> PyResult<Self> {
        let (inner, desc) = alg::smash_product(field(p)?, n, r).map_err(err)?;
        Ok(PyAlgebra {
            inner,
            smash: Some(desc),
        })
    }

    #[staticmethod]
    fn truncated(p: u32, exponents: Vec<u32>) -> PyResult<Self> {
        let inner = alg::truncated_polynomial(field(p)?, &exponents).map_err(err)?;
        Ok(inner.into())
    }

    #[staticmethod]
    fn kronecker(p: u32) -> PyResult<Self> {
        Ok(alg::kronecker(field(p)?).map_err(err)?.into())
    }

    #[staticmethod]
    fn trivial_extension_kronecker(p: u32) -> PyResult<Self> {
        let k = alg::kronecker(field(p)?).map_err(err)?;
        Ok(alg::trivial_extension(&k).map_err(err)?.into())
    }

    #[staticmethod]
    fn trivial_extension_quiver(p: u32) -> PyResult<Self> {
        let q = QuiverPresentation::trivial_extension_kronecker();
        Ok(alg::quiver_algebra(field(p)?, &q).map_err(err)?.into())
    }

    #[staticmethod]
    fn u0_borel(p: u32, n: u32) -> PyResult<Self> {
        Ok(alg::u0_borel(field(p)?, n).map_err(err)?.into())
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(AlgebraJson::parse(text).map_err(err)?.into())
    }

    fn to_json(&self) -> String {
        AlgebraJson::dump(&self.inner)
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn mul(&self, a: Vec<u32>, b: Vec<u32>) -> PyResult<Vec<u32>> {
        if a.len() != self.inner.dim() || b.len() != self.inner.dim() {
            return Err(PyValueError::new_err(
                "vector length differs from the dimension",
            ));
        }
        Ok(self.inner.mul(&a, &b))
    }

    fn center_dim(&self) -> usize {
        alg::center(&self.inner).dim()
    }

    /// Dimensions of the blocks.
    fn blocks(&self) -> PyResult<Vec<usize>> {
        let b = alg::block_decomposition(&self.inner).map_err(err)?;
        Ok(b.iter().map(|b| b.algebra.dim()).collect())
    }

    #[pyo3(signature = (seed = DEFAULT_SEED))]
    fn hh1(&self, seed: u64) -> PyResult<PyHH1> {
        Ok(PyHH1 {
            inner: hochschild::hh1_seeded(&self.inner, seed).map_err(err)?,
        })
    }

    /// `HH¹` of a smash product with the outer derivations `g_{0,j}` as
    /// complement.
    #[pyo3(signature = (seed = DEFAULT_SEED))]
    fn smash_hh1(&self, seed: u64) -> PyResult<PyHH1> {
        let desc = self
            .smash
            .ok_or_else(|| PyValueError::new_err("not built by Algebra.smash"))?;
        Ok(PyHH1 {
            inner: hochschild::smash_hh1(&self.inner, &desc, seed).map_err(err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "Algebra({}, dim={}, p={})",
            self.inner.name(),
            self.inner.dim(),
            self.inner.p()
        )
    }
}

#[pyclass(name = "HH1", frozen)]
struct PyHH1 {
    inner: HH1Presentation,
}

#[pymethods]
impl PyHH1 {
    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn dim_der(&self) -> usize {
        self.inner.dim_der()
    }

    #[getter]
    fn dim_ider(&self) -> usize {
        self.inner.dim_ider()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.complement_labels().to_vec()
    }

    fn bracket_table(&self) -> Vec<Vec<Vec<u32>>> {
        self.inner.bracket_table().clone()
    }

    fn pmap_table(&self) -> Vec<Vec<u32>> {
        self.inner.pmap_table().clone()
    }

    fn report(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.inner.report())
    }

    fn lie(&self) -> PyResult<PyLie> {
        Ok(PyLie {
            inner: RestrictedLie::from_hh1(&self.inner).map_err(err)?,
        })
    }
}

#[pyclass(name = "RestrictedLie", frozen)]
struct PyLie {
    inner: RestrictedLie,
}

impl PyLie {
    fn check(&self, x: &[u32]) -> PyResult<()> {
        if x.len() != self.inner.dim() {
            return Err(PyValueError::new_err(
                "vector length differs from the dimension",
            ));
        }
        Ok(())
    }
}

#[pymethods]
impl PyLie {
    #[staticmethod]
    fn sl2(p: u32) -> PyResult<Self> {
        Ok(PyLie {
            inner: lie::sl2(field(p)?).map_err(err)?,
        })
    }

    #[staticmethod]
    fn gl2(p: u32) -> PyResult<Self> {
        Ok(PyLie {
            inner: lie::gl2(field(p)?).map_err(err)?,
        })
    }

    #[staticmethod]
    fn witt(p: u32, n: usize) -> PyResult<Self> {
        Ok(PyLie {
            inner: lie::witt(field(p)?, n).map_err(err)?,
        })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn bracket(&self, x: Vec<u32>, y: Vec<u32>) -> PyResult<Vec<u32>> {
        self.check(&x)?;
        self.check(&y)?;
        Ok(self.inner.bracket(&x, &y))
    }

    fn p_power(&self, x: Vec<u32>) -> PyResult<Vec<u32>> {
        self.check(&x)?;
        Ok(self.inner.p_power(&x))
    }

    fn is_simple(&self) -> PyResult<bool> {
        lie::is_simple(&self.inner).map_err(err)
    }

    fn is_trigonalizable(&self) -> bool {
        lie::is_trigonalizable(&self.inner)
    }

    fn is_solvable(&self) -> bool {
        lie::series_and_predicates(&self.inner).is_solvable
    }

    #[pyo3(signature = (seed = DEFAULT_SEED))]
    fn maximal_torus(&self, py: Python<'_>, seed: u64) -> PyResult<Py<PyAny>> {
        to_py(
            py,
            &lie::greedy_maximal_torus(&self.inner, seed).map_err(err)?,
        )
    }

    fn fingerprint(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &lie::fingerprint(&self.inner).map_err(err)?)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner.to_json()).map_err(err)
    }
}

/// Runs the reproduction suite and returns one dict per check.
#[pyfunction]
#[pyo3(signature = (p = 3, seed = DEFAULT_SEED))]
fn reproduce(py: Python<'_>, p: u32, seed: u64) -> PyResult<Py<PyAny>> {
    field(p)?;
    if !suite::SUITE_PRIMES.contains(&p) {
        return Err(PyValueError::new_err("the suite supports p = 3 and p = 5"));
    }
    to_py(py, &suite::reproduce(&SuiteConfig::new(p, seed)))
}

#[pyfunction]
fn check_ids() -> Vec<&'static str> {
    suite::CHECK_IDS.to_vec()
}

#[pymodule]
fn hh1(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyHH1>()?;
    m.add_class::<PyLie>()?;
    m.add_function(wrap_pyfunction!(reproduce, m)?)?;
    m.add_function(wrap_pyfunction!(check_ids, m)?)?;
    Ok(())
}
