//! Python bindings: `solvcurv._solvcurv`, re-exported by the `solvcurv`
//! package.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use solvcurv::curvature::{self, PlaneStrategy, ReportOptions};
use solvcurv::pipeline::{self, FlagSpec};
use solvcurv::{io, CharacteristicElement, Family, FlagChoice, MetricSolvLieAlgebra, RootSystem};

create_exception!(_solvcurv, SolvcurvError, PyException, "Error raised by solvcurv; the message starts with the error kind.");

fn err(e: solvcurv::Error) -> PyErr {
    SolvcurvError::new_err(format!("{}: {e}", e.kind()))
}

/// Converts through JSON so nested reports become plain dicts and lists.
fn to_py<'py, T: serde::Serialize>(py: Python<'py>, kind: &str, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = io::to_json(kind, value).map_err(err)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn family(name: &str, params: Vec<usize>) -> PyResult<Family> {
    Family::new(name, &params).map_err(err)
}

#[pyclass(name = "Algebra", module = "solvcurv", frozen)]
struct PyAlgebra {
    inner: MetricSolvLieAlgebra,
}

fn wrap(inner: MetricSolvLieAlgebra) -> PyAlgebra {
    PyAlgebra { inner }
}

#[pymethods]
impl PyAlgebra {
    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn dim_a(&self) -> usize {
        self.inner.dim_a()
    }

    #[getter]
    fn dim_n(&self) -> usize {
        self.inner.dim_n()
    }

    #[getter]
    fn flags(&self) -> Vec<String> {
        self.inner.current_flags()
    }

    /// Nonzero `(i, j, k, c)` with `i < j`.
    fn structure(&self) -> Vec<(usize, usize, usize, f64)> {
        self.inner.structure().triples()
    }

    /// `preset` is `none`, `canonical` or `wb:<a>`; `flags` a list of labels.
    #[pyo3(signature = (preset=None, flags=None))]
    fn associate(&self, preset: Option<&str>, flags: Option<Vec<String>>) -> PyResult<PyAlgebra> {
        let spec = match (preset, flags) {
            (Some(_), Some(_)) => return Err(SolvcurvError::new_err("ParamError: give preset or flags, not both")),
            (Some(p), None) => FlagSpec::Preset(FlagChoice::parse(p).map_err(err)?),
            (None, Some(l)) => FlagSpec::Labels(l),
            (None, None) => return Err(SolvcurvError::new_err("ParamError: give preset or flags")),
        };
        let assignment = spec.resolve(&self.inner).map_err(err)?;
        solvcurv::associate(&self.inner, &assignment).map(wrap).map_err(err)
    }

    /// `z` lists the coefficients over the simple roots.
    fn attach(&self, z: Vec<u32>) -> PyResult<PyAlgebra> {
        let z = CharacteristicElement::new(z).map_err(err)?;
        solvcurv::attach(&self.inner, &z).map(wrap).map_err(err)
    }

    fn ricci(&self) -> Vec<Vec<f64>> {
        let r = curvature::ricci_full(&self.inner);
        (0..r.nrows()).map(|i| r.row(i).iter().copied().collect()).collect()
    }

    /// Returns `(constant, deviation, passed)`.
    #[pyo3(signature = (tol=1e-9))]
    fn einstein_check(&self, tol: f64) -> (f64, f64, bool) {
        let e = curvature::einstein_check(&self.inner, tol);
        (e.constant, e.deviation, e.pass)
    }

    /// Sectional curvature of a plane given as `"U27+U28,U37+U38"`.
    fn sectional(&self, plane: &str) -> PyResult<f64> {
        let (x, y) = curvature::parse_plane(&self.inner, plane).map_err(err)?;
        curvature::sectional(&self.inner, &x, &y).map_err(err)
    }

    /// Sectional curvature of two coordinate vectors.
    fn sectional_vectors(&self, x: Vec<f64>, y: Vec<f64>) -> PyResult<f64> {
        if x.len() != self.inner.dim() || y.len() != self.inner.dim() {
            return Err(SolvcurvError::new_err(format!("DimensionError: vectors must have length {}", self.inner.dim())));
        }
        curvature::sectional(&self.inner, &x, &y).map_err(err)
    }

    /// Largest sectional curvature over `samples` seeded random planes in n.
    #[pyo3(signature = (samples=1000, seed=0))]
    fn max_random_sectional(&self, samples: usize, seed: u64) -> f64 {
        curvature::find_positive_plane(&self.inner, PlaneStrategy::Random { samples, seed }).max_k
    }

    fn fingerprint<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, "fingerprint", &curvature::fingerprint(&self.inner))
    }

    #[pyo3(signature = (tol=1e-9, seed=0, samples=64))]
    fn report<'py>(&self, py: Python<'py>, tol: f64, seed: u64, samples: usize) -> PyResult<Bound<'py, PyAny>> {
        let r = curvature::curvature_report(&self.inner, ReportOptions { tol, seed, samples }).map_err(err)?;
        to_py(py, "curvature_report", &r)
    }

    fn to_json(&self) -> PyResult<String> {
        io::algebra_to_json(&self.inner).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<PyAlgebra> {
        io::algebra_from_json(text).map(wrap).map_err(err)
    }

    fn __repr__(&self) -> String {
        let name = self.inner.family().map(|f| f.to_string()).unwrap_or_else(|| "input".into());
        format!("Algebra({name}, dim_a={}, dim_n={})", self.inner.dim_a(), self.inner.dim_n())
    }
}

/// The symmetric solvable algebra, e.g. `build("orthogonal", [3, 5])`.
#[pyfunction]
fn build(name: &str, params: Vec<usize>) -> PyResult<PyAlgebra> {
    let (s, _) = solvcurv::build_symmetric(family(name, params)?).map_err(err)?;
    Ok(wrap(s))
}

#[pyfunction]
#[pyo3(signature = (name, params, z=None))]
fn root_system<'py>(py: Python<'py>, name: &str, params: Vec<usize>, z: Option<Vec<u32>>) -> PyResult<Bound<'py, PyAny>> {
    let rs = RootSystem::new(family(name, params)?).map_err(err)?;
    let z = z.map(CharacteristicElement::new).transpose().map_err(err)?;
    to_py(py, "root_system", &io::root_system_doc(&rs, z.as_ref()).map_err(err)?)
}

/// One row per support of Z and association preset.
#[pyfunction]
#[pyo3(signature = (name, params, tol=1e-9))]
fn sweep<'py>(py: Python<'py>, name: &str, params: Vec<usize>, tol: f64) -> PyResult<Bound<'py, PyAny>> {
    let rows = pipeline::sweep(family(name, params)?, None, tol).map_err(err)?;
    to_py(py, "sweep", &rows)?.get_item("value")
}

/// `(number of associated spaces, number of attached ones)`.
#[pyfunction]
fn count_constructions(name: &str, params: Vec<usize>) -> PyResult<(usize, usize)> {
    Ok(solvcurv::count_constructions(family(name, params)?))
}

#[pymodule]
fn _solvcurv(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_function(wrap_pyfunction!(build, m)?)?;
    m.add_function(wrap_pyfunction!(root_system, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(count_constructions, m)?)?;
    m.add("SolvcurvError", m.py().get_type::<SolvcurvError>())?;
    m.add("SCHEMA", io::SCHEMA)?;
    Ok(())
}
