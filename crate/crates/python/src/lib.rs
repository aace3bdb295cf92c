//! Python bindings: structures, models, and check reports.

use linespace::format::{self, report_value};
use linespace::labeling::{self, Kind};
use linespace::models::{self, NegativeKind};
use linespace::theorems::{self, Budget};
use linespace::{axioms, sigma, CheckReport, Error, IncidenceStructure, LineId, LineSet, Seed};
use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::IndexOutOfRange { .. } => PyIndexError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn ids(v: &[usize]) -> LineSet {
    LineSet::from_indices(v.iter().copied())
}

/// Result of one axiom, theorem or alignment check.
#[pyclass(name = "Report", frozen, module = "linespace")]
struct PyReport {
    #[pyo3(get)]
    check_name: String,
    #[pyo3(get)]
    passed: bool,
    #[pyo3(get)]
    outcome: String,
    #[pyo3(get)]
    cases_examined: u64,
    /// The report serialized as JSON, lines named by label.
    #[pyo3(get)]
    json: String,
    counterexample: Option<String>,
}

impl PyReport {
    fn new(s: &IncidenceStructure, r: &CheckReport) -> Self {
        let v = report_value(s, r);
        PyReport {
            check_name: r.check_name.clone(),
            passed: r.passed(),
            outcome: v["outcome"].as_str().unwrap_or_default().to_string(),
            cases_examined: r.stats.cases_examined,
            json: v.to_string(),
            counterexample: r
                .counterexample
                .as_ref()
                .map(|w| format!("{}: {}", w.tag, w.description)),
        }
    }

    fn many(s: &IncidenceStructure, rs: &[CheckReport]) -> Vec<Self> {
        rs.iter().map(|r| Self::new(s, r)).collect()
    }
}

#[pymethods]
impl PyReport {
    /// Tag and description of the counterexample, if any.
    #[getter]
    fn counterexample(&self) -> Option<String> {
        self.counterexample.clone()
    }

    fn __repr__(&self) -> String {
        format!("Report({:?}, {})", self.check_name, self.outcome)
    }
}

/// A finite set of lines with a reflexive, symmetric incidence relation.
#[pyclass(name = "Structure", frozen, skip_from_py_object, module = "linespace")]
#[derive(Clone)]
struct PyStructure {
    inner: IncidenceStructure,
}

#[pymethods]
impl PyStructure {
    #[new]
    fn new(name: String, labels: Vec<String>, skew_pairs: Vec<(usize, usize)>) -> PyResult<Self> {
        IncidenceStructure::from_skew_pairs(name, labels, &skew_pairs)
            .map(|inner| PyStructure { inner })
            .map_err(to_py)
    }

    #[staticmethod]
    fn tetrahedron() -> Self {
        PyStructure {
            inner: models::gen_tetrahedron(),
        }
    }

    /// PG(3,q) for a supported prime q.
    #[staticmethod]
    fn pg3(q: u32) -> PyResult<Self> {
        let (inner, _) = models::gen_pg3(q).map_err(to_py)?;
        Ok(PyStructure { inner })
    }

    /// One of the axiom-breaking fixtures, by name.
    #[staticmethod]
    fn negative(kind: &str) -> PyResult<Self> {
        let kind: NegativeKind = kind.parse().map_err(to_py)?;
        Ok(PyStructure {
            inner: models::gen_negative(kind),
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        format::parse_structure(text, linespace::incidence::DEFAULT_MAX_LINES)
            .map(|inner| PyStructure { inner })
            .map_err(to_py)
    }

    fn to_json(&self) -> String {
        format::serialize_structure(&self.inner)
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.line_count()
    }

    fn is_incident(&self, a: usize, b: usize) -> PyResult<bool> {
        self.inner.is_incident(LineId(a), LineId(b)).map_err(to_py)
    }

    fn skew_pairs(&self) -> Vec<(usize, usize)> {
        self.inner.skew_pairs().map(|(a, b)| (a.0, b.0)).collect()
    }

    /// Lines incident to every given line.
    fn perp(&self, lines: Vec<usize>) -> PyResult<Vec<usize>> {
        Ok(self.inner.perp(&ids(&lines)).map_err(to_py)?.indices())
    }

    fn bracket(&self, lines: Vec<usize>) -> PyResult<Vec<usize>> {
        let lines: Vec<LineId> = lines.into_iter().map(LineId).collect();
        Ok(self.inner.bracket(&lines).map_err(to_py)?.indices())
    }

    fn sigma(&self, a: usize, b: usize) -> PyResult<Vec<usize>> {
        Ok(sigma::sigma(&self.inner, LineId(a), LineId(b))
            .map_err(to_py)?
            .indices())
    }

    /// The two incidence classes of sigma(a, b).
    fn sigma_classes(&self, a: usize, b: usize) -> PyResult<(Vec<usize>, Vec<usize>)> {
        let p = sigma::sigma_partition(&self.inner, LineId(a), LineId(b)).map_err(to_py)?;
        Ok((p.class_0.indices(), p.class_1.indices()))
    }

    fn is_triad(&self, a: usize, b: usize, c: usize) -> PyResult<bool> {
        sigma::is_triad(&self.inner, LineId(a), LineId(b), LineId(c)).map_err(to_py)
    }

    fn secondary_elements(&self) -> Vec<Vec<usize>> {
        labeling::enumerate_secondary_elements(&self.inner)
            .iter()
            .map(LineSet::indices)
            .collect()
    }

    fn check_axioms(&self) -> Vec<PyReport> {
        PyReport::many(&self.inner, &axioms::check_all(&self.inner))
    }

    /// Theorem verifiers; without a model, those needing one report an
    /// unmet dependency.
    #[pyo3(signature = (model=None))]
    fn check_theorems(&self, model: Option<&PyModel>) -> Vec<PyReport> {
        let m = model.map(|m| &m.inner);
        PyReport::many(
            &self.inner,
            &theorems::run_all(&self.inner, m, &Budget::default()),
        )
    }

    /// Labels secondary elements; `seed` is `(i, j, class_of)`.
    #[pyo3(signature = (seed=None))]
    fn derive(&self, seed: Option<(usize, usize, usize)>) -> PyResult<PyModel> {
        let seed = seed.map(|(i, j, k)| Seed {
            pair: (LineId(i), LineId(j)),
            class_of: k,
        });
        labeling::coordinate_labels(&self.inner, seed)
            .map(|inner| PyModel { inner })
            .map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!(
            "Structure({:?}, {} lines)",
            self.inner.name(),
            self.inner.line_count()
        )
    }
}

/// A structure with its secondary elements named points and planes.
#[pyclass(name = "Model", frozen, module = "linespace")]
struct PyModel {
    inner: labeling::GeometryModel,
}

#[pymethods]
impl PyModel {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        format::parse_model(text, linespace::incidence::DEFAULT_MAX_LINES)
            .map(|inner| PyModel { inner })
            .map_err(to_py)
    }

    fn to_json(&self) -> String {
        format::serialize_model(&self.inner)
    }

    #[getter]
    fn structure(&self) -> PyStructure {
        PyStructure {
            inner: self.inner.structure().clone(),
        }
    }

    #[getter]
    fn points(&self) -> Vec<Vec<usize>> {
        self.inner.points().iter().map(LineSet::indices).collect()
    }

    #[getter]
    fn planes(&self) -> Vec<Vec<usize>> {
        self.inner.planes().iter().map(LineSet::indices).collect()
    }

    /// "point", "plane", or None for a set that is neither.
    fn kind_of(&self, lines: Vec<usize>) -> Option<&'static str> {
        self.inner.kind_of(&ids(&lines)).map(Kind::name)
    }

    /// Raises ValueError if the labeling is inconsistent.
    fn verify(&self) -> PyResult<()> {
        self.inner.verify().map_err(to_py)
    }

    fn dualize(&self) -> Self {
        PyModel {
            inner: labeling::dualize(&self.inner),
        }
    }

    fn meet_point(&self, a: usize, b: usize) -> PyResult<Vec<usize>> {
        Ok(labeling::meet_point(&self.inner, LineId(a), LineId(b))
            .map_err(to_py)?
            .lines
            .indices())
    }

    fn join_plane(&self, a: usize, b: usize) -> PyResult<Vec<usize>> {
        Ok(labeling::join_plane(&self.inner, LineId(a), LineId(b))
            .map_err(to_py)?
            .lines
            .indices())
    }

    /// The extension and alignment checks on this model.
    fn check_alignment(&self) -> Vec<PyReport> {
        let s = self.inner.structure();
        PyReport::many(s, &theorems::vy_axioms(s, &self.inner, &Budget::default()))
    }

    fn __repr__(&self) -> String {
        format!(
            "Model({} points, {} planes)",
            self.inner.points().len(),
            self.inner.planes().len()
        )
    }
}

#[pymodule]
#[pyo3(name = "linespace")]
fn linespace_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyStructure>()?;
    m.add_class::<PyModel>()?;
    m.add_class::<PyReport>()?;
    m.add("SUPPORTED_PRIMES", models::SUPPORTED_PRIMES.to_vec())?;
    Ok(())
}
