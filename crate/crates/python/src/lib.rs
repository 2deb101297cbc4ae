//! Python module `kgq`: graphs, inference, rule tooling and intervals.

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

use kgq_core::io::ndjson::{decode_statement, encode_statement};
use kgq_core::io::{emit_sort_triples, ingest_turtle, read_ndjson, write_ndjson};
use kgq_core::rule_dsl::{check_rules as check, compile_rule, parse_rules, print_rules, Signature};
use kgq_core::rules_corpus::builtin_names;
use kgq_core::sort_builder::{decode_sort, encode_sort, Category, CategoryMap};
use kgq_core::{
    fixpoint, load_builtin_rules, Algebra, EngineConfig, Instant, KnowledgeGraph, Selector,
    TimeInterval,
};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn diagnostics(ds: &[kgq_core::rule_dsl::Diagnostic]) -> PyErr {
    PyValueError::new_err(
        ds.iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join("\n"),
    )
}

/// A set of qualified statements.
#[pyclass(name = "Graph", module = "kgq", skip_from_py_object)]
#[derive(Clone, Default)]
struct PyGraph {
    inner: KnowledgeGraph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new() -> Self {
        Self::default()
    }

    /// Parses the Turtle statement pattern. Returns the graph and the
    /// skipped-item diagnostics.
    #[staticmethod]
    fn from_turtle(text: &str) -> PyResult<(PyGraph, Vec<String>)> {
        let (g, report) =
            ingest_turtle(text, "<string>", &CategoryMap::default()).map_err(value_err)?;
        Ok((PyGraph { inner: g }, report.diagnostics))
    }

    #[staticmethod]
    fn from_ndjson(text: &str) -> PyResult<PyGraph> {
        Ok(PyGraph {
            inner: read_ndjson(text, "<string>").map_err(value_err)?,
        })
    }

    /// Reads a `.ttl` or `.ndjson` file.
    #[staticmethod]
    fn load(path: &str) -> PyResult<PyGraph> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| PyIOError::new_err(format!("{path}: {e}")))?;
        if path.ends_with(".ndjson") || path.ends_with(".jsonl") {
            Self::from_ndjson(&text)
        } else {
            Ok(Self::from_turtle(&text)?.0)
        }
    }

    /// Adds one statement given as a JSON object; false when already present.
    fn add(&mut self, statement: &str) -> PyResult<bool> {
        let json: serde_json::Value = serde_json::from_str(statement).map_err(value_err)?;
        let s = decode_statement(&json).map_err(value_err)?;
        self.inner.insert(s).map_err(value_err)
    }

    /// Statements as JSON lines, sorted.
    fn statements(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .inner
            .iter()
            .map(|s| encode_statement(s).to_string())
            .collect();
        v.sort();
        v
    }

    fn to_ndjson(&self) -> String {
        write_ndjson(&self.inner)
    }

    fn sort_triples(&self) -> String {
        emit_sort_triples(&self.inner)
    }

    /// Saturates under `rules` (DSL text) and/or the shipped rules named in
    /// `builtin` (`["all"]` for every one). Returns the output graph and the
    /// run report as JSON.
    #[pyo3(signature = (rules=None, builtin=None, max_rounds=100, threads=0))]
    fn infer(
        &self,
        rules: Option<&str>,
        builtin: Option<Vec<String>>,
        max_rounds: usize,
        threads: usize,
    ) -> PyResult<(PyGraph, String)> {
        let mut all = match rules {
            Some(text) => parse_rules(text).map_err(|d| diagnostics(&d))?,
            None => Vec::new(),
        };
        if let Some(names) = builtin {
            let sel = if names.iter().any(|n| n == "all") {
                Selector::All
            } else {
                Selector::names(names)
            };
            all.extend(load_builtin_rules(&sel).map_err(value_err)?);
        }
        let diags = check(&all, &Signature::default());
        if !diags.is_empty() {
            return Err(diagnostics(&diags));
        }
        let cfg = EngineConfig {
            max_rounds,
            threads,
            ..EngineConfig::default()
        };
        cfg.validate().map_err(value_err)?;
        let (out, report) = fixpoint(&self.inner, &all, Algebra::default(), cfg);
        Ok((PyGraph { inner: out }, report.to_json().to_string()))
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __eq__(&self, other: &PyGraph) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Graph({} statements)", self.inner.len())
    }
}

/// A closed time interval; `None` endpoints are unbounded.
#[pyclass(name = "Interval", module = "kgq", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyInterval {
    inner: TimeInterval,
}

fn instant(text: Option<&str>) -> PyResult<Instant> {
    text.map_or(Ok(Instant::Undefined), |t| {
        Instant::parse(t).map_err(value_err)
    })
}

#[pymethods]
impl PyInterval {
    #[new]
    #[pyo3(signature = (start=None, end=None))]
    fn new(start: Option<&str>, end: Option<&str>) -> PyResult<Self> {
        Ok(PyInterval {
            inner: TimeInterval::new(instant(start)?, instant(end)?).map_err(value_err)?,
        })
    }

    #[getter]
    fn start(&self) -> Option<String> {
        self.inner.start_time().to_xsd()
    }

    #[getter]
    fn end(&self) -> Option<String> {
        self.inner.end_time().to_xsd()
    }

    #[getter]
    fn is_empty(&self) -> bool {
        self.inner.is_bottom()
    }

    fn contains(&self, at: &str) -> PyResult<bool> {
        self.inner.contains(instant(Some(at))?).map_err(value_err)
    }

    fn disjoint(&self, other: &PyInterval) -> bool {
        self.inner.disjoint(&other.inner)
    }

    fn inter(&self, other: &PyInterval) -> PyInterval {
        PyInterval {
            inner: self.inner.inter(&other.inner),
        }
    }

    /// The hull when the two meet, the unbounded interval otherwise.
    fn union(&self, other: &PyInterval) -> PyInterval {
        PyInterval {
            inner: self.inner.union(&other.inner),
        }
    }

    fn __repr__(&self) -> String {
        if self.inner.is_bottom() {
            return "Interval(empty)".into();
        }
        let show = |i: Option<String>| i.unwrap_or_else(|| "undefined".into());
        format!("Interval({}, {})", show(self.start()), show(self.end()))
    }
}

/// Diagnostics for a rule file, empty when it is clean.
#[pyfunction]
fn check_rules(text: &str) -> Vec<String> {
    match parse_rules(text) {
        Err(ds) => ds.iter().map(|d| d.to_string()).collect(),
        Ok(rules) => check(&rules, &Signature::default())
            .iter()
            .map(|d| d.to_string())
            .collect(),
    }
}

/// `(rule name, SPARQL query)` for each rule in the text.
#[pyfunction]
fn compile_rules(text: &str) -> PyResult<Vec<(String, String)>> {
    let rules = parse_rules(text).map_err(|d| diagnostics(&d))?;
    let diags = check(&rules, &Signature::default());
    if !diags.is_empty() {
        return Err(diagnostics(&diags));
    }
    rules
        .iter()
        .map(|r| Ok((r.name.clone(), compile_rule(r).map_err(value_err)?)))
        .collect()
}

/// Rules in canonical layout.
#[pyfunction]
fn format_rules(text: &str) -> PyResult<String> {
    Ok(print_rules(
        &parse_rules(text).map_err(|d| diagnostics(&d))?,
    ))
}

#[pyfunction]
fn builtin_rules() -> Vec<&'static str> {
    builtin_names().collect()
}

/// Canonical JSON of a sort value (`validity`, `causality`, `sequence`,
/// `annotation`, `provenance`).
#[pyfunction]
fn canonical_sort(category: &str, json: &str) -> PyResult<String> {
    let cat =
        Category::parse(category).ok_or_else(|| value_err(format!("unknown sort `{category}`")))?;
    Ok(encode_sort(&decode_sort(cat, json).map_err(value_err)?))
}

#[pymodule]
fn kgq(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyInterval>()?;
    m.add_function(wrap_pyfunction!(check_rules, m)?)?;
    m.add_function(wrap_pyfunction!(compile_rules, m)?)?;
    m.add_function(wrap_pyfunction!(format_rules, m)?)?;
    m.add_function(wrap_pyfunction!(builtin_rules, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_sort, m)?)?;
    Ok(())
}
