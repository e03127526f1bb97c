//! Python bindings.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use ::schubert_a2::alcove::AffineElement as Element;
use ::schubert_a2::{bruhat, kumar, loci, qstat, Error};

create_exception!(schubert_a2, PreconditionError, PyException);

fn err(e: Error) -> PyErr {
    if e.is_parse() {
        PyValueError::new_err(e.to_string())
    } else {
        PreconditionError::new_err(e.to_string())
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// An element of the affine Weyl group, given by a word over {0, 1, 2}.
#[pyclass(name = "AffineElement", module = "schubert_a2", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct PyElement(Element);

/// Accepts an AffineElement or a word string.
fn el(obj: &Bound<'_, PyAny>) -> PyResult<Element> {
    if let Ok(e) = obj.cast::<PyElement>() {
        return Ok(e.get().0);
    }
    let s: String = obj.extract()?;
    Element::parse(&s).map_err(err)
}

fn wrap(xs: impl IntoIterator<Item = Element>) -> Vec<PyElement> {
    xs.into_iter().map(PyElement).collect()
}

#[pymethods]
impl PyElement {
    #[new]
    #[pyo3(signature = (word = ""))]
    fn new(word: &str) -> PyResult<Self> {
        Element::parse(word).map(PyElement).map_err(err)
    }

    #[getter]
    fn word(&self) -> String {
        self.0.word_string()
    }

    #[getter]
    fn length(&self) -> usize {
        self.0.length()
    }

    fn is_spiral(&self) -> bool {
        self.0.is_spiral()
    }

    fn is_twisted_spiral(&self) -> bool {
        self.0.is_twisted_spiral()
    }

    /// Number of simple reflections s with w < ws.
    fn type_of(&self) -> PyResult<u8> {
        self.0.type_of().map_err(err)
    }

    /// Roman numeral of the chamber, or None for spirals.
    fn chamber(&self) -> Option<String> {
        self.0.chamber().map(|c| c.to_string())
    }

    /// (l1, l2; finite part).
    fn canonical(&self) -> String {
        self.0.canonical_string()
    }

    fn compose(&self, other: &Bound<'_, PyAny>) -> PyResult<PyElement> {
        Ok(PyElement(self.0.compose(&el(other)?)))
    }

    fn inverse(&self) -> PyElement {
        PyElement(self.0.inverse())
    }

    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<PyElement> {
        self.compose(other)
    }

    /// Bruhat order self <= w.
    fn leq(&self, w: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(bruhat::leq(&self.0, &el(w)?))
    }

    fn __len__(&self) -> usize {
        self.0.length()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("AffineElement('{}')", self.0.word_string())
    }
}

/// The hexagon of a non-spiral element.
#[pyclass(name = "Hexagon", module = "schubert_a2", frozen)]
struct PyHexagon(bruhat::Hexagon);

#[pymethods]
impl PyHexagon {
    #[new]
    fn new(w: &Bound<'_, PyAny>) -> PyResult<Self> {
        bruhat::Hexagon::new(&el(w)?).map(PyHexagon).map_err(err)
    }

    #[getter]
    fn owner(&self) -> PyElement {
        PyElement(self.0.owner)
    }

    #[getter]
    fn vertices(&self) -> Vec<PyElement> {
        wrap(self.0.vertices)
    }

    #[getter]
    fn chamber(&self) -> String {
        self.0.chamber.to_string()
    }

    /// Alcoves on the edge from vertex i to vertex i+1.
    fn edge(&self, i: usize) -> Vec<PyElement> {
        wrap(self.0.edge(i % 6))
    }

    fn shell_index(&self, x: &Bound<'_, PyAny>) -> PyResult<usize> {
        self.0.shell_index(&el(x)?).map_err(err)
    }

    fn __contains__(&self, x: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(self.0.contains(&el(x)?))
    }

    fn interval(&self) -> Vec<PyElement> {
        wrap(self.0.interval())
    }

    fn to_json(&self) -> String {
        to_json(&self.0)
    }
}

#[pyfunction]
fn leq(x: &Bound<'_, PyAny>, w: &Bound<'_, PyAny>) -> PyResult<bool> {
    Ok(bruhat::leq(&el(x)?, &el(w)?))
}

/// Lower interval of w, by length then word.
#[pyfunction]
fn interval(w: &Bound<'_, PyAny>) -> PyResult<Vec<PyElement>> {
    let mut xs = bruhat::interval(&el(w)?);
    xs.sort_by_cached_key(|x| (x.length(), x.word()));
    Ok(wrap(xs))
}

/// The q statistic by reflection counting.
#[pyfunction]
fn q(w: &Bound<'_, PyAny>, x: &Bound<'_, PyAny>) -> PyResult<u32> {
    qstat::q_brute(&el(w)?, &el(x)?).map_err(err)
}

/// The q statistic from shells and base cases; non-spiral w only.
#[pyfunction]
fn q_structured(w: &Bound<'_, PyAny>, x: &Bound<'_, PyAny>) -> PyResult<u32> {
    qstat::q_structured(&el(w)?, &el(x)?).map_err(err)
}

/// {x: q} over the lower interval.
#[pyfunction]
fn q_table(w: &Bound<'_, PyAny>) -> PyResult<Vec<(String, u32)>> {
    let mut rows: Vec<(String, u32)> =
        qstat::QTable::best(&el(w)?).entries.iter().map(|e| (e.x.word_string(), e.q)).collect();
    rows.sort();
    Ok(rows)
}

#[pyfunction]
fn nrs(w: &Bound<'_, PyAny>) -> PyResult<Vec<PyElement>> {
    let mut xs: Vec<Element> = qstat::nrs_set(&el(w)?).into_iter().collect();
    xs.sort_by_cached_key(|x| (x.length(), x.word()));
    Ok(wrap(xs))
}

#[pyfunction]
fn maximal_nrs(w: &Bound<'_, PyAny>) -> PyResult<Vec<PyElement>> {
    Ok(wrap(qstat::maximal_nrs(&el(w)?)))
}

#[pyfunction]
fn is_rationally_smooth(w: &Bound<'_, PyAny>) -> PyResult<bool> {
    Ok(qstat::is_rationally_smooth(&el(w)?))
}

#[pyfunction]
fn smooth_points(w: &Bound<'_, PyAny>) -> PyResult<Vec<PyElement>> {
    Ok(wrap(loci::smooth_points(&el(w)?)))
}

#[pyfunction]
fn maximal_singular(w: &Bound<'_, PyAny>) -> PyResult<Vec<PyElement>> {
    Ok(wrap(loci::maximal_singular(&el(w)?)))
}

#[pyfunction]
fn singular_codim(w: &Bound<'_, PyAny>) -> PyResult<Option<usize>> {
    Ok(loci::singular_codim(&el(w)?))
}

/// "smooth", "rationally-smooth-only" or "singular".
#[pyfunction]
fn classify(w: &Bound<'_, PyAny>) -> PyResult<String> {
    let c = loci::classify_schubert(&el(w)?);
    Ok(serde_json::to_value(c).expect("classification").as_str().unwrap_or_default().to_string())
}

/// The locus report as a JSON string.
#[pyfunction]
fn locus_report(w: &Bound<'_, PyAny>) -> PyResult<String> {
    Ok(to_json(&loci::locus_report(&el(w)?)))
}

/// Smooth varieties as (length, pattern, count, members).
#[pyfunction]
fn enumerate_smooth() -> Vec<(usize, String, usize, Vec<String>)> {
    loci::enumerate_smooth_varieties().into_iter().map(|r| (r.length, r.pattern, r.count, r.members)).collect()
}

/// Equivariant multiplicity at x, in display form.
#[pyfunction]
fn multiplicity(w: &Bound<'_, PyAny>, x: &Bound<'_, PyAny>) -> PyResult<String> {
    kumar::multiplicity(&el(w)?, &el(x)?).map(|m| m.to_string()).map_err(err)
}

#[pyfunction]
fn kumar_smooth(w: &Bound<'_, PyAny>, x: &Bound<'_, PyAny>) -> PyResult<bool> {
    kumar::kumar_smooth(&el(w)?, &el(x)?).map_err(err)
}

#[pymodule]
fn schubert_a2(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyElement>()?;
    m.add_class::<PyHexagon>()?;
    m.add("PreconditionError", m.py().get_type::<PreconditionError>())?;
    m.add_function(wrap_pyfunction!(leq, m)?)?;
    m.add_function(wrap_pyfunction!(interval, m)?)?;
    m.add_function(wrap_pyfunction!(q, m)?)?;
    m.add_function(wrap_pyfunction!(q_structured, m)?)?;
    m.add_function(wrap_pyfunction!(q_table, m)?)?;
    m.add_function(wrap_pyfunction!(nrs, m)?)?;
    m.add_function(wrap_pyfunction!(maximal_nrs, m)?)?;
    m.add_function(wrap_pyfunction!(is_rationally_smooth, m)?)?;
    m.add_function(wrap_pyfunction!(smooth_points, m)?)?;
    m.add_function(wrap_pyfunction!(maximal_singular, m)?)?;
    m.add_function(wrap_pyfunction!(singular_codim, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(locus_report, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_smooth, m)?)?;
    m.add_function(wrap_pyfunction!(multiplicity, m)?)?;
    m.add_function(wrap_pyfunction!(kumar_smooth, m)?)?;
    Ok(())
}
