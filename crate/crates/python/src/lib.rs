//! Python bindings. Elements cross the boundary in their text form,
//! `layer:g` or `layer:d:g`.

use std::cmp::Ordering;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use layerlat::chain::laws::{check_laws, LawConfig};
use layerlat::decompose::roundtrip_table;
use layerlat::densify::{densify, fill_gap};
use layerlat::oracle::{check_flea_axioms, enumerate_finite_chains_with_bound, DEFAULT_BOUND};
use layerlat::standardize::{cantor_map, SupExtension};
use layerlat::{fixtures, CayleyTable};

fn err(e: layerlat::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// `(case, inserted layer, x, y, witness)`.
type TraceRow = (String, String, String, String, String);

#[pyclass(name = "Bunch", module = "layerlat_py", frozen)]
struct PyBunch {
    inner: layerlat::Bunch,
}

#[pymethods]
impl PyBunch {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyBunch { inner: layerlat::Bunch::parse(text).map_err(err)? })
    }

    /// One of `s3`, `zb`, `ze`, `lz`, `lz2`.
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        fixtures::by_name(name)
            .map(|inner| PyBunch { inner })
            .ok_or_else(|| PyValueError::new_err(format!("no fixture named `{name}`")))
    }

    fn serialize(&self) -> String {
        self.inner.serialize()
    }

    /// `(ok, report)`.
    fn validate(&self) -> (bool, String) {
        let r = self.inner.validate();
        (r.is_ok(), r.to_string())
    }

    fn bunch_type(&self) -> String {
        self.inner.bunch_type().to_string()
    }

    fn layers(&self) -> Vec<(String, String)> {
        self.inner.layers().iter().map(|l| (l.name.clone(), l.class.code().to_string())).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        let names: Vec<&str> = self.inner.layers().iter().map(|l| l.name.as_str()).collect();
        format!("Bunch([{}])", names.join(", "))
    }
}

#[pyclass(name = "Chain", module = "layerlat_py", frozen)]
struct PyChain {
    inner: layerlat::Chain,
}

impl PyChain {
    fn el(&self, text: &str) -> PyResult<layerlat::ChainElement> {
        self.inner.parse_element(text).map_err(err)
    }

    fn show(&self, x: &layerlat::ChainElement) -> String {
        self.inner.format_element(x)
    }
}

#[pymethods]
impl PyChain {
    #[new]
    fn new(bunch: &PyBunch) -> PyResult<Self> {
        Ok(PyChain { inner: layerlat::Chain::new(bunch.inner.clone()).map_err(err)? })
    }

    fn bunch(&self) -> PyBunch {
        PyBunch { inner: self.inner.bunch().clone() }
    }

    fn mul(&self, x: &str, y: &str) -> PyResult<String> {
        Ok(self.show(&self.inner.mul(&self.el(x)?, &self.el(y)?)))
    }

    fn neg(&self, x: &str) -> PyResult<String> {
        Ok(self.show(&self.inner.try_negate(&self.el(x)?).map_err(err)?))
    }

    fn res(&self, x: &str, y: &str) -> PyResult<String> {
        Ok(self.show(&self.inner.residuum(&self.el(x)?, &self.el(y)?)))
    }

    /// -1, 0 or 1.
    fn compare(&self, x: &str, y: &str) -> PyResult<i8> {
        Ok(match self.inner.compare(&self.el(x)?, &self.el(y)?) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        })
    }

    fn unit(&self) -> String {
        self.show(&self.inner.unit())
    }

    fn falsum(&self) -> String {
        self.show(&self.inner.falsum())
    }

    /// `(top, bottom)`, or `None` when unbounded.
    fn bounds(&self) -> Option<(String, String)> {
        self.inner.bounds().map(|b| (self.show(&b.top), self.show(&b.bottom)))
    }

    fn is_finite(&self) -> bool {
        self.inner.is_finite()
    }

    /// The first `n` elements in enumeration order.
    fn elements(&self, n: usize) -> Vec<String> {
        self.inner.elements().take(n).map(|x| self.show(&x)).collect()
    }

    /// The Cayley table CSV of a finite chain.
    fn table_csv(&self) -> PyResult<String> {
        Ok(self.inner.cayley_table().map_err(err)?.0.to_csv())
    }

    /// `(triples_checked, failures)`.
    #[pyo3(signature = (triples = 10_000, seed = 0))]
    fn check_laws(&self, py: Python<'_>, triples: usize, seed: u64) -> (usize, usize) {
        let config = LawConfig { triples, seed, ..LawConfig::default() };
        let r = py.detach(|| check_laws(&self.inner, &config));
        (r.triples, r.failed)
    }

    /// `(case, witness, extended chain)`.
    fn fill_gap(&self, x: &str, y: &str) -> PyResult<(String, String, PyChain)> {
        let fill = fill_gap(&self.inner, &self.el(x)?, &self.el(y)?).map_err(err)?;
        let ext = layerlat::Chain::new(fill.receipt.bunch).map_err(err)?;
        Ok((fill.case.tag().to_string(), ext.format_element(&fill.witness), PyChain { inner: ext }))
    }

    /// The extended chain and one row per insertion.
    #[pyo3(signature = (prefix, rounds = 1))]
    fn densify(&self, prefix: usize, rounds: usize) -> PyResult<(PyChain, Vec<TraceRow>)> {
        let d = densify(&self.inner, prefix, rounds).map_err(err)?;
        let trace = d
            .trace
            .into_iter()
            .map(|t| (t.case.tag().to_string(), t.inserted_layer, t.x, t.y, t.witness))
            .collect();
        Ok((PyChain { inner: layerlat::Chain::new(d.bunch).map_err(err)? }, trace))
    }

    /// `[(element, numerator, denominator)]` in increasing order.
    #[pyo3(signature = (prefix, depth = 0))]
    fn standardize(&self, prefix: usize, depth: usize) -> PyResult<Vec<(String, String, String)>> {
        let base = cantor_map(&self.inner, prefix).map_err(err)?;
        let placement = if depth == 0 { base } else { SupExtension::new(&self.inner, &base, depth).placement().clone() };
        Ok(placement.pairs().iter().map(|(x, q)| (self.show(x), q.numer().to_string(), q.denom().to_string())).collect())
    }

    fn __repr__(&self) -> String {
        format!("Chain({}, {})", self.inner.bunch_type(), PyBunch { inner: self.inner.bunch().clone() }.__repr__())
    }
}

/// Cayley table CSVs of every involutive chain on `n` elements.
#[pyfunction]
#[pyo3(signature = (n, bound = DEFAULT_BOUND))]
fn enumerate_chains(py: Python<'_>, n: usize, bound: usize) -> PyResult<Vec<String>> {
    let tables = py.detach(|| enumerate_finite_chains_with_bound(n, bound)).map_err(err)?;
    Ok(tables.iter().map(CayleyTable::to_csv).collect())
}

/// Decompose a table CSV into a bunch, checking the round trip.
#[pyfunction]
fn decompose(csv: &str) -> PyResult<PyBunch> {
    let t = CayleyTable::parse_csv(csv).map_err(err)?;
    Ok(PyBunch { inner: roundtrip_table(&t).map_err(err)?.decomposition.bunch })
}

/// Whether a table CSV satisfies every axiom.
#[pyfunction]
fn satisfies_axioms(csv: &str) -> PyResult<bool> {
    Ok(check_flea_axioms(&CayleyTable::parse_csv(csv).map_err(err)?).is_ok())
}

#[pymodule]
fn layerlat_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBunch>()?;
    m.add_class::<PyChain>()?;
    m.add_function(wrap_pyfunction!(enumerate_chains, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(satisfies_axioms, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
