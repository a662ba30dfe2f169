//! Python bindings: thin wrappers returning plain Python values.

use std::collections::BTreeSet;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;

use cybrauer::brauer::{self, BrauerRelation, Budget, Diagonal, Polygon as CorePolygon};
use cybrauer::config::{ConfigSpace as CoreSpace, Strategy};
use cybrauer::dga;
use cybrauer::emit;
use cybrauer::truncpoly::{Approximation, NamedQuiver, StableObject, TruncPoly as CoreTruncPoly};
use cybrauer::Error;

fn err(e: Error) -> PyErr {
    match e {
        Error::SizeLimit(_) | Error::CapExceeded(_) => PyRuntimeError::new_err(format!("{}: {e}", e.code())),
        _ => PyValueError::new_err(format!("{}: {e}", e.code())),
    }
}

fn parse<T: std::str::FromStr<Err = Error>>(s: &str) -> PyResult<T> {
    s.parse().map_err(err)
}

fn to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn budget() -> Budget {
    Budget::from_env(2_000_000_000)
}

#[pyclass(frozen)]
struct Polygon {
    inner: CorePolygon,
}

#[pymethods]
impl Polygon {
    #[new]
    fn new(n: u32, d: u32) -> PyResult<Self> {
        Ok(Polygon { inner: CorePolygon::new(n, d).map_err(err)? })
    }

    #[getter]
    fn size(&self) -> u32 {
        self.inner.size
    }

    fn d_diagonals(&self) -> Vec<String> {
        self.inner.all_d_diagonals().iter().map(|x| x.to_string()).collect()
    }

    /// Every maximal relation, each as a list of "i-j" strings.
    fn enumerate(&self) -> PyResult<Vec<Vec<String>>> {
        let rels = brauer::enumerate_brauer(&self.inner, &budget()).map_err(err)?;
        Ok(rels.iter().map(|b| b.diagonals.iter().map(|x| x.to_string()).collect()).collect())
    }

    fn count(&self) -> PyResult<u64> {
        brauer::count_brauer(&self.inner, &budget()).map_err(err)
    }

    fn rotation_classes(&self) -> PyResult<Vec<Vec<String>>> {
        let rels = brauer::enumerate_brauer(&self.inner, &budget()).map_err(err)?;
        Ok(brauer::brauer_rotation_classes(&rels, &self.inner)
            .iter()
            .map(|c| c.iter().map(|b| b.to_string()).collect())
            .collect())
    }

    fn is_maximal(&self, relation: &str) -> PyResult<bool> {
        Ok(brauer::is_maximal_brauer(&parse(relation)?, &self.inner))
    }

    fn delta(&self, x: &str, y: &str) -> PyResult<u32> {
        brauer::delta(parse::<Diagonal>(x)?, parse(y)?, &self.inner).map_err(err)
    }

    /// B-cycles as [{"members": [...], "deltas": [...]}].
    fn b_cycles<'py>(&self, py: Python<'py>, relation: &str) -> PyResult<Bound<'py, PyAny>> {
        let b: BrauerRelation = parse(relation)?;
        to_py(py, &emit::cycles_json(&b, &self.inner).map_err(err)?)
    }

    fn theta(&self, vertices: Vec<u32>) -> PyResult<String> {
        let v: BTreeSet<u32> = vertices.into_iter().collect();
        Ok(brauer::theta_map(&v, &self.inner).map_err(err)?.to_string())
    }

    /// Graded quiver with relations as a dict.
    fn quiver<'py>(&self, py: Python<'py>, relation: &str) -> PyResult<Bound<'py, PyAny>> {
        let q = dga::build_quiver(&parse(relation)?, &self.inner).map_err(err)?;
        to_py(py, &emit::presentation_json(&dga::build_presentation(&q)))
    }

    fn quiver_dot(&self, relation: &str) -> PyResult<String> {
        let q = dga::build_quiver(&parse(relation)?, &self.inner).map_err(err)?;
        Ok(emit::to_dot("brauer", &emit::Drawing::from_graded(&q)))
    }

    fn __repr__(&self) -> String {
        format!("Polygon(n={}, d={}, size={})", self.inner.n, self.inner.d, self.inner.size)
    }
}

#[pyclass(frozen)]
struct ConfigSpace {
    inner: CoreSpace,
}

#[pymethods]
impl ConfigSpace {
    /// `diagram` is a code such as "A3" or "E6".
    #[new]
    fn new(diagram: &str, d: u32) -> PyResult<Self> {
        Ok(ConfigSpace { inner: CoreSpace::new(parse(diagram)?, d).map_err(err)? })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn vertices(&self) -> Vec<String> {
        self.inner.quotient.vertices.iter().map(|v| v.to_string()).collect()
    }

    #[pyo3(signature = (strategy = "hom"))]
    fn enumerate(&self, strategy: &str) -> PyResult<Vec<Vec<String>>> {
        let s = match strategy {
            "hom" => Strategy::HomTable,
            "geometric" => Strategy::Geometric,
            other => return Err(PyValueError::new_err(format!("unknown strategy {other}"))),
        };
        let confs = self.inner.enumerate(s, &budget()).map_err(err)?;
        Ok(confs.iter().map(|c| c.serialize_items()).collect())
    }

    /// `items` uses labels ("4-6,7-2") or vertices ("(0,1),(1,1)").
    fn is_configuration(&self, items: &str) -> PyResult<bool> {
        Ok(self.inner.is_configuration(&self.inner.parse_set(items).map_err(err)?))
    }

    fn h_bar(&self, x: &str, y: &str) -> PyResult<u64> {
        let xi = self.inner.parse_set(x).map_err(err)?;
        let yi = self.inner.parse_set(y).map_err(err)?;
        match (xi.as_slice(), yi.as_slice()) {
            ([a], [b]) => Ok(self.inner.hbar(*a, *b)),
            _ => Err(PyValueError::new_err("expected one vertex on each side")),
        }
    }
}

#[pyclass(frozen)]
struct TruncPoly {
    inner: CoreTruncPoly,
}

#[pymethods]
impl TruncPoly {
    #[new]
    fn new(n: u32, d: u32) -> PyResult<Self> {
        Ok(TruncPoly { inner: CoreTruncPoly::new(n, d).map_err(err)? })
    }

    #[getter]
    fn period(&self) -> i64 {
        self.inner.period()
    }

    fn cm_indecomposables(&self) -> Vec<String> {
        self.inner.cm_indecomposables().iter().map(|o| o.to_string()).collect()
    }

    /// Normal form (i, t) of A_i[p].
    fn stable_normalize(&self, i: u32, p: i64) -> PyResult<(u32, u32)> {
        let o = self.inner.stable_normalize(i, p).map_err(err)?;
        Ok((o.i, o.t))
    }

    fn name(&self, i: u32, t: u32) -> PyResult<String> {
        self.inner.cm_name(StableObject { i, t }).map_err(err)
    }

    /// None for the zero object.
    fn approximation(&self, p: u32) -> Option<String> {
        match self.inner.approx_normal_form(p) {
            Approximation::Zero => None,
            Approximation::Object(o) => Some(o.to_string()),
        }
    }

    fn minimal_period(&self) -> PyResult<i64> {
        self.inner.minimal_period().map_err(err)
    }

    /// (names, arrows) of the CM AR quiver.
    fn ar_quiver(&self) -> PyResult<NamedQuiver> {
        self.inner.named_cm_quiver().map_err(err)
    }
}

#[pyfunction]
fn count_formula(n: u32, d: u32) -> PyResult<u128> {
    brauer::count_formula(n, d).map_err(err)
}

#[pyfunction]
fn diagonals_intersect(x: &str, y: &str) -> PyResult<bool> {
    Ok(brauer::diagonals_intersect(parse(x)?, parse(y)?))
}

#[pymodule]
fn cybrauer_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Polygon>()?;
    m.add_class::<ConfigSpace>()?;
    m.add_class::<TruncPoly>()?;
    m.add_function(wrap_pyfunction!(count_formula, m)?)?;
    m.add_function(wrap_pyfunction!(diagonals_intersect, m)?)?;
    Ok(())
}
