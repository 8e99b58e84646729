//! Python bindings.
//!
//! Vertices are 1-based on this side, as in the text formats.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyType;
use qsym_core::digraph::Digraph as CoreDigraph;
use qsym_core::enumerate::{self as en, Family, FamilySpec, Item};
use qsym_core::io;
use qsym_core::poset::{Cover, EdgeKind, LabeledPoset};
use qsym_core::qsym::{Basis, Composition, QPolynomial, QSymExpr as CoreExpr};
use qsym_core::verify::{self as scans, ScanOptions};

create_exception!(qsym, QsymError, PyValueError);

fn err(e: qsym_core::Error) -> PyErr {
    QsymError::new_err(e.to_string())
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for qsym_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(err)
    }
}

fn basis(s: &str) -> PyResult<Basis> {
    s.parse()
        .map_err(|_| PyValueError::new_err(format!("unknown basis {s:?}; use 'F' or 'M'")))
}

fn kind(s: &str) -> PyResult<EdgeKind> {
    match s {
        "W" | "w" => Ok(EdgeKind::Weak),
        "S" | "s" => Ok(EdgeKind::Strict),
        _ => Err(PyValueError::new_err(format!(
            "edge kind must be 'W' or 'S', got {s:?}"
        ))),
    }
}

fn vertex(v: usize, n: usize) -> PyResult<usize> {
    if v == 0 || v > n {
        return Err(PyIndexError::new_err(format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

type TPoly = BTreeMap<u32, BigInt>;

fn qpoly_dict(p: &QPolynomial) -> BTreeMap<u32, BigInt> {
    p.terms().map(|(e, c)| (e, c.clone())).collect()
}

fn json_to_py(py: Python<'_>, value: &impl serde::Serialize) -> PyResult<Py<PyAny>> {
    let s = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (s,))?.unbind())
}

/// Element of quasisymmetric functions in the F or M basis.
#[pyclass(name = "QSymExpr", module = "qsym", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyExpr(CoreExpr);

#[pymethods]
impl PyExpr {
    /// Build from `[(parts, coeff), ...]`.
    #[new]
    #[pyo3(signature = (terms, basis = "F"))]
    fn new(terms: Vec<(Vec<u32>, BigInt)>, basis: &str) -> PyResult<Self> {
        let b = self::basis(basis)?;
        let terms = terms
            .into_iter()
            .map(|(p, c)| Ok((Composition::new(p).py()?, c)))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyExpr(CoreExpr::from_terms(b, terms)))
    }

    #[classmethod]
    #[pyo3(name = "F")]
    fn f(_cls: &Bound<'_, PyType>, parts: Vec<u32>) -> PyResult<Self> {
        Ok(PyExpr(CoreExpr::f(Composition::new(parts).py()?)))
    }

    #[classmethod]
    #[pyo3(name = "M")]
    fn m(_cls: &Bound<'_, PyType>, parts: Vec<u32>) -> PyResult<Self> {
        Ok(PyExpr(CoreExpr::m(Composition::new(parts).py()?)))
    }

    #[getter]
    fn basis(&self) -> char {
        self.0.basis().letter()
    }

    /// `[(parts, coeff), ...]` in composition order.
    fn terms(&self) -> Vec<(Vec<u32>, BigInt)> {
        self.0.terms().map(|(a, c)| (a.parts().to_vec(), c.clone())).collect()
    }

    fn coeff(&self, parts: Vec<u32>) -> PyResult<BigInt> {
        Ok(self.0.coeff(&Composition::new(parts).py()?))
    }

    fn to_f(&self) -> Self {
        PyExpr(self.0.to_f())
    }

    fn to_m(&self) -> Self {
        PyExpr(self.0.to_m())
    }

    fn bar(&self) -> PyResult<Self> {
        Ok(PyExpr(self.0.bar().py()?))
    }

    fn up(&self, other: &Self) -> PyResult<Self> {
        Ok(PyExpr(self.0.up(&other.0).py()?))
    }

    fn upup(&self, other: &Self) -> PyResult<Self> {
        Ok(PyExpr(self.0.upup(&other.0).py()?))
    }

    /// Coefficients of `K(1, q, ..., q^(k-1))` as `{exponent: coeff}`.
    fn principal_specialization(&self, k: usize) -> BTreeMap<u32, BigInt> {
        qpoly_dict(&self.0.principal_specialization(k))
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("expression serializes")
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        serde_json::from_str(s)
            .map(PyExpr)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        Ok(PyExpr(self.0.try_add(&other.0).py()?))
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        Ok(PyExpr(self.0.try_sub(&other.0).py()?))
    }

    fn __mul__(&self, other: &Self) -> Self {
        PyExpr(self.0.mul(&other.0))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.0.canonical_bytes().hash(&mut h);
        h.finish()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("QSymExpr({})", self.0)
    }
}

/// Poset with every cover marked weak ("W") or strict ("S").
#[pyclass(name = "LabeledPoset", module = "qsym", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPoset(LabeledPoset);

#[pymethods]
impl PyPoset {
    /// `covers` holds `(a, b)` or `(a, b, "W"|"S")`, read as a covered by b; the kind
    /// defaults to weak.
    #[new]
    fn new(n: usize, covers: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let covers = covers
            .iter()
            .map(|c| {
                let (a, b, k) = match c.extract::<(usize, usize, String)>() {
                    Ok(t) => t,
                    Err(_) => {
                        let (a, b) = c.extract::<(usize, usize)>()?;
                        (a, b, "W".into())
                    }
                };
                Ok(Cover::new(vertex(a, n)?, vertex(b, n)?, kind(&k)?))
            })
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyPoset(LabeledPoset::new(n, covers).py()?))
    }

    /// Parse `"3; 1<2 W; 1<3 S"`.
    #[staticmethod]
    fn from_inline(s: &str) -> PyResult<Self> {
        Ok(PyPoset(io::parse_poset_inline(s).py()?))
    }

    /// Parse the text or JSON file format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyPoset(io::parse_poset(text).py()?))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    /// `[(a, b, kind), ...]`, 1-based.
    fn covers(&self) -> Vec<(usize, usize, char)> {
        self.0
            .covers()
            .iter()
            .map(|c| (c.lo + 1, c.hi + 1, c.kind.letter()))
            .collect()
    }

    #[pyo3(signature = (basis = "F"))]
    fn enumerator(&self, basis: &str) -> PyResult<PyExpr> {
        let b = self::basis(basis)?;
        Ok(PyExpr(self.0.enumerator_f().py()?.to_basis(b)))
    }

    fn specialization(&self, k: usize) -> PyResult<BTreeMap<u32, BigInt>> {
        Ok(qpoly_dict(&self.0.enumerator_f().py()?.principal_specialization(k)))
    }

    fn jump_vector(&self) -> Vec<usize> {
        self.0.jump_vector().0
    }

    fn strict_jump_vector(&self) -> Vec<usize> {
        self.0.strict_jump_vector().0
    }

    fn greene_shape(&self) -> PyResult<Vec<usize>> {
        Ok(self.0.greene_shape().py()?.0)
    }

    fn antichain_counts(&self) -> PyResult<BTreeMap<usize, u64>> {
        self.0.antichain_counts().py()
    }

    fn pointed_partition_exists(&self, weight: Vec<u32>) -> PyResult<bool> {
        self.0.pointed_partition_exists(&Composition::new(weight).py()?).py()
    }

    fn count_linear_extensions(&self) -> u128 {
        self.0.count_linear_extensions()
    }

    fn is_tree(&self) -> bool {
        self.0.is_tree()
    }

    fn is_fair_tree(&self) -> bool {
        self.0.is_fair_tree()
    }

    fn is_in_class_c(&self) -> bool {
        self.0.is_in_class_c()
    }

    /// Hex digest of the isomorphism class, strictness marks included.
    fn canonical_key(&self) -> PyResult<String> {
        Ok(self.0.canonical_key().py()?.to_hex())
    }

    fn is_isomorphic(&self, other: &Self) -> PyResult<bool> {
        self.0.is_isomorphic(&other.0).py()
    }

    fn dual(&self) -> Self {
        PyPoset(self.0.dual())
    }

    fn bar(&self) -> Self {
        PyPoset(self.0.bar())
    }

    fn all_weak(&self) -> Self {
        PyPoset(self.0.all_weak())
    }

    fn all_strict(&self) -> Self {
        PyPoset(self.0.all_strict())
    }

    fn disjoint_union(&self, other: &Self) -> PyResult<Self> {
        Ok(PyPoset(self.0.disjoint_union(&other.0).py()?))
    }

    fn ordsum_weak(&self, other: &Self) -> PyResult<Self> {
        Ok(PyPoset(self.0.ordsum_weak(&other.0).py()?))
    }

    fn ordsum_strict(&self, other: &Self) -> PyResult<Self> {
        Ok(PyPoset(self.0.ordsum_strict(&other.0).py()?))
    }

    fn to_text(&self) -> String {
        io::poset_text(&self.0)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_inline()
    }

    fn __repr__(&self) -> String {
        format!("LabeledPoset.from_inline({:?})", self.0.to_inline())
    }
}

#[pyclass(name = "Digraph", module = "qsym", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDigraph(CoreDigraph);

#[pymethods]
impl PyDigraph {
    #[new]
    fn new(n: usize, arcs: Vec<(usize, usize)>) -> PyResult<Self> {
        let arcs = arcs
            .into_iter()
            .map(|(u, v)| Ok((vertex(u, n)?, vertex(v, n)?)))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyDigraph(CoreDigraph::new(n, arcs).py()?))
    }

    /// Parse `"3; 1->2; 3->2"`.
    #[staticmethod]
    fn from_inline(s: &str) -> PyResult<Self> {
        Ok(PyDigraph(io::parse_digraph_inline(s).py()?))
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyDigraph(io::parse_digraph(text).py()?))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn arcs(&self) -> Vec<(usize, usize)> {
        self.0.arcs().iter().map(|&(u, v)| (u + 1, v + 1)).collect()
    }

    /// X_G(x, t) as `[(parts, {t_exponent: coeff}), ...]` in the M basis.
    fn chromatic(&self) -> PyResult<Vec<(Vec<u32>, TPoly)>> {
        let x = self.0.chromatic_qsym_t().py()?;
        Ok(x.by_composition().into_iter().map(|(a, p)| (a.into(), p)).collect())
    }

    fn chromatic_str(&self) -> PyResult<String> {
        Ok(self.0.chromatic_qsym_t().py()?.to_string())
    }

    /// X_G at t = 1, in the M basis.
    fn chromatic_sym(&self) -> PyResult<PyExpr> {
        Ok(PyExpr(self.0.chromatic_sym().py()?))
    }

    fn chromatic_poly(&self, k: u64) -> PyResult<BigInt> {
        self.0.chromatic_poly(k).py()
    }

    fn reversal_invariance_check(&self) -> PyResult<bool> {
        self.0.reversal_invariance_check().py()
    }

    fn reverse(&self) -> Self {
        PyDigraph(self.0.reverse())
    }

    fn is_acyclic(&self) -> bool {
        self.0.is_acyclic()
    }

    fn is_tree(&self) -> bool {
        self.0.is_tree()
    }

    /// Reachability order with every cover strict.
    fn to_poset(&self) -> PyResult<PyPoset> {
        Ok(PyPoset(self.0.to_poset().py()?))
    }

    fn canonical_key(&self) -> PyResult<String> {
        Ok(self.0.canonical_key().py()?.to_hex())
    }

    fn to_text(&self) -> String {
        io::digraph_text(&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_inline()
    }

    fn __repr__(&self) -> String {
        format!("Digraph.from_inline({:?})", self.0.to_inline())
    }
}

#[pyclass(name = "FreeTree", module = "qsym", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyTree(en::FreeTree);

#[pymethods]
impl PyTree {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let edges = edges
            .into_iter()
            .map(|(u, v)| Ok((vertex(u, n)?, vertex(v, n)?)))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyTree(en::FreeTree::new(n, edges).py()?))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges().iter().map(|&(u, v)| (u + 1, v + 1)).collect()
    }

    fn canonical_key(&self) -> String {
        self.0.canonical_key().to_hex()
    }

    /// Every orientation as an all-weak poset.
    fn orientations(&self) -> Vec<PyPoset> {
        self.0.orientations().map(PyPoset).collect()
    }

    fn __str__(&self) -> String {
        self.0.to_inline()
    }
}

fn item_to_py(py: Python<'_>, item: Item) -> PyResult<Py<PyAny>> {
    Ok(match item {
        Item::Tree(t) => Py::new(py, PyTree(t))?.into_any(),
        Item::Poset(p) => Py::new(py, PyPoset(p))?.into_any(),
        Item::Digraph(g) => Py::new(py, PyDigraph(g))?.into_any(),
    })
}

/// All objects of a family of size n, sorted by canonical key.
#[pyfunction]
#[pyo3(signature = (family, n, start = None, stop = None))]
fn enumerate(
    py: Python<'_>,
    family: &str,
    n: usize,
    start: Option<usize>,
    stop: Option<usize>,
) -> PyResult<Vec<Py<PyAny>>> {
    let family: Family = family.parse().py()?;
    let spec = FamilySpec::new(family, n);
    let items = match (start, stop) {
        (None, None) => en::generate(spec),
        (a, b) => en::generate_range(spec, a.unwrap_or(0)..b.unwrap_or(usize::MAX)),
    }
    .py()?;
    items.into_iter().map(|i| item_to_py(py, i)).collect()
}

/// Family names accepted by `enumerate`.
#[pyfunction]
fn families() -> Vec<&'static str> {
    Family::ALL.iter().map(|f| f.name()).collect()
}

/// Run a collision scan and return the report as a dict.
///
/// `conjecture` is one of c2, c3, c3-unrooted, fair, spec, xgt, multiset.
#[pyfunction]
#[pyo3(signature = (conjecture, n, k = None, weak = false, jobs = 0, checkpoint = None))]
fn verify(
    py: Python<'_>,
    conjecture: &str,
    n: usize,
    k: Option<usize>,
    weak: bool,
    jobs: usize,
    checkpoint: Option<std::path::PathBuf>,
) -> PyResult<Py<PyAny>> {
    let opts = ScanOptions {
        jobs,
        checkpoint,
        ..ScanOptions::default()
    };
    let report = py
        .detach(|| match conjecture {
            "c2" => Ok(scans::conjecture2_scan(n, &opts)),
            "c3" => Ok(scans::conjecture3_scan(n, &opts)),
            "c3-unrooted" => Ok(scans::conjecture3_unrooted_scan(n, &opts)),
            "fair" => Ok(scans::fair_tree_scan(n, &opts)),
            "spec" => Ok(scans::spec_scan(n, k.unwrap_or(n), weak, &opts)),
            "xgt" => Ok(scans::xgt_scan(n, &opts)),
            "multiset" => Ok(scans::multiset_question_scan(n, &opts)),
            other => Err(other.to_string()),
        })
        .map_err(|c| PyValueError::new_err(format!("unknown conjecture {c:?}")))?
        .py()?;
    json_to_py(py, &report)
}

/// Parse every object in a text file body.
#[pyfunction]
fn parse_items(py: Python<'_>, text: &str) -> PyResult<Vec<Py<PyAny>>> {
    io::parse_items(text)
        .py()?
        .into_iter()
        .map(|i| item_to_py(py, i))
        .collect()
}

#[pymodule]
fn qsym(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("QsymError", m.py().get_type::<QsymError>())?;
    m.add_class::<PyExpr>()?;
    m.add_class::<PyPoset>()?;
    m.add_class::<PyDigraph>()?;
    m.add_class::<PyTree>()?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(families, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(parse_items, m)?)?;
    Ok(())
}
