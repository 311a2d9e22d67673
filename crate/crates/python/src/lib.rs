//! Python bindings. Rationals cross the boundary as `"p/q"` strings; inputs
//! may also be ints or anything whose `str()` parses (e.g. `Fraction`).

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use dcech::charts::{chart_presentation, sl2_generators, ChartId, ExtensionKind};
use dcech::cli::cohomology_report;
use dcech::scalar::{format_rational, parse_rational};
use dcech::sl2cat::{self, CatalogName};
use dcech::verify::{compute, verify_all, verify_criterion, VerifyConfig, CRITERIA};
use dcech::weights::{DEFAULT_HALF_WIDTH, MIN_HALF_WIDTH};
use dcech::weylops::{
    formal_adjoint, invert_coordinate, reduce_in_cyclic, Coord, CyclicPresentation, Support,
};
use dcech::{WeightWindow, Q};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rational(x: &Bound<'_, PyAny>) -> PyResult<Q> {
    let s = x.str()?.to_string();
    parse_rational(s.trim()).map_err(value_error)
}

fn coord(name: &str) -> PyResult<Coord> {
    match name {
        "x" => Ok(Coord::X),
        "z" => Ok(Coord::Z),
        _ => Err(value_error(format!(
            "coordinate must be 'x' or 'z', got {name:?}"
        ))),
    }
}

fn chart(name: &str) -> PyResult<ChartId> {
    match name {
        "x" | "Cx" => Ok(ChartId::Cx),
        "z" | "Cz" => Ok(ChartId::Cz),
        "cstar" | "Cstar" => Ok(ChartId::Cstar),
        _ => Err(value_error(format!(
            "chart must be 'x', 'z' or 'cstar', got {name:?}"
        ))),
    }
}

fn check_window(window: i64) -> PyResult<i64> {
    if window < MIN_HALF_WIDTH {
        return Err(value_error(format!(
            "window must be at least {MIN_HALF_WIDTH}"
        )));
    }
    Ok(window)
}

fn kind(extension: &str, alpha: Option<&Bound<'_, PyAny>>) -> PyResult<ExtensionKind> {
    let alpha = alpha.map(rational).transpose()?;
    ExtensionKind::from_name(extension, alpha).map_err(value_error)
}

/// Weyl algebra element `Σ c·coordᵃ∂ᵇ` in one chart.
#[pyclass(name = "DiffOp", module = "dcech_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDiffOp(dcech::DiffOp);

#[pymethods]
impl PyDiffOp {
    /// `terms` is a list of `(a, b, coefficient)`; negative `a` needs `laurent`.
    #[new]
    #[pyo3(signature = (terms, coord = "x", laurent = false))]
    fn new(terms: Vec<(i64, u32, Bound<'_, PyAny>)>, coord: &str, laurent: bool) -> PyResult<Self> {
        let c = self::coord(coord)?;
        let ts = terms
            .iter()
            .map(|(a, b, r)| Ok((*a, *b, rational(r)?)))
            .collect::<PyResult<Vec<_>>>()?;
        let laurent = laurent || ts.iter().any(|(a, _, _)| *a < 0);
        dcech::DiffOp::from_terms(c, laurent, ts)
            .map(PyDiffOp)
            .map_err(value_error)
    }

    #[staticmethod]
    #[pyo3(signature = (coord = "x"))]
    fn x(coord: &str) -> PyResult<Self> {
        Ok(PyDiffOp(dcech::DiffOp::coord_power(self::coord(coord)?, 1)))
    }

    #[staticmethod]
    #[pyo3(signature = (coord = "x"))]
    fn d(coord: &str) -> PyResult<Self> {
        Ok(PyDiffOp(dcech::DiffOp::d(self::coord(coord)?)))
    }

    #[getter]
    fn coord(&self) -> &'static str {
        match self.0.coord() {
            Coord::X => "x",
            Coord::Z => "z",
        }
    }

    #[getter]
    fn laurent(&self) -> bool {
        self.0.is_laurent()
    }

    fn terms(&self) -> Vec<(i64, u32, String)> {
        self.0
            .terms()
            .map(|(a, b, c)| (a, b, format_rational(c)))
            .collect()
    }

    fn order(&self) -> Option<u32> {
        self.0.order()
    }

    fn adjoint(&self) -> Self {
        PyDiffOp(formal_adjoint(&self.0))
    }

    /// Rewrites in the other chart coordinate (Laurent operators only).
    fn invert(&self) -> PyResult<Self> {
        invert_coordinate(&self.0)
            .map(PyDiffOp)
            .map_err(value_error)
    }

    fn to_laurent(&self) -> Self {
        PyDiffOp(self.0.clone().laurent())
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.0.add(&other.0).map(PyDiffOp).map_err(value_error)
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        self.0.sub(&other.0).map(PyDiffOp).map_err(value_error)
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.0.mul(&other.0).map(PyDiffOp).map_err(value_error)
    }

    fn __pow__(&self, n: u32, _modulo: Option<Bound<'_, PyAny>>) -> Self {
        PyDiffOp(self.0.pow(n))
    }

    fn scale(&self, r: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyDiffOp(self.0.scale(&rational(r)?)))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("DiffOp({})", self.0)
    }
}

/// Cyclic right module `D/qD` with its monomial basis.
#[pyclass(
    name = "Presentation",
    module = "dcech_py",
    frozen,
    skip_from_py_object
)]
#[derive(Clone)]
struct PyPresentation(CyclicPresentation);

#[pymethods]
impl PyPresentation {
    /// `D/(coord·∂ − c)D` over Laurent operators, basis `1̄·coordⁿ`, `n ∈ ℤ`.
    #[staticmethod]
    #[pyo3(signature = (c, coord = "x"))]
    fn xpowers(c: &Bound<'_, PyAny>, coord: &str) -> PyResult<Self> {
        Ok(PyPresentation(CyclicPresentation::xpowers(
            self::coord(coord)?,
            rational(c)?,
            Support::AllIntegers,
        )))
    }

    /// `D/coord·D`, basis `1̄·∂ⁿ`, `n ≥ 0`.
    #[staticmethod]
    #[pyo3(signature = (coord = "x"))]
    fn dpowers(coord: &str) -> PyResult<Self> {
        Ok(PyPresentation(CyclicPresentation::dpowers(self::coord(
            coord,
        )?)))
    }

    /// Polynomial `D/(coord·∂ − c)D`, basis `1̄·coordⁿ` and `1̄·∂⁻ⁿ`.
    #[staticmethod]
    #[pyo3(signature = (c, coord = "x"))]
    fn mixed(c: &Bound<'_, PyAny>, coord: &str) -> PyResult<Self> {
        Ok(PyPresentation(CyclicPresentation::mixed(
            self::coord(coord)?,
            rational(c)?,
        )))
    }

    fn relator(&self) -> PyDiffOp {
        PyDiffOp(self.0.relator())
    }

    fn basis_operator(&self, n: i64) -> PyDiffOp {
        PyDiffOp(self.0.basis_operator(n))
    }

    /// `vₙ · op` as `[(index, "p/q")]`.
    fn reduce(&self, op: &PyDiffOp, n: i64) -> PyResult<Vec<(i64, String)>> {
        let v = reduce_in_cyclic(&op.0, &self.0, n).map_err(value_error)?;
        Ok(v.iter().map(|(k, c)| (*k, format_rational(c))).collect())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Presentation({})", self.0)
    }
}

/// Finite window of a weight module: `dim`, `e` and `f` per weight index.
#[pyclass(
    name = "WeightModule",
    module = "dcech_py",
    frozen,
    skip_from_py_object
)]
#[derive(Clone)]
struct PyWeightModule(dcech::WeightModule);

fn matrix_rows(m: &dcech::linalg::Matrix) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(format_rational).collect())
        .collect()
}

#[pymethods]
impl PyWeightModule {
    /// Weights are `offset + 2n`.
    #[getter]
    fn offset(&self) -> String {
        format_rational(self.0.window().offset())
    }

    #[getter]
    fn bounds(&self) -> (i64, i64) {
        (self.0.window().lo(), self.0.window().hi())
    }

    fn weight(&self, n: i64) -> String {
        format_rational(&self.0.weight(n))
    }

    fn dim(&self, n: i64) -> usize {
        self.0.dim(n)
    }

    /// Nonzero dimensions away from the window edges, as `(n, dim)`.
    fn dims(&self) -> Vec<(i64, usize)> {
        self.0.interior_dims()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Matrix of `e` from index `n` to `n − 1` (row-vector convention).
    fn e_map(&self, n: i64) -> Vec<Vec<String>> {
        matrix_rows(&self.0.e_map(n))
    }

    /// Matrix of `f` from index `n` to `n + 1`.
    fn f_map(&self, n: i64) -> Vec<Vec<String>> {
        matrix_rows(&self.0.f_map(n))
    }

    fn bracket_holds(&self) -> bool {
        self.0.bracket_holds()
    }

    fn casimir(&self) -> PyResult<Option<String>> {
        let c = sl2cat::casimir_scalar(&self.0).map_err(value_error)?;
        Ok(c.as_ref().map(format_rational))
    }

    fn identify(&self, lam: i64) -> PyResult<String> {
        sl2cat::identify(&self.0, lam)
            .map(|n| n.to_string())
            .map_err(value_error)
    }

    fn composition_factors(&self, lam: i64) -> PyResult<Vec<(String, usize)>> {
        let fs = sl2cat::composition_factors(&self.0, lam).map_err(value_error)?;
        Ok(fs.into_iter().map(|(n, k)| (n.to_string(), k)).collect())
    }

    fn is_simple(&self) -> bool {
        sl2cat::is_simple_in_window(&self.0)
    }

    fn is_isomorphic(&self, other: &Self) -> bool {
        sl2cat::is_isomorphic_in_window(&self.0, &other.0)
    }

    fn minus_twist(&self) -> Self {
        PyWeightModule(sl2cat::minus_twist(&self.0))
    }

    fn vee_dual(&self) -> Self {
        PyWeightModule(sl2cat::vee_dual(&self.0))
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        if self.0.window() != other.0.window() {
            return Err(value_error("direct sum needs equal windows"));
        }
        Ok(PyWeightModule(sl2cat::direct_sum(&self.0, &other.0)))
    }

    fn __repr__(&self) -> String {
        let (lo, hi) = self.bounds();
        format!(
            "WeightModule(offset={}, window=[{lo},{hi}], total_dim={})",
            self.offset(),
            self.0.total_interior_dim()
        )
    }
}

/// `(H⁰, H¹)` of an extension twisted by `λ`.
#[pyfunction]
#[pyo3(signature = (extension, lam, alpha = None, window = DEFAULT_HALF_WIDTH))]
fn cohomology(
    extension: &str,
    lam: i64,
    alpha: Option<Bound<'_, PyAny>>,
    window: i64,
) -> PyResult<(PyWeightModule, PyWeightModule)> {
    let k = kind(extension, alpha.as_ref())?;
    let (h0, h1) = compute(&k, lam, check_window(window)?).map_err(value_error)?;
    Ok((PyWeightModule(h0), PyWeightModule(h1)))
}

/// Same report the command line prints with `--format json`.
#[pyfunction]
#[pyo3(signature = (extension, lam, alpha = None, window = DEFAULT_HALF_WIDTH))]
fn cohomology_json(
    extension: &str,
    lam: i64,
    alpha: Option<Bound<'_, PyAny>>,
    window: i64,
) -> PyResult<String> {
    let k = kind(extension, alpha.as_ref())?;
    let rep = cohomology_report(&k, lam, check_window(window)?).map_err(value_error)?;
    serde_json::to_string(&rep).map_err(value_error)
}

/// Catalog module by name, e.g. `"R(1,>)"`, `"M(-2)^v"`, `"L(3)"`.
#[pyfunction]
#[pyo3(signature = (name, window = DEFAULT_HALF_WIDTH))]
fn catalog(name: &str, window: i64) -> PyResult<PyWeightModule> {
    let n: CatalogName = name.parse().map_err(value_error)?;
    let w = WeightWindow::centered(&sl2cat::coset_representative(&n), check_window(window)?);
    sl2cat::make_catalog(&n, &w)
        .map(PyWeightModule)
        .map_err(value_error)
}

/// Relaxed module `R(λ,α)` on the window centered at its weight coset.
#[pyfunction]
#[pyo3(signature = (lam, alpha, window = DEFAULT_HALF_WIDTH))]
fn relaxed(lam: i64, alpha: &Bound<'_, PyAny>, window: i64) -> PyResult<PyWeightModule> {
    let a = rational(alpha)?;
    let w = WeightWindow::for_parameters(lam, &a, check_window(window)?);
    sl2cat::relaxed(lam, &a, &w)
        .map(PyWeightModule)
        .map_err(value_error)
}

/// `(e, h, f)` acting on the given chart.
#[pyfunction]
fn generators(chart: &str, lam: i64) -> PyResult<(PyDiffOp, PyDiffOp, PyDiffOp)> {
    let (e, h, f) = sl2_generators(self::chart(chart)?, lam);
    Ok((PyDiffOp(e), PyDiffOp(h), PyDiffOp(f)))
}

/// Presentation of an extension on a chart, or `None` when it vanishes there.
#[pyfunction]
#[pyo3(signature = (extension, chart, alpha = None))]
fn presentation(
    extension: &str,
    chart: &str,
    alpha: Option<Bound<'_, PyAny>>,
) -> PyResult<Option<PyPresentation>> {
    let k = kind(extension, alpha.as_ref())?;
    Ok(chart_presentation(&k, self::chart(chart)?).map(PyPresentation))
}

/// Verification rows as `(criterion, λ, extension, alpha, row, passed, detail)`.
#[pyfunction]
#[pyo3(signature = (lambda_min = -4, lambda_max = 4, criterion = None, window = DEFAULT_HALF_WIDTH))]
#[allow(clippy::type_complexity)]
fn verify(
    py: Python<'_>,
    lambda_min: i64,
    lambda_max: i64,
    criterion: Option<u8>,
    window: i64,
) -> PyResult<Vec<(u8, i64, String, Option<String>, String, bool, String)>> {
    if lambda_min > lambda_max {
        return Err(value_error("lambda_min exceeds lambda_max"));
    }
    if let Some(c) = criterion {
        if !CRITERIA.contains(&c) {
            return Err(value_error(format!("no criterion {c}")));
        }
    }
    let cfg = VerifyConfig {
        lambdas: (lambda_min..=lambda_max).collect(),
        half_width: check_window(window)?,
        ..VerifyConfig::default()
    };
    let rows = py.detach(|| match criterion {
        Some(c) => verify_criterion(c, &cfg),
        None => verify_all(&cfg),
    });
    Ok(rows
        .into_iter()
        .map(|r| {
            (
                r.criterion,
                r.lambda,
                r.extension,
                r.alpha.as_ref().map(format_rational),
                r.row,
                r.passed,
                r.detail,
            )
        })
        .collect())
}

#[pymodule]
fn dcech_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDiffOp>()?;
    m.add_class::<PyPresentation>()?;
    m.add_class::<PyWeightModule>()?;
    m.add_function(wrap_pyfunction!(cohomology, m)?)?;
    m.add_function(wrap_pyfunction!(cohomology_json, m)?)?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(relaxed, m)?)?;
    m.add_function(wrap_pyfunction!(generators, m)?)?;
    m.add_function(wrap_pyfunction!(presentation, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("EXTENSIONS", dcech::charts::EXTENSION_NAMES.to_vec())?;
    Ok(())
}
