//! Python bindings. Matrices cross the boundary as nested lists of complex
//! numbers; reports come back as JSON strings.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use liepoisson::factorization;
use liepoisson::group_case::{self, DensityReport, LeafCoordinates};
use liepoisson::verify::{run_suite, Overrides, Suite};
use liepoisson::{Error, Mat, SpaceInstance};

type Rows = Vec<Vec<Complex64>>;

fn err(e: Error) -> PyErr {
    match e {
        Error::Io(_) | Error::Json(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_mat(rows: &Rows) -> PyResult<Mat> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|row| row.len() != c) {
        return Err(PyValueError::new_err("ragged matrix"));
    }
    Ok(Mat::from_fn(r, c, |i, j| rows[i][j]))
}

fn to_rows(m: &Mat) -> Rows {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect()).collect()
}

fn instance(space: &str) -> PyResult<SpaceInstance> {
    space.parse().map_err(err)
}

/// Iwasawa factors `(l, a, u)` of a stored matrix (block-diagonal for GROUP).
#[pyfunction]
fn iwasawa(space: &str, g: Rows) -> PyResult<(Rows, Rows, Rows)> {
    let inst = instance(space)?;
    let f = factorization::iwasawa(&inst, &to_mat(&g)?).map_err(err)?;
    Ok((to_rows(&f.l), to_rows(&f.a), to_rows(&f.u)))
}

/// Bruhat cell word of each block, e.g. `["1 2", ""]`.
#[pyfunction]
fn bruhat_cells(space: &str, g: Rows) -> PyResult<Vec<String>> {
    let inst = instance(space)?;
    let cells = factorization::bruhat_cells(&inst, &to_mat(&g)?).map_err(err)?;
    Ok(cells.iter().map(|w| w.word_string()).collect())
}

#[pyfunction]
fn cartan_embed(space: &str, u: Rows) -> PyResult<Rows> {
    let inst = instance(space)?;
    Ok(to_rows(&factorization::cartan_embed(&inst, &to_mat(&u)?)))
}

fn coords(n: usize, word: Vec<usize>, zeta: Vec<Complex64>) -> PyResult<LeafCoordinates> {
    LeafCoordinates::new(n, word, zeta).map_err(err)
}

#[pyfunction]
fn leaf_l(n: usize, word: Vec<usize>, zeta: Vec<Complex64>) -> PyResult<Rows> {
    let c = coords(n, word, zeta)?;
    Ok(to_rows(&group_case::lu_coordinates_to_l(&c).map_err(err)?))
}

#[pyfunction]
fn haar_density(n: usize, word: Vec<usize>, zeta: Vec<Complex64>) -> PyResult<f64> {
    group_case::haar_density(&coords(n, word, zeta)?).map_err(err)
}

/// DensityReport JSON.
#[pyfunction]
fn density_report(n: usize, word: Vec<usize>, zeta: Vec<Complex64>) -> PyResult<String> {
    let r = DensityReport::compute(&coords(n, word, zeta)?).map_err(err)?;
    serde_json::to_string(&r).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// SuiteReport JSON; honours `LIEPOISSON_TOL_SCALE`.
#[pyfunction]
#[pyo3(signature = (suite, space, samples, seed))]
fn verify(py: Python<'_>, suite: &str, space: &str, samples: usize, seed: u64) -> PyResult<String> {
    let suite: Suite = suite.parse().map_err(err)?;
    let inst = instance(space)?;
    let overrides = Overrides::from_env().map_err(err)?;
    let report = py.detach(|| run_suite(suite, &inst, samples, seed, &overrides));
    serde_json::to_string(&report).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

#[pymodule]
fn liepoisson_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(iwasawa, m)?)?;
    m.add_function(wrap_pyfunction!(bruhat_cells, m)?)?;
    m.add_function(wrap_pyfunction!(cartan_embed, m)?)?;
    m.add_function(wrap_pyfunction!(leaf_l, m)?)?;
    m.add_function(wrap_pyfunction!(haar_density, m)?)?;
    m.add_function(wrap_pyfunction!(density_report, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
