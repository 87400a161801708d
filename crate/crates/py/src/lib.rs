//! Python bindings: the exact scalar type and the main operations of the
//! crate, exposed as a small extension module.

// The pymethods macro expands to conversions clippy flags as useless.
#![allow(clippy::useless_conversion)]

use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use lamdet::condense;
use lamdet::matrix::SquareMatrix;
use lamdet::scalar;
use lamdet::{apps, asm, aztec, periodic, rr, shuffle};

fn to_py_err(e: lamdet::Error) -> PyErr {
    match e {
        lamdet::Error::DivisionByZero => PyZeroDivisionError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// An exact multivariate rational function.
#[pyclass(frozen, name = "Scalar")]
#[derive(Clone)]
struct PyScalar {
    inner: scalar::Scalar,
}

#[pymethods]
impl PyScalar {
    /// Parses an expression with integers, names, `+ - * / ^` and
    /// parentheses.
    #[new]
    fn new(expr: &str) -> PyResult<Self> {
        Ok(PyScalar {
            inner: scalar::parse(expr).map_err(to_py_err)?,
        })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Scalar({:?})", self.inner.to_string())
    }

    fn __richcmp__(&self, other: &PyScalar, op: pyo3::basic::CompareOp) -> PyResult<bool> {
        match op {
            pyo3::basic::CompareOp::Eq => Ok(self.inner == other.inner),
            pyo3::basic::CompareOp::Ne => Ok(self.inner != other.inner),
            _ => Err(PyValueError::new_err("scalars are not ordered")),
        }
    }

    fn __add__(&self, other: &PyScalar) -> PyScalar {
        PyScalar {
            inner: self.inner.add(&other.inner),
        }
    }

    fn __sub__(&self, other: &PyScalar) -> PyScalar {
        PyScalar {
            inner: self.inner.sub(&other.inner),
        }
    }

    fn __mul__(&self, other: &PyScalar) -> PyScalar {
        PyScalar {
            inner: self.inner.mul(&other.inner),
        }
    }

    fn __truediv__(&self, other: &PyScalar) -> PyResult<PyScalar> {
        Ok(PyScalar {
            inner: self.inner.div(&other.inner).map_err(to_py_err)?,
        })
    }

    fn __neg__(&self) -> PyScalar {
        PyScalar {
            inner: self.inner.neg(),
        }
    }

    fn __pow__(&self, e: i64, _mod: Option<i64>) -> PyResult<PyScalar> {
        Ok(PyScalar {
            inner: self.inner.pow(e).map_err(to_py_err)?,
        })
    }

    /// Simultaneous substitution from a dict of variable name to
    /// expression string or Scalar.
    fn substitute(&self, bindings: &Bound<'_, PyDict>) -> PyResult<PyScalar> {
        let mut map = std::collections::BTreeMap::new();
        for (k, v) in bindings.iter() {
            let name: String = k.extract()?;
            let value = if let Ok(s) = v.extract::<PyScalar>() {
                s.inner
            } else {
                scalar::parse(&v.extract::<String>()?).map_err(to_py_err)?
            };
            map.insert(scalar::var(&name), value);
        }
        Ok(PyScalar {
            inner: self.inner.substitute(&map).map_err(to_py_err)?,
        })
    }

    /// Limit as the named variable tends to zero.
    fn limit_at_zero(&self, name: &str) -> PyResult<PyScalar> {
        Ok(PyScalar {
            inner: self.inner.limit_at_zero(scalar::var(name)).map_err(to_py_err)?,
        })
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }
}

type Rows = Vec<Vec<String>>;

fn matrix_from_rows(rows: Vec<Vec<String>>) -> PyResult<SquareMatrix> {
    SquareMatrix::from_exprs(&rows).map_err(to_py_err)
}

/// Lambda-determinant of a square matrix of expressions.
#[pyfunction]
fn lambda_det(rows: Vec<Vec<String>>, lambda: &str) -> PyResult<PyScalar> {
    let a = matrix_from_rows(rows)?;
    let l = scalar::parse(lambda).map_err(to_py_err)?;
    Ok(PyScalar {
        inner: condense::lambda_det(&a, &l).map_err(to_py_err)?,
    })
}

/// Partition function of the order-n Aztec graph with face weights (P, Q)
/// and vertical bias, by condensation.
#[pyfunction]
fn partition_function(
    p: Vec<Vec<String>>,
    q: Vec<Vec<String>>,
    lambda: &str,
) -> PyResult<PyScalar> {
    let p = matrix_from_rows(p)?;
    let q = matrix_from_rows(q)?;
    let l = scalar::parse(lambda).map_err(to_py_err)?;
    Ok(PyScalar {
        inner: condense::cond_pq(&p, &q, &l).map_err(to_py_err)?,
    })
}

/// The same partition function as a sum over compatible pairs of
/// alternating sign matrices (`form` is "min", "max" or "corner").
#[pyfunction]
#[pyo3(signature = (p, q, lambda, form = "min"))]
fn partition_function_direct(
    p: Vec<Vec<String>>,
    q: Vec<Vec<String>>,
    lambda: &str,
    form: &str,
) -> PyResult<PyScalar> {
    let p = matrix_from_rows(p)?;
    let q = matrix_from_rows(q)?;
    let l = scalar::parse(lambda).map_err(to_py_err)?;
    let form = match form {
        "min" => rr::RrForm::MinForm,
        "max" => rr::RrForm::MaxForm,
        "corner" => rr::RrForm::CornerForm,
        _ => return Err(PyValueError::new_err("form must be min, max or corner")),
    };
    Ok(PyScalar {
        inner: rr::rr_general(&p, &q, &l, form).map_err(to_py_err)?,
    })
}

/// Brute-force partition function by enumerating all matchings.
#[pyfunction]
fn partition_function_brute(
    p: Vec<Vec<String>>,
    q: Vec<Vec<String>>,
    lambda: &str,
) -> PyResult<PyScalar> {
    let p = matrix_from_rows(p)?;
    let q = matrix_from_rows(q)?;
    let l = scalar::parse(lambda).map_err(to_py_err)?;
    let w = aztec::AztecWeighting::new(p, q, aztec::Bias::Homogeneous(l)).map_err(to_py_err)?;
    Ok(PyScalar {
        inner: aztec::partition_brute(&w).map_err(to_py_err)?,
    })
}

/// Direct determinant sum over alternating sign matrices.
#[pyfunction]
fn rr_det(rows: Vec<Vec<String>>, lambda: &str) -> PyResult<PyScalar> {
    let a = matrix_from_rows(rows)?;
    let l = scalar::parse(lambda).map_err(to_py_err)?;
    Ok(PyScalar {
        inner: rr::rr_det(&a, &l).map_err(to_py_err)?,
    })
}

/// Alternating sign matrices of the given order as nested lists.
#[pyfunction]
fn asm_list(n: usize) -> PyResult<Vec<Vec<Vec<i8>>>> {
    Ok(asm::enumerate_asm(n)
        .map_err(to_py_err)?
        .iter()
        .map(|a| a.rows())
        .collect())
}

#[pyfunction]
fn asm_count(n: usize) -> PyResult<u64> {
    asm::count_asm(n).map_err(to_py_err)
}

#[pyfunction]
fn matching_count(n: usize) -> PyResult<usize> {
    Ok(aztec::enumerate_matchings(n).map_err(to_py_err)?.len())
}

/// One shuffling step: returns the reduced (P', Q') weight matrices as
/// expression strings.
#[pyfunction]
fn shuffle_step(p: Rows, q: Rows, lambda: &str) -> PyResult<(Rows, Rows)> {
    let p = matrix_from_rows(p)?;
    let q = matrix_from_rows(q)?;
    let l = scalar::parse(lambda).map_err(to_py_err)?;
    let (pn, qn) = shuffle::shuffle_step(&p, &q, &l).map_err(to_py_err)?;
    let rows = |m: &SquareMatrix| -> Vec<Vec<String>> {
        (1..=m.order())
            .map(|i| (1..=m.order()).map(|j| m.get(i, j).to_string()).collect())
            .collect()
    };
    Ok((rows(&pn), rows(&qn)))
}

/// The sequence r_0..r_count of the two-periodic recurrence.
#[pyfunction]
fn rk_sequence(lambda: &str, t: &str, count: usize) -> PyResult<Vec<PyScalar>> {
    let l = scalar::parse(lambda).map_err(to_py_err)?;
    let t = scalar::parse(t).map_err(to_py_err)?;
    Ok(periodic::rk_sequence(&l, &t, count)
        .map_err(to_py_err)?
        .into_iter()
        .map(|inner| PyScalar { inner })
        .collect())
}

/// Product form of the biased two-periodic partition function.
#[pyfunction]
fn tn_biased_product(n: usize, a: &str, b: &str, lambda: &str) -> PyResult<PyScalar> {
    let a = scalar::parse(a).map_err(to_py_err)?;
    let b = scalar::parse(b).map_err(to_py_err)?;
    let l = scalar::parse(lambda).map_err(to_py_err)?;
    Ok(PyScalar {
        inner: periodic::tn_biased_product(n, &a, &b, &l).map_err(to_py_err)?,
    })
}

/// Polynomial condition on (lambda, t) for p-periodicity of the sequence.
#[pyfunction]
fn periodicity_polynomial(p: usize) -> PyResult<PyScalar> {
    Ok(PyScalar {
        inner: periodic::periodicity_polynomial(p).map_err(to_py_err)?,
    })
}

/// Somos-4 coefficients and verification up to the given index:
/// returns (alpha, beta, holds).
#[pyfunction]
fn somos4_check(a: &str, b: &str, lambda: &str, count: usize) -> PyResult<(PyScalar, PyScalar, bool)> {
    let a = scalar::parse(a).map_err(to_py_err)?;
    let b = scalar::parse(b).map_err(to_py_err)?;
    let l = scalar::parse(lambda).map_err(to_py_err)?;
    let rep = periodic::somos4_check(&a, &b, &l, count).map_err(to_py_err)?;
    Ok((
        PyScalar { inner: rep.alpha },
        PyScalar { inner: rep.beta },
        rep.holds,
    ))
}

/// Central-face dimer fractions (p0, p1, p2) as exact rational strings.
#[pyfunction]
fn holey_fractions(n: usize) -> PyResult<(String, String, String)> {
    let f = apps::holey_fractions(n).map_err(to_py_err)?;
    Ok((f.p0.to_string(), f.p1.to_string(), f.p2.to_string()))
}

/// Coefficients of the central-row generating polynomial, as decimal
/// strings.
#[pyfunction]
fn gn_polynomial(n: usize) -> PyResult<Vec<String>> {
    Ok(apps::gn_polynomial(n)
        .map_err(to_py_err)?
        .iter()
        .map(|c| c.to_string())
        .collect())
}

/// Biased matchings of the 2n x 2n square grid.
#[pyfunction]
fn square_grid_partition(n: usize, lambda: &str) -> PyResult<PyScalar> {
    let l = scalar::parse(lambda).map_err(to_py_err)?;
    Ok(PyScalar {
        inner: apps::square_grid_partition(n, &l).map_err(to_py_err)?,
    })
}

#[pymodule]
fn lamdet_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyScalar>()?;
    m.add_function(wrap_pyfunction!(lambda_det, m)?)?;
    m.add_function(wrap_pyfunction!(partition_function, m)?)?;
    m.add_function(wrap_pyfunction!(partition_function_direct, m)?)?;
    m.add_function(wrap_pyfunction!(partition_function_brute, m)?)?;
    m.add_function(wrap_pyfunction!(rr_det, m)?)?;
    m.add_function(wrap_pyfunction!(asm_list, m)?)?;
    m.add_function(wrap_pyfunction!(asm_count, m)?)?;
    m.add_function(wrap_pyfunction!(matching_count, m)?)?;
    m.add_function(wrap_pyfunction!(shuffle_step, m)?)?;
    m.add_function(wrap_pyfunction!(rk_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(tn_biased_product, m)?)?;
    m.add_function(wrap_pyfunction!(periodicity_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(somos4_check, m)?)?;
    m.add_function(wrap_pyfunction!(holey_fractions, m)?)?;
    m.add_function(wrap_pyfunction!(gn_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(square_grid_partition, m)?)?;
    Ok(())
}
