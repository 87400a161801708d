//! Dense square matrices of scalars with 1-based indexing.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<Scalar>,
}

impl SquareMatrix {
    pub fn new(n: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::SizeMismatch(format!(
                "expected {} entries for order {n}, got {}",
                n * n,
                data.len()
            )));
        }
        Ok(SquareMatrix { n, data })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                data.push(f(i, j));
            }
        }
        SquareMatrix { n, data }
    }

    /// Parses a row-major grid of expressions.
    pub fn from_exprs(rows: &[Vec<String>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::SizeMismatch(format!(
                    "row of length {} in a matrix of order {n}",
                    row.len()
                )));
            }
            for e in row {
                data.push(crate::scalar::parse(e)?);
            }
        }
        Ok(SquareMatrix { n, data })
    }

    pub fn all_ones(n: usize) -> Self {
        SquareMatrix::from_fn(n, |_, _| Scalar::one())
    }

    /// Matrix of fresh symbolic entries `{prefix}_{i}_{j}`.
    pub fn symbolic(n: usize, prefix: &str) -> Self {
        SquareMatrix::from_fn(n, |i, j| Scalar::var(&format!("{prefix}_{i}_{j}")))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// 1-based access.
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        assert!(
            (1..=self.n).contains(&i) && (1..=self.n).contains(&j),
            "index ({i},{j}) out of range for order {}",
            self.n
        );
        &self.data[(i - 1) * self.n + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j));
        self.data[(i - 1) * self.n + (j - 1)] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        let n = self.n;
        self.data
            .iter()
            .enumerate()
            .map(move |(k, v)| (k / n + 1, k % n + 1, v))
    }

    /// The square submatrix of order `size` whose upper-left corner is at
    /// `(i0, j0)` (1-based).
    pub fn submatrix(&self, i0: usize, j0: usize, size: usize) -> SquareMatrix {
        assert!(i0 + size - 1 <= self.n && j0 + size - 1 <= self.n);
        SquareMatrix::from_fn(size, |i, j| self.get(i0 + i - 1, j0 + j - 1).clone())
    }

    /// Entrywise map.
    pub fn map(&self, f: impl FnMut(&Scalar) -> Scalar) -> SquareMatrix {
        SquareMatrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Entrywise inverse; fails on a zero entry.
    pub fn entrywise_inv(&self) -> Result<SquareMatrix> {
        let mut data = Vec::with_capacity(self.data.len());
        for v in &self.data {
            data.push(v.inv()?);
        }
        Ok(SquareMatrix { n: self.n, data })
    }
}
