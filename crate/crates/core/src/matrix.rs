//! Square symmetric matrices with exact rational entries.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::rational::{fmt_rational, to_f64, Rational, RationalJson};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("row {row} has {got} entries, expected {n}")]
    NotSquare { row: usize, got: usize, n: usize },
    #[error("entries ({i}, {j}) and ({j}, {i}) differ")]
    NotSymmetric { i: usize, j: usize },
}

#[derive(Clone, PartialEq, Eq)]
pub struct SymRatMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl SymRatMatrix {
    pub fn zeros(n: usize) -> Self {
        SymRatMatrix {
            n,
            entries: vec![Rational::zero(); n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(MatrixError::NotSquare {
                    row,
                    got: r.len(),
                    n,
                });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if rows[i][j] != rows[j][i] {
                    return Err(MatrixError::NotSymmetric { i, j });
                }
            }
        }
        Ok(SymRatMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Sets `(i, j)` and `(j, i)`.
    pub fn set_sym(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[j * self.n + i] = v.clone();
        self.entries[i * self.n + j] = v;
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.n.max(1)).take(self.n)
    }

    pub fn trace(&self) -> Rational {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn entry_sum(&self) -> Rational {
        self.entries.iter().cloned().sum()
    }

    /// Σ entries², i.e. the squared Frobenius norm, exactly.
    pub fn frobenius_sq(&self) -> Rational {
        self.entries.iter().map(|e| e * e).sum()
    }

    /// Entrywise correctly rounded float image.
    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        self.rows()
            .map(|r| r.iter().map(to_f64).collect())
            .collect()
    }

    /// Whitespace-aligned grid of `p/q` entries.
    pub fn to_grid(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .rows()
            .map(|r| r.iter().map(fmt_rational).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        let mut out = String::new();
        for row in &cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            order: self.n,
            rows: self
                .rows()
                .map(|r| r.iter().map(RationalJson::from).collect())
                .collect(),
        }
    }
}

impl fmt::Debug for SymRatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymRatMatrix(\n{})", self.to_grid())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MatrixJson {
    pub order: usize,
    pub rows: Vec<Vec<RationalJson>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn rejects_asymmetric() {
        let rows = vec![vec![rat(0, 1), rat(1, 2)], vec![rat(1, 3), rat(0, 1)]];
        assert_eq!(
            SymRatMatrix::from_rows(rows),
            Err(MatrixError::NotSymmetric { i: 0, j: 1 })
        );
        let ragged = vec![vec![rat(0, 1)], vec![rat(0, 1), rat(0, 1)]];
        assert!(matches!(
            SymRatMatrix::from_rows(ragged),
            Err(MatrixError::NotSquare { row: 0, .. })
        ));
    }

    #[test]
    fn grid_and_sums() {
        let mut m = SymRatMatrix::zeros(2);
        m.set_sym(0, 1, rat(2, 3));
        assert_eq!(m.to_grid(), "  0 2/3\n2/3   0\n");
        assert_eq!(m.entry_sum(), rat(4, 3));
        assert_eq!(m.frobenius_sq(), rat(8, 9));
        assert_eq!(m.trace(), rat(0, 1));
    }

    #[test]
    fn empty_matrix() {
        let m = SymRatMatrix::zeros(0);
        assert_eq!(m.rows().count(), 0);
        assert_eq!(m.to_grid(), "");
    }
}
