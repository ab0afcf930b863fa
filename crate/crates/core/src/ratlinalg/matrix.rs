use std::fmt;

use serde::Serialize;

use super::{RatVector, Rational};
use crate::error::Error;

/// Dense rational matrix with labeled rows and columns, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        entries: Vec<Rational>,
    ) -> Result<Self, Error> {
        if entries.len() != row_labels.len() * col_labels.len() {
            return Err(Error::IndexMismatch(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                row_labels.len(),
                col_labels.len()
            )));
        }
        for labels in [&row_labels, &col_labels] {
            for (i, l) in labels.iter().enumerate() {
                if labels[..i].contains(l) {
                    return Err(Error::IndexMismatch(format!("duplicate label {l:?}")));
                }
            }
        }
        Ok(RatMatrix {
            row_labels,
            col_labels,
            entries,
        })
    }

    pub fn zeros(row_labels: Vec<String>, col_labels: Vec<String>) -> Result<Self, Error> {
        let n = row_labels.len() * col_labels.len();
        Self::new(row_labels, col_labels, vec![Rational::zero(); n])
    }

    /// Builds from rows given in `row_labels` order; every row must have one entry per column.
    pub fn from_rows(
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        rows: Vec<Vec<Rational>>,
    ) -> Result<Self, Error> {
        if rows.len() != row_labels.len() {
            return Err(Error::IndexMismatch(format!(
                "{} rows for {} row labels",
                rows.len(),
                row_labels.len()
            )));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != col_labels.len()) {
            return Err(Error::IndexMismatch(format!(
                "row of length {} for {} columns",
                bad.len(),
                col_labels.len()
            )));
        }
        Self::new(row_labels, col_labels, rows.into_iter().flatten().collect())
    }

    pub fn from_columns(
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        columns: Vec<Vec<Rational>>,
    ) -> Result<Self, Error> {
        if columns.len() != col_labels.len() {
            return Err(Error::IndexMismatch(format!(
                "{} columns for {} column labels",
                columns.len(),
                col_labels.len()
            )));
        }
        let m = row_labels.len();
        if columns.iter().any(|c| c.len() != m) {
            return Err(Error::IndexMismatch("ragged columns".into()));
        }
        let rows = (0..m)
            .map(|i| columns.iter().map(|c| c[i].clone()).collect())
            .collect();
        Self::from_rows(row_labels, col_labels, rows)
    }

    pub fn nrows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.ncols() + j]
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        if self.ncols() == 0 {
            return vec![Vec::new(); self.nrows()];
        }
        self.entries
            .chunks(self.ncols())
            .map(<[_]>::to_vec)
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.nrows()).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn column_sums(&self) -> Vec<Rational> {
        (0..self.ncols())
            .map(|j| (0..self.nrows()).map(|i| self.get(i, j)).sum())
            .collect()
    }

    /// `M·x`, with `x` read over the column labels and the result over the row labels.
    pub fn mul_vec(&self, x: &RatVector) -> RatVector {
        let xs = x.aligned(&self.col_labels);
        let values = (0..self.nrows())
            .map(|i| (0..self.ncols()).map(|j| self.get(i, j) * &xs[j]).sum())
            .collect();
        RatVector::from_values(&self.row_labels, values)
    }

    /// `yᵀ·M`, with `y` read over the row labels and the result over the column labels.
    pub fn left_mul(&self, y: &RatVector) -> RatVector {
        let ys = y.aligned(&self.row_labels);
        let values = (0..self.ncols())
            .map(|j| (0..self.nrows()).map(|i| &ys[i] * self.get(i, j)).sum())
            .collect();
        RatVector::from_values(&self.col_labels, values)
    }

    /// Appends one column.
    pub fn augment(&self, label: &str, column: &[Rational]) -> Result<RatMatrix, Error> {
        if column.len() != self.nrows() {
            return Err(Error::IndexMismatch("augmented column length".into()));
        }
        let mut col_labels = self.col_labels.clone();
        col_labels.push(label.to_string());
        let rows = self
            .rows()
            .into_iter()
            .zip(column)
            .map(|(mut r, c)| {
                r.push(c.clone());
                r
            })
            .collect();
        RatMatrix::from_rows(self.row_labels.clone(), col_labels, rows)
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {:?} x {:?}", self.row_labels, self.col_labels)?;
        for row in self.rows() {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        let label_w = self.row_labels.iter().map(String::len).max().unwrap_or(0);
        let widths: Vec<usize> = (0..self.ncols())
            .map(|j| {
                cells
                    .iter()
                    .map(|r| r[j].len())
                    .chain(std::iter::once(self.col_labels[j].len()))
                    .max()
                    .unwrap_or(1)
            })
            .collect();
        write!(f, "{:label_w$}", "")?;
        for (j, l) in self.col_labels.iter().enumerate() {
            write!(f, "  {:>w$}", l, w = widths[j])?;
        }
        writeln!(f)?;
        for (label, row) in self.row_labels.iter().zip(&cells) {
            write!(f, "{label:label_w$}")?;
            for (j, c) in row.iter().enumerate() {
                write!(f, "  {:>w$}", c, w = widths[j])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Serialized as `{ "rows": [...], "columns": [...], "entries": [[...]...] }`.
impl Serialize for RatMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            rows: &'a [String],
            columns: &'a [String],
            entries: Vec<Vec<Rational>>,
        }
        Wire {
            rows: &self.row_labels,
            columns: &self.col_labels,
            entries: self.rows(),
        }
        .serialize(serializer)
    }
}
