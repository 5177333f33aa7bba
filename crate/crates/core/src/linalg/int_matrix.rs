use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Sparse integer matrix stored by column. Entries are kept sorted by row
/// and zeros are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, BigInt)>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix {
            rows: n,
            cols: n,
            columns: (0..n).map(|i| vec![(i, BigInt::one())]).collect(),
        }
    }

    /// Builds a matrix from `(row, col, value)` triples; repeated
    /// coordinates are summed.
    pub fn from_entries<T: Into<BigInt>>(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, T)>,
    ) -> Self {
        let mut columns: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); cols];
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r},{c}) out of bounds");
            columns[c].push((r, v.into()));
        }
        for col in &mut columns {
            col.sort_by_key(|e| e.0);
            let mut merged: Vec<(usize, BigInt)> = Vec::with_capacity(col.len());
            for (r, v) in col.drain(..) {
                match merged.last_mut() {
                    Some((lr, lv)) if *lr == r => *lv += v,
                    _ => merged.push((r, v)),
                }
            }
            merged.retain(|(_, v)| !v.is_zero());
            *col = merged;
        }
        IntMatrix { rows, cols, columns }
    }

    /// Builds from dense rows. All rows must have equal length.
    pub fn from_rows<T: Clone + Into<BigInt>>(rows: &[Vec<T>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        IntMatrix::from_entries(
            nrows,
            ncols,
            rows.iter().enumerate().flat_map(|(r, row)| {
                assert_eq!(row.len(), ncols, "ragged rows");
                row.iter().enumerate().map(move |(c, v)| (r, c, v.clone()))
            }),
        )
    }

    pub(crate) fn from_columns_unchecked(rows: usize, columns: Vec<Vec<(usize, BigInt)>>) -> Self {
        IntMatrix {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn column(&self, c: usize) -> &[(usize, BigInt)] {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[Vec<(usize, BigInt)>] {
        &self.columns
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.columns[c]
            .binary_search_by_key(&r, |e| e.0)
            .map(|i| self.columns[c][i].1.clone())
            .unwrap_or_default()
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                d[*r][c] = v.clone();
            }
        }
        d
    }

    pub fn transpose(&self) -> Self {
        IntMatrix::from_entries(
            self.cols,
            self.rows,
            self.columns
                .iter()
                .enumerate()
                .flat_map(|(c, col)| col.iter().map(move |(r, v)| (c, *r, v.clone()))),
        )
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let columns = other
            .columns
            .iter()
            .map(|ocol| {
                let mut acc = vec![BigInt::zero(); self.rows];
                for (k, b) in ocol {
                    for (r, a) in &self.columns[*k] {
                        acc[*r] += a * b;
                    }
                }
                acc.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        IntMatrix {
            rows: self.rows,
            cols: other.cols,
            columns,
        }
    }

    /// Keeps all columns except those listed.
    pub fn without_columns(&self, drop: &[usize]) -> IntMatrix {
        let columns = self
            .columns
            .iter()
            .enumerate()
            .filter(|(c, _)| !drop.contains(c))
            .map(|(_, col)| col.clone())
            .collect();
        IntMatrix::from_columns_unchecked(self.rows, columns)
    }

    /// Diagonal entries `(i, i)` for `i < min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }
}

/// Debug text form: one bracketed row per line.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{}", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_are_merged_and_zeros_dropped() {
        let m = IntMatrix::from_entries(2, 2, [(0, 0, 1), (0, 0, -1), (1, 1, 3), (1, 0, 2)]);
        assert_eq!(m.nnz(), 2);
        assert_eq!(m.get(1, 0), BigInt::from(2));
        assert_eq!(m.get(0, 0), BigInt::zero());
    }

    #[test]
    fn product_and_transpose() {
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let b = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(a.mul(&b), IntMatrix::from_rows(&[vec![2, 1], vec![4, 3]]));
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.mul(&IntMatrix::identity(2)), a);
        assert_eq!(format!("{a}"), "2x2\n[1 2]\n[3 4]\n");
    }
}
