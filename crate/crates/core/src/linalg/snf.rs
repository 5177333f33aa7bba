use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::IntMatrix;

/// Smith normal form `U * A * V = D` with `U`, `V` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Nonzero diagonal entries of `D`, positive, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
}

impl SnfDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

/// Smith normal form with transforms.
///
/// Each step takes the nonzero entry of least absolute value in the active
/// block (ties broken by lowest row, then column) as pivot. Output is fully
/// determined by the input.
pub fn smith_normal_form(a: &IntMatrix) -> SnfDecomposition {
    let mut m = a.to_dense();
    let mut u = IntMatrix::identity(a.rows()).to_dense();
    let mut v = IntMatrix::identity(a.cols()).to_dense();
    let rank = dense_snf(&mut m, Some((&mut u, &mut v)));
    let invariant_factors = (0..rank).map(|i| m[i][i].clone()).collect();
    SnfDecomposition {
        d: IntMatrix::from_rows(&m),
        u: IntMatrix::from_rows(&u),
        v: IntMatrix::from_rows(&v),
        invariant_factors,
    }
}

/// Invariant factors only, without transforms.
///
/// Runs a sparse elimination on unit pivots in machine integers first and
/// hands only the residual block to the dense routine. Any intermediate
/// overflow restarts the whole computation in arbitrary precision.
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    sparse_unit_elimination(a).unwrap_or_else(|| dense_invariant_factors(a.to_dense()))
}

pub(crate) fn dense_invariant_factors(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rank = dense_snf(&mut m, None);
    (0..rank).map(|i| m[i][i].clone()).collect()
}

type Transforms<'a> = Option<(&'a mut Vec<Vec<BigInt>>, &'a mut Vec<Vec<BigInt>>)>;

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

/// `row_dst -= q * row_src`
fn row_axpy(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    let (s, d) = if src < dst {
        let (lo, hi) = m.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    };
    for (x, y) in d.iter_mut().zip(s) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

/// `col_dst -= q * col_src`
fn col_axpy(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        if !row[src].is_zero() {
            let t = q * &row[src];
            row[dst] -= t;
        }
    }
}

/// In-place diagonalisation. Returns the rank; afterwards `m[i][i]` for
/// `i < rank` are the invariant factors.
fn dense_snf(m: &mut [Vec<BigInt>], mut tr: Transforms<'_>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut t = 0;
    while t < rows.min(cols) {
        // global pivot: least |entry|, lowest (row, col)
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = &m[i][j];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        move_to_pivot(m, &mut tr, t, pi, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !m[i][t].is_zero() {
                    let q = m[i][t].div_floor(&m[t][t]);
                    row_axpy(m, i, t, &q);
                    if let Some((u, _)) = tr.as_mut() {
                        row_axpy(u, i, t, &q);
                    }
                    dirty |= !m[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !m[t][j].is_zero() {
                    let q = m[t][j].div_floor(&m[t][t]);
                    col_axpy(m, j, t, &q);
                    if let Some((_, v)) = tr.as_mut() {
                        col_axpy(v, j, t, &q);
                    }
                    dirty |= !m[t][j].is_zero();
                }
            }
            if dirty {
                // a remainder smaller than the pivot survived: promote it
                let mut best: Option<(usize, usize)> = None;
                let cands = (t + 1..cols).map(|j| (t, j)).chain((t + 1..rows).map(|i| (i, t)));
                for (i, j) in cands {
                    let x = &m[i][j];
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
                let (bi, bj) = best.expect("dirty implies a nonzero remainder");
                move_to_pivot(m, &mut tr, t, bi, bj);
                continue;
            }
            // divisibility of the remaining block
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !m[i][j].is_multiple_of(&m[t][t]));
            match bad {
                Some((i, _)) => {
                    let one = BigInt::from(-1);
                    row_axpy(m, t, i, &one);
                    if let Some((u, _)) = tr.as_mut() {
                        row_axpy(u, t, i, &one);
                    }
                }
                None => break,
            }
        }
        if m[t][t].is_negative() {
            for x in m[t].iter_mut() {
                *x = -&*x;
            }
            if let Some((u, _)) = tr.as_mut() {
                for x in u[t].iter_mut() {
                    *x = -&*x;
                }
            }
        }
        t += 1;
    }
    t
}

fn move_to_pivot(m: &mut [Vec<BigInt>], tr: &mut Transforms<'_>, t: usize, i: usize, j: usize) {
    m.swap(t, i);
    swap_cols(m, t, j);
    if let Some((u, v)) = tr.as_mut() {
        u.swap(t, i);
        swap_cols(v, t, j);
    }
}

type SparseCol = Vec<(u32, i64)>;

/// `v - f * w` on sorted sparse columns; `None` on overflow.
fn sparse_axpy(v: &SparseCol, f: i64, w: &SparseCol) -> Option<SparseCol> {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut a, mut b) = (0, 0);
    while a < v.len() || b < w.len() {
        let ra = v.get(a).map_or(u32::MAX, |e| e.0);
        let rb = w.get(b).map_or(u32::MAX, |e| e.0);
        if ra < rb {
            out.push(v[a]);
            a += 1;
        } else if rb < ra {
            out.push((rb, f.checked_mul(w[b].1)?.checked_neg()?));
            b += 1;
        } else {
            let x = v[a].1.checked_sub(f.checked_mul(w[b].1)?)?;
            if x != 0 {
                out.push((ra, x));
            }
            a += 1;
            b += 1;
        }
    }
    Some(out)
}

/// Column reduction by lowest nonzero row, accepting only unit pivots.
///
/// Reduced columns with a unit lowest entry at distinct rows contribute one
/// invariant factor 1 each. The remaining columns are cleared on those
/// pivot rows and the residual block, restricted to non-pivot rows, goes to
/// the dense routine.
fn sparse_unit_elimination(a: &IntMatrix) -> Option<Vec<BigInt>> {
    let mut cols: Vec<SparseCol> = Vec::with_capacity(a.cols());
    for c in a.columns() {
        let mut col = Vec::with_capacity(c.len());
        for (r, v) in c {
            col.push((u32::try_from(*r).ok()?, v.to_i64()?));
        }
        cols.push(col);
    }
    let mut pivot_of_row: Vec<Option<usize>> = vec![None; a.rows()];
    let mut pivots: Vec<SparseCol> = Vec::new();
    let mut leftovers: Vec<SparseCol> = Vec::new();
    for mut v in cols {
        while let Some(&(r, x)) = v.last() {
            if let Some(p) = pivot_of_row[r as usize] {
                let plow = pivots[p].last().expect("pivot column is nonzero").1;
                v = sparse_axpy(&v, x.checked_mul(plow)?, &pivots[p])?;
            } else if x == 1 || x == -1 {
                pivot_of_row[r as usize] = Some(pivots.len());
                pivots.push(v);
                break;
            } else {
                leftovers.push(v);
                break;
            }
        }
    }
    let mut factors = vec![BigInt::one(); pivots.len()];
    if leftovers.is_empty() {
        return Some(factors);
    }
    for v in &mut leftovers {
        while let Some(&(r, x)) = v.iter().rev().find(|e| pivot_of_row[e.0 as usize].is_some()) {
            let p = pivot_of_row[r as usize].expect("checked");
            let plow = pivots[p].last().expect("nonzero").1;
            *v = sparse_axpy(v, x.checked_mul(plow)?, &pivots[p])?;
        }
    }
    let mut residual_rows: Vec<u32> = leftovers.iter().flatten().map(|e| e.0).collect();
    residual_rows.sort_unstable();
    residual_rows.dedup();
    let mut dense = vec![vec![BigInt::zero(); leftovers.len()]; residual_rows.len()];
    for (c, v) in leftovers.iter().enumerate() {
        for (r, x) in v {
            let i = residual_rows.binary_search(r).expect("collected");
            dense[i][c] = BigInt::from(*x);
        }
    }
    factors.extend(dense_invariant_factors(dense));
    Some(factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn diagonal_two_three() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.invariant_factors, ints(&[1, 6]));
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        assert_eq!(invariant_factors(&a), ints(&[1, 6]));
    }

    #[test]
    fn zero_matrix() {
        let a = IntMatrix::zeros(3, 2);
        assert!(smith_normal_form(&a).invariant_factors.is_empty());
        assert!(invariant_factors(&a).is_empty());
        assert!(invariant_factors(&IntMatrix::zeros(0, 4)).is_empty());
    }

    #[test]
    fn hollow_triangle_boundary() {
        // columns: edges 01, 02, 12; rows: vertices 0, 1, 2
        let a = IntMatrix::from_rows(&[vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.invariant_factors, ints(&[1, 1]));
        assert_eq!(invariant_factors(&a), ints(&[1, 1]));
    }

    #[test]
    fn torsion_survives_sparse_path() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        // classical example: SNF diag(2, 6, 12)
        assert_eq!(smith_normal_form(&a).invariant_factors, ints(&[2, 6, 12]));
        assert_eq!(invariant_factors(&a), ints(&[2, 6, 12]));
    }

    #[test]
    fn overflow_falls_back_to_bigints() {
        let big = i64::MAX / 2;
        let a = IntMatrix::from_rows(&[vec![1, big], vec![big, 1]]);
        let expected = smith_normal_form(&a).invariant_factors;
        assert_eq!(invariant_factors(&a), expected);
    }
}
