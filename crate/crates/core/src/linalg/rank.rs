use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{Coefficients, IntMatrix};
use crate::error::{Error, Result};

/// Rank over `F_p` or `Q`.
pub fn rank_over_field(a: &IntMatrix, coeffs: Coefficients) -> Result<usize> {
    match coeffs.validate()? {
        Coefficients::Prime(p) => Ok(rank_over_prime(a, p)),
        Coefficients::Rational => Ok(rank_over_rationals(a)),
    }
}

/// Rank over `F_p` by sparse column reduction. `p` must be a validated
/// prime below `2^32`.
pub fn rank_over_prime(a: &IntMatrix, p: u64) -> usize {
    let modp = BigInt::from(p);
    let mut pivot_of_row: Vec<Option<usize>> = vec![None; a.rows()];
    let mut pivots: Vec<Vec<(usize, u64)>> = Vec::new();
    for col in a.columns() {
        let mut v: Vec<(usize, u64)> = col
            .iter()
            .map(|(r, x)| (*r, x.mod_floor(&modp).to_u64().expect("reduced")))
            .filter(|e| e.1 != 0)
            .collect();
        while let Some(&(r, x)) = v.last() {
            match pivot_of_row[r] {
                Some(pi) => {
                    let w = &pivots[pi];
                    let plow = w.last().expect("nonzero").1;
                    let f = x * inv_mod(plow, p) % p;
                    v = axpy_mod(&v, f, w, p);
                }
                None => {
                    pivot_of_row[r] = Some(pivots.len());
                    pivots.push(v);
                    break;
                }
            }
        }
    }
    pivots.len()
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// `v - f * w (mod p)` on sorted sparse columns.
fn axpy_mod(v: &[(usize, u64)], f: u64, w: &[(usize, u64)], p: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut a, mut b) = (0, 0);
    while a < v.len() || b < w.len() {
        let ra = v.get(a).map_or(usize::MAX, |e| e.0);
        let rb = w.get(b).map_or(usize::MAX, |e| e.0);
        if ra < rb {
            out.push(v[a]);
            a += 1;
        } else if rb < ra {
            out.push((rb, (p - f * w[b].1 % p) % p));
            b += 1;
        } else {
            let x = (v[a].1 + p - f * w[b].1 % p) % p;
            if x != 0 {
                out.push((ra, x));
            }
            a += 1;
            b += 1;
        }
    }
    out
}

/// Fraction-free reduction of `v` against columns with distinct lowest
/// rows. The result is a nonzero integer multiple of the exact residual
/// over `Q`, divided by its content.
fn reduce_fraction_free(
    mut v: Vec<(usize, BigInt)>,
    pivot_of_row: &[Option<usize>],
    pivots: &[Vec<(usize, BigInt)>],
) -> Vec<(usize, BigInt)> {
    while let Some((r, x)) = v.last().cloned() {
        let Some(pi) = pivot_of_row[r] else { break };
        let w = &pivots[pi];
        let plow = &w.last().expect("nonzero").1;
        let g = x.gcd(plow);
        let (sv, sw) = (plow / &g, &x / &g);
        v = combine(&v, &sv, w, &sw);
        make_primitive(&mut v);
    }
    v
}

/// `sv * v - sw * w` on sorted sparse columns.
fn combine(v: &[(usize, BigInt)], sv: &BigInt, w: &[(usize, BigInt)], sw: &BigInt) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut a, mut b) = (0, 0);
    while a < v.len() || b < w.len() {
        let ra = v.get(a).map_or(usize::MAX, |e| e.0);
        let rb = w.get(b).map_or(usize::MAX, |e| e.0);
        if ra < rb {
            out.push((ra, sv * &v[a].1));
            a += 1;
        } else if rb < ra {
            out.push((rb, -(sw * &w[b].1)));
            b += 1;
        } else {
            let x = sv * &v[a].1 - sw * &w[b].1;
            if !x.is_zero() {
                out.push((ra, x));
            }
            a += 1;
            b += 1;
        }
    }
    out
}

fn make_primitive(v: &mut [(usize, BigInt)]) {
    let g = v.iter().fold(BigInt::zero(), |g, e| g.gcd(&e.1));
    if g.is_zero() || g.is_one() {
        return;
    }
    for e in v.iter_mut() {
        e.1 /= &g;
    }
}

/// Rank over `Q` by fraction-free sparse column elimination.
pub fn rank_over_rationals(a: &IntMatrix) -> usize {
    pivot_columns_over_rationals(a).len()
}

/// Indices of columns that are independent of all columns to their left.
fn pivot_columns_over_rationals(a: &IntMatrix) -> Vec<usize> {
    let mut pivot_of_row: Vec<Option<usize>> = vec![None; a.rows()];
    let mut pivots: Vec<Vec<(usize, BigInt)>> = Vec::new();
    let mut independent = Vec::new();
    for (c, col) in a.columns().iter().enumerate() {
        let v = reduce_fraction_free(col.clone(), &pivot_of_row, &pivots);
        if let Some(&(r, _)) = v.last() {
            pivot_of_row[r] = Some(pivots.len());
            pivots.push(v);
            independent.push(c);
        }
    }
    independent
}

/// Chooses up to `budget` columns whose deletion leaves the column span
/// over `Q` unchanged.
///
/// Columns are scanned left to right; a column is removable when it lies in
/// the span of the columns before it. Returns the first `budget` such
/// columns, in increasing order.
pub fn image_preserving_column_removal(a: &IntMatrix, budget: usize) -> Result<Vec<usize>> {
    let independent = pivot_columns_over_rationals(a);
    let removable: Vec<usize> = (0..a.cols())
        .filter(|c| independent.binary_search(c).is_err())
        .collect();
    if removable.len() < budget {
        return Err(Error::BudgetUnachievable {
            requested: budget,
            available: removable.len(),
        });
    }
    Ok(removable[..budget].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_over_f2_and_q() {
        let a = IntMatrix::from_rows(&[vec![2]]);
        assert_eq!(rank_over_field(&a, Coefficients::Prime(2)), Ok(0));
        assert_eq!(rank_over_field(&a, Coefficients::Rational), Ok(1));
        assert_eq!(
            rank_over_field(&a, Coefficients::Prime(6)),
            Err(Error::NotPrime(6))
        );
    }

    #[test]
    fn identity_rank() {
        let a = IntMatrix::identity(4);
        for c in [
            Coefficients::Rational,
            Coefficients::Prime(2),
            Coefficients::Prime(13),
        ] {
            assert_eq!(rank_over_field(&a, c), Ok(4));
        }
    }

    #[test]
    fn duplicate_column_later_copy_removed() {
        let a = IntMatrix::from_rows(&[vec![1, 0, 1], vec![2, 1, 2]]);
        assert_eq!(image_preserving_column_removal(&a, 1), Ok(vec![2]));
        assert!(matches!(
            image_preserving_column_removal(&a, 2),
            Err(Error::BudgetUnachievable {
                requested: 2,
                available: 1
            })
        ));
    }
}
