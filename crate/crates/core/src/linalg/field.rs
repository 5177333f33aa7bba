use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::Coefficients;
use crate::error::Result;

/// Arithmetic of a coefficient field, carried as a runtime value so prime
/// fields of different characteristic share one type.
pub trait Field: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn coefficients(&self) -> Coefficients;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, x: i64) -> Self::Elem;
    fn from_bigint(&self, x: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        Coefficients::Prime(p).validate()?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn coefficients(&self) -> Coefficients {
        Coefficients::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }
    fn from_bigint(&self, x: &BigInt) -> u64 {
        x.mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("reduced mod p")
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero in F_{}", self.p);
        // Fermat
        let (mut base, mut exp, mut acc) = (*a, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn coefficients(&self) -> Coefficients {
        Coefficients::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }
    fn from_bigint(&self, x: &BigInt) -> BigRational {
        BigRational::from_integer(x.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero in Q");
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

fn first_nonzero<F: Field>(field: &F, v: &[F::Elem]) -> Option<usize> {
    v.iter().position(|x| !field.is_zero(x))
}

/// `v -= c * w`, entrywise.
fn axpy<F: Field>(field: &F, v: &mut [F::Elem], c: &F::Elem, w: &[F::Elem]) {
    for (a, b) in v.iter_mut().zip(w) {
        if !field.is_zero(b) {
            *a = field.sub(a, &field.mul(c, b));
        }
    }
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref<F: Field>(field: &F, rows: &mut [Vec<F::Elem>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !field.is_zero(&row[c]) {
                let f = row[c].clone();
                axpy(field, row, &f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a dense matrix given by rows.
pub fn rank<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut m = rows.to_vec();
    rref(field, &mut m, ncols).len()
}

/// Basis of `{x : A x = 0}` for `A` given by rows with `ncols` columns.
///
/// One basis vector per free column, in increasing column order, with a 1
/// in that free position.
pub fn null_space<F: Field>(field: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Vec<Vec<F::Elem>> {
    let mut m = rows.to_vec();
    let pivots = rref(field, &mut m, ncols);
    let mut is_pivot = vec![None; ncols];
    for (r, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    (0..ncols)
        .filter(|&c| is_pivot[c].is_none())
        .map(|free| {
            let mut x = vec![field.zero(); ncols];
            x[free] = field.one();
            for (r, &c) in pivots.iter().enumerate() {
                x[c] = field.neg(&m[r][free]);
            }
            x
        })
        .collect()
}

/// An incrementally built echelon basis of a subspace of `F^dim`, which
/// remembers how each basis row is expressed in terms of the inserted
/// generators.
#[derive(Clone, Debug)]
pub struct EchelonBasis<F: Field> {
    field: F,
    dim: usize,
    rows: Vec<EchelonRow<F>>,
}

#[derive(Clone, Debug)]
struct EchelonRow<F: Field> {
    pivot: usize,
    vector: Vec<F::Elem>,
    combo: Vec<F::Elem>,
}

impl<F: Field> EchelonBasis<F> {
    pub fn new(field: F, dim: usize) -> Self {
        EchelonBasis {
            field,
            dim,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of independent generators inserted so far.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; returns the residual and the
    /// coefficients `c` with `v = residual + sum_g c[g] * generator_g`.
    fn reduce(&self, v: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
        let f = &self.field;
        let mut res = v.to_vec();
        let mut coords = vec![f.zero(); self.rows.len()];
        for row in &self.rows {
            let c = res[row.pivot].clone();
            if f.is_zero(&c) {
                continue;
            }
            axpy(f, &mut res, &c, &row.vector);
            for (acc, x) in coords.iter_mut().zip(&row.combo) {
                *acc = f.add(acc, &f.mul(&c, x));
            }
        }
        (res, coords)
    }

    /// Inserts `v`; returns `true` when it was independent of the basis.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let (res, coords) = self.reduce(v);
        let Some(pivot) = first_nonzero(&self.field, &res) else {
            return false;
        };
        let f = &self.field;
        let inv = f.inv(&res[pivot]);
        let g = self.rows.len();
        let mut combo: Vec<F::Elem> = coords.iter().map(|c| f.neg(c)).collect();
        combo.push(f.one());
        for row in &mut self.rows {
            row.combo.push(f.zero());
        }
        let vector = res.iter().map(|x| f.mul(x, &inv)).collect();
        let combo = combo.iter().map(|x| f.mul(x, &inv)).collect();
        debug_assert_eq!(g, self.rows.len());
        self.rows.push(EchelonRow { pivot, vector, combo });
        true
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let (res, _) = self.reduce(v);
        first_nonzero(&self.field, &res).is_none()
    }

    /// Coordinates of `v` in terms of the independent generators, in
    /// insertion order, or `None` when `v` lies outside the span.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let (res, coords) = self.reduce(v);
        if first_nonzero(&self.field, &res).is_some() {
            return None;
        }
        Some(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.inv(&3), 5);
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.from_bigint(&BigInt::from(-15)), 6);
        assert!(PrimeField::new(9).is_err());
    }

    #[test]
    fn null_space_dimension() {
        let q = Rationals;
        let rows: Vec<Vec<BigRational>> = [[1, 2, 3], [2, 4, 6]]
            .iter()
            .map(|r| r.iter().map(|&x| q.from_i64(x)).collect())
            .collect();
        let ns = null_space(&q, &rows, 3);
        assert_eq!(ns.len(), 2);
        for x in &ns {
            let dot: BigRational = rows[0].iter().zip(x).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
        assert_eq!(rank(&q, &rows), 1);
    }

    #[test]
    fn echelon_coordinates() {
        let f = PrimeField::new(5).unwrap();
        let mut e = EchelonBasis::new(f, 3);
        assert!(e.insert(&[1, 2, 0]));
        assert!(!e.insert(&[2, 4, 0]));
        assert!(e.insert(&[0, 1, 1]));
        let v = [1, 3, 1]; // g0 + g1
        assert_eq!(e.coordinates(&v), Some(vec![1, 1]));
        assert_eq!(e.coordinates(&[0, 0, 1]), None);
        assert!(e.contains(&[3, 1, 0]));
    }
}
