//! Cohomology rings over a field under the Alexander–Whitney cup product.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::boundary_matrix;
use crate::linalg::{null_space, Coefficients, EchelonBasis, Field, PrimeField, Rationals};
use crate::simplicial::{Simplex, SimplicialComplex};

/// A `k`-cochain: one value per `k`-face, in lexicographic face order.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain<F: Field> {
    pub field: F,
    pub degree: usize,
    pub values: Vec<F::Elem>,
}

impl<F: Field> Cochain<F> {
    pub fn zero(complex: &SimplicialComplex, field: F, degree: usize) -> Self {
        let n = complex.faces(degree).len();
        Cochain {
            values: vec![field.zero(); n],
            field,
            degree,
        }
    }

    /// The constant 0-cochain 1, the unit of the cup product.
    pub fn unit(complex: &SimplicialComplex, field: F) -> Self {
        let n = complex.faces(0).len();
        Cochain {
            values: vec![field.one(); n],
            field,
            degree: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|x| self.field.is_zero(x))
    }

    fn check(&self, complex: &SimplicialComplex) -> Result<()> {
        let n = complex.faces(self.degree).len();
        if self.values.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{}-cochain has {} values, complex has {n} faces",
                self.degree,
                self.values.len()
            )));
        }
        Ok(())
    }
}

fn same_field<F: Field>(a: &F, b: &F) -> Result<()> {
    if a != b {
        return Err(Error::FieldMismatch(
            a.coefficients().to_string(),
            b.coefficients().to_string(),
        ));
    }
    Ok(())
}

/// `(α ⌣ β)[v_0..v_{k+l}] = α[v_0..v_k] · β[v_k..v_{k+l}]`.
pub fn cochain_cup<F: Field>(
    alpha: &Cochain<F>,
    beta: &Cochain<F>,
    complex: &SimplicialComplex,
) -> Result<Cochain<F>> {
    same_field(&alpha.field, &beta.field)?;
    alpha.check(complex)?;
    beta.check(complex)?;
    Ok(cup_values(
        &alpha.field,
        alpha.degree,
        &alpha.values,
        beta.degree,
        &beta.values,
        complex,
    ))
}

fn cup_values<F: Field>(
    field: &F,
    k: usize,
    a: &[F::Elem],
    l: usize,
    b: &[F::Elem],
    complex: &SimplicialComplex,
) -> Cochain<F> {
    let faces = complex.faces(k + l);
    let values = faces
        .iter()
        .map(|s| {
            let v = s.vertices();
            let front = complex
                .face_index(&Simplex::from_sorted(v[..=k].to_vec()))
                .expect("front face");
            let x = &a[front];
            if field.is_zero(x) {
                return field.zero();
            }
            let back = complex
                .face_index(&Simplex::from_sorted(v[k..].to_vec()))
                .expect("back face");
            field.mul(x, &b[back])
        })
        .collect();
    Cochain {
        field: field.clone(),
        degree: k + l,
        values,
    }
}

/// `(δα)[v_0..v_{k+1}] = Σ_j (-1)^j α[v_0..v̂_j..v_{k+1}]`.
pub fn coboundary<F: Field>(alpha: &Cochain<F>, complex: &SimplicialComplex) -> Result<Cochain<F>> {
    alpha.check(complex)?;
    let f = &alpha.field;
    let d = boundary_matrix(complex, alpha.degree + 1);
    let values = d
        .columns()
        .iter()
        .map(|col| {
            col.iter().fold(f.zero(), |acc, (r, sign)| {
                f.add(&acc, &f.mul(&f.from_bigint(sign), &alpha.values[*r]))
            })
        })
        .collect();
    Ok(Cochain {
        field: f.clone(),
        degree: alpha.degree + 1,
        values,
    })
}

/// A non-decreasing sequence of positive degrees.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct DegreeTuple(Vec<usize>);

impl TryFrom<Vec<usize>> for DegreeTuple {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        DegreeTuple::new(v)
    }
}

impl From<DegreeTuple> for Vec<usize> {
    fn from(t: DegreeTuple) -> Self {
        t.0
    }
}

impl DegreeTuple {
    /// Sorts the degrees; rejects an empty list or a zero degree.
    pub fn new(mut degrees: Vec<usize>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::InvalidArgument("degree tuple is empty".into()));
        }
        if degrees.contains(&0) {
            return Err(Error::InvalidArgument("degrees must be positive".into()));
        }
        degrees.sort_unstable();
        Ok(DegreeTuple(degrees))
    }

    pub fn degrees(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for DegreeTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Accepts `1,3` or `(1,3)`.
impl FromStr for DegreeTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let degrees = inner
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidArgument(format!("bad degree tuple `{s}`")))?;
        DegreeTuple::new(degrees)
    }
}

/// `H^*(K; F)` with a basis of cocycle representatives per degree and the
/// full table of products between basis classes.
#[derive(Clone, Debug)]
pub struct CohomologyAlgebra<F: Field> {
    field: F,
    complex: SimplicialComplex,
    /// `reps[k][i]` is a cocycle representing the `i`-th basis class of `H^k`.
    reps: Vec<Vec<Vec<F::Elem>>>,
    /// Coboundaries first, then the representatives, per degree.
    quotients: Vec<(EchelonBasis<F>, usize)>,
    /// `products[k][l][i][j]`: coordinates of `x_i · y_j` in `H^{k+l}`.
    products: Vec<Vec<Vec<Vec<Vec<F::Elem>>>>>,
}

impl<F: Field> CohomologyAlgebra<F> {
    /// Unreduced cohomology, so `H^0` contains the unit; all positive
    /// degrees agree with reduced cohomology.
    pub fn new(complex: &SimplicialComplex, field: F) -> Self {
        let dim = complex.dim();
        let mut reps = Vec::with_capacity(dim + 1);
        let mut quotients = Vec::with_capacity(dim + 1);
        for k in 0..=dim {
            let n = complex.faces(k).len();
            let mut basis = EchelonBasis::new(field.clone(), n);
            if k > 0 {
                // B^k is spanned by the rows of ∂_k
                let d = boundary_matrix(complex, k);
                let mut rows = vec![vec![field.zero(); n]; d.rows()];
                for (c, col) in d.columns().iter().enumerate() {
                    for (r, x) in col {
                        rows[*r][c] = field.from_bigint(x);
                    }
                }
                for row in &rows {
                    basis.insert(row);
                }
            }
            let b_rank = basis.rank();
            // Z^k is the kernel of δ_k, whose rows are the columns of ∂_{k+1}
            let up = boundary_matrix(complex, k + 1);
            let delta: Vec<Vec<F::Elem>> = up
                .columns()
                .iter()
                .map(|col| {
                    let mut row = vec![field.zero(); n];
                    for (r, x) in col {
                        row[*r] = field.from_bigint(x);
                    }
                    row
                })
                .collect();
            let cocycles = null_space(&field, &delta, n);
            let mut hk = Vec::new();
            for z in cocycles {
                if basis.insert(&z) {
                    hk.push(z);
                }
            }
            reps.push(hk);
            quotients.push((basis, b_rank));
        }
        let mut alg = CohomologyAlgebra {
            field,
            complex: complex.clone(),
            reps,
            quotients,
            products: Vec::new(),
        };
        alg.products = (0..=dim)
            .map(|k| {
                (0..=dim)
                    .map(|l| {
                        if k + l > dim {
                            return Vec::new();
                        }
                        (0..alg.reps[k].len())
                            .map(|i| {
                                (0..alg.reps[l].len())
                                    .map(|j| {
                                        let c = cup_values(
                                            &alg.field,
                                            k,
                                            &alg.reps[k][i],
                                            l,
                                            &alg.reps[l][j],
                                            &alg.complex,
                                        );
                                        alg.class_coordinates(k + l, &c.values)
                                            .expect("product of cocycles is a cocycle")
                                    })
                                    .collect()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        alg
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// `dim H^k` for `k = 0..=dim K`.
    pub fn dimensions(&self) -> Vec<usize> {
        self.reps.iter().map(Vec::len).collect()
    }

    pub fn dimension(&self, k: usize) -> usize {
        self.reps.get(k).map_or(0, Vec::len)
    }

    pub fn representative(&self, k: usize, i: usize) -> Cochain<F> {
        Cochain {
            field: self.field.clone(),
            degree: k,
            values: self.reps[k][i].clone(),
        }
    }

    fn class_coordinates(&self, k: usize, values: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if k >= self.quotients.len() {
            return values.iter().all(|x| self.field.is_zero(x)).then(Vec::new);
        }
        let (basis, b_rank) = &self.quotients[k];
        basis.coordinates(values).map(|c| c[*b_rank..].to_vec())
    }

    /// Coordinates of a cocycle's class in the basis of `H^k`; `None` when
    /// the cochain is not a cocycle.
    pub fn class_of(&self, cochain: &Cochain<F>) -> Result<Option<Vec<F::Elem>>> {
        same_field(&self.field, &cochain.field)?;
        cochain.check(&self.complex)?;
        if !coboundary(cochain, &self.complex)?.is_zero() {
            return Ok(None);
        }
        Ok(self.class_coordinates(cochain.degree, &cochain.values))
    }

    /// Product of basis classes `x^k_i · x^l_j` in coordinates of `H^{k+l}`.
    pub fn basis_product(&self, k: usize, i: usize, l: usize, j: usize) -> Vec<F::Elem> {
        if k + l >= self.reps.len() {
            return Vec::new();
        }
        self.products[k][l][i][j].clone()
    }

    /// Product of arbitrary classes given by coordinates.
    pub fn product(&self, k: usize, x: &[F::Elem], l: usize, y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dimension(k + l)];
        if out.is_empty() {
            return out;
        }
        for (i, a) in x.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                let ab = f.mul(a, b);
                for (o, p) in out.iter_mut().zip(&self.products[k][l][i][j]) {
                    *o = f.add(o, &f.mul(&ab, p));
                }
            }
        }
        out
    }

    /// Checks `x·y = (-1)^{|x||y|} y·x` on all pairs of basis classes.
    pub fn is_graded_commutative(&self) -> bool {
        let f = &self.field;
        let dim = self.reps.len() - 1;
        for k in 0..=dim {
            for l in 0..=dim - k {
                for i in 0..self.dimension(k) {
                    for j in 0..self.dimension(l) {
                        let xy = self.basis_product(k, i, l, j);
                        let mut yx = self.basis_product(l, j, k, i);
                        if (k * l) % 2 == 1 {
                            yx = yx.iter().map(|x| f.neg(x)).collect();
                        }
                        if xy != yx {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Checks `(x·y)·z = x·(y·z)` on all triples of basis classes.
    pub fn is_associative(&self) -> bool {
        let dim = self.reps.len() - 1;
        let f = &self.field;
        for k in 0..=dim {
            for l in 0..=dim - k {
                for m in 0..=dim - k - l {
                    for i in 0..self.dimension(k) {
                        for j in 0..self.dimension(l) {
                            for t in 0..self.dimension(m) {
                                let ek = unit_vector(f, self.dimension(k), i);
                                let el = unit_vector(f, self.dimension(l), j);
                                let em = unit_vector(f, self.dimension(m), t);
                                let left = self.product(k + l, &self.product(k, &ek, l, &el), m, &em);
                                let right = self.product(k, &ek, l + m, &self.product(l, &el, m, &em));
                                if left != right {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// All degree tuples of length at most `max_len` realized by a nonzero
    /// product of positive-degree classes.
    ///
    /// For a tuple `t`, the span of all products of classes of degrees `t`
    /// is tracked by a basis. Extending by a degree `d` multiplies that
    /// basis with the basis of `H^d`; by bilinearity this spans all
    /// products of the longer tuple. Zero spans are pruned, as are tuples
    /// whose total degree exceeds the dimension.
    pub fn essential_tuples(&self, max_len: usize) -> BTreeSet<DegreeTuple> {
        let mut found = BTreeSet::new();
        let dim = self.reps.len() - 1;
        for d in 1..=dim {
            if self.dimension(d) == 0 || max_len == 0 {
                continue;
            }
            let span: Vec<Vec<F::Elem>> = (0..self.dimension(d))
                .map(|i| unit_vector(&self.field, self.dimension(d), i))
                .collect();
            self.extend_tuples(vec![d], d, span, max_len, &mut found);
        }
        found
    }

    fn extend_tuples(
        &self,
        tuple: Vec<usize>,
        total: usize,
        span: Vec<Vec<F::Elem>>,
        max_len: usize,
        found: &mut BTreeSet<DegreeTuple>,
    ) {
        found.insert(DegreeTuple(tuple.clone()));
        if tuple.len() == max_len {
            return;
        }
        let last = *tuple.last().expect("non-empty");
        let dim = self.reps.len() - 1;
        for d in last..=dim.saturating_sub(total) {
            if d == 0 || self.dimension(d) == 0 || self.dimension(total + d) == 0 {
                continue;
            }
            let target = self.dimension(total + d);
            let mut basis = EchelonBasis::new(self.field.clone(), target);
            let mut next = Vec::new();
            for s in &span {
                for j in 0..self.dimension(d) {
                    let e = unit_vector(&self.field, self.dimension(d), j);
                    let p = self.product(total, s, d, &e);
                    if basis.insert(&p) {
                        next.push(p);
                    }
                }
            }
            if !next.is_empty() {
                let mut t = tuple.clone();
                t.push(d);
                self.extend_tuples(t, total + d, next, max_len, found);
            }
        }
    }

    /// Largest number of positive-degree classes with a nonzero product.
    pub fn cup_length(&self) -> usize {
        let dim = self.reps.len() - 1;
        self.essential_tuples(dim.max(1))
            .iter()
            .map(DegreeTuple::len)
            .max()
            .unwrap_or(0)
    }
}

fn unit_vector<F: Field>(f: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut v = vec![f.zero(); n];
    v[i] = f.one();
    v
}

/// Field-erased summary of a cohomology ring, for callers that pick the
/// coefficients at run time.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingSummary {
    pub coefficients: String,
    pub dimensions: Vec<usize>,
    pub cup_length: usize,
    pub essential: Vec<DegreeTuple>,
    pub graded_commutative: bool,
}

fn summarize<F: Field>(alg: &CohomologyAlgebra<F>, max_len: usize) -> RingSummary {
    RingSummary {
        coefficients: alg.field().coefficients().to_string(),
        dimensions: alg.dimensions(),
        cup_length: alg.cup_length(),
        essential: alg.essential_tuples(max_len).into_iter().collect(),
        graded_commutative: alg.is_graded_commutative(),
    }
}

/// Builds the ring over `Q` or `F_p` and summarizes it.
pub fn ring_summary(
    complex: &SimplicialComplex,
    coeffs: Coefficients,
    max_len: usize,
) -> Result<RingSummary> {
    Ok(match coeffs.validate()? {
        Coefficients::Rational => summarize(&CohomologyAlgebra::new(complex, Rationals), max_len),
        Coefficients::Prime(p) => summarize(&CohomologyAlgebra::new(complex, PrimeField::new(p)?), max_len),
    })
}

pub fn cup_length(complex: &SimplicialComplex, coeffs: Coefficients) -> Result<usize> {
    Ok(match coeffs.validate()? {
        Coefficients::Rational => CohomologyAlgebra::new(complex, Rationals).cup_length(),
        Coefficients::Prime(p) => CohomologyAlgebra::new(complex, PrimeField::new(p)?).cup_length(),
    })
}

pub fn essential_tuples(
    complex: &SimplicialComplex,
    coeffs: Coefficients,
    max_len: usize,
) -> Result<BTreeSet<DegreeTuple>> {
    if max_len == 0 {
        return Err(Error::InvalidArgument("max_len must be at least 1".into()));
    }
    Ok(match coeffs.validate()? {
        Coefficients::Rational => CohomologyAlgebra::new(complex, Rationals).essential_tuples(max_len),
        Coefficients::Prime(p) => {
            CohomologyAlgebra::new(complex, PrimeField::new(p)?).essential_tuples(max_len)
        }
    })
}

/// One report line per tuple: `(i1,...,in) nonzero over <field>`.
pub fn essential_report(tuples: &BTreeSet<DegreeTuple>, coeffs: Coefficients) -> String {
    tuples
        .iter()
        .map(|t| format!("{t} nonzero over {coeffs}\n"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hollow_tetrahedron() -> SimplicialComplex {
        SimplicialComplex::boundary_sphere(3).unwrap()
    }

    #[test]
    fn unit_is_two_sided() {
        let k = hollow_tetrahedron();
        let f = PrimeField::new(7).unwrap();
        let one = Cochain::unit(&k, f);
        let mut a = Cochain::zero(&k, f, 1);
        for (i, x) in a.values.iter_mut().enumerate() {
            *x = (i as u64 * 3 + 1) % 7;
        }
        assert_eq!(cochain_cup(&one, &a, &k).unwrap(), a);
        assert_eq!(cochain_cup(&a, &one, &k).unwrap(), a);
    }

    #[test]
    fn field_mismatch_rejected() {
        let k = hollow_tetrahedron();
        let a = Cochain::unit(&k, PrimeField::new(2).unwrap());
        let b = Cochain::unit(&k, PrimeField::new(3).unwrap());
        assert!(matches!(cochain_cup(&a, &b, &k), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn sphere_ring_is_trivial() {
        let alg = CohomologyAlgebra::new(&hollow_tetrahedron(), Rationals);
        assert_eq!(alg.dimensions(), vec![1, 0, 1]);
        assert_eq!(alg.cup_length(), 1);
        assert_eq!(
            alg.essential_tuples(3).into_iter().collect::<Vec<_>>(),
            vec![DegreeTuple::new(vec![2]).unwrap()]
        );
        assert!(alg.is_graded_commutative());
    }

    #[test]
    fn acyclic_has_no_tuples() {
        let alg = CohomologyAlgebra::new(&SimplicialComplex::standard_simplex(3), Rationals);
        assert_eq!(alg.cup_length(), 0);
        assert!(alg.essential_tuples(4).is_empty());
    }

    #[test]
    fn class_of_coboundary_is_zero() {
        let k = hollow_tetrahedron();
        let alg = CohomologyAlgebra::new(&k, Rationals);
        let mut c = Cochain::zero(&k, Rationals, 0);
        c.values[1] = Rationals.one();
        let dc = coboundary(&c, &k).unwrap();
        assert_eq!(alg.class_of(&dc).unwrap(), Some(vec![]));
        assert_eq!(alg.class_of(&c).unwrap(), None);
    }

    #[test]
    fn tuple_parsing() {
        let t: DegreeTuple = "(3,1)".parse().unwrap();
        assert_eq!(t.degrees(), &[1, 3]);
        assert_eq!(t.to_string(), "(1,3)");
        assert!("0,1".parse::<DegreeTuple>().is_err());
    }
}
