use covtype::cohomology::{coboundary, cochain_cup, Cochain};
use covtype::homology::{betti_over_field, boundary_matrix, homology_z};
use covtype::linalg::{smith_normal_form, Field, PrimeField};
use covtype::nerve::{nerve, star_cover};
use covtype::oracle::{enumerate_subcomplexes, EnumerationConfig, Visit};
use covtype::{Coefficients, CohomologyAlgebra, IntMatrix, SimplicialComplex};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

/// Complexes on at most 6 vertices given by up to 6 random facets.
fn complex() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0usize..6, 1..5), 1..7)
        .prop_map(|facets| SimplicialComplex::from_facets(facets).unwrap())
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..7, 1usize..7)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..10, c), r))
}

/// Fraction-free determinant, as an oracle for unimodularity.
fn determinant(m: &IntMatrix) -> BigInt {
    let mut a = m.to_dense();
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn smith_form_factorizes(rows in matrix()) {
        let a = IntMatrix::from_rows(&rows);
        let snf = smith_normal_form(&a);
        prop_assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.d.clone());
        prop_assert!(determinant(&snf.u).abs().is_one());
        prop_assert!(determinant(&snf.v).abs().is_one());
        let diag = snf.d.diagonal();
        let nonzero: Vec<&BigInt> = diag.iter().filter(|x| !x.is_zero()).collect();
        prop_assert_eq!(nonzero.len(), snf.rank());
        prop_assert!(diag[..nonzero.len()].iter().all(|x| x.is_positive()));
        for w in nonzero.windows(2) {
            prop_assert!((w[1] % w[0]).is_zero());
        }
    }

    #[test]
    fn complex_invariants(k in complex(), l in complex()) {
        for d in 1..=k.dim() + 1 {
            prop_assert!(boundary_matrix(&k, d - 1).mul(&boundary_matrix(&k, d)).is_zero());
        }
        let h = homology_z(&k);
        prop_assert_eq!(homology_z(&k.suspension()), h.shifted());
        prop_assert_eq!(h.euler_characteristic(), k.euler_characteristic());
        for p in [2, 3] {
            prop_assert_eq!(betti_over_field(&k, Coefficients::Prime(p)).unwrap(), {
                let mut b = h.betti_mod_p(p);
                b.resize(k.dim() + 1, 0);
                b
            });
        }
        let w = k.wedge_top(&l);
        let hl = homology_z(&l);
        let hw = homology_z(&w);
        for d in 0..=w.dim() {
            prop_assert_eq!(hw.betti(d), h.betti(d) + hl.betti(d));
        }
        let relabeled = k.relabeled();
        prop_assert_eq!(nerve(&star_cover(&relabeled), &relabeled).unwrap(), relabeled);
    }

    #[test]
    fn cup_product_structure(k in complex(), seed in any::<u64>()) {
        let f = PrimeField::new(3).unwrap();
        let random = |deg: usize, salt: u64| {
            let mut c = Cochain::zero(&k, f, deg);
            for (i, x) in c.values.iter_mut().enumerate() {
                *x = (seed.rotate_left(i as u32 + salt as u32) ^ (i as u64 * 0x9e37)) % 3;
            }
            c
        };
        for p in 0..k.dim() {
            for q in 0..k.dim() - p {
                let a = random(p, 1);
                let b = random(q, 7);
                let lhs = coboundary(&cochain_cup(&a, &b, &k).unwrap(), &k).unwrap();
                let left = cochain_cup(&coboundary(&a, &k).unwrap(), &b, &k).unwrap();
                let right = cochain_cup(&a, &coboundary(&b, &k).unwrap(), &k).unwrap();
                let sign = if p % 2 == 0 { f.one() } else { f.neg(&f.one()) };
                let rhs: Vec<u64> = left.values.iter().zip(&right.values)
                    .map(|(x, y)| f.add(x, &f.mul(&sign, y)))
                    .collect();
                prop_assert_eq!(lhs.values, rhs);
            }
        }
        prop_assert!(CohomologyAlgebra::new(&k, f).is_graded_commutative());
    }
}

#[test]
fn visited_families_are_closed() {
    let sample = enumerate_subcomplexes(5, &EnumerationConfig::default(), |f| {
        (Visit::Descend, (f.mask() % 7 == 0).then_some(*f))
    })
    .unwrap()
    .outputs;
    assert!(sample.len() > 10);
    assert!(sample.iter().all(|f| f.is_closed()));
}
