//! Reduced simplicial homology over the integers and over fields.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{invariant_factors, rank_over_field, Coefficients, IntMatrix};
use crate::parallel::{map_range, Execution};
use crate::simplicial::SimplicialComplex;

/// Matrix of `∂_k` from `k`-faces (columns) to `(k-1)`-faces (rows), both
/// in lexicographic order. `∂_0` is the augmentation: one row of ones.
pub fn boundary_matrix(complex: &SimplicialComplex, k: usize) -> IntMatrix {
    let cols = complex.faces(k);
    if k == 0 {
        return IntMatrix::from_entries(1, cols.len(), (0..cols.len()).map(|c| (0, c, 1)));
    }
    let rows = complex.faces(k - 1);
    let entries = cols.iter().enumerate().flat_map(|(c, s)| {
        s.boundary().map(move |(sign, face)| {
            let r = complex.face_index(&face).expect("closed under faces");
            (r, c, sign)
        })
    });
    IntMatrix::from_entries(rows.len(), cols.len(), entries.collect::<Vec<_>>())
}

/// Homology in one degree: a free rank and prime-power torsion orders.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeHomology {
    pub betti: usize,
    /// Prime powers, ascending.
    pub torsion: Vec<u64>,
}

impl DegreeHomology {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

/// Reduced homology, one entry per degree starting at 0.
///
/// Equality ignores trailing zero degrees, so a profile computed up to the
/// dimension of a complex compares equal to a hand-written target that
/// stops at its last nonzero degree.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyProfile {
    pub fn new(degrees: Vec<DegreeHomology>) -> Self {
        HomologyProfile { degrees }
    }

    /// `Z^rank ⊕ torsion` in degree `degree`, zero elsewhere.
    pub fn concentrated(degree: usize, rank: usize, torsion: &[u64]) -> Result<Self> {
        let mut degrees = vec![DegreeHomology::default(); degree + 1];
        degrees[degree] = DegreeHomology {
            betti: rank,
            torsion: normalize_torsion(torsion)?,
        };
        Ok(HomologyProfile { degrees })
    }

    /// Profile with the given reduced Betti numbers and no torsion.
    pub fn from_betti(betti: &[usize]) -> Self {
        HomologyProfile {
            degrees: betti
                .iter()
                .map(|&b| DegreeHomology {
                    betti: b,
                    torsion: Vec::new(),
                })
                .collect(),
        }
    }

    fn trimmed(&self) -> &[DegreeHomology] {
        let end = self
            .degrees
            .iter()
            .rposition(|d| !d.is_zero())
            .map_or(0, |i| i + 1);
        &self.degrees[..end]
    }

    pub fn betti(&self, k: usize) -> usize {
        self.degrees.get(k).map_or(0, |d| d.betti)
    }

    pub fn torsion(&self, k: usize) -> &[u64] {
        self.degrees.get(k).map_or(&[], |d| &d.torsion)
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    /// True for an acyclic complex.
    pub fn is_trivial(&self) -> bool {
        self.trimmed().is_empty()
    }

    /// Degrees with nonzero homology.
    pub fn nonzero_degrees(&self) -> Vec<usize> {
        (0..self.degrees.len())
            .filter(|&k| !self.degrees[k].is_zero())
            .collect()
    }

    /// Highest degree with nonzero homology.
    pub fn top_degree(&self) -> Option<usize> {
        self.nonzero_degrees().last().copied()
    }

    /// Betti numbers over `F_p` predicted by universal coefficients.
    pub fn betti_mod_p(&self, p: u64) -> Vec<usize> {
        let hits = |k: usize| self.torsion(k).iter().filter(|&&t| t % p == 0).count();
        (0..self.degrees.len())
            .map(|k| self.betti(k) + hits(k) + if k > 0 { hits(k - 1) } else { 0 })
            .collect()
    }

    /// Alternating sum of reduced Betti numbers plus one.
    pub fn euler_characteristic(&self) -> i64 {
        1 + self
            .degrees
            .iter()
            .enumerate()
            .map(|(k, d)| {
                if k % 2 == 0 {
                    d.betti as i64
                } else {
                    -(d.betti as i64)
                }
            })
            .sum::<i64>()
    }

    /// The same profile moved up one degree, as for a suspension.
    pub fn shifted(&self) -> Self {
        let mut degrees = vec![DegreeHomology::default()];
        degrees.extend(self.degrees.iter().cloned());
        HomologyProfile { degrees }
    }
}

impl PartialEq for HomologyProfile {
    fn eq(&self, other: &Self) -> bool {
        self.trimmed() == other.trimmed()
    }
}

impl Eq for HomologyProfile {}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, d) in self.degrees.iter().enumerate() {
            let t: Vec<String> = d.torsion.iter().map(u64::to_string).collect();
            writeln!(f, "{k}: betti={} torsion=[{}]", d.betti, t.join(","))?;
        }
        Ok(())
    }
}

/// Parses the line format written by `Display`. Blank lines and `#`
/// comments are skipped; degrees that are not listed are zero.
impl FromStr for HomologyProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut degrees: Vec<DegreeHomology> = Vec::new();
        for (n, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |m: &str| Error::Parse {
                line: n + 1,
                message: m.to_string(),
            };
            let (deg, rest) = line.split_once(':').ok_or_else(|| bad("expected `k: ...`"))?;
            let k: usize = deg.trim().parse().map_err(|_| bad("bad degree"))?;
            let mut entry = DegreeHomology::default();
            for field in rest.split_whitespace() {
                if let Some(b) = field.strip_prefix("betti=") {
                    entry.betti = b.parse().map_err(|_| bad("bad betti number"))?;
                } else if let Some(t) = field.strip_prefix("torsion=") {
                    let inner = t
                        .strip_prefix('[')
                        .and_then(|t| t.strip_suffix(']'))
                        .ok_or_else(|| bad("torsion must be bracketed"))?;
                    let orders = inner
                        .split(',')
                        .filter(|x| !x.trim().is_empty())
                        .map(|x| x.trim().parse::<u64>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| bad("bad torsion order"))?;
                    entry.torsion = normalize_torsion(&orders).map_err(|e| bad(&e.to_string()))?;
                } else {
                    return Err(bad(&format!("unknown field `{field}`")));
                }
            }
            if degrees.len() <= k {
                degrees.resize(k + 1, DegreeHomology::default());
            }
            degrees[k] = entry;
        }
        Ok(HomologyProfile { degrees })
    }
}

/// Splits each order into prime powers and sorts. Orders below 2 are
/// rejected.
pub fn normalize_torsion(orders: &[u64]) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for &t in orders {
        if t < 2 {
            return Err(Error::InvalidProfile(format!("torsion order {t} is below 2")));
        }
        out.extend(prime_power_parts(t));
    }
    out.sort_unstable();
    Ok(out)
}

fn prime_power_parts(mut n: u64) -> Vec<u64> {
    let mut parts = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut q = 1;
            while n.is_multiple_of(p) {
                n /= p;
                q *= p;
            }
            parts.push(q);
        }
        p += 1;
    }
    if n > 1 {
        parts.push(n);
    }
    parts
}

fn torsion_from_factors(factors: &[BigInt]) -> Vec<u64> {
    let orders: Vec<u64> = factors
        .iter()
        .filter(|d| !d.is_one())
        .map(|d| d.to_u64().expect("torsion order exceeds 64 bits"))
        .collect();
    normalize_torsion(&orders).expect("invariant factors exceed 1")
}

/// Reduced integral homology in degrees `0..=dim`.
pub fn homology_z(complex: &SimplicialComplex) -> HomologyProfile {
    homology_z_with(complex, Execution::default())
}

/// [`homology_z`] with an explicit execution mode for the per-degree
/// Smith normal forms.
pub fn homology_z_with(complex: &SimplicialComplex, exec: Execution) -> HomologyProfile {
    let dim = complex.dim();
    // factors[k] are the invariant factors of ∂_k, k = 0..=dim+1
    let factors = map_range(exec, dim + 2, |k| invariant_factors(&boundary_matrix(complex, k)));
    let degrees = (0..=dim)
        .map(|k| DegreeHomology {
            betti: complex.faces(k).len() - factors[k].len() - factors[k + 1].len(),
            torsion: torsion_from_factors(&factors[k + 1]),
        })
        .collect();
    HomologyProfile { degrees }
}

/// Reduced Betti numbers over `Q` or `F_p` in degrees `0..=dim`.
pub fn betti_over_field(complex: &SimplicialComplex, coeffs: Coefficients) -> Result<Vec<usize>> {
    betti_over_field_with(complex, coeffs, Execution::default())
}

pub fn betti_over_field_with(
    complex: &SimplicialComplex,
    coeffs: Coefficients,
    exec: Execution,
) -> Result<Vec<usize>> {
    coeffs.validate()?;
    let dim = complex.dim();
    let ranks = map_range(exec, dim + 2, |k| {
        rank_over_field(&boundary_matrix(complex, k), coeffs)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok((0..=dim)
        .map(|k| complex.faces(k).len() - ranks[k] - ranks[k + 1])
        .collect())
}

/// A Moore space type `M(Z^rank ⊕ Z_{t_1} ⊕ ..., degree)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MooreSpec {
    pub rank: usize,
    pub torsion: Vec<u64>,
    pub degree: usize,
}

impl MooreSpec {
    pub fn new(rank: usize, torsion: &[u64], degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidProfile(
                "Moore spaces need degree at least 1".into(),
            ));
        }
        Ok(MooreSpec {
            rank,
            torsion: normalize_torsion(torsion)?,
            degree,
        })
    }

    pub fn profile(&self) -> HomologyProfile {
        HomologyProfile::concentrated(self.degree, self.rank, &self.torsion)
            .expect("torsion already normalized")
    }
}

impl fmt::Display for MooreSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 || self.torsion.is_empty() {
            parts.push(match self.rank {
                1 => "Z".to_string(),
                r => format!("Z^{r}"),
            });
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z_{t}")));
        write!(f, "M({}, {})", parts.join(" + "), self.degree)
    }
}

/// Whether the integral homology of `complex` is exactly that of the Moore
/// space. This certifies homology only, not homotopy type.
pub fn matches_moore(complex: &SimplicialComplex, spec: &MooreSpec) -> bool {
    homology_z(complex) == spec.profile()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(f: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(f.iter().map(|s| s.to_vec())).unwrap()
    }

    #[test]
    fn hollow_triangle_boundary() {
        let c = SimplicialComplex::boundary_sphere(2).unwrap();
        let d1 = boundary_matrix(&c, 1);
        assert_eq!((d1.rows(), d1.cols()), (3, 3));
        for col in d1.columns() {
            let vals: Vec<i64> = col.iter().map(|e| e.1.to_i64().unwrap()).collect();
            assert_eq!(vals, vec![-1, 1]);
        }
        assert_eq!(boundary_matrix(&c, 0).nnz(), 3);
        assert_eq!(boundary_matrix(&c, 2).cols(), 0);
    }

    #[test]
    fn sphere_and_point() {
        for n in 1..=6 {
            let s = SimplicialComplex::boundary_sphere(n).unwrap();
            assert_eq!(
                homology_z(&s),
                HomologyProfile::concentrated(n - 1, 1, &[]).unwrap()
            );
        }
        assert!(homology_z(&SimplicialComplex::standard_simplex(0)).is_trivial());
        assert!(homology_z(&SimplicialComplex::standard_simplex(4)).is_trivial());
    }

    #[test]
    fn discrete_points_reduced() {
        let c = cx(&[&[0], &[1], &[2], &[3]]);
        assert_eq!(homology_z(&c).betti(0), 3);
    }

    #[test]
    fn simplex_boundary_rank_by_exactness() {
        let d = boundary_matrix(&SimplicialComplex::standard_simplex(6), 3);
        assert_eq!(invariant_factors(&d).len(), 20);
    }

    #[test]
    fn field_betti_of_sphere() {
        let s = SimplicialComplex::boundary_sphere(4).unwrap();
        for c in [
            Coefficients::Rational,
            Coefficients::Prime(2),
            Coefficients::Prime(5),
        ] {
            assert_eq!(betti_over_field(&s, c).unwrap(), vec![0, 0, 0, 1]);
        }
        assert_eq!(
            betti_over_field(&s, Coefficients::Prime(4)),
            Err(Error::NotPrime(4))
        );
    }

    #[test]
    fn moore_matching() {
        let k5 = SimplicialComplex::standard_simplex(4).skeleton(1);
        assert!(matches_moore(&k5, &MooreSpec::new(6, &[], 1).unwrap()));
        let s2 = SimplicialComplex::boundary_sphere(3).unwrap();
        assert!(!matches_moore(&s2, &MooreSpec::new(1, &[], 1).unwrap()));
        assert_eq!(
            MooreSpec::new(2, &[6], 1).unwrap().to_string(),
            "M(Z^2 + Z_2 + Z_3, 1)"
        );
    }

    #[test]
    fn profile_text_roundtrip() {
        let p = HomologyProfile::new(vec![
            DegreeHomology::default(),
            DegreeHomology {
                betti: 2,
                torsion: vec![2, 4],
            },
        ]);
        let text = p.to_string();
        assert_eq!(text, "0: betti=0 torsion=[]\n1: betti=2 torsion=[2,4]\n");
        assert_eq!(text.parse::<HomologyProfile>().unwrap(), p);
        let sparse: HomologyProfile = "# torus\n2: betti=1\n1: betti=2 torsion=[]\n".parse().unwrap();
        assert_eq!(sparse, HomologyProfile::from_betti(&[0, 2, 1, 0]));
        assert!("1: betti=x".parse::<HomologyProfile>().is_err());
        assert_eq!(normalize_torsion(&[12, 5]).unwrap(), vec![3, 4, 5]);
    }
}
