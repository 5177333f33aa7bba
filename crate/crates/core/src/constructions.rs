//! Vertex-economical witnesses for Moore spaces and a corpus of standard
//! small triangulations.

use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::bounds::{
    binomial, cyclic_moore_bounds, moore_free_ct, wedge_upper, CITE_CYCLIC, CITE_FREE_MOORE,
};
use crate::error::{Error, Result};
use crate::homology::{boundary_matrix, homology_z, MooreSpec};
use crate::linalg::image_preserving_column_removal;
use crate::parallel::{map_slice, Execution};
use crate::simplicial::{Simplex, SimplicialComplex};

/// A constructed complex with the homology type it is claimed to realize.
///
/// `verified` is always recomputed from the complex, never taken from the
/// construction. It certifies homology only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessCertificate {
    pub complex: SimplicialComplex,
    pub claimed: MooreSpec,
    pub vertex_count: usize,
    pub verified: bool,
    pub bound_context: String,
}

impl WitnessCertificate {
    pub fn new(complex: SimplicialComplex, claimed: MooreSpec, bound_context: String) -> Self {
        let verified = homology_z(&complex) == claimed.profile();
        WitnessCertificate {
            vertex_count: complex.vertex_count(),
            complex,
            claimed,
            verified,
            bound_context,
        }
    }
}

impl fmt::Display for WitnessCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "claimed: {}", self.claimed)?;
        writeln!(f, "vertices: {}", self.vertex_count)?;
        writeln!(f, "f-vector: {}", self.complex.f_vector())?;
        writeln!(f, "verified: {} (homology-level certificate)", self.verified)?;
        writeln!(f, "context: {}", self.bound_context)
    }
}

/// Removal sets tried by the exhaustive fallback before giving up.
const FALLBACK_CANDIDATES: usize = 20_000;

/// A complex on `moore_free_ct(r, i)` vertices with homology `Z^r` in
/// degree `i`.
///
/// Starts from the `i`-skeleton of the simplex on `n` vertices and deletes
/// `C(n-1, i+1) - r` of its `i`-faces whose columns in `∂_i` lie in the span
/// of earlier columns, so the image of `∂_i` is unchanged. If integral
/// homology of the result is off, removal sets are searched exhaustively
/// up to a fixed number of candidates.
pub fn moore_free_witness(r: usize, i: usize) -> Result<WitnessCertificate> {
    if r == 0 || i == 0 {
        return Err(Error::InvalidArgument("need r >= 1 and i >= 1".into()));
    }
    let n = moore_free_ct(r as u64, i as u64) as usize;
    let spec = MooreSpec::new(r, &[], i)?;
    let skeleton = SimplicialComplex::standard_simplex(n - 1).skeleton(i);
    let excess = usize::try_from(binomial(n as u64 - 1, i as u64 + 1))
        .map_err(|_| Error::ConstructionFailed("face count overflow".into()))?
        - r;
    let context = format!("{CITE_FREE_MOORE}: ct = {n}");
    let d = boundary_matrix(&skeleton, i);
    let drop = image_preserving_column_removal(&d, excess)?;
    let candidate = remove_top_faces(&skeleton, i, &drop);
    let cert = WitnessCertificate::new(candidate, spec.clone(), context.clone());
    if cert.verified {
        return Ok(cert);
    }
    let faces = skeleton.faces(i).len();
    for drop in (0..faces).combinations(excess).take(FALLBACK_CANDIDATES) {
        let cert = WitnessCertificate::new(
            remove_top_faces(&skeleton, i, &drop),
            spec.clone(),
            context.clone(),
        );
        if cert.verified {
            return Ok(cert);
        }
    }
    Err(Error::ConstructionFailed(format!(
        "no removal set of {excess} {i}-faces on {n} vertices realizes {spec}"
    )))
}

/// Drops the listed `i`-faces (by lexicographic index) from an `i`-skeleton,
/// keeping every lower face.
fn remove_top_faces(skeleton: &SimplicialComplex, i: usize, drop: &[usize]) -> SimplicialComplex {
    let mut kept: Vec<Simplex> = skeleton
        .faces(i)
        .iter()
        .enumerate()
        .filter(|(c, _)| !drop.contains(c))
        .map(|(_, s)| s.clone())
        .collect();
    kept.extend(skeleton.faces(i - 1).iter().cloned());
    SimplicialComplex::from_simplices(kept).expect("non-empty")
}

/// Free Moore witnesses for every `1 <= r <= max_r`, `1 <= i <= max_i`,
/// ordered by degree, then rank.
pub fn moore_free_sweep(max_r: usize, max_i: usize, exec: Execution) -> Result<Vec<WitnessCertificate>> {
    let pairs: Vec<(usize, usize)> = (1..=max_i)
        .flat_map(|i| (1..=max_r).map(move |r| (r, i)))
        .collect();
    map_slice(exec, &pairs, |&(r, i)| moore_free_witness(r, i))
        .into_iter()
        .collect()
}

/// The mapping cone of the `k`-fold covering of a 3-vertex circle by a
/// `3k`-vertex circle: homology `Z_k` in degree 1, on `3k + 4` vertices.
///
/// Source vertices are `0..3k`, target vertices `3k..3k+3`, the cone apex
/// is `3k+3`. Source vertex `j` maps to target `j mod 3`; each edge of the
/// source circle spans a prism of two triangles over its image edge.
pub fn moore_cyclic_witness(k: usize) -> Result<WitnessCertificate> {
    if k < 2 {
        return Err(Error::InvalidArgument("torsion order must be at least 2".into()));
    }
    let m = 3 * k;
    let target = |a: usize| m + a;
    let apex = m + 3;
    let mut facets = Vec::with_capacity(3 * m);
    for j in 0..m {
        let (s, s1) = (j, (j + 1) % m);
        let (a, b) = (target(j % 3), target((j + 1) % 3));
        facets.push(vec![s, s1, b]);
        facets.push(vec![s, a, b]);
        facets.push(vec![s, s1, apex]);
    }
    let complex = SimplicialComplex::from_facets(facets)?;
    let (lo, hi) = cyclic_moore_bounds(k as u64, 1);
    let context = format!(
        "{CITE_CYCLIC}: {lo} <= ct <= {hi}; this witness has {} vertices and bounds \
         the vertex count of a triangulation, not ct",
        m + 4
    );
    Ok(WitnessCertificate::new(
        complex,
        MooreSpec::new(0, &[k as u64], 1)?,
        context,
    ))
}

/// A wedge of `M(Z^r, i)` and `M(Z_k, i)` for each `k` in `ks`.
///
/// Cyclic parts are the cyclic witnesses suspended `i - 1` times. Parts are
/// glued one after another along top-dimensional simplices.
pub fn moore_sum_witness(r: usize, ks: &[usize], i: usize) -> Result<WitnessCertificate> {
    if i == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    if r == 0 && ks.is_empty() {
        return Err(Error::InvalidArgument("the group must be nontrivial".into()));
    }
    let mut parts: Vec<SimplicialComplex> = Vec::new();
    if r > 0 {
        parts.push(moore_free_witness(r, i)?.complex);
    }
    for &k in ks {
        let mut c = moore_cyclic_witness(k)?.complex;
        for _ in 1..i {
            c = c.suspension();
        }
        parts.push(c);
    }
    let mut acc = parts[0].clone();
    // vertex count predicted by gluing along a simplex of the smaller dimension
    let mut predicted = acc.vertex_count() as u64;
    let mut dim = acc.dim() as u64;
    for p in &parts[1..] {
        predicted = wedge_upper(predicted, p.vertex_count() as u64, dim, p.dim() as u64);
        dim = dim.max(p.dim() as u64);
        acc = acc.wedge_top(p);
    }
    let torsion: Vec<u64> = ks.iter().map(|&k| k as u64).collect();
    let context = format!(
        "wedge of {} parts; gluing recursion predicts {predicted} vertices",
        parts.len()
    );
    Ok(WitnessCertificate::new(
        acc,
        MooreSpec::new(r, &torsion, i)?,
        context,
    ))
}

/// Names accepted by [`corpus`].
pub const CORPUS_NAMES: &[&str] = &["rp2_6", "torus_7", "klein_8", "sphere_product_1_1_9", "rp3_11"];

/// Six-vertex real projective plane: the hemi-icosahedron.
#[rustfmt::skip]
const RP2_6: &[[usize; 3]] = &[
    [0, 1, 2], [0, 1, 3], [0, 2, 4], [0, 3, 5], [0, 4, 5],
    [1, 2, 5], [1, 3, 4], [1, 4, 5], [2, 3, 4], [2, 3, 5],
];

/// Seven-vertex Möbius torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}`
/// modulo 7.
#[rustfmt::skip]
const TORUS_7: &[[usize; 3]] = &[
    [0, 1, 3], [0, 1, 5], [0, 2, 3], [0, 2, 6], [0, 4, 5], [0, 4, 6], [1, 2, 4],
    [1, 2, 6], [1, 3, 4], [1, 5, 6], [2, 3, 5], [2, 4, 5], [3, 4, 6], [3, 5, 6],
];

/// Eight-vertex Klein bottle, obtained from a twisted 5x5 grid by edge
/// contractions that satisfy the link condition.
#[rustfmt::skip]
const KLEIN_8: &[[usize; 3]] = &[
    [0, 1, 3], [0, 1, 4], [0, 2, 5], [0, 2, 6], [0, 3, 7], [0, 4, 5], [0, 6, 7], [1, 2, 6],
    [1, 2, 7], [1, 3, 5], [1, 4, 6], [1, 5, 7], [2, 3, 5], [2, 3, 7], [4, 5, 6], [5, 6, 7],
];

/// Eleven-vertex real projective 3-space with 41 tetrahedra: the antipodal
/// quotient of the barycentric subdivision of the boundary of the
/// 4-dimensional cross-polytope, reduced by link-condition edge
/// contractions. Every vertex link is a 2-sphere.
#[rustfmt::skip]
const RP3_11: &[[usize; 4]] = &[
    [0, 1, 4, 6], [0, 1, 4, 7], [0, 1, 6, 9], [0, 1, 7, 10], [0, 1, 9, 10], [0, 2, 3, 4],
    [0, 2, 3, 5], [0, 2, 4, 7], [0, 2, 5, 7], [0, 3, 4, 6], [0, 3, 5, 8], [0, 3, 6, 8],
    [0, 5, 7, 10], [0, 5, 8, 9], [0, 5, 9, 10], [0, 6, 8, 9], [1, 2, 3, 5], [1, 2, 3, 9],
    [1, 2, 5, 6], [1, 2, 6, 9], [1, 3, 5, 8], [1, 3, 7, 8], [1, 3, 7, 10], [1, 3, 9, 10],
    [1, 4, 5, 6], [1, 4, 5, 8], [1, 4, 7, 8], [2, 3, 4, 9], [2, 4, 7, 8], [2, 4, 8, 9],
    [2, 5, 6, 7], [2, 6, 7, 8], [2, 6, 8, 9], [3, 4, 6, 10], [3, 4, 9, 10], [3, 6, 7, 8],
    [3, 6, 7, 10], [4, 5, 6, 10], [4, 5, 8, 9], [4, 5, 9, 10], [5, 6, 7, 10],
];

/// The 3x3 product grid on `Z_3 x Z_3`: vertex `(a, b)` is `3a + b`, each
/// square split along its diagonal.
fn grid_torus_9() -> Vec<Vec<usize>> {
    let v = |a: usize, b: usize| 3 * (a % 3) + b % 3;
    let mut facets = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            facets.push(vec![v(a, b), v(a + 1, b), v(a + 1, b + 1)]);
            facets.push(vec![v(a, b), v(a, b + 1), v(a + 1, b + 1)]);
        }
    }
    facets
}

/// A named standard complex.
pub fn corpus(name: &str) -> Result<SimplicialComplex> {
    let rows = |f: &[[usize; 3]]| f.iter().map(|s| s.to_vec()).collect::<Vec<_>>();
    match name {
        "rp2_6" => SimplicialComplex::from_facets(rows(RP2_6)),
        "torus_7" => SimplicialComplex::from_facets(rows(TORUS_7)),
        "klein_8" => SimplicialComplex::from_facets(rows(KLEIN_8)),
        "sphere_product_1_1_9" => SimplicialComplex::from_facets(grid_torus_9()),
        "rp3_11" => SimplicialComplex::from_facets(RP3_11.iter().map(|s| s.to_vec())),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::HomologyProfile;

    #[test]
    fn corpus_homology() {
        let rp2 = corpus("rp2_6").unwrap();
        assert_eq!(rp2.vertex_count(), 6);
        assert_eq!(rp2.faces(2).len(), 10);
        assert_eq!(
            homology_z(&rp2),
            HomologyProfile::concentrated(1, 0, &[2]).unwrap()
        );
        let torus = corpus("torus_7").unwrap();
        assert_eq!(torus.f_vector().counts(), &[7, 21, 14]);
        assert_eq!(homology_z(&torus), HomologyProfile::from_betti(&[0, 2, 1]));
        let grid = corpus("sphere_product_1_1_9").unwrap();
        assert_eq!(grid.vertex_count(), 9);
        assert_eq!(homology_z(&grid), homology_z(&torus));
        let klein = corpus("klein_8").unwrap();
        assert_eq!(
            homology_z(&klein),
            HomologyProfile::concentrated(1, 1, &[2]).unwrap()
        );
        let rp3 = corpus("rp3_11").unwrap();
        let mut expect = HomologyProfile::concentrated(1, 0, &[2]).unwrap();
        expect.degrees.extend([
            Default::default(),
            crate::homology::DegreeHomology {
                betti: 1,
                torsion: vec![],
            },
        ]);
        assert_eq!(homology_z(&rp3), expect);
        assert_eq!(corpus("nope"), Err(Error::UnknownName("nope".into())));
    }

    #[test]
    fn free_witnesses() {
        let s2 = moore_free_witness(1, 2).unwrap();
        assert!(s2.verified);
        assert_eq!(s2.vertex_count, 4);
        assert_eq!(s2.complex, SimplicialComplex::boundary_sphere(3).unwrap());
        let w2 = moore_free_witness(2, 1).unwrap();
        assert_eq!((w2.vertex_count, w2.verified), (4, true));
        let w7 = moore_free_witness(7, 1).unwrap();
        assert_eq!((w7.vertex_count, w7.verified), (6, true));
    }

    #[test]
    fn cyclic_witnesses() {
        for k in [2, 3, 5] {
            let w = moore_cyclic_witness(k).unwrap();
            assert!(w.verified, "k = {k}");
            assert!(w.vertex_count <= 3 * k + 4);
        }
        assert!(moore_cyclic_witness(1).is_err());
    }

    #[test]
    fn sum_witnesses() {
        let circle = moore_sum_witness(1, &[], 1).unwrap();
        assert_eq!((circle.vertex_count, circle.verified), (3, true));
        let susp = moore_sum_witness(0, &[2], 2).unwrap();
        assert!(susp.verified);
        let mixed = moore_sum_witness(2, &[2, 3], 1).unwrap();
        assert!(mixed.verified);
        assert_eq!(mixed.claimed.to_string(), "M(Z^2 + Z_2 + Z_3, 1)");
    }
}
