//! Covers of a complex by unions of open vertex stars, their nerves, and a
//! homological check of the good-cover condition.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{homology_z, HomologyProfile};
use crate::parallel::{map_slice, Execution};
use crate::simplicial::{Simplex, SimplicialComplex, Vertex};

/// A cover of `|K|`: element `j` is the union of the open stars of the
/// vertices in `elements[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverSpec {
    pub elements: Vec<Vec<Vertex>>,
}

impl CoverSpec {
    /// Sorts and deduplicates each element, then checks it against `K`.
    pub fn new(elements: Vec<Vec<Vertex>>, complex: &SimplicialComplex) -> Result<Self> {
        let elements: Vec<Vec<Vertex>> = elements
            .into_iter()
            .map(|mut e| {
                e.sort_unstable();
                e.dedup();
                e
            })
            .collect();
        let cover = CoverSpec { elements };
        cover.validate(complex)?;
        Ok(cover)
    }

    pub fn validate(&self, complex: &SimplicialComplex) -> Result<()> {
        let verts = complex.vertices();
        let mut seen = BTreeSet::new();
        for (j, e) in self.elements.iter().enumerate() {
            if e.is_empty() {
                return Err(Error::InvalidCover(format!("element {j} is empty")));
            }
            for &v in e {
                if verts.binary_search(&v).is_err() {
                    return Err(Error::InvalidCover(format!(
                        "element {j} lists vertex {v}, which is not in the complex"
                    )));
                }
                seen.insert(v);
            }
        }
        if let Some(v) = verts.iter().find(|v| !seen.contains(v)) {
            return Err(Error::InvalidCover(format!("vertex {v} is not covered")));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Indices of the elements that meet `face`.
    fn elements_meeting(&self, face: &Simplex) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|&j| self.elements[j].iter().any(|&v| face.contains(v)))
            .collect()
    }
}

/// The cover by open stars of single vertices, in vertex order.
pub fn star_cover(complex: &SimplicialComplex) -> CoverSpec {
    CoverSpec {
        elements: complex.vertices().iter().map(|&v| vec![v]).collect(),
    }
}

/// The nerve: element indices span a simplex iff the corresponding
/// open-star unions share a point, that is iff some face of `K` meets every
/// one of the elements' vertex sets.
pub fn nerve(cover: &CoverSpec, complex: &SimplicialComplex) -> Result<SimplicialComplex> {
    cover.validate(complex)?;
    // a face meets every element of J iff some facet does
    let simplices: Vec<Simplex> = complex
        .facets()
        .iter()
        .map(|f| Simplex::from_sorted(cover.elements_meeting(f)))
        .collect();
    SimplicialComplex::from_simplices(simplices)
}

/// Verdict for one non-empty intersection of cover elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionVerdict {
    pub elements: Vec<usize>,
    pub acyclic: bool,
    pub homology: HomologyProfile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodCoverReport {
    pub intersections: Vec<IntersectionVerdict>,
    pub all_acyclic: bool,
    pub label: &'static str,
}

pub const GOOD_COVER_LABEL: &str = "acyclicity check, not contractibility";

/// Checks reduced acyclicity of every non-empty intersection.
///
/// The intersection indexed by `J` is the union of the open simplices of
/// faces that meet every element of `J`. Those faces form an up-set in the
/// face poset, and the union deformation retracts onto the order complex of
/// that up-set, whose homology is computed.
pub fn is_good_cover_homological(cover: &CoverSpec, complex: &SimplicialComplex) -> Result<GoodCoverReport> {
    is_good_cover_homological_with(cover, complex, Execution::default())
}

pub fn is_good_cover_homological_with(
    cover: &CoverSpec,
    complex: &SimplicialComplex,
    exec: Execution,
) -> Result<GoodCoverReport> {
    let n = nerve(cover, complex)?;
    let index_sets: Vec<Vec<usize>> = (0..=n.dim())
        .flat_map(|k| n.faces(k).iter().map(|s| s.vertices().to_vec()))
        .collect();
    let intersections = map_slice(exec, &index_sets, |j| {
        let up = intersection_order_complex(cover, complex, j);
        let homology = homology_z(&up);
        IntersectionVerdict {
            elements: j.clone(),
            acyclic: homology.is_trivial(),
            homology,
        }
    });
    let all_acyclic = intersections.iter().all(|v| v.acyclic);
    Ok(GoodCoverReport {
        intersections,
        all_acyclic,
        label: GOOD_COVER_LABEL,
    })
}

/// Order complex of the faces meeting every element listed in `j`.
///
/// The up-set is graded by dimension with every cover relation adding one
/// vertex, so its maximal chains run from a minimal face to a facet of `K`
/// one vertex at a time.
fn intersection_order_complex(
    cover: &CoverSpec,
    complex: &SimplicialComplex,
    j: &[usize],
) -> SimplicialComplex {
    let meets_all = |s: &Simplex| {
        j.iter()
            .all(|&e| cover.elements[e].iter().any(|&v| s.contains(v)))
    };
    let faces: Vec<Simplex> = (0..=complex.dim())
        .flat_map(|k| complex.faces(k).iter().filter(|s| meets_all(s)).cloned())
        .collect();
    let id = |s: &Simplex| faces.binary_search_by(|f| cmp_dim_lex(f, s)).expect("in up-set");
    let minimal: Vec<&Simplex> = faces
        .iter()
        .filter(|s| s.len() == 1 || s.boundary().all(|(_, f)| !meets_all(&f)))
        .collect();
    let mut chains: Vec<Simplex> = Vec::new();
    let mut stack: Vec<Vec<usize>> = minimal.iter().map(|s| vec![id(s)]).collect();
    while let Some(chain) = stack.pop() {
        let top = &faces[*chain.last().expect("non-empty")];
        let ups: Vec<Simplex> = complex
            .vertices()
            .iter()
            .filter(|&&v| !top.contains(v))
            .filter_map(|&v| {
                let s = Simplex::new(top.vertices().iter().copied().chain([v])).ok()?;
                complex.contains_face(&s).then_some(s)
            })
            .collect();
        if ups.is_empty() {
            let mut c = chain.clone();
            c.sort_unstable();
            chains.push(Simplex::from_sorted(c));
        }
        for s in ups {
            let mut c = chain.clone();
            c.push(id(&s));
            stack.push(c);
        }
    }
    SimplicialComplex::from_simplices(chains).expect("a nerve simplex has a witnessing face")
}

fn cmp_dim_lex(a: &Simplex, b: &Simplex) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{corpus, CORPUS_NAMES};

    fn triangle() -> SimplicialComplex {
        SimplicialComplex::boundary_sphere(2).unwrap()
    }

    #[test]
    fn star_cover_nerve_is_identity() {
        assert_eq!(star_cover(&triangle()).len(), 3);
        for name in CORPUS_NAMES {
            let k = corpus(name).unwrap();
            let cover = star_cover(&k);
            assert_eq!(cover.len(), k.vertex_count());
            assert_eq!(nerve(&cover, &k).unwrap(), k, "{name}");
        }
    }

    #[test]
    fn small_covers() {
        let t = triangle();
        let split = CoverSpec::new(vec![vec![0], vec![2, 1]], &t).unwrap();
        assert_eq!(nerve(&split, &t).unwrap(), SimplicialComplex::standard_simplex(1));
        let report = is_good_cover_homological(&split, &t).unwrap();
        assert!(!report.all_acyclic);
        let bad = report.intersections.iter().find(|v| !v.acyclic).unwrap();
        assert_eq!(bad.elements, vec![0, 1]);
        assert_eq!(bad.homology.betti(0), 1);
        assert_eq!(report.label, GOOD_COVER_LABEL);

        let with_full = CoverSpec::new(vec![vec![0], vec![1], vec![2], vec![0, 1, 2]], &t).unwrap();
        assert_eq!(nerve(&with_full, &t).unwrap().euler_characteristic(), 1);
    }

    #[test]
    fn single_element_cover_of_contractible() {
        let k = SimplicialComplex::standard_simplex(3);
        let cover = CoverSpec::new(vec![vec![0, 1, 2, 3]], &k).unwrap();
        assert!(is_good_cover_homological(&cover, &k).unwrap().all_acyclic);
    }

    #[test]
    fn star_covers_are_good() {
        for name in ["rp2_6", "torus_7"] {
            let k = corpus(name).unwrap();
            let r = is_good_cover_homological(&star_cover(&k), &k).unwrap();
            assert!(r.all_acyclic, "{name}");
            assert_eq!(r.intersections.len(), k.num_faces());
        }
    }

    #[test]
    fn invalid_covers() {
        let t = triangle();
        assert!(matches!(
            CoverSpec::new(vec![vec![0, 1]], &t),
            Err(Error::InvalidCover(_))
        ));
        assert!(matches!(
            CoverSpec::new(vec![vec![0, 1, 2, 7]], &t),
            Err(Error::InvalidCover(_))
        ));
        assert!(matches!(
            CoverSpec::new(vec![vec![], vec![0, 1, 2]], &t),
            Err(Error::InvalidCover(_))
        ));
    }
}
