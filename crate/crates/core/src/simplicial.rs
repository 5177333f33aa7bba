//! Finite abstract simplicial complexes stored by their facets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// A simplex as a strictly increasing list of vertex identifiers.
///
/// The derived ordering is lexicographic on the vertex list, which is the
/// order used for every face listing and matrix basis in the crate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        let raw: Vec<Vertex> = vertices.into_iter().collect();
        let mut v = raw.clone();
        v.sort_unstable();
        if v.is_empty() || v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedSimplex(raw));
        }
        Ok(Simplex(v))
    }

    /// Caller guarantees `v` is sorted, non-empty and duplicate free.
    pub(crate) fn from_sorted(v: Vec<Vertex>) -> Self {
        debug_assert!(!v.is_empty() && v.windows(2).all(|w| w[0] < w[1]));
        Simplex(v)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        if self.0.len() > other.0.len() {
            return false;
        }
        // both sorted: merge walk
        let mut it = other.0.iter();
        'outer: for v in &self.0 {
            for w in it.by_ref() {
                if w == v {
                    continue 'outer;
                }
                if w > v {
                    return false;
                }
            }
            return false;
        }
        true
    }

    /// All `k`-dimensional faces in lexicographic order.
    pub fn faces(&self, k: usize) -> impl Iterator<Item = Simplex> + '_ {
        self.0.iter().copied().combinations(k + 1).map(Simplex)
    }

    /// Codimension-one faces with their incidence signs: removing the
    /// `j`-th vertex contributes `(-1)^j`.
    pub fn boundary(&self) -> impl Iterator<Item = (i64, Simplex)> + '_ {
        let n = self.0.len();
        (0..if n > 1 { n } else { 0 }).map(move |j| {
            let mut v = self.0.clone();
            v.remove(j);
            (if j % 2 == 0 { 1 } else { -1 }, Simplex(v))
        })
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().join(","))
    }
}

/// Face counts per dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

/// Serializes as the list of facets.
impl Serialize for SimplicialComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.facets.serialize(s)
    }
}

/// A non-empty finite simplicial complex given by its inclusion-maximal faces.
///
/// Faces of every dimension are enumerated on first use and cached.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    facets: Vec<Simplex>,
    vertices: Vec<Vertex>,
    faces: OnceLock<Vec<Vec<Simplex>>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Builds a complex from vertex lists; non-maximal inputs are absorbed.
    pub fn from_facets<I, S>(facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = Vertex>,
    {
        let simplices = facets.into_iter().map(Simplex::new).collect::<Result<Vec<_>>>()?;
        Self::from_simplices(simplices)
    }

    pub fn from_simplices(mut simplices: Vec<Simplex>) -> Result<Self> {
        if simplices.is_empty() {
            return Err(Error::EmptyInput);
        }
        simplices.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        simplices.dedup();
        let mut kept: Vec<Simplex> = Vec::with_capacity(simplices.len());
        for s in simplices {
            if !kept.iter().any(|f| f.len() > s.len() && s.is_face_of(f)) {
                kept.push(s);
            }
        }
        kept.sort();
        let vertices: BTreeSet<Vertex> = kept.iter().flat_map(|f| f.0.iter().copied()).collect();
        Ok(SimplicialComplex {
            facets: kept,
            vertices: vertices.into_iter().collect(),
            faces: OnceLock::new(),
        })
    }

    /// The full simplex on vertices `0..=n`.
    pub fn standard_simplex(n: usize) -> Self {
        Self::from_simplices(vec![Simplex((0..=n).collect())]).expect("non-empty")
    }

    /// The boundary of the `n`-simplex, a triangulated `(n-1)`-sphere on
    /// `n + 1` vertices.
    pub fn boundary_sphere(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("boundary_sphere needs n >= 1".into()));
        }
        Self::from_simplices(Simplex((0..=n).collect()).faces(n - 1).collect())
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn dim(&self) -> usize {
        self.facets.iter().map(Simplex::dim).max().unwrap_or(0)
    }

    fn all_faces(&self) -> &Vec<Vec<Simplex>> {
        self.faces.get_or_init(|| {
            let d = self.dim();
            let mut by_dim: Vec<BTreeSet<Simplex>> = vec![BTreeSet::new(); d + 1];
            for f in &self.facets {
                for (k, set) in by_dim.iter_mut().enumerate().take(f.dim() + 1) {
                    set.extend(f.faces(k));
                }
            }
            by_dim.into_iter().map(|s| s.into_iter().collect()).collect()
        })
    }

    /// All `k`-faces in lexicographic order; empty when `k > dim`.
    pub fn faces(&self, k: usize) -> &[Simplex] {
        self.all_faces().get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Position of `s` within `faces(s.dim())`.
    pub fn face_index(&self, s: &Simplex) -> Option<usize> {
        self.faces(s.dim()).binary_search(s).ok()
    }

    pub fn contains_face(&self, s: &Simplex) -> bool {
        self.facets.iter().any(|f| s.is_face_of(f))
    }

    pub fn num_faces(&self) -> usize {
        self.all_faces().iter().map(Vec::len).sum()
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.all_faces().iter().map(Vec::len).collect())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().euler_characteristic()
    }

    /// `true` when every face of `self` is a face of `other`.
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.facets.iter().all(|f| other.contains_face(f))
    }

    /// The `i`-skeleton: all faces of dimension at most `i`.
    pub fn skeleton(&self, i: usize) -> Self {
        if i >= self.dim() {
            return self.clone();
        }
        let mut facets: Vec<Simplex> = self.faces(i).to_vec();
        facets.extend(self.facets.iter().filter(|f| f.dim() < i).cloned());
        Self::from_simplices(facets).expect("skeleton of a non-empty complex")
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if self.vertices.binary_search(&v).is_ok() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// Faces containing `v`, ordered by dimension then lexicographically.
    /// This is the combinatorial open star of `v`.
    pub fn star(&self, v: Vertex) -> Result<Vec<Simplex>> {
        self.check_vertex(v)?;
        Ok(self
            .all_faces()
            .iter()
            .flat_map(|fs| fs.iter().filter(|s| s.contains(v)).cloned())
            .collect())
    }

    /// The link of `v`; `None` for an isolated vertex, whose link is empty.
    pub fn link(&self, v: Vertex) -> Result<Option<SimplicialComplex>> {
        self.check_vertex(v)?;
        let parts: Vec<Simplex> = self
            .facets
            .iter()
            .filter(|f| f.contains(v) && f.len() > 1)
            .map(|f| Simplex(f.0.iter().copied().filter(|&w| w != v).collect()))
            .collect();
        if parts.is_empty() {
            Ok(None)
        } else {
            Self::from_simplices(parts).map(Some)
        }
    }

    /// Applies a vertex map that is injective on every facet.
    pub(crate) fn map_vertices(&self, f: impl Fn(Vertex) -> Vertex) -> Self {
        let facets = self
            .facets
            .iter()
            .map(|s| {
                let mut v: Vec<Vertex> = s.0.iter().map(|&x| f(x)).collect();
                v.sort_unstable();
                Simplex::from_sorted(v)
            })
            .collect();
        Self::from_simplices(facets).expect("non-empty")
    }

    /// Relabels vertices to `0..n` in ascending order of their identifiers.
    pub fn relabeled(&self) -> Self {
        let map: BTreeMap<Vertex, Vertex> = self.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        self.map_vertices(|v| map[&v])
    }

    /// Joins the complex with `apexes` new vertices, each coned separately.
    /// One apex gives the cone, two give the suspension.
    fn join_points(&self, apexes: usize) -> Self {
        let base = self.relabeled();
        let n = base.vertex_count();
        let facets = (0..apexes)
            .flat_map(|a| {
                base.facets.iter().map(move |f| {
                    let mut v = f.0.clone();
                    v.push(n + a);
                    Simplex::from_sorted(v)
                })
            })
            .collect();
        Self::from_simplices(facets).expect("non-empty")
    }

    pub fn cone(&self) -> Self {
        self.join_points(1)
    }

    /// The simplicial suspension: the join with two new apex vertices.
    pub fn suspension(&self) -> Self {
        self.join_points(2)
    }

    /// Glues `other` onto `self` by identifying `sigma` (a face of `self`)
    /// with the first `dim(sigma) + 1` vertices of `tau` (a face of `other`).
    ///
    /// Vertices of `self` become `0..m` in ascending order; the remaining
    /// vertices of `other` follow in ascending order.
    pub fn wedge_glue(&self, other: &SimplicialComplex, sigma: &Simplex, tau: &Simplex) -> Result<Self> {
        if sigma.dim() > tau.dim() {
            return Err(Error::DimensionMismatch(format!(
                "dim sigma = {} exceeds dim tau = {}",
                sigma.dim(),
                tau.dim()
            )));
        }
        if !self.contains_face(sigma) {
            return Err(Error::InvalidArgument(format!(
                "{sigma} is not a face of the first complex"
            )));
        }
        if !other.contains_face(tau) {
            return Err(Error::InvalidArgument(format!(
                "{tau} is not a face of the second complex"
            )));
        }
        let left: BTreeMap<Vertex, Vertex> = self.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut right: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        for (s, t) in sigma.0.iter().zip(&tau.0) {
            right.insert(*t, left[s]);
        }
        let mut next = self.vertex_count();
        for &v in &other.vertices {
            right.entry(v).or_insert_with(|| {
                next += 1;
                next - 1
            });
        }
        let mut facets: Vec<Simplex> = self.map_vertices(|v| left[&v]).facets;
        facets.extend(other.map_vertices(|v| right[&v]).facets);
        Self::from_simplices(facets)
    }

    /// Glues along a top-dimensional facet of each complex, choosing the
    /// lexicographically first facet of maximal dimension on each side.
    pub fn wedge_top(&self, other: &SimplicialComplex) -> Self {
        let top = |k: &SimplicialComplex| {
            let d = k.dim();
            k.facets
                .iter()
                .find(|f| f.dim() == d)
                .cloned()
                .expect("non-empty")
        };
        let (a, b) = if self.dim() <= other.dim() {
            (self, other)
        } else {
            (other, self)
        };
        a.wedge_glue(b, &top(a), &top(b))
            .expect("facets are faces and dimensions are ordered")
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.facets.iter().join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(f: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(f.iter().map(|s| s.to_vec())).unwrap()
    }

    #[test]
    fn hollow_triangle() {
        let k = cx(&[&[0, 1], &[1, 2], &[0, 2]]);
        assert_eq!(k.dim(), 1);
        assert_eq!(k.vertex_count(), 3);
        assert!(k.faces(2).is_empty());
    }

    #[test]
    fn absorption_and_discrete() {
        let k = cx(&[&[0, 1, 2], &[0, 1]]);
        assert_eq!(k.facets(), &[Simplex::new([0, 1, 2]).unwrap()]);
        let d = cx(&[&[0], &[1], &[2]]);
        assert_eq!(d.dim(), 0);
        assert_eq!(d.facets().len(), 3);
    }

    #[test]
    fn errors() {
        assert_eq!(
            SimplicialComplex::from_facets(Vec::<Vec<usize>>::new()),
            Err(Error::EmptyInput)
        );
        assert!(matches!(
            SimplicialComplex::from_facets([vec![0, 1, 1]]),
            Err(Error::MalformedSimplex(_))
        ));
        let k = SimplicialComplex::standard_simplex(2);
        assert_eq!(k.star(7), Err(Error::UnknownVertex(7)));
    }

    #[test]
    fn simplex_face_counts() {
        assert_eq!(SimplicialComplex::standard_simplex(3).faces(1).len(), 6);
        assert_eq!(SimplicialComplex::standard_simplex(4).faces(2).len(), 10);
        assert_eq!(
            SimplicialComplex::standard_simplex(4).f_vector(),
            FVector(vec![5, 10, 10, 5, 1])
        );
        for n in 0..=10 {
            assert_eq!(SimplicialComplex::standard_simplex(n).euler_characteristic(), 1);
        }
        assert_eq!(SimplicialComplex::standard_simplex(0).vertex_count(), 1);
    }

    #[test]
    fn boundary_spheres() {
        let s = SimplicialComplex::boundary_sphere(3).unwrap();
        assert_eq!(s.f_vector(), FVector(vec![4, 6, 4]));
        assert_eq!(SimplicialComplex::boundary_sphere(2).unwrap().vertex_count(), 3);
        assert!(s.is_subcomplex_of(&SimplicialComplex::standard_simplex(3)));
        assert!(!SimplicialComplex::standard_simplex(3).is_subcomplex_of(&s));
    }

    #[test]
    fn skeleta() {
        let k4 = SimplicialComplex::standard_simplex(3).skeleton(1);
        assert_eq!(k4.facets().len(), 6);
        assert_eq!(k4.dim(), 1);
        let k = SimplicialComplex::boundary_sphere(4).unwrap();
        assert_eq!(k.skeleton(k.dim()), k);
        let s = SimplicialComplex::standard_simplex(5).skeleton(2);
        for d in 0..=2 {
            assert_eq!(s.faces(d), SimplicialComplex::standard_simplex(5).faces(d));
        }
    }

    #[test]
    fn star_and_link() {
        let t = SimplicialComplex::boundary_sphere(2).unwrap();
        let star: Vec<Vec<usize>> = t.star(0).unwrap().into_iter().map(Simplex::into_vec).collect();
        assert_eq!(star, vec![vec![0], vec![0, 1], vec![0, 2]]);
        let s = SimplicialComplex::boundary_sphere(3).unwrap();
        assert_eq!(s.link(0).unwrap().unwrap(), cx(&[&[1, 2], &[2, 3], &[1, 3]]));
        let d = cx(&[&[0, 1], &[2]]);
        assert_eq!(d.link(2).unwrap(), None);
    }

    #[test]
    fn star_double_counting() {
        let k = SimplicialComplex::boundary_sphere(4).unwrap().skeleton(2);
        let f = k.f_vector();
        for d in 0..=k.dim() {
            let total: usize = k
                .vertices()
                .iter()
                .map(|&v| k.star(v).unwrap().iter().filter(|s| s.dim() == d).count())
                .sum();
            assert_eq!(total, (d + 1) * f.0[d]);
        }
    }

    #[test]
    fn wedge_of_circles() {
        let c = SimplicialComplex::boundary_sphere(2).unwrap();
        let v = Simplex::new([0]).unwrap();
        let w = c.wedge_glue(&c, &v, &v).unwrap();
        assert_eq!(w.vertex_count(), 5);
        assert_eq!(w.euler_characteristic(), -1);
        let e = Simplex::new([0, 1, 2]).unwrap();
        assert!(matches!(
            c.wedge_glue(
                &SimplicialComplex::standard_simplex(1),
                &e,
                &Simplex::new([0, 1]).unwrap()
            ),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn suspension_counts() {
        let s2 = SimplicialComplex::boundary_sphere(2).unwrap().suspension();
        assert_eq!(s2.vertex_count(), 5);
        assert_eq!(s2.euler_characteristic(), 2);
        let interval = SimplicialComplex::standard_simplex(0).suspension();
        assert_eq!(interval.dim(), 1);
        assert_eq!(interval.euler_characteristic(), 1);
    }

    #[test]
    fn nonconsecutive_vertex_ids_are_kept() {
        let k = cx(&[&[10, 30], &[30, 20]]);
        assert_eq!(k.vertices(), &[10, 20, 30]);
        assert_eq!(k.relabeled(), cx(&[&[0, 2], &[1, 2]]));
    }
}
