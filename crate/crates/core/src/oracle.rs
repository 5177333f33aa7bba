//! Exhaustive search over subcomplexes of the simplex on `n <= 7` vertices,
//! one representative per isomorphism class.
//!
//! A face is a nonzero vertex bitmask below `2^n`; a family of faces is a
//! `u128` with bit `s` set when face `s` is present. Families are grown one
//! face at a time, breadth first by face count, and every child is reduced
//! to a canonical form before deduplication, so each class is visited once.

use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{homology_z_with, HomologyProfile};
use crate::linalg::{rank_over_rationals, IntMatrix};
use crate::parallel::{map_slice, sort_dedup, Execution};
use crate::simplicial::{Simplex, SimplicialComplex};

/// Largest supported vertex budget.
pub const MAX_VERTICES: usize = 7;

/// Default cap on generated candidates. Exhausting `n = 6` takes well under
/// a million; `n = 7` hits the cap.
pub const DEFAULT_NODE_BUDGET: u64 = 5_000_000;

/// Primes used to sieve candidates before exact integer homology.
pub const SIEVE_PRIMES: [u64; 3] = [2, 3, 2_147_483_647];

/// A downward-closed family of non-empty faces of the simplex on `n` vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceFamily {
    n: u8,
    mask: u128,
}

impl FaceFamily {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "at most {MAX_VERTICES} vertices");
        FaceFamily { n: n as u8, mask: 0 }
    }

    /// The family of all faces of `K`, whose vertices must lie in `0..n`.
    pub fn from_complex(complex: &SimplicialComplex, n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::InvalidArgument(format!("at most {MAX_VERTICES} vertices")));
        }
        if let Some(&v) = complex.vertices().iter().find(|&&v| v >= n) {
            return Err(Error::UnknownVertex(v));
        }
        let mut mask = 0u128;
        for k in 0..=complex.dim() {
            for s in complex.faces(k) {
                let bits = s.vertices().iter().fold(0usize, |b, &v| b | 1 << v);
                mask |= 1u128 << bits;
            }
        }
        Ok(FaceFamily { n: n as u8, mask })
    }

    /// Builds a family from a raw mask without checking closure.
    pub fn from_mask(n: usize, mask: u128) -> Self {
        assert!(n <= MAX_VERTICES, "at most {MAX_VERTICES} vertices");
        FaceFamily { n: n as u8, mask }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn mask(&self) -> u128 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, face: usize) -> bool {
        face != 0 && self.mask >> face & 1 == 1
    }

    /// Face bitmasks in increasing order.
    pub fn faces(&self) -> impl Iterator<Item = usize> + '_ {
        let mut rest = self.mask;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let s = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(s)
        })
    }

    /// Every face's codimension-one faces are present.
    pub fn is_closed(&self) -> bool {
        self.mask & 1 == 0 && self.faces().all(|s| boundary_present(self.mask, s))
    }

    pub fn dim(&self) -> Option<usize> {
        self.faces().map(|s| s.count_ones() as usize - 1).max()
    }

    pub fn to_complex(&self) -> Option<SimplicialComplex> {
        if self.is_empty() {
            return None;
        }
        let simplices: Vec<Simplex> = self
            .faces()
            .map(|s| Simplex::from_sorted((0..self.n()).filter(|&v| s >> v & 1 == 1).collect()))
            .collect();
        Some(SimplicialComplex::from_simplices(simplices).expect("non-empty family"))
    }

    /// Faces that can be added while keeping the family closed.
    fn addable(&self, max_size: u32) -> impl Iterator<Item = usize> + '_ {
        (1..1usize << self.n).filter(move |&s| {
            !self.contains(s) && s.count_ones() <= max_size && boundary_present(self.mask, s)
        })
    }

    /// Image under the vertex map `v -> perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> FaceFamily {
        let table = subset_table(perm, self.n());
        let mask = self.faces().fold(0u128, |m, s| m | 1u128 << table[s]);
        FaceFamily { n: self.n, mask }
    }

    /// Smallest mask in the orbit among relabelings that order vertices by
    /// an isomorphism invariant. Isomorphic families share a canonical form.
    pub fn canonical(&self) -> FaceFamily {
        let n = self.n();
        if self.is_empty() {
            return *self;
        }
        let keys = self.vertex_keys();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        let mut cells: Vec<Vec<usize>> = Vec::new();
        for (i, &v) in order.iter().enumerate() {
            if i > 0 && keys[order[i - 1]] == keys[v] {
                cells.last_mut().expect("open cell").push(v);
            } else {
                cells.push(vec![v]);
            }
        }
        let mut best = u128::MAX;
        let mut perm = vec![0usize; n];
        let mut used = vec![false; n];
        self.search_labelings(&cells, 0, 0, &mut perm, &mut used, &mut best);
        FaceFamily {
            n: self.n,
            mask: best,
        }
    }

    fn search_labelings(
        &self,
        cells: &[Vec<usize>],
        cell: usize,
        label: usize,
        perm: &mut [usize],
        used: &mut [bool],
        best: &mut u128,
    ) {
        if cell == cells.len() {
            *best = (*best).min(self.permuted(perm).mask);
            return;
        }
        let start: usize = cells[..cell].iter().map(Vec::len).sum();
        let (next_cell, next_label) = if label + 1 == start + cells[cell].len() {
            (cell + 1, label + 1)
        } else {
            (cell, label + 1)
        };
        for &v in &cells[cell] {
            if !used[v] {
                used[v] = true;
                perm[v] = label;
                self.search_labelings(cells, next_cell, next_label, perm, used, best);
                used[v] = false;
            }
        }
    }

    /// Per-vertex face counts by dimension, refined once by the multiset of
    /// neighbours' counts.
    fn vertex_keys(&self) -> Vec<(u64, Vec<u64>)> {
        let n = self.n();
        let mut counts = vec![0u64; n];
        for s in self.faces() {
            let shift = 8 * (s.count_ones() - 1);
            for (v, c) in counts.iter_mut().enumerate() {
                if s >> v & 1 == 1 {
                    *c += 1 << shift;
                }
            }
        }
        (0..n)
            .map(|v| {
                let mut around: Vec<u64> = (0..n)
                    .filter(|&u| u != v && self.contains(1 << u | 1 << v))
                    .map(|u| counts[u])
                    .collect();
                around.sort_unstable();
                (counts[v], around)
            })
            .collect()
    }

    /// Number of vertex permutations fixing the family. Brute force over all
    /// `n!` permutations.
    pub fn automorphism_count(&self) -> usize {
        let n = self.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut count = 0;
        loop {
            if self.permuted(&perm) == *self {
                count += 1;
            }
            if !next_permutation(&mut perm) {
                return count;
            }
        }
    }

    /// Size of the orbit under relabeling of all `n` vertices.
    pub fn orbit_size(&self) -> usize {
        factorial(self.n()) / self.automorphism_count()
    }

    /// Reduced Betti numbers over `F_p` for degrees `0..=n-1`, computed
    /// directly from the bitmask faces.
    pub fn betti_mod_p(&self, p: u64) -> Vec<usize> {
        let n = self.n();
        let by_size: Vec<Vec<usize>> = (0..=n)
            .map(|k| self.faces().filter(|s| s.count_ones() as usize == k).collect())
            .collect();
        // ranks[k] = rank of the boundary from size-(k+1) faces to size-k faces
        let ranks: Vec<usize> = (0..=n)
            .map(|k| {
                if k == n {
                    return 0;
                }
                if k == 0 {
                    return usize::from(!by_size[1].is_empty());
                }
                let rows = &by_size[k];
                let cols: Vec<Vec<u64>> = by_size[k + 1]
                    .iter()
                    .map(|&s| {
                        let mut col = vec![0u64; rows.len()];
                        let mut sign_pos = 0;
                        for v in 0..n {
                            if s >> v & 1 == 1 {
                                let f = s & !(1 << v);
                                let r = rows.binary_search(&f).expect("closed family");
                                col[r] = if sign_pos % 2 == 0 { 1 } else { p - 1 };
                                sign_pos += 1;
                            }
                        }
                        col
                    })
                    .collect();
                dense_rank_mod_p(cols, p)
            })
            .collect();
        (0..n)
            .map(|k| by_size[k + 1].len() - ranks[k] - ranks[k + 1])
            .collect()
    }
}

fn boundary_present(mask: u128, s: usize) -> bool {
    if s.count_ones() == 1 {
        return true;
    }
    let mut rest = s;
    while rest != 0 {
        let bit = rest & rest.wrapping_neg();
        if mask >> (s & !bit) & 1 == 0 {
            return false;
        }
        rest &= rest - 1;
    }
    true
}

fn subset_table(perm: &[usize], n: usize) -> Vec<usize> {
    let mut table = vec![0usize; 1 << n];
    for s in 1..1usize << n {
        table[s] = table[s & (s - 1)] | 1 << perm[s.trailing_zeros() as usize];
    }
    table
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn dense_rank_mod_p(mut cols: Vec<Vec<u64>>, p: u64) -> usize {
    let Some(height) = cols.first().map(Vec::len) else {
        return 0;
    };
    let mut rank = 0;
    for r in 0..height {
        let Some(pivot) = (rank..cols.len()).find(|&c| cols[c][r] != 0) else {
            continue;
        };
        cols.swap(rank, pivot);
        let inv = pow_mod(cols[rank][r], p - 2, p);
        let (done, rest) = cols.split_at_mut(rank + 1);
        let pivot_col = &done[rank];
        for col in rest {
            let factor = col[r] * inv % p;
            if factor == 0 {
                continue;
            }
            for (x, &y) in col[r..].iter_mut().zip(&pivot_col[r..]) {
                *x = (*x + p - factor * y % p) % p;
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Parameters of an enumeration run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationConfig {
    pub node_budget: u64,
    /// Faces above this dimension are never added.
    pub max_dim: Option<usize>,
    #[serde(skip)]
    pub execution: Execution,
    #[serde(skip)]
    pub time_limit: Option<Duration>,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            node_budget: DEFAULT_NODE_BUDGET,
            max_dim: None,
            execution: Execution::default(),
            time_limit: None,
        }
    }
}

/// What to do after visiting a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Visit {
    /// Keep growing this family.
    Descend,
    /// Do not grow this family. Supersets reached from other families are
    /// still visited.
    Prune,
    /// Finish the current level and stop.
    Stop,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationStats {
    /// Candidate children generated and canonicalized.
    pub nodes_explored: u64,
    /// Isomorphism classes visited, the empty family included.
    pub symmetry_classes: u64,
    pub stopped: bool,
}

#[derive(Clone, Debug)]
pub struct Enumeration<T> {
    pub stats: EnumerationStats,
    /// Visitor outputs in visiting order: by face count, then canonical mask.
    pub outputs: Vec<T>,
}

/// Visits every downward-closed family of faces of the simplex on `n`
/// vertices once per isomorphism class. The visitor must not depend on
/// visiting order; within one face count it may run in parallel.
pub fn enumerate_subcomplexes<T, V>(
    n: usize,
    config: &EnumerationConfig,
    visitor: V,
) -> Result<Enumeration<T>>
where
    T: Send,
    V: Fn(&FaceFamily) -> (Visit, Option<T>) + Sync + Send,
{
    if !(1..=MAX_VERTICES).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "vertex budget must be in 1..={MAX_VERTICES}, got {n}"
        )));
    }
    let exec = config.execution;
    let max_size = config.max_dim.map_or(n as u32, |d| (d as u32 + 1).min(n as u32));
    let started = Instant::now();
    let mut stats = EnumerationStats {
        nodes_explored: 0,
        symmetry_classes: 0,
        stopped: false,
    };
    let mut outputs = Vec::new();
    let mut level = vec![FaceFamily::empty(n)];
    while !level.is_empty() {
        let visits = map_slice(exec, &level, &visitor);
        stats.symmetry_classes += level.len() as u64;
        let mut parents = Vec::new();
        for (family, (visit, out)) in level.iter().zip(visits) {
            outputs.extend(out);
            match visit {
                Visit::Descend => parents.push(*family),
                Visit::Prune => {}
                Visit::Stop => stats.stopped = true,
            }
        }
        if stats.stopped {
            break;
        }
        let pending: u64 = map_slice(exec, &parents, |f| f.addable(max_size).count() as u64)
            .into_iter()
            .sum();
        let over_time = config.time_limit.is_some_and(|t| started.elapsed() > t);
        if stats.nodes_explored + pending > config.node_budget || over_time {
            return Err(Error::BudgetExceeded {
                nodes: stats.nodes_explored,
            });
        }
        stats.nodes_explored += pending;
        let children = map_slice(exec, &parents, |f| {
            f.addable(max_size)
                .map(|s| {
                    FaceFamily {
                        n: f.n,
                        mask: f.mask | 1u128 << s,
                    }
                    .canonical()
                })
                .collect::<Vec<_>>()
        });
        level = children.into_iter().flatten().collect();
        sort_dedup(exec, &mut level);
    }
    Ok(Enumeration { stats, outputs })
}

/// Largest reduced `rank H_i(K; Q)` over subcomplexes `K` of the simplex on
/// `n` vertices.
///
/// Only faces of dimension at most `i + 1` are enumerated, since `H_i`
/// depends on nothing higher. Betti numbers over a large prime bound the
/// rational ones from above and rank the candidates; exact rational ranks
/// are then computed best-first until no remaining candidate can win.
pub fn max_betti(n: usize, i: usize) -> Result<usize> {
    max_betti_with(n, i, &EnumerationConfig::default())
}

pub fn max_betti_with(n: usize, i: usize, config: &EnumerationConfig) -> Result<usize> {
    if n < 2 || i > n - 2 {
        return Err(Error::InvalidArgument(format!(
            "max_betti needs 0 <= i <= n - 2, got n = {n}, i = {i}"
        )));
    }
    let config = EnumerationConfig {
        max_dim: Some(i + 1),
        ..config.clone()
    };
    let p = SIEVE_PRIMES[2];
    let run = enumerate_subcomplexes(n, &config, |f| {
        if f.is_empty() {
            return (Visit::Descend, None);
        }
        let b = f.betti_mod_p(p)[i];
        (Visit::Descend, (b > 0).then_some((b, *f)))
    })?;
    let mut candidates = run.outputs;
    candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut best = 0;
    for (bound, family) in candidates {
        if bound <= best {
            break;
        }
        best = best.max(rational_betti(&family.to_complex().expect("non-empty"), i));
    }
    Ok(best)
}

fn rational_betti(complex: &SimplicialComplex, i: usize) -> usize {
    let rank = |k: usize| {
        let m: IntMatrix = crate::homology::boundary_matrix(complex, k);
        rank_over_rationals(&m)
    };
    complex.faces(i).len() - rank(i) - rank(i + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchOutcome {
    Found,
    ExhaustedNone,
    BudgetExceeded,
}

impl fmt::Display for SearchOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchOutcome::Found => "found",
            SearchOutcome::ExhaustedNone => "exhausted-none",
            SearchOutcome::BudgetExceeded => "budget-exceeded",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    pub witness: Option<SimplicialComplex>,
    pub nodes_explored: u64,
    pub symmetry_classes: u64,
    pub vertices: usize,
    pub config: EnumerationConfig,
    pub sieve_primes: Vec<u64>,
}

impl fmt::Display for SearchResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "outcome: {}", self.outcome)?;
        if let Some(w) = &self.witness {
            let facets: Vec<String> = w.facets().iter().map(|s| format!("{:?}", s.vertices())).collect();
            writeln!(f, "witness: {}", facets.join(" "))?;
        }
        writeln!(f, "vertices: {}", self.vertices)?;
        writeln!(f, "nodes_explored: {}", self.nodes_explored)?;
        writeln!(f, "symmetry_classes: {}", self.symmetry_classes)?;
        let dim = self.config.max_dim.map_or("none".to_string(), |d| d.to_string());
        write!(
            f,
            "parameters: node_budget={} max_dim={} sieve_primes={:?}",
            self.config.node_budget, dim, self.sieve_primes
        )
    }
}

/// Searches the subcomplexes of the simplex on `n` vertices for one whose
/// reduced integral homology equals `target`.
///
/// Candidates are sieved by comparing Betti numbers over each prime in
/// [`SIEVE_PRIMES`] with the universal-coefficient prediction; survivors get
/// exact integral homology. A running out of budget is reported as an
/// outcome, not an error.
pub fn exists_profile(n: usize, target: &HomologyProfile) -> Result<SearchResult> {
    exists_profile_with(n, target, &EnumerationConfig::default())
}

pub fn exists_profile_with(
    n: usize,
    target: &HomologyProfile,
    config: &EnumerationConfig,
) -> Result<SearchResult> {
    exists_profile_filtered(n, target, config, |_| true)
}

/// As [`exists_profile_with`], additionally requiring `filter` to accept the
/// witness. The filter runs only on complexes whose homology matches.
pub fn exists_profile_filtered<P>(
    n: usize,
    target: &HomologyProfile,
    config: &EnumerationConfig,
    filter: P,
) -> Result<SearchResult>
where
    P: Fn(&SimplicialComplex) -> bool + Sync + Send,
{
    let predicted: Vec<Vec<usize>> = SIEVE_PRIMES
        .iter()
        .map(|&p| trim(target.betti_mod_p(p)))
        .collect();
    let run = enumerate_subcomplexes(n, config, |f| {
        if f.is_empty() {
            return (Visit::Descend, None);
        }
        let sieved = SIEVE_PRIMES
            .iter()
            .zip(&predicted)
            .all(|(&p, want)| trim(f.betti_mod_p(p)) == *want);
        if !sieved {
            return (Visit::Descend, None);
        }
        let k = f.to_complex().expect("non-empty");
        if homology_z_with(&k, Execution::Sequential) == *target && filter(&k) {
            (Visit::Stop, Some(k))
        } else {
            (Visit::Descend, None)
        }
    });
    let base = |outcome, witness, nodes, classes| SearchResult {
        outcome,
        witness,
        nodes_explored: nodes,
        symmetry_classes: classes,
        vertices: n,
        config: config.clone(),
        sieve_primes: SIEVE_PRIMES.to_vec(),
    };
    match run {
        Ok(run) => {
            let stats = run.stats;
            match run.outputs.into_iter().next() {
                Some(w) => {
                    if homology_z_with(&w, Execution::Sequential) != *target || !filter(&w) {
                        return Err(Error::ConstructionFailed(
                            "search witness failed re-verification".into(),
                        ));
                    }
                    Ok(base(
                        SearchOutcome::Found,
                        Some(w),
                        stats.nodes_explored,
                        stats.symmetry_classes,
                    ))
                }
                None => Ok(base(
                    SearchOutcome::ExhaustedNone,
                    None,
                    stats.nodes_explored,
                    stats.symmetry_classes,
                )),
            }
        }
        Err(Error::BudgetExceeded { nodes }) => Ok(base(SearchOutcome::BudgetExceeded, None, nodes, 0)),
        Err(e) => Err(e),
    }
}

fn trim(mut v: Vec<usize>) -> Vec<usize> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Least vertex budget admitting the target homology, if found within
/// `n_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum HctOutcome {
    Resolved {
        vertices: usize,
    },
    /// No witness on at most `searched` vertices; `n_max` was not reached
    /// when a budget ran out.
    Unresolved {
        searched: usize,
        n_max: usize,
    },
}

impl fmt::Display for HctOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HctOutcome::Resolved { vertices } => write!(f, "hct = {vertices}"),
            HctOutcome::Unresolved { searched, n_max } => {
                write!(f, "unresolved beyond {searched} vertices (limit {n_max})")
            }
        }
    }
}

/// Homology-level covering type: the least `n` such that a subcomplex of the
/// simplex on `n` vertices has homology `target`. A lower bound for the
/// covering type of any space with that homology.
pub fn hct_lower(target: &HomologyProfile, n_max: usize) -> HctOutcome {
    hct_lower_with(target, n_max, &EnumerationConfig::default())
}

pub fn hct_lower_with(target: &HomologyProfile, n_max: usize, config: &EnumerationConfig) -> HctOutcome {
    let n_max = n_max.min(MAX_VERTICES);
    for n in 1..=n_max {
        match exists_profile_with(n, target, config).map(|r| r.outcome) {
            Ok(SearchOutcome::Found) => return HctOutcome::Resolved { vertices: n },
            Ok(SearchOutcome::ExhaustedNone) => {}
            _ => {
                return HctOutcome::Unresolved {
                    searched: n - 1,
                    n_max,
                }
            }
        }
    }
    HctOutcome::Unresolved {
        searched: n_max,
        n_max,
    }
}
