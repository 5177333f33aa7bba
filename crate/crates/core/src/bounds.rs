//! Integer bounds for covering type, vertex-minimal triangulations and
//! LS-category, and aggregation of those bounds over a space profile.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cohomology::{CohomologyAlgebra, DegreeTuple};
use crate::error::{Error, Result};
use crate::homology::{homology_z, HomologyProfile};
use crate::linalg::{Coefficients, PrimeField, Rationals};
use crate::simplicial::SimplicialComplex;

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        // acc * (n - j) / (j + 1) stays exact because acc = C(n, j)
        let num = u128::from(n - j);
        let g = gcd(acc, u128::from(j + 1));
        let (a, d) = (acc / g, u128::from(j + 1) / g);
        let Some(x) = a.checked_mul(num / d) else {
            return u128::MAX;
        };
        acc = x;
    }
    acc
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `cat(cat+1)/2`.
pub fn ct_lower_from_cat(cat: u64) -> u64 {
    cat * (cat + 1) / 2
}

/// `1 + hdim + cat(cat-1)/2`.
pub fn ct_lower_from_cat_hdim(cat: u64, hdim: u64) -> u64 {
    1 + hdim + cat * cat.saturating_sub(1) / 2
}

/// `1 + d + c(cat-2) + cat(cat-1)/2` for a closed `c`-connected PL
/// manifold of dimension `d`; with `cat = 1` the middle term is dropped.
pub fn pl_lower_connected(d: u64, c: u64, cat: u64) -> u64 {
    1 + d + c * cat.saturating_sub(2) + cat * cat.saturating_sub(1) / 2
}

/// Largest `cat` compatible with a good cover of size `n`:
/// `floor((-1 + sqrt(1 + 8n)) / 2)`.
pub fn cat_upper_from_ct(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::DomainError("cover size must be at least 1".into()));
    }
    Ok((isqrt(1 + 8 * n) - 1) / 2)
}

/// `floor((1 + sqrt(1 + 8(n - hdim - 1))) / 2)`.
pub fn cat_upper_from_ct_hdim(n: u64, hdim: u64) -> Result<u64> {
    if n < hdim + 1 {
        return Err(Error::DomainError(format!(
            "negative radicand: cover size {n} is below hdim + 1 = {}",
            hdim + 1
        )));
    }
    Ok(isqrt(1 + 8 * (n - hdim - 1)).div_ceil(2))
}

fn isqrt(x: u64) -> u64 {
    let mut r = (x as f64).sqrt() as u64;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// `floor(hdim / (c+1)) + 1`.
pub fn cat_upper_connectivity(hdim: u64, c: u64) -> u64 {
    hdim / (c + 1) + 1
}

/// Category is at least cup-length plus one.
pub fn cat_lower_from_cuplength(cl: u64) -> u64 {
    cl + 1
}

/// `Σ k·i_k + (n+1)`, plus one more when the degrees are not all equal.
pub fn ct_lower_from_tuple(t: &DegreeTuple) -> u64 {
    let d = t.degrees();
    let weighted: u64 = d
        .iter()
        .enumerate()
        .map(|(k, &i)| (k as u64 + 1) * i as u64)
        .sum();
    let unequal = d.iter().any(|&i| i != d[0]);
    weighted + d.len() as u64 + 1 + u64::from(unequal)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProjectiveKind {
    Real,
    Complex,
    Quaternionic,
}

impl ProjectiveKind {
    pub fn degree(self) -> usize {
        match self {
            ProjectiveKind::Real => 1,
            ProjectiveKind::Complex => 2,
            ProjectiveKind::Quaternionic => 4,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            ProjectiveKind::Real => "RP",
            ProjectiveKind::Complex => "CP",
            ProjectiveKind::Quaternionic => "HP",
        }
    }

    /// `(n+1)(n+2)/2`, `(n+1)^2`, `(n+1)(2n+1)`.
    pub fn closed_form(self, n: u64) -> u64 {
        match self {
            ProjectiveKind::Real => (n + 1) * (n + 2) / 2,
            ProjectiveKind::Complex => (n + 1) * (n + 1),
            ProjectiveKind::Quaternionic => (n + 1) * (2 * n + 1),
        }
    }
}

/// Tuple bound on `n` copies of the generator degree.
pub fn projective_lower(kind: ProjectiveKind, n: usize) -> u64 {
    ct_lower_from_tuple(&DegreeTuple::new(vec![kind.degree(); n]).expect("n >= 1"))
}

/// Tuple bound on `(1, 3, ..., 2n-1)`.
pub fn unitary_lower(n: usize) -> u64 {
    ct_lower_from_tuple(&DegreeTuple::new((1..=n).map(|j| 2 * j - 1).collect()).expect("n >= 1"))
}

/// Tuple bound on `(3, 5, ..., 2n-1)`.
pub fn special_unitary_lower(n: usize) -> u64 {
    ct_lower_from_tuple(&DegreeTuple::new((2..=n).map(|j| 2 * j - 1).collect()).expect("n >= 2"))
}

/// `(4n^3 + 3n^2 + 5n + 12) / 6`.
pub fn unitary_closed_form(n: u64) -> u64 {
    (4 * n * n * n + 3 * n * n + 5 * n + 12) / 6
}

/// `(4n^3 - 3n^2 + 5n + 6) / 6`.
pub fn special_unitary_closed_form(n: u64) -> u64 {
    (4 * n * n * n + 5 * n + 6 - 3 * n * n) / 6
}

/// Bound for an H-space from generators `(degree, height)`: each degree is
/// repeated `height - 1` times.
pub fn hspace_ctp(generators: &[(usize, usize)]) -> u64 {
    let degrees: Vec<usize> = generators
        .iter()
        .flat_map(|&(d, k)| std::iter::repeat_n(d, k.saturating_sub(1)))
        .collect();
    match DegreeTuple::new(degrees) {
        Ok(t) => ct_lower_from_tuple(&t),
        Err(_) => 1,
    }
}

/// `hdim + 3` when reduced homology is nonzero in two different degrees.
pub fn two_homologies_bump(hdim: u64) -> u64 {
    hdim + 3
}

/// Least `n` with `C(n-1, i+1) >= r`: the covering type of `M(Z^r, i)`.
pub fn moore_free_ct(r: u64, i: u64) -> u64 {
    let ok = |n: u64| binomial(n - 1, i + 1) >= u128::from(r);
    let mut lo = i + 1; // C(i, i+1) = 0 < r for r >= 1
    if r == 0 || ok(lo) {
        return lo;
    }
    let mut hi = i + 2;
    while !ok(hi) {
        lo = hi;
        hi = hi.saturating_mul(2);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// `3n + 3 + k` with `k` least such that `C(n+k+1, k) >= rank`.
pub fn manifold_2n_lower(n: u64, rank_hn: u64) -> u64 {
    let k = (0..)
        .find(|&k| binomial(n + k + 1, k) >= u128::from(rank_hn))
        .expect("binomials grow without bound");
    3 * n + 3 + k
}

/// `m + 2n + 4` for `m <= n`.
pub fn product_spheres_lower(m: u64, n: u64) -> Result<u64> {
    if m > n {
        return Err(Error::OrderViolation { m, n });
    }
    Ok(m + 2 * n + 4)
}

/// `ct_x + ct_y - min(hdim_x, hdim_y) - 1`.
pub fn wedge_upper(ct_x: u64, ct_y: u64, hdim_x: u64, hdim_y: u64) -> u64 {
    ct_x + ct_y - hdim_x.min(hdim_y) - 1
}

/// `(i + 3, i + 3k)` for `M(Z_k, i)`.
pub fn cyclic_moore_bounds(k: u64, i: u64) -> (u64, u64) {
    (i + 3, i + 3 * k)
}

/// `i + k_0 + 3(k_1 + ... + k_n) - 2(n-1)` with
/// `k_0 = min{k >= 0 : C(i+k, i+1) >= r}`.
pub fn general_moore_upper(r: u64, ks: &[u64], i: u64) -> Result<u64> {
    if ks.is_empty() {
        return Err(Error::InvalidArgument(
            "at least one torsion order is required".into(),
        ));
    }
    if let Some(&k) = ks.iter().find(|&&k| k < 2) {
        return Err(Error::InvalidArgument(format!("torsion order {k} is below 2")));
    }
    if i == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    let k0 = (0..)
        .find(|&k| binomial(i + k, i + 1) >= u128::from(r))
        .expect("binomials grow without bound");
    let n = ks.len() as u64;
    Ok(i + k0 + 3 * ks.iter().sum::<u64>() - 2 * (n - 1))
}

/// What the caller knows about a space.
///
/// `hdim` and `cat_lower` are lower bounds on the homotopy dimension and the
/// LS-category; `connectivity` is a certified connectivity. `derivations`
/// records how each value was obtained.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaceProfile {
    pub hdim: u64,
    #[serde(default)]
    pub connectivity: u64,
    #[serde(default = "one")]
    pub cat_lower: u64,
    #[serde(default)]
    pub homology: Option<HomologyProfile>,
    /// Essential tuples keyed by coefficient field (`Q`, `F2`, ...).
    #[serde(default)]
    pub essential: BTreeMap<String, BTreeSet<DegreeTuple>>,
    #[serde(default)]
    pub derivations: Vec<String>,
}

fn one() -> u64 {
    1
}

impl SpaceProfile {
    pub fn new(hdim: u64, connectivity: u64, cat_lower: u64) -> Result<Self> {
        let p = SpaceProfile {
            hdim,
            connectivity,
            cat_lower,
            homology: None,
            essential: BTreeMap::new(),
            derivations: Vec::new(),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_tuples(mut self, field: &str, tuples: impl IntoIterator<Item = DegreeTuple>) -> Self {
        self.essential
            .entry(field.to_string())
            .or_default()
            .extend(tuples);
        self
    }

    pub fn with_homology(mut self, h: HomologyProfile) -> Self {
        self.homology = Some(h);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.cat_lower < 1 {
            return Err(Error::InvalidProfile("cat_lower must be at least 1".into()));
        }
        if self.connectivity > self.hdim && self.hdim > 0 {
            return Err(Error::InvalidProfile(format!(
                "connectivity {} exceeds hdim {}",
                self.connectivity, self.hdim
            )));
        }
        Ok(())
    }

    fn non_contractible(&self) -> bool {
        self.hdim >= 1 || self.cat_lower >= 2 || self.homology.as_ref().is_some_and(|h| !h.is_trivial())
    }

    /// Derives a profile from a complex.
    ///
    /// * `hdim` is at least the top degree with free homology and at least
    ///   one more than the top degree with torsion, and at least the total
    ///   degree of every essential tuple.
    /// * `cat_lower` is the largest cup-length over `fields` plus one, and
    ///   at least 2 when homology is nontrivial.
    /// * `connectivity` is 0: the fundamental group is not computed.
    pub fn from_complex(complex: &SimplicialComplex, fields: &[Coefficients]) -> Result<Self> {
        let h = homology_z(complex);
        let mut derivations = Vec::new();
        let mut hdim = 0u64;
        for (k, d) in h.degrees.iter().enumerate() {
            if d.betti > 0 {
                hdim = hdim.max(k as u64);
            }
            if !d.torsion.is_empty() {
                hdim = hdim.max(k as u64 + 1);
            }
        }
        derivations.push(format!("hdim >= {hdim} from integral homology"));
        let mut essential = BTreeMap::new();
        let mut cl_max = 0u64;
        for &c in fields {
            let max_len = complex.dim().max(1);
            let tuples = match c.validate()? {
                Coefficients::Rational => {
                    CohomologyAlgebra::new(complex, Rationals).essential_tuples(max_len)
                }
                Coefficients::Prime(p) => {
                    CohomologyAlgebra::new(complex, PrimeField::new(p)?).essential_tuples(max_len)
                }
            };
            let cl = tuples.iter().map(DegreeTuple::len).max().unwrap_or(0) as u64;
            let top = tuples.iter().map(DegreeTuple::total_degree).max().unwrap_or(0) as u64;
            if top > hdim {
                hdim = top;
                derivations.push(format!("hdim >= {top} from nonzero cohomology over {c}"));
            }
            derivations.push(format!("cup-length {cl} over {c}"));
            cl_max = cl_max.max(cl);
            essential.insert(c.to_string(), tuples);
        }
        let mut cat_lower = cat_lower_from_cuplength(cl_max);
        if !h.is_trivial() && cat_lower < 2 {
            cat_lower = 2;
            derivations.push("cat >= 2 since homology is nontrivial".into());
        } else {
            derivations.push(format!("cat >= {cat_lower} from cup-length {cl_max}"));
        }
        derivations.push("connectivity 0 (fundamental group not computed)".into());
        Ok(SpaceProfile {
            hdim,
            connectivity: 0,
            cat_lower,
            homology: Some(h),
            essential,
            derivations,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundTarget {
    /// Lower bounds for the covering type.
    Ct,
    /// Lower bounds for vertices of a PL triangulation.
    DeltaPl,
    /// Upper bounds for LS-category.
    CatUpper,
}

impl BoundTarget {
    fn is_upper(self) -> bool {
        self == BoundTarget::CatUpper
    }
}

impl fmt::Display for BoundTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundTarget::Ct => "ct",
            BoundTarget::DeltaPl => "delta_pl",
            BoundTarget::CatUpper => "cat_upper",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub value: u64,
    pub formula: String,
    pub citation: String,
    pub inputs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedBound {
    pub formula: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub target: BoundTarget,
    pub entries: Vec<BoundEntry>,
    pub skipped: Vec<SkippedBound>,
    /// Index into `entries` of the strongest bound.
    pub best: Option<usize>,
}

impl BoundReport {
    pub fn new(target: BoundTarget, entries: Vec<BoundEntry>, skipped: Vec<SkippedBound>) -> Self {
        let best = if target.is_upper() {
            entries
                .iter()
                .enumerate()
                .min_by_key(|(i, e)| (e.value, *i))
                .map(|(i, _)| i)
        } else {
            // first entry attaining the maximum
            entries
                .iter()
                .enumerate()
                .max_by_key(|(i, e)| (e.value, std::cmp::Reverse(*i)))
                .map(|(i, _)| i)
        };
        BoundReport {
            target,
            entries,
            skipped,
            best,
        }
    }

    pub fn best(&self) -> Option<&BoundEntry> {
        self.best.map(|i| &self.entries[i])
    }

    pub fn best_value(&self) -> Option<u64> {
        self.best().map(|e| e.value)
    }
}

/// Aligned table `value  formula  citation  inputs`, then skipped bounds
/// and the best value.
impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let header = ["value", "formula", "citation", "inputs"];
        let rows: Vec<[String; 4]> = self
            .entries
            .iter()
            .map(|e| {
                [
                    e.value.to_string(),
                    e.formula.clone(),
                    e.citation.clone(),
                    e.inputs.clone(),
                ]
            })
            .collect();
        let mut w = header.map(str::len);
        for r in &rows {
            for (c, cell) in r.iter().enumerate() {
                w[c] = w[c].max(cell.chars().count());
            }
        }
        let line = |cells: [&str; 4]| {
            format!(
                "{:<w0$}  {:<w1$}  {:<w2$}  {}",
                cells[0],
                cells[1],
                cells[2],
                cells[3],
                w0 = w[0],
                w1 = w[1],
                w2 = w[2]
            )
        };
        writeln!(f, "{}", line(header).trim_end())?;
        for r in &rows {
            writeln!(f, "{}", line([&r[0], &r[1], &r[2], &r[3]]).trim_end())?;
        }
        for s in &self.skipped {
            writeln!(f, "skipped  {}: {}", s.formula, s.reason)?;
        }
        match self.best() {
            Some(b) => {
                let rel = if self.target.is_upper() { "<=" } else { ">=" };
                writeln!(f, "best: {} {rel} {} ({})", self.target, b.value, b.formula)
            }
            None => writeln!(f, "best: none"),
        }
    }
}

fn entry(value: u64, formula: &str, citation: &str, inputs: String) -> BoundEntry {
    BoundEntry {
        value,
        formula: formula.to_string(),
        citation: citation.to_string(),
        inputs,
    }
}

pub const CITE_CAT: &str = "category bound";
pub const CITE_CAT_HDIM: &str = "category and homotopy dimension bound";
pub const CITE_PL: &str = "connected PL manifold bound";
pub const CITE_COVER_CAT: &str = "category from cover size";
pub const CITE_CONNECTIVITY: &str = "category from connectivity";
pub const CITE_BASELINE: &str = "non-contractible baseline";
pub const CITE_TWO_DEGREES: &str = "homology in two degrees";
pub const CITE_TUPLE: &str = "essential product bound";
pub const CITE_FREE_MOORE: &str = "free Moore space exact value";
pub const CITE_MANIFOLD: &str = "highly connected 2n-manifold bound";
pub const CITE_PRODUCT: &str = "product of two spheres bound";
pub const CITE_CYCLIC: &str = "cyclic Moore space window";
pub const CITE_WEDGE: &str = "wedge gluing upper bound";
pub const CITE_GENERAL_MOORE: &str = "general Moore space upper bound";

/// Every applicable lower bound for `ct` from the profile.
pub fn best_ct_lower(profile: &SpaceProfile) -> Result<BoundReport> {
    profile.validate()?;
    let (h, cat) = (profile.hdim, profile.cat_lower);
    let mut entries = Vec::new();
    let mut skipped = Vec::new();
    entries.push(entry(
        ct_lower_from_cat(cat),
        "cat(cat+1)/2",
        CITE_CAT,
        format!("cat>={cat}"),
    ));
    entries.push(entry(
        ct_lower_from_cat_hdim(cat, h),
        "1+hdim+cat(cat-1)/2",
        CITE_CAT_HDIM,
        format!("cat>={cat} hdim>={h}"),
    ));
    if profile.non_contractible() {
        entries.push(entry(h + 2, "hdim+2", CITE_BASELINE, format!("hdim>={h}")));
    } else {
        skipped.push(SkippedBound {
            formula: "hdim+2".into(),
            reason: "space may be contractible".into(),
        });
    }
    match &profile.homology {
        Some(hp) if hp.nonzero_degrees().len() >= 2 => {
            let degs: Vec<String> = hp.nonzero_degrees().iter().map(usize::to_string).collect();
            entries.push(entry(
                two_homologies_bump(h),
                "hdim+3",
                CITE_TWO_DEGREES,
                format!("hdim>={h} homology in degrees {}", degs.join(",")),
            ));
        }
        Some(_) => skipped.push(SkippedBound {
            formula: "hdim+3".into(),
            reason: "reduced homology lives in fewer than two degrees".into(),
        }),
        None => skipped.push(SkippedBound {
            formula: "hdim+3".into(),
            reason: "MissingField: homology".into(),
        }),
    }
    if profile.essential.is_empty() {
        skipped.push(SkippedBound {
            formula: "sum k*i_k+n+1(+1)".into(),
            reason: "MissingField: essential tuples".into(),
        });
    }
    for (field, tuples) in &profile.essential {
        for t in tuples {
            entries.push(entry(
                ct_lower_from_tuple(t),
                "sum k*i_k+n+1(+1)",
                CITE_TUPLE,
                format!("{t} over {field}"),
            ));
        }
    }
    Ok(BoundReport::new(BoundTarget::Ct, entries, skipped))
}

/// Lower bounds for vertices of a PL triangulation of a closed `c`-connected
/// `d`-manifold with category at least `cat`.
pub fn pl_lower_report(d: u64, c: u64, cat: u64) -> Result<BoundReport> {
    if d == 0 || c >= d || cat == 0 {
        return Err(Error::InvalidArgument(format!(
            "need d >= 1, 0 <= c <= d-1, cat >= 1 (got d={d}, c={c}, cat={cat})"
        )));
    }
    let entries = vec![
        entry(
            pl_lower_connected(d, c, cat),
            "1+d+c(cat-2)+cat(cat-1)/2",
            CITE_PL,
            format!("d={d} c={c} cat>={cat}"),
        ),
        entry(
            ct_lower_from_cat_hdim(cat, d),
            "1+hdim+cat(cat-1)/2",
            CITE_CAT_HDIM,
            format!("cat>={cat} hdim={d}"),
        ),
    ];
    Ok(BoundReport::new(BoundTarget::DeltaPl, entries, Vec::new()))
}

/// Upper bounds for category given a good cover of size `ct`, optionally
/// with the homotopy dimension and connectivity.
pub fn cat_upper_report(ct: u64, hdim: Option<u64>, connectivity: Option<u64>) -> Result<BoundReport> {
    let mut entries = vec![entry(
        cat_upper_from_ct(ct)?,
        "floor((-1+sqrt(1+8n))/2)",
        CITE_COVER_CAT,
        format!("n={ct}"),
    )];
    let mut skipped = Vec::new();
    match hdim {
        Some(h) => {
            entries.push(entry(
                cat_upper_from_ct_hdim(ct, h)?,
                "floor((1+sqrt(1+8(n-hdim-1)))/2)",
                CITE_COVER_CAT,
                format!("n={ct} hdim={h}"),
            ));
            let c = connectivity.unwrap_or(0);
            entries.push(entry(
                cat_upper_connectivity(h, c),
                "floor(hdim/(c+1))+1",
                CITE_CONNECTIVITY,
                format!("hdim={h} c={c}"),
            ));
        }
        None => skipped.push(SkippedBound {
            formula: "floor((1+sqrt(1+8(n-hdim-1)))/2)".into(),
            reason: "MissingField: hdim".into(),
        }),
    }
    Ok(BoundReport::new(BoundTarget::CatUpper, entries, skipped))
}

/// One row of a generated bound table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub space: String,
    /// Value of a closed-form expression, where one exists.
    pub closed_form: Option<u64>,
    /// Value recomputed from the general rule.
    pub general_rule: u64,
    /// Upper end of a window, for rows that bound from both sides.
    pub upper: Option<u64>,
    pub citation: String,
    /// 1-based index into the table's footnotes.
    pub footnote: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundTable {
    pub title: String,
    pub rows: Vec<TableRow>,
    pub footnotes: Vec<String>,
}

impl BoundTable {
    pub fn row(&self, space: &str) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.space == space)
    }
}

impl fmt::Display for BoundTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# {}", self.title)?;
        let cells: Vec<[String; 5]> = self
            .rows
            .iter()
            .map(|r| {
                let mark = r.footnote.map_or(String::new(), |i| format!(" [{i}]"));
                [
                    r.space.clone(),
                    r.closed_form.map_or("-".into(), |v| v.to_string()),
                    format!("{}{mark}", r.general_rule),
                    r.upper.map_or("-".into(), |v| v.to_string()),
                    r.citation.clone(),
                ]
            })
            .collect();
        let header = ["space", "closed", "rule", "upper", "citation"].map(String::from);
        let mut w = header.clone().map(|h| h.len());
        for c in &cells {
            for (i, x) in c.iter().enumerate() {
                w[i] = w[i].max(x.chars().count());
            }
        }
        for c in std::iter::once(&header).chain(&cells) {
            let line = format!(
                "{:<w0$}  {:>w1$}  {:>w2$}  {:>w3$}  {}",
                c[0],
                c[1],
                c[2],
                c[3],
                c[4],
                w0 = w[0],
                w1 = w[1],
                w2 = w[2],
                w3 = w[3]
            );
            writeln!(f, "{}", line.trim_end())?;
        }
        for (i, note) in self.footnotes.iter().enumerate() {
            writeln!(f, "[{}] {note}", i + 1)?;
        }
        Ok(())
    }
}

/// Real, complex and quaternionic projective spaces of dimension `1..=max_n`.
pub fn projective_table(max_n: usize) -> BoundTable {
    let mut rows = Vec::new();
    for kind in [
        ProjectiveKind::Real,
        ProjectiveKind::Complex,
        ProjectiveKind::Quaternionic,
    ] {
        for n in 1..=max_n {
            rows.push(TableRow {
                space: format!("{}^{n}", kind.symbol()),
                closed_form: Some(kind.closed_form(n as u64)),
                general_rule: projective_lower(kind, n),
                upper: None,
                citation: format!("{CITE_TUPLE}, projective spaces"),
                footnote: None,
            });
        }
    }
    BoundTable {
        title: "covering type lower bounds: projective spaces".into(),
        rows,
        footnotes: Vec::new(),
    }
}

/// `U(n)` for `1..=max_n` and `SU(n)` for `2..=max_n`.
///
/// The closed forms include the unequal-degree term, which does not apply
/// to a single generator, so they overshoot at `U(1)` and `SU(2)`; those
/// rows carry a footnote and the rule column holds the general value.
pub fn unitary_table(max_n: usize) -> BoundTable {
    let mut rows = Vec::new();
    let footnotes = vec![
        "closed form gives 4 at n=1; the general rule on the single-entry tuple (1) \
         gives 3 = ct(S^1). The closed form counts the unequal-degree term, which is \
         vacuous for one generator."
            .to_string(),
        "closed form gives 6 at n=2; the general rule on the single-entry tuple (3) \
         gives 5 = ct(S^3). The closed form counts the unequal-degree term, which is \
         vacuous for one generator."
            .to_string(),
    ];
    for n in 1..=max_n {
        let (closed, rule) = (unitary_closed_form(n as u64), unitary_lower(n));
        rows.push(TableRow {
            space: format!("U({n})"),
            closed_form: Some(closed),
            general_rule: rule,
            upper: None,
            citation: format!("{CITE_TUPLE}, unitary groups"),
            footnote: (closed != rule).then_some(1),
        });
    }
    for n in 2..=max_n {
        let (closed, rule) = (special_unitary_closed_form(n as u64), special_unitary_lower(n));
        rows.push(TableRow {
            space: format!("SU({n})"),
            closed_form: Some(closed),
            general_rule: rule,
            upper: None,
            citation: format!("{CITE_TUPLE}, special unitary groups"),
            footnote: (closed != rule).then_some(2),
        });
    }
    BoundTable {
        title: "covering type lower bounds: unitary groups".into(),
        rows,
        footnotes,
    }
}

/// Exact covering type of `M(Z^r, i)` for `r <= max_n`, `i <= 3`, and the
/// window for `M(Z_k, i)` for `2 <= k <= max_n`, `i <= 3`.
pub fn moore_table(max_n: usize) -> BoundTable {
    let mut rows = Vec::new();
    for i in 1..=3u64 {
        for r in 1..=max_n as u64 {
            rows.push(TableRow {
                space: format!("M(Z^{r},{i})"),
                closed_form: (i == 1).then(|| {
                    // ceil((3 + sqrt(1+8r)) / 2)
                    let s = isqrt(1 + 8 * r);
                    if s * s == 1 + 8 * r {
                        (3 + s) / 2
                    } else {
                        (5 + s) / 2
                    }
                }),
                general_rule: moore_free_ct(r, i),
                upper: None,
                citation: CITE_FREE_MOORE.into(),
                footnote: None,
            });
        }
    }
    for i in 1..=3u64 {
        for k in 2..=max_n.max(2) as u64 {
            let (lo, hi) = cyclic_moore_bounds(k, i);
            rows.push(TableRow {
                space: format!("M(Z_{k},{i})"),
                closed_form: None,
                general_rule: lo,
                upper: Some(hi),
                citation: CITE_CYCLIC.into(),
                footnote: None,
            });
        }
    }
    BoundTable {
        title: "covering type of Moore spaces".into(),
        rows,
        footnotes: Vec::new(),
    }
}

/// `S^m x S^n` for `1 <= m <= n <= max_n`, plus the three-torus entry.
pub fn products_table(max_n: usize) -> BoundTable {
    let mut rows = Vec::new();
    for n in 1..=max_n as u64 {
        for m in 1..=n {
            let rule = if m < n {
                ct_lower_from_tuple(&DegreeTuple::new(vec![m as usize, n as usize]).expect("positive"))
            } else {
                manifold_2n_lower(n, 2)
            };
            rows.push(TableRow {
                space: format!("S^{m}xS^{n}"),
                closed_form: Some(product_spheres_lower(m, n).expect("m <= n")),
                general_rule: rule,
                upper: None,
                citation: if m < n { CITE_TUPLE } else { CITE_MANIFOLD }.into(),
                footnote: None,
            });
        }
    }
    rows.push(TableRow {
        space: "T^3".into(),
        closed_form: Some(11),
        general_rule: ct_lower_from_tuple(&DegreeTuple::new(vec![1, 1, 1]).expect("positive")),
        upper: None,
        citation: "ad hoc linear-independence argument".into(),
        footnote: Some(1),
    });
    BoundTable {
        title: "covering type lower bounds: products of spheres".into(),
        rows,
        footnotes: vec![
            "fixed value from a hand argument using three independent degree-one \
             classes; not computed here. The general rule on (1,1,1) gives 10."
                .into(),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: &[usize]) -> DegreeTuple {
        DegreeTuple::new(v.to_vec()).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(200, 100), u128::MAX);
        assert_eq!(binomial(60, 30), 118264581564861424);
    }

    #[test]
    fn category_bounds() {
        assert_eq!(ct_lower_from_cat(1), 1);
        assert_eq!(ct_lower_from_cat(3), 6);
        assert_eq!(ct_lower_from_cat_hdim(3, 2), 6);
        assert_eq!(ct_lower_from_cat_hdim(1, 0), 1);
        // spheres: 1 + n + 1 = n + 2, which is exactly ct(S^n)
        assert_eq!(ct_lower_from_cat_hdim(2, 5), 7);
        assert_eq!(pl_lower_connected(2, 0, 3), 6);
        assert_eq!(cat_upper_from_ct(3), Ok(2));
        assert_eq!(
            cat_upper_from_ct(0),
            Err(Error::DomainError("cover size must be at least 1".into()))
        );
        assert!(matches!(cat_upper_from_ct_hdim(2, 2), Err(Error::DomainError(_))));
        for h in 0..10 {
            assert!(cat_upper_from_ct_hdim(h + 3, h).unwrap() <= 2);
            assert!(cat_upper_from_ct_hdim(h + 6, h).unwrap() <= 3);
        }
        assert_eq!(cat_upper_connectivity(0, 0), 1);
        assert_eq!(cat_upper_connectivity(7, 0), 8);
    }

    #[test]
    fn tuple_bounds() {
        assert_eq!(ct_lower_from_tuple(&t(&[1, 3])), 11);
        assert_eq!(ct_lower_from_tuple(&t(&[4])), 6);
        assert_eq!(projective_lower(ProjectiveKind::Real, 3), 10);
        assert_eq!(projective_lower(ProjectiveKind::Complex, 2), 9);
        assert_eq!(projective_lower(ProjectiveKind::Quaternionic, 2), 15);
        assert_eq!(unitary_lower(3), 27);
        assert_eq!(special_unitary_lower(3), 17);
        assert_eq!(special_unitary_lower(2), 5);
        assert_eq!(hspace_ctp(&[(1, 3)]), 6);
        assert_eq!(hspace_ctp(&[(1, 2), (3, 2)]), 11);
        assert_eq!(hspace_ctp(&[]), 1);
    }

    #[test]
    fn moore_values() {
        assert_eq!(moore_free_ct(1, 4), 6);
        assert_eq!(moore_free_ct(2, 1), 4);
        assert_eq!(moore_free_ct(7, 1), 6);
        assert_eq!(moore_free_ct(2, 3), 6);
        assert_eq!(manifold_2n_lower(1, 2), 7);
        assert_eq!(manifold_2n_lower(4, 1), 15);
        assert_eq!(
            product_spheres_lower(2, 1),
            Err(Error::OrderViolation { m: 2, n: 1 })
        );
        assert_eq!(wedge_upper(3, 4, 1, 2), 5);
        assert_eq!(cyclic_moore_bounds(2, 1), (4, 7));
        assert_eq!(general_moore_upper(0, &[2], 1), Ok(7));
        assert_eq!(general_moore_upper(1, &[2], 1), Ok(8));
        assert_eq!(general_moore_upper(0, &[2, 2], 1), Ok(11));
        assert!(general_moore_upper(0, &[], 1).is_err());
    }

    #[test]
    fn torus_report() {
        let p = SpaceProfile::new(2, 0, 3).unwrap().with_tuples("Q", [t(&[1, 1])]);
        let r = best_ct_lower(&p).unwrap();
        assert_eq!(r.best_value(), Some(6));
        assert!(r.skipped.iter().any(|s| s.reason.starts_with("MissingField")));
        assert!(r.to_string().contains("best: ct >= 6"));
    }

    #[test]
    fn contractible_report() {
        let r = best_ct_lower(&SpaceProfile::new(0, 0, 1).unwrap()).unwrap();
        assert_eq!(r.best_value(), Some(1));
    }

    #[test]
    fn upper_report_takes_minimum() {
        let r = cat_upper_report(7, Some(2), Some(1)).unwrap();
        assert_eq!(r.best_value(), Some(2));
        assert_eq!(pl_lower_report(4, 1, 3).unwrap().best_value(), Some(9));
    }

    #[test]
    fn tables_carry_citations() {
        for table in [
            projective_table(4),
            unitary_table(4),
            moore_table(4),
            products_table(4),
        ] {
            assert!(table.rows.iter().all(|r| !r.citation.is_empty()));
        }
        let u = unitary_table(3);
        assert_eq!(u.row("SU(2)").unwrap().general_rule, 5);
        assert_eq!(u.row("SU(2)").unwrap().footnote, Some(2));
        assert_eq!(u.row("U(3)").unwrap().footnote, None);
        assert!(u.to_string().contains("5 [2]"));
    }
}
