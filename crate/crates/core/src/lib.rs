//! Exact computational topology for finite simplicial complexes.
//!
//! The crate computes integral and field homology through Smith normal form,
//! builds cohomology rings under the Alexander–Whitney cup product, evaluates
//! lower and upper bounds for covering type, LS-category and vertex-minimal
//! triangulations, constructs minimal-vertex Moore space witnesses, and
//! certifies extremal claims by exhaustive symmetry-pruned search over
//! subcomplexes of a simplex.
//!
//! Data-parallel work (subcomplex enumeration, witness sweeps, per-degree
//! homology) runs on rayon when the `parallel` feature is enabled and falls
//! back to sequential loops otherwise; see [`Execution`].

pub mod bounds;
pub mod cohomology;
pub mod constructions;
mod error;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod nerve;
pub mod oracle;
mod parallel;
pub mod simplicial;

pub use error::{Error, Result};
pub use parallel::Execution;

pub use cohomology::{CohomologyAlgebra, DegreeTuple};
pub use homology::HomologyProfile;
pub use linalg::{Coefficients, IntMatrix, SnfDecomposition};
pub use simplicial::{FVector, Simplex, SimplicialComplex, Vertex};
