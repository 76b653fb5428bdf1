//! Exact counting of Hamiltonian cycles in generalized Petersen graphs
//! G(n,k), and mining of the linear recurrences those counts satisfy.
//!
//! The pipeline has three stages:
//!
//! 1. **Catalog** ([`sides`], [`signatures`]): enumerate every way an
//!    admissible subgraph can meet the k leftmost/rightmost columns of the
//!    cut-open graph G′(n,k), and every signature (left pattern, right
//!    pattern, loose-end pairing) such a subgraph can present.
//! 2. **Transfer** ([`transfer`]): signatures form a directed graph σ_k
//!    whose arcs describe how one more column extends a partial subgraph.
//!    Stepping a count vector along σ_k from its direct-enumeration seed
//!    ([`enumerate`]) yields h_k(n), the number of Hamiltonian cycles of
//!    G(n,k), for every n in one sweep.
//! 3. **Recurrences** ([`recurrences`], [`krylov`], [`berlekamp`],
//!    [`scc`]): the count sequences satisfy linear recurrences fixed by
//!    the spectral structure of σ_k; we compute characteristic polynomials
//!    per strongly connected component, combine them, minimize against the
//!    actual sequences, and verify the results exactly.
//!
//! All arithmetic on counts and polynomials is exact (`BigInt` /
//! `BigRational`); nothing in the pipeline is floating-point or modular.

pub mod berlekamp;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod golden;
pub mod graph;
pub mod krylov;
pub mod poly;
pub mod recurrences;
pub mod scc;
pub mod sides;
pub mod signatures;
pub mod transfer;
pub mod verify;

pub use error::CoreError;
pub use graph::{FramedGraph, PetersenGraph};
pub use poly::Poly;
pub use recurrences::{mine_report, CensusAnnihilator, CharPolyReport};
pub use signatures::{Signature, SignatureCatalog};
pub use transfer::{CountSeries, Engine, LinearSystem, SigmaGraph, StateVector};
pub use verify::{run_checks, CheckOutcome, VerifyConfig, VerifyScope, VerifySummary};
