//! Construction and desk-scale certification of vertex-transitive
//! non-Cayley graphs.
//!
//! The crate provides:
//!
//! - [`perm`]: permutations and permutation groups with stabilizer-chain
//!   order, membership and stabilizer queries;
//! - [`groups`]: finite groups as multiplication tables (cyclic, dihedral,
//!   products, the nonabelian groups of order 3p) and their regular
//!   representations;
//! - [`graph`]: simple graphs with a canonical text format;
//! - [`construct`]: Cayley, bi-Cayley, coset, lexicographic-product, line
//!   and generalized Petersen graph builders plus a named catalog;
//! - [`aut`]: automorphism groups by partition refinement with
//!   individualization backtracking, isomorphism testing, transitivity
//!   decisions;
//! - [`structure`]: quotients, induced subgraphs, and the exhaustive
//!   regular-subgroup / semiregular-two-orbit searches behind the Cayley
//!   and bi-Cayley certifications;
//! - [`certify`]: the certification pipeline and report formats used by the
//!   `certify` and `graph` binaries.
//!
//! Batch certification is data-parallel over rayon by default; build with
//! `--no-default-features` for the sequential fallback.

pub mod aut;
pub mod certify;
pub mod construct;
pub mod graph;
pub mod groups;
pub mod par;
pub mod perm;
pub mod structure;
