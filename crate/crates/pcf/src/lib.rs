//! Maximum-size properly colored forests and trees in edge-colored multigraphs.
//!
//! A subgraph is *properly colored* if any two adjacent edges have distinct
//! colors. This crate provides:
//!
//! - the instance data model with parsing, serialization and a feasibility
//!   verifier ([`graph`]);
//! - maximum-cardinality and maximum-weight matching in general graphs,
//!   plus the matching-matroid rank oracle built on top ([`matching`]);
//! - the sum of the per-color matching matroids: maximum matching-coverable
//!   sets and coverability queries with forced edges ([`matroid`]);
//! - the forest solvers: an exact algorithm for 2-edge-colored complete
//!   multigraphs, a 5/9-approximation for general multigraphs and a
//!   union-of-matchings algorithm for simple graphs ([`solvers`]);
//! - an approximation algorithm for maximum properly colored trees in
//!   complete multigraphs ([`maxpt`]);
//! - brute-force exact solvers used as ground truth ([`oracle`]);
//! - seeded instance generators and reduction-based instance families
//!   ([`instances`]).

pub mod graph;
pub mod instances;
pub mod matching;
pub mod matroid;
pub mod maxpt;
pub mod oracle;
pub mod ratio;
pub mod solvers;
