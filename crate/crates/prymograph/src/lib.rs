//! Combinatorics of Prym and spin fibers over stable curves, computed on
//! weighted dual graphs.
//!
//! A stable curve is encoded by its dual graph: one vertex per irreducible
//! component (weighted by geometric genus), one edge per node, with loops and
//! parallel edges allowed. Everything downstream is graph arithmetic:
//!
//! - [`cycles`]: the GF(2) cycle space of eulerian edge subsets, `|C_Γ| = 2^{b₁}`;
//! - [`fiber`]: which quasistable models support a square root of the trivial
//!   bundle, how many, with what multiplicity — the multiplicity sets
//!   `L(P_Z)` and `L(S_Z)`, component counts, and the length identity `2^{2g}`;
//! - [`degrees`]: multidegrees of `η ⊗ ω^t` and exact-rational certification
//!   of the Basic Inequality over every complete subcurve;
//! - [`cover`]: combinatorial admissible double covers with explicit deck
//!   involution, built from monodromy data and verified against the genus law;
//! - [`search`]: exhaustive enumeration of small stable graphs up to
//!   isomorphism, multiplicity-set collisions, and structure-theorem sweeps;
//! - [`io`]: deterministic JSON and DOT serialization shared by the CLI.
//!
//! All counts that can exceed 64 bits (`2^{2g}` and friends) use
//! arbitrary-precision integers; all inequality arithmetic is exact rational.
//! No floating point is used anywhere.

pub mod canon;
pub mod cover;
pub mod cycles;
pub mod degrees;
pub mod error;
pub mod fiber;
pub mod graph;
pub mod io;
pub mod search;

pub use error::{Error, Result};
pub use graph::{DualGraph, EdgeSubset, QuasistableModel};
