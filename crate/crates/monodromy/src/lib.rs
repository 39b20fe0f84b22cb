//! Exact certification of permutation monodromy data and three-branch-point
//! rational maps.
//!
//! The crate has two halves that meet in [`belyi`]:
//!
//! * group theory over explicit permutations: [`perm`] (elements),
//!   [`bsgs`] (stabilizer chains: order, membership, primitivity),
//!   [`classes`] (conjugacy classes by orbit enumeration) and
//!   [`triples`] (generating triples, rigidity censuses, nice-triple scan);
//! * exact polynomial arithmetic over the integers: [`poly`] (factored-form
//!   parsing, expansion, gcd, squarefree decomposition) and [`belyi`]
//!   (ramification profiles of rational maps and their certification
//!   against permutation triples).
//!
//! Everything is computed with exact integer arithmetic; no step accepts a
//! numerical tolerance. Operations whose cost is data-dependent (class
//! enumeration and everything built on it) take a [`budget::Budget`] and
//! report resource exhaustion as a distinct outcome instead of guessing.
//!
//! With the default `parallel` feature the hot loops (class closure, census
//! streaming) fan out through rayon; disabling the feature compiles the
//! sequential fallbacks only. Both paths produce identical results.

pub mod belyi;
pub mod bsgs;
pub mod budget;
pub mod classes;
pub mod fingerprint;
pub mod perm;
pub mod poly;
pub mod triples;

pub use budget::Budget;
pub use perm::{CycleType, Permutation};
