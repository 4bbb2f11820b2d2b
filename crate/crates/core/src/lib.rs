//! Quantum Bruhat graph combinatorics on `S_n` and exact membership tests for tilted Richardson
//! varieties in the complete flag variety.
//!
//! Permutations are one-line words with 1-based values. Right multiplication by `t_ij` swaps
//! positions `i` and `j`; composition is `(uv)(i) = u(v(i))`.

pub mod diagrams;
pub mod error;
pub mod format;
pub mod geom;
pub mod latticepath;
pub mod perm;
pub mod qbg;
pub mod signed;
pub mod tilted;
pub mod valueset;
pub mod verify;

pub use error::{Error, Result};
pub use format::Format;
pub use latticepath::ShiftSequence;
pub use perm::{parse_permutation, Permutation, Root};
pub use qbg::{QExponent, QbgEdge, QuantumBruhatGraph};
pub use valueset::ValueSet;
