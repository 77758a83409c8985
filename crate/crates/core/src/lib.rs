//! Discrete phase-space toolkit for odd-dimensional qudits.
//!
//! The crate implements, with exact modular and cyclotomic arithmetic where
//! it matters:
//!
//! - [`zmod`]: residues mod odd `d`, symbolic roots of unity, element orders
//! - [`phasespace`]: the symplectic form on `Z_d^{2n}`, submodules,
//!   complements, subgroup characters and symplectic matrices
//! - [`weyl`]: shift/boost and Weyl operators, characteristic functions
//! - [`wigner`]: phase-point operators, Wigner functions and their calculus
//! - [`stabilizer`]: stabilizer states and codes, graph states, counting
//! - [`clifford`]: metaplectic synthesis and Clifford recognition
//! - [`hudson`]: positivity classification of pure states and the mixed-state
//!   counterexample with an exact LP certificate
//! - [`galois`]: `F_{p^n}` arithmetic, trace-dual bases and the relabeling
//!   map onto `Z_p^{2n}`
//! - [`io`]: the JSON/CSV/PGM/SVG file formats shared with the CLI

pub mod clifford;
pub mod cyclo;
pub mod error;
pub mod galois;
pub mod hudson;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod phasespace;
pub mod stabilizer;
pub mod weyl;
pub mod wigner;
pub mod zmod;

pub use error::{Error, Result};
pub use phasespace::{PhaseVector, SymplecticMatrix, Submodule};
pub use zmod::{Modulus, RingElement, RingVector, UnitPhase};
