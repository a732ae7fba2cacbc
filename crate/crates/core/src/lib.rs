//! Residues of n-torsion Brauer classes over rational function fields `F_q(t)`.
//!
//! Two independent computations of the residue map `Br(K)[n] → H¹(κ, Z/n)` are
//! provided: the tame symbol, and the explicit cocycle construction on the
//! n-th root stack (the `ε` cocycle and its coboundary). The [`cohomology`]
//! module supplies the finite group cohomology these rest on, and [`conic`]
//! checks the geometric reading of residues for conic bundles over `P¹`.

pub mod error;
pub mod cli;
pub mod cohomology;
pub mod conic;
pub mod field;
pub mod symbol;

pub use error::{Error, Result};
