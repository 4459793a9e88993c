//! Exact computer-algebra engine for XC-structures on finite-dimensional
//! algebras, specialized to the Sweedler algebra, and for universal knot
//! invariants of rotational diagrams.
//!
//! The crate is organized bottom-up:
//!
//! - [`scalar`]: exact arithmetic in ℚ(i) and rational functions in declared
//!   parameters, plus the expression mini-language used by all file formats.
//! - [`algebra`]: structure-constant algebras, their elements and tensor
//!   powers, and exact linear solving for inverses.
//! - [`sweedler`]: the Sweedler algebra `SW`, its radical, the standard
//!   ribbon structure and the four built-in XC families.
//! - [`xc`]: XC-structure containers, axiom verification (symbolic and
//!   sampled), derived elements, and the defining polynomial system.
//! - [`diagram`]: rotational long-knot diagrams, their statistics, and
//!   translation to bead words.
//! - [`invariant`]: exact evaluation of the universal invariant.
//! - [`polysys`]: multivariate division, Buchberger's algorithm, and ideal
//!   membership over ℚ(i) with optional constant parameters.

pub mod algebra;
pub mod diagram;
pub mod invariant;
pub mod polysys;
pub mod sample;
pub mod scalar;
pub mod sweedler;
pub mod xc;
