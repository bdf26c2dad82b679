//! Exact computer algebra for Danielewski hypersurfaces.
//!
//! A Danielewski hypersurface is the affine surface in 3-space cut out by
//! `x^n*y = Q(x,z)` where `n >= 1` and `Q(0,z)` has degree at least two.
//! This crate represents such surfaces exactly (rational or algebraic-number
//! coefficients, never floats) and implements:
//!
//! - the canonical locally nilpotent derivation and the additive group
//!   action it integrates to ([`surface`]),
//! - reduction to standard, reduced standard and normal forms, each step
//!   certified by an explicit polynomial map ([`reduce`]),
//! - decision procedures for isomorphism (as abstract surfaces) and for
//!   equivalence (under an automorphism of ambient 3-space), returning
//!   verified witness maps or a named obstruction ([`classify`]),
//! - construction of non-equivalent embedding pairs ([`classify`]).
//!
//! Every positive verdict ships a witness: a polynomial self-map of 3-space
//! together with its inverse and a scalar multiplier, re-checked by exact
//! substitution before it is returned. Verification never relies on the
//! search that produced the witness.

pub mod field;
pub mod poly;
pub mod surface;
pub mod reduce;
pub mod transform;

pub use field::{FieldElement, NumberField, Rat};
pub use poly::{AmbientPoly, BiPoly, Degree, LaurentBiPoly, UniPoly};
pub use surface::DanielewskiSurface;
