//! Exact-arithmetic construction and verification of osculating self-dual
//! projective varieties via contact geometry.
//!
//! Every claim the library certifies is a polynomial identity over the
//! rationals: parametrizations, contact forms, osculating spaces, duals, and
//! genericity hypotheses are all manipulated symbolically, never numerically.

// The elimination and pairing kernels walk several matrices under one shared
// index; iterator rewrites would split that lockstep.
#![allow(clippy::needless_range_loop)]

pub mod bryant;
pub mod catalog;
pub mod contact;
pub mod exactmath;
pub mod osculation;
pub mod projective;

pub use exactmath::{MultiPoly, PolyMatrix, Rational};
pub use projective::{LinearSubspace, ParamVariety, ProjMap, ProjPoint};
