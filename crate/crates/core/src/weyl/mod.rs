//! Extended affine Weyl groups `W_Cox ⋊ Ω`.
//!
//! The Coxeter part is realized through its integral root representation:
//! an element acts on the simple roots, and `ℓ(ws) < ℓ(w)` exactly when
//! `w(α_s)` is a negative root. Elements are stored in ShortLex normal form
//! (the lexicographically least reduced word) together with the index of
//! their length-zero part `ω ∈ Ω`. Ω acts by diagram automorphisms, so
//! `ω s_i ω^-1 = s_{π_ω(i)}` and `ℓ(uω) = ℓ(u)`.
//!
//! The length function on the non-Coxeter group is the standard extension
//! `ℓ(uω) = ℓ(u)`; nothing in this crate relies on any other formula for it.

mod ball;
mod descriptor;
mod group;

pub use ball::{Ball, NONE};
pub use descriptor::{AffineType, CoxeterMatrix, GroupDescriptor};
pub use group::{ElementRepr, Group, GroupElement, GroupId};
