//! Lusztig's a-function, the constants `γ_{x,y,z}`, the ring `J` with basis
//! `t_w`, distinguished involutions, and the homomorphism `φ: H → J ⊗ A`.
//!
//! The a-function is an infimum over infinitely many pairs, so it is only
//! ever computed as a monotone lower bound from a finite scan, with an
//! explicit certification radius. Everything downstream (γ, products in
//! `J`, `φ`) refuses to run outside the range where the a-values it needs
//! are certified.
//!
//! `γ_{x,y,z}` is the constant term of `v^{a(z)} h_{x,y,z}`, in either sign
//! convention. Coefficients are integers throughout.

mod afn;
mod rank;
mod ring;

pub use afn::{AFunction, AValue};
pub use rank::{rank_over_sqrt_field, rational_sqrt, RankReport};
pub use ring::{JElement, JRing, JTensorAElement};
