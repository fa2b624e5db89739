//! The Hecke algebra over `A = Z[v, v^-1]` with `q = v^2`.
//!
//! Conventions: `T_s^2 = (q-1) T_s + q`, `~T_w = v^{-ℓ(w)} T_w`, hence
//! `~T_s^2 = (v - v^-1) ~T_s + 1`. Two KL bases are provided: the signed
//! `C_w` (`C_s = ~T_s - v`) and the unsigned `C'_w` (`C'_s = ~T_s + v^-1`).
//! The automorphism `~T_s -> -~T_s^-1`, `v -> v` carries `C'_w` to
//! `(-1)^{ℓ(w)} C_w`, so the two families of structure constants differ by
//! `(-1)^{ℓ(x)+ℓ(y)+ℓ(z)}`. Both are computed independently and compared in
//! the tests rather than derived from each other.
//!
//! For extended groups `C_{uω} = C_u T_ω` and `P_{uω,vω'} = δ_{ω,ω'} P_{u,v}`.

mod element;
mod kl;
mod product;

pub use element::{Basis, HeckeAlgebra, HeckeElement, HeckeRepr, HeckeTerm};
pub use kl::KLTable;
pub use product::{ProductEngine, RowMemo, Sparse};
