//! Bi-Iwahori-invariant functions on `SL(2, F)` for a local field `F` with
//! residue field of size `q`.
//!
//! `K = SL(2, O)`, `I ⊂ K` is the Iwahori subgroup, `x_n = diag(t^n, t^{-n})`
//! and `X_n = K x_n I`. Haar measure is normalized by `vol(I) = 1`, so
//! `vol(K) = q + 1`. All values are exact elements of `Q(q)`.
//!
//! The function `f = Σ γ_n χ_{X_n}` is stored as a [`CellFunction`]: finitely
//! many explicit coefficients plus a geometric tail on each side. Convolutions
//! `f ⋆ χ_L` at `(t^{-r}, 0)` are computed from the case tables of
//! [`conv_cell_value`] and summed in closed form. [`oracle`] recomputes the
//! volumes involved by counting in `SL(2, Z/p^m)`.

mod cell;
pub mod oracle;
mod ratfunc;

pub use cell::{
    conv_cell_value, conv_f_value, convergence_check, expected_conv_f_value, gamma_n, pair_sum, partial_pair_sum,
    schwartz_decay_check, tail_bound, verify_relations, volume_ratio, CellFunction, ConvergenceCheck, DecayEntry,
    DecayReport, LatticeCondition, RelationCheck, RelationReport, Tail,
};
pub use oracle::{brute_force_count, brute_force_volume_ratio, CountResult};
pub use ratfunc::RatFunc;
