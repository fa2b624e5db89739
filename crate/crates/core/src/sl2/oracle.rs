use dashu_ratio::RBig;
use serde::Serialize;

use super::cell::LatticeCondition;
use crate::error::{Error, Result};

/// Default cap on first columns visited per count.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Outcome of an enumeration over `SL(2, Z/p^m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountResult {
    pub p: u64,
    pub depth: u32,
    /// Matrices satisfying the condition.
    pub hits: u64,
    /// `#SL(2, Z/p^m)`.
    pub order: u64,
    /// First columns visited.
    pub visited: u64,
}

impl CountResult {
    pub fn fraction(&self) -> RBig {
        RBig::from(self.hits) / RBig::from(self.order)
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn modulus(p: u64, m: u32) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("p = {p} is not prime")));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("depth m must be positive".into()));
    }
    p.checked_pow(m)
        .ok_or_else(|| Error::InvalidArgument(format!("{p}^{m} overflows")))
}

/// Counts `g ∈ SL(2, Z/p^m)` with `val(a) ≥ ta` and `val(c) ≥ tc`, where
/// `(a, c)` is the first column of `g`.
///
/// The reduction `SL(2, Z_p) → SL(2, Z/p^m)` is onto with equal fibres, and
/// `val(x) ≥ t` is read off `x mod p^m` whenever `t ≤ m`. A first column
/// lifts to an element of `SL(2, Z/p^m)` iff it is primitive, and then has
/// exactly `p^m` completions `(b, d)`. The count walks all `p^{2m}` columns.
pub fn count_first_column(p: u64, m: u32, ta: u32, tc: u32, budget: u64) -> Result<CountResult> {
    let pm = modulus(p, m)?;
    for t in [ta, tc] {
        if t > m {
            return Err(Error::DepthTooSmall { threshold: t, depth: m });
        }
    }
    let visited = pm
        .checked_mul(pm)
        .filter(|&v| v <= budget)
        .ok_or(Error::BudgetExceeded {
            needed: pm.saturating_mul(pm),
            budget,
        })?;
    let (ma, mc) = (p.pow(ta), p.pow(tc));
    let (mut primitive, mut hits) = (0u64, 0u64);
    for a in 0..pm {
        for c in 0..pm {
            if a % p == 0 && c % p == 0 {
                continue;
            }
            primitive += 1;
            if a % ma == 0 && c % mc == 0 {
                hits += 1;
            }
        }
    }
    Ok(CountResult {
        p,
        depth: m,
        hits: hits * pm,
        order: primitive * pm,
        visited,
    })
}

/// `vol(K_{n,r})/vol(K)` (resp. `K'_{n,r}`) by enumeration mod `p^m`.
pub fn brute_force_count(p: u64, m: u32, n: i64, r: i64, cond: LatticeCondition, budget: u64) -> Result<CountResult> {
    let (ta, tc) = cond.thresholds(n, r);
    count_first_column(p, m, ta, tc, budget)
}

/// Smallest depth at which [`brute_force_count`] can decide `(n, r, cond)`.
pub fn count_depth(n: i64, r: i64, cond: LatticeCondition) -> u32 {
    let (ta, tc) = cond.thresholds(n, r);
    ta.max(tc).max(1)
}

/// `H_n = K ∩ x_n I x_n^{-1}` is cut out by `val(b) ≥ 2n` for `n > 0` and by
/// `val(c) ≥ 1 - 2n` for `n ≤ 0`. Transposition swaps `b` and `c`, so both
/// are first-column counts.
fn volume_threshold(n: i64) -> u32 {
    (if n > 0 { 2 * n } else { 1 - 2 * n }) as u32
}

/// Smallest depth at which [`brute_force_volume_ratio`] can decide `n`.
pub fn volume_depth(n: i64) -> u32 {
    volume_threshold(n)
}

/// `vol(X_n)/vol(K) = [K : H_n]/(q+1)` at `q = p`, by enumeration mod `p^m`.
pub fn brute_force_volume_ratio(p: u64, m: u32, n: i64, budget: u64) -> Result<(RBig, CountResult)> {
    let res = count_first_column(p, m, 0, volume_threshold(n), budget)?;
    let ratio = RBig::from(res.order) / (RBig::from(res.hits) * RBig::from(p + 1));
    Ok((ratio, res))
}

/// `#SL(2, Z/p^m)` and the per-column fibre sizes, by walking all `p^{4m}`
/// matrices. Only for tiny moduli.
pub fn enumerate_sl2(p: u64, m: u32) -> Result<(u64, Vec<u64>)> {
    let pm = modulus(p, m)?;
    if pm > 32 {
        return Err(Error::BudgetExceeded {
            needed: pm.pow(4),
            budget: 32u64.pow(4),
        });
    }
    let mut fibres = vec![0u64; (pm * pm) as usize];
    for a in 0..pm {
        for c in 0..pm {
            for b in 0..pm {
                for d in 0..pm {
                    if (a * d + pm * pm - b * c) % pm == 1 % pm {
                        fibres[(a * pm + c) as usize] += 1;
                    }
                }
            }
        }
    }
    Ok((fibres.iter().sum(), fibres))
}
