use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use dashu_int::IBig;

use super::kl::KLTable;
use crate::error::{Error, Result};
use crate::laurent::LaurentInt;

/// A sparse combination of KL basis elements, keyed by ball index and
/// sorted by index.
pub type Sparse = Vec<(u32, LaurentInt)>;

/// Products of KL basis elements of the Coxeter part, in either sign
/// convention.
///
/// With `x = s x'`, `x' < x`:
/// `C_x C_y = C_s (C_{x'} C_y) - Σ μ(z,x') C_z C_y` over `z < x'` with
/// `sz < z`, and `C_s C_w` is `ε(v+v^-1) C_w` when `sw < w`, otherwise
/// `C_{sw} + Σ μ(z,w) C_z` over `z < w` with `sz < z`. Here `ε = 1` for
/// `C'` and `ε = -1` for the signed basis.
pub struct ProductEngine {
    table: Arc<KLTable>,
    cache: RwLock<HashMap<(u32, u32, bool), Arc<Sparse>>>,
}

/// Per-`y` memo of `C_x C_y` for the `x` already visited.
pub type RowMemo = HashMap<u32, Sparse>;

impl ProductEngine {
    pub fn new(table: Arc<KLTable>) -> Self {
        Self {
            table,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn table(&self) -> &Arc<KLTable> {
        &self.table
    }

    /// `C_x C_y` for Coxeter elements given by ball index, memoized.
    pub fn product(&self, x: u32, y: u32, signed: bool) -> Result<Arc<Sparse>> {
        if let Some(p) = self.cache.read().expect("poisoned").get(&(x, y, signed)) {
            return Ok(p.clone());
        }
        let mut memo = RowMemo::new();
        self.product_into(x, y, signed, &mut memo)?;
        let p = Arc::new(memo.remove(&x).expect("computed"));
        self.cache.write().expect("poisoned").insert((x, y, signed), p.clone());
        Ok(p)
    }

    /// Computes `C_x C_y` into `memo` together with every intermediate
    /// product it depends on. Reusing one memo across many `x` with the
    /// same `y` shares that work.
    pub fn product_into(&self, x: u32, y: u32, signed: bool, memo: &mut RowMemo) -> Result<()> {
        let ball = self.table.ball();
        let needed = ball.length(x) + ball.length(y);
        if needed > self.table.radius() {
            return Err(Error::RadiusExceeded {
                needed,
                available: self.table.radius(),
            });
        }
        self.fill(x, y, signed, memo)
    }

    fn fill(&self, x: u32, y: u32, signed: bool, memo: &mut RowMemo) -> Result<()> {
        if memo.contains_key(&x) {
            return Ok(());
        }
        if x == 0 {
            memo.insert(0, vec![(y, LaurentInt::one())]);
            return Ok(());
        }
        let ball = self.table.ball();
        let s = ball.word(x)[0];
        let xp = ball.lmul(x, s);
        self.fill(xp, y, signed, memo)?;
        let zs: Vec<(u32, i64)> = self
            .table
            .mu_list(xp)
            .iter()
            .copied()
            .filter(|&(z, _)| ball.is_left_descent(z, s))
            .collect();
        for &(z, _) in &zs {
            self.fill(z, y, signed, memo)?;
        }
        let mut acc: HashMap<u32, LaurentInt> = HashMap::new();
        self.left_mul_generator(&memo[&xp], s, signed, &mut acc)?;
        for &(z, m) in &zs {
            let f = IBig::from(-m);
            for (w, c) in &memo[&z] {
                acc.entry(*w).or_default().add_scaled(c, 0, &f);
            }
        }
        memo.insert(x, into_sparse(acc));
        Ok(())
    }

    /// `acc += C_s · Σ c_w C_w`.
    fn left_mul_generator(
        &self,
        h: &[(u32, LaurentInt)],
        s: u8,
        signed: bool,
        acc: &mut HashMap<u32, LaurentInt>,
    ) -> Result<()> {
        let ball = self.table.ball();
        for (w, c) in h {
            if ball.is_left_descent(*w, s) {
                let e = acc.entry(*w).or_default();
                let f = if signed { -IBig::ONE } else { IBig::ONE };
                e.add_scaled(c, 1, &f);
                e.add_scaled(c, -1, &f);
                continue;
            }
            let sw = ball.lmul(*w, s);
            if sw == NONE_INDEX {
                return Err(Error::RadiusExceeded {
                    needed: ball.length(*w) + 1,
                    available: self.table.radius(),
                });
            }
            *acc.entry(sw).or_default() += c;
            for &(z, m) in self.table.mu_list(*w) {
                if ball.is_left_descent(z, s) {
                    acc.entry(z).or_default().add_scaled(c, 0, &IBig::from(m));
                }
            }
        }
        Ok(())
    }
}

const NONE_INDEX: u32 = crate::weyl::NONE;

pub(crate) fn into_sparse(acc: HashMap<u32, LaurentInt>) -> Sparse {
    let mut v: Sparse = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    v.sort_unstable_by_key(|(i, _)| *i);
    v
}
