use serde::Serialize;

use crate::error::{Error, Result};
use crate::hecke::{HeckeAlgebra, RowMemo};
use crate::weyl::GroupElement;

/// A value of the a-function together with how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AValue {
    pub z: GroupElement,
    pub value: u32,
    pub scan_radius: usize,
    pub certified: bool,
}

/// Lower bounds for `a(z)` from a scan of all `h_{x,y,z}` with
/// `ℓ(x), ℓ(y) ≤ scan_radius`.
///
/// `a(z)` is the largest pole order `-min deg_v h_{x,y,z}` seen, or 0. The
/// value for `z` is trusted once `scan_radius ≥ ℓ(z) + 2ℓ(w0) + 2`.
/// Diagram automorphisms preserve `h`, so `y` only runs over orbit
/// representatives and the results are symmetrized afterwards. Since
/// `h^signed = ±h^unsigned` coefficientwise, the unsigned constants suffice.
pub struct AFunction {
    scan_radius: usize,
    values: Vec<u32>,
    certifiable: bool,
    finite_longest: usize,
    pairs_scanned: u64,
}

impl AFunction {
    /// Runs the scan. Needs a KL table of radius `≥ 2·scan_radius`.
    pub fn scan(alg: &HeckeAlgebra, scan_radius: usize) -> Result<Self> {
        let needed = 2 * scan_radius;
        if alg.radius() < needed {
            return Err(Error::RadiusExceeded {
                needed,
                available: alg.radius(),
            });
        }
        let ball = alg.table().ball();
        let engine = alg.engine();
        let inner = ball.prefix(scan_radius);
        let autos = ball.automorphism_count();
        let is_rep = |y: u32| (0..autos).all(|a| ball.automorphism_image(a, y) >= y);
        let mut recorded = vec![0u32; ball.prefix(needed).len()];
        let mut pairs = 0u64;
        for y in inner.clone().filter(|&y| is_rep(y)) {
            let mut memo = RowMemo::new();
            for x in inner.clone() {
                engine.product_into(x, y, false, &mut memo)?;
            }
            pairs += memo.len() as u64;
            for prod in memo.values() {
                for (z, c) in prod {
                    let low = c.lowest_exponent().expect("nonzero");
                    if low < 0 {
                        let r = &mut recorded[*z as usize];
                        *r = (*r).max((-low) as u32);
                    }
                }
            }
        }
        let values = (0..recorded.len() as u32)
            .map(|z| {
                (0..autos)
                    .map(|a| recorded[ball.automorphism_image(a, z) as usize])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        Ok(Self {
            scan_radius,
            values,
            certifiable: alg.group().is_certifiable(),
            finite_longest: alg.group().finite_longest_length(),
            pairs_scanned: pairs,
        })
    }

    pub fn scan_radius(&self) -> usize {
        self.scan_radius
    }

    /// Largest `ℓ(z)` whose value is certified.
    pub fn certified_radius(&self) -> Option<usize> {
        if !self.certifiable {
            return None;
        }
        self.scan_radius.checked_sub(2 * self.finite_longest + 2)
    }

    /// Number of products `C'_x C'_y` evaluated.
    pub fn pairs_scanned(&self) -> u64 {
        self.pairs_scanned
    }

    /// Value by Coxeter ball index.
    pub(crate) fn value_by_index(&self, z: u32) -> u32 {
        self.values[z as usize]
    }

    /// `a(z)`; the Ω part of `z` does not matter.
    pub fn value(&self, alg: &HeckeAlgebra, z: &GroupElement) -> Result<AValue> {
        let zi = alg.table().index_of(z)?;
        if zi as usize >= self.values.len() {
            return Err(Error::RadiusExceeded {
                needed: z.length(),
                available: 2 * self.scan_radius,
            });
        }
        Ok(AValue {
            z: z.clone(),
            value: self.values[zi as usize],
            scan_radius: self.scan_radius,
            certified: self.certified_radius().is_some_and(|r| z.length() <= r),
        })
    }
}
