use std::collections::{BTreeMap, BTreeSet};

use dashu_int::{IBig, Sign};
use dashu_ratio::RBig;
use serde::Serialize;

use crate::laurent::QuadExt;
use crate::weyl::GroupElement;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub rank: usize,
    pub vectors: usize,
    pub columns: usize,
    /// `"Q(sqrt(q))"`, or `"Q"` when `q` is a rational square.
    pub field: String,
}

impl RankReport {
    pub fn full_rank(&self) -> bool {
        self.rank == self.vectors
    }
}

trait Scalar: Clone {
    fn is_zero(&self) -> bool;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn inv(&self) -> Self;
}

impl Scalar for RBig {
    fn is_zero(&self) -> bool {
        *self == RBig::ZERO
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Self {
        RBig::ONE / self
    }
}

impl Scalar for QuadExt {
    fn is_zero(&self) -> bool {
        QuadExt::is_zero(self)
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    // (a0 + a1 v)^-1 = (a0 - a1 v) / (a0^2 - q a1^2); the norm is nonzero
    // because q is not a square.
    fn inv(&self) -> Self {
        let norm = &self.a0 * &self.a0 - &self.a1 * &self.a1 * &self.q;
        QuadExt::new(&self.a0 / &norm, -(&self.a1 / &norm), self.q.clone())
    }
}

fn integer_sqrt(n: &IBig) -> Option<IBig> {
    let (sign, mag) = n.clone().into_parts();
    if sign == Sign::Negative {
        return None;
    }
    let r = mag.nth_root(2);
    (&r * &r == mag).then(|| IBig::from(r))
}

/// `√q` when `q > 0` is the square of a rational.
pub fn rational_sqrt(q: &RBig) -> Option<RBig> {
    let num = integer_sqrt(q.numerator())?;
    let den = integer_sqrt(&IBig::from(q.denominator().clone()))?;
    Some(RBig::from(num) / RBig::from(den))
}

fn rank<F: Scalar>(mut rows: Vec<Vec<F>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][c].inv();
        let pivot: Vec<F> = rows[rank].iter().map(|x| x.mul(&inv)).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot).skip(c) {
                *x = x.sub(&p.mul(&f));
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// Exact rank of vectors with coordinates `a0 + a1 v`, `v² = q`.
///
/// When `q` is not a rational square, `Q[v]/(v² - q)` is the field
/// `Q(√q)` and elimination runs there. When it is a square that ring is not
/// a field, so `v` is evaluated at the positive root `√q ∈ Q` instead,
/// which is the real specialization `v = q^{1/2}`.
pub fn rank_over_sqrt_field(rows: &[BTreeMap<GroupElement, QuadExt>], q: &RBig) -> RankReport {
    let cols: Vec<&GroupElement> = rows
        .iter()
        .flat_map(|r| r.keys())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let zero = QuadExt::zero(q.clone());
    let dense: Vec<Vec<QuadExt>> = rows
        .iter()
        .map(|r| {
            cols.iter()
                .map(|c| r.get(*c).cloned().unwrap_or_else(|| zero.clone()))
                .collect()
        })
        .collect();
    let (rank, field) = match rational_sqrt(q) {
        Some(root) => {
            let rat = dense
                .into_iter()
                .map(|r| r.into_iter().map(|x| &x.a0 + &x.a1 * &root).collect())
                .collect();
            (rank::<RBig>(rat), "Q".to_string())
        }
        None => (rank(dense), format!("Q(sqrt({q}))")),
    };
    RankReport {
        rank,
        vectors: rows.len(),
        columns: cols.len(),
        field,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{AffineType, Group, GroupDescriptor};

    fn qe(a0: i64, a1: i64, q: i64) -> QuadExt {
        QuadExt::new(a0.into(), a1.into(), q.into())
    }

    #[test]
    fn squares() {
        assert_eq!(rational_sqrt(&RBig::from(4)), Some(RBig::from(2)));
        assert_eq!(rational_sqrt(&RBig::from(2)), None);
        assert_eq!(
            rational_sqrt(&RBig::from_parts(9.into(), 4u8.into())),
            Some(RBig::from_parts(3.into(), 2u8.into()))
        );
    }

    #[test]
    fn dependence_detected_in_both_fields() {
        let g = Group::new(&GroupDescriptor::new(AffineType::A1, false)).unwrap();
        let (a, b) = (g.generator(0), g.generator(1));
        // (2, 2v) = v·(v, 2) since v^2 = 2
        let rows = vec![
            BTreeMap::from([(a.clone(), qe(0, 1, 2)), (b.clone(), qe(2, 0, 2))]),
            BTreeMap::from([(a.clone(), qe(2, 0, 2)), (b.clone(), qe(0, 2, 2))]),
        ];
        assert_eq!(rank_over_sqrt_field(&rows, &RBig::from(2)).rank, 1);
        // over q = 4 the specialization v = 2 gives (2,2) and (2,4)
        let rows4: Vec<_> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(k, x)| (k.clone(), QuadExt::new(x.a0.clone(), x.a1.clone(), 4.into())))
                    .collect()
            })
            .collect();
        let rep = rank_over_sqrt_field(&rows4, &RBig::from(4));
        assert_eq!((rep.rank, rep.field.as_str()), (2, "Q"));
        // 2 - v is a zero divisor in Q[v]/(v^2-4) and vanishes at v = 2
        let rows = vec![BTreeMap::from([(a, qe(2, -1, 4))]), BTreeMap::from([(b, qe(1, 0, 4))])];
        assert_eq!(rank_over_sqrt_field(&rows, &RBig::from(4)).rank, 1);
    }
}
