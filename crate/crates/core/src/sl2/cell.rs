use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use dashu_ratio::RBig;
use serde::{Serialize, Serializer};

use super::ratfunc::{rabs, RatFunc};
use crate::error::{Error, Result};

/// Geometric tail: `init·ratio^k` at the index `k` steps past `start`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tail {
    pub start: i64,
    pub init: RatFunc,
    pub ratio: RatFunc,
}

impl Tail {
    pub fn new(start: i64, init: RatFunc, ratio: RatFunc) -> Self {
        Tail { start, init, ratio }
    }

    fn at(&self, steps: u64) -> RatFunc {
        &self.init * &self.ratio.pow(steps as u32)
    }
}

/// An eventually geometric coefficient family `n ↦ c_n` on `Z`.
///
/// `upper` covers `n ≥ upper.start`, `lower` covers `n ≤ lower.start`, and
/// `exceptional` overrides both. Everything else is zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellFunction {
    pub exceptional: BTreeMap<i64, RatFunc>,
    pub upper: Option<Tail>,
    pub lower: Option<Tail>,
}

impl CellFunction {
    pub fn new(exceptional: BTreeMap<i64, RatFunc>, upper: Option<Tail>, lower: Option<Tail>) -> Result<Self> {
        if let (Some(u), Some(l)) = (&upper, &lower) {
            if l.start >= u.start {
                return Err(Error::InvalidArgument(format!(
                    "tails overlap: lower starts at {}, upper at {}",
                    l.start, u.start
                )));
            }
        }
        Ok(CellFunction {
            exceptional,
            upper,
            lower,
        })
    }

    /// The coefficients `γ_n` of `f`.
    pub fn gamma() -> Self {
        CellFunction {
            exceptional: BTreeMap::new(),
            upper: Some(Tail::new(1, -RatFunc::q_pow(-1), RatFunc::q_pow(-2))),
            lower: Some(Tail::new(0, RatFunc::one(), RatFunc::q_pow(-2))),
        }
    }

    /// `n ↦ (χ_{X_n} ⋆ χ_cond)(t^{-r}, 0)` as an eventually geometric family.
    pub fn convolution_column(r: i64, cond: LatticeCondition) -> Self {
        let edge = r.abs() + 2;
        let exceptional = (1 - edge..edge)
            .map(|n| (n, conv_cell_value(n, r, cond)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        CellFunction {
            exceptional,
            upper: Some(Tail::new(edge, conv_cell_value(edge, r, cond), RatFunc::q())),
            lower: Some(Tail::new(-edge, conv_cell_value(-edge, r, cond), RatFunc::q())),
        }
    }

    pub fn coefficient(&self, n: i64) -> RatFunc {
        if let Some(c) = self.exceptional.get(&n) {
            return c.clone();
        }
        match (&self.upper, &self.lower) {
            (Some(u), _) if n >= u.start => u.at((n - u.start) as u64),
            (_, Some(l)) if n <= l.start => l.at((l.start - n) as u64),
            _ => RatFunc::zero(),
        }
    }

    /// Indices outside `[lo, hi]` lie in a tail (or carry zero).
    fn window(&self) -> (i64, i64) {
        let keys = self.exceptional.keys().copied();
        let lo = keys
            .clone()
            .chain(self.lower.as_ref().map(|t| t.start))
            .min()
            .unwrap_or(0);
        let hi = keys.chain(self.upper.as_ref().map(|t| t.start)).max().unwrap_or(0);
        (lo, hi)
    }
}

/// The lattice tested against in a convolution: `O⊕O` or `O⊕tO`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LatticeCondition {
    Standard,
    Shifted,
}

impl LatticeCondition {
    pub const ALL: [LatticeCondition; 2] = [LatticeCondition::Standard, LatticeCondition::Shifted];

    pub fn name(self) -> &'static str {
        match self {
            LatticeCondition::Standard => "std",
            LatticeCondition::Shifted => "sub",
        }
    }

    /// Valuation thresholds `(A, C)` on the first column `(a, c)` of `h ∈ K`
    /// for `h·(t^{-r}, 0)` to lie in the lattice shifted by `x_n`.
    pub fn thresholds(self, n: i64, r: i64) -> (u32, u32) {
        let extra = i64::from(self == LatticeCondition::Shifted);
        ((n + r).max(0) as u32, (r - n + extra).max(0) as u32)
    }
}

impl fmt::Display for LatticeCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LatticeCondition::Standard => "O+O",
            LatticeCondition::Shifted => "O+tO",
        })
    }
}

impl FromStr for LatticeCondition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "std" | "O+O" => Ok(LatticeCondition::Standard),
            "sub" | "O+tO" => Ok(LatticeCondition::Shifted),
            _ => Err(Error::Parse(format!("unknown lattice `{s}` (expected std or sub)"))),
        }
    }
}

impl Serialize for LatticeCondition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// `γ_n`: `q^{2n}` for `n ≤ 0`, `-q^{1-2n}` for `n > 0`.
pub fn gamma_n(n: i64) -> RatFunc {
    if n <= 0 {
        RatFunc::q_pow(2 * n)
    } else {
        -RatFunc::q_pow(1 - 2 * n)
    }
}

/// `vol(X_n)/vol(K)`: `q^{2n-1}` for `n > 0`, `q^{-2n}` for `n ≤ 0`.
pub fn volume_ratio(n: i64) -> RatFunc {
    if n > 0 {
        RatFunc::q_pow(2 * n - 1)
    } else {
        RatFunc::q_pow(-2 * n)
    }
}

fn q_plus_one() -> RatFunc {
    &RatFunc::q() + &RatFunc::one()
}

/// `(χ_{X_n} ⋆ χ_cond)(t^{-r}, 0)` from the case tables.
pub fn conv_cell_value(n: i64, r: i64, cond: LatticeCondition) -> RatFunc {
    use LatticeCondition::*;
    let big = |e: i64| &q_plus_one() * &RatFunc::q_pow(e);
    match cond {
        Standard if n > 0 => {
            if r > n {
                RatFunc::zero()
            } else if r <= -n {
                big(2 * n - 1)
            } else {
                RatFunc::q_pow(n - r)
            }
        }
        Standard if n < 0 => {
            let m = -n;
            if r > m {
                RatFunc::zero()
            } else if r <= -m {
                big(2 * m)
            } else {
                RatFunc::q_pow(m - r + 1)
            }
        }
        Standard => {
            if r <= 0 {
                q_plus_one()
            } else {
                RatFunc::zero()
            }
        }
        Shifted if n > 0 => {
            if r > n - 1 {
                RatFunc::zero()
            } else if r <= -n {
                big(2 * n - 1)
            } else {
                RatFunc::q_pow(n - r)
            }
        }
        Shifted => {
            let m = -n;
            if r > m {
                RatFunc::zero()
            } else if r < -m {
                big(2 * m)
            } else {
                RatFunc::q_pow(m - r)
            }
        }
    }
}

fn converging_ratio(ratio: &RatFunc, side: &str) -> Result<()> {
    match ratio.as_monomial() {
        Some((_, k)) if k < 0 => Ok(()),
        _ => Err(Error::DivergentTail(format!(
            "{side} tail ratio {ratio} is not c·q^k with k < 0"
        ))),
    }
}

/// `Σ_n f(n)·g(n)` in closed form.
///
/// Past the common window both families are geometric, so each side is one
/// geometric series. It is summed formally when its ratio is `c·q^k` with
/// `k < 0`.
pub fn pair_sum(f: &CellFunction, g: &CellFunction) -> Result<RatFunc> {
    let (flo, fhi) = f.window();
    let (glo, ghi) = g.window();
    let (lo, hi) = (flo.min(glo), fhi.max(ghi));
    let mut total = (lo..=hi).fold(RatFunc::zero(), |acc, n| {
        &acc + &(&f.coefficient(n) * &g.coefficient(n))
    });
    let sides = [
        (hi + 1, f.upper.as_ref().zip(g.upper.as_ref()), "upper"),
        (lo - 1, f.lower.as_ref().zip(g.lower.as_ref()), "lower"),
    ];
    for (first, tails, side) in sides {
        let Some((ft, gt)) = tails else { continue };
        let t0 = &f.coefficient(first) * &g.coefficient(first);
        if t0.is_zero() {
            continue;
        }
        let ratio = &ft.ratio * &gt.ratio;
        converging_ratio(&ratio, side)?;
        total = &total + &(&t0 / &(&RatFunc::one() - &ratio));
    }
    Ok(total)
}

/// `Σ_{|n| ≤ N} f(n)·g(n)`.
pub fn partial_pair_sum(f: &CellFunction, g: &CellFunction, n_max: u64) -> RatFunc {
    let n = n_max as i64;
    (-n..=n).fold(RatFunc::zero(), |acc, k| {
        &acc + &(&f.coefficient(k) * &g.coefficient(k))
    })
}

/// Upper bound at the number `q` for `|Σ_{|n| > N} f(n)·g(n)|`.
///
/// Terms up to the window edge are added in absolute value; each geometric
/// side beyond it contributes `|t_first| / (1 - |ρ(q)|)`.
pub fn tail_bound(f: &CellFunction, g: &CellFunction, n_max: u64, q: &RBig) -> Result<RBig> {
    let eval = |x: &RatFunc| {
        x.eval(q)
            .ok_or_else(|| Error::InvalidArgument(format!("{x} has a pole at q = {q}")))
    };
    let (flo, fhi) = f.window();
    let (glo, ghi) = g.window();
    let n = n_max as i64;
    let (lo, hi) = (flo.min(glo).min(-n), fhi.max(ghi).max(n));
    let mut bound = RBig::ZERO;
    for k in (lo..-n).chain(n + 1..=hi) {
        bound += rabs(&eval(&(&f.coefficient(k) * &g.coefficient(k)))?);
    }
    let sides = [
        (hi + 1, f.upper.as_ref().zip(g.upper.as_ref()), "upper"),
        (lo - 1, f.lower.as_ref().zip(g.lower.as_ref()), "lower"),
    ];
    for (first, tails, side) in sides {
        let Some((ft, gt)) = tails else { continue };
        let t0 = rabs(&eval(&(&f.coefficient(first) * &g.coefficient(first)))?);
        if t0 == RBig::ZERO {
            continue;
        }
        let rho = rabs(&eval(&(&ft.ratio * &gt.ratio))?);
        if rho >= RBig::ONE {
            return Err(Error::DivergentTail(format!(
                "{side} tail ratio has |ρ(q)| = {rho} ≥ 1 at q = {q}"
            )));
        }
        bound += t0 / (RBig::ONE - rho);
    }
    Ok(bound)
}

/// `(f ⋆ χ_cond)(t^{-r}, 0) = Σ_n γ_n·conv_cell_value(n, r, cond)`.
pub fn conv_f_value(r: i64, cond: LatticeCondition) -> Result<RatFunc> {
    pair_sum(&CellFunction::gamma(), &CellFunction::convolution_column(r, cond))
}

/// The value `conv_f_value` is expected to take: `q+1` on `O⊕O` for `r ≤ 0`,
/// `0` otherwise.
pub fn expected_conv_f_value(r: i64, cond: LatticeCondition) -> RatFunc {
    if cond == LatticeCondition::Standard && r <= 0 {
        q_plus_one()
    } else {
        RatFunc::zero()
    }
}

fn ser_display<T: fmt::Display, S: Serializer>(x: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

/// Partial sums of `conv_f_value` against the computed tail bound.
#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceCheck {
    pub r: i64,
    pub cond: LatticeCondition,
    pub n_max: u64,
    #[serde(serialize_with = "ser_display")]
    pub q: RBig,
    #[serde(serialize_with = "ser_display")]
    pub remainder: RBig,
    #[serde(serialize_with = "ser_display")]
    pub bound: RBig,
    pub pass: bool,
}

pub fn convergence_check(r: i64, cond: LatticeCondition, n_max: u64, q: &RBig) -> Result<ConvergenceCheck> {
    let (f, g) = (CellFunction::gamma(), CellFunction::convolution_column(r, cond));
    let closed = pair_sum(&f, &g)?;
    let partial = partial_pair_sum(&f, &g, n_max);
    let remainder = rabs(
        &(&closed - &partial)
            .eval(q)
            .ok_or_else(|| Error::InvalidArgument(format!("pole at q = {q}")))?,
    );
    let bound = tail_bound(&f, &g, n_max, q)?;
    Ok(ConvergenceCheck {
        r,
        cond,
        n_max,
        q: q.clone(),
        pass: remainder <= bound,
        remainder,
        bound,
    })
}

/// One symbolic relation check.
#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: &'static str,
    pub r: i64,
    pub value: RatFunc,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
    pub passed: usize,
    pub failed: usize,
}

/// `γ_r + qγ_{-r} = 0` for `1 ≤ r ≤ R` and `qγ_{r+1} + γ_{-r} = 0` for
/// `0 ≤ r ≤ R`.
pub fn verify_relations(big_r: i64) -> Result<RelationReport> {
    if big_r < 1 {
        return Err(Error::InvalidArgument(format!("R must be at least 1, got {big_r}")));
    }
    let q = RatFunc::q();
    let mut checks = Vec::new();
    for r in 1..=big_r {
        let value = &gamma_n(r) + &(&q * &gamma_n(-r));
        checks.push(RelationCheck {
            relation: "rel1",
            r,
            pass: value.is_zero(),
            value,
        });
    }
    for r in 0..=big_r {
        let value = &(&q * &gamma_n(r + 1)) + &gamma_n(-r);
        checks.push(RelationCheck {
            relation: "rel2",
            r,
            pass: value.is_zero(),
            value,
        });
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    Ok(RelationReport {
        failed: checks.len() - passed,
        passed,
        checks,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DecayEntry {
    pub n: i64,
    #[serde(serialize_with = "ser_display")]
    pub weighted: RBig,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecayReport {
    #[serde(serialize_with = "ser_display")]
    pub q: RBig,
    pub n_max: u64,
    pub entries: Vec<DecayEntry>,
    #[serde(serialize_with = "ser_display")]
    pub max_weighted: RBig,
    pub argmax: i64,
    pub pass: bool,
}

/// Checks `q^{|n|}·|γ_n(q)| ≤ q` for `|n| ≤ N`.
pub fn schwartz_decay_check(n_max: u64, q: &RBig) -> Result<DecayReport> {
    if *q <= RBig::ONE {
        return Err(Error::InvalidArgument(format!("q must exceed 1, got {q}")));
    }
    let n = n_max as i64;
    let entries: Vec<DecayEntry> = (-n..=n)
        .map(|k| {
            let g = gamma_n(k).eval(q).expect("q > 0");
            let weighted = RatFunc::q_pow(k.abs()).eval(q).expect("q > 0") * rabs(&g);
            DecayEntry {
                n: k,
                pass: weighted <= *q,
                weighted,
            }
        })
        .collect();
    let top = entries
        .iter()
        .fold(&entries[0], |best, e| if e.weighted > best.weighted { e } else { best });
    Ok(DecayReport {
        q: q.clone(),
        n_max,
        max_weighted: top.weighted.clone(),
        argmax: top.n,
        pass: entries.iter().all(|e| e.pass),
        entries,
    })
}
