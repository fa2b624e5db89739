//! Exact Laurent polynomials in `v` over the integers, and their
//! specialization at `v = q^{1/2}`.
//!
//! The ring `A = Z[v, v^-1]` is where every Kazhdan–Lusztig polynomial,
//! structure constant and gamma constant lives. `A+ = Z[v]` is the
//! subring of polynomials with no negative powers. The variable written `u`
//! in the definition of the gamma constants is the same `v`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use dashu_int::IBig;
use dashu_ratio::RBig;
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Laurent polynomial `sum c_e v^e` with arbitrary-precision integer
/// coefficients.
///
/// Stored sparsely as `(exponent, coefficient)` pairs sorted by exponent;
/// zero coefficients are never stored, so the zero polynomial has no terms.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentInt {
    terms: Vec<(i32, IBig)>,
}

impl LaurentInt {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, IBig::ONE)
    }

    /// `c * v^exp`.
    pub fn monomial(exp: i32, c: impl Into<IBig>) -> Self {
        let c = c.into();
        if c == IBig::ZERO {
            Self::zero()
        } else {
            Self { terms: vec![(exp, c)] }
        }
    }

    /// `v`.
    pub fn v() -> Self {
        Self::monomial(1, 1)
    }

    /// `v^-1`.
    pub fn v_inv() -> Self {
        Self::monomial(-1, 1)
    }

    /// `v + v^-1`, the quantum 2.
    pub fn quantum_two() -> Self {
        Self {
            terms: vec![(-1, IBig::ONE), (1, IBig::ONE)],
        }
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs,
    /// summing repeated exponents and dropping zeros.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<IBig>,
    {
        let mut v: Vec<(i32, IBig)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        v.sort_by_key(|(e, _)| *e);
        let mut out: Vec<(i32, IBig)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| *c != IBig::ZERO);
        Self { terms: out }
    }

    /// A polynomial in `q = v^2` given by its coefficients `[c0, c1, ...]`.
    pub fn from_q_coeffs<C: Into<IBig>>(coeffs: impl IntoIterator<Item = C>) -> Self {
        Self::from_terms(coeffs.into_iter().enumerate().map(|(k, c)| (2 * k as i32, c)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1 == IBig::ONE
    }

    pub fn terms(&self) -> &[(i32, IBig)] {
        &self.terms
    }

    pub fn coeff(&self, exp: i32) -> IBig {
        match self.terms.binary_search_by_key(&exp, |(e, _)| *e) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => IBig::ZERO,
        }
    }

    /// Lowest exponent with a nonzero coefficient, `None` for zero.
    pub fn lowest_exponent(&self) -> Option<i32> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn highest_exponent(&self) -> Option<i32> {
        self.terms.last().map(|(e, _)| *e)
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &IBig) -> Self {
        if *c == IBig::ZERO {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// `self += factor * v^shift * other`.
    pub fn add_scaled(&mut self, other: &LaurentInt, shift: i32, factor: &IBig) {
        if other.is_zero() || *factor == IBig::ZERO {
            return;
        }
        if self.is_zero() {
            self.terms = other.terms.iter().map(|(e, c)| (e + shift, c * factor)).collect();
            return;
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = std::mem::take(&mut self.terms).into_iter().peekable();
        let mut b = other.terms.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((ea, _)), Some((eb, _))) => match ea.cmp(&(eb + shift)) {
                    Ordering::Less => out.push(a.next().unwrap()),
                    Ordering::Greater => {
                        let (eb, cb) = b.next().unwrap();
                        out.push((eb + shift, cb * factor));
                    }
                    Ordering::Equal => {
                        let (ea, ca) = a.next().unwrap();
                        let (_, cb) = b.next().unwrap();
                        let s = ca + cb * factor;
                        if s != IBig::ZERO {
                            out.push((ea, s));
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (eb, cb) = b.next().unwrap();
                    out.push((eb + shift, cb * factor));
                }
                (None, None) => break,
            }
        }
        self.terms = out;
    }

    /// The bar involution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().rev().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    /// True iff no exponent is negative, i.e. the polynomial lies in `Z[v]`.
    pub fn in_a_plus(&self) -> bool {
        self.lowest_exponent().is_none_or(|e| e >= 0)
    }

    /// The constant term of `v^a * self`, i.e. the coefficient of `v^-a`.
    ///
    /// Fails with [`Error::NotInAPlus`] when `v^a * self` has a negative power.
    pub fn constant_term_after_shift(&self, a: i32) -> Result<IBig> {
        if let Some(low) = self.lowest_exponent() {
            if low + a < 0 {
                return Err(Error::NotInAPlus {
                    shift: a,
                    lowest: low + a,
                });
            }
        }
        Ok(self.coeff(-a))
    }

    /// For a polynomial in `q = v^2`: its degree in `q`. `None` for zero or
    /// when an odd or negative power of `v` is present.
    pub fn q_degree(&self) -> Option<u32> {
        if self.terms.iter().any(|(e, _)| *e < 0 || e % 2 != 0) {
            return None;
        }
        self.highest_exponent().map(|e| (e / 2) as u32)
    }

    /// For `P` stored as a polynomial in `q = v^2`, returns `P(v^-2)`.
    pub fn q_to_inverse(&self) -> Self {
        self.bar()
    }

    /// Specializes `v = q^{1/2}` for a rational `q > 0`: even powers land in
    /// the rational part, odd powers in the coefficient of `v`.
    pub fn specialize(&self, q: &RBig) -> QuadExt {
        let mut a0 = RBig::ZERO;
        let mut a1 = RBig::ZERO;
        for (e, c) in &self.terms {
            let half = e.div_euclid(2);
            let odd = e.rem_euclid(2) == 1;
            let term = RBig::from(c.clone()) * rational_pow(q, half);
            if odd {
                a1 += term;
            } else {
                a0 += term;
            }
        }
        QuadExt::new(a0, a1, q.clone())
    }

    /// Evaluates at an exact rational value of `v` (nonzero when negative
    /// powers are present).
    pub fn eval(&self, v: &RBig) -> RBig {
        self.terms
            .iter()
            .map(|(e, c)| RBig::from(c.clone()) * rational_pow(v, *e))
            .fold(RBig::ZERO, |acc, t| acc + t)
    }

    /// Multiplies by `eps * (v + v^-1)`; `eps` is `+1` or `-1`.
    pub fn times_quantum_two(&self, negate: bool) -> Self {
        let mut out = LaurentInt::zero();
        let f = if negate { -IBig::ONE } else { IBig::ONE };
        out.add_scaled(self, 1, &f);
        out.add_scaled(self, -1, &f);
        out
    }
}

/// `x^k` for rational `x` and any integer `k` (`x != 0` when `k < 0`).
pub(crate) fn rational_pow(x: &RBig, k: i32) -> RBig {
    let mut base = if k < 0 { RBig::ONE / x.clone() } else { x.clone() };
    let mut n = k.unsigned_abs();
    let mut acc = RBig::ONE;
    while n > 0 {
        if n & 1 == 1 {
            acc *= base.clone();
        }
        base = base.clone() * base;
        n >>= 1;
    }
    acc
}

impl fmt::Debug for LaurentInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentInt {
    /// Descending powers, e.g. `v^2 - 1 + 3v^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = *c < IBig::ZERO;
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = abs == IBig::ONE;
            match *e {
                0 => write!(f, "{abs}")?,
                1 if unit => write!(f, "v")?,
                1 => write!(f, "{abs}v")?,
                _ if unit => write!(f, "v^{e}")?,
                _ => write!(f, "{abs}v^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add<&LaurentInt> for &LaurentInt {
    type Output = LaurentInt;
    fn add(self, rhs: &LaurentInt) -> LaurentInt {
        let mut out = self.clone();
        out.add_scaled(rhs, 0, &IBig::ONE);
        out
    }
}

impl Add for LaurentInt {
    type Output = LaurentInt;
    fn add(mut self, rhs: LaurentInt) -> LaurentInt {
        self.add_scaled(&rhs, 0, &IBig::ONE);
        self
    }
}

impl Sub<&LaurentInt> for &LaurentInt {
    type Output = LaurentInt;
    fn sub(self, rhs: &LaurentInt) -> LaurentInt {
        let mut out = self.clone();
        out.add_scaled(rhs, 0, &-IBig::ONE);
        out
    }
}

impl Sub for LaurentInt {
    type Output = LaurentInt;
    fn sub(mut self, rhs: LaurentInt) -> LaurentInt {
        self.add_scaled(&rhs, 0, &-IBig::ONE);
        self
    }
}

impl AddAssign<&LaurentInt> for LaurentInt {
    fn add_assign(&mut self, rhs: &LaurentInt) {
        self.add_scaled(rhs, 0, &IBig::ONE);
    }
}

impl SubAssign<&LaurentInt> for LaurentInt {
    fn sub_assign(&mut self, rhs: &LaurentInt) {
        self.add_scaled(rhs, 0, &-IBig::ONE);
    }
}

impl Neg for &LaurentInt {
    type Output = LaurentInt;
    fn neg(self) -> LaurentInt {
        LaurentInt {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Neg for LaurentInt {
    type Output = LaurentInt;
    fn neg(self) -> LaurentInt {
        -&self
    }
}

impl Mul<&LaurentInt> for &LaurentInt {
    type Output = LaurentInt;
    fn mul(self, rhs: &LaurentInt) -> LaurentInt {
        let (small, big) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = LaurentInt::zero();
        for (e, c) in &small.terms {
            out.add_scaled(big, *e, c);
        }
        out
    }
}

impl Mul for LaurentInt {
    type Output = LaurentInt;
    fn mul(self, rhs: LaurentInt) -> LaurentInt {
        &self * &rhs
    }
}

impl From<i64> for LaurentInt {
    fn from(c: i64) -> Self {
        LaurentInt::monomial(0, c)
    }
}

// JSON form: [[exponent, "coefficient"], ...] sorted by exponent.
impl Serialize for LaurentInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&(e, c.to_string()))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LaurentInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = LaurentInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "an array of [exponent, \"coefficient\"] pairs")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<LaurentInt, A::Error> {
                let mut terms: Vec<(i32, IBig)> = Vec::new();
                while let Some((e, c)) = seq.next_element::<(i32, String)>()? {
                    let c: IBig = c.parse().map_err(|_| de::Error::custom(format!("bad integer `{c}`")))?;
                    if c == IBig::ZERO {
                        return Err(de::Error::custom("zero coefficient stored"));
                    }
                    if terms.last().is_some_and(|(le, _)| *le >= e) {
                        return Err(de::Error::custom("exponents must be strictly increasing"));
                    }
                    terms.push((e, c));
                }
                Ok(LaurentInt { terms })
            }
        }
        d.deserialize_seq(V)
    }
}

/// An element `a0 + a1 v` of `Q[v]/(v^2 - q)` for a fixed rational `q`.
///
/// This is the target of the specialization `v = q^{1/2}`. When `q` is not
/// a rational square this is the field `Q(sqrt q)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadExt {
    pub a0: RBig,
    pub a1: RBig,
    pub q: RBig,
}

impl QuadExt {
    pub fn new(a0: RBig, a1: RBig, q: RBig) -> Self {
        Self { a0, a1, q }
    }

    pub fn zero(q: RBig) -> Self {
        Self::new(RBig::ZERO, RBig::ZERO, q)
    }

    pub fn is_zero(&self) -> bool {
        self.a0 == RBig::ZERO && self.a1 == RBig::ZERO
    }

    fn check(&self, other: &QuadExt) {
        assert_eq!(self.q, other.q, "QuadExt values over different q");
    }
}

impl Add for &QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &QuadExt) -> QuadExt {
        self.check(rhs);
        QuadExt::new(&self.a0 + &rhs.a0, &self.a1 + &rhs.a1, self.q.clone())
    }
}

impl Sub for &QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &QuadExt) -> QuadExt {
        self.check(rhs);
        QuadExt::new(&self.a0 - &rhs.a0, &self.a1 - &rhs.a1, self.q.clone())
    }
}

impl Mul for &QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &QuadExt) -> QuadExt {
        self.check(rhs);
        // (a0 + a1 v)(b0 + b1 v) with v^2 = q
        let a0 = &self.a0 * &rhs.a0 + &self.a1 * &rhs.a1 * &self.q;
        let a1 = &self.a0 * &rhs.a1 + &self.a1 * &rhs.a0;
        QuadExt::new(a0, a1, self.q.clone())
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::new(-self.a0.clone(), -self.a1.clone(), self.q.clone())
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})*v", self.a0, self.a1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i32, i64)]) -> LaurentInt {
        LaurentInt::from_terms(terms.iter().copied())
    }

    fn r(n: i64, d: u64) -> RBig {
        RBig::from_parts(IBig::from(n), d.into())
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&LaurentInt::v() + &LaurentInt::v_inv(), LaurentInt::quantum_two());
        let plus = p(&[(1, 1), (-1, 1)]);
        let minus = p(&[(1, 1), (-1, -1)]);
        assert_eq!(&plus * &minus, p(&[(2, 1), (-2, -1)]));
        assert!((&LaurentInt::zero() * &plus).is_zero());
        assert_eq!((&plus * &minus).lowest_exponent(), Some(-2));
    }

    #[test]
    fn a_plus_membership() {
        assert!(p(&[(2, 1), (0, 1)]).in_a_plus());
        assert!(!LaurentInt::quantum_two().in_a_plus());
        assert!(LaurentInt::zero().in_a_plus());
    }

    #[test]
    fn constant_term_after_shift_examples() {
        let q2 = LaurentInt::quantum_two();
        assert_eq!(q2.constant_term_after_shift(1).unwrap(), IBig::ONE);
        assert_eq!((-&q2).constant_term_after_shift(1).unwrap(), -IBig::ONE);
        assert_eq!(LaurentInt::one().constant_term_after_shift(1).unwrap(), IBig::ZERO);
        assert_eq!(
            q2.constant_term_after_shift(0),
            Err(Error::NotInAPlus { shift: 0, lowest: -1 })
        );
    }

    #[test]
    fn specialization_examples() {
        let four = RBig::from(4);
        let s = p(&[(2, 1), (0, 1)]).specialize(&four);
        assert_eq!((s.a0, s.a1), (RBig::from(5), RBig::ZERO));
        let s = LaurentInt::quantum_two().specialize(&four);
        assert_eq!((s.a0, s.a1), (RBig::ZERO, r(5, 4)));
        let s = p(&[(3, 1)]).specialize(&RBig::from(2));
        assert_eq!((s.a0, s.a1), (RBig::ZERO, RBig::from(2)));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[(2, 1), (0, -1), (-1, 3)]).to_string(), "v^2 - 1 + 3v^-1");
        assert_eq!(LaurentInt::zero().to_string(), "0");
        assert_eq!((-LaurentInt::quantum_two()).to_string(), "-v - v^-1");
    }

    #[test]
    fn json_format() {
        let s = serde_json::to_string(&LaurentInt::quantum_two()).unwrap();
        assert_eq!(s, r#"[[-1,"1"],[1,"1"]]"#);
        let back: LaurentInt = serde_json::from_str(&s).unwrap();
        assert_eq!(back, LaurentInt::quantum_two());
        assert!(serde_json::from_str::<LaurentInt>(r#"[[1,"0"]]"#).is_err());
        assert!(serde_json::from_str::<LaurentInt>(r#"[[1,"1"],[0,"1"]]"#).is_err());
    }

    #[test]
    fn big_coefficients_stay_exact() {
        let big: IBig = "340282366920938463463374607431768211457".parse().unwrap();
        let a = LaurentInt::monomial(3, big.clone());
        let sq = &a * &a;
        assert_eq!(sq.coeff(6), &big * &big);
        assert!((&sq - &sq).is_zero());
    }
}
