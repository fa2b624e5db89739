use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_ratio::RBig;
use serde::{Serialize, Serializer};

/// Polynomial in `q` with rational coefficients, ascending, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
struct Poly(Vec<RBig>);

impl Poly {
    fn trimmed(mut v: Vec<RBig>) -> Self {
        while v.last().is_some_and(|c| *c == RBig::ZERO) {
            v.pop();
        }
        Poly(v)
    }

    fn monomial(c: RBig, k: usize) -> Self {
        let mut v = vec![RBig::ZERO; k + 1];
        v[k] = c;
        Self::trimmed(v)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> &RBig {
        self.0.last().expect("nonzero polynomial")
    }

    fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Self::trimmed(
            (0..n)
                .map(|i| self.0.get(i).cloned().unwrap_or(RBig::ZERO) + o.0.get(i).cloned().unwrap_or(RBig::ZERO))
                .collect(),
        )
    }

    fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c.clone()).collect())
    }

    fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::default();
        }
        let mut v = vec![RBig::ZERO; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::trimmed(v)
    }

    fn scale(&self, c: &RBig) -> Poly {
        Self::trimmed(self.0.iter().map(|x| x * c).collect())
    }

    fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (Poly::default(), self.clone());
        }
        let mut quot = vec![RBig::ZERO; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / d.lead();
            if c != RBig::ZERO {
                for (i, x) in d.0.iter().enumerate() {
                    rem[k + i] -= &c * x;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::trimmed(quot), Self::trimmed(rem))
    }

    fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(RBig::ONE / self.lead()))
    }

    fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    fn eval(&self, q: &RBig) -> RBig {
        self.0.iter().rev().fold(RBig::ZERO, |acc, c| acc * q + c)
    }

    /// `Some((c, k))` when the polynomial is `c q^k`.
    fn as_monomial(&self) -> Option<(RBig, usize)> {
        let k = self.degree()?;
        self.0[..k]
            .iter()
            .all(|c| *c == RBig::ZERO)
            .then(|| (self.lead().clone(), k))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if *c == RBig::ZERO {
                continue;
            }
            let neg = *c < RBig::ZERO;
            let abs = if neg { -c.clone() } else { c.clone() };
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "q".into(),
                _ => format!("q^{k}"),
            };
            if k == 0 {
                write!(f, "{abs}")?;
            } else if abs == RBig::ONE {
                write!(f, "{var}")?;
            } else {
                write!(f, "{abs}*{var}")?;
            }
        }
        Ok(())
    }
}

/// An element of `Q(q)`, kept as `num/den` in lowest terms with a monic
/// denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    fn from_polys(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (n, _) = num.divrem(&g);
        let (d, _) = den.divrem(&g);
        let l = RBig::ONE / d.lead();
        RatFunc {
            num: n.scale(&l),
            den: d.scale(&l),
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::default(),
            den: Poly(vec![RBig::ONE]),
        }
    }

    pub fn one() -> Self {
        Self::constant(RBig::ONE)
    }

    pub fn constant(c: RBig) -> Self {
        Self::monomial(c, 0)
    }

    /// `c q^k` for any integer `k`.
    pub fn monomial(c: RBig, k: i64) -> Self {
        if k >= 0 {
            Self::from_polys(Poly::monomial(c, k as usize), Poly(vec![RBig::ONE]))
        } else {
            Self::from_polys(Poly::monomial(c, 0), Poly::monomial(RBig::ONE, (-k) as usize))
        }
    }

    /// `q^k`.
    pub fn q_pow(k: i64) -> Self {
        Self::monomial(RBig::ONE, k)
    }

    /// `q`.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// From ascending numerator and denominator coefficients.
    pub fn from_coeffs(num: &[i64], den: &[i64]) -> Self {
        let p = |v: &[i64]| Poly::trimmed(v.iter().map(|&c| RBig::from(c)).collect());
        Self::from_polys(p(num), p(den))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Value at a rational `q`; `None` at a pole.
    pub fn eval(&self, q: &RBig) -> Option<RBig> {
        let d = self.den.eval(q);
        (d != RBig::ZERO).then(|| self.num.eval(q) / d)
    }

    /// `Some((c, k))` when this is `c q^k`.
    pub fn as_monomial(&self) -> Option<(RBig, i64)> {
        let (c, n) = self.num.as_monomial()?;
        let (_, d) = self.den.as_monomial()?;
        Some((c, n as i64 - d as i64))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn numerator_string(&self) -> String {
        self.num.to_string()
    }

    pub fn denominator_string(&self) -> String {
        self.den.to_string()
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        RatFunc::from_polys(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &-o
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        RatFunc::from_polys(self.num.mul(&o.num), self.den.mul(&o.den))
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, o: &RatFunc) -> RatFunc {
        assert!(!o.is_zero(), "division by zero rational function");
        RatFunc::from_polys(self.num.mul(&o.den), self.den.mul(&o.num))
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: RatFunc) -> RatFunc {
                (&self).$m(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl From<i64> for RatFunc {
    fn from(c: i64) -> Self {
        Self::constant(RBig::from(c))
    }
}

/// Canonical text form `(num)/(den)`, e.g. `(q+1)/(1)`, `(-1)/(q)`.
impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub(crate) fn rabs(x: &RBig) -> RBig {
    if *x < RBig::ZERO {
        -x.clone()
    } else {
        x.clone()
    }
}
