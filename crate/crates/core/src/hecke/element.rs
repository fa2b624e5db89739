use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use super::kl::KLTable;
use super::product::ProductEngine;
use crate::error::{Error, Result};
use crate::laurent::LaurentInt;
use crate::weyl::{ElementRepr, Group, GroupElement};

/// Which basis a [`HeckeElement`] is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    /// Standard basis, `T_s^2 = (q-1) T_s + q`.
    T,
    /// `~T_w = v^{-ℓ(w)} T_w`.
    Ttilde,
    /// `C_w = Σ (-1)^{ℓ(w)-ℓ(y)} v^{ℓ(w)-ℓ(y)} P_{y,w}(v^-2) ~T_y`.
    Csigned,
    /// `C'_w = Σ v^{-(ℓ(w)-ℓ(y))} P_{y,w}(v^2) ~T_y`.
    Cprime,
}

impl Basis {
    pub fn is_kl(self) -> bool {
        matches!(self, Basis::Csigned | Basis::Cprime)
    }

    fn symbol(self) -> &'static str {
        match self {
            Basis::T => "T",
            Basis::Ttilde => "~T",
            Basis::Csigned => "C",
            Basis::Cprime => "C'",
        }
    }
}

/// A finite `A`-linear combination of basis elements of the Hecke algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct HeckeElement {
    basis: Basis,
    terms: BTreeMap<GroupElement, LaurentInt>,
}

impl HeckeElement {
    pub fn zero(basis: Basis) -> Self {
        Self {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis_element(basis: Basis, w: GroupElement) -> Self {
        Self::from_terms(basis, [(w, LaurentInt::one())])
    }

    pub fn from_terms(basis: Basis, terms: impl IntoIterator<Item = (GroupElement, LaurentInt)>) -> Self {
        let mut h = Self::zero(basis);
        for (w, c) in terms {
            h.add_term(w, &c);
        }
        h
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<GroupElement, LaurentInt> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<GroupElement, LaurentInt> {
        self.terms
    }

    pub fn coeff(&self, w: &GroupElement) -> LaurentInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: GroupElement, c: &LaurentInt) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c · other`; both must be in the same basis.
    pub fn add_multiple(&mut self, other: &HeckeElement, c: &LaurentInt) {
        assert_eq!(self.basis, other.basis, "adding elements in different bases");
        for (w, x) in &other.terms {
            self.add_term(w.clone(), &(x * c));
        }
    }

    pub fn scale(&self, c: &LaurentInt) -> Self {
        let mut out = Self::zero(self.basis);
        out.add_multiple(self, c);
        out
    }

    /// Serializable form.
    pub fn repr(&self) -> HeckeRepr {
        HeckeRepr {
            basis: self.basis,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| HeckeTerm {
                    w: w.repr(),
                    c: c.clone(),
                })
                .collect(),
        }
    }
}

/// JSON form: `{"basis":"Cprime","terms":[{"w":{...},"c":[[e,"c"],...]}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeRepr {
    pub basis: Basis,
    pub terms: Vec<HeckeTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeTerm {
    pub w: ElementRepr,
    pub c: LaurentInt,
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{}[{}]", self.basis.symbol(), w)?;
            } else {
                write!(f, "({})*{}[{}]", c, self.basis.symbol(), w)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The Hecke algebra of a group together with a KL table bounding which
/// KL basis elements are available.
pub struct HeckeAlgebra {
    group: Group,
    table: Arc<KLTable>,
    engine: ProductEngine,
    c_cache: RwLock<HashMap<(GroupElement, bool), Arc<HeckeElement>>>,
    bar_cache: RwLock<HashMap<GroupElement, Arc<HeckeElement>>>,
}

impl HeckeAlgebra {
    /// Builds the KL table up to `radius`.
    pub fn new(group: &Group, radius: usize) -> Self {
        Self::from_table(Arc::new(KLTable::build(group, radius)))
    }

    pub fn from_table(table: Arc<KLTable>) -> Self {
        Self {
            group: table.group().clone(),
            engine: ProductEngine::new(table.clone()),
            table,
            c_cache: RwLock::new(HashMap::new()),
            bar_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn table(&self) -> &Arc<KLTable> {
        &self.table
    }

    pub fn engine(&self) -> &ProductEngine {
        &self.engine
    }

    pub fn radius(&self) -> usize {
        self.table.radius()
    }

    fn check(&self, w: &GroupElement) -> Result<()> {
        if w.group_id() == self.group.id() {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn kl_polynomial(&self, y: &GroupElement, w: &GroupElement) -> Result<LaurentInt> {
        self.table.kl_polynomial(y, w)
    }

    /// `C_w` (signed) or `C'_w` (unsigned) expanded in the `~T` basis.
    /// For `w = uω`, `C_w = C_u T_ω`.
    pub fn c_basis_element(&self, w: &GroupElement, signed: bool) -> Result<HeckeElement> {
        Ok((*self.c_basis_cached(w, signed)?).clone())
    }

    fn c_basis_cached(&self, w: &GroupElement, signed: bool) -> Result<Arc<HeckeElement>> {
        self.check(w)?;
        let key = (w.clone(), signed);
        if let Some(h) = self.c_cache.read().expect("poisoned").get(&key) {
            return Ok(h.clone());
        }
        let ball = self.table.ball();
        let wi = self.table.index_of(w)?;
        let lw = w.length() as i32;
        let mut h = HeckeElement::zero(Basis::Ttilde);
        for yi in 0..=wi {
            let p = self.table.poly_by_index(yi, wi);
            if p.is_empty() {
                continue;
            }
            let d = lw - ball.length(yi) as i32;
            let coeff = if signed {
                // (-1)^d v^d P(v^-2)
                let sign = if d % 2 == 0 { 1 } else { -1 };
                LaurentInt::from_terms(p.iter().enumerate().map(|(k, c)| (d - 2 * k as i32, sign * c)))
            } else {
                LaurentInt::from_terms(p.iter().enumerate().map(|(k, c)| (2 * k as i32 - d, *c)))
            };
            let y = self.group.raw(ball.word(yi).to_vec(), w.omega());
            h.add_term(y, &coeff);
        }
        let h = Arc::new(h);
        self.c_cache.write().expect("poisoned").insert(key, h.clone());
        Ok(h)
    }

    /// `~T_s · h` for `h` in the `~T` basis.
    fn ttilde_left_generator(&self, s: u8, h: &HeckeElement) -> HeckeElement {
        let gs = self.group.generator(s);
        let mut out = HeckeElement::zero(Basis::Ttilde);
        let v_minus = LaurentInt::from_terms([(1, 1), (-1, -1)]);
        for (w, c) in &h.terms {
            let sw = self.group.multiply(&gs, w).expect("same group");
            if sw.length() < w.length() {
                out.add_term(w.clone(), &(c * &v_minus));
            }
            out.add_term(sw, c);
        }
        out
    }

    /// `~T_x · h` for `h` in the `~T` basis.
    fn ttilde_left_element(&self, x: &GroupElement, h: &HeckeElement) -> HeckeElement {
        let om = self.group.omega_element(x.omega());
        let mut cur = HeckeElement::zero(Basis::Ttilde);
        for (w, c) in &h.terms {
            cur.add_term(self.group.multiply(&om, w).expect("same group"), c);
        }
        for &s in x.word().iter().rev() {
            cur = self.ttilde_left_generator(s, &cur);
        }
        cur
    }

    /// Rewrites `h` in the `~T` basis.
    pub fn to_ttilde(&self, h: &HeckeElement) -> Result<HeckeElement> {
        for w in h.terms.keys() {
            self.check(w)?;
        }
        match h.basis {
            Basis::Ttilde => Ok(h.clone()),
            Basis::T => Ok(HeckeElement::from_terms(
                Basis::Ttilde,
                h.terms.iter().map(|(w, c)| (w.clone(), c.shift(w.length() as i32))),
            )),
            Basis::Csigned | Basis::Cprime => {
                let signed = h.basis == Basis::Csigned;
                let mut out = HeckeElement::zero(Basis::Ttilde);
                for (w, c) in &h.terms {
                    out.add_multiple(&*self.c_basis_cached(w, signed)?, c);
                }
                Ok(out)
            }
        }
    }

    /// Rewrites `h` (any basis) in `basis`. KL bases are reached by
    /// unitriangular elimination from the longest term down.
    pub fn to_basis(&self, h: &HeckeElement, basis: Basis) -> Result<HeckeElement> {
        if h.basis == basis {
            return Ok(h.clone());
        }
        let tt = self.to_ttilde(h)?;
        match basis {
            Basis::Ttilde => Ok(tt),
            Basis::T => Ok(HeckeElement::from_terms(
                Basis::T,
                tt.terms.iter().map(|(w, c)| (w.clone(), c.shift(-(w.length() as i32)))),
            )),
            Basis::Csigned | Basis::Cprime => {
                let signed = basis == Basis::Csigned;
                let mut rest = tt;
                let mut out = HeckeElement::zero(basis);
                while let Some((w, c)) = rest.terms.iter().next_back().map(|(w, c)| (w.clone(), c.clone())) {
                    let cw = self.c_basis_cached(&w, signed)?;
                    rest.add_multiple(&cw, &(-&c));
                    debug_assert!(rest.coeff(&w).is_zero());
                    out.add_term(w, &c);
                }
                Ok(out)
            }
        }
    }

    /// Product computed in the `~T` basis and returned in the basis of `a`.
    pub fn multiply(&self, a: &HeckeElement, b: &HeckeElement) -> Result<HeckeElement> {
        let ta = self.to_ttilde(a)?;
        let tb = self.to_ttilde(b)?;
        let mut out = HeckeElement::zero(Basis::Ttilde);
        for (x, c) in &ta.terms {
            out.add_multiple(&self.ttilde_left_element(x, &tb), c);
        }
        self.to_basis(&out, a.basis)
    }

    /// `bar(~T_w) = (~T_{w^-1})^-1`, built as `bar(~T_s) bar(~T_{sw})` with
    /// `bar(~T_s) = ~T_s - (v - v^-1)` and `bar(T_ω) = T_ω`.
    fn bar_ttilde(&self, w: &GroupElement) -> Arc<HeckeElement> {
        if let Some(h) = self.bar_cache.read().expect("poisoned").get(w) {
            return h.clone();
        }
        let h = if w.length() == 0 {
            HeckeElement::basis_element(Basis::Ttilde, w.clone())
        } else {
            let s = w.word()[0];
            let rest = self.group.multiply(&self.group.generator(s), w).expect("same group");
            let tail = self.bar_ttilde(&rest);
            let mut h = self.ttilde_left_generator(s, &tail);
            h.add_multiple(&tail, &LaurentInt::from_terms([(1, -1), (-1, 1)]));
            h
        };
        let h = Arc::new(h);
        self.bar_cache.write().expect("poisoned").insert(w.clone(), h.clone());
        h
    }

    /// The bar involution: `v -> v^-1`, `~T_w -> (~T_{w^-1})^-1`, result in
    /// the basis of `h`.
    pub fn bar(&self, h: &HeckeElement) -> Result<HeckeElement> {
        let tt = self.to_ttilde(h)?;
        let mut out = HeckeElement::zero(Basis::Ttilde);
        for (w, c) in &tt.terms {
            out.add_multiple(&self.bar_ttilde(w), &c.bar());
        }
        self.to_basis(&out, h.basis)
    }

    /// `h_{x,y,z}` for all `z`: `C_x C_y = Σ h_{x,y,z} C_z` in the signed or
    /// unsigned KL basis. With Ω parts,
    /// `h_{xω, yω', zω''} = δ_{ω'', ωω'} h_{x, σ_ω(y), z}`.
    pub fn h_constants(
        &self,
        x: &GroupElement,
        y: &GroupElement,
        signed: bool,
    ) -> Result<BTreeMap<GroupElement, LaurentInt>> {
        self.check(x)?;
        self.check(y)?;
        let needed = x.length() + y.length();
        if needed > self.radius() {
            return Err(Error::RadiusExceeded {
                needed,
                available: self.radius(),
            });
        }
        let ball = self.table.ball();
        let xi = self.table.index_of(x)?;
        let yi = ball.omega_image(x.omega(), self.table.index_of(y)?);
        let omega = self.group.omega_mul(x.omega(), y.omega());
        let prod = self.engine.product(xi, yi, signed)?;
        Ok(prod
            .iter()
            .map(|(z, c)| (self.group.raw(ball.word(*z).to_vec(), omega), c.clone()))
            .collect())
    }

    /// The same constants obtained by multiplying `~T`-expansions and
    /// eliminating back into the KL basis. Independent of the product
    /// recursion; used as its oracle.
    pub fn h_constants_via_ttilde(
        &self,
        x: &GroupElement,
        y: &GroupElement,
        signed: bool,
    ) -> Result<BTreeMap<GroupElement, LaurentInt>> {
        let basis = if signed { Basis::Csigned } else { Basis::Cprime };
        let a = HeckeElement::basis_element(basis, x.clone());
        let b = HeckeElement::basis_element(basis, y.clone());
        Ok(self.multiply(&a, &b)?.into_terms())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{AffineType, GroupDescriptor};

    fn alg(t: AffineType, ext: bool, r: usize) -> HeckeAlgebra {
        HeckeAlgebra::new(&Group::new(&GroupDescriptor::new(t, ext)).unwrap(), r)
    }

    fn l(terms: &[(i32, i64)]) -> LaurentInt {
        LaurentInt::from_terms(terms.iter().copied())
    }

    #[test]
    fn quadratic_relation() {
        let a = alg(AffineType::A1, false, 4);
        let g = a.group().clone();
        let s0 = g.generator(0);
        let t = HeckeElement::basis_element(Basis::T, s0.clone());
        let sq = a.multiply(&t, &t).unwrap();
        let expect = HeckeElement::from_terms(
            Basis::T,
            [(s0.clone(), l(&[(2, 1), (0, -1)])), (g.identity(), l(&[(2, 1)]))],
        );
        assert_eq!(sq, expect);
        let tt = HeckeElement::basis_element(Basis::Ttilde, s0.clone());
        let sq = a.multiply(&tt, &tt).unwrap();
        let expect = HeckeElement::from_terms(
            Basis::Ttilde,
            [(s0, l(&[(1, 1), (-1, -1)])), (g.identity(), LaurentInt::one())],
        );
        assert_eq!(sq, expect);
    }

    #[test]
    fn unit_is_neutral() {
        let a = alg(AffineType::A2, true, 4);
        let g = a.group().clone();
        let e = HeckeElement::basis_element(Basis::T, g.identity());
        let h = HeckeElement::from_terms(
            Basis::T,
            [
                (g.parse_element("01@2").unwrap(), l(&[(3, 2)])),
                (g.parse_element("2").unwrap(), l(&[(-1, 1)])),
            ],
        );
        assert_eq!(a.multiply(&e, &h).unwrap(), h);
        assert_eq!(a.multiply(&h, &e).unwrap(), h);
    }

    #[test]
    fn c_basis_examples() {
        let a = alg(AffineType::A1, false, 4);
        let g = a.group().clone();
        let (e, s0) = (g.identity(), g.generator(0));
        let c = a.c_basis_element(&s0, true).unwrap();
        assert_eq!(
            c,
            HeckeElement::from_terms(
                Basis::Ttilde,
                [(s0.clone(), LaurentInt::one()), (e.clone(), l(&[(1, -1)]))]
            )
        );
        let c = a.c_basis_element(&s0, false).unwrap();
        assert_eq!(
            c,
            HeckeElement::from_terms(Basis::Ttilde, [(s0, LaurentInt::one()), (e.clone(), l(&[(-1, 1)]))])
        );
        assert_eq!(
            a.c_basis_element(&e, true).unwrap(),
            HeckeElement::basis_element(Basis::Ttilde, e)
        );
    }

    #[test]
    fn bar_examples() {
        let a = alg(AffineType::A1, false, 4);
        let g = a.group().clone();
        let (e, s0) = (g.identity(), g.generator(0));
        let h = HeckeElement::from_terms(Basis::Ttilde, [(e.clone(), LaurentInt::v())]);
        assert_eq!(
            a.bar(&h).unwrap(),
            HeckeElement::from_terms(Basis::Ttilde, [(e.clone(), LaurentInt::v_inv())])
        );
        let h = HeckeElement::basis_element(Basis::Ttilde, s0.clone());
        assert_eq!(
            a.bar(&h).unwrap(),
            HeckeElement::from_terms(
                Basis::Ttilde,
                [(s0.clone(), LaurentInt::one()), (e, l(&[(-1, 1), (1, -1)]))]
            )
        );
        let c = HeckeElement::basis_element(Basis::Csigned, s0);
        assert_eq!(a.bar(&c).unwrap(), c);
    }

    #[test]
    fn h_constant_examples() {
        let a = alg(AffineType::A1, false, 4);
        let g = a.group().clone();
        let (s0, s1) = (g.generator(0), g.generator(1));
        let h = a.h_constants(&s0, &s0, true).unwrap();
        assert_eq!(h, BTreeMap::from([(s0.clone(), -LaurentInt::quantum_two())]));
        let h = a.h_constants(&s0, &s0, false).unwrap();
        assert_eq!(h, BTreeMap::from([(s0.clone(), LaurentInt::quantum_two())]));
        let h = a.h_constants(&s0, &s1, false).unwrap();
        assert_eq!(h, BTreeMap::from([(g.parse_element("01").unwrap(), LaurentInt::one())]));
    }

    #[test]
    fn h_constants_match_ttilde_route_with_omega() {
        let a = alg(AffineType::A2, true, 6);
        let g = a.group().clone();
        for x in g.enumerate_ball(2) {
            for y in g.enumerate_ball(3) {
                for signed in [false, true] {
                    assert_eq!(
                        a.h_constants(&x, &y, signed).unwrap(),
                        a.h_constants_via_ttilde(&x, &y, signed).unwrap(),
                        "x={x} y={y} signed={signed}"
                    );
                }
            }
        }
    }

    #[test]
    fn basis_round_trip() {
        let a = alg(AffineType::A2, false, 5);
        let g = a.group().clone();
        let h = HeckeElement::from_terms(
            Basis::Cprime,
            [
                (g.parse_element("0120").unwrap(), l(&[(2, 3), (-1, 1)])),
                (g.parse_element("1").unwrap(), l(&[(0, -7)])),
                (g.identity(), l(&[(5, 1)])),
            ],
        );
        for b in [Basis::T, Basis::Ttilde, Basis::Csigned, Basis::Cprime] {
            let there = a.to_basis(&h, b).unwrap();
            assert_eq!(there.basis(), b);
            assert_eq!(a.to_basis(&there, Basis::Cprime).unwrap(), h);
        }
    }

    #[test]
    fn display() {
        let a = alg(AffineType::A1, false, 2);
        let g = a.group().clone();
        let h = HeckeElement::from_terms(
            Basis::Cprime,
            [
                (g.generator(0), LaurentInt::quantum_two()),
                (g.identity(), LaurentInt::one()),
            ],
        );
        assert_eq!(h.to_string(), "(v + v^-1)*C'[0] + C'[e]");
        assert_eq!(HeckeElement::zero(Basis::T).to_string(), "0");
    }
}
