use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use dashu_int::IBig;
use dashu_ratio::RBig;
use serde::{Serialize, Serializer};

use super::afn::{AFunction, AValue};
use super::rank::{rank_over_sqrt_field, RankReport};
use crate::error::{Error, Result};
use crate::hecke::{HeckeAlgebra, KLTable};
use crate::laurent::{LaurentInt, QuadExt};
use crate::weyl::{ElementRepr, Group, GroupElement};

/// An integer combination of the basis `t_w` of `J`, certified up to
/// `radius`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JElement {
    pub terms: BTreeMap<GroupElement, IBig>,
    pub radius: usize,
}

impl JElement {
    pub fn basis(w: GroupElement, radius: usize) -> Self {
        Self {
            terms: BTreeMap::from([(w, IBig::ONE)]),
            radius,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Longest element of the support (0 for the zero element).
    pub fn max_length(&self) -> usize {
        self.terms.keys().map(|w| w.length()).max().unwrap_or(0)
    }
}

/// An element of `J ⊗ A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JTensorAElement {
    pub terms: BTreeMap<GroupElement, LaurentInt>,
    pub radius: usize,
}

impl JTensorAElement {
    pub fn zero(radius: usize) -> Self {
        Self {
            terms: BTreeMap::new(),
            radius,
        }
    }

    pub fn max_length(&self) -> usize {
        self.terms.keys().map(|w| w.length()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: &GroupElement, c: &LaurentInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(w);
        }
    }

    /// `v = q^{1/2}` applied coefficientwise.
    pub fn specialize(&self, q: &RBig) -> BTreeMap<GroupElement, QuadExt> {
        self.terms
            .iter()
            .map(|(w, c)| (w.clone(), c.specialize(q)))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }
}

#[derive(Serialize)]
struct TermRepr<'a, C> {
    w: ElementRepr,
    c: &'a C,
}

#[derive(Serialize)]
struct JRepr<'a, C> {
    radius: usize,
    terms: Vec<TermRepr<'a, C>>,
}

fn serialize_terms<S: Serializer, C: Serialize>(
    s: S,
    radius: usize,
    terms: &BTreeMap<GroupElement, C>,
) -> std::result::Result<S::Ok, S::Error> {
    JRepr {
        radius,
        terms: terms.iter().map(|(w, c)| TermRepr { w: w.repr(), c }).collect(),
    }
    .serialize(s)
}

struct DecimalInt<'a>(&'a IBig);

impl Serialize for DecimalInt<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

/// `{"radius":N,"terms":[{"w":{"word":[..],"omega":k},"c":"-1"}]}`.
impl Serialize for JElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: BTreeMap<GroupElement, DecimalInt> =
            self.terms.iter().map(|(w, c)| (w.clone(), DecimalInt(c))).collect();
        serialize_terms(s, self.radius, &terms)
    }
}

/// Same layout as [`JElement`] with Laurent-polynomial coefficients.
impl Serialize for JTensorAElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_terms(s, self.radius, &self.terms)
    }
}

type GammaRow = Arc<BTreeMap<GroupElement, IBig>>;

/// The asymptotic ring `J` of a group, computed within a working radius.
///
/// The KL table has radius `2R` and the a-function is scanned to `R`, where
/// `R = W + 2ℓ(w0) + 2` for working radius `W`; then every `a(z)` with
/// `ℓ(z) ≤ W` is certified, and `γ_{x,y,·}` is available whenever
/// `ℓ(x) + ℓ(y) ≤ W`. `J` has no finite unit, so nothing here pretends one.
pub struct JRing {
    alg: Arc<HeckeAlgebra>,
    afn: AFunction,
    working_radius: usize,
    gamma_cache: RwLock<HashMap<(GroupElement, GroupElement, bool), GammaRow>>,
    dinv: Vec<GroupElement>,
}

impl JRing {
    /// Scan radius needed to certify `a` on the ball of radius `working`.
    pub fn scan_radius_for(group: &Group, working: usize) -> usize {
        working + 2 * group.finite_longest_length() + 2
    }

    pub fn new(group: &Group, working_radius: usize) -> Result<Self> {
        let r = Self::scan_radius_for(group, working_radius);
        Self::from_table(Arc::new(KLTable::build(group, 2 * r)), working_radius)
    }

    /// Uses an existing table, which must have radius `≥ 2R`.
    pub fn from_table(table: Arc<KLTable>, working_radius: usize) -> Result<Self> {
        let group = table.group().clone();
        if !group.is_certifiable() {
            return Err(Error::UnsupportedType(format!(
                "{}: certified a-values are only available for A1~ and A2~",
                group.label()
            )));
        }
        let r = Self::scan_radius_for(&group, working_radius);
        let alg = Arc::new(HeckeAlgebra::from_table(table));
        let afn = AFunction::scan(&alg, r)?;
        debug_assert_eq!(afn.certified_radius(), Some(working_radius));
        let mut ring = Self {
            alg,
            afn,
            working_radius,
            gamma_cache: RwLock::new(HashMap::new()),
            dinv: Vec::new(),
        };
        ring.dinv = ring.find_distinguished(working_radius);
        Ok(ring)
    }

    pub fn algebra(&self) -> &HeckeAlgebra {
        &self.alg
    }

    pub fn group(&self) -> &Group {
        self.alg.group()
    }

    pub fn working_radius(&self) -> usize {
        self.working_radius
    }

    pub fn a_function(&self) -> &AFunction {
        &self.afn
    }

    fn within(&self, needed: usize) -> Result<()> {
        if needed > self.working_radius {
            Err(Error::RadiusExceeded {
                needed,
                available: self.working_radius,
            })
        } else {
            Ok(())
        }
    }

    /// Certified `a(z)`.
    pub fn a_value(&self, z: &GroupElement) -> Result<AValue> {
        self.within(z.length())?;
        self.afn.value(&self.alg, z)
    }

    /// `γ_{x,y,z}`: the constant term of `v^{a(z)} h_{x,y,z}`.
    pub fn gamma(&self, x: &GroupElement, y: &GroupElement, z: &GroupElement, signed: bool) -> Result<IBig> {
        let a = self.a_value(z)?.value as i32;
        let h = self.alg.h_constants(x, y, signed)?;
        match h.get(z) {
            Some(c) => c.constant_term_after_shift(a),
            None => Ok(IBig::ZERO),
        }
    }

    /// All nonzero `γ_{x,y,z}` for fixed `x, y`.
    pub fn gamma_row(&self, x: &GroupElement, y: &GroupElement, signed: bool) -> Result<GammaRow> {
        let key = (x.clone(), y.clone(), signed);
        if let Some(r) = self.gamma_cache.read().expect("poisoned").get(&key) {
            return Ok(r.clone());
        }
        self.within(x.length() + y.length())?;
        let h = self.alg.h_constants(x, y, signed)?;
        let mut row = BTreeMap::new();
        for (z, c) in h {
            let a = self.afn.value(&self.alg, &z)?.value as i32;
            let g = c.constant_term_after_shift(a)?;
            if g != IBig::ZERO {
                row.insert(z, g);
            }
        }
        let row = Arc::new(row);
        self.gamma_cache.write().expect("poisoned").insert(key, row.clone());
        Ok(row)
    }

    /// `t_x t_y = Σ γ_{x,y,z} t_z`, extended bilinearly.
    pub fn j_multiply(&self, a: &JElement, b: &JElement, signed: bool) -> Result<JElement> {
        self.within(a.max_length() + b.max_length())?;
        let mut out: BTreeMap<GroupElement, IBig> = BTreeMap::new();
        for (x, cx) in &a.terms {
            for (y, cy) in &b.terms {
                for (z, g) in self.gamma_row(x, y, signed)?.iter() {
                    *out.entry(z.clone()).or_default() += cx * cy * g;
                }
            }
        }
        out.retain(|_, c| *c != IBig::ZERO);
        Ok(JElement {
            terms: out,
            radius: self.working_radius,
        })
    }

    /// Product in `J ⊗ A`.
    pub fn jt_multiply(&self, a: &JTensorAElement, b: &JTensorAElement, signed: bool) -> Result<JTensorAElement> {
        self.within(a.max_length() + b.max_length())?;
        let mut out = JTensorAElement::zero(self.working_radius);
        for (x, cx) in &a.terms {
            for (y, cy) in &b.terms {
                let c = cx * cy;
                for (z, g) in self.gamma_row(x, y, signed)?.iter() {
                    out.add_term(z, &c.scale(g));
                }
            }
        }
        Ok(out)
    }

    fn find_distinguished(&self, radius: usize) -> Vec<GroupElement> {
        let table = self.alg.table();
        let ball = table.ball();
        ball.prefix(radius)
            .filter(|&d| ball.inverse(d) == d)
            .filter(|&d| {
                let deg = table.poly_by_index(0, d).len() as i64 - 1;
                self.afn.value_by_index(d) as i64 == ball.length(d) as i64 - 2 * deg
            })
            .map(|d| self.group().raw(ball.word(d).to_vec(), 0))
            .collect()
    }

    /// `{d : d² = e, a(d) = ℓ(d) - 2 deg P_{e,d}}` within `radius`.
    /// Such `d` have trivial Ω part, since otherwise `P_{e,d} = 0`.
    pub fn distinguished_involutions(&self, radius: usize) -> Result<Vec<GroupElement>> {
        self.within(radius)?;
        Ok(self.dinv.iter().filter(|d| d.length() <= radius).cloned().collect())
    }

    /// Longest distinguished involution found in the working ball.
    pub fn max_distinguished_length(&self) -> usize {
        self.dinv.iter().map(|d| d.length()).max().unwrap_or(0)
    }

    /// `φ(C'_x) = Σ h_{x,d,z} t_z` over distinguished `d` and `z` with
    /// `a(z) = a(d)`. Every distinguished involution found in the working
    /// ball takes part, so `ℓ(x)` plus the longest of them must fit.
    ///
    /// In the signed convention `γ_{d,d,d} = (-1)^{ℓ(d)}`, so the idempotent
    /// of `J` at `d` is `(-1)^{ℓ(d)} t_d` and the term for `d` carries that
    /// sign: `φ(C_x) = Σ (-1)^{ℓ(d)} h_{x,d,z} t_z`.
    pub fn phi(&self, x: &GroupElement, signed: bool) -> Result<JTensorAElement> {
        self.within(x.length() + self.max_distinguished_length())?;
        let mut out = JTensorAElement::zero(self.working_radius);
        for d in &self.dinv {
            let ad = self.afn.value(&self.alg, d)?.value;
            let flip = signed && d.length() % 2 == 1;
            for (z, c) in self.alg.h_constants(x, d, signed)? {
                if self.afn.value(&self.alg, &z)?.value == ad {
                    out.add_term(&z, &if flip { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// `φ` applied to `Σ c_x C_x`.
    pub fn phi_linear(&self, terms: &BTreeMap<GroupElement, LaurentInt>, signed: bool) -> Result<JTensorAElement> {
        let mut out = JTensorAElement::zero(self.working_radius);
        for (x, c) in terms {
            for (z, p) in self.phi(x, signed)?.terms {
                out.add_term(&z, &(&p * c));
            }
        }
        Ok(out)
    }

    pub fn phi_specialized(&self, x: &GroupElement, q: &RBig, signed: bool) -> Result<BTreeMap<GroupElement, QuadExt>> {
        if *q <= RBig::ZERO {
            return Err(Error::InvalidArgument("q must be positive".into()));
        }
        Ok(self.phi(x, signed)?.specialize(q))
    }

    /// Compares `φ(C_x) φ(C_y)` with `φ(C_x C_y)`. Returns the difference
    /// (zero when the homomorphism property holds at this pair).
    pub fn phi_product_defect(&self, x: &GroupElement, y: &GroupElement, signed: bool) -> Result<JTensorAElement> {
        let lhs = self.jt_multiply(&self.phi(x, signed)?, &self.phi(y, signed)?, signed)?;
        let rhs = self.phi_linear(&self.alg.h_constants(x, y, signed)?, signed)?;
        let mut diff = lhs;
        for (z, c) in &rhs.terms {
            diff.add_term(z, &-c);
        }
        Ok(diff)
    }

    /// Rank of the specialized images `φ_q(C_x)` for the given `x`, over
    /// `Q(√q)` (or `Q` when `q` is a rational square).
    pub fn phi_rank(&self, xs: &[GroupElement], q: &RBig, signed: bool) -> Result<RankReport> {
        let rows = xs
            .iter()
            .map(|x| self.phi_specialized(x, q, signed))
            .collect::<Result<Vec<_>>>()?;
        Ok(rank_over_sqrt_field(&rows, q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{AffineType, GroupDescriptor};

    fn ring(t: AffineType, w: usize) -> JRing {
        JRing::new(&Group::new(&GroupDescriptor::new(t, false)).unwrap(), w).unwrap()
    }

    #[test]
    fn gamma_examples() {
        let r = ring(AffineType::A1, 4);
        let g = r.group().clone();
        let (s0, s1) = (g.generator(0), g.generator(1));
        assert_eq!(r.gamma(&s0, &s0, &s0, true).unwrap(), IBig::from(-1));
        assert_eq!(r.gamma(&s0, &s0, &s0, false).unwrap(), IBig::ONE);
        for z in g.enumerate_ball(4) {
            assert_eq!(r.gamma(&s0, &s1, &z, true).unwrap(), IBig::ZERO);
        }
    }

    #[test]
    fn j_multiply_examples() {
        let r = ring(AffineType::A1, 4);
        let g = r.group().clone();
        let t = |s: &str| JElement::basis(g.parse_element(s).unwrap(), 4);
        assert!(r.j_multiply(&t("0"), &t("1"), false).unwrap().is_zero());
        assert_eq!(r.j_multiply(&t("0"), &t("01"), false).unwrap().terms, t("01").terms);
        let p = r.j_multiply(&t("01"), &t("10"), false).unwrap();
        let mut expect = t("010").terms;
        expect.extend(t("0").terms);
        assert_eq!(p.terms, expect);
        assert!(matches!(
            r.j_multiply(&t("010"), &t("01"), false),
            Err(Error::RadiusExceeded {
                needed: 5,
                available: 4
            })
        ));
    }

    #[test]
    fn distinguished_a1() {
        let r = ring(AffineType::A1, 6);
        let d: Vec<String> = r
            .distinguished_involutions(6)
            .unwrap()
            .iter()
            .map(|d| d.to_string())
            .collect();
        assert_eq!(d, ["e", "0", "1"]);
        assert_eq!(r.max_distinguished_length(), 1);
        assert!(r.distinguished_involutions(7).is_err());
    }

    #[test]
    fn phi_example() {
        let r = ring(AffineType::A1, 8);
        let g = r.group().clone();
        let p = r.phi(&g.generator(0), false).unwrap();
        let expect = BTreeMap::from([
            (g.generator(0), LaurentInt::quantum_two()),
            (g.parse_element("01").unwrap(), LaurentInt::one()),
        ]);
        assert_eq!(p.terms, expect);
        let e = r.phi(&g.identity(), false).unwrap();
        assert!(e.terms[&g.identity()].is_one());
        let spec = r.phi_specialized(&g.generator(0), &RBig::from(4), false).unwrap();
        assert_eq!(spec[&g.generator(0)].a1, RBig::from_parts(5.into(), 4u8.into()));
        let spec = r.phi_specialized(&g.generator(0), &RBig::from(1), false).unwrap();
        assert_eq!(spec[&g.generator(0)].a1, RBig::from(2));
    }

    #[test]
    fn phi_square() {
        let r = ring(AffineType::A1, 8);
        let s0 = r.group().generator(0);
        assert!(r.phi_product_defect(&s0, &s0, false).unwrap().terms.is_empty());
    }
}
