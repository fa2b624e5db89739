use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::ball::Ball;
use super::descriptor::{CoxeterMatrix, GroupDescriptor};
use crate::error::{Error, Result};

/// Stable identifier of a group, derived from a hash of its defining data.
pub type GroupId = u64;

/// Square integer matrix acting on simple-root coordinates, row-major.
#[derive(Clone, PartialEq, Eq)]
struct RootMatrix {
    n: usize,
    data: Vec<i64>,
}

impl RootMatrix {
    fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Self { n, data }
    }

    fn column_is_negative(&self, j: usize) -> bool {
        (0..self.n).any(|i| self.data[i * self.n + j] < 0)
    }

    fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }
}

/// Handle to an (extended) affine Weyl group. Cheap to clone; immutable.
#[derive(Clone)]
pub struct Group {
    inner: Arc<Inner>,
}

struct Inner {
    descriptor: Option<GroupDescriptor>,
    label: String,
    id: GroupId,
    coxeter: CoxeterMatrix,
    /// `cartan[i][j] = <α_i^∨, α_j>`, so `s_i(α_j) = α_j - cartan[i][j] α_i`.
    cartan: Vec<Vec<i64>>,
    omega: Vec<Vec<u8>>,
    omega_mul: Vec<Vec<u8>>,
    omega_inv: Vec<u8>,
    automorphisms: Vec<Vec<u8>>,
    finite_longest: usize,
}

/// An element `uω`: `word` is the ShortLex-least reduced word of the
/// Coxeter part `u`, `omega` indexes the length-zero part.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    group: GroupId,
    word: Vec<u8>,
    omega: u8,
}

/// Serialized form of an element: `{"word":[0,1,0],"omega":0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRepr {
    pub word: Vec<u8>,
    pub omega: u8,
}

impl GroupElement {
    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn omega(&self) -> u8 {
        self.omega
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn group_id(&self) -> GroupId {
        self.group
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty() && self.omega == 0
    }

    pub fn repr(&self) -> ElementRepr {
        ElementRepr {
            word: self.word.clone(),
            omega: self.omega,
        }
    }

    /// Compact text form used on the command line: generator digits, `e` for
    /// the identity, `@k` for a nontrivial Ω part.
    pub fn to_compact(&self) -> String {
        let mut s: String = if self.word.is_empty() {
            "e".into()
        } else {
            self.word.iter().map(|g| char::from(b'0' + g)).collect()
        };
        if self.omega != 0 {
            s.push_str(&format!("@{}", self.omega));
        }
        s
    }
}

impl Ord for GroupElement {
    /// Orders by group, then length, then normal form, then Ω part.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.group, self.word.len(), &self.word, self.omega).cmp(&(
            other.group,
            other.word.len(),
            &other.word,
            other.omega,
        ))
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_compact())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_compact())
    }
}

impl Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.repr().serialize(s)
    }
}

#[allow(clippy::needless_range_loop)]
fn cartan_from_coxeter(cox: &CoxeterMatrix) -> Result<Vec<Vec<i64>>> {
    let n = cox.rank();
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        a[i][i] = 2;
        for j in (i + 1)..n {
            // a_ij * a_ji = 4 cos^2(π/m); ∞ uses the symmetric -2/-2 choice
            let (x, y) = match cox.get(i, j) {
                2 => (0, 0),
                3 => (-1, -1),
                4 => (-1, -2),
                6 => (-1, -3),
                0 => (-2, -2),
                m => {
                    return Err(Error::UnsupportedType(format!(
                        "Coxeter entry m = {m} has no integral root representation"
                    )))
                }
            };
            a[i][j] = x;
            a[j][i] = y;
        }
    }
    Ok(a)
}

fn permutations(n: usize) -> Vec<Vec<u8>> {
    fn rec(prefix: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i as u8);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

impl Group {
    /// Builds the group described by `desc`.
    pub fn new(desc: &GroupDescriptor) -> Result<Self> {
        desc.validate()?;
        let label = if desc.extended {
            format!("{} (extended)", desc.affine_type)
        } else {
            desc.affine_type.to_string()
        };
        let g = Self::build(
            Some(desc.clone()),
            label,
            desc.coxeter_matrix(),
            desc.omega_action.clone(),
        )?;
        debug_assert_eq!(g.finite_longest_length(), desc.affine_type.finite_longest_length());
        Ok(g)
    }

    /// Builds a group from an arbitrary crystallographic Coxeter matrix
    /// (entries 2, 3, 4, 6 or ∞) and Ω given as diagram automorphisms.
    /// Computations over such groups are not covered by the certification
    /// bounds used elsewhere in this crate.
    pub fn from_coxeter_matrix(label: &str, coxeter: CoxeterMatrix, omega_action: Vec<Vec<u8>>) -> Result<Self> {
        coxeter.validate()?;
        let identity: Vec<u8> = (0..coxeter.rank() as u8).collect();
        if omega_action.first() != Some(&identity) {
            return Err(Error::InvalidElement("first Ω element must act trivially".into()));
        }
        if let Some(p) = omega_action.iter().find(|p| !coxeter.preserved_by(p)) {
            return Err(Error::InvalidElement(format!("{p:?} is not a diagram automorphism")));
        }
        Self::build(None, label.to_string(), coxeter, omega_action)
    }

    fn build(
        descriptor: Option<GroupDescriptor>,
        label: String,
        coxeter: CoxeterMatrix,
        omega: Vec<Vec<u8>>,
    ) -> Result<Self> {
        let n = coxeter.rank();
        let cartan = cartan_from_coxeter(&coxeter)?;
        let find = |p: &Vec<u8>| omega.iter().position(|q| q == p);
        let mut omega_mul = vec![vec![0u8; omega.len()]; omega.len()];
        let mut omega_inv = vec![0u8; omega.len()];
        for (a, pa) in omega.iter().enumerate() {
            for (b, pb) in omega.iter().enumerate() {
                let comp: Vec<u8> = (0..n).map(|i| pa[pb[i] as usize]).collect();
                let c = find(&comp).ok_or_else(|| Error::InvalidElement("Ω is not closed under composition".into()))?;
                omega_mul[a][b] = c as u8;
                if c == 0 {
                    omega_inv[a] = b as u8;
                }
            }
        }
        let automorphisms = permutations(n)
            .into_iter()
            .filter(|p| coxeter.preserved_by(p))
            .collect();

        let mut hasher = Sha256::new();
        hasher.update(serde_json::to_vec(&(&label, &coxeter, &omega)).expect("serializable"));
        let digest = hasher.finalize();
        let id = u64::from_be_bytes(digest[..8].try_into().unwrap());

        let mut g = Group {
            inner: Arc::new(Inner {
                descriptor,
                label,
                id,
                coxeter,
                cartan,
                omega,
                omega_mul,
                omega_inv,
                automorphisms,
                finite_longest: 0,
            }),
        };
        let fl = g.compute_finite_longest()?;
        Arc::get_mut(&mut g.inner).expect("unique").finite_longest = fl;
        Ok(g)
    }

    /// ℓ(w0) of the parabolic subgroup generated by all generators except s0.
    fn compute_finite_longest(&self) -> Result<usize> {
        let gens: Vec<u8> = (1..self.rank() as u8).collect();
        let mut frontier = vec![Vec::<u8>::new()];
        let mut seen = std::collections::HashSet::new();
        seen.insert(Vec::new());
        let mut longest = 0;
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in &frontier {
                for &s in &gens {
                    let mut word = w.clone();
                    word.push(s);
                    let nf = self.normalize(&word);
                    if nf.len() > w.len() && seen.insert(nf.clone()) {
                        longest = longest.max(nf.len());
                        next.push(nf);
                    }
                }
            }
            if seen.len() > 100_000 {
                return Err(Error::UnsupportedType(format!(
                    "{}: finite Weyl group is not finite",
                    self.inner.label
                )));
            }
            frontier = next;
        }
        Ok(longest)
    }

    pub fn descriptor(&self) -> Option<&GroupDescriptor> {
        self.inner.descriptor.as_ref()
    }

    pub fn label(&self) -> &str {
        &self.inner.label
    }

    pub fn id(&self) -> GroupId {
        self.inner.id
    }

    /// Number of Coxeter generators.
    pub fn rank(&self) -> usize {
        self.inner.coxeter.rank()
    }

    pub fn coxeter_matrix(&self) -> &CoxeterMatrix {
        &self.inner.coxeter
    }

    pub fn omega_count(&self) -> usize {
        self.inner.omega.len()
    }

    /// Permutation of the generators induced by Ω element `k`.
    pub fn omega_permutation(&self, k: u8) -> &[u8] {
        &self.inner.omega[k as usize]
    }

    pub fn omega_mul(&self, a: u8, b: u8) -> u8 {
        self.inner.omega_mul[a as usize][b as usize]
    }

    pub fn omega_inverse(&self, a: u8) -> u8 {
        self.inner.omega_inv[a as usize]
    }

    /// All permutations of the generators preserving the Coxeter matrix.
    pub fn diagram_automorphisms(&self) -> &[Vec<u8>] {
        &self.inner.automorphisms
    }

    /// ℓ(w0) for the finite Weyl group.
    pub fn finite_longest_length(&self) -> usize {
        self.inner.finite_longest
    }

    /// Whether certified computations are supported (affine A1/A2 only).
    pub fn is_certifiable(&self) -> bool {
        self.inner.descriptor.is_some()
    }

    pub fn identity(&self) -> GroupElement {
        self.raw(Vec::new(), 0)
    }

    pub fn generator(&self, s: u8) -> GroupElement {
        assert!((s as usize) < self.rank(), "generator index out of range");
        self.raw(vec![s], 0)
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.rank() as u8).map(|s| self.generator(s)).collect()
    }

    pub fn omega_element(&self, k: u8) -> GroupElement {
        assert!((k as usize) < self.omega_count(), "Ω index out of range");
        self.raw(Vec::new(), k)
    }

    pub fn omega_elements(&self) -> Vec<GroupElement> {
        (0..self.omega_count() as u8).map(|k| self.omega_element(k)).collect()
    }

    /// Wraps an already-normalized word. Callers guarantee normal form.
    pub(crate) fn raw(&self, word: Vec<u8>, omega: u8) -> GroupElement {
        GroupElement {
            group: self.inner.id,
            word,
            omega,
        }
    }

    /// The element `s_{w_1} ... s_{w_k} ω`, for any (not necessarily
    /// reduced) word.
    pub fn element(&self, word: &[u8], omega: u8) -> Result<GroupElement> {
        if let Some(&g) = word.iter().find(|&&g| g as usize >= self.rank()) {
            return Err(Error::InvalidElement(format!("generator s{g} does not exist")));
        }
        if omega as usize >= self.omega_count() {
            return Err(Error::InvalidElement(format!("Ω element {omega} does not exist")));
        }
        Ok(self.raw(self.normalize(word), omega))
    }

    pub fn from_repr(&self, r: &ElementRepr) -> Result<GroupElement> {
        self.element(&r.word, r.omega)
    }

    /// Parses `"010"`, `""`/`"e"`, with an optional `"@k"` Ω suffix.
    pub fn parse_element(&self, s: &str) -> Result<GroupElement> {
        let s = s.trim();
        let (word_part, omega) = match s.split_once('@') {
            Some((w, o)) => (
                w,
                o.parse::<u8>()
                    .map_err(|_| Error::Parse(format!("bad Ω index in `{s}`")))?,
            ),
            None => (s, 0),
        };
        let word_part = if word_part == "e" { "" } else { word_part };
        let word = word_part
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::Parse(format!("bad generator `{c}` in `{s}`")))
            })
            .collect::<Result<Vec<u8>>>()?;
        self.element(&word, omega)
    }

    fn check(&self, x: &GroupElement) -> Result<()> {
        if x.group == self.inner.id {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    fn apply_left(&self, s: usize, m: &mut RootMatrix) {
        // S_s m: only row s changes.
        let n = m.n;
        for j in 0..n {
            let mut acc = 0;
            for k in 0..n {
                acc += self.inner.cartan[s][k] * m.data[k * n + j];
            }
            m.data[s * n + j] -= acc;
        }
    }

    fn apply_right(&self, m: &mut RootMatrix, s: usize) {
        // m S_s: column j gains -cartan[s][j] * column s.
        let n = m.n;
        for i in 0..n {
            let ms = m.data[i * n + s];
            if ms == 0 {
                continue;
            }
            for j in 0..n {
                m.data[i * n + j] -= ms * self.inner.cartan[s][j];
            }
        }
    }

    /// Matrix of `w^-1` for `w = s_{a_1} ... s_{a_k}`.
    fn inverse_matrix(&self, word: &[u8]) -> RootMatrix {
        let mut m = RootMatrix::identity(self.rank());
        for &a in word {
            self.apply_left(a as usize, &mut m);
        }
        m
    }

    /// Matrix of `w`.
    fn matrix(&self, word: &[u8]) -> RootMatrix {
        let mut m = RootMatrix::identity(self.rank());
        for &a in word {
            self.apply_right(&mut m, a as usize);
        }
        m
    }

    fn reduced_word_greedy(&self, word: &[u8], largest_first: bool) -> Vec<u8> {
        let n = self.rank();
        let mut m = self.inverse_matrix(word);
        let mut out = Vec::with_capacity(word.len());
        loop {
            let pick = if largest_first {
                (0..n).rev().find(|&j| m.column_is_negative(j))
            } else {
                (0..n).find(|&j| m.column_is_negative(j))
            };
            let Some(s) = pick else { break };
            out.push(s as u8);
            self.apply_right(&mut m, s);
        }
        debug_assert!(m.is_identity());
        out
    }

    /// ShortLex normal form: at each step take the smallest left descent.
    pub(crate) fn normalize(&self, word: &[u8]) -> Vec<u8> {
        self.reduced_word_greedy(word, false)
    }

    /// The lexicographically greatest reduced word of the Coxeter part of `w`.
    pub fn reduced_word_lex_max(&self, w: &GroupElement) -> Result<Vec<u8>> {
        self.check(w)?;
        Ok(self.reduced_word_greedy(&w.word, true))
    }

    pub fn is_reduced(&self, word: &[u8]) -> bool {
        self.normalize(word).len() == word.len()
    }

    fn permute_word(&self, omega: u8, word: &[u8]) -> Vec<u8> {
        let p = &self.inner.omega[omega as usize];
        word.iter().map(|&g| p[g as usize]).collect()
    }

    /// Applies a diagram automorphism (any permutation preserving the
    /// Coxeter matrix) to the Coxeter part.
    pub fn apply_automorphism(&self, perm: &[u8], w: &GroupElement) -> Result<GroupElement> {
        self.check(w)?;
        if !self.inner.coxeter.preserved_by(perm) {
            return Err(Error::InvalidElement(format!("{perm:?} is not a diagram automorphism")));
        }
        let word: Vec<u8> = w.word.iter().map(|&g| perm[g as usize]).collect();
        Ok(self.raw(self.normalize(&word), w.omega))
    }

    /// Normal form of `a·b`.
    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        // u ω u' ω' = u π_ω(u') ωω'
        let mut word = a.word.clone();
        word.extend(self.permute_word(a.omega, &b.word));
        Ok(self.raw(self.normalize(&word), self.omega_mul(a.omega, b.omega)))
    }

    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        // (uω)^-1 = π_{ω^-1}(u^-1) ω^-1
        let inv = self.omega_inverse(a.omega);
        let rev: Vec<u8> = a.word.iter().rev().copied().collect();
        let word = self.permute_word(inv, &rev);
        Ok(self.raw(self.normalize(&word), inv))
    }

    pub fn length(&self, a: &GroupElement) -> Result<usize> {
        self.check(a)?;
        Ok(a.word.len())
    }

    /// `{s : ℓ(s w) < ℓ(w)}`.
    pub fn left_descents(&self, w: &GroupElement) -> Result<Vec<u8>> {
        self.check(w)?;
        let m = self.inverse_matrix(&w.word);
        Ok((0..self.rank())
            .filter(|&j| m.column_is_negative(j))
            .map(|j| j as u8)
            .collect())
    }

    /// `{s : ℓ(w s) < ℓ(w)}`.
    pub fn right_descents(&self, w: &GroupElement) -> Result<Vec<u8>> {
        self.check(w)?;
        let m = self.matrix(&w.word);
        // uω s = u s_{π_ω(s)} ω
        let p = &self.inner.omega[w.omega as usize];
        Ok((0..self.rank() as u8)
            .filter(|&s| m.column_is_negative(p[s as usize] as usize))
            .collect())
    }

    pub fn is_involution(&self, w: &GroupElement) -> Result<bool> {
        Ok(self.multiply(w, w)?.is_identity())
    }

    /// Bruhat order via the subword property of the normal form of `w`.
    /// Elements with different Ω parts are incomparable.
    pub fn bruhat_leq(&self, y: &GroupElement, w: &GroupElement) -> Result<bool> {
        self.check(y)?;
        self.check(w)?;
        if y.omega != w.omega {
            return Ok(false);
        }
        self.subword_check(&y.word, &w.word)
    }

    /// Bruhat comparison of Coxeter parts against an explicitly supplied
    /// reduced expression of `w`.
    pub fn bruhat_leq_with_word(&self, y: &GroupElement, reduced_w: &[u8]) -> Result<bool> {
        self.check(y)?;
        if reduced_w.iter().any(|&g| g as usize >= self.rank()) || !self.is_reduced(reduced_w) {
            return Err(Error::InvalidElement(format!("{reduced_w:?} is not a reduced word")));
        }
        self.subword_check(&y.word, reduced_w)
    }

    // y ≤ s w' (reduced) iff (sy < y ? sy ≤ w' : y ≤ w'): greedily strip
    // letters of w from the left and accept iff y is consumed.
    fn subword_check(&self, y: &[u8], reduced_w: &[u8]) -> Result<bool> {
        if y.len() > reduced_w.len() {
            return Ok(false);
        }
        let mut m = self.inverse_matrix(y);
        let mut remaining = y.len();
        for (i, &s) in reduced_w.iter().enumerate() {
            if remaining == 0 || remaining > reduced_w.len() - i {
                break;
            }
            if m.column_is_negative(s as usize) {
                self.apply_right(&mut m, s as usize);
                remaining -= 1;
            }
        }
        Ok(remaining == 0)
    }

    /// All elements with `ℓ ≤ radius`, sorted by (length, normal form, Ω).
    pub fn enumerate_ball(&self, radius: usize) -> Vec<GroupElement> {
        let ball = Ball::new(self, radius);
        let mut out = Vec::with_capacity(ball.len() * self.omega_count());
        for i in 0..ball.len() {
            for k in 0..self.omega_count() as u8 {
                out.push(self.raw(ball.word(i as u32).to_vec(), k));
            }
        }
        out.sort();
        out
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({})", self.inner.label)
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.inner.id == other.inner.id
    }
}

impl Eq for Group {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::AffineType;

    fn group(t: AffineType, ext: bool) -> Group {
        Group::new(&GroupDescriptor::new(t, ext)).unwrap()
    }

    #[test]
    fn make_group_examples() {
        let g = group(AffineType::A1, false);
        assert_eq!(g.rank(), 2);
        assert_eq!(g.omega_count(), 1);
        let g = group(AffineType::A1, true);
        assert_eq!(g.omega_count(), 2);
        assert_eq!(g.omega_permutation(1), &[1, 0]);
        let g = group(AffineType::A2, false);
        assert_eq!(g.rank(), 3);
        for i in 0..3u8 {
            for j in 0..3u8 {
                if i != j {
                    // (s_i s_j)^3 = e
                    let word: Vec<u8> = [i, j].repeat(3);
                    assert!(g.element(&word, 0).unwrap().is_identity());
                    assert!(!g.element(&[i, j], 0).unwrap().is_identity());
                }
            }
        }
        assert_eq!(g.finite_longest_length(), 3);
        assert_eq!(group(AffineType::A1, false).finite_longest_length(), 1);
    }

    #[test]
    fn multiply_examples() {
        let g = group(AffineType::A1, true);
        let s0 = g.generator(0);
        let s1 = g.generator(1);
        assert!(g.multiply(&s0, &s0).unwrap().is_identity());
        assert_eq!(g.multiply(&s0, &s1).unwrap().length(), 2);
        let w = g.multiply(&g.omega_element(1), &s0).unwrap();
        assert_eq!((w.word(), w.omega()), (&[1u8][..], 1));
        // closure: ω has order 2 and conjugates s0 to s1
        let om = g.omega_element(1);
        assert!(g.multiply(&om, &om).unwrap().is_identity());
        let conj = g
            .multiply(&g.multiply(&om, &s0).unwrap(), &g.inverse(&om).unwrap())
            .unwrap();
        assert_eq!(conj, s1);
    }

    #[test]
    fn group_mismatch() {
        let a = group(AffineType::A1, false);
        let b = group(AffineType::A2, false);
        assert_eq!(a.multiply(&a.generator(0), &b.generator(0)), Err(Error::GroupMismatch));
        assert_eq!(a.bruhat_leq(&b.identity(), &a.generator(0)), Err(Error::GroupMismatch));
    }

    #[test]
    fn bruhat_examples() {
        let g = group(AffineType::A1, false);
        let e = g.identity();
        let s0 = g.generator(0);
        let s01 = g.parse_element("01").unwrap();
        let s10 = g.parse_element("10").unwrap();
        assert!(g.bruhat_leq(&e, &s01).unwrap());
        assert!(g.bruhat_leq(&s0, &s01).unwrap());
        assert!(!g.bruhat_leq(&s01, &s10).unwrap());
        assert!(!g.bruhat_leq(&s01, &s0).unwrap());
    }

    #[test]
    fn cross_omega_is_incomparable() {
        let g = group(AffineType::A1, true);
        let y = g.parse_element("0").unwrap();
        let w = g.parse_element("010@1").unwrap();
        assert!(!g.bruhat_leq(&y, &w).unwrap());
        assert!(g.bruhat_leq(&g.parse_element("0@1").unwrap(), &w).unwrap());
    }

    #[test]
    fn normal_form_is_shortlex() {
        let g = group(AffineType::A2, false);
        // s1 s0 s1 = s0 s1 s0, the lex-least is 010
        assert_eq!(g.parse_element("101").unwrap().word(), &[0, 1, 0]);
        assert_eq!(
            g.reduced_word_lex_max(&g.parse_element("010").unwrap()).unwrap(),
            vec![1, 0, 1]
        );
        assert_eq!(g.parse_element("0110").unwrap(), g.identity());
    }

    #[test]
    fn descents() {
        let g = group(AffineType::A2, false);
        let w = g.parse_element("012").unwrap();
        assert_eq!(g.left_descents(&w).unwrap(), vec![0]);
        assert_eq!(g.right_descents(&w).unwrap(), vec![2]);
        let x = g.parse_element("010").unwrap();
        assert_eq!(g.left_descents(&x).unwrap(), vec![0, 1]);
        let ge = group(AffineType::A1, true);
        let y = ge.parse_element("0@1").unwrap();
        // s0 ω s = s0 s_{π(s)} ω, so the right descent is s1
        assert_eq!(ge.right_descents(&y).unwrap(), vec![1]);
    }

    #[test]
    fn parse_rejects_garbage() {
        let g = group(AffineType::A1, false);
        assert!(g.parse_element("02").is_err());
        assert!(g.parse_element("0x").is_err());
        assert!(g.parse_element("0@1").is_err());
        assert_eq!(g.parse_element("e").unwrap(), g.identity());
        assert_eq!(g.parse_element("").unwrap(), g.identity());
    }

    #[test]
    fn ball_examples() {
        let g = group(AffineType::A1, false);
        assert_eq!(g.enumerate_ball(0), vec![g.identity()]);
        let b = g.enumerate_ball(2);
        let names: Vec<String> = b.iter().map(|x| x.to_compact()).collect();
        assert_eq!(names, ["e", "0", "1", "01", "10"]);
        for k in 0..10 {
            assert_eq!(g.enumerate_ball(k).len(), 2 * k + 1);
        }
        let ge = group(AffineType::A1, true);
        assert_eq!(ge.enumerate_ball(0), vec![ge.identity(), ge.omega_element(1)]);
        // affine A2: 3k elements of length k >= 1
        let g2 = group(AffineType::A2, false);
        assert_eq!(g2.enumerate_ball(4).len(), 1 + 3 + 6 + 9 + 12);
    }

    #[test]
    fn generic_coxeter_matrix() {
        // affine C2 (B2~): m = 4, 2, 4
        let cox = CoxeterMatrix(vec![vec![1, 4, 2], vec![4, 1, 4], vec![2, 4, 1]]);
        let g = Group::from_coxeter_matrix("C2~", cox, vec![vec![0, 1, 2]]).unwrap();
        assert!(!g.is_certifiable());
        assert_eq!(g.finite_longest_length(), 4);
        assert!(g.element(&[0, 1, 0, 1, 0, 1, 0, 1], 0).unwrap().is_identity());
        let bad = CoxeterMatrix(vec![vec![1, 5], vec![5, 1]]);
        assert!(Group::from_coxeter_matrix("H2", bad, vec![vec![0, 1]]).is_err());
    }
}
