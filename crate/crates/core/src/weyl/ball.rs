use std::collections::HashMap;
use std::ops::Range;

use super::group::Group;

/// Marker for "outside the ball" in index tables.
pub const NONE: u32 = u32::MAX;

/// Indexed enumeration of the Coxeter elements of length `≤ radius`, with
/// multiplication tables by simple reflections. Index order is (length,
/// normal form), so index 0 is the identity.
#[derive(Clone, Debug)]
pub struct Ball {
    rank: usize,
    radius: usize,
    words: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, u32>,
    lmul: Vec<u32>,
    rmul: Vec<u32>,
    ldesc: Vec<u8>,
    rdesc: Vec<u8>,
    inverse: Vec<u32>,
    omega_perm: Vec<Vec<u32>>,
    auto_perm: Vec<Vec<u32>>,
    strata: Vec<usize>,
}

impl Ball {
    pub fn new(group: &Group, radius: usize) -> Self {
        let n = group.rank();
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        let mut index: HashMap<Vec<u8>, u32> = HashMap::new();
        index.insert(Vec::new(), 0);
        let mut strata = vec![0usize, 1];
        for len in 1..=radius {
            let prev = strata[len - 1]..strata[len];
            let mut layer: Vec<Vec<u8>> = Vec::new();
            for i in prev {
                for s in 0..n as u8 {
                    let mut w = words[i].clone();
                    w.push(s);
                    let nf = group.normalize(&w);
                    if nf.len() == len && !index.contains_key(&nf) {
                        index.insert(nf.clone(), NONE);
                        layer.push(nf);
                    }
                }
            }
            layer.sort();
            for w in layer {
                index.insert(w.clone(), words.len() as u32);
                words.push(w);
            }
            strata.push(words.len());
        }

        let lookup = |w: &[u8]| -> u32 {
            let nf = group.normalize(w);
            index.get(&nf).copied().unwrap_or(NONE)
        };
        let size = words.len();
        let mut lmul = vec![NONE; size * n];
        let mut rmul = vec![NONE; size * n];
        let mut ldesc = vec![0u8; size];
        let mut rdesc = vec![0u8; size];
        let mut inverse = vec![NONE; size];
        for (i, w) in words.iter().enumerate() {
            for s in 0..n as u8 {
                let mut left = Vec::with_capacity(w.len() + 1);
                left.push(s);
                left.extend_from_slice(w);
                let li = lookup(&left);
                lmul[i * n + s as usize] = li;
                if li != NONE && words[li as usize].len() < w.len() {
                    ldesc[i] |= 1 << s;
                }
                let mut right = w.clone();
                right.push(s);
                let ri = lookup(&right);
                rmul[i * n + s as usize] = ri;
                if ri != NONE && words[ri as usize].len() < w.len() {
                    rdesc[i] |= 1 << s;
                }
            }
            let rev: Vec<u8> = w.iter().rev().copied().collect();
            inverse[i] = lookup(&rev);
        }

        let permute_all = |perm: &[u8]| -> Vec<u32> {
            words
                .iter()
                .map(|w| {
                    let img: Vec<u8> = w.iter().map(|&g| perm[g as usize]).collect();
                    lookup(&img)
                })
                .collect()
        };
        let omega_perm = (0..group.omega_count() as u8)
            .map(|k| permute_all(group.omega_permutation(k)))
            .collect();
        let auto_perm = group.diagram_automorphisms().iter().map(|p| permute_all(p)).collect();

        Self {
            rank: n,
            radius,
            words,
            index,
            lmul,
            rmul,
            ldesc,
            rdesc,
            inverse,
            omega_perm,
            auto_perm,
            strata,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn word(&self, i: u32) -> &[u8] {
        &self.words[i as usize]
    }

    pub fn length(&self, i: u32) -> usize {
        self.words[i as usize].len()
    }

    /// Index of a normal-form word, if it lies in the ball.
    pub fn index_of(&self, normal_form: &[u8]) -> Option<u32> {
        self.index.get(normal_form).copied()
    }

    /// Index of `s·w_i`, or [`NONE`].
    pub fn lmul(&self, i: u32, s: u8) -> u32 {
        self.lmul[i as usize * self.rank + s as usize]
    }

    /// Index of `w_i·s`, or [`NONE`].
    pub fn rmul(&self, i: u32, s: u8) -> u32 {
        self.rmul[i as usize * self.rank + s as usize]
    }

    pub fn is_left_descent(&self, i: u32, s: u8) -> bool {
        self.ldesc[i as usize] & (1 << s) != 0
    }

    pub fn is_right_descent(&self, i: u32, s: u8) -> bool {
        self.rdesc[i as usize] & (1 << s) != 0
    }

    pub fn left_descent_mask(&self, i: u32) -> u8 {
        self.ldesc[i as usize]
    }

    pub fn right_descent_mask(&self, i: u32) -> u8 {
        self.rdesc[i as usize]
    }

    pub fn inverse(&self, i: u32) -> u32 {
        self.inverse[i as usize]
    }

    /// Index of `π_ω(w_i)`; the ball is stable under Ω.
    pub fn omega_image(&self, k: u8, i: u32) -> u32 {
        self.omega_perm[k as usize][i as usize]
    }

    /// Number of diagram automorphisms (ordered as in the group).
    pub fn automorphism_count(&self) -> usize {
        self.auto_perm.len()
    }

    pub fn automorphism_image(&self, a: usize, i: u32) -> u32 {
        self.auto_perm[a][i as usize]
    }

    /// Indices of the elements of length exactly `len`.
    pub fn stratum(&self, len: usize) -> Range<u32> {
        if len > self.radius {
            return 0..0;
        }
        self.strata[len] as u32..self.strata[len + 1] as u32
    }

    /// Indices of the elements of length `≤ len`.
    pub fn prefix(&self, len: usize) -> Range<u32> {
        0..self.strata[len.min(self.radius) + 1] as u32
    }
}
