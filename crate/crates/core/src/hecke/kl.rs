use std::collections::HashMap;
use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::laurent::LaurentInt;
use crate::weyl::{Ball, ElementRepr, Group, GroupDescriptor, GroupElement, NONE};

const CACHE_VERSION: u32 = 1;

/// Kazhdan–Lusztig polynomials `P_{y,w}` for all Coxeter elements `y, w`
/// of length `≤ radius`.
///
/// Row `w` stores an interned polynomial id for every `y` with
/// `index(y) ≤ index(w)`; since indices are sorted by length this covers all
/// `y ≤ w`. Bruhat-incomparable pairs come out of the recursion as zero.
pub struct KLTable {
    group: Group,
    ball: Ball,
    polys: Vec<Vec<i64>>,
    rows: Vec<Vec<u32>>,
    mu: Vec<Vec<(u32, i64)>>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    group: GroupDescriptor,
    radius: usize,
    entries: Vec<CacheEntry>,
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    y: ElementRepr,
    w: ElementRepr,
    #[serde(rename = "P")]
    p: LaurentInt,
}

struct Interner {
    polys: Vec<Vec<i64>>,
    ids: HashMap<Vec<i64>, u32>,
}

impl Interner {
    fn new() -> Self {
        let mut ids = HashMap::new();
        ids.insert(Vec::new(), 0);
        ids.insert(vec![1], 1);
        Self {
            polys: vec![Vec::new(), vec![1]],
            ids,
        }
    }

    fn intern(&mut self, p: &[i64]) -> u32 {
        if let Some(&id) = self.ids.get(p) {
            return id;
        }
        let id = self.polys.len() as u32;
        self.polys.push(p.to_vec());
        self.ids.insert(p.to_vec(), id);
        id
    }
}

fn add_shifted(acc: &mut Vec<i64>, p: &[i64], shift: usize, factor: i64) {
    if p.is_empty() {
        return;
    }
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (i, c) in p.iter().enumerate() {
        let t = c.checked_mul(factor).expect("KL coefficient overflow");
        acc[i + shift] = acc[i + shift].checked_add(t).expect("KL coefficient overflow");
    }
}

fn trim(p: &mut Vec<i64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

impl KLTable {
    /// Computes the table by the descent recursion: for `w = s v > v`,
    /// `P_{x,w} = q^{1-c} P_{sx,v} + q^c P_{x,v} - Σ μ(z,v) q^{(ℓ(w)-ℓ(z))/2} P_{x,z}`
    /// where `c = [sx < x]` and `z` runs over `z < v` with `sz < z`.
    pub fn build(group: &Group, radius: usize) -> Self {
        let ball = Ball::new(group, radius);
        let size = ball.len();
        let mut interner = Interner::new();
        let mut rows: Vec<Vec<u32>> = Vec::with_capacity(size);
        let mut mu: Vec<Vec<(u32, i64)>> = Vec::with_capacity(size);
        rows.push(vec![1]);
        mu.push(Vec::new());
        let mut acc: Vec<i64> = Vec::new();
        for w in 1..size as u32 {
            let s = ball.word(w)[0];
            let v = ball.lmul(w, s);
            let lw = ball.length(w);
            let zs: Vec<(u32, i64)> = mu[v as usize]
                .iter()
                .copied()
                .filter(|&(z, _)| ball.is_left_descent(z, s))
                .collect();
            let mut row = Vec::with_capacity(w as usize + 1);
            for x in 0..=w {
                let get = |a: u32, b: u32| -> &[i64] {
                    if a == NONE || a > b {
                        &[]
                    } else {
                        &interner.polys[rows[b as usize][a as usize] as usize]
                    }
                };
                acc.clear();
                let sx = ball.lmul(x, s);
                if ball.is_left_descent(x, s) {
                    add_shifted(&mut acc, get(sx, v), 0, 1);
                    add_shifted(&mut acc, get(x, v), 1, 1);
                } else {
                    add_shifted(&mut acc, get(sx, v), 1, 1);
                    add_shifted(&mut acc, get(x, v), 0, 1);
                }
                for &(z, m) in &zs {
                    let shift = (lw - ball.length(z)) / 2;
                    add_shifted(&mut acc, get(x, z), shift, -m);
                }
                trim(&mut acc);
                row.push(interner.intern(&acc));
            }
            rows.push(row);
            mu.push(Self::mu_row(&ball, &interner.polys, &rows[w as usize], w));
        }
        Self {
            group: group.clone(),
            ball,
            polys: interner.polys,
            rows,
            mu,
        }
    }

    fn mu_row(ball: &Ball, polys: &[Vec<i64>], row: &[u32], w: u32) -> Vec<(u32, i64)> {
        let lw = ball.length(w);
        let mut out = Vec::new();
        for z in 0..w {
            let lz = ball.length(z);
            if (lw - lz) % 2 == 1 {
                let p = &polys[row[z as usize] as usize];
                let k = (lw - lz - 1) / 2;
                if let Some(&m) = p.get(k) {
                    if m != 0 {
                        out.push((z, m));
                    }
                }
            }
        }
        out
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn ball(&self) -> &Ball {
        &self.ball
    }

    pub fn radius(&self) -> usize {
        self.ball.radius()
    }

    /// `P_{x,w}` by ball indices, as `q`-coefficients (empty for zero).
    pub fn poly_by_index(&self, x: u32, w: u32) -> &[i64] {
        if x > w {
            &[]
        } else {
            &self.polys[self.rows[w as usize][x as usize] as usize]
        }
    }

    /// Nonzero `μ(z,w)` with `z < w`, by ball indices.
    pub fn mu_list(&self, w: u32) -> &[(u32, i64)] {
        &self.mu[w as usize]
    }

    pub(crate) fn index_of(&self, w: &GroupElement) -> Result<u32> {
        if w.group_id() != self.group.id() {
            return Err(Error::GroupMismatch);
        }
        self.ball.index_of(w.word()).ok_or(Error::RadiusExceeded {
            needed: w.length(),
            available: self.radius(),
        })
    }

    /// `P_{y,w}` as a Laurent polynomial in `v` supported on even exponents
    /// (a polynomial in `q = v^2`). Zero unless `y ≤ w`.
    pub fn kl_polynomial(&self, y: &GroupElement, w: &GroupElement) -> Result<LaurentInt> {
        let wi = self.index_of(w)?;
        if y.group_id() != self.group.id() {
            return Err(Error::GroupMismatch);
        }
        if y.omega() != w.omega() || y.length() > w.length() {
            return Ok(LaurentInt::zero());
        }
        let yi = self.index_of(y)?;
        Ok(LaurentInt::from_q_coeffs(self.poly_by_index(yi, wi).iter().copied()))
    }

    /// `μ(y,w)`: the coefficient of `q^{(ℓ(w)-ℓ(y)-1)/2}` in `P_{y,w}`, zero
    /// unless `y < w` with odd length difference.
    pub fn mu(&self, y: &GroupElement, w: &GroupElement) -> Result<i64> {
        let p = self.kl_polynomial(y, w)?;
        let (ly, lw) = (y.length(), w.length());
        if ly >= lw || (lw - ly) % 2 == 0 {
            return Ok(0);
        }
        let c = p.coeff(((lw - ly - 1) / 2 * 2) as i32);
        Ok(i64::try_from(c).expect("μ fits in i64"))
    }

    /// Number of distinct polynomials stored.
    pub fn distinct_polynomials(&self) -> usize {
        self.polys.len()
    }

    /// File name used for caching this group's table at `radius`.
    pub fn cache_file_name(desc: &GroupDescriptor, radius: usize) -> String {
        let mut h = Sha256::new();
        h.update(serde_json::to_vec(desc).expect("serializable"));
        let digest = hex::encode(h.finalize());
        format!("kl-{}-r{}.json", &digest[..16], radius)
    }

    pub fn cache_path(dir: &Path, desc: &GroupDescriptor, radius: usize) -> PathBuf {
        dir.join(Self::cache_file_name(desc, radius))
    }

    /// Writes the versioned JSON cache: every nonzero `P_{y,w}`, ordered by
    /// `(w, y)`.
    pub fn save(&self, path: &Path) -> Result<()> {
        let desc = self
            .group
            .descriptor()
            .ok_or_else(|| Error::Cache("only affine A1/A2 tables can be cached".into()))?;
        let mut entries = Vec::new();
        for w in 0..self.ball.len() as u32 {
            for y in 0..=w {
                let p = self.poly_by_index(y, w);
                if !p.is_empty() {
                    entries.push(CacheEntry {
                        y: ElementRepr {
                            word: self.ball.word(y).to_vec(),
                            omega: 0,
                        },
                        w: ElementRepr {
                            word: self.ball.word(w).to_vec(),
                            omega: 0,
                        },
                        p: LaurentInt::from_q_coeffs(p.iter().copied()),
                    });
                }
            }
        }
        let file = CacheFile {
            version: CACHE_VERSION,
            group: desc.clone(),
            radius: self.radius(),
            entries,
        };
        let tmp = path.with_extension("json.tmp");
        let f = File::create(&tmp).map_err(|e| Error::Cache(format!("{}: {e}", tmp.display())))?;
        serde_json::to_writer(BufWriter::new(f), &file).map_err(|e| Error::Cache(e.to_string()))?;
        std::fs::rename(&tmp, path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        Ok(())
    }

    /// Reads a cache file written by [`KLTable::save`] for this group.
    pub fn load(group: &Group, path: &Path) -> Result<Self> {
        let desc = group
            .descriptor()
            .ok_or_else(|| Error::Cache("only affine A1/A2 tables can be cached".into()))?;
        let f = File::open(path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        let file: CacheFile = serde_json::from_reader(BufReader::new(f)).map_err(|e| Error::Cache(e.to_string()))?;
        if file.version != CACHE_VERSION {
            return Err(Error::Cache(format!("unsupported cache version {}", file.version)));
        }
        if file.group != *desc {
            return Err(Error::Cache("cache belongs to a different group".into()));
        }
        let ball = Ball::new(group, file.radius);
        let mut interner = Interner::new();
        let mut rows: Vec<Vec<u32>> = (0..ball.len()).map(|w| vec![0u32; w + 1]).collect();
        let locate = |r: &ElementRepr| -> Result<u32> {
            if r.omega != 0 {
                return Err(Error::Cache("cache entries must have trivial Ω part".into()));
            }
            match ball.index_of(&r.word) {
                Some(i) => Ok(i),
                None => Err(Error::Cache(format!("{:?} is not a normal form in the ball", r.word))),
            }
        };
        for e in &file.entries {
            let (y, w) = (locate(&e.y)?, locate(&e.w)?);
            if y > w {
                return Err(Error::Cache("entry with y after w".into()));
            }
            let mut coeffs = Vec::new();
            for (exp, c) in e.p.terms() {
                if *exp < 0 || exp % 2 != 0 {
                    return Err(Error::Cache("P is not a polynomial in q".into()));
                }
                let k = (*exp / 2) as usize;
                coeffs.resize(coeffs.len().max(k + 1), 0);
                coeffs[k] = i64::try_from(c.clone()).map_err(|_| Error::Cache("coefficient overflow".into()))?;
            }
            rows[w as usize][y as usize] = interner.intern(&coeffs);
        }
        if (0..ball.len()).any(|w| rows[w][w] != 1) {
            return Err(Error::Cache("missing diagonal entries".into()));
        }
        let mu = (0..ball.len() as u32)
            .map(|w| Self::mu_row(&ball, &interner.polys, &rows[w as usize], w))
            .collect();
        Ok(Self {
            group: group.clone(),
            ball,
            polys: interner.polys,
            rows,
            mu,
        })
    }

    /// Loads the cached table from `dir` if present, otherwise builds it and
    /// writes the cache.
    pub fn load_or_build(group: &Group, radius: usize, dir: &Path) -> Result<Self> {
        let Some(desc) = group.descriptor() else {
            return Ok(Self::build(group, radius));
        };
        let path = Self::cache_path(dir, desc, radius);
        if path.exists() {
            return Self::load(group, &path);
        }
        let table = Self::build(group, radius);
        std::fs::create_dir_all(dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
        table.save(&path)?;
        Ok(table)
    }

    /// Whether both tables hold the same polynomials.
    pub fn same_entries(&self, other: &KLTable) -> bool {
        self.ball.len() == other.ball.len()
            && (0..self.ball.len() as u32).all(|w| {
                self.ball.word(w) == other.ball.word(w)
                    && (0..=w).all(|y| self.poly_by_index(y, w) == other.poly_by_index(y, w))
            })
    }
}

impl std::fmt::Debug for KLTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "KLTable({:?}, radius {})", self.group, self.radius())
    }
}
