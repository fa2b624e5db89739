use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AffineType {
    #[serde(rename = "A1~")]
    A1,
    #[serde(rename = "A2~")]
    A2,
}

impl AffineType {
    pub fn generator_count(self) -> usize {
        match self {
            AffineType::A1 => 2,
            AffineType::A2 => 3,
        }
    }

    /// Length of the longest element of the finite Weyl group.
    pub fn finite_longest_length(self) -> usize {
        match self {
            AffineType::A1 => 1,
            AffineType::A2 => 3,
        }
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineType::A1 => write!(f, "A1~"),
            AffineType::A2 => write!(f, "A2~"),
        }
    }
}

impl FromStr for AffineType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A1~" => Ok(AffineType::A1),
            "A2~" => Ok(AffineType::A2),
            other => Err(Error::UnsupportedType(other.to_string())),
        }
    }
}

/// Coxeter matrix; `0` encodes `m = ∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoxeterMatrix(pub Vec<Vec<u32>>);

impl CoxeterMatrix {
    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.0[i][j]
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.rank();
        for i in 0..n {
            if self.0[i].len() != n {
                return Err(Error::InvalidElement("Coxeter matrix is not square".into()));
            }
            for j in 0..n {
                let m = self.0[i][j];
                if (i == j) != (m == 1) || m != self.0[j][i] {
                    return Err(Error::InvalidElement(format!("bad Coxeter entry m({i},{j}) = {m}")));
                }
            }
        }
        Ok(())
    }

    /// Whether `perm` (a permutation of the generators) preserves the matrix.
    pub fn preserved_by(&self, perm: &[u8]) -> bool {
        let n = self.rank();
        perm.len() == n && (0..n).all(|i| (0..n).all(|j| self.0[perm[i] as usize][perm[j] as usize] == self.0[i][j]))
    }
}

/// Data describing an (extended) affine Weyl group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub affine_type: AffineType,
    pub extended: bool,
    pub generator_count: usize,
    /// One permutation of the generators per element of Ω; entry 0 is the identity.
    pub omega_action: Vec<Vec<u8>>,
}

impl GroupDescriptor {
    pub fn new(affine_type: AffineType, extended: bool) -> Self {
        let n = affine_type.generator_count();
        let omega_action = if extended {
            // Ω ≅ Z/n rotating the affine Dynkin diagram (the adjoint case).
            (0..n).map(|k| (0..n).map(|i| ((i + k) % n) as u8).collect()).collect()
        } else {
            vec![(0..n as u8).collect()]
        };
        Self {
            affine_type,
            extended,
            generator_count: n,
            omega_action,
        }
    }

    /// Parses `"A1~"`/`"A2~"`.
    pub fn parse(label: &str, extended: bool) -> Result<Self> {
        Ok(Self::new(label.parse()?, extended))
    }

    pub fn coxeter_matrix(&self) -> CoxeterMatrix {
        let n = self.generator_count;
        let m = match self.affine_type {
            AffineType::A1 => vec![vec![1, 0], vec![0, 1]],
            AffineType::A2 => (0..n)
                .map(|i| (0..n).map(|j| if i == j { 1 } else { 3 }).collect())
                .collect(),
        };
        CoxeterMatrix(m)
    }

    /// Checks the invariants: generator count matches the type, every Ω
    /// element is a diagram automorphism, Ω starts with the identity.
    pub fn validate(&self) -> Result<()> {
        if self.generator_count != self.affine_type.generator_count() {
            return Err(Error::InvalidElement(format!(
                "{} has {} generators, not {}",
                self.affine_type,
                self.affine_type.generator_count(),
                self.generator_count
            )));
        }
        let cox = self.coxeter_matrix();
        let identity: Vec<u8> = (0..self.generator_count as u8).collect();
        if self.omega_action.first() != Some(&identity) {
            return Err(Error::InvalidElement("first Ω element must act trivially".into()));
        }
        if !self.extended && self.omega_action.len() != 1 {
            return Err(Error::InvalidElement("non-extended group with nontrivial Ω".into()));
        }
        for perm in &self.omega_action {
            let mut seen = vec![false; self.generator_count];
            for &p in perm {
                if p as usize >= self.generator_count || std::mem::replace(&mut seen[p as usize], true) {
                    return Err(Error::InvalidElement(format!("{perm:?} is not a permutation")));
                }
            }
            if !cox.preserved_by(perm) {
                return Err(Error::InvalidElement(format!("{perm:?} is not a diagram automorphism")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_labels() {
        assert_eq!("A1~".parse::<AffineType>().unwrap(), AffineType::A1);
        assert_eq!("A2~".parse::<AffineType>().unwrap(), AffineType::A2);
        assert_eq!("B2~".parse::<AffineType>(), Err(Error::UnsupportedType("B2~".into())));
    }

    #[test]
    fn descriptors_validate() {
        for t in [AffineType::A1, AffineType::A2] {
            for ext in [false, true] {
                GroupDescriptor::new(t, ext).validate().unwrap();
            }
        }
        let mut bad = GroupDescriptor::new(AffineType::A2, true);
        bad.omega_action[1] = vec![0, 0, 1];
        assert!(bad.validate().is_err());
    }

    #[test]
    fn a2_matrix_is_triangle() {
        let m = GroupDescriptor::new(AffineType::A2, false).coxeter_matrix();
        m.validate().unwrap();
        assert_eq!(m.get(0, 1), 3);
        assert_eq!(m.get(1, 2), 3);
        assert_eq!(m.get(0, 2), 3);
    }
}
