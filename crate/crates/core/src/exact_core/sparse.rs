use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::scalar::Scalar;
use super::series::Coeff;
use crate::Error;

/// Sparse vector over basis indices. Never stores a zero coefficient.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "C: Serialize", deserialize = "C: Deserialize<'de>"))]
pub struct SparseVec<C> {
    entries: BTreeMap<usize, C>,
}

/// Rational sparse vector.
pub type Vector = SparseVec<Scalar>;

impl<C> Default for SparseVec<C> {
    fn default() -> Self {
        SparseVec { entries: BTreeMap::new() }
    }
}

impl<C: Coeff> SparseVec<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn singleton(i: usize, c: C) -> Self {
        let mut v = Self::zero();
        v.add_term(i, c);
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, C)>>(terms: I) -> Self {
        let mut v = Self::zero();
        for (i, c) in terms {
            v.add_term(i, c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&C> {
        self.entries.get(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &C)> + '_ {
        self.entries.iter().map(|(&i, c)| (i, c))
    }

    pub fn support_max(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }

    pub fn add_term(&mut self, i: usize, c: C) {
        if c.is_zero() {
            return;
        }
        match self.entries.get_mut(&i) {
            Some(e) => {
                let s = e.add(&c);
                if s.is_zero() {
                    self.entries.remove(&i);
                } else {
                    *e = s;
                }
            }
            None => {
                self.entries.insert(i, c);
            }
        }
    }

    /// `self += s * other`.
    pub fn axpy(&mut self, s: &C, other: &Self) {
        for (i, c) in other.iter() {
            self.add_term(i, s.mul(c));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, c) in other.iter() {
            out.add_term(i, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, c) in other.iter() {
            out.add_term(i, c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        SparseVec { entries: self.entries.iter().map(|(&i, c)| (i, c.neg())).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        SparseVec { entries: self.entries.iter().map(|(&i, c)| (i, c.scale(s))).collect() }
    }

    pub fn mul_coeff(&self, s: &C) -> Self {
        let mut out = Self::zero();
        for (i, c) in self.iter() {
            out.add_term(i, c.mul(s));
        }
        out
    }

    /// Reindexes every basis index through `f`, merging collisions.
    pub fn map_indices(&self, mut f: impl FnMut(usize) -> usize) -> Self {
        Self::from_terms(self.iter().map(|(i, c)| (f(i), c.clone())))
    }

    /// Fails if any index is `>= dim`.
    pub fn check_dim(&self, dim: usize) -> Result<(), Error> {
        match self.support_max() {
            Some(m) if m >= dim => Err(Error::BasisMismatch(format!(
                "vector index {m} out of range for dimension {dim}"
            ))),
            _ => Ok(()),
        }
    }
}

impl Vector {
    pub fn basis(i: usize) -> Self {
        Self::singleton(i, Scalar::one())
    }

    pub fn dot(&self, other: &Self) -> Scalar {
        let mut acc = Scalar::zero();
        for (i, c) in self.iter() {
            if let Some(d) = other.get(i) {
                acc += &(c * d);
            }
        }
        acc
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); dim];
        for (i, c) in self.iter() {
            out[i] = c.clone();
        }
        out
    }

    pub fn from_dense(v: &[Scalar]) -> Self {
        Self::from_terms(v.iter().cloned().enumerate())
    }

    /// Tensor product `self ⊗ other` with the right factor of dimension `dim_r`.
    pub fn tensor(&self, other: &Self, dim_r: usize) -> Self {
        let mut out = Self::zero();
        for (i, a) in self.iter() {
            for (j, b) in other.iter() {
                out.add_term(i * dim_r + j, a * b);
            }
        }
        out
    }
}

impl<C: Coeff> fmt::Debug for SparseVec<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.iter().map(|(i, c)| format!("{c:?}*e{i}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Renders a rational vector with basis labels.
pub fn format_vector(v: &Vector, labels: &[String]) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = v
        .iter()
        .map(|(i, c)| {
            let l = labels.get(i).cloned().unwrap_or_else(|| format!("e{i}"));
            if c.is_one() {
                l
            } else {
                format!("({c})*{l}")
            }
        })
        .collect();
    parts.join(" + ")
}
