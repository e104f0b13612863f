use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::scalar::Scalar;
use super::series::Coeff;

/// Commutative monomial as a sorted multiset of variable indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<usize>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        Monomial(vec![i])
    }

    pub fn from_indices(mut v: Vec<usize>) -> Self {
        v.sort_unstable();
        Monomial(v)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut v = Vec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < o.0.len() {
            if self.0[i] <= o.0[j] {
                v.push(self.0[i]);
                i += 1;
            } else {
                v.push(o.0[j]);
                j += 1;
            }
        }
        v.extend_from_slice(&self.0[i..]);
        v.extend_from_slice(&o.0[j..]);
        Monomial(v)
    }

    /// `(index, multiplicity)` pairs in increasing index order.
    pub fn exponents(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &i in &self.0 {
            match out.last_mut() {
                Some((j, m)) if *j == i => *m += 1,
                _ => out.push((i, 1)),
            }
        }
        out
    }

    pub fn multiplicity(&self, i: usize) -> usize {
        self.0.iter().filter(|&&j| j == i).count()
    }

    /// Removes one occurrence of `i`, if present.
    pub fn remove_one(&self, i: usize) -> Option<Monomial> {
        let pos = self.0.iter().position(|&j| j == i)?;
        let mut v = self.0.clone();
        v.remove(pos);
        Some(Monomial(v))
    }

    /// All splittings `self = A · B` as sub-multisets, with the multiplicity
    /// `Π_i C(m_i, a_i)` counting position subsets that realise the split.
    pub fn splittings(&self) -> Vec<(Monomial, Monomial, Scalar)> {
        let exps = self.exponents();
        let mut out = vec![(Vec::new(), Vec::new(), Scalar::one())];
        for (i, m) in exps {
            let mut next = Vec::with_capacity(out.len() * (m + 1));
            for (a, b, c) in &out {
                for k in 0..=m {
                    let mut a2: Vec<usize> = a.clone();
                    a2.extend(std::iter::repeat_n(i, k));
                    let mut b2: Vec<usize> = b.clone();
                    b2.extend(std::iter::repeat_n(i, m - k));
                    next.push((a2, b2, c * &Scalar::binomial(m, k)));
                }
            }
            out = next;
        }
        out.into_iter().map(|(a, b, c)| (Monomial(a), Monomial(b), c)).collect()
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exponents()
            .into_iter()
            .map(|(i, m)| if m == 1 { format!("x{}", i + 1) } else { format!("x{}^{m}", i + 1) })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// All monomials in `n` variables of degree `<= k`, ordered by degree then
/// lexicographically.
pub fn monomials_up_to(n: usize, k: usize) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    let mut layer = vec![Vec::<usize>::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for m in &layer {
            let start = m.last().copied().unwrap_or(0);
            for i in start..n {
                let mut m2 = m.clone();
                m2.push(i);
                next.push(m2);
            }
        }
        out.extend(next.iter().cloned().map(Monomial));
        layer = next;
    }
    out
}

/// Sparse commutative polynomial keyed by monomials.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "C: Serialize", deserialize = "C: Deserialize<'de>"))]
pub struct Poly<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C> Default for Poly<C> {
    fn default() -> Self {
        Poly { terms: BTreeMap::new() }
    }
}

impl<C: Coeff> Poly<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &C)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&C> {
        self.terms.get(m)
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                let s = e.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *e = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in o.iter() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in o.iter() {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = Self::zero();
        for (m, c) in self.iter() {
            out.add_term(m.clone(), c.scale(s));
        }
        out
    }

    pub fn mul_coeff(&self, s: &C) -> Self {
        let mut out = Self::zero();
        for (m, c) in self.iter() {
            out.add_term(m.clone(), c.mul(s));
        }
        out
    }

    /// Product, dropping monomials of degree above `max_degree` when given.
    pub fn mul_truncated(&self, o: &Self, max_degree: Option<usize>) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in self.iter() {
            for (m2, c2) in o.iter() {
                if let Some(d) = max_degree {
                    if m1.degree() + m2.degree() > d {
                        continue;
                    }
                }
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.mul_truncated(o, None)
    }

    /// Keeps only monomials of degree `<= d`.
    pub fn truncate(&self, d: usize) -> Self {
        Poly {
            terms: self.terms.iter().filter(|(m, _)| m.degree() <= d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Homogeneous component of degree `d`.
    pub fn homogeneous(&self, d: usize) -> Self {
        Poly {
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in self.iter() {
            let k = m.multiplicity(i);
            if k > 0 {
                out.add_term(m.remove_one(i).unwrap(), c.scale(&Scalar::from_int(k as i64)));
            }
        }
        out
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> Option<&C> {
        self.terms.get(&Monomial::one())
    }

    /// Linear extension of a map on monomials.
    pub fn map_monomials(&self, mut f: impl FnMut(&Monomial) -> Poly<C>) -> Self {
        let mut out = Self::zero();
        for (m, c) in self.iter() {
            for (m2, c2) in f(m).iter() {
                out.add_term(m2.clone(), c.mul(c2));
            }
        }
        out
    }
}

impl Poly<Scalar> {
    /// Linear polynomial `Σ v_i x_i`.
    pub fn from_vector(v: &super::sparse::Vector) -> Self {
        let mut p = Poly::zero();
        for (i, c) in v.iter() {
            p.add_term(Monomial::var(i), c.clone());
        }
        p
    }
}

impl<C: Coeff> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.iter().map(|(m, c)| format!("({c:?}){m:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        // C(n+k, k)
        assert_eq!(monomials_up_to(2, 2).len(), 6);
        assert_eq!(monomials_up_to(3, 3).len(), 20);
        assert_eq!(monomials_up_to(1, 4).len(), 5);
    }

    #[test]
    fn splittings_of_square() {
        let m = Monomial::from_indices(vec![0, 0]);
        let s = m.splittings();
        assert_eq!(s.len(), 3);
        let mid = s.iter().find(|(a, _, _)| a.degree() == 1).unwrap();
        assert_eq!(mid.2, Scalar::from_int(2));
    }

    #[test]
    fn derivative_of_cube() {
        let p: Poly<Scalar> = Poly::term(Monomial::from_indices(vec![1, 1, 1]), Scalar::one());
        let d = p.derivative(1);
        assert_eq!(d.coeff(&Monomial::from_indices(vec![1, 1])), Some(&Scalar::from_int(3)));
        assert!(p.derivative(0).is_zero());
    }
}
