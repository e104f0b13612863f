//! Truncated symmetric coalgebras `S(h)_(k)` in the monomial basis, the
//! coradical filtration, convolution inverses and derivation extensions.

use std::collections::HashMap;

use crate::coalgebra::{convolution, unit_counit, Coalgebra, Product};
use crate::exact_core::{monomials_up_to, Echelon, LinMap, Monomial, Poly, Scalar, Subspace, Vector};
use crate::{Error, Result};

/// `S(h)_(k)` for `dim h = n`: monomials of degree `<= k`, with the shuffle
/// coproduct `Δ(m) = Σ_A Π_i C(m_i, a_i) · A ⊗ (m \ A)`.
#[derive(Clone, Debug)]
pub struct SymCoalgebra {
    n: usize,
    k: usize,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    carrier: Coalgebra,
}

impl SymCoalgebra {
    pub fn new(n: usize, k: usize) -> Self {
        let basis = monomials_up_to(n, k);
        let index: HashMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let labels: Vec<String> = basis.iter().map(monomial_label).collect();
        let delta = basis
            .iter()
            .map(|m| m.splittings().into_iter().map(|(a, b, c)| (index[&a], index[&b], c)).collect())
            .collect();
        let counit = basis.iter().map(|m| if m.degree() == 0 { Scalar::one() } else { Scalar::zero() }).collect();
        let degree = basis.iter().map(Monomial::degree).collect();
        let carrier = Coalgebra::new(labels, delta, counit, Vector::basis(0), degree).expect("consistent tables");
        SymCoalgebra { n, k, basis, index, carrier }
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn carrier(&self) -> &Coalgebra {
        &self.carrier
    }

    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.basis[i]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Degree-one embedding of a vector of `h`.
    pub fn embed(&self, x: &Vector) -> Vector {
        x.map_indices(|i| self.index[&Monomial::var(i)])
    }

    pub fn to_poly(&self, v: &Vector) -> Poly<Scalar> {
        let mut p = Poly::zero();
        for (i, c) in v.iter() {
            p.add_term(self.basis[i].clone(), c.clone());
        }
        p
    }

    pub fn from_poly(&self, p: &Poly<Scalar>) -> Result<Vector> {
        let mut v = Vector::zero();
        for (m, c) in p.iter() {
            let i = self
                .index_of(m)
                .ok_or(Error::DegreeCapExceeded { needed: m.degree(), cap: self.k })?;
            v.add_term(i, c.clone());
        }
        Ok(v)
    }

    /// Symmetric product `a • b`; fails past the truncation degree.
    pub fn sym_product(&self, a: &Vector, b: &Vector) -> Result<Vector> {
        self.from_poly(&self.to_poly(a).mul(&self.to_poly(b)))
    }

    /// Product of degree-one elements `x_1 • ... • x_r`.
    pub fn sym_product_of(&self, xs: &[Vector]) -> Result<Vector> {
        let mut acc = Vector::basis(0);
        for x in xs {
            acc = self.sym_product(&acc, &self.embed(x))?;
        }
        Ok(acc)
    }

    /// The symmetric product as a partial [`Product`] (undefined past degree `k`).
    pub fn sym_product_table(&self) -> Product {
        let d = self.dim();
        Product::from_fn(d, d, d, |i, j| self.index_of(&self.basis[i].mul(&self.basis[j])).map(Vector::basis))
    }

    /// Extends a linear endomorphism `f` of `h` to the derivation
    /// `x_1•...•x_r ↦ Σ_s x_1•...•f(x_s)•...•x_r` of `S(h)_(k)`.
    pub fn derivation(&self, f: &LinMap) -> LinMap {
        LinMap::from_fn(self.dim(), self.dim(), |i| self.derivation_on(f, &self.basis[i]))
    }

    fn derivation_on(&self, f: &LinMap, m: &Monomial) -> Vector {
        let mut out = Vector::zero();
        for (j, mult) in m.exponents() {
            let rest = m.remove_one(j).unwrap();
            let coef = Scalar::from_int(mult as i64);
            for (t, c) in f.column(j).iter() {
                let idx = self.index[&rest.mul(&Monomial::var(t))];
                out.add_term(idx, &coef * c);
            }
        }
        out
    }
}

fn monomial_label(m: &Monomial) -> String {
    if m.degree() == 0 {
        return "1".into();
    }
    m.exponents()
        .into_iter()
        .map(|(i, e)| if e == 1 { format!("e{}", i + 1) } else { format!("e{}^{e}", i + 1) })
        .collect::<Vec<_>>()
        .join("•")
}

/// Coradical filtration `F_0 = K·1`,
/// `F_{j+1} = {x : Δx − x⊗1 − 1⊗x ∈ F_j ⊗ F_j}`, up to `F_max`.
pub fn coradical_filtration(c: &Coalgebra, max: usize) -> Vec<Subspace> {
    let d = c.dim();
    let unit = c.unit().clone();
    let mut out = vec![Subspace::span(d, [unit.clone()])];
    for _ in 0..max {
        let prev = out.last().unwrap();
        let mut ech = Echelon::new(d * d);
        for a in prev.basis() {
            for b in prev.basis() {
                ech.insert(a.tensor(b, d));
            }
        }
        let m = LinMap::from_fn(d, d * d, |i| {
            let e = Vector::basis(i);
            let red = c.coproduct(&e).sub(&e.tensor(&unit, d)).sub(&unit.tensor(&e, d));
            ech.reduce(&red)
        });
        out.push(Subspace::span(d, m.kernel_basis()));
    }
    out
}

/// Least `j` with `v ∈ F_j`, searching up to `max`.
pub fn filtration_order(c: &Coalgebra, v: &Vector, max: usize) -> Option<usize> {
    coradical_filtration(c, max).iter().position(|f| f.contains(v))
}

/// Convolution inverse `Σ_r (1ε − ψ)^{*r}` of `ψ: C → A` with `ψ(1) = 1`.
/// Terminates when `1ε − ψ` is convolution-nilpotent; gives up after
/// `max_terms` powers.
pub fn takeuchi_inverse(c: &Coalgebra, psi: &LinMap, mult: &Product, unit: &Vector, max_terms: usize) -> Result<LinMap> {
    let ue = unit_counit(c, unit, mult.dout);
    let base = ue.sub(psi)?;
    let mut sum = ue.clone();
    let mut power = ue;
    for _ in 0..max_terms {
        power = convolution(c, &power, &base, mult)
            .ok_or_else(|| Error::BudgetExceeded("convolution power leaves the truncation".into()))?;
        if power.is_zero() {
            return Ok(sum);
        }
        sum = sum.add(&power)?;
    }
    Err(Error::BudgetExceeded(format!("convolution series did not terminate within {max_terms} terms")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_are_binomial() {
        assert_eq!(SymCoalgebra::new(2, 2).dim(), 6);
        assert_eq!(SymCoalgebra::new(3, 3).dim(), 20);
    }

    #[test]
    fn coproduct_of_square() {
        let s = SymCoalgebra::new(1, 2);
        // Δ(e1•e1) = e1•e1⊗1 + 2 e1⊗e1 + 1⊗e1•e1
        let sq = s.index_of(&Monomial::from_indices(vec![0, 0])).unwrap();
        let e1 = s.index_of(&Monomial::var(0)).unwrap();
        let d = s.dim();
        let want = Vector::from_terms([
            (sq * d, Scalar::one()),
            (e1 * d + e1, Scalar::from_int(2)),
            (sq, Scalar::one()),
        ]);
        assert_eq!(s.carrier().coproduct(&Vector::basis(sq)), want);
    }

    #[test]
    fn primitives_are_degree_one() {
        let s = SymCoalgebra::new(2, 3);
        let p = s.carrier().primitives();
        assert_eq!(p.dim(), 2);
        assert!(p.contains(&s.embed(&Vector::basis(1))));
    }

    #[test]
    fn filtration_matches_degree() {
        let s = SymCoalgebra::new(2, 2);
        let f = coradical_filtration(s.carrier(), 2);
        assert_eq!(f.iter().map(Subspace::dim).collect::<Vec<_>>(), vec![1, 3, 6]);
    }
}
