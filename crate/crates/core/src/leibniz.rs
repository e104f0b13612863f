//! Left Leibniz algebras given by structure constants, their squares ideal,
//! left center and Lie quotients.

use serde::{Deserialize, Serialize};

use crate::exact_core::{format_vector, LinMap, Subspace, Vector};
use crate::report::{Check, CheckBuilder};
use crate::{Error, Result};

/// Finite-dimensional algebra with bracket `[e_j, e_k] = table[j * dim + k]`.
/// Values of this type built through [`LeibnizAlgebra::new`] satisfy the left
/// Leibniz identity `[x,[y,z]] = [[x,y],z] + [y,[x,z]]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeibnizAlgebra {
    dim: usize,
    table: Vec<Vector>,
    labels: Vec<String>,
}

impl LeibnizAlgebra {
    /// Validates the identity on all basis triples.
    pub fn new(dim: usize, brackets: &[((usize, usize), Vector)]) -> Result<Self> {
        let alg = Self::unchecked(dim, brackets)?;
        let c = alg.leibniz_check();
        match c.violation {
            None => Ok(alg),
            Some(v) => Err(Error::LeibnizViolation(Box::new(v))),
        }
    }

    /// Builds the bracket table without checking the identity.
    pub fn unchecked(dim: usize, brackets: &[((usize, usize), Vector)]) -> Result<Self> {
        let mut table = vec![Vector::zero(); dim * dim];
        for ((j, k), v) in brackets {
            if *j >= dim || *k >= dim {
                return Err(Error::Schema(format!("bracket index ({j},{k}) out of range for dim {dim}")));
            }
            v.check_dim(dim)?;
            table[j * dim + k] = table[j * dim + k].add(v);
        }
        let labels = (1..=dim).map(|i| format!("e{i}")).collect();
        Ok(LeibnizAlgebra { dim, table, labels })
    }

    pub fn abelian(dim: usize) -> Self {
        Self::unchecked(dim, &[]).expect("empty table")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn bracket_basis(&self, j: usize, k: usize) -> &Vector {
        &self.table[j * self.dim + k]
    }

    pub fn bracket(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (j, a) in x.iter() {
            for (k, b) in y.iter() {
                out.axpy(&(a * b), self.bracket_basis(j, k));
            }
        }
        out
    }

    /// Left multiplication `ad_x = [x, -]`.
    pub fn ad(&self, x: &Vector) -> LinMap {
        LinMap::from_fn(self.dim, self.dim, |k| self.bracket(x, &Vector::basis(k)))
    }

    pub fn ad_basis(&self, i: usize) -> LinMap {
        LinMap::from_fn(self.dim, self.dim, |k| self.bracket_basis(i, k).clone())
    }

    pub fn format(&self, v: &Vector) -> String {
        format_vector(v, &self.labels)
    }

    /// Left Leibniz identity on all basis triples.
    pub fn leibniz_check(&self) -> Check {
        let n = self.dim;
        let mut b = CheckBuilder::new("left Leibniz identity");
        for x in 0..n {
            let ex = Vector::basis(x);
            for y in 0..n {
                let ey = Vector::basis(y);
                let xy = self.bracket_basis(x, y);
                for z in 0..n {
                    let ez = Vector::basis(z);
                    let lhs = self.bracket(&ex, self.bracket_basis(y, z));
                    let rhs = self.bracket(xy, &ez).add(&self.bracket(&ey, self.bracket_basis(x, z)));
                    b.record(
                        || vec![self.labels[x].clone(), self.labels[y].clone(), self.labels[z].clone()],
                        &lhs,
                        &rhs,
                    );
                }
            }
        }
        b.finish()
    }

    pub fn is_lie(&self) -> bool {
        let n = self.dim;
        (0..n).all(|j| (0..n).all(|k| self.bracket_basis(j, k).add(self.bracket_basis(k, j)).is_zero()))
    }

    /// `Q(h) = span{[x,y] + [y,x]}`, spanned by the symmetrised basis brackets.
    pub fn squares_ideal(&self) -> Subspace {
        let n = self.dim;
        let mut gens = Vec::new();
        for j in 0..n {
            for k in j..n {
                gens.push(self.bracket_basis(j, k).add(self.bracket_basis(k, j)));
            }
        }
        Subspace::span(n, gens)
    }

    /// `{x : [x, y] = 0 for all y}`.
    pub fn left_center(&self) -> Subspace {
        let n = self.dim;
        let m = LinMap::from_fn(n, n * n, |x| {
            let mut v = Vector::zero();
            for y in 0..n {
                for (i, c) in self.bracket_basis(x, y).iter() {
                    v.add_term(y * n + i, c.clone());
                }
            }
            v
        });
        Subspace::span(n, m.kernel_basis())
    }

    /// Derived subspace `[h, h]`.
    pub fn derived(&self) -> Subspace {
        Subspace::span(self.dim, self.table.iter().cloned())
    }

    /// Quotient Lie algebra `h / z` for `Q(h) ⊆ z ⊆ z(h)`.
    pub fn quotient_lie(&self, z: &Subspace) -> Result<QuotientLie> {
        if z.ambient() != self.dim {
            return Err(Error::BasisMismatch("subspace lives in a different space".into()));
        }
        if !z.contains_subspace(&self.squares_ideal()) {
            return Err(Error::IdealSandwichViolation("subspace does not contain the squares ideal".into()));
        }
        if !self.left_center().contains_subspace(z) {
            return Err(Error::IdealSandwichViolation("subspace is not inside the left center".into()));
        }
        QuotientLie::build(self, z)
    }

    /// Whether `f` intertwines the brackets of `self` and `target`.
    pub fn morphism_check(&self, f: &LinMap, target: &LeibnizAlgebra) -> Check {
        let mut b = CheckBuilder::new("Leibniz morphism");
        for j in 0..self.dim {
            for k in 0..self.dim {
                let lhs = f.apply(self.bracket_basis(j, k));
                let rhs = target.bracket(f.column(j), f.column(k));
                b.record(|| vec![self.labels[j].clone(), self.labels[k].clone()], &lhs, &rhs);
            }
        }
        b.finish()
    }
}

/// Lie algebra `g = h / z` with basis the images of the basis vectors of `h`
/// that are not pivots of `z`.
#[derive(Clone, Debug)]
pub struct QuotientLie {
    h_dim: usize,
    z: Subspace,
    complement: Vec<usize>,
    proj: LinMap,
    table: Vec<Vector>,
}

impl QuotientLie {
    fn build(h: &LeibnizAlgebra, z: &Subspace) -> Result<Self> {
        let n = h.dim();
        let ech = z.echelon();
        let complement: Vec<usize> = (0..n).filter(|&c| !ech.is_pivot(c)).collect();
        let pos: std::collections::HashMap<usize, usize> =
            complement.iter().enumerate().map(|(a, &c)| (c, a)).collect();
        let proj = LinMap::from_fn(n, complement.len(), |i| {
            ech.reduce(&Vector::basis(i)).map_indices(|c| pos[&c])
        });
        let m = complement.len();
        let mut table = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                table.push(proj.apply(h.bracket_basis(complement[a], complement[b])));
            }
        }
        Ok(QuotientLie { h_dim: n, z: z.clone(), complement, proj, table })
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn h_dim(&self) -> usize {
        self.h_dim
    }

    pub fn kernel(&self) -> &Subspace {
        &self.z
    }

    /// The canonical projection `p: h → g`.
    pub fn projection(&self) -> &LinMap {
        &self.proj
    }

    /// Basis element of `h` lifting the `a`-th basis element of `g`.
    pub fn lift_index(&self, a: usize) -> usize {
        self.complement[a]
    }

    pub fn bracket_basis(&self, a: usize, b: usize) -> &Vector {
        &self.table[a * self.dim() + b]
    }

    pub fn bracket(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (a, s) in x.iter() {
            for (b, t) in y.iter() {
                out.axpy(&(s * t), self.bracket_basis(a, b));
            }
        }
        out
    }

    /// Antisymmetry and Jacobi on basis triples.
    pub fn lie_check(&self) -> Check {
        let m = self.dim();
        let mut b = CheckBuilder::new("Lie axioms on quotient");
        for x in 0..m {
            b.record(|| vec![format!("g{x}")], self.bracket_basis(x, x), &Vector::zero());
            for y in 0..m {
                b.record(
                    || vec![format!("g{x}"), format!("g{y}")],
                    self.bracket_basis(x, y),
                    &self.bracket_basis(y, x).neg(),
                );
                for z in 0..m {
                    let ez = Vector::basis(z);
                    let ex = Vector::basis(x);
                    let ey = Vector::basis(y);
                    let j = self
                        .bracket(&ex, self.bracket_basis(y, z))
                        .add(&self.bracket(&ey, self.bracket_basis(z, x)))
                        .add(&self.bracket(&ez, self.bracket_basis(x, y)));
                    b.record(|| vec![format!("g{x}"), format!("g{y}"), format!("g{z}")], &j, &Vector::zero());
                }
            }
        }
        b.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> Vector {
        Vector::basis(i)
    }

    #[test]
    fn square_bracket_algebra() {
        // [e1,e1] = e2
        let h = LeibnizAlgebra::new(2, &[((0, 0), e(1))]).unwrap();
        assert!(!h.is_lie());
        let q = h.squares_ideal();
        assert_eq!(q.dim(), 1);
        assert!(q.contains(&e(1)));
        let zc = h.left_center();
        assert_eq!(zc.dim(), 1);
        assert!(zc.contains(&e(1)));
        let g = h.quotient_lie(&q).unwrap();
        assert_eq!(g.dim(), 1);
        assert!(g.lie_check().passed);
    }

    #[test]
    fn sandwich_violation_detected() {
        let h = LeibnizAlgebra::new(2, &[((0, 0), e(1))]).unwrap();
        let zero = Subspace::new(2);
        assert!(matches!(h.quotient_lie(&zero), Err(Error::IdealSandwichViolation(_))));
        let all = Subspace::whole(2);
        assert!(matches!(h.quotient_lie(&all), Err(Error::IdealSandwichViolation(_))));
    }

    #[test]
    fn non_leibniz_rejected_with_witness() {
        // [e1,e2] = [e2,e1] = e1
        let r = LeibnizAlgebra::new(2, &[((0, 1), e(0)), ((1, 0), e(0))]);
        match r {
            Err(Error::LeibnizViolation(v)) => assert_eq!(v.witness.len(), 3),
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn lie_algebra_has_zero_squares() {
        // [e1,e2] = e2 = -[e2,e1]
        let h = LeibnizAlgebra::new(2, &[((0, 1), e(1)), ((1, 0), e(1).neg())]).unwrap();
        assert!(h.is_lie());
        assert_eq!(h.squares_ideal().dim(), 0);
        assert_eq!(h.left_center().dim(), 0);
    }
}
