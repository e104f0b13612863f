use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::scalar::Scalar;
use super::sparse::Vector;
use crate::Error;

/// Linear map between finite-dimensional spaces, stored column by column:
/// `cols[j]` is the image of the j-th domain basis vector.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct LinMap {
    pub dom: usize,
    pub cod: usize,
    cols: Vec<Vector>,
}

impl LinMap {
    pub fn from_columns(dom: usize, cod: usize, cols: Vec<Vector>) -> Result<Self, Error> {
        if cols.len() != dom {
            return Err(Error::BasisMismatch(format!(
                "expected {dom} columns, got {}",
                cols.len()
            )));
        }
        for c in &cols {
            c.check_dim(cod)?;
        }
        Ok(LinMap { dom, cod, cols })
    }

    pub fn from_fn(dom: usize, cod: usize, f: impl FnMut(usize) -> Vector) -> Self {
        let cols: Vec<Vector> = (0..dom).map(f).collect();
        debug_assert!(cols.iter().all(|c| c.check_dim(cod).is_ok()));
        LinMap { dom, cod, cols }
    }

    pub fn zero(dom: usize, cod: usize) -> Self {
        LinMap { dom, cod, cols: vec![Vector::zero(); dom] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, dim, Vector::basis)
    }

    pub fn column(&self, j: usize) -> &Vector {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Vector] {
        &self.cols
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (j, c) in v.iter() {
            out.axpy(c, &self.cols[j]);
        }
        out
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinMap) -> Result<LinMap, Error> {
        if inner.cod != self.dom {
            return Err(Error::BasisMismatch(format!(
                "cannot compose: inner codomain {} vs outer domain {}",
                inner.cod, self.dom
            )));
        }
        Ok(LinMap::from_fn(inner.dom, self.cod, |j| self.apply(&inner.cols[j])))
    }

    pub fn add(&self, o: &LinMap) -> Result<LinMap, Error> {
        self.check_same_shape(o)?;
        Ok(LinMap::from_fn(self.dom, self.cod, |j| self.cols[j].add(&o.cols[j])))
    }

    pub fn sub(&self, o: &LinMap) -> Result<LinMap, Error> {
        self.check_same_shape(o)?;
        Ok(LinMap::from_fn(self.dom, self.cod, |j| self.cols[j].sub(&o.cols[j])))
    }

    pub fn scale(&self, s: &Scalar) -> LinMap {
        LinMap::from_fn(self.dom, self.cod, |j| self.cols[j].scale(s))
    }

    fn check_same_shape(&self, o: &LinMap) -> Result<(), Error> {
        if self.dom != o.dom || self.cod != o.cod {
            return Err(Error::BasisMismatch(format!(
                "shape {}x{} vs {}x{}",
                self.cod, self.dom, o.cod, o.dom
            )));
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vector::is_zero)
    }

    /// Row vectors of the matrix.
    pub fn rows(&self) -> Vec<Vector> {
        let mut rows = vec![Vector::zero(); self.cod];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, a) in c.iter() {
                rows[i].add_term(j, a.clone());
            }
        }
        rows
    }

    pub fn transpose(&self) -> LinMap {
        LinMap { dom: self.cod, cod: self.dom, cols: self.rows() }
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![Scalar::zero(); self.dom]; self.cod];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, a) in c.iter() {
                out[i][j] = a.clone();
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.dom);
        for r in self.rows() {
            e.insert(r);
        }
        e.rank()
    }

    pub fn kernel_basis(&self) -> Vec<Vector> {
        kernel_basis(self.dom, self.rows())
    }

    /// Some `x` with `self(x) = b`, if one exists.
    pub fn solve(&self, b: &Vector) -> Option<Vector> {
        solve(self, b)
    }
}

/// Kronecker product `f ⊗ g` with row-major tensor indexing `i * dim_r + j`.
pub fn tensor_product_map(f: &LinMap, g: &LinMap) -> LinMap {
    LinMap::from_fn(f.dom * g.dom, f.cod * g.cod, |k| {
        let (i, j) = (k / g.dom, k % g.dom);
        f.column(i).tensor(g.column(j), g.cod)
    })
}

/// Mixed-radix indexing of basis tuples of `V_1 ⊗ ... ⊗ V_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorShape {
    pub dims: Vec<usize>,
}

impl TensorShape {
    pub fn new(dims: Vec<usize>) -> Self {
        TensorShape { dims }
    }

    pub fn power(dim: usize, n: usize) -> Self {
        TensorShape { dims: vec![dim; n] }
    }

    pub fn size(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn encode(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.dims.len());
        idx.iter().zip(&self.dims).fold(0, |acc, (&i, &d)| {
            debug_assert!(i < d);
            acc * d + i
        })
    }

    pub fn decode(&self, mut k: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for (slot, &d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = k % d;
            k /= d;
        }
        out
    }
}

/// Reduced row echelon form built incrementally from sparse rows.
/// Invariant: every stored row has coefficient 1 at its pivot and 0 at every
/// other pivot column.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    // pivots are only chosen among columns below this bound
    pivot_limit: usize,
    rows: Vec<Vector>,
    pivot_row: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, pivot_limit: ncols, rows: Vec::new(), pivot_row: BTreeMap::new() }
    }

    /// Echelon whose pivots are restricted to columns `< pivot_limit`; rows with
    /// no such entry after reduction are rejected by [`Echelon::insert`].
    pub fn with_pivot_limit(ncols: usize, pivot_limit: usize) -> Self {
        Echelon { ncols, pivot_limit, rows: Vec::new(), pivot_row: BTreeMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = (usize, &Vector)> + '_ {
        self.pivot_row.iter().map(move |(&c, &r)| (c, &self.rows[r]))
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    /// Reduces `v` modulo the row space.
    pub fn reduce(&self, v: &Vector) -> Vector {
        let mut out = v.clone();
        let hits: Vec<(usize, Scalar)> = v
            .iter()
            .filter(|(c, _)| self.pivot_row.contains_key(c))
            .map(|(c, a)| (c, a.clone()))
            .collect();
        for (c, _) in hits {
            if let Some(a) = out.get(c).cloned() {
                out.axpy(&-a, &self.rows[self.pivot_row[&c]]);
            }
        }
        out
    }

    /// Adds a row; returns true when the rank grew.
    pub fn insert(&mut self, v: Vector) -> bool {
        let r = self.reduce(&v);
        if r.is_zero() {
            return false;
        }
        // pivot on the entry with the smallest bit size
        let Some((pc, pa)) = r
            .iter()
            .filter(|(c, _)| *c < self.pivot_limit)
            .min_by_key(|(c, a)| (a.bit_size(), *c))
            .map(|(c, a)| (c, a.clone()))
        else {
            return false;
        };
        let r = r.scale(&pa.inverse().expect("nonzero pivot"));
        for row in self.rows.iter_mut() {
            if let Some(a) = row.get(pc).cloned() {
                row.axpy(&-a, &r);
            }
        }
        self.pivot_row.insert(pc, self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn kernel(&self) -> Vec<Vector> {
        let mut out = Vec::new();
        for f in 0..self.ncols {
            if self.pivot_row.contains_key(&f) {
                continue;
            }
            let mut v = Vector::basis(f);
            for (&p, &ri) in &self.pivot_row {
                if let Some(a) = self.rows[ri].get(f) {
                    v.add_term(p, -a);
                }
            }
            out.push(v);
        }
        out
    }
}

/// Basis of `{x : row · x = 0 for every row}` in dimension `ncols`.
pub fn kernel_basis(ncols: usize, rows: impl IntoIterator<Item = Vector>) -> Vec<Vector> {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.kernel()
}

/// Some `x` with `m(x) = b`, via elimination on the augmented system.
pub fn solve(m: &LinMap, b: &Vector) -> Option<Vector> {
    // unknowns 0..dom, plus column `dom` for the right-hand side
    let mut rows = m.rows();
    for (i, c) in b.iter() {
        if i >= rows.len() {
            return None;
        }
        rows[i].add_term(m.dom, -c);
    }
    let mut e = Echelon::new(m.dom + 1);
    for r in rows {
        e.insert(r);
    }
    // need a kernel vector with last coordinate 1
    let ker = e.kernel();
    let v = ker.iter().find(|v| v.get(m.dom).is_some())?;
    let t = v.get(m.dom).unwrap().inverse().ok()?;
    let scaled = v.scale(&t);
    Some(Vector::from_terms(scaled.iter().filter(|(i, _)| *i < m.dom).map(|(i, c)| (i, c.clone()))))
}

/// Subspace of an ambient space with a fixed ordered spanning basis and an
/// echelon form for membership and coordinate queries.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    // echelon of the basis vectors augmented with coordinate markers
    coord: Echelon,
    plain: Echelon,
}

impl Subspace {
    pub fn new(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            coord: Echelon::with_pivot_limit(ambient, ambient),
            plain: Echelon::new(ambient),
        }
    }

    /// Span of `vs`, keeping only independent vectors in the given order.
    pub fn span(ambient: usize, vs: impl IntoIterator<Item = Vector>) -> Self {
        let mut s = Subspace::new(ambient);
        for v in vs {
            s.push(v);
        }
        s
    }

    pub fn whole(ambient: usize) -> Self {
        Self::span(ambient, (0..ambient).map(Vector::basis))
    }

    /// Appends `v` to the basis if independent; returns whether it was added.
    pub fn push(&mut self, v: Vector) -> bool {
        if !self.plain.insert(v.clone()) {
            return false;
        }
        self.basis.push(v);
        self.rebuild_coord();
        true
    }

    fn rebuild_coord(&mut self) {
        let k = self.basis.len();
        let mut e = Echelon::with_pivot_limit(self.ambient + k, self.ambient);
        for (i, b) in self.basis.iter().enumerate() {
            let mut row = b.clone();
            row.add_term(self.ambient + i, Scalar::one());
            e.insert(row);
        }
        self.coord = e;
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.plain.contains(v)
    }

    pub fn contains_subspace(&self, o: &Subspace) -> bool {
        o.basis.iter().all(|v| self.contains(v))
    }

    pub fn equals(&self, o: &Subspace) -> bool {
        self.dim() == o.dim() && self.contains_subspace(o)
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &Vector) -> Option<Vector> {
        // rows are (b_i, e_i); reducing (v, 0) leaves (0, -coords) when v is inside
        let r = self.coord.reduce(v);
        if r.iter().any(|(i, _)| i < self.ambient) {
            return None;
        }
        Some(r.neg().map_indices(|c| c - self.ambient))
    }

    /// Echelon form of the subspace, for reduction modulo it.
    pub fn echelon(&self) -> &Echelon {
        &self.plain
    }

    pub fn intersect(&self, o: &Subspace) -> Subspace {
        // x = Σ a_i u_i = Σ b_j w_j; kernel of [U | -W]
        let (k, l) = (self.dim(), o.dim());
        let mut rows = vec![Vector::zero(); self.ambient];
        for (i, u) in self.basis.iter().enumerate() {
            for (c, a) in u.iter() {
                rows[c].add_term(i, a.clone());
            }
        }
        for (j, w) in o.basis.iter().enumerate() {
            for (c, a) in w.iter() {
                rows[c].add_term(k + j, -a);
            }
        }
        let ker = kernel_basis(k + l, rows);
        Subspace::span(
            self.ambient,
            ker.into_iter().map(|z| {
                let mut x = Vector::zero();
                for (i, a) in z.iter().filter(|(i, _)| *i < k) {
                    x.axpy(a, &self.basis[i]);
                }
                x
            }),
        )
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        Subspace::span(self.ambient, self.basis.iter().chain(o.basis.iter()).cloned())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        Vector::from_dense(&xs.iter().map(|&x| Scalar::from_int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let m = LinMap::from_columns(3, 2, vec![v(&[1, 2]), v(&[2, 4]), v(&[3, 6])]).unwrap();
        assert_eq!(m.rank(), 1);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 2);
        for k in &ker {
            assert!(m.apply(k).is_zero());
        }
    }

    #[test]
    fn solve_finds_preimage() {
        let m = LinMap::from_columns(2, 2, vec![v(&[1, 1]), v(&[0, 2])]).unwrap();
        let x = m.solve(&v(&[3, 7])).unwrap();
        assert_eq!(m.apply(&x), v(&[3, 7]));
        let sing = LinMap::from_columns(2, 2, vec![v(&[1, 1]), v(&[1, 1])]).unwrap();
        assert!(sing.solve(&v(&[1, 0])).is_none());
    }

    #[test]
    fn subspace_coordinates() {
        let s = Subspace::span(3, vec![v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let c = s.coordinates(&v(&[2, 5, 3])).unwrap();
        assert_eq!(c, v(&[2, 3]));
        assert!(s.coordinates(&v(&[1, 0, 0])).is_none());
    }

    #[test]
    fn tensor_shape_round_trip() {
        let t = TensorShape::new(vec![2, 3, 4]);
        for k in 0..t.size() {
            assert_eq!(t.encode(&t.decode(k)), k);
        }
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::span(3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(3, vec![v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let i = a.intersect(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&v(&[0, 1, 0])));
    }
}
