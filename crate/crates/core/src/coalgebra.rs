//! Finite-dimensional coalgebra carriers, bilinear products and convolution.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::exact_core::{format_vector, LinMap, Scalar, Subspace, TensorShape, Vector};
use crate::report::{Check, CheckBuilder, Report};
use crate::{Error, Result};

/// One term `c · e_l ⊗ e_r` of a coproduct.
pub type CoTerm = (usize, usize, Scalar);

/// Iterated coproduct terms `c · e_{i_1} ⊗ ... ⊗ e_{i_m}`.
pub type TupleTerms = Arc<Vec<(Vec<usize>, Scalar)>>;

/// Coaugmented coalgebra with an explicit basis.
///
/// `degree` is a filtration degree per basis element, used to bound products
/// on truncated carriers; it is zero everywhere for set-like bases.
pub struct Coalgebra {
    labels: Vec<String>,
    delta: Vec<Vec<CoTerm>>,
    counit: Vec<Scalar>,
    unit: Vector,
    degree: Vec<usize>,
    iter_cache: RwLock<HashMap<(usize, usize), TupleTerms>>,
}

impl Clone for Coalgebra {
    fn clone(&self) -> Self {
        Coalgebra {
            labels: self.labels.clone(),
            delta: self.delta.clone(),
            counit: self.counit.clone(),
            unit: self.unit.clone(),
            degree: self.degree.clone(),
            iter_cache: RwLock::new(HashMap::new()),
        }
    }
}

impl std::fmt::Debug for Coalgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Coalgebra").field("dim", &self.dim()).field("labels", &self.labels).finish()
    }
}

impl Coalgebra {
    pub fn new(
        labels: Vec<String>,
        delta: Vec<Vec<CoTerm>>,
        counit: Vec<Scalar>,
        unit: Vector,
        degree: Vec<usize>,
    ) -> Result<Self> {
        let d = labels.len();
        if delta.len() != d || counit.len() != d || degree.len() != d {
            return Err(Error::BasisMismatch("coalgebra tables disagree on dimension".into()));
        }
        unit.check_dim(d)?;
        for terms in &delta {
            if terms.iter().any(|(l, r, _)| *l >= d || *r >= d) {
                return Err(Error::BasisMismatch("coproduct index out of range".into()));
            }
        }
        Ok(Coalgebra { labels, delta, counit, unit, degree, iter_cache: RwLock::new(HashMap::new()) })
    }

    /// Coalgebra with every basis element set-like: `Δx = x ⊗ x`, `ε(x) = 1`.
    pub fn set_like(labels: Vec<String>, unit: usize) -> Self {
        let d = labels.len();
        Coalgebra::new(
            labels,
            (0..d).map(|i| vec![(i, i, Scalar::one())]).collect(),
            vec![Scalar::one(); d],
            Vector::basis(unit),
            vec![0; d],
        )
        .expect("consistent set-like tables")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> String {
        self.labels[i].clone()
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degree[i]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degree
    }

    pub fn coproduct_terms(&self, i: usize) -> &[CoTerm] {
        &self.delta[i]
    }

    pub fn counit_of_basis(&self, i: usize) -> &Scalar {
        &self.counit[i]
    }

    pub fn counit(&self, v: &Vector) -> Scalar {
        let mut acc = Scalar::zero();
        for (i, c) in v.iter() {
            acc += &(c * &self.counit[i]);
        }
        acc
    }

    /// `Δ(v)` as a vector in `C ⊗ C`, index `l * dim + r`.
    pub fn coproduct(&self, v: &Vector) -> Vector {
        let d = self.dim();
        let mut out = Vector::zero();
        for (i, c) in v.iter() {
            for (l, r, a) in &self.delta[i] {
                out.add_term(l * d + r, c * a);
            }
        }
        out
    }

    /// `Δ^{(m)}(e_i)` as tuples of length `m >= 1`, splitting the last factor
    /// repeatedly.
    pub fn iterated(&self, i: usize, m: usize) -> TupleTerms {
        assert!(m >= 1);
        if let Some(t) = self.iter_cache.read().unwrap().get(&(i, m)) {
            return t.clone();
        }
        let terms: Vec<(Vec<usize>, Scalar)> = if m == 1 {
            vec![(vec![i], Scalar::one())]
        } else {
            let mut acc: HashMap<Vec<usize>, Scalar> = HashMap::new();
            for (t, c) in self.iterated(i, m - 1).iter() {
                let last = *t.last().unwrap();
                for (l, r, a) in &self.delta[last] {
                    let mut t2 = t[..t.len() - 1].to_vec();
                    t2.push(*l);
                    t2.push(*r);
                    let e = acc.entry(t2).or_insert_with(Scalar::zero);
                    *e += &(c * a);
                }
            }
            let mut v: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            v.sort_by(|a, b| a.0.cmp(&b.0));
            v
        };
        let arc = Arc::new(terms);
        self.iter_cache.write().unwrap().insert((i, m), arc.clone());
        arc
    }

    /// Coproduct of a basis tensor `e_{t_1} ⊗ ... ⊗ e_{t_n}` in `C^{⊗n}`, with
    /// the middle factors shuffled so the result lies in `C^{⊗n} ⊗ C^{⊗n}`.
    pub fn tensor_coproduct(&self, t: &[usize]) -> Vec<(Vec<usize>, Vec<usize>, Scalar)> {
        let mut out = vec![(Vec::new(), Vec::new(), Scalar::one())];
        for &x in t {
            let mut next = Vec::with_capacity(out.len() * self.delta[x].len());
            for (l, r, c) in &out {
                for (a, b, s) in &self.delta[x] {
                    let mut l2 = l.clone();
                    l2.push(*a);
                    let mut r2 = r.clone();
                    r2.push(*b);
                    next.push((l2, r2, c * s));
                }
            }
            out = next;
        }
        out
    }

    /// Basis of the primitive subspace `{x : Δx = x⊗1 + 1⊗x}`.
    pub fn primitives(&self) -> Subspace {
        let d = self.dim();
        let cols: Vec<Vector> = (0..d)
            .map(|i| {
                let e = Vector::basis(i);
                let mut v = self.coproduct(&e);
                v = v.sub(&e.tensor(&self.unit, d));
                v.sub(&self.unit.tensor(&e, d))
            })
            .collect();
        let m = LinMap::from_fn(d, d * d, |i| cols[i].clone());
        Subspace::span(d, m.kernel_basis())
    }

    /// `C ⊗ D` with the shuffled coproduct and summed degrees.
    pub fn tensor(&self, o: &Coalgebra) -> Coalgebra {
        let (d1, d2) = (self.dim(), o.dim());
        let mut labels = Vec::with_capacity(d1 * d2);
        let mut delta = Vec::with_capacity(d1 * d2);
        let mut counit = Vec::with_capacity(d1 * d2);
        let mut degree = Vec::with_capacity(d1 * d2);
        for a in 0..d1 {
            for b in 0..d2 {
                labels.push(format!("{}⊗{}", self.labels[a], o.labels[b]));
                let mut terms = Vec::new();
                for (a1, a2, c) in &self.delta[a] {
                    for (b1, b2, s) in &o.delta[b] {
                        terms.push((a1 * d2 + b1, a2 * d2 + b2, c * s));
                    }
                }
                delta.push(terms);
                counit.push(&self.counit[a] * &o.counit[b]);
                degree.push(self.degree[a] + o.degree[b]);
            }
        }
        let unit = self.unit.tensor(&o.unit, d2);
        Coalgebra::new(labels, delta, counit, unit, degree).expect("tensor of valid carriers")
    }

    /// Subcoalgebra spanned by the basis elements `keep`; every coproduct term
    /// of a kept element must stay inside.
    pub fn restrict(&self, keep: &[usize]) -> Result<Coalgebra> {
        let mut pos = vec![usize::MAX; self.dim()];
        for (new, &old) in keep.iter().enumerate() {
            pos[old] = new;
        }
        let mut delta = Vec::with_capacity(keep.len());
        for &i in keep {
            let mut terms = Vec::with_capacity(self.delta[i].len());
            for (l, r, c) in &self.delta[i] {
                if pos[*l] == usize::MAX || pos[*r] == usize::MAX {
                    return Err(Error::BasisMismatch(format!("{} is not inside the kept span", self.labels[i])));
                }
                terms.push((pos[*l], pos[*r], c.clone()));
            }
            delta.push(terms);
        }
        let mut unit = Vector::zero();
        for (i, c) in self.unit.iter() {
            if pos[i] == usize::MAX {
                return Err(Error::BasisMismatch("unit is not inside the kept span".into()));
            }
            unit.add_term(pos[i], c.clone());
        }
        Coalgebra::new(
            keep.iter().map(|&i| self.labels[i].clone()).collect(),
            delta,
            keep.iter().map(|&i| self.counit[i].clone()).collect(),
            unit,
            keep.iter().map(|&i| self.degree[i]).collect(),
        )
    }

    /// Coassociativity, counit laws, coaugmentation and cocommutativity.
    pub fn validate(&self) -> Report {
        let d = self.dim();
        let mut rep = Report::new("coalgebra");
        let mut coassoc = CheckBuilder::new("coassociativity");
        let mut counit_l = CheckBuilder::new("left counit");
        let mut counit_r = CheckBuilder::new("right counit");
        let mut cocomm = CheckBuilder::new("cocommutativity");
        let t3 = TensorShape::power(d, 3);
        for i in 0..d {
            let mut lhs = Vector::zero();
            let mut rhs = Vector::zero();
            for (l, r, c) in &self.delta[i] {
                for (l2, r2, c2) in &self.delta[*l] {
                    lhs.add_term(t3.encode(&[*l2, *r2, *r]), c * c2);
                }
                for (l2, r2, c2) in &self.delta[*r] {
                    rhs.add_term(t3.encode(&[*l, *l2, *r2]), c * c2);
                }
            }
            coassoc.record(|| vec![self.label(i)], &lhs, &rhs);
            let mut left = Vector::zero();
            let mut right = Vector::zero();
            let mut swapped = Vector::zero();
            for (l, r, c) in &self.delta[i] {
                left.add_term(*r, c * &self.counit[*l]);
                right.add_term(*l, c * &self.counit[*r]);
                swapped.add_term(r * d + l, c.clone());
            }
            counit_l.record(|| vec![self.label(i)], &left, &Vector::basis(i));
            counit_r.record(|| vec![self.label(i)], &right, &Vector::basis(i));
            cocomm.record(|| vec![self.label(i)], &swapped, &self.coproduct(&Vector::basis(i)));
        }
        rep.push(coassoc.finish());
        rep.push(counit_l.finish());
        rep.push(counit_r.finish());
        let mut unit = CheckBuilder::new("coaugmentation");
        unit.record(|| vec!["1".into()], &self.coproduct(&self.unit), &self.unit.tensor(&self.unit, d));
        unit.record(|| vec!["1".into()], &self.counit(&self.unit), &Scalar::one());
        rep.push(unit.finish());
        rep.push(cocomm.finish());
        rep
    }

    /// Whether `f: self → target` preserves coproduct, counit and unit.
    pub fn morphism_check(&self, f: &LinMap, target: &Coalgebra, name: &str) -> Check {
        let mut b = CheckBuilder::new(name);
        let dt = target.dim();
        for i in 0..self.dim() {
            let img = f.column(i);
            let lhs = target.coproduct(img);
            let mut rhs = Vector::zero();
            for (l, r, c) in &self.delta[i] {
                rhs.axpy(c, &f.column(*l).tensor(f.column(*r), dt));
            }
            b.record(|| vec![self.label(i)], &lhs, &rhs);
            b.record(|| vec![self.label(i)], &target.counit(img), &self.counit[i]);
        }
        b.record(|| vec!["1".into()], &f.apply(&self.unit), target.unit());
        b.finish()
    }

    pub fn format(&self, v: &Vector) -> String {
        format_vector(v, &self.labels)
    }

    /// All set-like elements `a` (`Δa = a⊗a`, `ε(a) = 1`) with rational
    /// coordinates, found as common eigenvectors of the maps
    /// `L_i = (e^i ⊗ id)∘Δ`, whose eigenvalue at `a` is the coordinate `a_i`.
    pub fn set_likes(&self, max_dim: usize) -> Result<Vec<Vector>> {
        let d = self.dim();
        if d > max_dim {
            return Err(Error::BudgetExceeded(format!("set-like search limited to dimension {max_dim}, carrier has {d}")));
        }
        let ops: Vec<LinMap> = (0..d)
            .map(|i| {
                LinMap::from_fn(d, d, |c| {
                    let mut v = Vector::zero();
                    for (l, r, a) in &self.delta[c] {
                        if *l == i {
                            v.add_term(*r, a.clone());
                        }
                    }
                    v
                })
            })
            .collect();
        let mut eig = Vec::with_capacity(d);
        for op in &ops {
            eig.push(rational_eigenvalues(op)?);
        }
        let mut out = Vec::new();
        let mut stack: Vec<(usize, Vec<Scalar>, Subspace)> = vec![(0, Vec::new(), Subspace::whole(d))];
        while let Some((i, lam, w)) = stack.pop() {
            if w.dim() == 0 {
                continue;
            }
            if i == d {
                let a = Vector::from_dense(&lam);
                if w.contains(&a)
                    && self.coproduct(&a) == a.tensor(&a, d)
                    && self.counit(&a).is_one()
                {
                    out.push(a);
                }
                continue;
            }
            for l in &eig[i] {
                let shifted = ops[i].sub(&LinMap::identity(d).scale(l)).expect("square");
                let ker = Subspace::span(d, shifted.kernel_basis());
                let w2 = w.intersect(&ker);
                let mut lam2 = lam.clone();
                lam2.push(l.clone());
                stack.push((i + 1, lam2, w2));
            }
        }
        out.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
        Ok(out)
    }
}

/// Characteristic polynomial coefficients `c_0..c_n` (monic, `c_n = 1`) via
/// the Faddeev–LeVerrier recursion.
pub fn characteristic_polynomial(m: &LinMap) -> Vec<Scalar> {
    let n = m.dom;
    let a = m.to_dense();
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut mk = vec![vec![Scalar::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![Scalar::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = Scalar::zero();
                for (l, mlj) in mk.iter().enumerate() {
                    if !a[i][l].is_zero() && !mlj[j].is_zero() {
                        acc += &(&a[i][l] * &mlj[j]);
                    }
                }
                if i == j {
                    acc += &coeffs[n - k + 1];
                }
                next[i][j] = acc;
            }
        }
        mk = next;
        let mut tr = Scalar::zero();
        for i in 0..n {
            for l in 0..n {
                if !a[i][l].is_zero() && !mk[l][i].is_zero() {
                    tr += &(&a[i][l] * &mk[l][i]);
                }
            }
        }
        coeffs[n - k] = -(&tr * &Scalar::ratio(1, k as i64));
    }
    coeffs
}

/// Distinct rational eigenvalues of a square matrix.
pub fn rational_eigenvalues(m: &LinMap) -> Result<Vec<Scalar>> {
    rational_roots(&characteristic_polynomial(m))
}

/// Distinct rational roots of `Σ c_i x^i`, by the rational root theorem.
pub fn rational_roots(coeffs: &[Scalar]) -> Result<Vec<Scalar>> {
    let mut lcm = BigInt::from(1);
    for c in coeffs {
        lcm = lcm.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = coeffs.iter().map(|c| (c.numer() * &lcm) / c.denom()).collect();
    while ints.last().is_some_and(|c| c.is_zero()) {
        ints.pop();
    }
    let mut roots = Vec::new();
    let lead = ints.iter().position(|c| !c.is_zero());
    let Some(lead) = lead else { return Ok(roots) };
    if lead > 0 {
        roots.push(Scalar::zero());
    }
    let ints = &ints[lead..];
    if ints.len() <= 1 {
        return Ok(roots);
    }
    let a0 = ints[0].abs();
    let an = ints.last().unwrap().abs();
    let ps = divisors(&a0)?;
    let qs = divisors(&an)?;
    let eval = |x: &Scalar| {
        let mut acc = Scalar::zero();
        for c in ints.iter().rev() {
            acc = &(&acc * x) + &Scalar(num_rational::BigRational::from_integer(c.clone()));
        }
        acc
    };
    let mut seen = std::collections::BTreeSet::new();
    for p in &ps {
        for q in &qs {
            for sign in [1i64, -1] {
                let x = Scalar(num_rational::BigRational::new(p * BigInt::from(sign), q.clone()));
                if seen.insert(x.clone()) && eval(&x).is_zero() {
                    roots.push(x);
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.to_u64().filter(|&v| v <= 1_000_000_000_000).ok_or_else(|| {
        Error::BudgetExceeded("rational root search: coefficient too large to factor".into())
    })?;
    let mut out = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            out.push(BigInt::from(i));
            if i * i != n {
                out.push(BigInt::from(n / i));
            }
        }
        i += 1;
    }
    Ok(out)
}

/// Bilinear map `V_l ⊗ V_r → V_out` given on basis pairs. An entry is `None`
/// when the product lies beyond a degree cap.
#[derive(Clone, Debug, PartialEq)]
pub struct Product {
    pub dl: usize,
    pub dr: usize,
    pub dout: usize,
    table: Vec<Option<Vector>>,
}

impl Product {
    pub fn from_fn(dl: usize, dr: usize, dout: usize, f: impl Fn(usize, usize) -> Option<Vector> + Sync) -> Self {
        use rayon::prelude::*;
        let table: Vec<Option<Vector>> = (0..dl * dr).into_par_iter().map(|k| f(k / dr, k % dr)).collect();
        Product { dl, dr, dout, table }
    }

    pub fn try_from_fn(
        dl: usize,
        dr: usize,
        dout: usize,
        f: impl Fn(usize, usize) -> Result<Option<Vector>> + Sync,
    ) -> Result<Self> {
        use rayon::prelude::*;
        let table: Result<Vec<Option<Vector>>> = (0..dl * dr).into_par_iter().map(|k| f(k / dr, k % dr)).collect();
        Ok(Product { dl, dr, dout, table: table? })
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Vector> {
        self.table[i * self.dr + j].as_ref()
    }

    pub fn is_total(&self) -> bool {
        self.table.iter().all(Option::is_some)
    }

    /// Bilinear extension; `None` if any needed basis product is undefined.
    pub fn apply(&self, a: &Vector, b: &Vector) -> Option<Vector> {
        let mut out = Vector::zero();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                out.axpy(&(x * y), self.get(i, j)?);
            }
        }
        Some(out)
    }

    /// Applies to a vector of `V_l ⊗ V_r` indexed `i * dr + j`.
    pub fn apply_tensor(&self, t: &Vector) -> Option<Vector> {
        let mut out = Vector::zero();
        for (k, c) in t.iter() {
            out.axpy(c, self.table[k].as_ref()?);
        }
        Some(out)
    }

    pub fn to_linmap(&self) -> Option<LinMap> {
        if !self.is_total() {
            return None;
        }
        Some(LinMap::from_fn(self.dl * self.dr, self.dout, |k| self.table[k].clone().unwrap()))
    }

    pub fn entries(&self) -> &[Option<Vector>] {
        &self.table
    }

    /// Replaces one table entry; used to build corrupted controls.
    pub fn set(&mut self, i: usize, j: usize, v: Option<Vector>) {
        self.table[i * self.dr + j] = v;
    }
}

/// Convolution `f * g = m ∘ (f ⊗ g) ∘ Δ` of maps out of `c`, with `None` when a
/// needed product is beyond a cap.
pub fn convolution(c: &Coalgebra, f: &LinMap, g: &LinMap, m: &Product) -> Option<LinMap> {
    let mut cols = Vec::with_capacity(c.dim());
    for i in 0..c.dim() {
        let mut v = Vector::zero();
        for (l, r, s) in c.coproduct_terms(i) {
            v.axpy(s, &m.apply(f.column(*l), g.column(*r))?);
        }
        cols.push(v);
    }
    Some(LinMap::from_fn(c.dim(), m.dout, |i| cols[i].clone()))
}

/// The map `x ↦ ε(x)·unit` into a space of dimension `dim`.
pub fn unit_counit(c: &Coalgebra, unit: &Vector, dim: usize) -> LinMap {
    LinMap::from_fn(c.dim(), dim, |i| unit.scale(c.counit_of_basis(i)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_like_basis_found() {
        let c = Coalgebra::set_like(vec!["e".into(), "a".into(), "b".into()], 0);
        assert!(c.validate().all_passed());
        let s = c.set_likes(6).unwrap();
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn char_poly_of_projection() {
        let p = LinMap::from_fn(2, 2, |j| if j == 0 { Vector::basis(0) } else { Vector::zero() });
        let cp = characteristic_polynomial(&p);
        // x^2 - x
        assert_eq!(cp, vec![Scalar::zero(), Scalar::from_int(-1), Scalar::one()]);
        assert_eq!(rational_eigenvalues(&p).unwrap(), vec![Scalar::zero(), Scalar::one()]);
    }

    #[test]
    fn rational_roots_with_fractions() {
        // (2x - 1)(x + 3) = 2x^2 + 5x - 3
        let r = rational_roots(&[Scalar::from_int(-3), Scalar::from_int(5), Scalar::from_int(2)]).unwrap();
        assert_eq!(r, vec![Scalar::from_int(-3), Scalar::ratio(1, 2)]);
    }
}
