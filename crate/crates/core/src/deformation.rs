//! The deformation complex of a finite-dimensional rack bialgebra: iterated
//! products `μⁿ`, coderivation cochains `Cⁿ(R;R)`, the face maps, the
//! differential `d_R`, its verification and `H²`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coalgebra::{Coalgebra, Product};
use crate::exact_core::{kernel_basis, LinMap, Scalar, Subspace, TensorShape, Vector};
use crate::leibniz::LeibnizAlgebra;
use crate::rack_bialg::{ur, RackBialgebra};
use crate::report::{Check, CheckBuilder, Report, Violation};
use crate::{Error, Result};

/// Size limits for cochain computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Largest admissible `dim R`.
    pub max_dim: usize,
    /// Highest cochain degree whose differential is verified.
    pub max_n: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_dim: 4, max_n: 2 }
    }
}

/// A degree-`n` cochain `R^{⊗n} → R`; column `t` is the image of the basis
/// tuple with mixed-radix index `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    pub degree: usize,
    pub map: LinMap,
}

impl Cochain {
    pub fn new(degree: usize, map: LinMap) -> Self {
        Cochain { degree, map }
    }

    pub fn zero(dim: usize, degree: usize) -> Self {
        Cochain { degree, map: LinMap::zero(dim.pow(degree as u32), dim) }
    }

    /// Coordinates in `Hom(R^{⊗n}, R)`, entry `t*d + k` is `f(e_t)_k`.
    pub fn flatten(&self) -> Vector {
        let d = self.map.cod;
        let mut out = Vector::zero();
        for (t, col) in self.map.columns().iter().enumerate() {
            for (k, c) in col.iter() {
                out.add_term(t * d + k, c.clone());
            }
        }
        out
    }

    pub fn unflatten(v: &Vector, dim: usize, degree: usize) -> Self {
        let size = dim.pow(degree as u32);
        let mut cols = vec![Vector::zero(); size];
        for (i, c) in v.iter() {
            cols[i / dim].add_term(i % dim, c.clone());
        }
        Cochain { degree, map: LinMap::from_columns(size, dim, cols).expect("shape") }
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_zero()
    }
}

/// `v_1 ⊗ ... ⊗ v_m` in `R^{⊗m}` (first slot most significant).
fn tensor_slots(slots: &[Vector], d: usize) -> Vector {
    let mut acc = Vector::basis(0);
    for s in slots {
        acc = acc.tensor(s, d);
    }
    acc
}

fn tuple_label(c: &Coalgebra, t: &[usize]) -> Vec<String> {
    t.iter().map(|&i| c.label(i)).collect()
}

/// `μⁿ(r_1,..,r_n) = r_1▷(r_2▷(⋯▷r_n))`, with `μ¹ = id`.
pub fn mu_n(rb: &RackBialgebra, n: usize) -> LinMap {
    assert!(n >= 1);
    let d = rb.dim();
    let mut cur = LinMap::identity(d);
    for m in 2..=n {
        let inner = cur;
        let size = d.pow(m as u32);
        let tail = d.pow(m as u32 - 1);
        cur = LinMap::from_fn(size, d, |t| rb.op(&Vector::basis(t / tail), inner.column(t % tail)));
    }
    cur
}

/// Defect of `Δ∘f = (f⊗φ + φ⊗f)∘Δ` on `R^{⊗n}`, or `None` if it vanishes.
pub fn coderivation_defect(c: &Coalgebra, n: usize, f: &LinMap, phi: &LinMap) -> Option<Violation> {
    let d = c.dim();
    let shape = TensorShape::power(d, n);
    for t in 0..shape.size() {
        let tup = shape.decode(t);
        let lhs = c.coproduct(f.column(t));
        let mut rhs = Vector::zero();
        for (l, r, s) in c.tensor_coproduct(&tup) {
            let (li, ri) = (shape.encode(&l), shape.encode(&r));
            rhs.axpy(&s, &f.column(li).tensor(phi.column(ri), d));
            rhs.axpy(&s, &phi.column(li).tensor(f.column(ri), d));
        }
        if lhs != rhs {
            return Some(Violation {
                check: "coderivation".into(),
                witness: tuple_label(c, &tup),
                lhs: format!("{lhs:?}"),
                rhs: format!("{rhs:?}"),
            });
        }
    }
    None
}

/// Whether `f: R^{⊗n} → R` is a coderivation along `φ`.
pub fn coderivation_check(name: &str, c: &Coalgebra, n: usize, f: &LinMap, phi: &LinMap) -> Check {
    let cases = c.dim().pow(n as u32);
    match coderivation_defect(c, n, f, phi) {
        None => Check::pass(name, cases),
        Some(mut v) => {
            v.check = name.into();
            Check::fail(name, cases, v)
        }
    }
}

/// `μⁿ` is a coalgebra morphism and satisfies both recursive identities on
/// basis tuples.
pub fn mu_n_report(rb: &RackBialgebra, n: usize) -> Report {
    let c = rb.carrier();
    let d = c.dim();
    let mut rep = Report::new(format!("μ^{n} of {}", rb.name()));
    let mus: Vec<LinMap> = (1..=n + 1).map(|m| mu_n(rb, m)).collect();
    let mu = |m: usize| &mus[m - 1];
    let shape = TensorShape::power(d, n);

    let mut morph = CheckBuilder::new(format!("μ^{n} is a coalgebra morphism"));
    for t in 0..shape.size() {
        let tup = shape.decode(t);
        let mut rhs = Vector::zero();
        for (l, r, s) in c.tensor_coproduct(&tup) {
            rhs.axpy(&s, &mu(n).column(shape.encode(&l)).tensor(mu(n).column(shape.encode(&r)), d));
        }
        morph.record(|| tuple_label(c, &tup), &c.coproduct(mu(n).column(t)), &rhs);
        let eps: Scalar = tup.iter().fold(Scalar::one(), |acc, &i| &acc * c.counit_of_basis(i));
        morph.record(|| tuple_label(c, &tup), &c.counit(mu(n).column(t)), &eps);
    }
    rep.push(morph.finish());

    // Σ μ^i(r_1',..,r_{i-1}', r_i) ▷ μ^{n-1}(r_1'',..,r_{i-1}'', r_{i+1},..,r_n) = μⁿ(r)
    let mut first = CheckBuilder::new("μ^i(r',r_i) ▷ μ^{n-1}(r'',r_{>i}) = μ^n(r)");
    if n >= 2 {
        for t in 0..shape.size() {
            let tup = shape.decode(t);
            for i in 1..n {
                let mut lhs = Vector::zero();
                for (l, r, s) in c.tensor_coproduct(&tup[..i - 1]) {
                    let mut a = l.clone();
                    a.push(tup[i - 1]);
                    let mut b = r.clone();
                    b.extend_from_slice(&tup[i..]);
                    let ai = TensorShape::power(d, i).encode(&a);
                    let bi = TensorShape::power(d, n - 1).encode(&b);
                    lhs.axpy(&s, &rb.op(mu(i).column(ai), mu(n - 1).column(bi)));
                }
                first.record(|| tuple_label(c, &tup), &lhs, mu(n).column(t));
            }
        }
    }
    rep.push(first.finish());

    // μⁿ(r_1,..,r_{i-1}, r_i^{(1)}▷r_{i+1},..,r_i^{(n+1-i)}▷r_{n+1}) = μ^{n+1}(r)
    let mut second = CheckBuilder::new("μ^n(r_{<i}, r_i^{(j)}▷r_{i+j}) = μ^{n+1}(r)");
    let shape1 = TensorShape::power(d, n + 1);
    for t in 0..shape1.size() {
        let tup = shape1.decode(t);
        for i in 1..=n {
            let mut lhs = Vector::zero();
            for (parts, s) in c.iterated(tup[i - 1], n + 1 - i).iter() {
                let mut slots: Vec<Vector> = tup[..i - 1].iter().map(|&x| Vector::basis(x)).collect();
                for (j, &p) in parts.iter().enumerate() {
                    slots.push(rb.op_basis(p, tup[i + j]).clone());
                }
                lhs.axpy(s, &mu(n).apply(&tensor_slots(&slots, d)));
            }
            second.record(|| tuple_label(c, &tup), &lhs, mu(n + 1).column(t));
        }
    }
    rep.push(second.finish());
    rep
}

/// Basis of `Cⁿ(R;R) = Coder(R^{⊗n}, R, μⁿ)`, solved from the linear
/// coderivation constraint.
pub fn coderivation_space(rb: &RackBialgebra, n: usize, budget: &Budget) -> Result<Vec<Cochain>> {
    let d = rb.dim();
    if d > budget.max_dim {
        return Err(Error::BudgetExceeded(format!("dim R = {d} exceeds {}", budget.max_dim)));
    }
    if n == 0 || n > budget.max_n + 1 {
        return Err(Error::BudgetExceeded(format!("cochain degree {n} outside 1..={}", budget.max_n + 1)));
    }
    let mu = mu_n(rb, n);
    Ok(coderivation_basis(rb.carrier(), n, &mu))
}

/// Kernel of the constraint `Δ∘f − (f⊗φ + φ⊗f)∘Δ = 0` on `Hom(R^{⊗n}, R)`.
pub fn coderivation_basis(c: &Coalgebra, n: usize, phi: &LinMap) -> Vec<Cochain> {
    let d = c.dim();
    let shape = TensorShape::power(d, n);
    let rows: Vec<Vector> = (0..shape.size())
        .into_par_iter()
        .flat_map_iter(|t| {
            let tup = shape.decode(t);
            let mut eqs: BTreeMap<usize, Vector> = BTreeMap::new();
            // Σ_k f[k,t] Δ(e_k)
            for k in 0..d {
                for (p, q, s) in c.coproduct_terms(k) {
                    eqs.entry(p * d + q).or_default().add_term(t * d + k, s.clone());
                }
            }
            // − Σ s (f(L) ⊗ φ(R) + φ(L) ⊗ f(R))
            for (l, r, s) in c.tensor_coproduct(&tup) {
                let (li, ri) = (shape.encode(&l), shape.encode(&r));
                for (q, a) in phi.column(ri).iter() {
                    for p in 0..d {
                        eqs.entry(p * d + q).or_default().add_term(li * d + p, -(&s * a));
                    }
                }
                for (p, a) in phi.column(li).iter() {
                    for q in 0..d {
                        eqs.entry(p * d + q).or_default().add_term(ri * d + q, -(&s * a));
                    }
                }
            }
            eqs.into_values().filter(|v| !v.is_zero()).collect::<Vec<_>>()
        })
        .collect();
    kernel_basis(shape.size() * d, rows).into_iter().map(|v| Cochain::unflatten(&v, d, n)).collect()
}

/// One of the face maps `Cⁿ → C^{n+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Face {
    /// `d_{i,1}`: act on the result by `μ^i` of the first `i` slots.
    Act(usize),
    /// `d_{i,0}`: let slot `i` act on every later slot.
    Distribute(usize),
    /// `d_{n+1}`: act on `μⁿ` of the remaining slots by the result.
    Last,
}

/// Evaluates faces and the differential on cochains of a fixed rack
/// bialgebra; `μⁿ` tables are cached.
#[derive(Clone, Debug)]
pub struct Faces {
    rb: RackBialgebra,
    mus: Vec<LinMap>,
    corrupt_first: bool,
}

impl Faces {
    /// Faces for cochains of degree `≤ max_degree`.
    pub fn new(rb: &RackBialgebra, max_degree: usize) -> Self {
        let mus = (1..=max_degree + 1).map(|m| mu_n(rb, m)).collect();
        Faces { rb: rb.clone(), mus, corrupt_first: false }
    }

    /// Negative control: `d_{1,μ}` replaced by `d_{1,μ} + d_{n+1}` for both
    /// `μ`, which leaves `d_R` unchanged.
    pub fn corrupted(mut self) -> Self {
        self.corrupt_first = true;
        self
    }

    pub fn rack(&self) -> &RackBialgebra {
        &self.rb
    }

    fn mu(&self, m: usize) -> &LinMap {
        &self.mus[m - 1]
    }

    fn eval_tuple(&self, face: Face, w: &Cochain, tup: &[usize]) -> Vector {
        let rb = &self.rb;
        let c = rb.carrier();
        let d = rb.dim();
        let n = w.degree;
        let mut out = Vector::zero();
        match face {
            Face::Act(i) => {
                for (l, r, s) in c.tensor_coproduct(&tup[..i - 1]) {
                    let mut a = l;
                    a.push(tup[i - 1]);
                    let mut b = r;
                    b.extend_from_slice(&tup[i..]);
                    let ai = TensorShape::power(d, i).encode(&a);
                    let bi = TensorShape::power(d, n).encode(&b);
                    out.axpy(&s, &rb.op(self.mu(i).column(ai), w.map.column(bi)));
                }
            }
            Face::Distribute(i) => {
                for (parts, s) in c.iterated(tup[i - 1], n + 1 - i).iter() {
                    let mut slots: Vec<Vector> = tup[..i - 1].iter().map(|&x| Vector::basis(x)).collect();
                    for (j, &p) in parts.iter().enumerate() {
                        slots.push(rb.op_basis(p, tup[i + j]).clone());
                    }
                    out.axpy(s, &w.map.apply(&tensor_slots(&slots, d)));
                }
            }
            Face::Last => {
                for (l, r, s) in c.tensor_coproduct(&tup[..n - 1]) {
                    let mut a = l;
                    a.push(tup[n - 1]);
                    let mut b = r;
                    b.push(tup[n]);
                    let ai = TensorShape::power(d, n).encode(&a);
                    let bi = TensorShape::power(d, n).encode(&b);
                    out.axpy(&s, &rb.op(w.map.column(ai), self.mu(n).column(bi)));
                }
            }
        }
        out
    }

    /// The face `face` applied to `w ∈ Cⁿ`.
    pub fn apply(&self, face: Face, w: &Cochain) -> Cochain {
        let n = w.degree;
        if let Face::Act(i) | Face::Distribute(i) = face {
            assert!((1..=n).contains(&i), "face index {i} outside 1..={n}");
        }
        let d = self.rb.dim();
        let shape = TensorShape::power(d, n + 1);
        let corrupt = self.corrupt_first && matches!(face, Face::Act(1) | Face::Distribute(1));
        let cols: Vec<Vector> = (0..shape.size())
            .into_par_iter()
            .map(|t| {
                let tup = shape.decode(t);
                let mut v = self.eval_tuple(face, w, &tup);
                if corrupt {
                    v = v.add(&self.eval_tuple(Face::Last, w, &tup));
                }
                v
            })
            .collect();
        Cochain::new(n + 1, LinMap::from_columns(shape.size(), d, cols).expect("shape"))
    }

    /// `d_Rⁿ = Σ_{i=1}^n (−1)^{i+1}(d_{i,1} − d_{i,0}) + (−1)^{n+1} d_{n+1}`.
    pub fn differential(&self, w: &Cochain) -> Cochain {
        let n = w.degree;
        let mut acc = self.apply(Face::Last, w).map;
        if n.is_multiple_of(2) {
            acc = acc.scale(&Scalar::from_int(-1));
        }
        for i in 1..=n {
            let part = self.apply(Face::Act(i), w).map.sub(&self.apply(Face::Distribute(i), w).map).expect("shape");
            acc = if i % 2 == 1 { acc.add(&part) } else { acc.sub(&part) }.expect("shape");
        }
        Cochain::new(n + 1, acc)
    }
}

/// `dim Z²`, `dim B²` and `dim H² = dim Z² − dim B²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H2Dims {
    pub c2: usize,
    pub z2: usize,
    pub b2: usize,
    pub h2: usize,
}

/// Cochain spaces `C¹..C^{max_n+1}` of a rack bialgebra with the face maps
/// and the matrices of `d_R` between the solved bases.
#[derive(Clone, Debug)]
pub struct DeformationComplex {
    faces: Faces,
    max_n: usize,
    /// `bases[n-1]` spans `Cⁿ`.
    bases: Vec<Vec<Cochain>>,
    /// `spaces[n-1]` is `Cⁿ` in flattened coordinates.
    spaces: Vec<Subspace>,
}

impl DeformationComplex {
    pub fn new(rb: &RackBialgebra, budget: &Budget) -> Result<Self> {
        let max_n = budget.max_n;
        let mut bases = Vec::with_capacity(max_n + 1);
        let mut spaces = Vec::with_capacity(max_n + 1);
        for n in 1..=max_n + 1 {
            let b = coderivation_space(rb, n, budget)?;
            let amb = rb.dim().pow(n as u32 + 1);
            spaces.push(Subspace::span(amb, b.iter().map(Cochain::flatten)));
            bases.push(b);
        }
        Ok(DeformationComplex { faces: Faces::new(rb, max_n + 2), max_n, bases, spaces })
    }

    /// Negative control with a corrupted first face.
    pub fn with_corrupted_first_face(mut self) -> Self {
        self.faces = self.faces.corrupted();
        self
    }

    pub fn faces(&self) -> &Faces {
        &self.faces
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn basis(&self, n: usize) -> &[Cochain] {
        &self.bases[n - 1]
    }

    pub fn dim(&self, n: usize) -> usize {
        self.bases[n - 1].len()
    }

    /// Coordinates of `w ∈ Cⁿ` in the solved basis, `None` outside `Cⁿ`.
    pub fn coordinates(&self, w: &Cochain) -> Option<Vector> {
        self.spaces.get(w.degree - 1)?.coordinates(&w.flatten())
    }

    pub fn contains(&self, w: &Cochain) -> bool {
        self.spaces.get(w.degree - 1).is_some_and(|s| s.contains(&w.flatten()))
    }

    /// Matrix of `d_Rⁿ: Cⁿ → C^{n+1}`; `None` if an image leaves `C^{n+1}`.
    pub fn differential_matrix(&self, n: usize) -> Option<LinMap> {
        let cols: Option<Vec<Vector>> = self.basis(n).iter().map(|b| self.coordinates(&self.faces.differential(b))).collect();
        LinMap::from_columns(self.dim(n), self.dim(n + 1), cols?).ok()
    }

    /// Runs every identity family on the basis of each `Cⁿ`, `n ≤ max_n`.
    pub fn verify(&self) -> Report {
        let rb = self.faces.rack();
        let f = &self.faces;
        let mut rep = Report::new(format!("deformation complex of {}", rb.name()));

        let mut lands = CheckBuilder::new("d_R^n lands in C^{n+1}");
        let mut square = CheckBuilder::new("d_R^{n+1} ∘ d_R^n = 0");
        let mut matrices = CheckBuilder::new("d_R^{n+1} ∘ d_R^n = 0 as matrices");
        let mut cubical = CheckBuilder::new("d_{j,μ}∘d_{i,ν} = d_{i+1,ν}∘d_{j,μ} for j ≤ i");
        let mut extra1 = CheckBuilder::new("d_{i,μ}∘d_{n+1} = d_{n+2}∘d_{i,μ}");
        let mut extra2 = CheckBuilder::new("d_{n+1,0}∘d_{n+1} = d_{n+2}∘d_{n+1} + d_{n+1,1}∘d_{n+1}");

        for n in 1..=self.max_n {
            for (b, w) in self.basis(n).iter().enumerate() {
                let wit = |s: String| move || vec![format!("n={n}"), format!("basis {b}"), s];
                let dw = f.differential(w);
                let ok = self.contains(&dw);
                lands.record_bool(wit(String::new()), ok, || format!("{:?}", dw.map));
                let ddw = f.differential(&dw);
                square.record_bool(wit(String::new()), ddw.is_zero(), || format!("{:?}", ddw.map));

                // every face of w, computed once: (i, face, μ, face(w))
                let mut applied = Vec::with_capacity(2 * n);
                for i in 1..=n {
                    applied.push((i, Face::Act(i), 1, f.apply(Face::Act(i), w)));
                    applied.push((i, Face::Distribute(i), 0, f.apply(Face::Distribute(i), w)));
                }
                for (i, _, nu, inner_i) in &applied {
                    let shifted = if *nu == 1 { Face::Act(i + 1) } else { Face::Distribute(i + 1) };
                    for (j, fj, m, fj_w) in applied.iter().filter(|a| a.0 <= *i) {
                        let lhs = f.apply(*fj, inner_i);
                        let rhs = f.apply(shifted, fj_w);
                        cubical.record(wit(format!("j={j} μ={m} i={i} ν={nu}")), &lhs.map, &rhs.map);
                    }
                }

                let last = f.apply(Face::Last, w);
                for (i, fi, m, fi_w) in &applied {
                    let lhs = f.apply(*fi, &last);
                    let rhs = f.apply(Face::Last, fi_w);
                    extra1.record(wit(format!("i={i} μ={m}")), &lhs.map, &rhs.map);
                }
                let lhs = f.apply(Face::Distribute(n + 1), &last);
                let rhs = f.apply(Face::Last, &last).map.add(&f.apply(Face::Act(n + 1), &last).map).expect("shape");
                extra2.record(wit(String::new()), &lhs.map, &rhs);
            }
            if n < self.max_n {
                match (self.differential_matrix(n), self.differential_matrix(n + 1)) {
                    (Some(d1), Some(d2)) => {
                        let prod = d2.compose(&d1).expect("shape");
                        matrices.record_bool(|| vec![format!("n={n}")], prod.is_zero(), || format!("{prod:?}"));
                    }
                    _ => matrices.record_bool(|| vec![format!("n={n}")], false, || "d_R leaves the cochain spaces".into()),
                }
            }
        }
        for ch in [lands, square, matrices, cubical, extra1, extra2] {
            rep.push(ch.finish());
        }
        rep
    }

    /// `dim Z² = dim ker(d²|C²)`, `dim B² = rank(d¹)`.
    pub fn h2(&self) -> Result<H2Dims> {
        if self.max_n < 2 {
            return Err(Error::BudgetExceeded("H² needs cochains up to degree 3".into()));
        }
        let f = &self.faces;
        let d = f.rack().dim();
        let images2: Vec<Vector> = self.basis(2).iter().map(|w| f.differential(w).flatten()).collect();
        let rank2 = Subspace::span(d.pow(4), images2).dim();
        let images1: Vec<Vector> = self.basis(1).iter().map(|w| f.differential(w).flatten()).collect();
        let b2 = Subspace::span(d.pow(3), images1).dim();
        let c2 = self.dim(2);
        let z2 = c2 - rank2;
        Ok(H2Dims { c2, z2, b2, h2: z2 - b2 })
    }
}

/// `(f ⋆ g)(a⊗b⊗c) = Σ f(a(1)⊗b) ▷ g(a(2)⊗c)` for `f: A⊗B → V`,
/// `g: A⊗C → V` and a product on `V`; the result lives on `A⊗B⊗C`.
pub fn partial_convolution(a: &Coalgebra, db: usize, dc: usize, f: &LinMap, g: &LinMap, mu: &Product) -> LinMap {
    let da = a.dim();
    LinMap::from_fn(da * db * dc, mu.dout, |t| {
        let (x, y, z) = (t / (db * dc), (t / dc) % db, t % dc);
        let mut out = Vector::zero();
        for (l, r, s) in a.coproduct_terms(x) {
            let v = mu.apply(f.column(l * db + y), g.column(r * dc + z)).expect("total product");
            out.axpy(s, &v);
        }
        out
    })
}

/// `μ_ℏ = μ + ℏω` on dual numbers, elements written as `(v_0, v_1)`.
fn dual_op(rb: &RackBialgebra, w: &LinMap, x: &(Vector, Vector), y: &(Vector, Vector)) -> (Vector, Vector) {
    let d = rb.dim();
    let v0 = rb.op(&x.0, &y.0);
    let v1 = rb.op(&x.1, &y.0).add(&rb.op(&x.0, &y.1)).add(&w.apply(&x.0.tensor(&y.0, d)));
    (v0, v1)
}

fn plain(v: Vector) -> (Vector, Vector) {
    (v, Vector::zero())
}

/// `ℏ¹` coefficient of `a▷_ℏ(b▷_ℏc) − Σ (a(1)▷_ℏb)▷_ℏ(a(2)▷_ℏc)` for
/// `μ_ℏ = μ + ℏω`, as a map on `R^{⊗3}`.
pub fn selfdist_defect(rb: &RackBialgebra, w: &Cochain) -> LinMap {
    let c = rb.carrier();
    let d = rb.dim();
    let shape = TensorShape::power(d, 3);
    LinMap::from_fn(shape.size(), d, |t| {
        let tup = shape.decode(t);
        let (a, b, cc) = (plain(Vector::basis(tup[0])), plain(Vector::basis(tup[1])), plain(Vector::basis(tup[2])));
        let lhs = dual_op(rb, &w.map, &a, &dual_op(rb, &w.map, &b, &cc));
        let mut rhs = Vector::zero();
        for (a1, a2, s) in c.coproduct_terms(tup[0]) {
            let left = dual_op(rb, &w.map, &plain(Vector::basis(*a1)), &b);
            let right = dual_op(rb, &w.map, &plain(Vector::basis(*a2)), &cc);
            rhs.axpy(s, &dual_op(rb, &w.map, &left, &right).1);
        }
        lhs.1.sub(&rhs)
    })
}

/// The five terms of the `ℏ¹` self-distributivity defect, each evaluated
/// directly and compared with its face map, together with the equivalence
/// "`μ + ℏω` is self-distributive mod `ℏ²` iff `d_R²ω = 0`".
pub fn infinitesimal_report(rb: &RackBialgebra, w: &Cochain) -> Report {
    assert_eq!(w.degree, 2);
    let c = rb.carrier();
    let d = rb.dim();
    let faces = Faces::new(rb, 3);
    let shape = TensorShape::power(d, 3);
    let om = |x: &Vector, y: &Vector| w.map.apply(&x.tensor(y, d));
    let terms: [(&str, Face, Box<dyn Fn(usize, usize, usize) -> Vector + '_>); 5] = [
        ("ω(a,b▷c) = d_{2,0}ω", Face::Distribute(2), Box::new(|a, b, cc| om(&Vector::basis(a), rb.op_basis(b, cc)))),
        ("a▷ω(b,c) = d_{1,1}ω", Face::Act(1), Box::new(|a, b, cc| rb.op(&Vector::basis(a), w.map.column(b * d + cc)))),
        (
            "Σ ω(a(1)▷b, a(2)▷c) = d_{1,0}ω",
            Face::Distribute(1),
            Box::new(|a, b, cc| {
                let mut v = Vector::zero();
                for (a1, a2, s) in c.coproduct_terms(a) {
                    v.axpy(s, &om(rb.op_basis(*a1, b), rb.op_basis(*a2, cc)));
                }
                v
            }),
        ),
        (
            "Σ ω(a(1),b)▷(a(2)▷c) = d_3ω",
            Face::Last,
            Box::new(|a, b, cc| {
                let mut v = Vector::zero();
                for (a1, a2, s) in c.coproduct_terms(a) {
                    v.axpy(s, &rb.op(w.map.column(a1 * d + b), rb.op_basis(*a2, cc)));
                }
                v
            }),
        ),
        (
            "Σ (a(1)▷b)▷ω(a(2),c) = d_{2,1}ω",
            Face::Act(2),
            Box::new(|a, b, cc| {
                let mut v = Vector::zero();
                for (a1, a2, s) in c.coproduct_terms(a) {
                    v.axpy(s, &rb.op(rb.op_basis(*a1, b), w.map.column(a2 * d + cc)));
                }
                v
            }),
        ),
    ];
    let mut rep = Report::new(format!("infinitesimal deformation of {}", rb.name()));
    for (name, face, direct) in terms.iter() {
        let fw = faces.apply(*face, w);
        let mut ch = CheckBuilder::new(*name);
        for t in 0..shape.size() {
            let tup = shape.decode(t);
            ch.record(|| tuple_label(c, &tup), &direct(tup[0], tup[1], tup[2]), fw.map.column(t));
        }
        rep.push(ch.finish());
    }
    let defect = selfdist_defect(rb, w);
    let dw = faces.differential(w);
    let mut same = CheckBuilder::new("ℏ¹ self-distributivity defect = d_R²ω");
    same.record(Vec::new, &defect, &dw.map);
    rep.push(same.finish());
    let mut sd = CheckBuilder::new("μ + ℏω self-distributive mod ℏ²");
    sd.record_bool(Vec::new, defect.is_zero(), || format!("{defect:?}"));
    rep.push(sd.finish());
    let mut cocycle = CheckBuilder::new("d_R²ω = 0");
    cocycle.record_bool(Vec::new, dw.is_zero(), || format!("{:?}", dw.map));
    rep.push(cocycle.finish());
    rep
}

/// Whether `μ + ℏω` is self-distributive mod `ℏ²`, evaluated on dual numbers.
pub fn is_infinitesimal_deformation(rb: &RackBialgebra, w: &Cochain) -> bool {
    selfdist_defect(rb, w).is_zero()
}

/// For `μ_1 = d¹α`, the map `φ = id − ℏα` satisfies
/// `φ(a▷b) = φ(a) ▷_ℏ φ(b)` mod `ℏ²` with `▷_ℏ = μ + ℏμ_1`.
pub fn equivalence_report(rb: &RackBialgebra, alpha: &Cochain) -> Report {
    equivalence_report_signed(rb, alpha, &Scalar::from_int(-1))
}

/// As [`equivalence_report`] with `φ = id + s·ℏα`; only `s = −1` matches
/// `μ_1 = d¹α` under the sign convention of `d_R`.
pub fn equivalence_report_signed(rb: &RackBialgebra, alpha: &Cochain, s: &Scalar) -> Report {
    assert_eq!(alpha.degree, 1);
    let c = rb.carrier();
    let d = rb.dim();
    let mut rep = Report::new(format!("equivalence of infinitesimal deformations of {}", rb.name()));
    rep.push(coderivation_check("α ∈ C¹", c, 1, &alpha.map, &LinMap::identity(d)));
    let mu1 = Faces::new(rb, 2).differential(alpha);
    let phi = |v: &Vector| (v.clone(), alpha.map.apply(v).scale(s));
    let mut ch = CheckBuilder::new("φ∘μ = (μ + ℏ d¹α)∘(φ⊗φ) mod ℏ²");
    for a in 0..d {
        for b in 0..d {
            let lhs = phi(rb.op_basis(a, b));
            let rhs = dual_op(rb, &mu1.map, &phi(&Vector::basis(a)), &phi(&Vector::basis(b)));
            ch.record(|| vec![c.label(a), c.label(b)], &lhs, &rhs);
        }
    }
    rep.push(ch.finish());
    rep
}

/// A Leibniz 2-cochain `ψ: h⊗h → h` extended by zero to `(K1⊕h)^{⊗2} → K1⊕h`,
/// together with the check that it lies in `C²(UR(h))`.
pub fn leibniz_cochain_restriction(h: &LeibnizAlgebra, psi: &LinMap) -> Result<(Cochain, Check)> {
    let n = h.dim();
    if psi.dom != n * n || psi.cod != n {
        return Err(Error::BasisMismatch(format!("Leibniz 2-cochain must map {}→{n}", n * n)));
    }
    let rb = ur(h)?;
    let d = n + 1;
    let map = LinMap::from_fn(d * d, d, |t| {
        let (a, b) = (t / d, t % d);
        if a == 0 || b == 0 {
            Vector::zero()
        } else {
            psi.column((a - 1) * n + (b - 1)).map_indices(|i| i + 1)
        }
    });
    let w = Cochain::new(2, map);
    let check = coderivation_check("Leibniz 2-cochain lies in C²(UR(h))", rb.carrier(), 2, &w.map, &mu_n(&rb, 2));
    Ok((w, check))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rack_bialg::trivial;
    use crate::symcoalg::SymCoalgebra;

    fn square() -> LeibnizAlgebra {
        LeibnizAlgebra::new(2, &[((0, 0), Vector::basis(1))]).unwrap()
    }

    #[test]
    fn mu_n_identities() {
        let rb = ur(&square()).unwrap();
        assert_eq!(mu_n(&rb, 1), LinMap::identity(3));
        for n in 1..=3 {
            let rep = mu_n_report(&rb, n);
            assert!(rep.all_passed(), "{:?}", rep.failed());
        }
    }

    #[test]
    fn complexes_verify() {
        let sym = SymCoalgebra::new(2, 1);
        let triv = trivial("S(h)_(1)", sym.carrier().clone()).unwrap();
        for rb in [triv, ur(&square()).unwrap()] {
            let cx = DeformationComplex::new(&rb, &Budget::default()).unwrap();
            let rep = cx.verify();
            assert!(rep.all_passed(), "{}: {:?} {:?}", rb.name(), rep.failed(), rep.first_violation());
            cx.h2().unwrap();
        }
    }

    #[test]
    fn corrupted_face_breaks_only_cubical() {
        let rb = ur(&square()).unwrap();
        let cx = DeformationComplex::new(&rb, &Budget::default()).unwrap().with_corrupted_first_face();
        let rep = cx.verify();
        assert_eq!(rep.failed(), vec!["d_{j,μ}∘d_{i,ν} = d_{i+1,ν}∘d_{j,μ} for j ≤ i"]);
    }
}
