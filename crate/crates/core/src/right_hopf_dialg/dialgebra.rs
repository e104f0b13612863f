use std::collections::HashMap;

use crate::coalgebra::{Coalgebra, Product};
use crate::env_hopf::{FiniteGroup, HopfAlgebra};
use crate::exact_core::{LinMap, Subspace, Vector};
use crate::leibniz::LeibnizAlgebra;
use crate::rack_bialg::{certify, AugmentedRackBialgebra, RackBialgebra, RackCandidate};
use crate::report::{CheckBuilder, Report};
use crate::{Error, Result};

/// `(Σ v_i e_i) · e_c` for a possibly partial product.
fn mul_vb(p: &Product, v: &Vector, c: usize) -> Option<Vector> {
    let mut out = Vector::zero();
    for (i, s) in v.iter() {
        out.axpy(s, p.get(i, c)?);
    }
    Some(out)
}

/// `e_a · (Σ v_i e_i)` for a possibly partial product.
fn mul_bv(p: &Product, a: usize, v: &Vector) -> Option<Vector> {
    let mut out = Vector::zero();
    for (i, s) in v.iter() {
        out.axpy(s, p.get(a, i)?);
    }
    Some(out)
}

fn record_opt(b: &mut CheckBuilder, w: impl FnOnce() -> Vec<String>, l: Option<Vector>, r: Option<Vector>) {
    match (l, r) {
        (Some(l), Some(r)) => b.record(w, &l, &r),
        _ => b.skip(),
    }
}

/// Vector space with two products `⊢`, `⊣` and a distinguished element `1`.
/// Products may be partial on degree-capped carriers.
#[derive(Clone, Debug)]
pub struct Dialgebra {
    pub name: String,
    pub labels: Vec<String>,
    pub unit: Vector,
    pub vdash: Product,
    pub dashv: Product,
}

impl Dialgebra {
    /// Associative unital algebra with `⊢ = ⊣`.
    pub fn from_associative(name: &str, labels: Vec<String>, unit: Vector, product: Product) -> Self {
        Dialgebra { name: name.into(), labels, unit, vdash: product.clone(), dashv: product }
    }

    /// `K[G] ⊗ K[G]` with `x⊢y = f(x)y`, `x⊣y = xf(y)` for `f(b₁⊗b₂) = b₁b₂`
    /// and bimodule structure `b.(b₁⊗b₂).b' = (bb₁)⊗(b₂b')`. Bar-unital with
    /// bar-unit `e⊗e`, not balanced once `G` is nontrivial.
    pub fn non_balanced(g: &FiniteGroup) -> Self {
        let n = g.order();
        let labels = (0..n * n).map(|k| format!("{}⊗{}", g.labels()[k / n], g.labels()[k % n])).collect();
        let vdash = Product::from_fn(n * n, n * n, n * n, |x, y| {
            let f = g.mul(x / n, x % n);
            Some(Vector::basis(g.mul(f, y / n) * n + y % n))
        });
        let dashv = Product::from_fn(n * n, n * n, n * n, |x, y| {
            let f = g.mul(y / n, y % n);
            Some(Vector::basis((x / n) * n + g.mul(x % n, f)))
        });
        Dialgebra { name: "non-balanced K[G]⊗K[G]".into(), labels, unit: Vector::basis(g.unit() * n + g.unit()), vdash, dashv }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> String {
        self.labels[i].clone()
    }

    pub fn vdash(&self, a: &Vector, b: &Vector) -> Option<Vector> {
        self.vdash.apply(a, b)
    }

    pub fn dashv(&self, a: &Vector, b: &Vector) -> Option<Vector> {
        self.dashv.apply(a, b)
    }

    /// Leibniz bracket `[a,b] = a⊢b − b⊣a`.
    pub fn bracket(&self, a: &Vector, b: &Vector) -> Option<Vector> {
        Some(self.vdash(a, b)?.sub(&self.dashv(b, a)?))
    }

    /// Associativity of both products, the three mixed axioms, the bar-unit
    /// and balance.
    pub fn report(&self) -> Report {
        let d = self.dim();
        let (v, h) = (&self.vdash, &self.dashv);
        let lab = |i: usize| self.label(i);
        let mut rep = Report::new(self.name.clone());
        let mut av = CheckBuilder::new("⊢ associative");
        let mut ad = CheckBuilder::new("⊣ associative");
        let mut m1 = CheckBuilder::new("(a⊢b)⊢c = (a⊣b)⊢c");
        let mut m2 = CheckBuilder::new("a⊣(b⊣c) = a⊣(b⊢c)");
        let mut m3 = CheckBuilder::new("(a⊢b)⊣c = a⊢(b⊣c)");
        for a in 0..d {
            for b in 0..d {
                let (abv, abd) = (v.get(a, b), h.get(a, b));
                for c in 0..d {
                    let (bcv, bcd) = (v.get(b, c), h.get(b, c));
                    let w = || vec![lab(a), lab(b), lab(c)];
                    let abv_v = abv.and_then(|x| mul_vb(v, x, c));
                    record_opt(&mut av, w, abv_v.clone(), bcv.and_then(|x| mul_bv(v, a, x)));
                    record_opt(&mut ad, w, abd.and_then(|x| mul_vb(h, x, c)), bcd.and_then(|x| mul_bv(h, a, x)));
                    record_opt(&mut m1, w, abv_v, abd.and_then(|x| mul_vb(v, x, c)));
                    record_opt(&mut m2, w, bcd.and_then(|x| mul_bv(h, a, x)), bcv.and_then(|x| mul_bv(h, a, x)));
                    record_opt(&mut m3, w, abv.and_then(|x| mul_vb(h, x, c)), bcd.and_then(|x| mul_bv(v, a, x)));
                }
            }
        }
        let mut bar = CheckBuilder::new("bar-unit 1⊢a = a = a⊣1");
        let mut bal = CheckBuilder::new("balanced a⊢1 = 1⊣a");
        for a in 0..d {
            let ea = Vector::basis(a);
            let w = || vec![lab(a)];
            record_opt(&mut bar, w, self.vdash(&self.unit, &ea), Some(ea.clone()));
            record_opt(&mut bar, w, self.dashv(&ea, &self.unit), Some(ea.clone()));
            record_opt(&mut bal, w, self.vdash(&ea, &self.unit), self.dashv(&self.unit, &ea));
        }
        for c in [av, ad, m1, m2, m3, bar, bal] {
            rep.push(c.finish());
        }
        rep
    }

    /// Undefined products replaced by zero, i.e. the quotient by everything
    /// beyond the cap. A dialgebra only when products are homogeneous; run
    /// [`Dialgebra::report`] on the result.
    pub fn graded_quotient(&self) -> Dialgebra {
        let fill = |p: &Product| {
            Product::from_fn(p.dl, p.dr, p.dout, |i, j| Some(p.get(i, j).cloned().unwrap_or_else(Vector::zero)))
        };
        Dialgebra {
            name: format!("{} modulo the cap", self.name),
            labels: self.labels.clone(),
            unit: self.unit.clone(),
            vdash: fill(&self.vdash),
            dashv: fill(&self.dashv),
        }
    }

    /// Whether `f: self → target` preserves both products and the bar-unit,
    /// on basis pairs where the source product is defined.
    pub fn morphism_check(&self, f: &LinMap, target: &Dialgebra) -> Report {
        let d = self.dim();
        let mut rep = Report::new(format!("{} → {}", self.name, target.name));
        let mut pv = CheckBuilder::new("preserves ⊢");
        let mut pd = CheckBuilder::new("preserves ⊣");
        for a in 0..d {
            for b in 0..d {
                let w = || vec![self.label(a), self.label(b)];
                let (fa, fb) = (f.column(a), f.column(b));
                record_opt(&mut pv, w, self.vdash.get(a, b).map(|x| f.apply(x)), target.vdash(fa, fb));
                record_opt(&mut pd, w, self.dashv.get(a, b).map(|x| f.apply(x)), target.dashv(fa, fb));
            }
        }
        let mut unit = CheckBuilder::new("preserves the bar-unit");
        unit.record(Vec::new, &f.apply(&self.unit), &target.unit);
        rep.push(pv.finish());
        rep.push(pd.finish());
        rep.push(unit.finish());
        rep
    }

    /// Smallest subspace containing `gens` and closed under both products,
    /// as far as they are defined.
    pub fn closure(&self, gens: impl IntoIterator<Item = Vector>) -> Subspace {
        let mut span = Subspace::span(self.dim(), gens);
        loop {
            let basis = span.basis().to_vec();
            let mut grew = false;
            for x in &basis {
                for y in &basis {
                    for p in [&self.vdash, &self.dashv] {
                        if let Some(z) = p.apply(x, y) {
                            grew |= span.push(z);
                        }
                    }
                }
            }
            if !grew {
                return span;
            }
        }
    }
}

/// A dialgebra on a cocommutative coalgebra with an antipode `S`.
#[derive(Clone, Debug)]
pub struct HopfDialgebra {
    pub dialg: Dialgebra,
    pub coalg: Coalgebra,
    pub antipode: LinMap,
}

impl HopfDialgebra {
    pub fn new(dialg: Dialgebra, coalg: Coalgebra, antipode: LinMap) -> Result<Self> {
        let d = coalg.dim();
        let shapes = [dialg.vdash.dl, dialg.vdash.dr, dialg.vdash.dout, dialg.dashv.dl, dialg.dashv.dr, dialg.dashv.dout];
        if dialg.dim() != d || shapes.iter().any(|&s| s != d) || antipode.dom != d || antipode.cod != d {
            return Err(Error::BasisMismatch("dialgebra tables disagree on dimension".into()));
        }
        if &dialg.unit != coalg.unit() {
            return Err(Error::BasisMismatch("bar-unit differs from the coalgebra unit".into()));
        }
        Ok(HopfDialgebra { dialg, coalg, antipode })
    }

    /// A Hopf algebra viewed as a dialgebra with `⊢ = ⊣`.
    pub fn from_hopf(name: &str, h: &HopfAlgebra) -> Self {
        let dialg = Dialgebra::from_associative(name, h.coalg.labels().to_vec(), h.unit().clone(), h.product.clone());
        HopfDialgebra { dialg, coalg: h.coalg.clone(), antipode: h.antipode.clone() }
    }

    pub fn dim(&self) -> usize {
        self.coalg.dim()
    }

    pub fn unit(&self) -> &Vector {
        self.coalg.unit()
    }

    fn products_are_coalgebra_maps(&self, p: &Product, name: &str) -> crate::report::Check {
        let d = self.dim();
        let c = &self.coalg;
        let mut b = CheckBuilder::new(name);
        for x in 0..d {
            for y in 0..d {
                let Some(xy) = p.get(x, y) else {
                    b.skip();
                    continue;
                };
                let w = || vec![c.label(x), c.label(y)];
                let mut rhs = Some(Vector::zero());
                for (x1, x2, s) in c.coproduct_terms(x) {
                    for (y1, y2, t) in c.coproduct_terms(y) {
                        rhs = rhs.and_then(|mut acc| {
                            acc.axpy(&(s * t), &p.get(*x1, *y1)?.tensor(p.get(*x2, *y2)?, d));
                            Some(acc)
                        });
                    }
                }
                record_opt(&mut b, w, Some(c.coproduct(xy)), rhs);
                b.record(w, &c.counit(xy), &(c.counit_of_basis(x) * c.counit_of_basis(y)));
            }
        }
        b.finish()
    }

    /// `Σ f(a(1)) · g(a(2))` for each basis `a`, skipping undefined products.
    fn antipode_check(&self, name: &str, p: &Product, s_left: bool) -> crate::report::Check {
        let c = &self.coalg;
        let mut b = CheckBuilder::new(name);
        for a in 0..self.dim() {
            let mut acc = Some(Vector::zero());
            for (l, r, s) in c.coproduct_terms(a) {
                acc = acc.and_then(|mut v| {
                    let t = if s_left { mul_vb(p, self.antipode.column(*l), *r)? } else { mul_bv(p, *l, self.antipode.column(*r))? };
                    v.axpy(s, &t);
                    Some(v)
                });
            }
            record_opt(&mut b, || vec![c.label(a)], acc, Some(self.unit().scale(c.counit_of_basis(a))));
        }
        b.finish()
    }

    /// Every Hopf dialgebra axiom on basis elements, within any cap.
    pub fn report(&self) -> Report {
        let mut rep = self.dialg.report();
        rep.extend(self.coalg.validate());
        rep.push(self.products_are_coalgebra_maps(&self.dialg.vdash, "⊢ is a coalgebra morphism"));
        rep.push(self.products_are_coalgebra_maps(&self.dialg.dashv, "⊣ is a coalgebra morphism"));
        rep.push(self.coalg.morphism_check(&self.antipode, &self.coalg, "S is a coalgebra morphism"));
        rep.push(self.antipode_check("right antipode id*⊢S = 1ε", &self.dialg.vdash, false));
        rep.push(self.antipode_check("left antipode S*⊣id = 1ε", &self.dialg.dashv, true));
        rep
    }

    /// Returns `self` if every axiom holds, else the first witness.
    pub fn certify(self) -> Result<Self> {
        let rep = self.report();
        match rep.first_violation() {
            Some(v) => Err(Error::AxiomViolation(Box::new(v.clone()))),
            None => Ok(self),
        }
    }

    pub fn primitives(&self) -> Subspace {
        self.coalg.primitives()
    }

    /// `Prim(A)` with the bracket `a⊢b − b⊣a`, in the coordinates of the
    /// returned basis.
    pub fn primitive_leibniz(&self) -> Result<(LeibnizAlgebra, Subspace)> {
        let prim = self.primitives();
        let n = prim.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let br = self
                    .dialg
                    .bracket(&prim.basis()[i], &prim.basis()[j])
                    .ok_or_else(|| Error::BudgetExceeded("primitive bracket beyond the degree cap".into()))?;
                let coords = prim
                    .coordinates(&br)
                    .ok_or_else(|| Error::DecompositionFailure("bracket of primitives is not primitive".into()))?;
                if !coords.is_zero() {
                    brackets.push(((i, j), coords));
                }
            }
        }
        Ok((LeibnizAlgebra::new(n, &brackets)?, prim))
    }

    /// `a▷b = Σ (a(1)⊢b) ⊣ S(a(2))`, undefined beyond a cap.
    pub fn rack_product(&self) -> Product {
        let d = self.dim();
        let (v, h) = (&self.dialg.vdash, &self.dialg.dashv);
        Product::from_fn(d, d, d, |a, b| {
            let mut acc = Vector::zero();
            for (a1, a2, s) in self.coalg.coproduct_terms(a) {
                let t = h.apply(v.get(*a1, b)?, self.antipode.column(*a2))?;
                acc.axpy(s, &t);
            }
            Some(acc)
        })
    }

    pub fn rack(&self) -> Result<RackBialgebra> {
        let mu = self.rack_product();
        if !mu.is_total() {
            return Err(Error::BudgetExceeded("rack product leaves the degree cap".into()));
        }
        certify(RackCandidate::new(format!("rack of {}", self.dialg.name), self.coalg.clone(), mu))
    }

    /// `a▷(b▷c) = (a⊢b)▷c = (a⊣b)▷c` and `▷` acting by module-algebra maps
    /// for both products.
    pub fn rack_module_identities(&self) -> Report {
        let d = self.dim();
        let mu = self.rack_product();
        let (v, h) = (&self.dialg.vdash, &self.dialg.dashv);
        let c = &self.coalg;
        let lab = |i: usize| c.label(i);
        let mut rep = Report::new("rack module identities");
        let mut m1 = CheckBuilder::new("a▷(b▷c) = (a⊢b)▷c");
        let mut m2 = CheckBuilder::new("(a⊢b)▷c = (a⊣b)▷c");
        let mut mv = CheckBuilder::new("a▷(b⊢c) = Σ (a(1)▷b)⊢(a(2)▷c)");
        let mut md = CheckBuilder::new("a▷(b⊣c) = Σ (a(1)▷b)⊣(a(2)▷c)");
        let mut unit = CheckBuilder::new("1▷b = b");
        let one = c.unit();
        for b in 0..d {
            record_opt(&mut unit, || vec![lab(b)], mul_vb(&mu, one, b), Some(Vector::basis(b)));
        }
        let distribute = |p: &Product, a: usize, b: usize, cc: usize| -> Option<Vector> {
            let mut acc = Vector::zero();
            for (a1, a2, s) in c.coproduct_terms(a) {
                acc.axpy(s, &p.apply(mu.get(*a1, b)?, mu.get(*a2, cc)?)?);
            }
            Some(acc)
        };
        for a in 0..d {
            for b in 0..d {
                for cc in 0..d {
                    let w = || vec![lab(a), lab(b), lab(cc)];
                    let lhs = mu.get(b, cc).and_then(|x| mul_bv(&mu, a, x));
                    let via_v = v.get(a, b).and_then(|x| mul_vb(&mu, x, cc));
                    let via_d = h.get(a, b).and_then(|x| mul_vb(&mu, x, cc));
                    record_opt(&mut m1, w, lhs, via_v.clone());
                    record_opt(&mut m2, w, via_v, via_d);
                    record_opt(&mut mv, w, v.get(b, cc).and_then(|x| mul_bv(&mu, a, x)), distribute(v, a, b, cc));
                    record_opt(&mut md, w, h.get(b, cc).and_then(|x| mul_bv(&mu, a, x)), distribute(h, a, b, cc));
                }
            }
        }
        for ch in [m1, m2, mv, md, unit] {
            rep.push(ch.finish());
        }
        rep
    }

    /// `E_A`: the `⊣`-generalized idempotents `{c : Σ c(1) ⊗ c(2)⊣c(3) = Δc}`.
    pub fn idempotents(&self) -> Result<Subspace> {
        super::right_hopf::generalized_idempotents(&self.coalg, &self.dialg.dashv)
            .ok_or_else(|| Error::BudgetExceeded("x(1)⊣x(2) beyond the degree cap".into()))
    }

    /// `1⊣a` for each basis `a`; its image is `H_A`.
    pub fn unit_dashv(&self) -> LinMap {
        LinMap::from_fn(self.dim(), self.dim(), |a| mul_vb(&self.dialg.dashv, self.unit(), a).expect("degree zero unit"))
    }

    pub fn unit_image(&self) -> Subspace {
        Subspace::span(self.dim(), self.unit_dashv().columns().iter().cloned())
    }
}

/// `B⊗H` built from an augmented rack bialgebra, restricted to basis pairs of
/// total degree at most the cap when one is given.
#[derive(Clone, Debug)]
pub struct TensorDialgebra {
    pub hd: HopfDialgebra,
    /// Basis element `i` is `b ⊗ h` for `pairs[i] = (b, h)`.
    pub pairs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    pub cap: Option<usize>,
}

impl TensorDialgebra {
    pub fn index_of(&self, b: usize, h: usize) -> Option<usize> {
        self.index.get(&(b, h)).copied()
    }

    /// `b ⊗ h` for vectors of `B` and `H`; `None` beyond the cap.
    pub fn embed(&self, b: &Vector, h: &Vector) -> Option<Vector> {
        let mut out = Vector::zero();
        for (i, s) in b.iter() {
            for (j, t) in h.iter() {
                out.add_term(self.index_of(i, j)?, s * t);
            }
        }
        Some(out)
    }

    /// Brackets of primitives against `([x,y] + ξ.y) + ([Φ_B(x),η] + [ξ,η])`.
    pub fn primitive_bracket_check(&self, arb: &AugmentedRackBialgebra) -> Report {
        let hopf = &arb.hopf;
        let (one_b, one_h) = (arb.b.unit(), hopf.unit());
        let pb = arb.b.primitives();
        let ph = hopf.coalg.primitives();
        let d = &self.hd.dialg;
        let comm = |x: &Vector, y: &Vector| Some(hopf.mul(x, y)?.sub(&hopf.mul(y, x)?));
        let mut rep = Report::new("brackets of primitives of B⊗H");
        let mut bb = CheckBuilder::new("[x⊗1, y⊗1] = [x,y]⊗1");
        let mut hb = CheckBuilder::new("[1⊗ξ, y⊗1] = ξ.y⊗1");
        let mut bh = CheckBuilder::new("[x⊗1, 1⊗η] = 1⊗[Φ(x),η]");
        let mut hh = CheckBuilder::new("[1⊗ξ, 1⊗η] = 1⊗[ξ,η]");
        let lift = |b: &Vector, h: &Vector| self.embed(b, h);
        for x in pb.basis() {
            for y in pb.basis() {
                let l = lift(x, one_h).zip(lift(y, one_h)).and_then(|(a, b)| d.bracket(&a, &b));
                let r = arb.act(&arb.phi.apply(x), y).and_then(|v| lift(&v, one_h));
                record_opt(&mut bb, Vec::new, l, r);
            }
            for eta in ph.basis() {
                let l = lift(x, one_h).zip(lift(one_b, eta)).and_then(|(a, b)| d.bracket(&a, &b));
                let r = comm(&arb.phi.apply(x), eta).and_then(|v| lift(one_b, &v));
                record_opt(&mut bh, Vec::new, l, r);
            }
        }
        for xi in ph.basis() {
            for y in pb.basis() {
                let l = lift(one_b, xi).zip(lift(y, one_h)).and_then(|(a, b)| d.bracket(&a, &b));
                let r = arb.act(xi, y).and_then(|v| lift(&v, one_h));
                record_opt(&mut hb, Vec::new, l, r);
            }
            for eta in ph.basis() {
                let l = lift(one_b, xi).zip(lift(one_b, eta)).and_then(|(a, b)| d.bracket(&a, &b));
                let r = comm(xi, eta).and_then(|v| lift(one_b, &v));
                record_opt(&mut hh, Vec::new, l, r);
            }
        }
        for c in [bb, hb, bh, hh] {
            rep.push(c.finish());
        }
        rep
    }

    /// `E_{B⊗H}` against `span{Σ b(1) ⊗ S_H(Φ_B(b(2)))}`.
    pub fn idempotent_formula_check(&self, arb: &AugmentedRackBialgebra) -> Result<crate::report::Check> {
        let e = self.hd.idempotents()?;
        let mut formula = Subspace::new(self.hd.dim());
        for b in 0..arb.b.dim() {
            if self.cap.is_some_and(|k| arb.b.degree(b) > k) {
                continue;
            }
            let mut v = Vector::zero();
            for (b1, b2, s) in arb.b.coproduct_terms(b) {
                let h = arb.hopf.antipode.apply(arb.phi.column(*b2));
                let t = self
                    .embed(&Vector::basis(*b1), &h)
                    .ok_or_else(|| Error::DegreeCapExceeded { needed: arb.b.degree(b), cap: self.cap.unwrap_or(0) })?;
                v.axpy(s, &t);
            }
            formula.push(v);
        }
        let mut chk = CheckBuilder::new("E = span{Σ b(1) ⊗ S(Φ(b(2)))}");
        chk.record(Vec::new, &(e.dim(), e.equals(&formula)), &(formula.dim(), true));
        Ok(chk.finish())
    }
}

/// `B⊗H` with `Φ(b⊗h) = Φ_B(b)h`, `h'.(b⊗h) = Σ (h'(1).b)⊗(h'(2)h)`,
/// `x⊢y = Φ(x).y`, `x⊣y = x.Φ(y)` and `S(b⊗h) = 1_B ⊗ S_H(Φ(b⊗h))`.
/// With a cap, only pairs of total degree `<= cap` are kept and a product is
/// defined when the degrees of its inputs add up to at most the cap.
pub fn dialgebra_from_augmented(arb: &AugmentedRackBialgebra, cap: Option<usize>) -> Result<TensorDialgebra> {
    let (db, dh) = (arb.b.dim(), arb.hopf.dim());
    let hopf = &arb.hopf;
    let full = arb.b.tensor(&hopf.coalg);
    let keep: Vec<usize> = (0..db * dh).filter(|&k| cap.is_none_or(|c| full.degree(k) <= c)).collect();
    let coalg = full.restrict(&keep)?;
    let pairs: Vec<(usize, usize)> = keep.iter().map(|&k| (k / dh, k % dh)).collect();
    let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let d = pairs.len();
    let to_local = |v: Vector| -> Option<Vector> {
        let mut out = Vector::zero();
        for (k, c) in v.iter() {
            out.add_term(*index.get(&(k / dh, k % dh))?, c.clone());
        }
        Some(out)
    };
    let phi = |x: usize| -> Option<Vector> {
        let (b, h) = pairs[x];
        hopf.product.apply(arb.phi.column(b), &Vector::basis(h))
    };
    let act = |u: &Vector, y: usize| -> Option<Vector> {
        let (b, h) = pairs[y];
        let mut out = Vector::zero();
        for (i, c) in u.iter() {
            for (i1, i2, s) in hopf.coalg.coproduct_terms(i) {
                let left = arb.action.get(*i1, b)?;
                let right = hopf.product.get(*i2, h)?;
                out.axpy(&(c * s), &left.tensor(right, dh));
            }
        }
        to_local(out)
    };
    let within = |x: usize, y: usize| cap.is_none_or(|c| coalg.degree(x) + coalg.degree(y) <= c);
    let vdash = Product::from_fn(d, d, d, |x, y| if within(x, y) { act(&phi(x)?, y) } else { None });
    let dashv = Product::from_fn(d, d, d, |x, y| {
        if !within(x, y) {
            return None;
        }
        let (b, h) = pairs[x];
        let hh = hopf.product.apply(&Vector::basis(h), &phi(y)?)?;
        to_local(Vector::basis(b).tensor(&hh, dh))
    });
    let mut cols = Vec::with_capacity(d);
    for x in 0..d {
        let u = phi(x).ok_or_else(|| Error::DegreeCapExceeded { needed: coalg.degree(x), cap: cap.unwrap_or(0) })?;
        let s = arb.b.unit().tensor(&hopf.antipode.apply(&u), dh);
        cols.push(to_local(s).ok_or_else(|| Error::DegreeCapExceeded { needed: coalg.degree(x), cap: cap.unwrap_or(0) })?);
    }
    let antipode = LinMap::from_columns(d, d, cols)?;
    let unit = coalg.unit().clone();
    let dialg = Dialgebra { name: "B⊗H".into(), labels: coalg.labels().to_vec(), unit, vdash, dashv };
    let hd = HopfDialgebra::new(dialg, coalg, antipode)?;
    Ok(TensorDialgebra { hd, pairs, index, cap })
}
