use crate::coalgebra::{convolution, unit_counit, Coalgebra, Product};
use crate::env_hopf::FiniteGroup;
use crate::exact_core::{LinMap, Subspace, Vector};
use crate::report::{Check, CheckBuilder, Report};
use crate::{Error, Result};

/// Cocommutative bialgebra with a left unit only (`1a = a`) and a right
/// antipode `id * S = 1ε`.
#[derive(Clone, Debug)]
pub struct RightHopf {
    pub name: String,
    pub coalg: Coalgebra,
    pub product: Product,
    pub antipode: LinMap,
}

impl RightHopf {
    /// `K[G × E]` with `(g,x)(h,y) = (gh, y)`, unit `(e, x_0)` and
    /// `S(g,x) = (g⁻¹, x_0)`.
    pub fn right_group(g: &FiniteGroup, idempotents: &[String]) -> Result<Self> {
        let m = idempotents.len();
        if m == 0 {
            return Err(Error::Schema("need at least one idempotent".into()));
        }
        let n = g.order();
        let labels: Vec<String> =
            (0..n * m).map(|k| format!("({},{})", g.labels()[k / m], idempotents[k % m])).collect();
        let unit = g.unit() * m;
        let coalg = Coalgebra::set_like(labels, unit);
        let d = n * m;
        let product = Product::from_fn(d, d, d, |a, b| Some(Vector::basis(g.mul(a / m, b / m) * m + b % m)));
        let antipode = LinMap::from_fn(d, d, |a| Vector::basis(g.inv(a / m) * m));
        Ok(RightHopf { name: "right group".into(), coalg, product, antipode })
    }

    /// Left-trivial product `ab = ε(a)b` with `S = 1ε` on any coalgebra.
    pub fn left_trivial(coalg: Coalgebra) -> Self {
        let d = coalg.dim();
        let product = Product::from_fn(d, d, d, |a, b| Some(Vector::basis(b).scale(coalg.counit_of_basis(a))));
        let antipode = unit_counit(&coalg, coalg.unit(), d);
        RightHopf { name: "left-trivial".into(), coalg, product, antipode }
    }

    pub fn dim(&self) -> usize {
        self.coalg.dim()
    }

    pub fn unit(&self) -> &Vector {
        self.coalg.unit()
    }

    pub fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        self.product.apply(a, b).expect("total product")
    }

    fn conv(&self, f: &LinMap, g: &LinMap) -> LinMap {
        convolution(&self.coalg, f, g, &self.product).expect("total product")
    }

    fn unit_eps(&self) -> LinMap {
        unit_counit(&self.coalg, self.unit(), self.dim())
    }

    /// Defining axioms: coalgebra, associativity, left unit, product a
    /// coalgebra morphism, right antipode.
    pub fn validate(&self) -> Report {
        let d = self.dim();
        let mut rep = self.coalg.validate();
        rep.subject = self.name.clone();
        let lab = |i: usize| self.coalg.label(i);
        let mut assoc = CheckBuilder::new("associativity");
        let mut unit = CheckBuilder::new("left unit");
        let mut morph = CheckBuilder::new("product is a coalgebra morphism");
        for a in 0..d {
            let ea = Vector::basis(a);
            unit.record(|| vec![lab(a)], &self.mul(self.unit(), &ea), &ea);
            for b in 0..d {
                let ab = self.product.get(a, b).unwrap();
                let mut rhs = Vector::zero();
                for (a1, a2, s) in self.coalg.coproduct_terms(a) {
                    for (b1, b2, t) in self.coalg.coproduct_terms(b) {
                        rhs.axpy(&(s * t), &self.product.get(*a1, *b1).unwrap().tensor(self.product.get(*a2, *b2).unwrap(), d));
                    }
                }
                morph.record(|| vec![lab(a), lab(b)], &self.coalg.coproduct(ab), &rhs);
                morph.record(
                    || vec![lab(a), lab(b)],
                    &self.coalg.counit(ab),
                    &(self.coalg.counit_of_basis(a) * self.coalg.counit_of_basis(b)),
                );
                for c in 0..d {
                    let ec = Vector::basis(c);
                    let lhs = self.mul(ab, &ec);
                    let rhs = self.mul(&ea, self.product.get(b, c).unwrap());
                    assoc.record(|| vec![lab(a), lab(b), lab(c)], &lhs, &rhs);
                }
            }
        }
        rep.push(assoc.finish());
        rep.push(unit.finish());
        rep.push(morph.finish());
        let mut anti = CheckBuilder::new("right antipode id*S = 1ε");
        anti.record(Vec::new, &self.conv(&LinMap::identity(d), &self.antipode), &self.unit_eps());
        rep.push(anti.finish());
        rep
    }

    /// Consequences of the right antipode axiom.
    pub fn antipode_lemmas(&self) -> Report {
        let d = self.dim();
        let id = LinMap::identity(d);
        let s = &self.antipode;
        let ss = s.compose(s).expect("square");
        let ue = self.unit_eps();
        let mut rep = Report::new("antipode identities");
        let mut push = |name: &str, l: LinMap, r: LinMap| {
            let mut b = CheckBuilder::new(name);
            b.record(Vec::new, &l, &r);
            rep.push(b.finish());
        };
        push("S*(S∘S) = 1ε", self.conv(s, &ss), ue.clone());
        push("S∘S = id*1ε", ss.clone(), self.conv(&id, &ue));
        push("S*1ε = S", self.conv(s, &ue), s.clone());
        push("S∘S∘S = S", ss.compose(s).expect("square"), s.clone());
        // Σ S(a(1)) a(2) 1 = ε(a) 1
        let right_mul_unit = LinMap::from_fn(d, d, |a| self.mul(&Vector::basis(a), self.unit()));
        push("Σ S(a(1))a(2)1 = ε(a)1", right_mul_unit.compose(&self.conv(s, &id)).expect("square"), ue);
        let mut anti = CheckBuilder::new("S(ab) = S(b)S(a)");
        for a in 0..d {
            for b in 0..d {
                let lhs = s.apply(self.product.get(a, b).unwrap());
                let rhs = self.mul(s.column(b), s.column(a));
                anti.record(|| vec![self.coalg.label(a), self.coalg.label(b)], &lhs, &rhs);
            }
        }
        rep.push(anti.finish());
        rep
    }

    /// Generalized idempotents: the largest subcoalgebra on which
    /// `Σ c(1)c(2) = c`, i.e. `{c : Σ c(1) ⊗ c(2)c(3) = Δc}`.
    pub fn generalized_idempotents(&self) -> Subspace {
        generalized_idempotents(&self.coalg, &self.product).expect("total product")
    }

    /// `H·1 = span{a·1}`.
    pub fn unit_orbit(&self) -> Subspace {
        Subspace::span(self.dim(), (0..self.dim()).map(|a| self.mul(&Vector::basis(a), self.unit())))
    }

    /// `Ψ(x) = Σ x(1)1 ⊗ S(x(2))x(3)` as a map `H → H⊗H`; `order` permutes
    /// which tensor legs of `Δ^{(3)}` feed the three slots.
    pub fn psi(&self, order: [usize; 3]) -> LinMap {
        let d = self.dim();
        LinMap::from_fn(d, d * d, |x| {
            let mut v = Vector::zero();
            for (t, c) in self.coalg.iterated(x, 3).iter() {
                let (a, b, e) = (t[order[0]], t[order[1]], t[order[2]]);
                let left = self.mul(&Vector::basis(a), self.unit());
                let right = self.mul(self.antipode.column(b), &Vector::basis(e));
                v.axpy(c, &left.tensor(&right, d));
            }
            v
        })
    }

    /// `H ≅ H·1 ⊗ E_H` with its structural checks.
    pub fn suschkewitsch(&self) -> Result<Suschkewitsch> {
        let d = self.dim();
        let h1 = self.unit_orbit();
        let e = self.generalized_idempotents();
        let psi = self.psi([0, 1, 2]);
        let mut rep = Report::new(format!("decomposition of {}", self.name));
        let lab = |i: usize| self.coalg.label(i);

        let mut dims = CheckBuilder::new("dim H = dim H1 · dim E");
        dims.record(Vec::new, &d, &(h1.dim() * e.dim()));
        rep.push(dims.finish());

        // H1 is a Hopf algebra: unital, closed, antipode two-sided
        let mut hopf = CheckBuilder::new("H·1 is a Hopf algebra");
        for x in h1.basis() {
            hopf.record_bool(Vec::new, h1.contains(&self.antipode.apply(x)), || "S(H1) ⊄ H1".into());
            hopf.record(Vec::new, &self.mul(x, self.unit()), x);
            for y in h1.basis() {
                hopf.record_bool(Vec::new, h1.contains(&self.mul(x, y)), || "H1 not closed".into());
            }
            let dx = self.coalg.coproduct(x);
            let mut left = Vector::zero();
            let mut right = Vector::zero();
            for (k, c) in dx.iter() {
                let (a, b) = (k / d, k % d);
                left.axpy(c, &self.mul(self.antipode.column(a), &Vector::basis(b)));
                right.axpy(c, &self.mul(&Vector::basis(a), self.antipode.column(b)));
            }
            let eps = self.unit().scale(&self.coalg.counit(x));
            hopf.record(Vec::new, &left, &eps);
            hopf.record(Vec::new, &right, &eps);
        }
        rep.push(hopf.finish());

        let mut triv = CheckBuilder::new("E is left-trivial with S = 1ε");
        let mut unitlike = CheckBuilder::new("generalized idempotents are left units");
        for c in e.basis() {
            let eps = self.coalg.counit(c);
            triv.record(Vec::new, &self.antipode.apply(c), &self.unit().scale(&eps));
            // c = Σ S(c(1)) c(2)
            let mut sc = Vector::zero();
            for (k, a) in self.coalg.coproduct(c).iter() {
                sc.axpy(a, &self.mul(self.antipode.column(k / d), &Vector::basis(k % d)));
            }
            unitlike.record(Vec::new, &sc, c);
            for c2 in e.basis() {
                triv.record(Vec::new, &self.mul(c, c2), &c2.scale(&eps));
            }
            for b in 0..d {
                let eb = Vector::basis(b);
                unitlike.record(|| vec![lab(b)], &self.mul(c, &eb), &eb.scale(&eps));
            }
        }
        rep.push(triv.finish());
        rep.push(unitlike.finish());

        let h1e = Subspace::span(
            d * d,
            h1.basis().iter().flat_map(|x| e.basis().iter().map(move |c| x.tensor(c, d))),
        );
        let mut lands = CheckBuilder::new("Ψ lands in H1 ⊗ E");
        let mut inv = CheckBuilder::new("multiplication inverts Ψ");
        for x in 0..d {
            let px = psi.column(x);
            lands.record_bool(|| vec![lab(x)], h1e.contains(px), || format!("{px:?}"));
            let mut back = Vector::zero();
            for (k, c) in px.iter() {
                back.axpy(c, self.product.get(k / d, k % d).unwrap());
            }
            inv.record(|| vec![lab(x)], &back, &Vector::basis(x));
        }
        for x in h1.basis() {
            for c in e.basis() {
                let t = x.tensor(c, d);
                inv.record(Vec::new, &psi.apply(&self.mul(x, c)), &t);
            }
        }
        rep.push(lands.finish());
        rep.push(inv.finish());

        let tensor = self.coalg.tensor(&self.coalg);
        rep.push(self.coalg.morphism_check(&psi, &tensor, "Ψ is a coalgebra morphism"));
        let mut prod = CheckBuilder::new("Ψ(ab) = Ψ(a)Ψ(b) in H1 ⊗ E");
        for a in 0..d {
            for b in 0..d {
                let lhs = psi.apply(self.product.get(a, b).unwrap());
                // (h⊗c)(h'⊗c') = ε(c) hh' ⊗ c'
                let mut rhs = Vector::zero();
                for (k, s) in psi.column(a).iter() {
                    let (h, c) = (k / d, k % d);
                    let ec = self.coalg.counit_of_basis(c);
                    if ec.is_zero() {
                        continue;
                    }
                    for (k2, t) in psi.column(b).iter() {
                        let (h2, c2) = (k2 / d, k2 % d);
                        let hh = self.product.get(h, h2).unwrap();
                        rhs.axpy(&(&(s * t) * ec), &hh.tensor(&Vector::basis(c2), d));
                    }
                }
                prod.record(|| vec![lab(a), lab(b)], &lhs, &rhs);
            }
        }
        rep.push(prod.finish());

        let mut orders = CheckBuilder::new("Ψ independent of the Sweedler leg order");
        for ord in [[0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            orders.record(|| vec![format!("{ord:?}")], &self.psi(ord), &psi);
        }
        rep.push(orders.finish());

        Ok(Suschkewitsch { h1, e, psi, report: rep })
    }
}

/// Result of decomposing a right Hopf algebra.
#[derive(Clone, Debug)]
pub struct Suschkewitsch {
    pub h1: Subspace,
    pub e: Subspace,
    pub psi: LinMap,
    pub report: Report,
}

impl Suschkewitsch {
    pub fn is_valid(&self) -> bool {
        self.report.all_passed()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.report.get(name)
    }
}

/// `{c : Σ c(1) ⊗ c(2)·c(3) = Δc}` for a possibly partial product.
pub(crate) fn generalized_idempotents(c: &Coalgebra, p: &Product) -> Option<Subspace> {
    let d = c.dim();
    let mut cols = Vec::with_capacity(d);
    for x in 0..d {
        let mut v = c.coproduct(&Vector::basis(x)).neg();
        for (t, s) in c.iterated(x, 3).iter() {
            v.axpy(s, &Vector::basis(t[0]).tensor(p.get(t[1], t[2])?, d));
        }
        cols.push(v);
    }
    Some(Subspace::span(d, LinMap::from_fn(d, d * d, |x| cols[x].clone()).kernel_basis()))
}
