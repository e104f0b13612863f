use crate::coalgebra::{Coalgebra, Product};
use crate::env_hopf::{EnvelopingAlgebra, HopfAlgebra, LeibnizAugmentation};
use crate::exact_core::{monomials_up_to, LinMap, Monomial, Poly, Scalar, Vector};
use crate::report::{CheckBuilder, Report};
use crate::{Error, Result};

use super::{certify, AugmentedRack, RackBialgebra, RackCandidate};

/// Coalgebra `B` with a module-coalgebra action of a Hopf algebra `H` and a
/// coalgebra map `Φ: B → H` intertwining the action with the adjoint action.
/// `H` may be a degree truncation; identities are evaluated where defined.
#[derive(Clone, Debug)]
pub struct AugmentedRackBialgebra {
    pub b: Coalgebra,
    pub hopf: HopfAlgebra,
    pub phi: LinMap,
    /// `action.get(h, b) = h.b`.
    pub action: Product,
}

impl AugmentedRackBialgebra {
    /// `K[X]` over `K[G]` for an augmented rack.
    pub fn from_augmented_rack(x: &AugmentedRack) -> Self {
        let (ng, nx) = (x.group.order(), x.rack.size());
        let b = Coalgebra::set_like(x.rack.labels().to_vec(), x.rack.unit());
        let hopf = HopfAlgebra::group_algebra(&x.group);
        let phi = LinMap::from_fn(nx, ng, |i| Vector::basis(x.p[i]));
        let action = Product::from_fn(ng, nx, nx, |g, i| Some(Vector::basis(x.act(g, i))));
        AugmentedRackBialgebra { b, hopf, phi, action }
    }

    /// `S(h)_(k)` over `U(h/z)_{≤cap}` with `Φ = ω ∘ S(p)`; needs `cap >= k`.
    pub fn from_leibniz(aug: &LeibnizAugmentation, cap: usize) -> Result<Self> {
        let k = aug.sym.max_degree();
        if cap < k {
            return Err(Error::DegreeCapExceeded { needed: k, cap });
        }
        let env: EnvelopingAlgebra = aug.env.with_cap(cap);
        let hopf = env.truncated(cap)?;
        let basis = monomials_up_to(env.lie_dim(), cap);
        let index: std::collections::HashMap<Monomial, usize> =
            basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let d = aug.sym.dim();
        let mut cols = Vec::with_capacity(d);
        for a in 0..d {
            let u = aug.phi(&Vector::basis(a))?;
            cols.push(Vector::from_terms(u.iter().map(|(m, c)| (index[m], c.clone()))));
        }
        let phi = LinMap::from_columns(d, basis.len(), cols)?;
        let action = Product::from_fn(basis.len(), d, d, |u, v| {
            Some(aug.act(&Poly::term(basis[u].clone(), Scalar::one()), &Vector::basis(v)))
        });
        Ok(AugmentedRackBialgebra { b: aug.sym.carrier().clone(), hopf, phi, action })
    }

    pub fn act(&self, h: &Vector, v: &Vector) -> Option<Vector> {
        self.action.apply(h, v)
    }

    /// Induced product `a▷b = Φ(a).b`.
    pub fn rack_candidate(&self) -> Option<RackCandidate> {
        let d = self.b.dim();
        let mu = Product::from_fn(d, d, d, |a, b| self.act(self.phi.column(a), &Vector::basis(b)));
        mu.is_total().then(|| RackCandidate::new("induced by augmentation", self.b.clone(), mu))
    }

    pub fn rack(&self) -> Result<RackBialgebra> {
        let c = self
            .rack_candidate()
            .ok_or_else(|| Error::BudgetExceeded("Φ leaves the truncation of H".into()))?;
        certify(c)
    }

    /// Module, module-coalgebra and equivariance identities.
    pub fn validate(&self) -> Report {
        let (dh, db) = (self.hopf.dim(), self.b.dim());
        let mut rep = Report::new("augmented rack bialgebra");
        rep.extend(self.hopf.validate());
        rep.push(self.b.morphism_check(&self.phi, &self.hopf.coalg, "Φ is a coalgebra morphism"));
        let hl = |i: usize| self.hopf.coalg.label(i);
        let bl = |i: usize| self.b.label(i);
        let mut module = CheckBuilder::new("action is a module structure");
        let mut coalg = CheckBuilder::new("action is a coalgebra morphism");
        let mut unit = CheckBuilder::new("action fixes the unit");
        let mut equiv = CheckBuilder::new("Φ(h.b) = ad_h(Φ(b))");
        for v in 0..db {
            let ev = Vector::basis(v);
            module.record(|| vec!["1".into(), bl(v)], &self.act(self.hopf.unit(), &ev), &Some(ev.clone()));
        }
        for h in 0..dh {
            let eh = Vector::basis(h);
            unit.record(
                || vec![hl(h)],
                &self.act(&eh, self.b.unit()),
                &Some(self.b.unit().scale(self.hopf.coalg.counit_of_basis(h))),
            );
            for v in 0..db {
                let ev = Vector::basis(v);
                let Some(hv) = self.action.get(h, v) else {
                    coalg.skip();
                    continue;
                };
                let lhs = self.b.coproduct(hv);
                let mut rhs = Some(Vector::zero());
                for (h1, h2, s) in self.hopf.coalg.coproduct_terms(h) {
                    for (v1, v2, t) in self.b.coproduct_terms(v) {
                        rhs = rhs.and_then(|mut acc| {
                            let l = self.action.get(*h1, *v1)?;
                            let r = self.action.get(*h2, *v2)?;
                            acc.axpy(&(s * t), &l.tensor(r, db));
                            Some(acc)
                        });
                    }
                }
                match rhs {
                    Some(r) => coalg.record(|| vec![hl(h), bl(v)], &lhs, &r),
                    None => coalg.skip(),
                }
                coalg.record(
                    || vec![hl(h), bl(v)],
                    &self.b.counit(hv),
                    &(self.hopf.coalg.counit_of_basis(h) * self.b.counit_of_basis(v)),
                );
                match self.hopf.adjoint(&eh, self.phi.column(v)) {
                    Some(r) => equiv.record(|| vec![hl(h), bl(v)], &self.phi.apply(hv), &r),
                    None => equiv.skip(),
                }
                for h2 in 0..dh {
                    let Some(prod) = self.hopf.product.get(h, h2) else {
                        module.skip();
                        continue;
                    };
                    let lhs = self.act(prod, &ev);
                    let rhs = self.action.get(h2, v).and_then(|w| self.act(&eh, w));
                    match (lhs, rhs) {
                        (Some(l), Some(r)) => module.record(|| vec![hl(h), hl(h2), bl(v)], &l, &r),
                        _ => module.skip(),
                    }
                }
            }
        }
        rep.push(module.finish());
        rep.push(coalg.finish());
        rep.push(unit.finish());
        rep.push(equiv.finish());
        rep
    }

    /// With `ρ = (Φ⊗id)∘Δ`: `Σ (h.b)(−1) ⊗ (h.b)(0) = Σ h(1) b(−1) S(h(3)) ⊗ h(2).b(0)`
    /// on basis pairs, inside `H ⊗ B`.
    pub fn yetter_drinfeld_check(&self) -> crate::report::Check {
        let (dh, db) = (self.hopf.dim(), self.b.dim());
        let h = &self.hopf;
        let mut chk = CheckBuilder::new("Yetter–Drinfeld compatibility");
        let rho = |v: &Vector| -> Vector {
            let mut out = Vector::zero();
            for (i, c) in v.iter() {
                for (l, r, s) in self.b.coproduct_terms(i) {
                    out.axpy(&(c * s), &self.phi.column(*l).tensor(&Vector::basis(*r), db));
                }
            }
            out
        };
        for x in 0..dh {
            for v in 0..db {
                let Some(xv) = self.action.get(x, v) else {
                    chk.skip();
                    continue;
                };
                let lhs = rho(xv);
                let mut rhs = Some(Vector::zero());
                for (t, c) in h.coalg.iterated(x, 3).iter() {
                    for (b1, b2, s) in self.b.coproduct_terms(v) {
                        rhs = rhs.and_then(|mut acc| {
                            let left = h.mul(&h.mul(&Vector::basis(t[0]), self.phi.column(*b1))?, h.antipode.column(t[2]))?;
                            let right = self.action.get(t[1], *b2)?;
                            acc.axpy(&(c * s), &left.tensor(right, db));
                            Some(acc)
                        });
                    }
                }
                match rhs {
                    Some(r) => chk.record(|| vec![h.coalg.label(x), self.b.label(v)], &lhs, &r),
                    None => chk.skip(),
                }
            }
        }
        chk.finish()
    }
}
