use crate::env_hopf::LeibnizAugmentation;
use crate::exact_core::{monomials_up_to, LinMap, Monomial, Subspace, Vector};
use crate::leibniz::LeibnizAlgebra;
use crate::rack_bialg::AugmentedRackBialgebra;
use crate::report::{CheckBuilder, Report, Violation};
use crate::{Error, Result};

use super::dialgebra::{dialgebra_from_augmented, Dialgebra, HopfDialgebra, TensorDialgebra};

/// `Ũd(h) = (K1 ⊕ h) ⊗ U(h̄)_{≤cap}` with `h̄ = h/Q(h)`, built as `B⊗H` from
/// the degree-one augmented rack bialgebra of `h`.
#[derive(Clone, Debug)]
pub struct UniversalDialgebra {
    pub h: LeibnizAlgebra,
    pub aug: LeibnizAugmentation,
    pub arb: AugmentedRackBialgebra,
    pub td: TensorDialgebra,
    pub cap: usize,
}

pub fn universal_dialgebra(h: &LeibnizAlgebra, cap: usize) -> Result<UniversalDialgebra> {
    if cap == 0 {
        return Err(Error::DegreeCapExceeded { needed: 1, cap });
    }
    let aug = LeibnizAugmentation::new(h, &h.squares_ideal(), 1, cap)?;
    let arb = AugmentedRackBialgebra::from_leibniz(&aug, cap)?;
    let td = dialgebra_from_augmented(&arb, Some(cap))?;
    Ok(UniversalDialgebra { h: h.clone(), aug, arb, td, cap })
}

impl UniversalDialgebra {
    pub fn dialgebra(&self) -> &HopfDialgebra {
        &self.td.hd
    }

    /// `e_j ⊗ 1`.
    pub fn generator(&self, j: usize) -> Vector {
        let b = self.aug.sym.index_of(&Monomial::var(j)).expect("degree one");
        Vector::basis(self.td.index_of(b, 0).expect("degree one fits the cap"))
    }

    /// `Ud(h) = h ⊗ U(h̄)`.
    pub fn ud_part(&self) -> Subspace {
        let d = self.td.hd.dim();
        Subspace::span(d, (0..d).filter(|&i| self.td.pairs[i].0 != 0).map(Vector::basis))
    }

    /// `1 ⊗ U(h̄)`.
    pub fn bar_part(&self) -> Subspace {
        let d = self.td.hd.dim();
        Subspace::span(d, (0..d).filter(|&i| self.td.pairs[i].0 == 0).map(Vector::basis))
    }

    /// `Ũd(h) = Ud(h) ⊕ U(h̄)` with `Ud(h)` closed under both products and
    /// `U(h̄) = 1⊣Ũd(h)`.
    pub fn decomposition_check(&self) -> Report {
        let hd = &self.td.hd;
        let (ud, bar) = (self.ud_part(), self.bar_part());
        let mut rep = Report::new("Ũd(h) = Ud(h) ⊕ U(h̄)");
        let mut sum = CheckBuilder::new("direct sum");
        sum.record(Vec::new, &(ud.dim() + bar.dim(), ud.intersect(&bar).dim()), &(hd.dim(), 0));
        let mut closed = CheckBuilder::new("Ud(h) closed under ⊢ and ⊣");
        for x in ud.basis() {
            for y in ud.basis() {
                for z in [hd.dialg.vdash(x, y), hd.dialg.dashv(x, y)] {
                    match z {
                        Some(z) => closed.record_bool(Vec::new, ud.contains(&z), || format!("{z:?}")),
                        None => closed.skip(),
                    }
                }
            }
        }
        let mut image = CheckBuilder::new("U(h̄) = 1⊣Ũd(h)");
        image.record(Vec::new, &bar.equals(&hd.unit_image()), &true);
        for c in [sum, closed, image] {
            rep.push(c.finish());
        }
        rep
    }

    /// Whether `φ: h → A` satisfies `φ([x,y]) = φ(x)⊢φ(y) − φ(y)⊣φ(x)`.
    pub fn leibniz_morphism_check(&self, target: &Dialgebra, phi: &LinMap) -> Result<()> {
        let n = self.h.dim();
        for i in 0..n {
            for j in 0..n {
                let lhs = phi.apply(self.h.bracket_basis(i, j));
                let rhs = target
                    .bracket(phi.column(i), phi.column(j))
                    .ok_or_else(|| Error::BudgetExceeded("target bracket undefined".into()))?;
                if lhs != rhs {
                    return Err(Error::AxiomViolation(Box::new(Violation {
                        check: "φ is a Leibniz morphism".into(),
                        witness: vec![self.h.labels()[i].clone(), self.h.labels()[j].clone()],
                        lhs: format!("{lhs:?}"),
                        rhs: format!("{rhs:?}"),
                    })));
                }
            }
        }
        Ok(())
    }

    /// `φ̂(1⊗ξ_{i_1}...ξ_{i_m}) = ψ_1 ⊣ ... ⊣ ψ_m` and
    /// `φ̂(x⊗ξ_{i_1}...ξ_{i_m}) = φ(x) ⊣ ψ_1 ⊣ ... ⊣ ψ_m` with
    /// `ψ_i = 1⊣φ(x_i)` for lifts `x_i` of `ξ_i`.
    pub fn extend(&self, target: &Dialgebra, phi: &LinMap) -> Result<LinMap> {
        self.leibniz_morphism_check(target, phi)?;
        let g = &self.aug.g;
        let psi: Vec<Vector> = (0..g.dim())
            .map(|a| target.dashv(&target.unit, phi.column(g.lift_index(a))).expect("target is total"))
            .collect();
        let basis = monomials_up_to(g.dim(), self.cap);
        let hd = &self.td.hd;
        let mut cols = Vec::with_capacity(hd.dim());
        for &(b, u) in &self.td.pairs {
            let mut v = if b == 0 {
                target.unit.clone()
            } else {
                let x = self.aug.sym.monomial(b).indices()[0];
                phi.column(x).clone()
            };
            for &a in basis[u].indices() {
                v = target.dashv(&v, &psi[a]).expect("target is total");
            }
            cols.push(v);
        }
        LinMap::from_columns(hd.dim(), target.dim(), cols)
    }

    /// Builds `φ̂`, checks it is a dialgebra morphism extending `φ`, and checks
    /// that `1` and `h⊗1` generate `Ũd(h)` within the cap, which forces
    /// uniqueness.
    pub fn universal_property(&self, target: &Dialgebra, phi: &LinMap) -> Result<(LinMap, Report)> {
        let hat = self.extend(target, phi)?;
        let hd = &self.td.hd;
        let mut rep = hd.dialg.morphism_check(&hat, target);
        let mut ext = CheckBuilder::new("φ̂(x⊗1) = φ(x)");
        for j in 0..self.h.dim() {
            ext.record(|| vec![self.h.labels()[j].clone()], &hat.apply(&self.generator(j)), phi.column(j));
        }
        rep.push(ext.finish());
        let gens = std::iter::once(hd.unit().clone()).chain((0..self.h.dim()).map(|j| self.generator(j)));
        let span = hd.dialg.closure(gens);
        let mut gen = CheckBuilder::new("1 and h⊗1 generate Ũd(h)");
        gen.record(Vec::new, &span.dim(), &hd.dim());
        rep.push(gen.finish());
        Ok((hat, rep))
    }
}
