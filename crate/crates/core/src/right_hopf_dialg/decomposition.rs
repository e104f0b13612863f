use crate::exact_core::{LinMap, Subspace, Vector};
use crate::report::{CheckBuilder, Report};
use crate::Result;

use super::dialgebra::HopfDialgebra;

/// `A ≅ E_A ⊗ H_A` for a Hopf dialgebra together with the transferred
/// structure, the associative quotient and the splitting of primitives.
#[derive(Clone, Debug)]
pub struct StructureDecomposition {
    /// `⊣`-generalized idempotents.
    pub e: Subspace,
    /// `H_A = 1⊣A`.
    pub h: Subspace,
    /// `Ψ(a) = Σ (a(1)⊣S(a(2))) ⊗ (1⊣a(3))` into `A⊗A`.
    pub psi: LinMap,
    /// Kernel of `a ↦ 1⊣a`.
    pub kernel: Subspace,
    /// Ideal generated by `a⊢b − a⊣b`.
    pub ideal: Subspace,
    pub report: Report,
}

impl StructureDecomposition {
    pub fn is_valid(&self) -> bool {
        self.report.all_passed()
    }
}

/// Applies `f(i, j)` to each basis tensor `e_i ⊗ e_j` of `t` (index `i*d + j`).
fn bilinear_map(t: &Vector, d: usize, mut f: impl FnMut(usize, usize) -> Option<Vector>) -> Option<Vector> {
    let mut out = Vector::zero();
    for (k, c) in t.iter() {
        out.axpy(c, &f(k / d, k % d)?);
    }
    Some(out)
}

pub fn structure_decomposition(hd: &HopfDialgebra) -> Result<StructureDecomposition> {
    let d = hd.dim();
    let c = &hd.coalg;
    let dl = &hd.dialg;
    let (vd, dv) = (&dl.vdash, &dl.dashv);
    let one = hd.unit();
    let lab = |i: usize| c.label(i);
    let e = hd.idempotents()?;
    let pi = hd.unit_dashv();
    let h = hd.unit_image();
    let mut rep = Report::new(format!("structure of {}", dl.name));

    let mut cols = Vec::with_capacity(d);
    for a in 0..d {
        let mut v = Some(Vector::zero());
        for (t, s) in c.iterated(a, 3).iter() {
            v = v.and_then(|mut acc| {
                let left = dv.apply(&Vector::basis(t[0]), hd.antipode.column(t[1]))?;
                acc.axpy(s, &left.tensor(pi.column(t[2]), d));
                Some(acc)
            });
        }
        cols.push(v.ok_or_else(|| crate::Error::BudgetExceeded("Ψ leaves the degree cap".into()))?);
    }
    let psi = LinMap::from_columns(d, d * d, cols)?;

    // on a capped carrier only `⊕_{i+j≤cap} E_i ⊗ H_j` is reached
    if dl.vdash.is_total() && dl.dashv.is_total() {
        let mut dims = CheckBuilder::new("dim A = dim E_A · dim H_A");
        dims.record(Vec::new, &d, &(e.dim() * h.dim()));
        rep.push(dims.finish());
    }
    let mut injective = CheckBuilder::new("Ψ is injective");
    injective.record(Vec::new, &psi.rank(), &d);
    rep.push(injective.finish());

    let eh = Subspace::span(d * d, e.basis().iter().flat_map(|x| h.basis().iter().map(move |y| x.tensor(y, d))));
    let mut lands = CheckBuilder::new("Ψ lands in E_A ⊗ H_A");
    let mut inv = CheckBuilder::new("c⊗h ↦ c⊣h inverts Ψ");
    for a in 0..d {
        let pa = psi.column(a);
        lands.record_bool(|| vec![lab(a)], eh.contains(pa), || format!("{pa:?}"));
        match bilinear_map(pa, d, |i, j| dv.get(i, j).cloned()) {
            Some(back) => inv.record(|| vec![lab(a)], &back, &Vector::basis(a)),
            None => inv.skip(),
        }
    }
    for x in e.basis() {
        for y in h.basis() {
            match dl.dashv(x, y) {
                Some(xy) => inv.record(Vec::new, &psi.apply(&xy), &x.tensor(y, d)),
                None => inv.skip(),
            }
        }
    }
    rep.push(lands.finish());
    rep.push(inv.finish());

    // rack action `a▷b = Σ (a(1)⊢b)⊣S(a(2))` for the transferred ⊢′
    let rack = hd.rack_product();
    let mut tv = CheckBuilder::new("(c⊗h)⊢′(c′⊗h′) = ε(c) Σ (h(1)▷c′)⊗(h(2)⊣h′)");
    let mut td = CheckBuilder::new("(c⊗h)⊣′(c′⊗h′) = ε(c′) c⊗(h⊣h′)");
    for x in 0..d {
        for y in 0..d {
            let w = || vec![lab(x), lab(y)];
            let (px, py) = (psi.column(x), psi.column(y));
            let lhs_v = vd.get(x, y).map(|v| psi.apply(v));
            let rhs_v = bilinear_map(px, d, |ci, hi| {
                let ec = c.counit_of_basis(ci);
                if ec.is_zero() {
                    return Some(Vector::zero());
                }
                bilinear_map(py, d, |cj, hj| {
                    let mut acc = Vector::zero();
                    for (h1, h2, s) in c.coproduct_terms(hi) {
                        acc.axpy(s, &rack.get(*h1, cj)?.tensor(dv.get(*h2, hj)?, d));
                    }
                    Some(acc.scale(ec))
                })
            });
            match (lhs_v, rhs_v) {
                (Some(l), Some(r)) => tv.record(w, &l, &r),
                _ => tv.skip(),
            }
            let lhs_d = dv.get(x, y).map(|v| psi.apply(v));
            let rhs_d = bilinear_map(px, d, |ci, hi| {
                bilinear_map(py, d, |cj, hj| {
                    Some(Vector::basis(ci).tensor(dv.get(hi, hj)?, d).scale(c.counit_of_basis(cj)))
                })
            });
            match (lhs_d, rhs_d) {
                (Some(l), Some(r)) => td.record(w, &l, &r),
                _ => td.skip(),
            }
        }
    }
    let mut ts = CheckBuilder::new("S′(c⊗h) = ε(c) 1⊗S(h)");
    for x in 0..d {
        let lhs = psi.apply(hd.antipode.column(x));
        let rhs = bilinear_map(psi.column(x), d, |ci, hi| {
            Some(one.tensor(hd.antipode.column(hi), d).scale(c.counit_of_basis(ci)))
        })
        .expect("total");
        ts.record(|| vec![lab(x)], &lhs, &rhs);
    }
    rep.push(tv.finish());
    rep.push(td.finish());
    rep.push(ts.finish());

    // associative quotient through `π = 1⊣(−)`
    let mut mult = CheckBuilder::new("1⊣(−) is multiplicative onto H_A");
    for x in 0..d {
        for y in 0..d {
            let w = || vec![lab(x), lab(y)];
            let prod = dl.dashv(pi.column(x), pi.column(y));
            for p in [vd, dv] {
                match (p.get(x, y), &prod) {
                    (Some(xy), Some(r)) => mult.record(w, &pi.apply(xy), r),
                    _ => mult.skip(),
                }
            }
        }
    }
    let image = Subspace::span(d, pi.columns().iter().cloned());
    mult.record(Vec::new, &image.equals(&h), &true);
    rep.push(mult.finish());

    let kernel = Subspace::span(d, pi.kernel_basis());
    let mut ideal = Subspace::new(d);
    for x in 0..d {
        for y in 0..d {
            if let (Some(a), Some(b)) = (vd.get(x, y), dv.get(x, y)) {
                ideal.push(a.sub(b));
            }
        }
    }
    let mut frontier = ideal.basis().to_vec();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in &frontier {
            for k in 0..d {
                let ek = Vector::basis(k);
                for p in [vd, dv] {
                    for z in [p.apply(&ek, v), p.apply(v, &ek)].into_iter().flatten() {
                        if ideal.push(z.clone()) {
                            next.push(z);
                        }
                    }
                }
            }
        }
        frontier = next;
    }
    let mut ker = CheckBuilder::new("ker(1⊣−) is the ideal generated by a⊢b − a⊣b");
    ker.record(Vec::new, &(kernel.dim(), kernel.equals(&ideal)), &(ideal.dim(), true));
    rep.push(ker.finish());

    // Covez splitting of the primitives
    let prim = hd.primitives();
    let z = prim.intersect(&kernel);
    let lie = prim.intersect(&h);
    let mut split = CheckBuilder::new("Prim = (Prim ∩ ker) ⊕ (Prim ∩ H_A)");
    split.record(Vec::new, &(z.dim() + lie.dim(), z.intersect(&lie).dim()), &(prim.dim(), 0));
    let mut center = CheckBuilder::new("Prim ∩ ker lies in the left center");
    let mut sub = CheckBuilder::new("[Prim ∩ H_A, Prim ∩ H_A] ⊆ Prim ∩ H_A");
    let mut act = CheckBuilder::new("[Prim ∩ H_A, Prim ∩ ker] ⊆ Prim ∩ ker");
    for zz in z.basis() {
        for p in prim.basis() {
            match dl.bracket(zz, p) {
                Some(b) => center.record(Vec::new, &b, &Vector::zero()),
                None => center.skip(),
            }
        }
    }
    for xi in lie.basis() {
        for eta in lie.basis() {
            match dl.bracket(xi, eta) {
                Some(b) => sub.record_bool(Vec::new, lie.contains(&b), || format!("{b:?}")),
                None => sub.skip(),
            }
        }
        for zz in z.basis() {
            match dl.bracket(xi, zz) {
                Some(b) => act.record_bool(Vec::new, z.contains(&b), || format!("{b:?}")),
                None => act.skip(),
            }
        }
    }
    for ch in [split, center, sub, act] {
        rep.push(ch.finish());
    }

    Ok(StructureDecomposition { e, h, psi, kernel, ideal, report: rep })
}
