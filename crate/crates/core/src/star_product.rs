//! The rack star product `▷_ℏ` on polynomial functions on `h*` with
//! coefficients in `Q[ℏ]/(ℏ^N)`, the operators `ãd_i`, the hat morphism from
//! `S(h)` and exact order-by-order checks on exponential functions.

use serde::{Deserialize, Serialize};

use crate::exact_core::{Coeff, LinMap, Monomial, Poly, Scalar, SeriesScalar, SparseVec, Vector};
use crate::leibniz::LeibnizAlgebra;
use crate::rack_bialg::uar_infinity;
use crate::report::{Check, CheckBuilder, Report, Violation};
use crate::symcoalg::SymCoalgebra;
use crate::Result;

/// Polynomial in `α_1..α_n` with truncated-series coefficients.
pub type PolyFunction = Poly<SeriesScalar>;

/// Vector of `h` with truncated-series coordinates.
pub type SeriesVector = SparseVec<SeriesScalar>;

/// Embeds a rational polynomial as a function with constant-series coefficients.
pub fn lift(p: &Poly<Scalar>, order: usize) -> PolyFunction {
    let mut out = PolyFunction::zero();
    for (m, c) in p.iter() {
        out.add_term(m.clone(), SeriesScalar::constant(c.clone(), order));
    }
    out
}

/// Coefficient of `ℏ^r` as a rational polynomial.
pub fn hbar_coefficient(f: &PolyFunction, r: usize) -> Poly<Scalar> {
    let mut out = Poly::zero();
    for (m, c) in f.iter() {
        out.add_term(m.clone(), c.coeff(r));
    }
    out
}

pub fn lift_vector(x: &Vector, order: usize) -> SeriesVector {
    SeriesVector::from_terms(x.iter().map(|(i, c)| (i, SeriesScalar::constant(c.clone(), order))))
}

/// Hat morphism `Ψ: S(h)_(k) → K[α]`: `x_1•...•x_r ↦ x̂_1 ⋯ x̂_r`. In the
/// monomial basis it sends `e_I` to `α_I`.
pub fn hat(sym: &SymCoalgebra, v: &Vector, order: usize) -> PolyFunction {
    lift(&sym.to_poly(v), order)
}

/// `x̂` for a series vector `x`: the linear function `Σ x_j α_j`.
pub fn linear_function(x: &SeriesVector) -> PolyFunction {
    let mut out = PolyFunction::zero();
    for (j, c) in x.iter() {
        out.add_term(Monomial::var(j), c.clone());
    }
    out
}

/// `(ãd_i f) = Σ_j ∂f/∂α_j · [e_i,e_j]^`, a degree-preserving derivation.
pub fn ad_tilde(h: &LeibnizAlgebra, i: usize, f: &PolyFunction) -> PolyFunction {
    let mut out = PolyFunction::zero();
    for j in 0..h.dim() {
        let b = h.bracket_basis(i, j);
        if b.is_zero() {
            continue;
        }
        let df = f.derivative(j);
        if df.is_zero() {
            continue;
        }
        let lin = Poly::from_vector(b);
        out = out.add(&df.map_monomials(|m| {
            let mut p = PolyFunction::zero();
            for (n, c) in lin.iter() {
                p.add_term(m.mul(n), SeriesScalar::constant(c.clone(), series_order(f)));
            }
            p
        }));
    }
    out
}

fn series_order(f: &PolyFunction) -> usize {
    f.iter().next().map_or(1, |(_, c)| c.order())
}

/// `f ▷_ℏ g = Σ_r (ℏ^r/r!) Σ_{i_1..i_r} ∂^r f/∂α_{i_1}..∂α_{i_r}(0) ·
/// (ãd_{i_1}∘...∘ãd_{i_r})(g)` mod `ℏ^order`. Only `r ≤ min(deg f, order−1)`
/// contribute.
pub fn star(h: &LeibnizAlgebra, f: &PolyFunction, g: &PolyFunction, order: usize) -> PolyFunction {
    let mut out = PolyFunction::zero();
    star_rec(h, f, g, 0, order, &mut out);
    out
}

fn star_rec(h: &LeibnizAlgebra, fd: &PolyFunction, gd: &PolyFunction, r: usize, order: usize, out: &mut PolyFunction) {
    if fd.is_zero() || gd.is_zero() || r >= order {
        return;
    }
    if let Some(c0) = fd.constant_term() {
        let weight = SeriesScalar::monomial(Scalar::factorial(r).inverse().expect("nonzero"), r, order);
        *out = out.add(&gd.mul_coeff(&Coeff::mul(c0, &weight)));
    }
    for i in 0..h.dim() {
        let d = fd.derivative(i);
        if d.is_zero() {
            continue;
        }
        star_rec(h, &d, &ad_tilde(h, i, gd), r + 1, order, out);
    }
}

/// `Σ_{m ≤ degree} x̂^m / m!` mod `ℏ^order`; the order is explicit because
/// `x` may be zero.
pub fn exp_poly(x: &SeriesVector, degree: usize, order: usize) -> PolyFunction {
    let lin = linear_function(x);
    let mut out = lift(&Poly::term(Monomial::one(), Scalar::one()), order);
    let mut power = out.clone();
    for m in 1..=degree {
        power = power.mul_truncated(&lin, Some(degree)).scale(&Scalar::ratio(1, m as i64));
        out = out.add(&power);
    }
    out
}

/// `[x, y]` for series vectors.
pub fn series_bracket(h: &LeibnizAlgebra, x: &SeriesVector, y: &SeriesVector) -> SeriesVector {
    let mut out = SeriesVector::zero();
    for (i, a) in x.iter() {
        for (j, b) in y.iter() {
            let ab = Coeff::mul(a, b);
            for (k, c) in h.bracket_basis(i, j).iter() {
                out.add_term(k, ab.scale(c));
            }
        }
    }
    out
}

/// `x ▶_ℏ y = e^{ℏ ad_x}(y) = Σ_r (ℏ^r/r!) ad_x^r(y)` mod `ℏ^order`.
pub fn lie_rack(h: &LeibnizAlgebra, x: &SeriesVector, y: &SeriesVector, order: usize) -> SeriesVector {
    let mut out = y.clone();
    let mut term = y.clone();
    for r in 1..order {
        term = series_bracket(h, x, &term);
        if term.is_zero() {
            break;
        }
        let w = SeriesScalar::monomial(Scalar::factorial(r).inverse().expect("nonzero"), r, order);
        out.axpy(&w, &term);
    }
    out
}

/// Both sides of `e^{x̂} ▷_ℏ e^{ŷ} = e^{(x▶_ℏ y)^}` restricted to
/// `α`-degree `≤ window`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExpComparison {
    pub order: usize,
    pub window: usize,
    pub lhs: PolyFunction,
    pub rhs: PolyFunction,
    pub check: Check,
}

/// `e^{x̂} ▷_ℏ g` with `e^{x̂}` expanded to degree `order − 1`; higher jets
/// only contribute at `ℏ^{≥ order}`.
pub fn star_exp_left(h: &LeibnizAlgebra, x: &SeriesVector, g: &PolyFunction, order: usize) -> PolyFunction {
    star(h, &exp_poly(x, order - 1, order), g, order)
}

/// `e^{x̂} ▷_ℏ e^{ŷ}` mod `ℏ^order`, in `α`-degree `≤ order`.
pub fn star_exp(h: &LeibnizAlgebra, x: &Vector, y: &Vector, order: usize) -> PolyFunction {
    let (xs, ys) = (lift_vector(x, order), lift_vector(y, order));
    star_exp_left(h, &xs, &exp_poly(&ys, order, order), order)
}

/// Compares two functions coefficientwise and reports the first failing
/// `ℏ`-order with both coefficient polynomials.
pub fn compare_by_order(name: &str, lhs: &PolyFunction, rhs: &PolyFunction, order: usize, witness: Vec<String>) -> Check {
    for r in 0..order {
        let (l, rr) = (hbar_coefficient(lhs, r), hbar_coefficient(rhs, r));
        if l != rr {
            let mut w = witness;
            w.push(format!("h^{r}"));
            return Check::fail(name, r + 1, Violation { check: name.into(), witness: w, lhs: format!("{l:?}"), rhs: format!("{rr:?}") });
        }
    }
    Check::pass(name, order)
}

fn vec_label(x: &Vector) -> String {
    format!("{x:?}")
}

/// Exponential identity `e^{x̂} ▷_ℏ e^{ŷ} = e^{(x▶_ℏ y)^}` mod `ℏ^order`.
pub fn exp_identity(h: &LeibnizAlgebra, x: &Vector, y: &Vector, order: usize) -> ExpComparison {
    let window = order;
    let lhs = star_exp(h, x, y, order);
    let rhs = exp_poly(&lie_rack(h, &lift_vector(x, order), &lift_vector(y, order), order), window, order);
    let check = compare_by_order("e^x ▷ e^y = e^(x▶y)", &lhs, &rhs, order, vec![vec_label(x), vec_label(y)]);
    ExpComparison { order, window, lhs, rhs, check }
}

/// Self-distributivity of `▷_ℏ` on exponentials, at the `▶_ℏ` level and
/// cross-checked on the polynomial truncations.
pub fn selfdist_check(h: &LeibnizAlgebra, x: &Vector, y: &Vector, z: &Vector, order: usize) -> Report {
    let w = || vec![vec_label(x), vec_label(y), vec_label(z)];
    let (xs, ys, zs) = (lift_vector(x, order), lift_vector(y, order), lift_vector(z, order));
    let mut rep = Report::new("self-distributivity of ▷_ℏ on exponentials");

    let lhs = lie_rack(h, &xs, &lie_rack(h, &ys, &zs, order), order);
    let rhs = lie_rack(h, &lie_rack(h, &xs, &ys, order), &lie_rack(h, &xs, &zs, order), order);
    rep.push(compare_by_order("x▶(y▶z) = (x▶y)▶(x▶z)", &linear_function(&lhs), &linear_function(&rhs), order, w()));

    // function level: the α-degree window `order` is closed under ▷_ℏ
    let window = order;
    let (ex, ey, ez) = (exp_poly(&xs, window, order), exp_poly(&ys, window, order), exp_poly(&zs, window, order));
    let yz = star(h, &ey, &ez, order);
    let f_lhs = star(h, &ex, &yz, order);
    let xy = star(h, &ex, &ey, order);
    let xz = star(h, &ex, &ez, order);
    let f_rhs = star(h, &xy, &xz, order);
    rep.push(compare_by_order("e^x▷(e^y▷e^z) = (e^x▷e^y)▷(e^x▷e^z)", &f_lhs, &f_rhs, order, w()));
    rep.push(compare_by_order("e^x▷(e^y▷e^z) = e^(x▶(y▶z))", &f_lhs, &exp_poly(&lhs, window, order), order, w()));
    rep
}

/// The hat morphism is multiplicative, injective and intertwines
/// `ad^s_{e_i}` with `ãd_i` on `S(h)_(k)`.
pub fn hat_checks(h: &LeibnizAlgebra, k: usize) -> Report {
    let sym = SymCoalgebra::new(h.dim(), k);
    let d = sym.dim();
    let order = 1;
    let mut rep = Report::new(format!("hat morphism on S(h)_({k})"));
    let hats: Vec<PolyFunction> = (0..d).map(|a| hat(&sym, &Vector::basis(a), order)).collect();
    let lab = |i: usize| sym.carrier().label(i).to_string();

    let mut mult = CheckBuilder::new("Ψ(a•b) = Ψ(a)Ψ(b)");
    for a in 0..d {
        for b in 0..d {
            match sym.sym_product(&Vector::basis(a), &Vector::basis(b)) {
                Ok(ab) => mult.record(|| vec![lab(a), lab(b)], &hat(&sym, &ab, order), &hats[a].mul(&hats[b])),
                Err(_) => mult.skip(),
            }
        }
    }
    rep.push(mult.finish());

    let mut inj = CheckBuilder::new("Ψ is injective");
    let images: std::collections::BTreeSet<Vec<Monomial>> =
        hats.iter().map(|p| p.iter().map(|(m, _)| m.clone()).collect()).collect();
    inj.record(Vec::new, &images.len(), &d);
    rep.push(inj.finish());

    let mut inter = CheckBuilder::new("Ψ(ad^s_{e_i} a) = ãd_i Ψ(a)");
    for i in 0..h.dim() {
        let ad = sym.derivation(&h.ad_basis(i));
        for a in 0..d {
            inter.record(|| vec![format!("e{}", i + 1), lab(a)], &hat(&sym, ad.column(a), order), &ad_tilde(h, i, &hats[a]));
        }
    }
    rep.push(inter.finish());
    rep
}

/// `Ψ(x_1•...•x_r) ▷_ℏ Ψ(b) = ℏ^r Ψ((x_1•...•x_r)▷b)` on all basis pairs of
/// `S(h)_(k)`, against the product of `UAR^∞(h)_(k)`.
pub fn lemma_monomial_action(h: &LeibnizAlgebra, k: usize) -> Result<Check> {
    let (rb, aug) = uar_infinity(h, k, &h.squares_ideal())?;
    let sym = &aug.sym;
    let order = k + 1;
    let d = sym.dim();
    let mut ch = CheckBuilder::new("Ψ(x_1•..•x_r) ▷_ℏ Ψ(b) = ℏ^r Ψ((x_1•..•x_r)▷b)");
    for a in 0..d {
        let r = sym.monomial(a).degree();
        let fa = hat(sym, &Vector::basis(a), order);
        for b in 0..d {
            let lhs = star(h, &fa, &hat(sym, &Vector::basis(b), order), order);
            let act = sym.to_poly(rb.op_basis(a, b));
            let mut rhs = PolyFunction::zero();
            for (m, c) in act.iter() {
                rhs.add_term(m.clone(), SeriesScalar::monomial(c.clone(), r, order));
            }
            ch.record(|| vec![sym.carrier().label(a).to_string(), sym.carrier().label(b).to_string()], &lhs, &rhs);
        }
    }
    Ok(ch.finish())
}

/// First-order term `μ_1` of `▷_ℏ` transported to `S(h)_(k)`, as a map
/// `S(h)_(k)^{⊗2} → S(h)_(k)` (index `a*d + b`).
pub fn first_order_term(h: &LeibnizAlgebra, k: usize) -> Result<LinMap> {
    let sym = SymCoalgebra::new(h.dim(), k);
    let d = sym.dim();
    let order = 2;
    let hats: Vec<PolyFunction> = (0..d).map(|a| hat(&sym, &Vector::basis(a), order)).collect();
    let mut cols = Vec::with_capacity(d * d);
    for a in 0..d {
        for b in 0..d {
            let s = star(h, &hats[a], &hats[b], order);
            cols.push(sym.from_poly(&hbar_coefficient(&s, 1))?);
        }
    }
    LinMap::from_columns(d * d, d, cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn affine() -> LeibnizAlgebra {
        // [e1,e2] = e2, [e2,e1] = −e2
        LeibnizAlgebra::new(2, &[((0, 1), Vector::basis(1)), ((1, 0), Vector::basis(1).neg())]).unwrap()
    }

    fn alpha(i: usize, order: usize) -> PolyFunction {
        PolyFunction::term(Monomial::var(i), SeriesScalar::one(order))
    }

    #[test]
    fn ad_tilde_on_affine() {
        let h = affine();
        assert_eq!(ad_tilde(&h, 0, &alpha(1, 3)), alpha(1, 3));
        assert!(ad_tilde(&LeibnizAlgebra::abelian(2), 0, &alpha(1, 3)).is_zero());
    }

    #[test]
    fn linear_star_is_bracket() {
        let h = affine();
        let s = star(&h, &alpha(0, 3), &alpha(1, 3), 3);
        let expected = PolyFunction::term(Monomial::var(1), SeriesScalar::monomial(Scalar::one(), 1, 3));
        assert_eq!(s, expected);
    }

    #[test]
    fn constant_star_is_scaling() {
        let h = affine();
        let c = PolyFunction::term(Monomial::one(), SeriesScalar::constant(Scalar::from_int(3), 4));
        let g = alpha(0, 4).add(&alpha(1, 4).mul(&alpha(1, 4)));
        assert_eq!(star(&h, &c, &g, 4), g.mul_coeff(&SeriesScalar::constant(Scalar::from_int(3), 4)));
    }

    #[test]
    fn exp_identity_affine() {
        let h = affine();
        let c = exp_identity(&h, &Vector::basis(0), &Vector::basis(1), 6);
        assert!(c.check.passed, "{:?}", c.check.violation);
        // e^{ℏ ad_{e1}}(e2) = e^ℏ e2
        let v = lie_rack(&h, &lift_vector(&Vector::basis(0), 6), &lift_vector(&Vector::basis(1), 6), 6);
        let e = crate::exact_core::series_exp(&SeriesScalar::monomial(Scalar::one(), 1, 6)).unwrap();
        assert_eq!(v, SeriesVector::singleton(1, e));
    }

    #[test]
    fn lemma_and_hat_on_square_bracket() {
        let h = LeibnizAlgebra::new(2, &[((0, 0), Vector::basis(1))]).unwrap();
        assert!(lemma_monomial_action(&h, 3).unwrap().passed);
        assert!(hat_checks(&h, 3).all_passed());
        let x = Vector::from_terms([(0, Scalar::from_int(2)), (1, Scalar::from_int(-1))]);
        let rep = selfdist_check(&h, &x, &Vector::basis(0), &Vector::basis(1), 5);
        assert!(rep.all_passed(), "{:?}", rep.failed());
    }
}
