//! Cocommutative Hopf algebras: group algebras of finite groups and universal
//! enveloping algebras of Lie algebras in a PBW basis, with the module action
//! of `U(h/z)` on `S(h)_(k)` and the map `Φ = ω ∘ S(p)`.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::coalgebra::{convolution, unit_counit, Coalgebra, Product};
use crate::exact_core::{monomials_up_to, LinMap, Monomial, Poly, Scalar, Vector};
use crate::leibniz::{LeibnizAlgebra, QuotientLie};
use crate::report::{CheckBuilder, Report};
use crate::symcoalg::{takeuchi_inverse, SymCoalgebra};
use crate::{Error, Result};

/// Finite group given by a multiplication table on labelled elements.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    table: Vec<usize>,
    unit: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, associativity, the unit and inverses.
    pub fn new(labels: Vec<String>, table: Vec<usize>, unit: usize) -> Result<Self> {
        let n = labels.len();
        if table.len() != n * n || unit >= n || table.iter().any(|&x| x >= n) {
            return Err(Error::Schema("group table has the wrong shape".into()));
        }
        let m = |a: usize, b: usize| table[a * n + b];
        for a in 0..n {
            if m(unit, a) != a || m(a, unit) != a {
                return Err(Error::Schema(format!("{} is not a two-sided unit", labels[unit])));
            }
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(Error::Schema(format!(
                            "group table not associative at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| m(a, b) == unit)
                .ok_or_else(|| Error::Schema(format!("{} has no inverse", labels[a])))?;
            inverse.push(inv);
        }
        Ok(FiniteGroup { labels, table, unit, inverse })
    }

    /// Cyclic group `Z_n` with elements `0..n`.
    pub fn cyclic(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        FiniteGroup::new(labels, table, 0).expect("cyclic group")
    }

    /// Symmetric group on `m` letters; elements are permutations in one-line
    /// notation, composed as functions `(a·b)(i) = a(b(i))`.
    pub fn symmetric(m: usize) -> Self {
        let perms = permutations(m);
        let labels: Vec<String> =
            perms.iter().map(|p| p.iter().map(|x| (x + 1).to_string()).collect::<String>()).collect();
        let index: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let n = perms.len();
        let mut table = vec![0; n * n];
        for (a, pa) in perms.iter().enumerate() {
            for (b, pb) in perms.iter().enumerate() {
                let c: Vec<usize> = (0..m).map(|i| pa[pb[i]]).collect();
                table[a * n + b] = index[&c];
            }
        }
        let unit = index[&(0..m).collect::<Vec<_>>()];
        FiniteGroup::new(labels, table, unit).expect("symmetric group")
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn product(&self, o: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (self.order(), o.order());
        let labels = (0..n * m).map(|k| format!("({},{})", self.labels[k / m], o.labels[k % m])).collect();
        let table = (0..n * m * n * m)
            .map(|t| {
                let (x, y) = (t / (n * m), t % (n * m));
                self.mul(x / m, y / m) * m + o.mul(x % m, y % m)
            })
            .collect();
        FiniteGroup::new(labels, table, self.unit * m + o.unit).expect("product group")
    }
}

/// All permutations of `0..m` in lexicographic order.
pub fn permutations(m: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

/// Hopf algebra on a finite basis. The product may be partial: `None`
/// entries lie beyond a degree cap of a truncated carrier.
#[derive(Clone, Debug)]
pub struct HopfAlgebra {
    pub coalg: Coalgebra,
    pub product: Product,
    pub antipode: LinMap,
}

impl HopfAlgebra {
    /// Group algebra `K[G]` with set-like basis and `S(g) = g⁻¹`.
    pub fn group_algebra(g: &FiniteGroup) -> Self {
        let n = g.order();
        let coalg = Coalgebra::set_like(g.labels().to_vec(), g.unit());
        let product = Product::from_fn(n, n, n, |a, b| Some(Vector::basis(g.mul(a, b))));
        let antipode = LinMap::from_fn(n, n, |a| Vector::basis(g.inv(a)));
        HopfAlgebra { coalg, product, antipode }
    }

    pub fn dim(&self) -> usize {
        self.coalg.dim()
    }

    pub fn unit(&self) -> &Vector {
        self.coalg.unit()
    }

    pub fn mul(&self, a: &Vector, b: &Vector) -> Option<Vector> {
        self.product.apply(a, b)
    }

    /// `ad_h(u) = Σ h(1) u S(h(2))`.
    pub fn adjoint(&self, h: &Vector, u: &Vector) -> Option<Vector> {
        let mut out = Vector::zero();
        for (i, c) in h.iter() {
            for (l, r, s) in self.coalg.coproduct_terms(i) {
                let t = self.mul(&self.mul(&Vector::basis(*l), u)?, self.antipode.column(*r))?;
                out.axpy(&(c * s), &t);
            }
        }
        Some(out)
    }

    /// Bialgebra and antipode axioms, evaluated where the products are defined.
    pub fn validate(&self) -> Report {
        let d = self.dim();
        let mut rep = self.coalg.validate();
        rep.subject = "Hopf algebra".into();
        let unit = self.unit().clone();
        let mut assoc = CheckBuilder::new("associativity");
        let mut unital = CheckBuilder::new("unit");
        let mut morph = CheckBuilder::new("product is a coalgebra morphism");
        let mut anti = CheckBuilder::new("antipode reverses products");
        for a in 0..d {
            let ea = Vector::basis(a);
            unital.record(|| vec![self.coalg.label(a)], &self.mul(&unit, &ea), &Some(ea.clone()));
            unital.record(|| vec![self.coalg.label(a)], &self.mul(&ea, &unit), &Some(ea.clone()));
            for b in 0..d {
                let eb = Vector::basis(b);
                let Some(ab) = self.product.get(a, b).cloned() else {
                    assoc.skip();
                    morph.skip();
                    continue;
                };
                let lhs = self.coalg.coproduct(&ab);
                let mut rhs = Some(Vector::zero());
                for (a1, a2, s) in self.coalg.coproduct_terms(a) {
                    for (b1, b2, t) in self.coalg.coproduct_terms(b) {
                        rhs = rhs.and_then(|mut acc| {
                            let l = self.product.get(*a1, *b1)?;
                            let r = self.product.get(*a2, *b2)?;
                            acc.axpy(&(s * t), &l.tensor(r, d));
                            Some(acc)
                        });
                    }
                }
                match rhs {
                    Some(r) => morph.record(|| vec![self.coalg.label(a), self.coalg.label(b)], &lhs, &r),
                    None => morph.skip(),
                }
                let sab = self.antipode.apply(&ab);
                match self.mul(self.antipode.column(b), self.antipode.column(a)) {
                    Some(r) => anti.record(|| vec![self.coalg.label(a), self.coalg.label(b)], &sab, &r),
                    None => anti.skip(),
                }
                for c in 0..d {
                    let ec = Vector::basis(c);
                    let l = self.mul(&ab, &ec);
                    let r = self.mul(&ea, &self.mul(&eb, &ec).unwrap_or_default());
                    match (l, r, self.product.get(b, c)) {
                        (Some(l), Some(r), Some(_)) => assoc.record(
                            || vec![self.coalg.label(a), self.coalg.label(b), self.coalg.label(c)],
                            &l,
                            &r,
                        ),
                        _ => assoc.skip(),
                    }
                }
            }
        }
        rep.push(assoc.finish());
        rep.push(unital.finish());
        rep.push(morph.finish());
        rep.push(anti.finish());
        let ue = unit_counit(&self.coalg, &unit, d);
        let id = LinMap::identity(d);
        let mut sides = CheckBuilder::new("antipode convolution identities");
        let left = convolution(&self.coalg, &self.antipode, &id, &self.product);
        let right = convolution(&self.coalg, &id, &self.antipode, &self.product);
        sides.record(|| vec!["S*id".into()], &left, &Some(ue.clone()));
        sides.record(|| vec!["id*S".into()], &right, &Some(ue));
        rep.push(sides.finish());
        rep
    }

    /// Antipode recomputed as the convolution inverse of the identity.
    pub fn antipode_by_convolution(&self, max_terms: usize) -> Result<LinMap> {
        takeuchi_inverse(&self.coalg, &LinMap::identity(self.dim()), &self.product, self.unit(), max_terms)
    }
}

/// Universal enveloping algebra of a Lie algebra with structure table
/// `[ξ_a, ξ_b] = table[a * dim + b]`, in the PBW basis of sorted monomials.
/// Products whose words exceed `cap` letters fail with `DegreeCapExceeded`.
#[derive(Debug)]
pub struct EnvelopingAlgebra {
    dim: usize,
    table: Vec<Vector>,
    cap: usize,
    memo: RwLock<HashMap<Vec<usize>, Poly<Scalar>>>,
}

/// Element of `U(g)` as a polynomial in PBW monomials.
pub type UElem = Poly<Scalar>;

impl Clone for EnvelopingAlgebra {
    fn clone(&self) -> Self {
        EnvelopingAlgebra { dim: self.dim, table: self.table.clone(), cap: self.cap, memo: RwLock::new(HashMap::new()) }
    }
}

impl EnvelopingAlgebra {
    pub fn new(dim: usize, table: Vec<Vector>, cap: usize) -> Self {
        assert_eq!(table.len(), dim * dim);
        EnvelopingAlgebra { dim, table, cap, memo: RwLock::new(HashMap::new()) }
    }

    pub fn of_quotient(g: &QuotientLie, cap: usize) -> Self {
        let m = g.dim();
        let table = (0..m * m).map(|k| g.bracket_basis(k / m, k % m).clone()).collect();
        Self::new(m, table, cap)
    }

    /// Enveloping algebra of a Leibniz algebra that is already Lie.
    pub fn of_lie(h: &LeibnizAlgebra, cap: usize) -> Result<Self> {
        if !h.is_lie() {
            return Err(Error::Schema("bracket is not antisymmetric".into()));
        }
        let n = h.dim();
        Ok(Self::new(n, (0..n * n).map(|k| h.bracket_basis(k / n, k % n).clone()).collect(), cap))
    }

    pub fn lie_dim(&self) -> usize {
        self.dim
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn with_cap(&self, cap: usize) -> Self {
        Self::new(self.dim, self.table.clone(), cap)
    }

    pub fn one() -> UElem {
        Poly::term(Monomial::one(), Scalar::one())
    }

    pub fn generator(a: usize) -> UElem {
        Poly::term(Monomial::var(a), Scalar::one())
    }

    /// Rewrites a word in the generators into the PBW basis, swapping the
    /// leftmost inversion `ξη → ηξ + [ξ,η]` until sorted.
    pub fn straighten(&self, word: &[usize]) -> Result<UElem> {
        if word.len() > self.cap {
            return Err(Error::DegreeCapExceeded { needed: word.len(), cap: self.cap });
        }
        let Some(i) = (0..word.len().saturating_sub(1)).find(|&i| word[i] > word[i + 1]) else {
            return Ok(Poly::term(Monomial::from_indices(word.to_vec()), Scalar::one()));
        };
        if let Some(p) = self.memo.read().unwrap().get(word) {
            return Ok(p.clone());
        }
        let mut swapped = word.to_vec();
        swapped.swap(i, i + 1);
        let mut out = self.straighten(&swapped)?;
        for (c, s) in self.table[word[i] * self.dim + word[i + 1]].iter() {
            let mut w: Vec<usize> = word[..i].to_vec();
            w.push(c);
            w.extend_from_slice(&word[i + 2..]);
            out = out.add(&self.straighten(&w)?.scale(s));
        }
        self.memo.write().unwrap().insert(word.to_vec(), out.clone());
        Ok(out)
    }

    pub fn mul(&self, a: &UElem, b: &UElem) -> Result<UElem> {
        let mut out = Poly::zero();
        for (m1, c1) in a.iter() {
            for (m2, c2) in b.iter() {
                let mut w = m1.indices().to_vec();
                w.extend_from_slice(m2.indices());
                out = out.add(&self.straighten(&w)?.scale(&(c1 * c2)));
            }
        }
        Ok(out)
    }

    /// Ordered product of a word, e.g. `ξ_{w_1} ... ξ_{w_r}`.
    pub fn word(&self, w: &[usize]) -> Result<UElem> {
        self.straighten(w)
    }

    /// `Δ(ξ_{i_1}...ξ_{i_k}) = Π (ξ⊗1 + 1⊗ξ)`: sorted sub-words on each side.
    pub fn coproduct(&self, u: &UElem) -> Vec<(Monomial, Monomial, Scalar)> {
        let mut out = Vec::new();
        for (m, c) in u.iter() {
            for (a, b, s) in m.splittings() {
                out.push((a, b, c * &s));
            }
        }
        out
    }

    pub fn counit(&self, u: &UElem) -> Scalar {
        u.constant_term().cloned().unwrap_or_else(Scalar::zero)
    }

    /// Anti-automorphism extending `ξ ↦ −ξ`.
    pub fn antipode(&self, u: &UElem) -> Result<UElem> {
        let mut out = Poly::zero();
        for (m, c) in u.iter() {
            let mut w = m.indices().to_vec();
            w.reverse();
            let sign = if w.len() % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
            out = out.add(&self.straighten(&w)?.scale(&(c * &sign)));
        }
        Ok(out)
    }

    /// `ad_h(u) = Σ h(1) u S(h(2))`.
    pub fn adjoint(&self, h: &UElem, u: &UElem) -> Result<UElem> {
        let mut out = Poly::zero();
        for (a, b, c) in self.coproduct(h) {
            let left = self.mul(&Poly::term(a, Scalar::one()), u)?;
            let sb = self.antipode(&Poly::term(b, Scalar::one()))?;
            out = out.add(&self.mul(&left, &sb)?.scale(&c));
        }
        Ok(out)
    }

    /// Symmetrisation `ω(x_1•...•x_k) = (1/k!) Σ_σ x_σ(1)...x_σ(k)` of a
    /// polynomial in `S(g)`.
    pub fn symmetrize(&self, p: &Poly<Scalar>) -> Result<UElem> {
        let mut out = Poly::zero();
        for (m, c) in p.iter() {
            let k = m.degree();
            let idx = m.indices();
            let mut acc = Poly::zero();
            for sigma in permutations(k) {
                let w: Vec<usize> = sigma.iter().map(|&s| idx[s]).collect();
                acc = acc.add(&self.straighten(&w)?);
            }
            out = out.add(&acc.scale(&(c * &Scalar::factorial(k).inverse()?)));
        }
        Ok(out)
    }

    /// Truncation `U(g)_{≤k}` as a finite Hopf algebra whose product is
    /// defined exactly when the degrees add up to at most `k`.
    pub fn truncated(&self, k: usize) -> Result<HopfAlgebra> {
        if k > self.cap {
            return Err(Error::DegreeCapExceeded { needed: k, cap: self.cap });
        }
        let basis = monomials_up_to(self.dim, k);
        let index: HashMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let to_vec = |p: &UElem| -> Vector {
            Vector::from_terms(p.iter().map(|(m, c)| (index[m], c.clone())))
        };
        let labels: Vec<String> = basis.iter().map(pbw_label).collect();
        let delta = basis
            .iter()
            .map(|m| m.splittings().into_iter().map(|(a, b, c)| (index[&a], index[&b], c)).collect())
            .collect();
        let counit = basis.iter().map(|m| if m.degree() == 0 { Scalar::one() } else { Scalar::zero() }).collect();
        let degree = basis.iter().map(Monomial::degree).collect();
        let coalg = Coalgebra::new(labels, delta, counit, Vector::basis(0), degree)?;
        let d = basis.len();
        let product = Product::try_from_fn(d, d, d, |i, j| {
            if basis[i].degree() + basis[j].degree() > k {
                return Ok(None);
            }
            let mut w = basis[i].indices().to_vec();
            w.extend_from_slice(basis[j].indices());
            Ok(Some(to_vec(&self.straighten(&w)?)))
        })?;
        let mut cols = Vec::with_capacity(d);
        for m in &basis {
            cols.push(to_vec(&self.antipode(&Poly::term(m.clone(), Scalar::one()))?));
        }
        let antipode = LinMap::from_columns(d, d, cols)?;
        Ok(HopfAlgebra { coalg, product, antipode })
    }
}

fn pbw_label(m: &Monomial) -> String {
    if m.degree() == 0 {
        return "1".into();
    }
    m.indices().iter().map(|i| format!("ξ{}", i + 1)).collect::<Vec<_>>().join("")
}

/// The data `(h, g = h/z, U(g), S(h)_(k))` with the action `ℓ` of `U(g)` on
/// `S(h)_(k)` by derivations and the map `Φ = ω ∘ S(p)`.
#[derive(Clone, Debug)]
pub struct LeibnizAugmentation {
    pub h: LeibnizAlgebra,
    pub g: QuotientLie,
    pub env: EnvelopingAlgebra,
    pub sym: SymCoalgebra,
    derivations: Vec<LinMap>,
}

impl LeibnizAugmentation {
    /// `cap` bounds word lengths inside `U(g)`; it must be at least `k`.
    pub fn new(h: &LeibnizAlgebra, z: &crate::exact_core::Subspace, k: usize, cap: usize) -> Result<Self> {
        let g = h.quotient_lie(z)?;
        let env = EnvelopingAlgebra::of_quotient(&g, cap.max(k));
        let sym = SymCoalgebra::new(h.dim(), k);
        let derivations = (0..g.dim()).map(|a| sym.derivation(&h.ad_basis(g.lift_index(a)))).collect();
        Ok(LeibnizAugmentation { h: h.clone(), g, env, sym, derivations })
    }

    /// `ξ_a` acting on `S(h)_(k)` as the derivation extending `[x_a, -]` for any
    /// lift `x_a` of `ξ_a`.
    pub fn generator_action(&self, a: usize) -> &LinMap {
        &self.derivations[a]
    }

    /// `(ξ_{i_1}...ξ_{i_m}).v = ξ_{i_1}.(...(ξ_{i_m}.v))`.
    pub fn act(&self, u: &UElem, v: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (m, c) in u.iter() {
            let mut cur = v.clone();
            for &a in m.indices().iter().rev() {
                cur = self.derivations[a].apply(&cur);
            }
            out.axpy(c, &cur);
        }
        out
    }

    /// `S(p)` on a vector of `S(h)_(k)`, landing in `S(g)`.
    pub fn sym_projection(&self, v: &Vector) -> Poly<Scalar> {
        let p = self.g.projection();
        let mut out = Poly::zero();
        for (i, c) in v.iter() {
            let mut acc: Poly<Scalar> = Poly::term(Monomial::one(), c.clone());
            for &x in self.sym.monomial(i).indices() {
                let lin = Poly::from_vector(p.column(x));
                acc = acc.mul(&lin);
            }
            out = out.add(&acc);
        }
        out
    }

    /// `Φ(v) = ω(S(p)(v))`.
    pub fn phi(&self, v: &Vector) -> Result<UElem> {
        self.env.symmetrize(&self.sym_projection(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_dim_nonabelian() -> EnvelopingAlgebra {
        // [ξ1, ξ2] = ξ2
        let t = vec![Vector::zero(), Vector::basis(1), Vector::basis(1).neg(), Vector::zero()];
        EnvelopingAlgebra::new(2, t, 4)
    }

    #[test]
    fn straightening_swaps_with_bracket() {
        let u = two_dim_nonabelian();
        // ξ2 ξ1 = ξ1 ξ2 - ξ2
        let p = u.word(&[1, 0]).unwrap();
        assert_eq!(p.coeff(&Monomial::from_indices(vec![0, 1])), Some(&Scalar::one()));
        assert_eq!(p.coeff(&Monomial::var(1)), Some(&Scalar::from_int(-1)));
    }

    #[test]
    fn cap_is_enforced() {
        let u = two_dim_nonabelian();
        assert!(matches!(u.word(&[1, 1, 1, 1, 0]), Err(Error::DegreeCapExceeded { needed: 5, cap: 4 })));
    }

    #[test]
    fn truncated_enveloping_is_hopf_within_cap() {
        let u = two_dim_nonabelian();
        let h = u.truncated(3).unwrap();
        let rep = h.validate();
        assert!(rep.all_passed(), "{:?}", rep.failed());
        assert_eq!(h.antipode_by_convolution(8).unwrap(), h.antipode);
    }

    #[test]
    fn symmetric_group_orders() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        let k = HopfAlgebra::group_algebra(&s3);
        assert!(k.validate().all_passed());
    }

    #[test]
    fn bad_group_table_rejected() {
        let r = FiniteGroup::new(vec!["e".into(), "a".into()], vec![0, 1, 1, 1], 0);
        assert!(r.is_err());
    }
}
