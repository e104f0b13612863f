//! Bundled example structures. Every positive fixture is validated when
//! built; the negative ones are built unchecked on purpose.

use crate::env_hopf::FiniteGroup;
use crate::exact_core::Vector;
use crate::io::{AugmentedRackSpec, GroupSpec, Input, LeibnizSpec, RackSpec, RightGroupSpec};
use crate::leibniz::LeibnizAlgebra;
use crate::rack_bialg::{rack_table_candidate, AugmentedRack, FiniteRack, RackCandidate};

/// A named Leibniz algebra from the corpus.
#[derive(Clone, Debug)]
pub struct LeibnizFixture {
    pub name: &'static str,
    pub algebra: LeibnizAlgebra,
}

fn validated(dim: usize, brackets: &[((usize, usize), Vector)]) -> LeibnizAlgebra {
    LeibnizAlgebra::new(dim, brackets).expect("corpus algebra satisfies the Leibniz identity")
}

/// Abelian algebras of dimensions 1 to 3, `[e1,e1] = e2`, the Lie algebra
/// `[e1,e2] = e2` and the non-Lie `[e1,e1] = e3`, `[e1,e2] = e3`.
pub fn leibniz_fixtures() -> Vec<LeibnizFixture> {
    let e = Vector::basis;
    vec![
        LeibnizFixture { name: "abelian-1", algebra: LeibnizAlgebra::abelian(1) },
        LeibnizFixture { name: "abelian-2", algebra: LeibnizAlgebra::abelian(2) },
        LeibnizFixture { name: "abelian-3", algebra: LeibnizAlgebra::abelian(3) },
        LeibnizFixture { name: "square", algebra: validated(2, &[((0, 0), e(1))]) },
        LeibnizFixture { name: "affine", algebra: validated(2, &[((0, 1), e(1)), ((1, 0), e(1).neg())]) },
        LeibnizFixture { name: "leibniz-3", algebra: validated(3, &[((0, 0), e(2)), ((0, 1), e(2))]) },
    ]
}

pub fn leibniz_fixture(name: &str) -> Option<LeibnizAlgebra> {
    leibniz_fixtures().into_iter().find(|f| f.name == name).map(|f| f.algebra)
}

/// `[e1,e2] = e1` alone, which violates the left Leibniz identity at
/// `(e1, e2, e2)`.
pub fn non_leibniz() -> LeibnizAlgebra {
    LeibnizAlgebra::unchecked(2, &[((0, 1), Vector::basis(0))]).expect("shape")
}

pub fn z2_conjugation() -> FiniteRack {
    FiniteRack::conjugation(&FiniteGroup::cyclic(2))
}

pub fn s3_conjugation() -> FiniteRack {
    FiniteRack::conjugation(&FiniteGroup::symmetric(3))
}

pub fn s3_augmented() -> AugmentedRack {
    AugmentedRack::conjugation(&FiniteGroup::symmetric(3))
}

pub fn idempotent_labels() -> Vec<String> {
    vec!["p".into(), "q".into()]
}

/// The right group `Z₂ × {p, q}`.
pub fn right_group_z2() -> (FiniteGroup, Vec<String>) {
    (FiniteGroup::cyclic(2), idempotent_labels())
}

/// The right group `S₃ × {p, q}`.
pub fn right_group_s3() -> (FiniteGroup, Vec<String>) {
    (FiniteGroup::symmetric(3), idempotent_labels())
}

/// `K[S₃]` conjugation table with the images of two elements under one
/// transposition swapped: units, bijectivity and the coalgebra structure
/// survive, self-distributivity does not.
pub fn corrupted_s3_rack() -> RackCandidate {
    let x = s3_conjugation();
    let n = x.size();
    let mut op: Vec<usize> = (0..n * n).map(|k| x.act(k / n, k % n)).collect();
    let u = x.unit();
    let t = (0..n).find(|&a| a != u && x.act(a, a) == a && (0..n).any(|b| x.act(a, b) != b)).expect("non-central element");
    let moved: Vec<usize> = (0..n).filter(|&b| b != u && b != t && x.act(t, b) != b).collect();
    op.swap(t * n + moved[0], t * n + moved[1]);
    let mut c = rack_table_candidate(x.labels().to_vec(), &op, u);
    c.name = "corrupted K[S3]".into();
    c
}

/// The corpus as JSON inputs, keyed by file stem.
pub fn bundled_inputs() -> Vec<(String, Input)> {
    let mut out: Vec<(String, Input)> = leibniz_fixtures()
        .into_iter()
        .map(|f| (f.name.to_string(), Input::Leibniz(LeibnizSpec::from_algebra(f.name, &f.algebra))))
        .collect();
    out.push(("non-leibniz".into(), Input::Leibniz(LeibnizSpec::from_algebra("non-leibniz", &non_leibniz()))));
    out.push(("z2-conjugation".into(), Input::Rack(RackSpec::from_rack("z2-conjugation", &z2_conjugation()))));
    out.push(("s3-conjugation".into(), Input::Rack(RackSpec::from_rack("s3-conjugation", &s3_conjugation()))));
    out.push(("s3-augmented".into(), Input::AugmentedRack(AugmentedRackSpec::from_augmented("s3-augmented", &s3_augmented()))));
    let (g, e) = right_group_z2();
    out.push((
        "z2-right-group".into(),
        Input::RightGroup(RightGroupSpec { name: "z2-right-group".into(), group: GroupSpec::from_group("Z2", &g), idempotents: e }),
    ));
    let (g, e) = right_group_s3();
    out.push((
        "s3-right-group".into(),
        Input::RightGroup(RightGroupSpec { name: "s3-right-group".into(), group: GroupSpec::from_group("S3", &g), idempotents: e }),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_builds_and_round_trips() {
        assert_eq!(leibniz_fixtures().len(), 6);
        assert!(non_leibniz().leibniz_check().violation.is_some());
        for (name, inp) in bundled_inputs() {
            let back = Input::from_json(&inp.to_json()).unwrap();
            assert_eq!(back, inp, "{name}");
        }
    }

    #[test]
    fn corrupted_rack_fails_only_self_distributivity() {
        let rep = corrupted_s3_rack().report();
        assert_eq!(rep.failed(), vec!["self-distributivity"]);
    }
}
