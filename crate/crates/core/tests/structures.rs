use proptest::prelude::*;

use rackalg::env_hopf::{FiniteGroup, HopfAlgebra};
use rackalg::exact_core::{LinMap, Scalar, Vector};
use rackalg::fixtures::*;
use rackalg::leibniz::LeibnizAlgebra;
use rackalg::rack_bialg::{hopf_adjoint, rack_group_algebra, uar_formula_product, uar_infinity, ur, AugmentedRackBialgebra, FiniteRack};
use rackalg::right_hopf_dialg::{dialgebra_from_augmented, structure_decomposition, universal_dialgebra, Dialgebra, RightHopf};
use rackalg::Error;

#[test]
fn corpus_validates_and_non_leibniz_is_rejected() {
    for f in leibniz_fixtures() {
        assert!(f.algebra.leibniz_check().passed, "{}", f.name);
    }
    let bad = non_leibniz();
    let check = bad.leibniz_check();
    let v = check.violation.expect("witness");
    assert_eq!(v.witness.len(), 3);
    let err = LeibnizAlgebra::new(2, &[((0, 1), Vector::basis(0))]).unwrap_err();
    assert!(matches!(err, Error::LeibnizViolation(_)));
}

#[test]
fn uar_is_a_rack_bialgebra_with_primitives_h() {
    for f in leibniz_fixtures() {
        let h = &f.algebra;
        for k in 1..=2 {
            let (rb, aug) = uar_infinity(h, k, &h.squares_ideal()).unwrap();
            let rep = rb.report();
            assert!(rep.all_passed(), "{} k={k}: {:?}", f.name, rep.failed());
            let (rb_z, _) = uar_infinity(h, k, &h.left_center()).unwrap();
            assert_eq!(rb.product(), rb_z.product(), "{} k={k}: μ depends on z", f.name);
            assert_eq!(rb.product(), &uar_formula_product(h, k), "{} k={k}", f.name);
            let (lie, prim) = rb.primitive_leibniz().unwrap();
            assert_eq!(prim.dim(), h.dim());
            let iso = LinMap::from_fn(h.dim(), prim.dim(), |i| prim.coordinates(&aug.sym.embed(&Vector::basis(i))).unwrap());
            assert_eq!(iso.rank(), h.dim());
            assert!(h.morphism_check(&iso, &lie).passed, "{} k={k}", f.name);
        }
    }
}

#[test]
fn ur_and_group_racks_satisfy_yang_baxter() {
    for f in leibniz_fixtures() {
        let rb = ur(&f.algebra).unwrap();
        assert!(rb.report().all_passed(), "{}", f.name);
        assert!(rb.yang_baxter_check().passed, "{}", f.name);
    }
    for x in [z2_conjugation(), s3_conjugation(), FiniteRack::conjugation(&FiniteGroup::cyclic(3))] {
        let rb = rack_group_algebra(&x).unwrap();
        assert!(rb.report().all_passed());
        assert!(rb.yang_baxter_check().passed);
        assert_eq!(rb.set_likes(rb.dim()).unwrap().len(), x.size());
    }
    let adj = hopf_adjoint("K[S3]", &HopfAlgebra::group_algebra(&FiniteGroup::symmetric(3))).unwrap();
    assert!(adj.report().all_passed());
}

#[test]
fn corrupted_rack_fails_only_self_distributivity() {
    assert_eq!(corrupted_s3_rack().report().failed(), vec!["self-distributivity"]);
}

#[test]
fn right_groups_decompose() {
    for (g, e) in [right_group_z2(), right_group_s3()] {
        let h = RightHopf::right_group(&g, &e).unwrap();
        assert!(h.validate().all_passed());
        assert!(h.antipode_lemmas().all_passed(), "{:?}", h.antipode_lemmas().failed());
        let s = h.suschkewitsch().unwrap();
        assert!(s.is_valid(), "{:?}", s.report.failed());
        assert_eq!(s.h1.dim(), g.order());
        assert_eq!(s.e.dim(), e.len());
    }
}

#[test]
fn s3_augmented_dialgebra() {
    let arb = AugmentedRackBialgebra::from_augmented_rack(&s3_augmented());
    assert!(arb.validate().all_passed());
    let td = dialgebra_from_augmented(&arb, None).unwrap();
    assert_eq!(td.hd.dim(), 36);
    assert!(td.hd.report().all_passed(), "{:?}", td.hd.report().failed());
    assert!(td.hd.rack_module_identities().all_passed());
    assert!(td.primitive_bracket_check(&arb).all_passed());
    assert!(td.idempotent_formula_check(&arb).unwrap().passed);
    let sd = structure_decomposition(&td.hd).unwrap();
    assert!(sd.is_valid(), "{:?}", sd.report.failed());
    assert_eq!(sd.e.dim() * sd.h.dim(), 36);
}

#[test]
fn non_balanced_dialgebra_fails_only_balance() {
    let d = Dialgebra::non_balanced(&FiniteGroup::cyclic(2));
    assert_eq!(d.report().failed(), vec!["balanced a⊢1 = 1⊣a"]);
}

#[test]
fn universal_dialgebra_splits() {
    for name in ["square", "affine", "abelian-2"] {
        let h = leibniz_fixture(name).unwrap();
        let u = universal_dialgebra(&h, 2).unwrap();
        assert!(u.decomposition_check().all_passed(), "{name}: {:?}", u.decomposition_check().failed());
    }
    assert!(matches!(universal_dialgebra(&leibniz_fixture("square").unwrap(), 0), Err(Error::DegreeCapExceeded { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The validating constructor accepts exactly the tables whose exhaustive
    /// check passes.
    #[test]
    fn leibniz_constructor_matches_check(entries in prop::collection::vec(-1i64..=1, 8)) {
        let brackets: Vec<((usize, usize), Vector)> = (0..4)
            .map(|t| ((t / 2, t % 2), Vector::from_dense(&[Scalar::from_int(entries[2 * t]), Scalar::from_int(entries[2 * t + 1])])))
            .collect();
        let raw = LeibnizAlgebra::unchecked(2, &brackets).unwrap();
        let passed = raw.leibniz_check().passed;
        prop_assert_eq!(LeibnizAlgebra::new(2, &brackets).is_ok(), passed);
        if passed {
            let rb = ur(&raw).unwrap();
            prop_assert!(rb.report().all_passed());
            prop_assert!(rb.yang_baxter_check().passed);
        }
    }

    /// Conjugation racks of cyclic and symmetric groups give rack bialgebras.
    #[test]
    fn conjugation_racks(n in 1usize..6) {
        let rb = rack_group_algebra(&FiniteRack::conjugation(&FiniteGroup::cyclic(n))).unwrap();
        prop_assert!(rb.report().all_passed());
    }
}
