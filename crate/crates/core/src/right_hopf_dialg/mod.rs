//! Right Hopf algebras and their decomposition, Hopf dialgebras, the `B⊗H`
//! construction, the structure of Hopf dialgebras and universal dialgebras.

mod decomposition;
mod dialgebra;
mod right_hopf;
mod universal;

pub use decomposition::{structure_decomposition, StructureDecomposition};
pub use dialgebra::{dialgebra_from_augmented, Dialgebra, HopfDialgebra, TensorDialgebra};
pub use right_hopf::{RightHopf, Suschkewitsch};
pub use universal::{universal_dialgebra, UniversalDialgebra};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::env_hopf::{FiniteGroup, HopfAlgebra};
    use crate::exact_core::{LinMap, Scalar, Vector};
    use crate::leibniz::LeibnizAlgebra;
    use crate::rack_bialg::{AugmentedRack, AugmentedRackBialgebra};

    fn pq() -> Vec<String> {
        vec!["p".into(), "q".into()]
    }

    #[test]
    fn right_group_decomposes() {
        let h = RightHopf::right_group(&FiniteGroup::cyclic(2), &pq()).unwrap();
        let rep = h.validate();
        assert!(rep.all_passed(), "{:?}", rep.failed());
        assert!(h.antipode_lemmas().all_passed());
        let s = h.suschkewitsch().unwrap();
        assert!(s.is_valid(), "{:?}", s.report.failed());
        assert_eq!((s.h1.dim(), s.e.dim()), (2, 2));
    }

    #[test]
    fn s3_tensor_dialgebra_is_hopf() {
        let x = AugmentedRack::conjugation(&FiniteGroup::symmetric(3));
        let arb = AugmentedRackBialgebra::from_augmented_rack(&x);
        let td = dialgebra_from_augmented(&arb, None).unwrap();
        assert_eq!(td.hd.dim(), 36);
        let rep = td.hd.report();
        assert!(rep.all_passed(), "{:?}", rep.failed());
        assert!(td.hd.rack_module_identities().all_passed());
        let sd = structure_decomposition(&td.hd).unwrap();
        assert!(sd.is_valid(), "{:?}", sd.report.failed());
        assert!(td.idempotent_formula_check(&arb).unwrap().passed);
    }

    #[test]
    fn non_balanced_fails_only_balance() {
        let d = Dialgebra::non_balanced(&FiniteGroup::cyclic(2));
        let rep = d.report();
        assert_eq!(rep.failed(), vec!["balanced a⊢1 = 1⊣a"]);
    }

    #[test]
    fn universal_dialgebra_of_square_bracket() {
        // [e1,e1] = e2
        let h = LeibnizAlgebra::new(2, &[((0, 0), Vector::basis(1))]).unwrap();
        let u = universal_dialgebra(&h, 3).unwrap();
        let rep = u.dialgebra().report();
        assert!(rep.all_passed(), "{:?}", rep.failed());
        let e1 = u.generator(0);
        let br = u.dialgebra().dialg.bracket(&e1, &e1).unwrap();
        assert_eq!(br, u.generator(1));
        assert!(u.decomposition_check().all_passed());
        let sd = structure_decomposition(u.dialgebra()).unwrap();
        assert!(sd.is_valid(), "{:?}", sd.report.failed());
        let (lie, _) = u.dialgebra().primitive_leibniz().unwrap();
        assert_eq!(lie.dim(), 3);

        // 2-dim target K[t]/t², φ(e1) = t, φ(e2) = 0
        let prod = crate::coalgebra::Product::from_fn(2, 2, 2, |a, b| {
            Some(if a + b < 2 { Vector::basis(a + b) } else { Vector::zero() })
        });
        let target = Dialgebra::from_associative("K[t]/t²", vec!["1".into(), "t".into()], Vector::basis(0), prod);
        assert!(target.report().all_passed());
        let phi = LinMap::from_fn(2, 2, |j| if j == 0 { Vector::basis(1) } else { Vector::zero() });
        let (_, rep) = u.universal_property(&target, &phi).unwrap();
        assert!(rep.all_passed(), "{:?}", rep.failed());

        // finite target Ũd(K)/cap, φ(e1) = 2e⊗1, φ(e2) = 0
        let ab = universal_dialgebra(&LeibnizAlgebra::abelian(1), 3).unwrap();
        let q = ab.dialgebra().dialg.graded_quotient();
        assert!(q.report().all_passed());
        let two = Scalar::from_int(2);
        let phi = LinMap::from_fn(2, q.dim(), |j| if j == 0 { ab.generator(0).scale(&two) } else { Vector::zero() });
        let (hat, rep) = u.universal_property(&q, &phi).unwrap();
        assert!(rep.all_passed(), "{:?}", rep.failed());
        assert!(!hat.is_zero());
    }

    #[test]
    fn hopf_as_dialgebra_has_trivial_idempotents() {
        let h = HopfAlgebra::group_algebra(&FiniteGroup::symmetric(3));
        let d = HopfDialgebra::from_hopf("K[S3]", &h);
        let sd = structure_decomposition(&d).unwrap();
        assert!(sd.is_valid(), "{:?}", sd.report.failed());
        assert_eq!((sd.e.dim(), sd.h.dim()), (1, 6));
    }
}
