//! Acceptance criteria 1 to 10. Prints one PASS/FAIL line per criterion with
//! its runtime and exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rackalg::deformation::{equivalence_report_signed, mu_n, Budget, Cochain, DeformationComplex, Faces};
use rackalg::deformation::{coderivation_check, coderivation_space};
use rackalg::env_hopf::FiniteGroup;
use rackalg::exact_core::{LinMap, Scalar, Vector};
use rackalg::fixtures::*;
use rackalg::leibniz::LeibnizAlgebra;
use rackalg::rack_bialg::{rack_group_algebra, trivial, uar_infinity, ur, AugmentedRackBialgebra};
use rackalg::report::Report;
use rackalg::right_hopf_dialg::{dialgebra_from_augmented, structure_decomposition, Dialgebra, RightHopf};
use rackalg::star_product::{exp_identity, first_order_term, selfdist_check};
use rackalg::symcoalg::SymCoalgebra;
use rackalg::Error;

type Outcome = Result<String, String>;

fn require(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn require_report(rep: &Report) -> Result<(), String> {
    require(rep.all_passed(), || format!("{}: failed {:?}, first witness {:?}", rep.subject, rep.failed(), rep.first_violation()))
}

fn small_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vector {
    Vector::from_dense(&(0..dim).map(|_| Scalar::from_int(rng.gen_range(-2..=2))).collect::<Vec<_>>())
}

fn c1_leibniz_validation() -> Outcome {
    let fixtures = leibniz_fixtures();
    for f in &fixtures {
        let c = f.algebra.leibniz_check();
        require(c.passed, || format!("{} fails: {:?}", f.name, c.violation))?;
    }
    let bad = non_leibniz().leibniz_check();
    require(bad.violation.is_some(), || "non-Leibniz table accepted".into())?;
    let rejected = matches!(LeibnizAlgebra::new(2, &[((0, 1), Vector::basis(0))]), Err(Error::LeibnizViolation(_)));
    require(rejected, || "validating constructor accepted the non-Leibniz table".into())?;
    Ok(format!("{} fixtures valid, negative rejected at {:?}", fixtures.len(), bad.violation.unwrap().witness))
}

fn c2_uar_axioms() -> Outcome {
    let mut worst = Duration::ZERO;
    let mut count = 0;
    for f in leibniz_fixtures().into_iter().filter(|f| f.algebra.dim() <= 3) {
        let start = Instant::now();
        let h = &f.algebra;
        for k in 1..=3 {
            let (rb, _) = uar_infinity(h, k, &h.squares_ideal()).map_err(|e| format!("{} k={k}: {e}", f.name))?;
            require_report(&rb.report())?;
            let (rb_z, _) = uar_infinity(h, k, &h.left_center()).map_err(|e| format!("{} k={k} z(h): {e}", f.name))?;
            require(rb.product() == rb_z.product(), || format!("{} k={k}: μ differs for z = Q(h) and z = z(h)", f.name))?;
            count += 1;
        }
        let t = start.elapsed();
        worst = worst.max(t);
        require(t < Duration::from_secs(60), || format!("{} took {t:?}", f.name))?;
    }
    Ok(format!("{count} carriers S(h)_(k), slowest fixture {worst:.2?}"))
}

fn c3_primitives_round_trip() -> Outcome {
    let mut count = 0;
    for f in leibniz_fixtures() {
        let h = &f.algebra;
        for k in 1..=3 {
            let (rb, aug) = uar_infinity(h, k, &h.squares_ideal()).map_err(|e| e.to_string())?;
            let (lie, prim) = rb.primitive_leibniz().map_err(|e| format!("{} k={k}: {e}", f.name))?;
            let coords = LinMap::from_fn(h.dim(), prim.dim(), |i| prim.coordinates(&aug.sym.embed(&Vector::basis(i))).unwrap_or_default());
            require(prim.dim() == h.dim() && coords.rank() == h.dim(), || format!("{} k={k}: Prim has dim {}", f.name, prim.dim()))?;
            let c = h.morphism_check(&coords, &lie);
            require(c.passed, || format!("{} k={k}: {:?}", f.name, c.violation))?;
            // With the generators as the Prim basis the constants agree verbatim.
            if coords == LinMap::identity(h.dim()) {
                for i in 0..h.dim() {
                    for j in 0..h.dim() {
                        require(lie.bracket_basis(i, j) == h.bracket_basis(i, j), || format!("{} k={k}: [e{i},e{j}]", f.name))?;
                    }
                }
            }
            count += 1;
        }
    }
    Ok(format!("{count} round trips exact"))
}

fn c4_suschkewitsch() -> Outcome {
    for (g, e) in [right_group_z2(), right_group_s3()] {
        let h = RightHopf::right_group(&g, &e).map_err(|e| e.to_string())?;
        require_report(&h.validate())?;
        require_report(&h.antipode_lemmas())?;
        let s = h.suschkewitsch().map_err(|e| e.to_string())?;
        require_report(&s.report)?;
        require(s.h1.dim() == g.order() && s.e.dim() == e.len(), || "factor dimensions".into())?;
    }
    Ok("K[Z2×{p,q}] and K[S3×{p,q}] decompose".into())
}

fn c5_hopf_dialgebra() -> Outcome {
    let arb = AugmentedRackBialgebra::from_augmented_rack(&s3_augmented());
    require_report(&arb.validate())?;
    let td = dialgebra_from_augmented(&arb, None).map_err(|e| e.to_string())?;
    require(td.hd.dim() == 36, || format!("dim {}", td.hd.dim()))?;
    require_report(&td.hd.report())?;
    require_report(&td.hd.rack_module_identities())?;
    require_report(&td.primitive_bracket_check(&arb))?;
    let idem = td.idempotent_formula_check(&arb).map_err(|e| e.to_string())?;
    require(idem.passed, || format!("{:?}", idem.violation))?;
    let sd = structure_decomposition(&td.hd).map_err(|e| e.to_string())?;
    require_report(&sd.report)?;
    let checks: usize = [td.hd.report(), td.hd.rack_module_identities(), sd.report].iter().map(|r| r.checks.len()).sum();
    Ok(format!("36-dim B⊗H, {checks} identities exact"))
}

fn c6_exp_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut worst = Duration::ZERO;
    let mut total = 0;
    for f in leibniz_fixtures().into_iter().filter(|f| f.algebra.dim() <= 3) {
        let start = Instant::now();
        let n = f.algebra.dim();
        for _ in 0..20 {
            let (x, y) = (small_vector(&mut rng, n), small_vector(&mut rng, n));
            let cmp = exp_identity(&f.algebra, &x, &y, 6);
            require(cmp.check.passed, || format!("{}: {:?}", f.name, cmp.check.violation))?;
            total += 1;
        }
        let t = start.elapsed();
        worst = worst.max(t);
        require(t < Duration::from_secs(30), || format!("{} took {t:?}", f.name))?;
    }
    Ok(format!("{total} pairs at N = 6, slowest fixture {worst:.2?}"))
}

fn c7_selfdistributivity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut total = 0;
    for f in leibniz_fixtures().into_iter().filter(|f| f.algebra.dim() <= 3) {
        let n = f.algebra.dim();
        for _ in 0..10 {
            let (x, y, z) = (small_vector(&mut rng, n), small_vector(&mut rng, n), small_vector(&mut rng, n));
            let rep = selfdist_check(&f.algebra, &x, &y, &z, 6);
            require(rep.all_passed(), || format!("{}: {:?} {:?}", f.name, rep.failed(), rep.first_violation()))?;
            total += 1;
        }
    }
    Ok(format!("{total} triples mod ℏ^6"))
}

fn c8_deformation_complex() -> Outcome {
    let budget = Budget { max_dim: 4, max_n: 3 };
    let mut rbs = Vec::new();
    for n in 1..=2 {
        let carrier = SymCoalgebra::new(n, 1).carrier().clone();
        rbs.push(trivial(&format!("S(h)_(1), dim h = {n}"), carrier).map_err(|e| e.to_string())?);
    }
    for f in leibniz_fixtures() {
        rbs.push(ur(&f.algebra).map_err(|e| e.to_string())?);
    }
    for rb in &rbs {
        let cx = DeformationComplex::new(rb, &budget).map_err(|e| format!("{}: {e}", rb.name()))?;
        let rep = cx.verify();
        require_report(&rep)?;
        require(rep.get("d_R^{n+1} ∘ d_R^n = 0 as matrices").is_some_and(|c| c.cases >= 2), || "matrix check must cover n = 1, 2".into())?;
    }
    // μ1 of the star product is a 2-cocycle of the trivial structure on S(h)_(k).
    let mut cocycles = 0;
    for f in leibniz_fixtures().into_iter().filter(|f| f.algebra.dim() <= 2) {
        for k in 1..=2 {
            let rb = trivial("S(h)_(k)", SymCoalgebra::new(f.algebra.dim(), k).carrier().clone()).map_err(|e| e.to_string())?;
            let mu1 = Cochain::new(2, first_order_term(&f.algebra, k).map_err(|e| e.to_string())?);
            let member = coderivation_check("μ1 ∈ C²", rb.carrier(), 2, &mu1.map, &mu_n(&rb, 2));
            require(member.passed, || format!("{} k={k}: {:?}", f.name, member.violation))?;
            require(Faces::new(&rb, 3).differential(&mu1).is_zero(), || format!("{} k={k}: d²μ1 ≠ 0", f.name))?;
            cocycles += 1;
        }
    }
    Ok(format!("{} complexes verified up to C⁴, {cocycles} star μ1 cocycles", rbs.len()))
}

fn c9_yang_baxter() -> Outcome {
    let mut rbs = vec![rack_group_algebra(&s3_conjugation()).map_err(|e| e.to_string())?];
    for f in leibniz_fixtures() {
        rbs.push(ur(&f.algebra).map_err(|e| e.to_string())?);
    }
    for rb in &rbs {
        let c = rb.yang_baxter_check();
        require(c.passed, || format!("{}: {:?}", rb.name(), c.violation))?;
    }
    Ok(format!("{} braidings", rbs.len()))
}

/// Each control fails exactly `expected` and carries a witness.
fn control(rep: &Report, expected: &str) -> Result<(), String> {
    require(rep.failed() == vec![expected], || format!("{}: expected only {expected:?} to fail, got {:?}", rep.subject, rep.failed()))?;
    let witness = rep.get(expected).and_then(|c| c.violation.as_ref());
    require(witness.is_some_and(|v| !v.lhs.is_empty() || !v.witness.is_empty()), || format!("{}: no witness", rep.subject))
}

fn c10_negative_controls() -> Outcome {
    let mut leib = Report::new("non-Leibniz table");
    leib.push(non_leibniz().leibniz_check());
    control(&leib, "left Leibniz identity")?;
    control(&corrupted_s3_rack().report(), "self-distributivity")?;
    control(&Dialgebra::non_balanced(&FiniteGroup::cyclic(2)).report(), "balanced a⊢1 = 1⊣a")?;
    let rb = ur(&leibniz_fixture("square").unwrap()).map_err(|e| e.to_string())?;
    let cx = DeformationComplex::new(&rb, &Budget::default()).map_err(|e| e.to_string())?.with_corrupted_first_face();
    control(&cx.verify(), "d_{j,μ}∘d_{i,ν} = d_{i+1,ν}∘d_{j,μ} for j ≤ i")?;
    let faces = Faces::new(&rb, 2);
    let alpha = coderivation_space(&rb, 1, &Budget::default())
        .map_err(|e| e.to_string())?
        .into_iter()
        .find(|a| !faces.differential(a).is_zero())
        .ok_or("no nontrivial coboundary")?;
    control(&equivalence_report_signed(&rb, &alpha, &Scalar::one()), "φ∘μ = (μ + ℏ d¹α)∘(φ⊗φ) mod ℏ²")?;
    Ok("5 controls fail exactly their intended check".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Option<u64>); 10] = [
        ("Leibniz validation", c1_leibniz_validation, Some(1)),
        ("UAR^∞ rack bialgebra axioms", c2_uar_axioms, None),
        ("primitives round trip", c3_primitives_round_trip, None),
        ("Suschkewitsch decomposition", c4_suschkewitsch, Some(5)),
        ("Hopf dialgebra B⊗H for S3", c5_hopf_dialgebra, Some(30)),
        ("exponential identity mod ℏ^6", c6_exp_identity, None),
        ("star-rack self-distributivity mod ℏ^6", c7_selfdistributivity, None),
        ("deformation complex", c8_deformation_complex, Some(120)),
        ("Yang–Baxter equation", c9_yang_baxter, None),
        ("negative controls", c10_negative_controls, None),
    ];
    let mut failures = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let t = start.elapsed();
        if let (Ok(_), Some(secs)) = (&outcome, limit) {
            if t > Duration::from_secs(*secs) {
                outcome = Err(format!("runtime {t:.2?} exceeds {secs} s"));
            }
        }
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} [{t:.2?}] {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2} {name} [{t:.2?}] {why}", i + 1);
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
