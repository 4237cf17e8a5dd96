use proptest::prelude::*;
use qjw::designs::{
    build_mub, build_mum, build_sic, build_sim, design_povm, projective_probs, verify_design, ConicalDesign, DesignFile,
};
use qjw::linalg::{haar_unitary, numerical_rank, pure_state_op, random_pure_state, seeded_rng};

fn built() -> Vec<(String, ConicalDesign)> {
    let mut out = Vec::new();
    for d in 2..=4usize {
        let kappa = 1.0 / (d as f64 - 1.0);
        out.push((format!("sim d={d}"), build_sim(d, kappa, 9).unwrap()));
        out.push((format!("sim d={d} half"), build_sim(d, 0.5 * kappa, 9).unwrap()));
        out.push((format!("mum d={d}"), build_mum(d, kappa, 9).unwrap()));
    }
    for d in [2, 3] {
        out.push((format!("sic d={d}"), ConicalDesign::new(build_sic(d).unwrap()).unwrap()));
        out.push((format!("mub d={d}"), ConicalDesign::new(build_mub(d).unwrap()).unwrap()));
    }
    out
}

#[test]
fn constants_agree_across_conditions() {
    for (name, design) in built() {
        let r = verify_design(design.ops(), 1e-9);
        assert!(r.pass, "{name}: {r:?}");
        for (kp, km) in [r.recovered_iii, r.recovered_v] {
            assert!(
                (kp - r.kplus).abs() < 1e-9 && (km - r.kminus).abs() < 1e-9,
                "{name}: ({kp}, {km}) vs ({}, {})",
                r.kplus,
                r.kminus
            );
        }
    }
}

#[test]
fn unit_rank_iff_ka_vanishes() {
    let sic = ConicalDesign::new(build_sic(3).unwrap()).unwrap();
    assert!(sic.constants().ka.abs() < 1e-12);
    assert!(sic.ops().iter().all(|a| numerical_rank(a.matrix(), 1e-8) == 1));
    let sim = build_sim(3, 0.3, 1).unwrap();
    assert!(sim.constants().ka > 1e-6);
    assert!(sim.ops().iter().all(|a| numerical_rank(a.matrix(), 1e-8) == 3));
}

#[test]
fn projective_probability_radius() {
    for set in [build_sic(2).unwrap(), build_sic(3).unwrap(), build_mub(3).unwrap()] {
        let d = set[0].dim() as f64;
        let n = set.len() as f64;
        let mut rng = seeded_rng(17);
        for _ in 0..50 {
            let rho = pure_state_op(&random_pure_state(set[0].dim(), &mut rng));
            let s: f64 = projective_probs(&rho, &set).iter().map(|p| p * p).sum();
            let want = d / (n * (d + 1.0)) * (1.0 + rho.inner(&rho));
            assert!((s - want).abs() < 1e-10);
        }
    }
}

#[test]
fn file_round_trip_keeps_constants() {
    let design = build_mum(3, 0.4, 2).unwrap();
    let json = serde_json::to_string(&design.to_file()).unwrap();
    let back = ConicalDesign::from_file(&serde_json::from_str::<DesignFile>(&json).unwrap()).unwrap();
    assert_eq!(back.n(), design.n());
    assert!((back.constants().ks - design.constants().ks).abs() < 1e-15);
}

#[test]
fn perturbed_design_fails() {
    let design = build_sim(2, 1.0, 0).unwrap();
    let mut ops = design.ops().to_vec();
    ops[0] = ops[0].scaled(1.05);
    assert!(!verify_design(&ops, 1e-9).pass);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn unitary_covariance(seed in any::<u64>(), d in 2usize..5, which in 0usize..2) {
        let kappa = 1.0 / (d as f64 - 1.0);
        let design = if which == 0 { build_sim(d, kappa, 3).unwrap() } else { build_mum(d, kappa, 3).unwrap() };
        let u = haar_unitary(d, &mut seeded_rng(seed));
        let moved = design.conjugated(&u).unwrap();
        let r = verify_design(moved.ops(), 1e-9);
        prop_assert!(r.pass);
        prop_assert!((r.ks - design.constants().ks).abs() < 1e-12);
        prop_assert!((r.ka - design.constants().ka).abs() < 1e-12);
    }

    #[test]
    fn design_povm_sums_to_identity(d in 2usize..5, kappa_frac in 0.1f64..1.0, seed in any::<u64>()) {
        let design = build_sim(d, kappa_frac / (d as f64 - 1.0), seed).unwrap();
        let povm = design_povm(&design).unwrap();
        let mut s = qjw::linalg::HermitianOp::zeros(d);
        for e in povm.effects() {
            s = s.add(e);
        }
        prop_assert!(s.sub(&qjw::linalg::identity(d)).norm() < 1e-10);
    }
}
