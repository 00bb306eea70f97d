mod common;

use std::path::PathBuf;

use altfid_core::dynamics::{evolve, rho_dot, werner_state, Frozen};
use altfid_core::fidelity::{new_f, FidelityKind};
use altfid_core::qsl::{generic_fidelity_bound, integrand_x, mt_pure_bound, qsl_time, qsl_time_with};
use altfid_core::{QuadratureConfig, ReservoirParams, WernerSpec};
use common::Model;
use serde_json::{json, Value};

fn golden_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/golden_bound.json")
}

const GOLDEN: Model = Model {
    r: 0.5,
    gamma0: 2.0,
    lambda: 1.0,
};

fn golden_value() -> Value {
    let (f, x, tq, gap) = GOLDEN.bound(1.0);
    assert!(gap < 1e-8, "Richardson levels disagree by {gap:e}");
    json!({
        "r": GOLDEN.r,
        "gamma0": GOLDEN.gamma0,
        "lambda": GOLDEN.lambda,
        "omega0": 1.0,
        "tau": 1.0,
        "f_tau": f,
        "x_tau": x,
        "tau_qsl": tq,
    })
}

/// Rewrites the golden file: `cargo test -p altfid-core --test qsl_oracle -- --ignored`.
#[test]
#[ignore]
fn regenerate_golden() {
    let text = serde_json::to_string_pretty(&golden_value()).unwrap() + "\n";
    std::fs::write(golden_path(), text).unwrap();
}

#[test]
fn golden_file_matches_oracle() {
    let stored: Value = serde_json::from_str(&std::fs::read_to_string(golden_path()).unwrap()).unwrap();
    let fresh = golden_value();
    for key in ["f_tau", "x_tau", "tau_qsl"] {
        let (a, b) = (stored[key].as_f64().unwrap(), fresh[key].as_f64().unwrap());
        assert!((a - b).abs() < 1e-12, "{key}: stored {a} vs oracle {b}");
    }
}

#[test]
fn closed_forms_match_library() {
    for &(r, g0, l) in &[(0.1, 0.1, 1.0), (0.5, 2.0, 1.0), (0.9, 5.0, 1.0), (0.5, 100.0, 20.0)] {
        let m = Model {
            r,
            gamma0: g0,
            lambda: l,
        };
        let p = ReservoirParams::new(g0, l, 1.0).unwrap();
        let rho0 = werner_state(WernerSpec::new(r).unwrap()).unwrap();
        for k in 1..40 {
            let t = k as f64 * 0.025;
            let rho_t = evolve(&rho0, t, &p).unwrap();
            let d = rho_dot(&rho0, t, &p).unwrap();
            let (lib, orc) = (new_f(&rho0, &rho_t).unwrap(), m.fidelity(t));
            assert!((lib - orc).abs() < 1e-12, "{r} {g0} {l} t = {t}: {lib} vs {orc}");
            let x = integrand_x(&rho0, &rho_t, &d, 1e-9).unwrap();
            assert!((x - m.integrand(t)).abs() < 1e-9 * m.integrand(t).max(1.0), "t = {t}");
        }
    }
}

#[test]
fn qsl_time_matches_oracle() {
    let cfg = QuadratureConfig::default();
    for &(r, g0, l) in &[
        (0.1, 0.1, 1.0),
        (0.5, 2.0, 1.0),
        (0.9, 0.4, 1.0),
        (0.9, 10.0, 1.0),
        (0.5, 5.0, 20.0),
    ] {
        let m = Model {
            r,
            gamma0: g0,
            lambda: l,
        };
        let p = ReservoirParams::new(g0, l, 1.0).unwrap();
        let rho0 = werner_state(WernerSpec::new(r).unwrap()).unwrap();
        let b = qsl_time(&rho0, &p, 1.0, &cfg).unwrap();
        let (f, x, tq, _) = m.bound(1.0);
        assert!((b.f_tau - f).abs() < 1e-12);
        assert!(
            (b.x_tau - x).abs() < 1e-6 * x.max(1.0),
            "{r} {g0} {l}: {} vs {x}",
            b.x_tau
        );
        assert!((b.tau_qsl - tq).abs() < 1e-6, "{r} {g0} {l}: {} vs {tq}", b.tau_qsl);
        assert!(b.tau_qsl <= 1.0 + 1e-6);
    }
}

#[test]
fn refinement_moves_x_less_than_reported_error() {
    let p = ReservoirParams::new(2.0, 1.0, 1.0).unwrap();
    let rho0 = werner_state(WernerSpec::new(0.5).unwrap()).unwrap();
    let coarse = qsl_time(&rho0, &p, 1.0, &QuadratureConfig::default()).unwrap();
    let fine = qsl_time(
        &rho0,
        &p,
        1.0,
        &QuadratureConfig {
            n_points: 4001,
            ..QuadratureConfig::default()
        },
    )
    .unwrap();
    assert!((coarse.x_tau - fine.x_tau).abs() < 10.0 * coarse.quad_error);
}

#[test]
fn pure_state_reduces_to_mt_bound() {
    let cfg = QuadratureConfig::default();
    let rho0 = werner_state(WernerSpec::new(1.0).unwrap()).unwrap();
    for &g0 in &[0.05, 0.3, 1.0, 4.0, 15.0] {
        let p = ReservoirParams::new(g0, 1.0, 1.0).unwrap();
        let a = qsl_time(&rho0, &p, 1.0, &cfg).unwrap().tau_qsl;
        let b = mt_pure_bound(&rho0, &p, 1.0, &cfg).unwrap();
        assert!((a - b).abs() <= 1e-9 * b.abs().max(1e-300), "{g0}: {a} vs {b}");
    }
}

#[test]
fn generic_bound_is_not_tighter() {
    let cfg = QuadratureConfig::default();
    for &(r, g0) in &[(0.1, 0.5), (0.5, 2.0), (0.9, 8.0)] {
        let p = ReservoirParams::new(g0, 1.0, 1.0).unwrap();
        let rho0 = werner_state(WernerSpec::new(r).unwrap()).unwrap();
        let q = qsl_time(&rho0, &p, 1.0, &cfg).unwrap().tau_qsl;
        let g = generic_fidelity_bound(FidelityKind::NewF, &rho0, &p, 1.0, &cfg).unwrap();
        assert!(g >= q - 1e-8, "r {r} g0 {g0}: generic {g} < {q}");
    }
}

#[test]
fn frozen_dynamics_gives_zero() {
    let rho0 = werner_state(WernerSpec::new(0.3).unwrap()).unwrap();
    let b = qsl_time_with(&rho0, &Frozen, 1.0, &QuadratureConfig::default()).unwrap();
    assert_eq!(b.tau_qsl, 0.0);
    assert!((b.f_tau - 1.0).abs() < 1e-15);
}
