use std::path::PathBuf;
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_altfid"))
        .args(args)
        .current_dir(root())
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn fidelity_values_and_errors() {
    let rho = "fixtures/orthogonal_rho.json";
    let sigma = "fixtures/orthogonal_sigma.json";
    assert_eq!(stdout(&run(&["fidelity", "--kind", "newf", rho, sigma])), "0\n");
    assert_eq!(stdout(&run(&["fidelity", "--kind", "f2", rho, sigma])), "0.5\n");
    assert_eq!(stdout(&run(&["fidelity", "--kind", "bures", rho, rho])), "1\n");

    let bad = scratch("bad.json");
    std::fs::write(&bad, "{\"dim\": 2").unwrap();
    assert_eq!(run(&["fidelity", bad.to_str().unwrap(), rho]).status.code(), Some(2));
    let not_state = scratch("trace.json");
    std::fs::write(&not_state, r#"{"dim": 2, "entries": [[0.9,0],[0,0],[0,0],[0.9,0]]}"#).unwrap();
    assert_eq!(
        run(&["fidelity", not_state.to_str().unwrap(), "fixtures/half.json"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(run(&["fidelity", "fixtures/half.json", rho]).status.code(), Some(3));
    assert_eq!(run(&["fidelity", "missing.json", rho]).status.code(), Some(2));
}

#[test]
fn bound_methods() {
    let json = |args: &[&str]| -> serde_json::Value {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        serde_json::from_str(&stdout(&o)).unwrap()
    };
    let newf = json(&["bound", "--r", "1", "--gamma0", "3"]);
    let mt = json(&["bound", "--r", "1", "--gamma0", "3", "--method", "mt-pure"]);
    let (a, b) = (newf["tau_qsl"].as_f64().unwrap(), mt["tau_qsl"].as_f64().unwrap());
    assert!((a - b).abs() <= 1e-9 * b);
    for key in ["tau", "f_tau", "x_tau", "tau_qsl", "quad_error", "converged"] {
        assert!(newf.get(key).is_some(), "{key}");
    }

    let frozen = json(&["bound", "--r", "0.5", "--frozen"]);
    assert_eq!(frozen["tau_qsl"].as_f64(), Some(0.0));

    let generic = json(&[
        "bound", "--r", "0.5", "--gamma0", "2", "--method", "generic", "--kind", "newf",
    ]);
    assert!(generic["tau_qsl"].as_f64().unwrap() >= newf["tau_qsl"].as_f64().unwrap() - 1.0);

    assert_eq!(run(&["bound", "--r", "0.5", "--gamma0", "-1"]).status.code(), Some(2));
    assert_eq!(
        run(&["bound", "--r", "0.5", "--n-points", "100"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["bound", "--r", "0.5", "--method", "mt-pure"]).status.code(),
        Some(3)
    );
}

#[test]
fn sweep_is_deterministic_and_sorted() {
    let cfg = scratch("sweep.json");
    std::fs::write(
        &cfg,
        r#"{"gamma0_grid": [2, 0.5, 8], "r_values": [0.9, 0.1], "quadrature": {"n_points": 513}}"#,
    )
    .unwrap();
    let cfg = cfg.to_str().unwrap();
    let one = stdout(&run(&["--threads", "1", "sweep", cfg]));
    let four = stdout(&run(&["--threads", "4", "sweep", cfg]));
    assert_eq!(one, four);
    let lines: Vec<&str> = one.lines().collect();
    assert_eq!(
        lines[0],
        "gamma0,r,f_tau,x_tau,tau_qsl,tau_qsl_generic_f1,quad_error,error"
    );
    let keys: Vec<(&str, &str)> = lines[1..]
        .iter()
        .map(|l| {
            let mut f = l.split(',');
            let g = f.next().unwrap();
            (f.next().unwrap(), g)
        })
        .collect();
    assert_eq!(
        keys,
        vec![
            ("0.1", "0.5"),
            ("0.1", "2"),
            ("0.1", "8"),
            ("0.9", "0.5"),
            ("0.9", "2"),
            ("0.9", "8")
        ]
    );
    assert!(!one.contains('\r'));

    let out = scratch("sweep.csv");
    assert_eq!(
        run(&["sweep", cfg, "--out", out.to_str().unwrap()]).status.code(),
        Some(0)
    );
    assert_eq!(std::fs::read_to_string(out).unwrap(), one);
}

#[test]
fn sweep_validation() {
    let cfg = scratch("empty_r.json");
    std::fs::write(&cfg, r#"{"r_values": []}"#).unwrap();
    assert_eq!(run(&["sweep", cfg.to_str().unwrap()]).status.code(), Some(2));
    std::fs::write(&cfg, r#"{"r_values": [0.5], "gamma": 1}"#).unwrap();
    assert_eq!(run(&["sweep", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let o = run(&["verify", "jozsa", "--kind", "newf", "--trials", "300"]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(report["axioms"]
        .as_array()
        .unwrap()
        .iter()
        .all(|a| a["report"]["counterexample"].is_null()));

    let o = run(&["verify", "jozsa", "--kind", "f1", "--trials", "300", "--dims", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let a4 = report["axioms"]
        .as_array()
        .unwrap()
        .iter()
        .find(|a| a["axiom"] == "A4")
        .unwrap();
    assert_eq!(
        a4["report"]["counterexample"]["values"],
        serde_json::json!([0.707106781187, 0.5])
    );

    let o = run(&["verify", "monotonicity-fixed"]);
    assert_eq!(o.status.code(), Some(0));
    let fixed: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(fixed["holds"], true);

    for prop in ["supermultiplicative", "monotonicity", "concavity", "orthogonality"] {
        assert_eq!(
            run(&["verify", prop, "--trials", "200"]).status.code(),
            Some(0),
            "{prop}"
        );
    }
    assert_eq!(
        run(&["verify", "derivative-chain", "--samples", "50"]).status.code(),
        Some(0)
    );
    assert_eq!(run(&["verify", "nonsense"]).status.code(), Some(2));
}

#[test]
fn verify_is_seeded() {
    let a = stdout(&run(&["--seed", "7", "verify", "concavity", "--trials", "300"]));
    let b = stdout(&run(&[
        "--seed",
        "7",
        "--threads",
        "2",
        "verify",
        "concavity",
        "--trials",
        "300",
    ]));
    assert_eq!(a, b);
}

#[test]
fn gmodel_table() {
    let o = run(&["gmodel", "--gamma0", "5", "--steps", "10000", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("t,re_g,im_g,abs_g2,gamma_t,g_volterra,abs_deviation")
    );
    assert_eq!(lines.next(), Some("0,1,0,1,0,1,0"));
    let footer = text.lines().last().unwrap();
    let dev: f64 = footer.strip_prefix("# max_deviation=").unwrap().parse().unwrap();
    assert!(dev < 1e-6);

    // |G|² first touches zero near t = 1.2617.
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    let min = rows
        .iter()
        .filter(|r| r[0] < 2.0)
        .min_by(|a, b| a[3].total_cmp(&b[3]))
        .unwrap();
    assert!((min[0] - 1.2617).abs() < 2e-3 && min[3] < 1e-6);

    assert_eq!(
        run(&["gmodel", "--gamma0", "1", "--steps", "50"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["gmodel", "--gamma0", "1", "--steps", "50", "--oracle"])
            .status
            .code(),
        Some(2)
    );
}
