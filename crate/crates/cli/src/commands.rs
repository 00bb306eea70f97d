use std::fs;
use std::path::{Path, PathBuf};

use altfid_core::dynamics::{
    decay_rate, g_function, solve_g_volterra_with_rate, werner_state, DampedAtom, Evolution, Frozen,
};
use altfid_core::fidelity::evaluate;
use altfid_core::io::state_from_json;
use altfid_core::qsl::{generic_fidelity_bound_with, mt_pure_bound_with, qsl_time_with};
use altfid_core::verify::{
    check_concavity, check_derivative_chain, check_jozsa, check_monotonicity, check_monotonicity_fixed,
    check_orthogonality, check_supermultiplicative,
};
use altfid_core::{DensityMatrix, Error, QuadratureConfig, ReservoirParams, WernerSpec};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{BoundArgs, Cli, Command, FidelityArgs, GmodelArgs, Method, Property, VerifyArgs};
use crate::error::{CliError, CliResult, Exit};
use crate::format::{g12, round12};
use crate::sweep::{run_sweep, to_csv, SweepConfig};

/// Text produced by a command, where it goes, and the exit status.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub path: Option<PathBuf>,
    pub exit: Exit,
}

impl Output {
    fn ok(text: String) -> Self {
        Self {
            text,
            path: None,
            exit: Exit::Success,
        }
    }
}

pub fn execute(cli: &Cli) -> CliResult<Output> {
    let mut out = match &cli.command {
        Command::Fidelity(a) => fidelity(a)?,
        Command::Bound(a) => bound(a)?,
        Command::Sweep(a) => sweep(&a.config)?,
        Command::Verify(a) => verify(a, cli.seed)?,
        Command::Gmodel(a) => gmodel(a)?,
    };
    if cli.out.is_some() {
        out.path.clone_from(&cli.out);
    }
    Ok(out)
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn load_state(path: &Path) -> CliResult<DensityMatrix> {
    state_from_json(&read(path)?).map_err(|e| {
        let mut err = CliError::from(e);
        err.message = format!("{}: {}", path.display(), err.message);
        err
    })
}

/// Serializes `value` with every float rounded to 12 significant digits.
pub fn to_json<T: Serialize>(value: &T) -> String {
    fn round(v: Value) -> Value {
        match v {
            Value::Number(n) if n.is_f64() => n.as_f64().map(|x| json!(round12(x))).unwrap_or(Value::Number(n)),
            Value::Array(a) => Value::Array(a.into_iter().map(round).collect()),
            Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round(v))).collect()),
            other => other,
        }
    }
    let v = serde_json::to_value(value).expect("plain data serializes");
    let mut s = serde_json::to_string_pretty(&round(v)).expect("plain data serializes");
    s.push('\n');
    s
}

fn fidelity(a: &FidelityArgs) -> CliResult<Output> {
    let rho = load_state(&a.rho)?;
    let sigma = load_state(&a.sigma)?;
    let value = evaluate(a.kind, &rho, &sigma)?;
    Ok(Output::ok(format!("{}\n", g12(value))))
}

fn bound(a: &BoundArgs) -> CliResult<Output> {
    let p = ReservoirParams::new(a.gamma0, a.lambda, a.omega0)?;
    let rho0 = werner_state(WernerSpec::new(a.r)?)?;
    let cfg = a.quadrature.apply(QuadratureConfig::default());
    let atom = DampedAtom(p);
    let evolution: &dyn Evolution = if a.frozen { &Frozen } else { &atom };
    let value = match a.method {
        Method::Newf => {
            let b = qsl_time_with(&rho0, evolution, a.tau, &cfg)?;
            json!({
                "tau": b.tau,
                "f_tau": b.f_tau,
                "x_tau": b.x_tau,
                "tau_qsl": b.tau_qsl,
                "quad_error": b.quad_error,
                "converged": b.converged,
            })
        }
        Method::MtPure => json!({
            "tau": a.tau,
            "tau_qsl": mt_pure_bound_with(&rho0, evolution, a.tau, &cfg)?,
        }),
        Method::Generic => json!({
            "tau": a.tau,
            "kind": a.kind,
            "tau_qsl": generic_fidelity_bound_with(a.kind, &rho0, evolution, a.tau, &cfg)?,
        }),
    };
    Ok(Output::ok(to_json(&value)))
}

fn sweep(config: &Path) -> CliResult<Output> {
    let cfg = SweepConfig::from_json(&read(config)?)?;
    let rows = run_sweep(&cfg)?;
    Ok(Output {
        text: to_csv(&rows),
        path: cfg.output_path.clone(),
        exit: Exit::Success,
    })
}

fn verify(a: &VerifyArgs, seed: u64) -> CliResult<Output> {
    // Conjecture-class properties report violations but still exit 0.
    let (value, hard_failure) = match a.property {
        Property::Jozsa => {
            let r = check_jozsa(a.kind, a.trials, &a.dims, seed)?;
            let surprise = !r.surprises().is_empty();
            (serde_json::to_value(&r), surprise)
        }
        Property::Supermultiplicative => {
            let r = check_supermultiplicative(a.trials, (2, 2), seed)?;
            let failed = !r.passed();
            (serde_json::to_value(&r), failed)
        }
        Property::Monotonicity => {
            let r = check_monotonicity(a.kind, a.trials, &a.dims, seed)?;
            let failed = !r.fixed.holds;
            (serde_json::to_value(&r), failed)
        }
        Property::MonotonicityFixed => {
            let r = check_monotonicity_fixed()?;
            let failed = !r.holds;
            (serde_json::to_value(&r), failed)
        }
        Property::Concavity => (serde_json::to_value(check_concavity(a.trials, &a.dims, seed)?), false),
        Property::DerivativeChain => {
            let p = ReservoirParams::new(a.gamma0, a.lambda, 1.0)?;
            let rho0 = werner_state(WernerSpec::new(a.r)?)?;
            let r = check_derivative_chain(&rho0, &p, a.tau, a.samples)?;
            let failed = !r.passed();
            (serde_json::to_value(&r), failed)
        }
        Property::Orthogonality => {
            let r = check_orthogonality(a.trials, seed)?;
            let failed = !r.passed();
            (serde_json::to_value(&r), failed)
        }
    };
    let value = value.expect("reports serialize");
    Ok(Output {
        text: to_json(&value),
        path: None,
        exit: if hard_failure { Exit::Assertion } else { Exit::Success },
    })
}

fn gmodel(a: &GmodelArgs) -> CliResult<Output> {
    let p = ReservoirParams::new(a.gamma0, a.lambda, a.omega0)?;
    let t_max = a.t_max.unwrap_or(10.0 / a.lambda);
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(Error::InvalidParameter(format!("t_max must be > 0, got {t_max}")).into());
    }
    if a.steps == 0 || t_max / a.steps as f64 > 1.0 / (10.0 * a.lambda) {
        return Err(CliError::usage(format!(
            "{} steps over t_max = {t_max} is too coarse: need at least 10 steps per 1/lambda",
            a.steps
        )));
    }
    let oracle = if a.oracle {
        Some(solve_g_volterra_with_rate(&p, t_max, a.steps)?)
    } else {
        None
    };

    let mut text = String::from("t,re_g,im_g,abs_g2,gamma_t");
    if oracle.is_some() {
        text.push_str(",g_volterra,abs_deviation");
    }
    text.push('\n');
    let mut max_dev = 0.0f64;
    for k in 0..=a.steps {
        let t = if k == a.steps {
            t_max
        } else {
            t_max * k as f64 / a.steps as f64
        };
        let g = g_function(t, &p)?;
        let gamma = match decay_rate(t, &p) {
            Ok(v) => v,
            Err(Error::SingularDecayRate { .. }) => f64::NAN,
            Err(e) => return Err(e.into()),
        };
        text.push_str(&format!(
            "{},{},{},{},{}",
            g12(t),
            g12(g.re),
            g12(g.im),
            g12(g.norm_sqr()),
            g12(gamma)
        ));
        if let Some(sol) = &oracle {
            let dev = (sol.g[k] - g.re).abs().max(g.im.abs());
            max_dev = max_dev.max(dev);
            text.push_str(&format!(",{},{}", g12(sol.g[k]), g12(dev)));
        }
        text.push('\n');
    }
    if oracle.is_some() {
        text.push_str(&format!("# max_deviation={}\n", g12(max_dev)));
    }
    Ok(Output::ok(text))
}
