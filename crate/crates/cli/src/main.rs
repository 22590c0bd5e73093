mod args;

use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use serde::Serialize;
use serde_json::{json, Value};

use args::{exec, Cli, Command, Format, ParamArgs, PointArgs, RunConfig};
use nesbitt::extremum::{
    beta0_threshold, beta_threshold, domain_end, extremize_params, kernel_shape, sbeta_brute_force, sbeta_infimum,
    ExampleKernel, ExtremumOptions,
};
use nesbitt::oracle::{replay, verify_direction, Form, Status, VerifyOptions, Witness};
use nesbitt::point::parse_coords;
use nesbitt::zeta::{
    check_extremality, extremal_case, hurwitz_lerch_with_cap, weighted_zeta_sum, SimplexPoint, ZetaProblem,
};
use nesbitt::{
    classify_all, classify_power_form, classify_sum_form, evaluate, suite, windowed_lhs, windowed_rhs, Direction,
    ParamTuple, PointVec,
};

const OK: u8 = 0;
const COUNTEREXAMPLE: u8 = 1;
const UNKNOWN: u8 = 3;
const USAGE: u8 = 64;
const DATA: u8 = 65;

#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(nesbitt::Error),
}

impl From<nesbitt::Error> for Failure {
    fn from(e: nesbitt::Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => USAGE,
            Failure::Lib(_) => DATA,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Lib(e) => write!(f, "{e}"),
        }
    }
}

type Outcome = Result<(Value, u8), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

/// Inline `--params-file`, `--point-file` and `--replay` so the stored
/// configuration does not depend on files.
fn inline(command: Command) -> Result<Command, Failure> {
    fn params(p: ParamArgs) -> Result<ParamArgs, Failure> {
        let Some(path) = &p.params_file else { return Ok(p) };
        let base: ParamTuple =
            serde_json::from_str(&read(path)?).map_err(|e| usage(format!("bad params file: {e}")))?;
        Ok(ParamArgs {
            n: p.n.or(Some(base.n)),
            m: p.m.or(Some(base.m)),
            p: p.p.or(Some(base.p)),
            beta: p.beta.or(Some(base.beta)),
            t: p.t.or(Some(base.t)),
            r: p.r.or(Some(base.r)),
            params_file: None,
        })
    }
    fn point(p: PointArgs) -> Result<PointArgs, Failure> {
        match &p.point_file {
            Some(path) => Ok(PointArgs { point: Some(read(path)?.trim().to_string()), point_file: None }),
            None => Ok(p),
        }
    }
    Ok(match command {
        Command::Classify(mut a) => {
            a.params = params(a.params)?;
            Command::Classify(a)
        }
        Command::Eval(mut a) => {
            a.params = params(a.params)?;
            a.point = point(a.point)?;
            Command::Eval(a)
        }
        Command::Verify(mut a) => {
            a.params = params(a.params)?;
            if let Some(path) = a.replay.take() {
                a.replay_witness = Some(load_witness(&read(&path)?)?);
            }
            Command::Verify(a)
        }
        Command::Extremize(mut a) => {
            a.params = params(a.params)?;
            Command::Extremize(a)
        }
        other => other,
    })
}

/// A witness stored on its own, inside a verdict, or inside a full output.
fn load_witness(text: &str) -> Result<Witness, Failure> {
    let v: Value = serde_json::from_str(text).map_err(|e| usage(format!("bad witness file: {e}")))?;
    let found = [v.pointer("/result/witness"), v.pointer("/witness"), Some(&v)]
        .into_iter()
        .flatten()
        .find_map(|c| serde_json::from_value::<Witness>(c.clone()).ok());
    found.ok_or_else(|| usage("no witness found in replay file"))
}

fn tuple(p: &ParamArgs) -> Result<ParamTuple, Failure> {
    let missing: Vec<&str> = [
        ("--n", p.n.is_none()),
        ("--m", p.m.is_none()),
        ("--p", p.p.is_none()),
        ("--beta", p.beta.is_none()),
        ("--t", p.t.is_none()),
        ("--r", p.r.is_none()),
    ]
    .into_iter()
    .filter_map(|(name, absent)| absent.then_some(name))
    .collect();
    if !missing.is_empty() {
        return Err(usage(format!("missing {} (or --params-file)", missing.join(", "))));
    }
    Ok(ParamTuple::new(p.n.unwrap(), p.m.unwrap(), p.p.unwrap(), p.beta.unwrap(), p.t.unwrap(), p.r.unwrap())?)
}

fn coords(p: &PointArgs) -> Result<Vec<f64>, Failure> {
    let text = p.point.as_deref().ok_or_else(|| usage("missing --point or --point-file"))?;
    parse_point(text)
}

fn parse_point(text: &str) -> Result<Vec<f64>, Failure> {
    parse_coords(text).map_err(|e| usage(e.to_string()))
}

fn unknown_exit(direction: Direction) -> u8 {
    if direction == Direction::Unknown {
        UNKNOWN
    } else {
        OK
    }
}

fn run(command: &Command) -> Outcome {
    match command {
        Command::Classify(a) => {
            let q = tuple(&a.params)?;
            match a.form.map(Form::from) {
                Some(Form::Power) => {
                    let c = classify_power_form(&q)?;
                    Ok((to_value(&c), unknown_exit(c.direction)))
                }
                Some(Form::Sum) => {
                    let c = classify_sum_form(&q)?;
                    Ok((to_value(&c), unknown_exit(c.direction)))
                }
                None => {
                    let c = classify_all(&q)?;
                    Ok((to_value(&c), if c.is_unknown() { UNKNOWN } else { OK }))
                }
            }
        }
        Command::Eval(a) => {
            let q = tuple(&a.params)?;
            let a_pt = PointVec::new(coords(&a.point)?, q.p)?;
            match a.window {
                None => Ok((to_value(&evaluate(&q, &a_pt)?), OK)),
                Some(k) => {
                    let lhs = windowed_lhs(&q, &a_pt, k)?;
                    let rhs = windowed_rhs(&q, a_pt.s(), k)?;
                    Ok((json!({ "k": k, "lhs": lhs, "rhs": rhs, "s": a_pt.s() }), OK))
                }
            }
        }
        Command::Verify(a) => {
            let q = tuple(&a.params)?;
            let form = Form::from(a.form);
            if let Some(w) = &a.replay_witness {
                let direction = a.direction.map(Direction::from).unwrap_or(w.direction);
                let again = replay(&q, form, direction, &w.point)?;
                let code = if again.violates(a.rel_tol) { COUNTEREXAMPLE } else { OK };
                return Ok((to_value(&again), code));
            }
            let opts = VerifyOptions {
                trials: a.trials,
                seed: a.seed,
                rel_tol: a.rel_tol,
                direction: a.direction.map(Direction::from),
                probes: !a.no_probes,
                exec: exec(a.sequential),
            };
            let v = verify_direction(&q, form, &opts)?;
            let code = match v.status {
                Status::Counterexample => COUNTEREXAMPLE,
                Status::HoldsOnSamples | Status::DegenerateEquality => OK,
            };
            Ok((to_value(&v), code))
        }
        Command::Extremize(a) => {
            let opts = ExtremumOptions { eps_rel: a.eps_rel, grid: a.grid, exec: exec(a.sequential) };
            let (q, mode, expected) = match &a.example {
                Some(name) => {
                    let k = ExampleKernel::parse(name, a.params.beta, a.params.n)?;
                    (k.params()?, a.mode.map(Into::into).unwrap_or(k.mode()), Some(k.expected(a.s)?))
                }
                None => {
                    let mode = a.mode.ok_or_else(|| usage("--mode is required with explicit params"))?;
                    (tuple(&a.params)?, mode.into(), None)
                }
            };
            let r = extremize_params(&q, a.s, mode, &opts)?;
            let end = domain_end(&q, a.s);
            let shape = kernel_shape(&q, a.s, (a.eps_rel * a.s).min(0.5 * end), end)?;
            Ok((json!({ "params": q, "s": a.s, "shape": shape, "extremum": r, "expected": expected }), OK))
        }
        Command::Sbeta(a) => {
            let infimum = sbeta_infimum(a.n, a.beta)?;
            let thresholds: Vec<Value> = (3..=a.n)
                .map(|k| beta_threshold(k).map(|b| json!({ "k": k, "beta_k": b })))
                .collect::<Result<_, _>>()?;
            let brute = if a.brute { Some(sbeta_brute_force(a.n, a.beta, exec(a.sequential))?) } else { None };
            let beta0 = beta0_threshold(a.beta0_tol)?;
            Ok((
                json!({ "n": a.n, "beta": a.beta, "infimum": infimum, "thresholds": thresholds, "beta0": beta0, "brute_force": brute }),
                OK,
            ))
        }
        Command::Zeta(a) => {
            let args = nesbitt::zeta::ZetaArgs::new(a.z, a.beta, a.a)?;
            let sum = hurwitz_lerch_with_cap(&args, a.abs_tol, a.cap)?;
            let mut out = json!({ "z": a.z, "beta": a.beta, "a": a.a, "zeta": sum });
            let mut code = OK;
            if let Some(r) = a.r {
                let alpha = a.alpha.unwrap_or(a.a);
                out["r"] = json!(r);
                out["alpha"] = json!(alpha);
                out["case"] = to_value(&extremal_case(a.beta, r, alpha)?);
                let x = a.x.as_deref().map(parse_point).transpose()?.map(SimplexPoint::new).transpose()?;
                let n = a.n.or(x.as_ref().map(|x| x.len())).unwrap_or(3);
                let uniform = weighted_zeta_sum(&SimplexPoint::uniform(n)?, a.z, a.beta, a.a, r, a.abs_tol)?;
                out["n"] = json!(n);
                out["uniform"] = json!(uniform);
                if let Some(x) = &x {
                    out["x"] = json!(x.coords());
                    out["weighted"] = json!(weighted_zeta_sum(x, a.z, a.beta, a.a, r, a.abs_tol)?);
                }
                if a.samples > 0 {
                    let prob = ZetaProblem { n, z: a.z, beta: a.beta, a_n: a.a, r, alpha };
                    let rep = check_extremality(&prob, a.samples, a.seed, 1e-10, a.abs_tol, exec(a.sequential))?;
                    if rep.violations > 0 {
                        code = COUNTEREXAMPLE;
                    }
                    out["extremality"] = to_value(&rep);
                }
            } else if a.x.is_some() || a.samples > 0 {
                return Err(usage("--x and --samples need --r"));
            }
            Ok((out, code))
        }
        Command::Suite(a) => {
            let ids: Vec<u8> =
                if a.only.is_empty() { suite::CRITERIA.iter().map(|c| c.0).collect() } else { a.only.clone() };
            let mut outcomes = Vec::new();
            for id in ids {
                let o = suite::run(id, exec(a.sequential))?;
                eprintln!("{o}");
                outcomes.push(o);
            }
            let code = if outcomes.iter().all(|o| o.passed) { OK } else { COUNTEREXAMPLE };
            Ok((to_value(&outcomes), code))
        }
    }
}

/// `key: value` lines with dotted paths for nested objects.
fn table(prefix: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                table(&key, child, out);
            }
        }
        Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
            for (i, child) in items.iter().enumerate() {
                table(&format!("{prefix}[{i}]"), child, out);
            }
        }
        other => out.push(format!("{prefix}: {other}")),
    }
}

fn load_config(path: &Path) -> Result<RunConfig, Failure> {
    let v: Value = serde_json::from_str(&read(path)?).map_err(|e| usage(format!("bad config file: {e}")))?;
    let inner = v.get("config").cloned().unwrap_or(v);
    serde_json::from_value(inner).map_err(|e| usage(format!("bad config: {e}")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::from(OK),
                _ => ExitCode::from(USAGE),
            };
        }
    };
    let config = match (cli.config, cli.command) {
        (Some(_), Some(_)) => Err(usage("--config cannot be combined with a subcommand")),
        (Some(path), None) => load_config(&path).map(|c| RunConfig { format: cli.format.unwrap_or(c.format), ..c }),
        (None, Some(command)) => {
            inline(command).map(|command| RunConfig { command, format: cli.format.unwrap_or(Format::Json) })
        }
        (None, None) => Err(usage("no subcommand given; see --help")),
    };
    let config = match config {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(e.code());
        }
    };
    match run(&config.command) {
        Ok((result, code)) => {
            let doc = json!({ "config": config, "result": result });
            match config.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&doc).expect("serializable")),
                Format::Table => {
                    let mut lines = Vec::new();
                    table("", &result, &mut lines);
                    println!("{}", lines.join("\n"));
                }
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.code())
        }
    }
}
