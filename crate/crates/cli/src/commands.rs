use std::path::Path;

use latnorm::divergence::{self, DivergenceKind};
use latnorm::oracle::{oracle_divergence, BoxSpec};
use latnorm::sampling::{sample_exact_eps, sample_h1, sample_h2};
use latnorm::{
    model, moments_from_natural, natural_from_moments, Family, Lattice, MomentParam, NaturalParam, NewtonSettings,
    OrderParams, RandomState, SampleBatch, TruncationSpec,
};
use serde_json::{json, Value};

use crate::paramfile::{moment_json, natural_json, Block, Loaded, ParamFile};
use crate::{CliError, Command, Method, Target};

const REF_BHATTACHARYYA: f64 = 1.6259948590224578;
const REF_KL: f64 = 7.841371347366552;
const REF_ALPHA: f64 = 0.9999999999;

type Res<T> = Result<T, CliError>;

pub fn dispatch(cmd: Command) -> Res<String> {
    let v = match cmd {
        Command::Theta { params, eps } => theta(&params, eps)?,
        Command::Pmf { params, point, eps } => pmf(&params, &point, eps)?,
        Command::Divergence {
            kind,
            p,
            q,
            alpha,
            beta,
            gamma,
            oracle,
            eps,
            tol,
        } => divergence_cmd(&kind, &p, &q, OrderParams { alpha, beta, gamma }, oracle, eps, tol)?,
        Command::Convert { to, params, tol, eps } => convert(to, &params, tol, eps)?,
        Command::Sample {
            params,
            n,
            method,
            seed,
            csv,
            eps,
            tol,
        } => {
            let (batch, v) = sample(&params, n, method, seed, eps, tol)?;
            if csv {
                return Ok(to_csv(&batch));
            }
            v
        }
        Command::Mle { data, tol, eps } => mle(&data, tol, eps)?,
        Command::Chernoff { p, q, eps, tol } => chernoff(&p, &q, eps, tol)?,
        Command::Reproduce { eps } => reproduce(eps)?,
    };
    Ok(format!("{v}\n"))
}

fn check_eps(eps: f64) -> Res<()> {
    TruncationSpec::with_eps(eps).validate().map_err(CliError::from)
}

fn check_tol(tol: f64) -> Res<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(CliError::usage(format!("tol must be positive, got {tol}")))
    }
}

/// Natural parameters of a loaded file, solving for them when the file holds `(μ, Σ)`.
fn natural_of(loaded: &Loaded, family: &Family, tol: f64) -> Res<(NaturalParam, Option<usize>)> {
    match &loaded.block {
        Block::Natural(xi) => Ok((xi.clone(), None)),
        Block::Moment(o) => {
            let eta = MomentParam::from_ordinary(o);
            let c = natural_from_moments(family, &eta, &NewtonSettings::with_tol(tol))?;
            Ok((c.xi, Some(c.iterations)))
        }
    }
}

fn echo(path: &Path, loaded: &Loaded) -> Value {
    json!({ "file": path.display().to_string(), "params": loaded.raw })
}

fn theta(path: &Path, eps: f64) -> Res<Value> {
    check_eps(eps)?;
    let loaded = ParamFile::load(path)?;
    let fam = loaded.family(eps);
    let (xi, iters) = natural_of(&loaded, &fam, crate::DEFAULT_TOL)?;
    let t = fam.theta(&xi)?;
    Ok(json!({
        "command": "theta",
        "value": t.value,
        "log_value": t.log_value,
        "tail_bound": t.tail_bound,
        "points_used": t.points_used,
        "accuracy": {
            "tail_bound": t.tail_bound,
            "log_error_bound": t.log_error_bound(),
            "radius": t.radius,
            "newton_iterations": iters,
        },
        "config": { "eps": eps, "p": echo(path, &loaded) },
    }))
}

fn parse_point(s: &str, dim: usize) -> Res<Vec<f64>> {
    let v: Result<Vec<f64>, _> = s.split(',').map(|t| t.trim().parse::<f64>()).collect();
    let v = v.map_err(|e| CliError::usage(format!("bad --point '{s}': {e}")))?;
    if v.len() != dim {
        return Err(CliError::usage(format!("--point needs {dim} coordinates, got {}", v.len())));
    }
    Ok(v)
}

fn pmf(path: &Path, point: &str, eps: f64) -> Res<Value> {
    check_eps(eps)?;
    let loaded = ParamFile::load(path)?;
    let fam = loaded.family(eps);
    let (xi, _) = natural_of(&loaded, &fam, crate::DEFAULT_TOL)?;
    let l = parse_point(point, xi.dim())?;
    let t = fam.theta(&xi)?;
    let log_p = model::log_pmf(&fam, &xi, &l)?;
    Ok(json!({
        "command": "pmf",
        "point": l,
        "pmf": log_p.exp(),
        "log_pmf": log_p,
        "unnormalized": model::unnormalized_pmf(&xi, &l),
        "accuracy": { "log_error_bound": t.log_error_bound() },
        "config": { "eps": eps, "p": echo(path, &loaded) },
    }))
}

fn same_lattice(a: &Lattice, b: &Lattice) -> Res<()> {
    if a.dim() != b.dim() || (a.basis() - b.basis()).amax() > 1e-12 || (a.shift() - b.shift()).amax() > 1e-12 {
        return Err(CliError::usage("both parameter files must describe the same lattice"));
    }
    Ok(())
}

fn load_pair(p: &Path, q: &Path, eps: f64, tol: f64) -> Res<(Loaded, Loaded, Family, NaturalParam, NaturalParam)> {
    check_eps(eps)?;
    check_tol(tol)?;
    let lp = ParamFile::load(p)?;
    let lq = ParamFile::load(q)?;
    same_lattice(&lp.lattice, &lq.lattice)?;
    let fam = lp.family(eps);
    let (xp, _) = natural_of(&lp, &fam, tol)?;
    let (xq, _) = natural_of(&lq, &fam, tol)?;
    Ok((lp, lq, fam, xp, xq))
}

fn order_json(o: &OrderParams) -> Value {
    json!({ "alpha": o.alpha, "beta": o.beta, "gamma": o.gamma })
}

fn divergence_cmd(
    kind: &str,
    p: &Path,
    q: &Path,
    order: OrderParams,
    oracle: bool,
    eps: f64,
    tol: f64,
) -> Res<Value> {
    let kind: DivergenceKind = kind.parse()?;
    let (lp, lq, fam, xp, xq) = load_pair(p, q, eps, tol)?;
    let r = divergence::divergence(kind, &fam, &xp, &xq, &order)?;
    let mut out = json!({
        "command": "divergence",
        "kind": kind.name(),
        "value": r.value,
        "est_abs_error": r.est_abs_error,
        "order": order_json(&r.order_params),
        "accuracy": { "est_abs_error": r.est_abs_error, "theta_evals": r.theta_evals },
        "config": {
            "kind": kind.name(),
            "order": order_json(&order),
            "eps": eps,
            "tol": tol,
            "oracle": oracle,
            "p": echo(p, &lp),
            "q": echo(q, &lq),
        },
    });
    if oracle {
        let spec = BoxSpec::default_for(fam.dim());
        let o = oracle_divergence(kind, &xp, &xq, &order, &fam.lattice, &spec)?;
        out["oracle_value"] = json!(o);
        out["accuracy"]["oracle_abs_diff"] = json!((o - r.value).abs());
    }
    Ok(out)
}

fn convert(to: Target, path: &Path, tol: f64, eps: f64) -> Res<Value> {
    check_eps(eps)?;
    check_tol(tol)?;
    let loaded = ParamFile::load(path)?;
    let fam = loaded.family(eps);
    let config = json!({ "to": target_name(to), "tol": tol, "eps": eps, "p": echo(path, &loaded) });
    let out = match to {
        Target::Natural => {
            let (xi, iterations, residual, log_normalizer) = match &loaded.block {
                Block::Natural(xi) => (xi.clone(), 0, 0.0, fam.log_theta(xi)?),
                Block::Moment(o) => {
                    let eta = MomentParam::from_ordinary(o);
                    let c = natural_from_moments(&fam, &eta, &NewtonSettings::with_tol(tol))?;
                    (c.xi, c.iterations, c.residual, c.psi.psi0)
                }
            };
            json!({
                "command": "convert",
                "natural": natural_json(&xi),
                "log_normalizer": log_normalizer,
                "iterations": iterations,
                "accuracy": { "residual": residual },
                "config": config,
            })
        }
        Target::Moment => {
            let eta = match &loaded.block {
                Block::Natural(xi) => moments_from_natural(&fam, xi)?,
                Block::Moment(o) => MomentParam::from_ordinary(o),
            };
            let bound = match &loaded.block {
                Block::Natural(xi) => fam.theta(xi)?.log_error_bound(),
                Block::Moment(_) => 0.0,
            };
            json!({
                "command": "convert",
                "moment": moment_json(&eta),
                "iterations": 0,
                "accuracy": { "log_error_bound": bound },
                "config": config,
            })
        }
    };
    Ok(out)
}

fn target_name(t: Target) -> &'static str {
    match t {
        Target::Natural => "natural",
        Target::Moment => "moment",
    }
}

fn sample(path: &Path, n: usize, method: Method, seed: u64, eps: f64, tol: f64) -> Res<(SampleBatch, Value)> {
    check_eps(eps)?;
    check_tol(tol)?;
    let loaded = ParamFile::load(path)?;
    let fam = loaded.family(eps);
    let mut rng = RandomState::new(seed);
    let batch = match method {
        Method::Exact => {
            let (xi, _) = natural_of(&loaded, &fam, tol)?;
            sample_exact_eps(&fam, &xi, n, eps, &mut rng)?
        }
        Method::H2 => {
            let (xi, _) = natural_of(&loaded, &fam, tol)?;
            sample_h2(&fam, &xi, n, &mut rng)?
        }
        Method::H1 => {
            if !fam.lattice.is_integer() {
                return Err(CliError::usage("method h1 rounds to Z^d; the lattice must be the integer lattice"));
            }
            let o = match &loaded.block {
                Block::Moment(o) => o.clone(),
                Block::Natural(xi) => moments_from_natural(&fam, xi)?.to_ordinary()?,
            };
            sample_h1(o.mu(), o.sigma(), n, &mut rng)?
        }
    };
    let v = json!({
        "command": "sample",
        "method": batch.method.name(),
        "n": batch.len(),
        "points": batch.points,
        "indices": batch.indices,
        "accept_rate": batch.accept_rate,
        "accuracy": { "tv_bound": if matches!(method, Method::Exact) { Some(eps) } else { None } },
        "config": {
            "method": batch.method.name(),
            "n": n,
            "seed": seed,
            "eps": eps,
            "tol": tol,
            "p": echo(path, &loaded),
        },
    });
    Ok((batch, v))
}

fn to_csv(batch: &SampleBatch) -> String {
    let d = batch.points.first().map_or(0, Vec::len);
    let mut out = (1..=d).map(|i| format!("x{i}")).collect::<Vec<_>>().join(",");
    out.push('\n');
    for p in &batch.points {
        let row: Vec<String> = p.iter().map(|v| format!("{v}")).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Reads a CSV with header `x1,...,xd` and one point per row.
fn read_csv(path: &Path) -> Res<Vec<Vec<f64>>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| CliError::usage("empty CSV file"))?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    let expected: Vec<String> = (1..=cols.len()).map(|i| format!("x{i}")).collect();
    if cols != expected {
        return Err(CliError::usage(format!("CSV header must be {}, got '{header}'", expected.join(","))));
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let row: Result<Vec<f64>, _> = line.split(',').map(|t| t.trim().parse::<f64>()).collect();
        let row = row.map_err(|e| CliError::usage(format!("CSV row {}: {e}", i + 2)))?;
        if row.len() != cols.len() {
            return Err(CliError::usage(format!("CSV row {} has {} fields, expected {}", i + 2, row.len(), cols.len())));
        }
        if row.iter().any(|v| v.fract() != 0.0) {
            return Err(CliError::usage(format!("CSV row {}: coordinates must be integers", i + 2)));
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CliError::usage("CSV file has no data rows"));
    }
    Ok(rows)
}

fn mle(path: &Path, tol: f64, eps: f64) -> Res<Value> {
    check_eps(eps)?;
    check_tol(tol)?;
    let rows = read_csv(path)?;
    let d = rows[0].len();
    let eta = model::mle(&rows)?;
    let fam = Family::new(Lattice::integer(d), TruncationSpec::with_eps(eps));
    let c = natural_from_moments(&fam, &eta, &NewtonSettings::with_tol(tol))?;
    Ok(json!({
        "command": "mle",
        "samples": rows.len(),
        "moment": moment_json(&eta),
        "natural": natural_json(&c.xi),
        "iterations": c.iterations,
        "accuracy": { "residual": c.residual },
        "config": { "data": path.display().to_string(), "tol": tol, "eps": eps },
    }))
}

fn chernoff(p: &Path, q: &Path, eps: f64, tol: f64) -> Res<Value> {
    let (lp, lq, fam, xp, xq) = load_pair(p, q, eps, tol)?;
    let c = divergence::chernoff(&fam, &xp, &xq, divergence::BisectionSettings::default().tol)?;
    Ok(json!({
        "command": "chernoff",
        "value": c.value,
        "alpha_star": c.alpha_star,
        "accuracy": { "gap": c.gap, "iterations": c.iterations, "theta_evals": c.theta_evals },
        "config": { "eps": eps, "tol": tol, "p": echo(p, &lp), "q": echo(q, &lq) },
    }))
}

fn reproduce(eps: f64) -> Res<Value> {
    check_eps(eps)?;
    let fam = Family::new(Lattice::integer(2), TruncationSpec::with_eps(eps));
    let p = NaturalParam::diagonal(&[-0.2, -0.2], &[0.1, 0.2])?;
    let q = NaturalParam::diagonal(&[0.2, 0.2], &[0.15, 0.25])?;
    let bd = divergence::bhattacharyya(&fam, &p, &q)?;
    let kl = divergence::renyi(&fam, &p, &q, REF_ALPHA)?;
    let kl_exact = divergence::kl_bregman(&fam, &p, &q)?;
    let bd_ok = (bd.value - REF_BHATTACHARYYA).abs() <= 1e-6;
    let kl_ok = (kl.value - REF_KL).abs() <= 1e-4;
    Ok(json!({
        "command": "reproduce",
        "bhattacharyya": bd.value,
        "kl": kl.value,
        "pass": bd_ok && kl_ok,
        "checks": {
            "bhattacharyya": { "expected": REF_BHATTACHARYYA, "tolerance": 1e-6, "pass": bd_ok },
            "kl": {
                "expected": REF_KL,
                "tolerance": 1e-4,
                "pass": kl_ok,
                "renyi_alpha": REF_ALPHA,
                "kl_bregman": kl_exact.value,
            },
        },
        "accuracy": { "bhattacharyya_est_abs_error": bd.est_abs_error, "kl_est_abs_error": kl.est_abs_error },
        "config": { "eps": eps, "p": natural_json(&p), "q": natural_json(&q) },
    }))
}
