use std::fmt::Write as _;

use anyhow::{anyhow, bail, Context, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use vtl_core::diagram::ElementRecord;
use vtl_core::presentation::{min_strands, relation_instances, solve_ab, Outcome, ParamsRecord};
use vtl_core::rep::{evaluate_word, DiagramRep, MatrixRep, Representation};
use vtl_core::scalar::parse_rational;
use vtl_core::serial::ScalarRecord;
use vtl_core::{check_all, parse_word, CheckReport, Family, QuadScalar, RepConfig, RhoParams};

use crate::properties::{diagram_properties, matrix_properties, PropertyReport};
use crate::{Algebra, Cli, Command, Format, RepArgs, RepKind};

const REPORT_VERSION: u32 = 1;

pub struct Output {
    pub text: String,
    pub status: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, status: 0 }
    }
}

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Verify { algebra, rep, n, params, samples } => verify(cli, *algebra, *rep, *n, params, *samples),
        Command::Solve { lambda } => solve(cli.format, lambda),
        Command::Eval { word, rep, n, params } => eval(cli.format, word, *rep, *n, params),
        Command::Trace { word, n, params } => trace(cli.format, word, *n, params),
    }
}

fn rational(flag: &str, text: &str) -> Result<QuadScalar> {
    let q = parse_rational(text).with_context(|| format!("--{flag}"))?;
    Ok(QuadScalar::rational(q))
}

fn resolve_params(args: &RepArgs) -> Result<RhoParams> {
    let lambda = rational("lambda", &args.lambda)?;
    let a = rational("a", &args.a)?;
    let c = rational("c", &args.c)?;
    let b = match args.b.as_str() {
        "b_plus" => solve_ab(&lambda)?.0,
        "b_minus" => solve_ab(&lambda)?.1,
        other => rational("b", other)?,
    };
    Ok(RhoParams::new(a, b, c, lambda)?)
}

fn matrix_config(n: usize, lambda: &str) -> Result<RepConfig> {
    let q = parse_rational(lambda).context("--dim")?;
    let d = if q.is_integer() { usize::try_from(q.to_integer()).ok() } else { None };
    match d {
        Some(d) if d >= 2 => Ok(RepConfig::new(n, d)?),
        _ => bail!("the matrix representation needs an integer dimension d >= 2, got {lambda}"),
    }
}

fn families(algebra: Algebra) -> Vec<Family> {
    use Family::*;
    let mut out = match algebra {
        Algebra::Brauer => return vec![Tlr, Vcr, Brauer],
        _ => vec![Tlr, Vcr, Vev, Vtl],
    };
    if matches!(algebra, Algebra::Wtl | Algebra::Utl) {
        out.extend([Ff1, Wtl1]);
    }
    if algebra == Algebra::Utl {
        out.extend([Ff2, Wtl2, Fu22]);
    }
    out
}

fn algebra_name(a: Algebra) -> &'static str {
    match a {
        Algebra::Vtl => "vtl",
        Algebra::Wtl => "wtl",
        Algebra::Utl => "utl",
        Algebra::Brauer => "brauer",
    }
}

fn rep_name(r: RepKind) -> &'static str {
    match r {
        RepKind::Diagram => "diagram",
        RepKind::Matrix => "matrix",
    }
}

#[derive(Serialize)]
struct VerifyFlags {
    algebra: &'static str,
    rep: &'static str,
    n: usize,
    lambda: String,
    a: String,
    b: String,
    c: String,
    samples: usize,
}

#[derive(Default, Serialize)]
struct Summary {
    pass: usize,
    fail: usize,
    negative_controls: usize,
    unasserted: usize,
    properties_failed: usize,
}

#[derive(Serialize)]
struct FamilySummary {
    family: Family,
    formula: &'static str,
    instances: usize,
    pass: usize,
    fail: usize,
    negative_controls: usize,
    unasserted: usize,
}

#[derive(Serialize)]
struct VerifyEnvelope {
    command: &'static str,
    report_version: u32,
    seed: u64,
    flags: VerifyFlags,
    params: ParamsRecord,
    summary: Summary,
    families: Vec<FamilySummary>,
    reports: Vec<CheckReport>,
    properties: Vec<PropertyReport>,
}

fn run_checks<R: Representation>(rep: &R, fams: &[Family], params: &RhoParams) -> Result<Vec<CheckReport>> {
    let mut instances = Vec::new();
    for &f in fams {
        instances.extend(relation_instances(f, rep.n(), params)?);
    }
    Ok(check_all(&instances, rep, params)?)
}

fn verify(cli: &Cli, algebra: Algebra, rep: RepKind, n: usize, args: &RepArgs, samples: usize) -> Result<Output> {
    let params = resolve_params(args)?;
    let fams = families(algebra);
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let (reports, properties) = match rep {
        RepKind::Diagram => {
            let r = DiagramRep::new(n, params.lambda.clone())?;
            let reports = run_checks(&r, &fams, &params)?;
            (reports, diagram_properties(n, &params.lambda, samples, &mut rng)?)
        }
        RepKind::Matrix => {
            let r = MatrixRep::new(matrix_config(n, &args.lambda)?)?;
            let reports = run_checks(&r, &fams, &params)?;
            (reports, matrix_properties(&r, samples, &mut rng)?)
        }
    };

    let mut summary = Summary::default();
    let mut per_family = Vec::new();
    for &f in &fams {
        let mut s = FamilySummary {
            family: f,
            formula: f.formula(),
            instances: 0,
            pass: 0,
            fail: 0,
            negative_controls: 0,
            unasserted: 0,
        };
        for r in reports.iter().filter(|r| r.family == f) {
            s.instances += 1;
            match r.outcome {
                Outcome::Pass => s.pass += 1,
                Outcome::Fail => s.fail += 1,
                Outcome::NegativeControl => s.negative_controls += 1,
                Outcome::Unasserted => s.unasserted += 1,
            }
        }
        summary.pass += s.pass;
        summary.fail += s.fail;
        summary.negative_controls += s.negative_controls;
        summary.unasserted += s.unasserted;
        per_family.push(s);
    }
    summary.properties_failed = properties.iter().filter(|p| !p.ok()).count();
    let status = u8::from(summary.fail > 0 || summary.properties_failed > 0);

    let envelope = VerifyEnvelope {
        command: "verify",
        report_version: REPORT_VERSION,
        seed: cli.seed,
        flags: VerifyFlags {
            algebra: algebra_name(algebra),
            rep: rep_name(rep),
            n,
            lambda: args.lambda.clone(),
            a: args.a.clone(),
            b: args.b.clone(),
            c: args.c.clone(),
            samples,
        },
        params: params.to_record(),
        summary,
        families: per_family,
        reports,
        properties,
    };
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&envelope)? + "\n",
        Format::Text => render_verify(&envelope, &params),
    };
    Ok(Output { text, status })
}

fn outcome_tag(o: Outcome) -> &'static str {
    match o {
        Outcome::Pass => "pass",
        Outcome::Fail => "FAIL",
        Outcome::NegativeControl => "nonzero (expected)",
        Outcome::Unasserted => "reported",
    }
}

fn render_verify(env: &VerifyEnvelope, params: &RhoParams) -> String {
    let f = &env.flags;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "verify algebra={} rep={} n={} lambda={} a={} b={} c={} seed={}",
        f.algebra, f.rep, f.n, f.lambda, f.a, f.b, f.c, env.seed
    );
    let _ = writeln!(
        out,
        "params: a = {}, b = {}, c = {}, λ = {}, D = {}",
        params.a,
        params.b,
        params.c,
        params.lambda,
        params.discriminant()
    );
    for fam in &env.families {
        let _ = writeln!(
            out,
            "{:<8} {} instances: {} pass, {} fail, {} negative controls, {} reported",
            fam.family.name(),
            fam.instances,
            fam.pass,
            fam.fail,
            fam.negative_controls,
            fam.unasserted
        );
        for r in env.reports.iter().filter(|r| r.family == fam.family) {
            let _ = write!(out, "  [{}] site {}: {}", outcome_tag(r.outcome), r.site, r.label);
            if !r.residual_zero {
                let _ = write!(out, "  (residual: {})", r.residual_norm);
            }
            out.push('\n');
        }
    }
    for p in &env.properties {
        let _ = write!(out, "property {}: {}/{}", p.name, p.passed, p.samples);
        if let Some(note) = &p.note {
            let _ = write!(out, " ({note})");
        }
        out.push('\n');
    }
    let s = &env.summary;
    let _ = writeln!(
        out,
        "summary: pass={} fail={} negative_controls={} unasserted={} properties_failed={}",
        s.pass, s.fail, s.negative_controls, s.unasserted, s.properties_failed
    );
    out
}

fn scalar_json(s: &QuadScalar) -> serde_json::Value {
    json!({ "exact": ScalarRecord::from(s), "text": s.to_string(), "approx": s.approx_string() })
}

fn solve(format: Format, lambda: &str) -> Result<Output> {
    let l = rational("lambda", lambda)?;
    let (bp, bm) = solve_ab(&l)?;
    let d = vtl_core::presentation::params::discriminant_of(l.as_rational().expect("parsed as rational"));
    let text = match format {
        Format::Json => {
            let v = json!({
                "command": "solve",
                "report_version": REPORT_VERSION,
                "lambda": lambda,
                "D": d.to_string(),
                "b_plus": scalar_json(&bp),
                "b_minus": scalar_json(&bm),
            });
            serde_json::to_string_pretty(&v)? + "\n"
        }
        Format::Text => {
            let mut out = format!("λ = {lambda}, D = λ² − 4 = {d}\n");
            for (name, b) in [("b_plus", &bp), ("b_minus", &bm)] {
                let _ = writeln!(
                    out,
                    "{name} = {b}   (x, y, D) = ({}, {}, {})   ≈ {}",
                    b.x(),
                    b.y(),
                    b.discriminant(),
                    b.approx_string()
                );
            }
            out
        }
    };
    Ok(Output::ok(text))
}

fn eval(format: Format, word: &str, rep: RepKind, n: Option<usize>, args: &RepArgs) -> Result<Output> {
    let n = n.unwrap_or_else(|| min_strands(word));
    let params = resolve_params(args)?;
    let w = parse_word(word, n)?;
    let (text_form, json_form) = match rep {
        RepKind::Diagram => {
            let r = DiagramRep::new(n, params.lambda.clone())?;
            let x = evaluate_word(&w, &r, &params)?;
            (format!("{x}\n"), json!({ "kind": "diagram", "element": ElementRecord::from(&x) }))
        }
        RepKind::Matrix => {
            let r = MatrixRep::new(matrix_config(n, &args.lambda)?)?;
            let m = evaluate_word(&w, &r, &params)?;
            (m.to_string(), json!({ "kind": "matrix", "matrix": m.to_record(&params.discriminant()) }))
        }
    };
    let text = match format {
        Format::Text => text_form,
        Format::Json => {
            let v = json!({
                "command": "eval",
                "report_version": REPORT_VERSION,
                "flags": { "word": word, "rep": rep_name(rep), "n": n, "lambda": args.lambda, "a": args.a, "b": args.b, "c": args.c },
                "result": json_form,
            });
            serde_json::to_string_pretty(&v)? + "\n"
        }
    };
    Ok(Output::ok(text))
}

fn trace(format: Format, word: &str, n: Option<usize>, args: &RepArgs) -> Result<Output> {
    let n = n.unwrap_or_else(|| min_strands(word));
    let params = resolve_params(args)?;
    let w = parse_word(word, n)?;
    let r = DiagramRep::new(n, params.lambda.clone())?;
    let x = evaluate_word(&w, &r, &params)?;
    let t = x.closure_trace(&params.lambda).map_err(|e| anyhow!(e))?;
    let text = match format {
        Format::Text => format!("{t}\n"),
        Format::Json => {
            let v = json!({
                "command": "trace",
                "report_version": REPORT_VERSION,
                "flags": { "word": word, "n": n, "lambda": args.lambda, "a": args.a, "b": args.b, "c": args.c },
                "trace": scalar_json(&t),
            });
            serde_json::to_string_pretty(&v)? + "\n"
        }
    };
    Ok(Output::ok(text))
}
