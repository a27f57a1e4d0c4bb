mod inputs;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand};
use reflex_core::counterexample::{verify_all, Config};
use reflex_core::duality::{ext_range, tr_report};
use reflex_core::groebner::{hilbert_cross_check, search_orders, spoly_reduce_check, MonomialOrder, OrderKind};
use reflex_core::resolution::minimal_resolution;
use reflex_core::{GradedAlgebra, Scalar};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "reflex", version, about = "Exact resolutions, Ext and TR_i checks over graded Artinian rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check on the built-in counterexample and write a report.
    VerifyPaper(VerifyArgs),
    /// Minimal free resolution of a module; prints its graded Betti table.
    Resolve(ResolveArgs),
    /// Hilbert functions of Ext^i(M, R) for i in a range.
    Ext(RangeArgs),
    /// Hilbert function of the ring (and of a module, if given).
    Hilbert(HilbertArgs),
    /// TR_i verdicts over a window of nonzero indices.
    TrCheck(TrArgs),
    /// Buchberger's criterion for the ring's relations.
    GroebnerCheck(GroebnerArgs),
}

#[derive(Args)]
struct Output {
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RingArgs {
    #[arg(long)]
    ring: PathBuf,
    /// Overrides the ring file's alpha.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "2", allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, default_value_t = 10)]
    window: usize,
    #[arg(long, default_value_t = 4)]
    smax: usize,
    /// Length of the resolution of the residue field.
    #[arg(long, default_value_t = 5)]
    res_depth: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ResolveArgs {
    #[command(flatten)]
    ring: RingArgs,
    #[arg(long)]
    module: PathBuf,
    #[arg(long, default_value_t = 4)]
    length: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct RangeArgs {
    #[command(flatten)]
    ring: RingArgs,
    #[arg(long)]
    module: PathBuf,
    #[arg(long, default_value_t = 0)]
    from: usize,
    #[arg(long, default_value_t = 4)]
    to: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct HilbertArgs {
    #[command(flatten)]
    ring: RingArgs,
    #[arg(long)]
    module: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct TrArgs {
    #[command(flatten)]
    ring: RingArgs,
    #[arg(long)]
    module: PathBuf,
    #[arg(long, default_value_t = -4, allow_hyphen_values = true)]
    from: i64,
    #[arg(long, default_value_t = 4, allow_hyphen_values = true)]
    to: i64,
    /// Indices where TR_i should hold: `i<N`, `i>N`, or a comma list such as `-2,-1,1`.
    #[arg(long, allow_hyphen_values = true)]
    expect: Option<String>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct GroebnerArgs {
    #[command(flatten)]
    ring: RingArgs,
    /// `kind:A>B>…` such as `degrevlex:V>X>Y>Z`; all orders are searched when omitted.
    #[arg(long)]
    order: Option<String>,
    #[command(flatten)]
    output: Output,
}

enum Outcome {
    Pass,
    Fail,
}

fn emit<T: Serialize>(value: &T, out: &Output) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match &out.out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn header(command: &str) -> Value {
    json!({ "tool": "reflex", "version": env!("CARGO_PKG_VERSION"), "command": command })
}

fn ring(args: &RingArgs) -> Result<GradedAlgebra> {
    inputs::load_ring(&args.ring, args.alpha.as_deref())
}

fn verify_paper(args: &VerifyArgs) -> Result<Outcome> {
    let alpha: Scalar = args.alpha.parse().map_err(|e| anyhow!("alpha: {e}"))?;
    let cfg = Config {
        alpha,
        window: args.window,
        s_max: args.smax,
        k_resolution_length: args.res_depth,
        ..Config::default()
    };
    cfg.validate()?;
    let report = verify_all(&cfg)?;
    let checks: Vec<Value> = report
        .checks()
        .iter()
        .map(|&(name, verdict)| {
            let payload = match name {
                "ring" => serde_json::to_value(&report.ring),
                "exactness" => serde_json::to_value(&report.exactness),
                "dual_homology" => serde_json::to_value(&report.dual_homology),
                "tr_family" => serde_json::to_value(&report.tr_family),
                "consistency" => serde_json::to_value(&report.consistency),
                "growth_koszul" => serde_json::to_value(&report.growth_koszul),
                "groebner" => serde_json::to_value(&report.groebner),
                "abs_controls" => serde_json::to_value(&report.abs_controls),
                _ => serde_json::to_value(&report.alpha_genericity),
            };
            Ok(json!({ "name": name, "verdict": verdict, "payload": payload? }))
        })
        .collect::<Result<_>>()?;
    let mut doc = header("verify-paper");
    doc["config"] = serde_json::to_value(&report.config)?;
    doc["H_R"] = serde_json::to_value(&report.ring.hilbert)?;
    doc["checks"] = Value::Array(checks);
    doc["overall"] = Value::Bool(report.overall);
    emit(&doc, &args.output)?;
    Ok(if report.overall { Outcome::Pass } else { Outcome::Fail })
}

fn resolve(args: &ResolveArgs) -> Result<Outcome> {
    let alg = ring(&args.ring)?;
    let m = inputs::load_module(&alg, &args.module)?;
    let res = minimal_resolution(&alg, &m, args.length)?;
    let mut doc = header("resolve");
    doc["module_hilbert"] = serde_json::to_value(m.hilbert())?;
    doc["ranks"] = serde_json::to_value(res.betti.ranks())?;
    doc["betti"] = serde_json::to_value(res.betti.records())?;
    doc["linear"] = Value::Bool(res.betti.is_linear());
    emit(&doc, &args.output)?;
    Ok(Outcome::Pass)
}

fn ext(args: &RangeArgs) -> Result<Outcome> {
    if args.from > args.to {
        bail!("--from must not exceed --to");
    }
    let alg = ring(&args.ring)?;
    let m = inputs::load_module(&alg, &args.module)?;
    let exts = ext_range(&alg, &m, args.from, args.to)?;
    let records: Vec<Value> = exts
        .iter()
        .enumerate()
        .map(|(k, h)| json!({ "i": args.from + k, "hilbert": h, "total_dim": h.total() }))
        .collect();
    let mut doc = header("ext");
    doc["ext"] = Value::Array(records);
    emit(&doc, &args.output)?;
    Ok(Outcome::Pass)
}

fn hilbert(args: &HilbertArgs) -> Result<Outcome> {
    let alg = ring(&args.ring)?;
    let mut doc = header("hilbert");
    doc["H_R"] = serde_json::to_value(alg.hilbert())?;
    doc["dimension"] = json!(alg.total_dim());
    doc["top_degree"] = json!(alg.top_degree()?);
    if let Some(path) = &args.module {
        doc["H_M"] = serde_json::to_value(inputs::load_module(&alg, path)?.hilbert())?;
    }
    emit(&doc, &args.output)?;
    Ok(Outcome::Pass)
}

/// Parses `i<N`, `i>N` or a comma list into a predicate on indices.
fn parse_expect(text: &str) -> Result<Box<dyn Fn(i64) -> bool>> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(n) = t.strip_prefix("i<") {
        let n: i64 = n.parse()?;
        return Ok(Box::new(move |i| i < n));
    }
    if let Some(n) = t.strip_prefix("i>") {
        let n: i64 = n.parse()?;
        return Ok(Box::new(move |i| i > n));
    }
    let set: Vec<i64> = if t.is_empty() {
        Vec::new()
    } else {
        t.split(',').map(str::parse).collect::<Result<_, _>>()?
    };
    Ok(Box::new(move |i| set.contains(&i)))
}

fn tr_check(args: &TrArgs) -> Result<Outcome> {
    if args.from > args.to {
        bail!("--from must not exceed --to");
    }
    let expect = args.expect.as_deref().map(parse_expect).transpose()?;
    let alg = ring(&args.ring)?;
    let m = inputs::load_module(&alg, &args.module)?;
    let report = tr_report(&alg, &args.module.display().to_string(), &m, args.from, args.to)?;
    let mut doc = header("tr-check");
    doc["report"] = serde_json::to_value(&report)?;
    let mut outcome = Outcome::Pass;
    if let Some(pred) = expect {
        let matches = report.records.iter().all(|r| r.vanishes == pred(r.i));
        doc["expect"] = json!(args.expect);
        doc["matches_expectation"] = Value::Bool(matches);
        if !matches {
            outcome = Outcome::Fail;
        }
    }
    emit(&doc, &args.output)?;
    Ok(outcome)
}

fn parse_order(text: &str, variables: &[String]) -> Result<MonomialOrder> {
    let (kind, prec) = text.split_once(':').unwrap_or((text, ""));
    let kind = OrderKind::parse(kind).ok_or_else(|| anyhow!("unknown order kind `{kind}`"))?;
    if prec.is_empty() {
        return Ok(MonomialOrder::standard(kind, variables.len()));
    }
    let precedence = prec
        .split('>')
        .map(|v| {
            variables
                .iter()
                .position(|x| x == v.trim())
                .ok_or_else(|| anyhow!("unknown variable `{v}` in the order"))
        })
        .collect::<Result<Vec<_>>>()?;
    if precedence.len() != variables.len() {
        bail!("the order must rank every variable");
    }
    MonomialOrder::new(kind, precedence).ok_or_else(|| anyhow!("the order repeats a variable"))
}

fn groebner_check(args: &GroebnerArgs) -> Result<Outcome> {
    let alg = ring(&args.ring)?;
    let mut spec = inputs::load_ring_spec(&args.ring.ring)?;
    spec.alpha = alg.alpha().clone();
    let mut doc = header("groebner-check");
    match &args.order {
        Some(text) => {
            let order = parse_order(text, &spec.variables)?;
            let check = spoly_reduce_check(&spec, &order);
            doc["check"] = serde_json::to_value(&check)?;
            if check.is_groebner {
                doc["hilbert_cross_check"] = serde_json::to_value(hilbert_cross_check(&spec, &alg, &order))?;
            }
        }
        None => {
            let search = search_orders(&spec);
            let orders = MonomialOrder::all(spec.variables.len());
            let cross: Vec<Value> = orders
                .iter()
                .filter(|o| search.successful.contains(&o.label(&spec.variables)))
                .map(|o| json!({ "order": o.label(&spec.variables), "cross_check": hilbert_cross_check(&spec, &alg, o) }))
                .collect();
            doc["search"] = serde_json::to_value(&search)?;
            doc["cross_checks"] = Value::Array(cross);
        }
    }
    emit(&doc, &args.output)?;
    Ok(Outcome::Pass)
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::VerifyPaper(a) => verify_paper(a),
        Command::Resolve(a) => resolve(a),
        Command::Ext(a) => ext(a),
        Command::Hilbert(a) => hilbert(a),
        Command::TrCheck(a) => tr_check(a),
        Command::GroebnerCheck(a) => groebner_check(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
