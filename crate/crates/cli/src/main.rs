use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use gaussforge_core::conway::{build_quintuple, nabla_m, verify_skein};
use gaussforge_core::generators::{
    complete_graph_diagram, directed_earring_diagram, earring, earring_diagram, stock_diagram, stock_diagrams,
    theta_witness,
};
use gaussforge_core::lattice::{binomial, group_rank, omega_upper, rank_lower, Flavor, Q1Strategy, RankOptions};
use gaussforge_core::moves::random_walk_steps;
use gaussforge_core::verification::{invariance_fuzz, kauffman_degree_check, FuzzConfig};
use gaussforge_core::{from_json, parse_gauss_code, serialize, to_json, ArrowId, Bound, Error, GaussDiagram};
use serde_json::{json, Value};

mod config;
mod invariant;

use config::Config;
use invariant::{Invariant, InvariantArgs};

const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "gaussforge", version, about = "Labelled Gauss diagram invariants and lattice ranks")]
struct Cli {
    /// Print machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// File of `key=value` defaults (max_arrows, max_generators, m, max_degree, seed).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Read a diagram and print its canonical form.
    Parse { input: String },
    /// Evaluate an invariant on a diagram.
    Eval {
        #[command(flatten)]
        invariant: InvariantArgs,
        input: String,
    },
    /// Print the labelled Conway polynomial.
    Conway {
        #[arg(long)]
        m: Option<Bound>,
        #[arg(long)]
        max_degree: Option<u32>,
        input: String,
    },
    /// Check the skein relation at two linked arrows of a diagram.
    SkeinCheck {
        #[arg(long)]
        m: Option<Bound>,
        #[arg(long)]
        max_degree: Option<u32>,
        input: String,
        x: ArrowId,
        y: ArrowId,
    },
    /// Rank of a presented lattice group.
    Rank {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value = "directed_Q")]
        flavor: Flavor,
        #[arg(long, value_enum, default_value_t = Q1Mode::Rows)]
        q1: Q1Mode,
    },
    /// Closed-form lower and upper rank bounds.
    Bounds {
        #[arg(long)]
        t: u64,
        #[arg(long)]
        m: u64,
    },
    /// Emit a witness diagram.
    Generate {
        #[arg(long, value_enum)]
        family: Family,
        /// Comma-separated `key=value` parameters, e.g. `m=3,k=2`.
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate an invariant along seeded random Reidemeister walks.
    Fuzz {
        #[command(flatten)]
        invariant: InvariantArgs,
        #[arg(long, default_value_t = 4)]
        walks: usize,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        max_arrows: Option<usize>,
        /// Write every visited diagram as a JSON line (`-` for stdout).
        #[arg(long, value_name = "FILE")]
        trajectories: Option<String>,
        /// Base diagrams; all stock diagrams when empty.
        inputs: Vec<String>,
    },
    /// Alternating crossing-switch sums of an integer invariant.
    DegreeCheck {
        #[command(flatten)]
        invariant: InvariantArgs,
        #[arg(long)]
        order: usize,
        input: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Q1Mode {
    Rows,
    DropColumns,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Complete,
    Earring,
    Dmk,
    Lm,
    Stock,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Successful runs either confirm the property checked or refute it.
enum Verdict {
    Holds,
    Fails,
}

/// Diagram source: a file path, `-` for stdin, or `stock:<name>`.
fn load_diagram(source: &str) -> Result<GaussDiagram> {
    if let Some(name) = source.strip_prefix("stock:") {
        return stock_diagram(name).with_context(|| format!("no stock diagram named `{name}`"));
    }
    let text = if source == "-" {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        std::fs::read_to_string(source).with_context(|| format!("reading {source}"))?
    };
    let parsed = if text.trim_start().starts_with('{') { from_json(&text) } else { parse_gauss_code(&text) };
    parsed.with_context(|| format!("parsing {source}"))
}

fn emit(out: &mut impl Write, json_mode: bool, command: &str, mut doc: Value, text: impl FnOnce() -> String) -> Result<()> {
    if json_mode {
        let map = doc.as_object_mut().expect("reports are objects");
        map.insert("schema".into(), SCHEMA.into());
        map.insert("command".into(), command.into());
        writeln!(out, "{doc}")?;
    } else {
        writeln!(out, "{}", text())?;
    }
    Ok(())
}

fn parse_params(text: &str) -> Result<Vec<(String, String)>> {
    text.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let (k, v) = p.split_once('=').with_context(|| format!("parameter `{p}` is not key=value"))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

fn param<T: std::str::FromStr>(params: &[(String, String)], key: &str) -> Result<T> {
    let (_, raw) = params.iter().find(|(k, _)| k == key).with_context(|| format!("missing parameter `{key}`"))?;
    raw.parse().map_err(|_| anyhow::anyhow!("parameter `{key}` has bad value `{raw}`"))
}

fn generate(family: Family, params: &[(String, String)]) -> Result<Vec<(String, GaussDiagram)>> {
    let allowed: &[&str] = match family {
        Family::Complete => &["k"],
        Family::Earring => &["w"],
        Family::Dmk => &["m", "k", "directed"],
        Family::Lm => &["m"],
        Family::Stock => &["name"],
    };
    if let Some((k, _)) = params.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
        bail!("unknown parameter `{k}`; expected {}", allowed.join(", "));
    }
    let positive = |key: &str| -> Result<usize> {
        let v: usize = param(params, key)?;
        if v == 0 {
            bail!("parameter `{key}` must be positive");
        }
        Ok(v)
    };
    Ok(match family {
        Family::Complete => vec![("complete".into(), complete_graph_diagram(positive("k")?))],
        Family::Earring => vec![("earring".into(), earring(param(params, "w")?))],
        Family::Dmk => {
            let (m, k) = (positive("m")?, positive("k")?);
            let directed = params.iter().any(|(key, _)| key == "directed") && param::<bool>(params, "directed")?;
            let d = if directed { directed_earring_diagram(m, k) } else { earring_diagram(m, k) };
            vec![("dmk".into(), d)]
        }
        Family::Lm => vec![("lm".into(), theta_witness(positive("m")?))],
        Family::Stock => match params.iter().find(|(k, _)| k == "name") {
            Some((_, name)) => {
                vec![(name.clone(), stock_diagram(name).with_context(|| format!("no stock diagram `{name}`"))?)]
            }
            None => stock_diagrams().into_iter().map(|(n, _, d)| (n.to_string(), d)).collect(),
        },
    })
}

fn run(cli: Cli, out: &mut impl Write) -> Result<Verdict> {
    let config = Config::load(cli.config.as_deref())?;
    let json_mode = cli.json;
    let degree = |d: Option<u32>| -> Result<u32> {
        let d = d.unwrap_or(config.max_degree);
        if !d.is_multiple_of(2) {
            bail!("--max-degree must be even, got {d}");
        }
        Ok(d)
    };
    match cli.command {
        Command::Parse { input } => {
            let d = load_diagram(&input)?;
            let text = serialize(&d);
            let doc = json!({
                "arrows": d.len(),
                "text": text,
                "diagram": serde_json::from_str::<Value>(&to_json(&d.canonicalize()))?,
            });
            emit(out, json_mode, "parse", doc, || text.clone())?;
        }
        Command::Eval { invariant, input } => {
            let inv = Invariant::resolve(&invariant, config.m, config.max_degree)?;
            let d = load_diagram(&input)?;
            let doc = json!({ "invariant": inv.name(), "value": inv.json_value(&d)? });
            let value = inv.evaluate(&d)?;
            emit(out, json_mode, "eval", doc, || value)?;
        }
        Command::Conway { m, max_degree, input } => {
            let (m, max_degree) = (m.unwrap_or(config.m), degree(max_degree)?);
            let d = load_diagram(&input)?;
            let poly = nabla_m(&d, m, max_degree)?;
            let doc = json!({
                "m": m,
                "max_degree": max_degree,
                "coefficients": poly.coefficients,
                "polynomial": poly.to_string(),
            });
            emit(out, json_mode, "conway", doc, || poly.to_string())?;
        }
        Command::SkeinCheck { m, max_degree, input, x, y } => {
            let (m, max_degree) = (m.unwrap_or(config.m), degree(max_degree)?);
            let d = load_diagram(&input)?;
            let quintuple = build_quintuple(&d, x, y)?;
            let report = verify_skein(&quintuple, m, max_degree)?;
            let mut doc = serde_json::to_value(&report)?;
            doc["x"] = x.into();
            doc["y"] = y.into();
            emit(out, json_mode, "skein-check", doc, || {
                let mut lines: Vec<String> = report
                    .terms
                    .iter()
                    .map(|t| format!("z^{}: lhs {} rhs {}", t.degree, t.lhs, t.rhs))
                    .collect();
                lines.push(if report.holds { "holds".into() } else { "FAILS".into() });
                lines.join("\n")
            })?;
            if !report.holds {
                return Ok(Verdict::Fails);
            }
        }
        Command::Rank { t, m, flavor, q1 } => {
            let options = RankOptions {
                budget: config.max_generators,
                q1: match q1 {
                    Q1Mode::Rows => Q1Strategy::Rows,
                    Q1Mode::DropColumns => Q1Strategy::DropColumns,
                },
            };
            let report = group_rank(t, m, flavor, &options)?;
            let lower = rank_lower(t as u64, m as u64)?;
            let upper = if t == 0 { None } else { Some(omega_upper(t as u64, m as u64)?) };
            let mut doc = serde_json::to_value(&report)?;
            doc["lower"] = lower.to_string().parse::<Value>()?;
            doc["upper"] = upper.map_or(Value::Null, |u| u.to_string().parse().expect("integer literal"));
            let sandwiched = report.rank as i128 >= lower && upper.is_none_or(|u| report.rank as i128 <= u);
            emit(out, json_mode, "rank", doc, || {
                let upper = upper.map_or("-".to_string(), |u| u.to_string());
                format!(
                    "flavor {flavor}\ngenerators {}\nrelations {}\nrank {}\nlower {lower}\nupper {upper}",
                    report.generators, report.relations, report.rank
                )
            })?;
            if flavor == Flavor::DirectedQ && !sandwiched {
                return Ok(Verdict::Fails);
            }
        }
        Command::Bounds { t, m } => {
            if m == 0 {
                bail!("--m must be positive");
            }
            let lower = rank_lower(t, m)?;
            let upper = if t == 0 { None } else { Some(omega_upper(t, m)?) };
            let graded = binomial(m + t, t)?;
            let big = |v: i128| v.to_string().parse::<Value>().expect("integer literal");
            let doc = json!({
                "t": t,
                "m": m,
                "lower": big(lower),
                "upper": upper.map_or(Value::Null, big),
                "graded_rank": big(graded),
            });
            emit(out, json_mode, "bounds", doc, || {
                format!("lower {lower}\nupper {}", upper.map_or("-".to_string(), |u| u.to_string()))
            })?;
        }
        Command::Generate { family, params, format } => {
            let diagrams = generate(family, &parse_params(&params)?)?;
            if json_mode {
                let list: Vec<Value> = diagrams
                    .iter()
                    .map(|(name, d)| {
                        Ok(json!({
                            "name": name,
                            "text": serialize(d),
                            "diagram": serde_json::from_str::<Value>(&to_json(d))?,
                        }))
                    })
                    .collect::<Result<_>>()?;
                emit(out, true, "generate", json!({ "diagrams": list }), String::new)?;
            } else {
                for (name, d) in &diagrams {
                    if diagrams.len() > 1 {
                        writeln!(out, "# {name}")?;
                    }
                    match format {
                        Format::Text => writeln!(out, "{}", serialize(d))?,
                        Format::Json => writeln!(out, "{}", to_json(d))?,
                    }
                }
            }
        }
        Command::Fuzz { invariant, walks, steps, seed, max_arrows, trajectories, inputs } => {
            let inv = Invariant::resolve(&invariant, config.m, config.max_degree)?;
            let bases: Vec<GaussDiagram> = if inputs.is_empty() {
                stock_diagrams().into_iter().map(|(_, _, d)| d).collect()
            } else {
                inputs.iter().map(|s| load_diagram(s)).collect::<Result<_>>()?
            };
            for b in &bases {
                inv.evaluate(b)?;
            }
            let fuzz = FuzzConfig {
                walks_per_base: walks,
                steps,
                seed: seed.unwrap_or(config.seed),
                max_arrows: max_arrows.unwrap_or(config.max_arrows),
            };
            if let Some(target) = trajectories {
                write_trajectories(&target, &bases, &fuzz, out)?;
            }
            let report = invariance_fuzz(
                |d| inv.evaluate(d).unwrap_or_else(|e| format!("error: {e}")),
                &bases,
                &fuzz,
            );
            let mut doc = serde_json::to_value(&report)?;
            doc["invariant"] = inv.name().into();
            doc["passed"] = report.passed().into();
            emit(out, json_mode, "fuzz", doc, || {
                let mut lines = vec![format!(
                    "{}: {} walks x {} steps, {} evaluations, {} violations",
                    inv.name(),
                    report.walks,
                    report.steps,
                    report.evaluations,
                    report.violations.len()
                )];
                lines.extend(report.violations.iter().map(|v| {
                    format!(
                        "base {} walk {} step {}: {} -> {} ({} -> {})",
                        v.base, v.walk, v.step, v.value_before, v.value_after, v.before, v.after
                    )
                }));
                lines.join("\n")
            })?;
            if !report.passed() {
                return Ok(Verdict::Fails);
            }
        }
        Command::DegreeCheck { invariant, order, input } => {
            let inv = Invariant::resolve(&invariant, config.m, config.max_degree)?;
            if !inv.is_integer() {
                bail!("degree-check needs an integer invariant (theta or c2n)");
            }
            let d = load_diagram(&input)?;
            inv.integer(&d)?;
            let report = kauffman_degree_check(|x| inv.integer(x).expect("checked on the base diagram"), &d, order);
            let mut doc = serde_json::to_value(&report)?;
            doc["invariant"] = inv.name().into();
            doc["bounded"] = report.bounded().into();
            emit(out, json_mode, "degree-check", doc, || {
                let witness = report
                    .witness
                    .as_ref()
                    .map_or("none".to_string(), |w| format!("{:?} sums to {}", w.arrows, w.value));
                format!(
                    "{}: {} subsets of size {}, {} nonzero\nwitness of size {}: {witness}",
                    inv.name(),
                    report.subsets_checked,
                    order + 1,
                    report.failures.len(),
                    order
                )
            })?;
            if !report.bounded() {
                return Ok(Verdict::Fails);
            }
        }
    }
    Ok(Verdict::Holds)
}

/// One JSON line per visited diagram, walks in the same order and with the
/// same seeds as the fuzz driver.
fn write_trajectories(target: &str, bases: &[GaussDiagram], fuzz: &FuzzConfig, stdout: &mut impl Write) -> Result<()> {
    let mut file;
    let sink: &mut dyn Write = if target == "-" {
        stdout
    } else {
        file = BufWriter::new(std::fs::File::create(target).with_context(|| format!("creating {target}"))?);
        &mut file
    };
    for (base, start) in bases.iter().enumerate() {
        for walk in 0..fuzz.walks_per_base {
            let seed = fuzz.seed.wrapping_add((base * fuzz.walks_per_base + walk) as u64);
            let line = |step: usize, mv: Value, d: &GaussDiagram| {
                json!({ "schema": SCHEMA, "base": base, "walk": walk, "seed": seed, "step": step, "move": mv, "diagram": serialize(d) })
            };
            writeln!(sink, "{}", line(0, Value::Null, start))?;
            for (i, step) in random_walk_steps(start, fuzz.steps, seed, fuzz.max_arrows).iter().enumerate() {
                writeln!(sink, "{}", line(i + 1, serde_json::to_value(step.instance)?, &step.diagram))?;
            }
        }
    }
    sink.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(Verdict::Holds) => ExitCode::SUCCESS,
        Ok(Verdict::Fails) => ExitCode::from(2),
        Err(e) => {
            let hint = match e.downcast_ref::<Error>() {
                Some(Error::SkeinHypotheses(_)) => " (the designated arrows are outside the skein hypotheses)",
                Some(Error::BudgetExceeded { .. }) => " (raise max_generators to allow it)",
                _ => "",
            };
            eprintln!("error: {e:#}{hint}");
            ExitCode::from(1)
        }
    }
}
