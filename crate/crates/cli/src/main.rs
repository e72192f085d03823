use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use nprime_core::construct::{self, GroupSpec};
use nprime_core::corpus::{self, CorpusConfig, OutputFormat, DEFAULT_SEED};
use nprime_core::criteria::verify_npq_psl2;
use nprime_core::graphs::{gk_graph, nprime_graph, GkMode};
use nprime_core::numtheory::{prime_divisors, prime_power};
use nprime_core::oracles::{self, DescentInstance};
use nprime_core::report::{all_passed, CheckRecord, Verdict};
use nprime_core::{PermGroup, Permutation};

/// N-prime graphs and prime graphs of finite groups, with verification suites.
#[derive(Debug, Parser)]
#[command(name = "nprime", version)]
struct Cli {
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Largest group order whose elements may be listed; overrides NPRIME_ENUMERATION_BOUND.
    #[arg(long, global = true)]
    enumeration_bound: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Structural summary of a group.
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
    /// Emit the N-prime graph or the prime graph of a group.
    Graph {
        #[command(subcommand)]
        command: GraphCommand,
    },
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        command: VerifyCommand,
    },
    /// Run a corpus configuration.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
}

#[derive(Debug, Subcommand)]
enum GroupCommand {
    Info { spec: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Orders,
    Double,
    Dominance,
}

impl From<Mode> for GkMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Orders => GkMode::ByOrders,
            Mode::Double => GkMode::ByDoubleArcs,
            Mode::Dominance => GkMode::ByDominance,
        }
    }
}

#[derive(Debug, Args)]
#[group(multiple = false)]
struct Format {
    /// Graphviz output.
    #[arg(long)]
    dot: bool,
    /// JSON output (the default).
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum GraphCommand {
    Nprime {
        spec: String,
        #[command(flatten)]
        format: Format,
    },
    Gk {
        spec: String,
        #[arg(long, value_enum, default_value_t = Mode::Orders)]
        mode: Mode,
        #[command(flatten)]
        format: Format,
    },
}

#[derive(Debug, Subcommand)]
enum VerifyCommand {
    /// N(G/M) is a subgraph of N(G) for every normal subgroup M.
    QuotientSubgraph {
        /// JSON array of group specs, or a corpus config.
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        max_order: u128,
    },
    /// Automorphism descent to a subgroup of order p.
    Descent {
        /// JSON instance file; without it, seeded random instances are checked.
        #[arg(long)]
        instance: Option<PathBuf>,
        /// Number of random instances.
        #[arg(long, default_value_t = 100)]
        random: usize,
    },
    /// Sylow-normalizer count for H with normal elementary abelian N.
    FrobeniusCount {
        /// Group spec for H; without it, the two standard instances are checked.
        #[arg(long, requires_all = ["normal_order", "p", "q", "k"])]
        spec: Option<String>,
        /// Order of N; the first normal subgroup of this order is used.
        #[arg(long)]
        normal_order: Option<usize>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        k: Option<u32>,
        /// Also check the stocking identity for all n up to this bound.
        #[arg(long, default_value_t = 256)]
        stocking: usize,
    },
    /// The N-prime graph of PSL(2,q) and the discharge of every non-arc.
    NpqPsl2 {
        #[arg(long)]
        q: u64,
    },
}

#[derive(Debug, Subcommand)]
enum CorpusCommand {
    Run { config: PathBuf },
}

fn build(spec: &str, bound: Option<usize>) -> Result<PermGroup> {
    let spec: GroupSpec = spec
        .parse()
        .with_context(|| format!("cannot parse group spec `{spec}`"))?;
    build_spec(&spec, bound)
}

fn build_spec(spec: &GroupSpec, bound: Option<usize>) -> Result<PermGroup> {
    let g = construct::build(spec)?;
    Ok(match bound {
        Some(b) => g.with_enumeration_bound(b),
        None => g,
    })
}

enum Outcome {
    /// A payload that is not a check report, e.g. a graph.
    Artifact(String),
    Records(Vec<CheckRecord>),
    /// Records already written elsewhere; only the summary and exit status remain.
    Written(Vec<CheckRecord>),
}

fn group_info(g: &PermGroup) -> Result<serde_json::Value> {
    let classes = g.conjugacy_classes()?;
    let rationality = g.rationality_report()?;
    Ok(json!({
        "name": g.name(),
        "degree": g.degree(),
        "order": g.order().to_string(),
        "primes": prime_divisors(g.order()),
        "generators": g.generators().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "abelian": g.is_abelian(),
        "class_count": classes.len(),
        "classes": classes.iter().map(|c| json!({
            "representative": c.representative.to_string(),
            "size": c.size,
            "order": c.element_order,
        })).collect::<Vec<_>>(),
        "rational": rationality.is_rational,
        "non_real_classes": rationality.non_real_classes.iter().map(|c| c.index).collect::<Vec<_>>(),
    }))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    group: GroupSpec,
    p_generators: Vec<String>,
    b: String,
    p: u64,
    q: u64,
    k: u32,
}

fn load_instance(path: &Path, bound: Option<usize>) -> Result<DescentInstance> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let file: InstanceFile = serde_json::from_str(&text)
        .with_context(|| format!("invalid instance file {}", path.display()))?;
    let group = build_spec(&file.group, bound)?;
    let perm = |s: &str| -> Result<Permutation> {
        Ok(Permutation::parse_cycles(s, Some(group.degree()))?)
    };
    Ok(DescentInstance {
        label: file.group.to_string(),
        p_generators: file
            .p_generators
            .iter()
            .map(|s| perm(s))
            .collect::<Result<_>>()?,
        b: perm(&file.b)?,
        group,
        p: file.p,
        q: file.q,
        k: file.k,
    })
}

fn load_corpus(path: &Path) -> Result<Vec<GroupSpec>> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    if let Ok(specs) = serde_json::from_str::<Vec<GroupSpec>>(&text) {
        return Ok(specs);
    }
    Ok(CorpusConfig::from_json(&text)
        .with_context(|| {
            format!(
                "{} is neither a list of group specs nor a corpus config",
                path.display()
            )
        })?
        .entries)
}

fn run(cli: &Cli) -> Result<Outcome> {
    let bound = cli.enumeration_bound;
    if bound == Some(0) {
        bail!("the enumeration bound must be positive");
    }
    Ok(match &cli.command {
        Command::Group {
            command: GroupCommand::Info { spec },
        } => Outcome::Artifact(serde_json::to_string(&group_info(&build(spec, bound)?)?)?),
        Command::Graph { command } => match command {
            GraphCommand::Nprime { spec, format } => {
                let n = nprime_graph(&build(spec, bound)?)?;
                Outcome::Artifact(if format.dot { n.to_dot() } else { n.to_json() })
            }
            GraphCommand::Gk { spec, mode, format } => {
                let g = gk_graph(&build(spec, bound)?, (*mode).into())?;
                Outcome::Artifact(if format.dot { g.to_dot() } else { g.to_json() })
            }
        },
        Command::Verify { command } => Outcome::Records(verify(command, cli.seed, bound)?),
        Command::Corpus {
            command: CorpusCommand::Run { config },
        } => {
            let text = fs::read_to_string(config)
                .with_context(|| format!("cannot read {}", config.display()))?;
            let mut cfg = CorpusConfig::from_json(&text)
                .with_context(|| format!("invalid corpus config {}", config.display()))?;
            if let Some(b) = bound {
                cfg.bounds.enumeration = Some(b);
            }
            let records = corpus::run(&cfg)?;
            let body = match cfg.output.format {
                OutputFormat::Jsonl => return write_jsonl(cfg.output.path.as_deref(), records),
                OutputFormat::Json => serde_json::to_string_pretty(&records)? + "\n",
            };
            match &cfg.output.path {
                Some(path) => fs::write(path, body)
                    .with_context(|| format!("cannot write {}", path.display()))?,
                None => print!("{body}"),
            }
            Outcome::Written(records)
        }
    })
}

fn write_jsonl(path: Option<&Path>, records: Vec<CheckRecord>) -> Result<Outcome> {
    let Some(path) = path else {
        return Ok(Outcome::Records(records));
    };
    let body: String = records.iter().map(|r| r.to_json_line() + "\n").collect();
    fs::write(path, body).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(Outcome::Written(records))
}

fn verify(command: &VerifyCommand, seed: u64, bound: Option<usize>) -> Result<Vec<CheckRecord>> {
    Ok(match command {
        VerifyCommand::QuotientSubgraph { corpus, max_order } => {
            let mut out = Vec::new();
            for spec in load_corpus(corpus)? {
                let g = build_spec(&spec, bound)?;
                out.extend(oracles::verify_quotient_subgraph(
                    &spec.to_string(),
                    &g,
                    *max_order,
                ));
            }
            out
        }
        VerifyCommand::Descent {
            instance: Some(path),
            ..
        } => {
            let inst = load_instance(path, bound)?;
            let record = match oracles::verify_action_descent(&inst) {
                Ok(a) => CheckRecord::new(
                    "descent",
                    inst.label.clone(),
                    Verdict::Pass,
                    json!({"p": inst.p, "q": inst.q, "k": inst.k, "witness": a.to_string()}),
                ),
                Err(e) => CheckRecord::new(
                    "descent",
                    inst.label.clone(),
                    Verdict::Fail,
                    json!({"error": e.to_string()}),
                ),
            };
            vec![record]
        }
        VerifyCommand::Descent {
            instance: None,
            random,
        } => oracles::descent_suite(*random, seed),
        VerifyCommand::FrobeniusCount {
            spec,
            normal_order,
            p,
            q,
            k,
            stocking,
        } => {
            let mut out = match spec {
                Some(spec) => {
                    let (n_order, p, q, k) =
                        (normal_order.unwrap(), p.unwrap(), q.unwrap(), k.unwrap());
                    let h = build(spec, bound)?;
                    let n = h
                        .normal_subgroups()?
                        .into_iter()
                        .find(|s| s.order() == n_order)
                        .with_context(|| {
                            format!("{spec} has no normal subgroup of order {n_order}")
                        })?;
                    let rep = oracles::verify_frobenius_count(&h, &n, p, q, k)?;
                    vec![CheckRecord::new(
                        "frobenius-count",
                        spec.clone(),
                        Verdict::from_bool(rep.passed(q, k)),
                        serde_json::to_value(&rep)?,
                    )]
                }
                None => oracles::frobenius_count_suite(),
            };
            out.push(CheckRecord::new(
                "stocking-identity",
                format!("n <= {stocking}"),
                Verdict::from_bool((1..=*stocking).all(oracles::stocking_identity)),
                json!({"max_n": stocking}),
            ));
            out
        }
        VerifyCommand::NpqPsl2 { q } => {
            let Some((r, f)) = prime_power(*q) else {
                bail!("q = {q} is not a prime power");
            };
            if r == 2 || *q < 5 {
                bail!("the driver needs an odd prime power q >= 5, got {q}");
            }
            let rep = verify_npq_psl2(r, f)?;
            vec![CheckRecord::new(
                "npq-psl2",
                format!("PSL(2,{q})"),
                Verdict::from_bool(rep.verified),
                json!({"report": rep.verdict(), "npq": rep}),
            )]
        }
    })
}

fn summarize(records: &[CheckRecord]) {
    let count = |v| records.iter().filter(|r| r.verdict == v).count();
    eprintln!(
        "{} checks: {} passed, {} failed, {} skipped",
        records.len(),
        count(Verdict::Pass),
        count(Verdict::Fail),
        count(Verdict::Skip)
    );
    for r in records.iter().filter(|r| r.verdict == Verdict::Fail) {
        eprintln!("FAIL {} {}", r.check, r.instance);
    }
    for r in records.iter().filter(|r| r.check == "npq-psl2") {
        eprintln!(
            "{}: {}",
            r.instance,
            r.detail["report"].as_str().unwrap_or("?")
        );
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(&cli) {
        Ok(Outcome::Artifact(text)) => {
            if !text.is_empty() {
                let _ = writeln!(out, "{text}");
            }
            ExitCode::SUCCESS
        }
        Ok(Outcome::Records(records)) => {
            for r in &records {
                let _ = writeln!(out, "{}", r.to_json_line());
            }
            summarize(&records);
            if all_passed(&records) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Ok(Outcome::Written(records)) => {
            summarize(&records);
            if all_passed(&records) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let report = json!({"verdict": "error", "error": format!("{e:#}")});
            let _ = writeln!(out, "{report}");
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
