//! Batch front end. Every run prints one JSON document (or DOT text) and
//! exits with 0 when all checks pass, 1 when a check fails and 2 on a
//! configuration error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::angles::{parse_rational, Class, Model};
use crate::checks::{self, SuiteReport, SCHEMA};
use crate::circular::{density_witness, fmt_q, CircSample, SampleSpec};
use crate::formula::{Builtin, Formula};
use crate::fraisse::{check_class_properties, ef_game, enumerate_up_to_iso, StructureClass};
use crate::random::{find_witness, find_witnesses, Presentation, WitnessQuery};
use crate::structure::{wreath, FinStructure, Kind};

#[derive(Parser, Debug)]
#[command(name = "ultrahom", version, about = "Exact experiments on ultrahomogeneous tournaments and digraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a structure.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Evaluate a formula on a structure under an assignment.
    Eval {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        structure: String,
        /// Assignment such as `u=0,v=3`.
        #[arg(long, default_value = "")]
        assign: String,
    },
    /// Replace the relation of a structure by a formula in `u`, `v`.
    Reduct {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        structure: String,
    },
    /// Run a check suite.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Search for a single witness.
    #[command(subcommand)]
    Witness(WitnessCommand),
    /// Play a game between two structures.
    #[command(subcommand)]
    Game(GameCommand),
    /// Print a structure or a circle sample as JSON or DOT.
    Export {
        #[arg(long, conflicts_with = "sample")]
        structure: Option<String>,
        #[arg(long)]
        sample: Option<String>,
        #[arg(long, default_value = "s2")]
        model: Model,
    },
}

#[derive(Subcommand, Debug)]
pub enum GenCommand {
    /// Restriction of a presentation to `0..=n`.
    Prefix {
        #[arg(long = "of")]
        of: String,
        #[arg(long)]
        n: usize,
    },
    /// `outer[inner]`.
    Wreath {
        #[arg(long)]
        outer: String,
        #[arg(long)]
        inner: String,
    },
    /// One representative per isomorphism class.
    Enumerate {
        #[arg(long)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Tournament,
    Graph,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Tournament => Kind::Tournament,
            KindArg::Graph => Kind::Graph,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum CheckCommand {
    /// `v ∈ G^H_K ⟺ v ∈ T^H_K` for a graph and its transfer.
    Transfer {
        #[arg(long, default_value = "bit")]
        graph: String,
        #[arg(long, default_value_t = 3)]
        max_h: usize,
        #[arg(long, default_value = "0..7")]
        universe: String,
        #[arg(long, default_value_t = 1 << 11)]
        max_v: u64,
    },
    /// Graph → tournament → graph is the identity on small pairs.
    RoundTrip {
        #[arg(long, default_value = "bit")]
        graph: String,
        #[arg(long, default_value_t = 1 << 10)]
        bound: u64,
    },
    /// Extension property for a presentation and its transfer.
    Extension {
        #[arg(long = "of", default_value = "bit")]
        of: String,
        #[arg(long, default_value_t = 3)]
        max_h: usize,
        #[arg(long, default_value = "0..9")]
        universe: String,
        #[arg(long, default_value_t = 1 << 12)]
        budget: u64,
        #[arg(long, default_value_t = 3)]
        witnesses: usize,
    },
    /// The ρ-order on S(2).
    S2(CircleArgs),
    /// The τ-order on S(3).
    S3(CircleArgs),
    /// Enumeration and HP/JEP/AP.
    Fraisse {
        #[arg(long, default_value_t = 4)]
        max_enumerate: usize,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        /// `tournaments:<n>`, `graphs:<n>` or a JSON list of structures
        /// (inline or `@file`); replaces the default suite.
        #[arg(long)]
        class: Option<String>,
    },
    /// Wreath products with edgeless factors.
    Wreath {
        #[arg(long, default_value_t = 4)]
        max_outer: usize,
        #[arg(long, default_value_t = 3)]
        inner: usize,
        #[arg(long, default_value_t = 4)]
        max_sub: usize,
    },
    /// Builtin round trips and quantifier-free absoluteness.
    Formula {
        #[arg(long, default_value_t = 30)]
        sample_size: usize,
        #[arg(long, default_value_t = 50)]
        subsets: usize,
        #[arg(long, default_value_t = 11)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
pub struct CircleArgs {
    #[arg(long, default_value = "seed:7:200")]
    pub sample: String,
    #[arg(long, default_value_t = 100)]
    pub pairs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum WitnessCommand {
    /// Least vertices of `G^H_K` within a budget.
    Extension {
        #[arg(long = "of", default_value = "bit")]
        of: String,
        #[arg(long, default_value = "")]
        h: String,
        #[arg(long, default_value = "")]
        k: String,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// A point of the target class strictly between `x` and `y`.
    Density {
        #[arg(long, default_value = "s2")]
        model: Model,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value = "A")]
        target: Class,
    },
}

#[derive(Subcommand, Debug)]
pub enum GameCommand {
    /// Ehrenfeucht–Fraïssé game.
    Ef {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        rounds: usize,
    },
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{0}")]
    Invalid(String),
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
    #[error("format {0:?} is not available for this command")]
    Format(Format),
}

fn invalid(e: impl std::fmt::Display) -> ConfigError {
    ConfigError::Invalid(e.to_string())
}

/// What a run produced: the text to print and whether every check passed.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    fn json(v: &impl Serialize, passed: bool) -> Self {
        Outcome {
            text: serde_json::to_string_pretty(v).expect("serializes") + "\n",
            passed,
        }
    }

    fn report(r: &SuiteReport) -> Self {
        Outcome {
            text: r.to_json() + "\n",
            passed: r.passed,
        }
    }
}

/// Parses `a..b` (inclusive) or a comma list.
pub fn parse_universe(s: &str) -> Result<Vec<u64>, ConfigError> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once("..") {
        let a: u64 = a.trim().parse().map_err(invalid)?;
        let b: u64 = b.trim().trim_start_matches('=').parse().map_err(invalid)?;
        return Ok((a..=b).collect());
    }
    parse_list(s)
}

fn parse_list(s: &str) -> Result<Vec<u64>, ConfigError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(invalid))
        .collect()
}

fn read_arg(s: &str) -> Result<String, ConfigError> {
    match s.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| ConfigError::Io {
            path: path.to_string(),
            message: e.to_string(),
        }),
        None => Ok(s.to_string()),
    }
}

/// Structure descriptors:
/// `chain:<n>`, `cycle3`, `edgeless:<n>`, `tournament:<n>:<i>`,
/// `graph:<n>:<i>` (the i-th enumerated representative),
/// `prefix:<n>:<presentation>`, `order:<s2|s3>:<sample>`,
/// `arrow:<s2|s3>:<sample>`, inline JSON or `@file.json`.
pub fn parse_structure(s: &str) -> Result<FinStructure, ConfigError> {
    let s = s.trim();
    if s.starts_with('{') || s.starts_with('@') {
        return serde_json::from_str(&read_arg(s)?).map_err(invalid);
    }
    let (head, rest) = s.split_once(':').unwrap_or((s, ""));
    let num = |t: &str| t.parse::<usize>().map_err(invalid);
    match head {
        "cycle3" => Ok(FinStructure::cycle3()),
        "chain" => Ok(FinStructure::chain(num(rest)?)),
        "edgeless" => Ok(FinStructure::edgeless(num(rest)?)),
        "tournament" | "graph" => {
            let (n, i) = rest.split_once(':').ok_or_else(|| invalid(format!("expected {head}:<n>:<i>")))?;
            let kind = if head == "graph" { Kind::Graph } else { Kind::Tournament };
            let all = enumerate_up_to_iso(num(n)?, kind).map_err(invalid)?;
            let i = num(i)?;
            all.get(i)
                .cloned()
                .ok_or_else(|| invalid(format!("only {} {head}s of size {n}", all.len())))
        }
        "prefix" => {
            let (n, p) = rest.split_once(':').ok_or_else(|| invalid("expected prefix:<n>:<presentation>"))?;
            let p: Presentation = p.parse().map_err(invalid)?;
            Ok(p.prefix(num(n)?))
        }
        "order" | "arrow" => {
            let (m, d) = rest.split_once(':').ok_or_else(|| invalid(format!("expected {head}:<model>:<sample>")))?;
            let model: Model = m.parse().map_err(invalid)?;
            let sample = load_sample(model, d)?;
            Ok(if head == "order" {
                sample.order_structure()
            } else {
                sample.arrow_structure()
            })
        }
        _ => Err(invalid(format!("unknown structure descriptor `{s}`"))),
    }
}

fn load_sample(model: Model, desc: &str) -> Result<CircSample, ConfigError> {
    let spec: SampleSpec = desc.parse().map_err(invalid)?;
    CircSample::from_spec(model, &spec).map_err(invalid)
}

fn parse_formula(s: &str) -> Result<Formula, ConfigError> {
    if let Ok(b) = s.parse::<Builtin>() {
        return Ok(b.formula());
    }
    Formula::parse(&read_arg(s)?).map_err(invalid)
}

fn parse_class(s: &str, max_size: usize) -> Result<(StructureClass, usize), ConfigError> {
    let s = s.trim();
    for (prefix, kind) in [("tournaments:", Kind::Tournament), ("graphs:", Kind::Graph)] {
        if let Some(n) = s.strip_prefix(prefix) {
            return Ok((StructureClass::AllOf(kind), n.parse().map_err(invalid)?));
        }
    }
    let list: Vec<FinStructure> = serde_json::from_str(&read_arg(s)?).map_err(invalid)?;
    Ok((StructureClass::listed(list), max_size))
}

fn structure_output(x: &FinStructure, format: Format, name: &str) -> Result<Outcome, ConfigError> {
    match format {
        Format::Dot => Ok(Outcome {
            text: x.to_dot(name),
            passed: true,
        }),
        Format::Json => Ok(Outcome::json(
            &json!({"schema": SCHEMA, "kind": x.classify(), "structure": x.to_json()}),
            true,
        )),
        Format::Text => Err(ConfigError::Format(format)),
    }
}

fn only_json(format: Format) -> Result<(), ConfigError> {
    match format {
        Format::Json => Ok(()),
        f => Err(ConfigError::Format(f)),
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, ConfigError> {
    let format = cli.format;
    match &cli.command {
        Command::Gen(GenCommand::Prefix { of, n }) => {
            let p: Presentation = of.parse().map_err(invalid)?;
            structure_output(&p.prefix(*n), format, "prefix")
        }
        Command::Gen(GenCommand::Wreath { outer, inner }) => {
            let w = wreath(&parse_structure(outer)?, &parse_structure(inner)?).map_err(invalid)?;
            structure_output(&w, format, "wreath")
        }
        Command::Gen(GenCommand::Enumerate { kind, n }) => {
            let all = enumerate_up_to_iso(*n, (*kind).into()).map_err(invalid)?;
            match format {
                Format::Json => Ok(Outcome::json(
                    &json!({
                        "schema": SCHEMA,
                        "kind": Kind::from(*kind),
                        "n": n,
                        "count": all.len(),
                        "structures": all.iter().map(FinStructure::to_json).collect::<Vec<_>>(),
                    }),
                    true,
                )),
                Format::Dot => Ok(Outcome {
                    text: all.iter().enumerate().map(|(i, x)| x.to_dot(&format!("iso{i}"))).collect(),
                    passed: true,
                }),
                Format::Text => Err(ConfigError::Format(format)),
            }
        }
        Command::Eval {
            formula,
            structure,
            assign,
        } => {
            only_json(format)?;
            let f = parse_formula(formula)?;
            let x = parse_structure(structure)?;
            let mut pairs = Vec::new();
            for part in assign.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let (var, v) = part.split_once('=').ok_or_else(|| invalid(format!("bad assignment `{part}`")))?;
                pairs.push((var.trim().to_string(), v.trim().parse::<usize>().map_err(invalid)?));
            }
            let refs: Vec<(&str, usize)> = pairs.iter().map(|(a, b)| (a.as_str(), *b)).collect();
            let value = f.eval(&x, &refs).map_err(invalid)?;
            Ok(Outcome::json(
                &json!({"schema": SCHEMA, "formula": f.to_string(), "assignment": pairs, "value": value}),
                true,
            ))
        }
        Command::Reduct { formula, structure } => {
            let f = parse_formula(formula)?;
            let x = parse_structure(structure)?;
            let r = f.reduct(&x).map_err(invalid)?;
            structure_output(&r, format, "reduct")
        }
        Command::Check(c) => {
            if format == Format::Dot {
                return Err(ConfigError::Format(format));
            }
            let r = run_check(c)?;
            Ok(if format == Format::Text {
                Outcome {
                    text: summary(&r),
                    passed: r.passed,
                }
            } else {
                Outcome::report(&r)
            })
        }
        Command::Witness(w) => {
            only_json(format)?;
            run_witness(w)
        }
        Command::Game(GameCommand::Ef { left, right, rounds }) => {
            only_json(format)?;
            let (x, y) = (parse_structure(left)?, parse_structure(right)?);
            let winner = ef_game(&x, &y, *rounds);
            Ok(Outcome::json(
                &json!({"schema": SCHEMA, "game": "ef", "left": left, "right": right, "rounds": rounds, "winner": winner}),
                true,
            ))
        }
        Command::Export {
            structure,
            sample,
            model,
        } => match (structure, sample) {
            (Some(s), None) => structure_output(&parse_structure(s)?, format, "structure"),
            (None, Some(d)) => {
                let sample = load_sample(*model, d)?;
                match format {
                    Format::Dot => Ok(Outcome {
                        text: sample.to_dot("sample"),
                        passed: true,
                    }),
                    Format::Json => {
                        let sorted: Vec<Value> = sample
                            .sorted()
                            .into_iter()
                            .map(|i| json!({"point": fmt_q(&sample.points()[i]), "class": sample.classes()[i]}))
                            .collect();
                        Ok(Outcome::json(
                            &json!({"schema": SCHEMA, "model": format!("{model:?}"), "sample": d, "order": sorted}),
                            true,
                        ))
                    }
                    Format::Text => Err(ConfigError::Format(format)),
                }
            }
            _ => Err(invalid("export needs exactly one of --structure and --sample")),
        },
    }
}

/// One `pass`/`FAIL` line per check.
pub fn summary(r: &SuiteReport) -> String {
    let mut out = String::new();
    for c in &r.checks {
        let verdict = if c.passed { "pass" } else { "FAIL" };
        out.push_str(&format!("{verdict} {}/{}\n", r.suite, c.name));
    }
    out
}

fn positive(name: &str, v: u64) -> Result<(), ConfigError> {
    if v == 0 {
        return Err(invalid(format!("{name} must be positive")));
    }
    Ok(())
}

fn run_check(c: &CheckCommand) -> Result<SuiteReport, ConfigError> {
    Ok(match c {
        CheckCommand::Transfer {
            graph,
            max_h,
            universe,
            max_v,
        } => checks::transfer_suite(&checks::TransferConfig {
            graph: graph.parse().map_err(invalid)?,
            max_h: *max_h,
            universe: parse_universe(universe)?,
            max_v: *max_v,
        }),
        CheckCommand::RoundTrip { graph, bound } => checks::round_trip_suite(&graph.parse().map_err(invalid)?, *bound),
        CheckCommand::Extension {
            of,
            max_h,
            universe,
            budget,
            witnesses,
        } => {
            positive("budget", *budget)?;
            checks::extension_suite(&checks::ExtensionConfig {
                graph: of.parse().map_err(invalid)?,
                max_h: *max_h,
                universe: parse_universe(universe)?,
                budget: *budget,
                witnesses: *witnesses,
            })
        }
        CheckCommand::S2(a) | CheckCommand::S3(a) => {
            positive("pairs", a.pairs as u64)?;
            let cfg = checks::CircleConfig {
                sample: a.sample.parse().map_err(invalid)?,
                pairs: a.pairs,
                seed: a.seed,
            };
            if matches!(c, CheckCommand::S2(_)) {
                checks::s2_suite(&cfg)
            } else {
                checks::s3_suite(&cfg)
            }
        }
        CheckCommand::Fraisse {
            max_enumerate,
            max_size,
            class,
        } => match class {
            None => {
                if *max_enumerate > crate::fraisse::MAX_ENUMERATE || *max_size > 4 {
                    return Err(invalid("enumeration above 6 or class checks above size 4 are out of scope"));
                }
                checks::fraisse_suite(&checks::FraisseConfig {
                    max_enumerate: *max_enumerate,
                    max_size: *max_size,
                })
            }
            Some(desc) => {
                let (class, size) = parse_class(desc, *max_size)?;
                let mut r = SuiteReport::new("fraisse", json!({"class": desc, "max_size": size}));
                let rep = check_class_properties(&class, size);
                let passed = rep.passed;
                r.push("class", passed, rep);
                r
            }
        },
        CheckCommand::Wreath {
            max_outer,
            inner,
            max_sub,
        } => checks::wreath_suite(&checks::WreathConfig {
            max_outer: *max_outer,
            inner: *inner,
            max_sub: *max_sub,
        }),
        CheckCommand::Formula {
            sample_size,
            subsets,
            seed,
        } => checks::formula_suite(&checks::FormulaConfig {
            sample_size: *sample_size,
            subsets: *subsets,
            seed: *seed,
        }),
    })
}

fn run_witness(w: &WitnessCommand) -> Result<Outcome, ConfigError> {
    match w {
        WitnessCommand::Extension {
            of,
            h,
            k,
            budget,
            count,
        } => {
            let p: Presentation = of.parse().map_err(invalid)?;
            let (h, k) = (parse_list(h)?, parse_list(k)?);
            let budget = budget.unwrap_or_else(|| WitnessQuery::default_budget(&h));
            positive("budget", budget)?;
            let q = WitnessQuery::new(&h, &k, budget, false).map_err(invalid)?;
            let report = find_witness(&p, &q);
            let all = find_witnesses(&p, &q, *count);
            let found = all.len() >= *count;
            Ok(Outcome::json(
                &json!({"schema": SCHEMA, "presentation": p.to_string(), "report": report, "witnesses": all}),
                found,
            ))
        }
        WitnessCommand::Density { model, x, y, target } => {
            let (xq, yq) = (parse_rational(x).map_err(invalid)?, parse_rational(y).map_err(invalid)?);
            let z = density_witness(&xq, &yq, *target, *model).map_err(invalid)?;
            Ok(Outcome::json(
                &json!({
                    "schema": SCHEMA,
                    "model": format!("{model:?}"),
                    "x": fmt_q(&xq),
                    "y": fmt_q(&yq),
                    "target": target,
                    "witness": fmt_q(&z),
                }),
                true,
            ))
        }
    }
}

/// Entry point of the binary.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.output {
                Some(path) => fs::write(path, &out.text).map_err(|e| ConfigError::Io {
                    path: path.display().to_string(),
                    message: e.to_string(),
                }),
                None => {
                    print!("{}", out.text);
                    Ok(())
                }
            };
            match written {
                Err(e) => fail(&e),
                Ok(()) if out.passed => ExitCode::SUCCESS,
                Ok(()) => ExitCode::from(1),
            }
        }
        Err(e) => fail(&e),
    }
}

fn fail(e: &ConfigError) -> ExitCode {
    eprintln!("{}", json!({"schema": SCHEMA, "error": e.to_string()}));
    ExitCode::from(2)
}
