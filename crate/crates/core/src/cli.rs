//! The `most` command line.
//!
//! Exit codes: 0 ok, 1 I/O failure, 2 parse error, 3 exact density
//! unavailable, 4 unknown verdict, 5 inconsistent premise set.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::canonical::{Normalizer, DEFAULT_PERIOD_CAP};
use crate::density::{axiom_suite, convergence, exact_density, ExactStatus};
use crate::logic::{self, AxiomMode, Interpretation, SearchParams, Searcher, Sentence};
use crate::quantifier::{proposition_suite, Classifier, MostVerdict, PropositionStatus, Semantics};
use crate::setlang::{parse, SetExpr};
use crate::truth::TruthValue;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_EXACT_UNAVAILABLE: i32 = 3;
pub const EXIT_UNKNOWN: i32 = 4;
pub const EXIT_INCONSISTENT: i32 = 5;

const SCHEMA: &str = "most/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AxiomModeArg {
    Off,
    PositiveDensity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SemArg {
    All,
    Half,
    Diff,
    Density,
}

#[derive(Debug, Parser)]
#[command(
    name = "most",
    version,
    about = "Decide \"Most A are B\" over subsets of the positive integers"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_PERIOD_CAP,
          value_parser = clap::value_parser!(u64).range(1..))]
    period_cap: u64,
    #[arg(long, global = true, value_enum, default_value = "off")]
    axiom_mode: AxiomModeArg,
    /// Bind NAME to a set expression (repeatable).
    #[arg(long = "let", global = true, value_name = "NAME=EXPR")]
    bindings: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact natural density and canonical form of a set expression.
    Density { expr: String },
    /// Evaluate a sentence `Most(X,Y)` whose operands are set expressions or bound names.
    Eval {
        sentence: String,
        #[arg(long, value_enum, default_value = "all")]
        sem: SemArg,
    },
    /// Prefix densities |A ∩ [1,n]| / n at increasing checkpoints.
    Converge {
        expr: String,
        #[arg(long, value_delimiter = ',', default_value = "100,1000,10000,100000")]
        checkpoints: Vec<u64>,
    },
    /// Consistency of a premise file, and derivability of an optional query.
    Check {
        premises: PathBuf,
        #[arg(long)]
        query: Option<String>,
        /// Largest progression modulus in the countermodel family.
        #[arg(long, default_value_t = 12)]
        max_modulus: u64,
    },
    /// Randomized density-postulate and proposition suites.
    Axioms {
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        /// Largest progression modulus drawn by the sampler.
        #[arg(long, default_value_t = 12)]
        bound: u64,
    },
}

/// Resolved global options.
#[derive(Debug, Clone)]
pub struct Config {
    pub format: Format,
    pub seed: u64,
    pub period_cap: u64,
    pub axiom_mode: AxiomMode,
    pub bindings: BTreeMap<String, SetExpr>,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Failure {
        Failure {
            code,
            message: message.into(),
        }
    }
}

const RESERVED: [&str; 6] = ["N", "O", "P", "Q", "AP", "comp"];

fn parse_binding(text: &str) -> Result<(String, SetExpr), Failure> {
    let (name, expr) = text
        .split_once('=')
        .ok_or_else(|| Failure::new(EXIT_PARSE, format!("--let expects NAME=EXPR, got `{text}`")))?;
    let name = name.trim();
    let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !RESERVED.contains(&name);
    if !valid {
        return Err(Failure::new(EXIT_PARSE, format!("invalid binding name `{name}`")));
    }
    let expr = parse(expr).map_err(|e| Failure::new(EXIT_PARSE, format!("--let {name}: {e}")))?;
    Ok((name.to_string(), expr))
}

impl Config {
    fn from_cli(cli: &Cli) -> Result<Config, Failure> {
        let mut bindings = BTreeMap::new();
        for b in &cli.bindings {
            let (name, expr) = parse_binding(b)?;
            bindings.insert(name, expr);
        }
        Ok(Config {
            format: cli.format,
            seed: cli.seed,
            period_cap: cli.period_cap,
            axiom_mode: match cli.axiom_mode {
                AxiomModeArg::Off => AxiomMode::Off,
                AxiomModeArg::PositiveDensity => AxiomMode::PositiveDensity,
            },
            bindings,
        })
    }

    fn normalizer(&self) -> Normalizer {
        Normalizer::new(self.period_cap)
    }

    fn classifier(&self) -> Classifier {
        Classifier::new(self.normalizer())
    }

    /// A bound name or DSL text.
    fn operand(&self, text: &str) -> Result<SetExpr, Failure> {
        let t = text.trim();
        if let Some(e) = self.bindings.get(t) {
            return Ok(e.clone());
        }
        parse(t).map_err(|e| Failure::new(EXIT_PARSE, format!("`{t}`: {e}")))
    }
}

fn csv_string(rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn envelope(command: &str, body: Value) -> String {
    let mut v = json!({ "schema": SCHEMA, "command": command });
    if let (Value::Object(head), Value::Object(rest)) = (&mut v, body) {
        head.extend(rest);
    }
    serde_json::to_string_pretty(&v).expect("json") + "\n"
}

type Output = (i32, String);

fn cmd_density(cfg: &Config, text: &str) -> Result<Output, Failure> {
    let expr = cfg.operand(text)?;
    let canon = cfg
        .normalizer()
        .normalize(&expr)
        .map_err(|e| Failure::new(EXIT_EXACT_UNAVAILABLE, format!("exact density unavailable: {e}")))?;
    let d = exact_density(&canon);
    let out = match cfg.format {
        Format::Text => {
            let core = canon.core();
            let residues: Vec<String> = core.residues().map(|r| r.to_string()).collect();
            let below: Vec<String> = (1..core.threshold())
                .filter(|&n| core.contains(n))
                .map(|n| n.to_string())
                .collect();
            format!(
                "{d}\nperiod: {}\nresidues: [{}]\nthreshold: {}\nprefix members: [{}]\ndelta: {}\n",
                core.period(),
                residues.join(","),
                core.threshold(),
                below.join(","),
                canon.delta()
            )
        }
        Format::Json => envelope(
            "density",
            json!({ "expr": expr.to_string(), "density": d.to_string(), "canonical": canon }),
        ),
        Format::Csv => csv_string(&[
            vec!["expr".into(), "density".into()],
            vec![expr.to_string(), d.to_string()],
        ]),
    };
    Ok((EXIT_OK, out))
}

/// Splits `Most(X,Y)` at the top-level comma.
fn split_sentence(text: &str) -> Result<(&str, &str), Failure> {
    let bad = || Failure::new(EXIT_PARSE, format!("expected `Most(X,Y)`, found `{}`", text.trim()));
    let body = text
        .trim()
        .strip_prefix("Most")
        .map(str::trim_start)
        .and_then(|r| r.strip_prefix('('))
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(bad)?;
    let mut depth = 0i32;
    for (i, c) in body.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            ',' if depth == 0 => return Ok((&body[..i], &body[i + 1..])),
            _ => {}
        }
    }
    Err(bad())
}

fn cmd_eval(cfg: &Config, text: &str, sem: SemArg) -> Result<Output, Failure> {
    let (l, r) = split_sentence(text)?;
    let (a, b) = (cfg.operand(l)?, cfg.operand(r)?);
    let semantics: Vec<Semantics> = match sem {
        SemArg::All => vec![Semantics::HalfCard, Semantics::DiffCard, Semantics::Density],
        SemArg::Half => vec![Semantics::HalfCard],
        SemArg::Diff => vec![Semantics::DiffCard],
        SemArg::Density => vec![Semantics::Density],
    };
    let classifier = cfg.classifier();
    let mut verdicts: Vec<MostVerdict> = Vec::new();
    let mut unavailable = None;
    for s in semantics {
        match classifier.most(s, &a, &b) {
            Ok(v) => verdicts.push(v),
            Err(e) => unavailable = Some(e.to_string()),
        }
    }
    let code = if unavailable.is_some() {
        EXIT_EXACT_UNAVAILABLE
    } else if verdicts.iter().any(|v| v.truth == TruthValue::Unknown) {
        EXIT_UNKNOWN
    } else {
        EXIT_OK
    };
    let out = match cfg.format {
        Format::Text => {
            let mut s = String::new();
            for v in &verdicts {
                s += &format!("{}: {} (lhs {}, rhs {})\n", v.semantics.name(), v.truth, v.lhs, v.rhs);
            }
            if let Some(msg) = &unavailable {
                s += &format!("density: unavailable ({msg})\n");
            }
            s
        }
        Format::Json => envelope(
            "eval",
            json!({
                "a": a.to_string(),
                "b": b.to_string(),
                "verdicts": verdicts,
                "unavailable": unavailable,
            }),
        ),
        Format::Csv => {
            let mut rows = vec![vec!["semantics".into(), "truth".into(), "lhs".into(), "rhs".into()]];
            rows.extend(verdicts.iter().map(|v| {
                vec![
                    v.semantics.name().into(),
                    v.truth.to_string(),
                    v.lhs.to_string(),
                    v.rhs.to_string(),
                ]
            }));
            csv_string(&rows)
        }
    };
    Ok((code, out))
}

fn cmd_converge(cfg: &Config, text: &str, checkpoints: &[u64]) -> Result<Output, Failure> {
    let expr = cfg.operand(text)?;
    let report =
        convergence(&expr, checkpoints, &cfg.normalizer()).map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
    let code = match report.exact_density {
        ExactStatus::Value(_) => EXIT_OK,
        ExactStatus::Unavailable(_) => EXIT_EXACT_UNAVAILABLE,
    };
    let exact = match &report.exact_density {
        ExactStatus::Value(d) => d.to_string(),
        ExactStatus::Unavailable(e) => format!("unavailable ({e})"),
    };
    let out = match cfg.format {
        Format::Text => {
            let mut s = format!("expr: {expr}\n");
            for row in &report.checkpoints {
                s += &format!("n={} count={} ratio={}\n", row.n, row.count, row.ratio);
            }
            s + &format!("exact: {exact}\n")
        }
        Format::Json => envelope("converge", serde_json::to_value(&report).expect("json")),
        Format::Csv => report.to_csv(),
    };
    Ok((code, out))
}

fn cmd_check(cfg: &Config, path: &PathBuf, query: Option<&str>, max_modulus: u64) -> Result<Output, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))?;
    let gamma = logic::parse_premises(&text).map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
    let query = query
        .map(Sentence::parse)
        .transpose()
        .map_err(|e| Failure::new(EXIT_PARSE, format!("query: {e}")))?;
    let classifier = cfg.classifier();
    let consistency = logic::is_consistent(&gamma, cfg.axiom_mode);
    let derivable = query.as_ref().map(|q| logic::derives(&gamma, q, cfg.axiom_mode));
    let reason = match (&query, derivable) {
        (Some(_), Some(true)) if !consistency.consistent => Some("ex falso"),
        (Some(q), Some(true)) if gamma.contains(q) => Some("premise"),
        (Some(_), Some(true)) => Some("axiom"),
        _ => None,
    };
    let searcher = Searcher::new(SearchParams { max_modulus }, classifier);
    let countermodel = query.as_ref().map(|q| searcher.counterexample(&gamma, q));
    let show = |i: &Interpretation| {
        i.iter()
            .map(|(k, v)| format!("{k} = {v}"))
            .collect::<Vec<_>>()
            .join(", ")
    };

    // model check against --let bindings when they cover every premise variable
    let model = if !gamma.is_empty() && gamma.variables().iter().all(|v| cfg.bindings.contains_key(v)) {
        let mapping = gamma
            .variables()
            .into_iter()
            .map(|v| {
                let e = cfg.bindings[&v].clone();
                (v, e)
            })
            .collect();
        Some(
            Interpretation::new(mapping, &classifier)
                .and_then(|i| logic::model_check(&i, &gamma, &classifier))
                .map_err(|e| e.to_string()),
        )
    } else {
        None
    };

    let code = if consistency.consistent {
        EXIT_OK
    } else {
        EXIT_INCONSISTENT
    };
    let witness = consistency
        .witness
        .as_ref()
        .map(|(a, b, rule)| (a.to_string(), b.to_string(), format!("{rule:?}")));
    let out = match cfg.format {
        Format::Text | Format::Csv => {
            let mut s = format!("premises: {}\n", gamma.len());
            match &witness {
                None => s += "consistent: yes\n",
                Some((a, b, rule)) => s += &format!("consistent: no\nwitness: {a} {b} ({rule})\n"),
            }
            if let (Some(q), Some(d)) = (&query, derivable) {
                let why = reason.map(|r| format!(" ({r})")).unwrap_or_default();
                s += &format!("query: {q}\nderivable: {}{why}\n", if d { "yes" } else { "no" });
            }
            match &countermodel {
                Some(Some(i)) => s += &format!("countermodel: {}\n", show(i)),
                Some(None) => s += &format!("countermodel: none found (max modulus {max_modulus})\n"),
                None => {}
            }
            match &model {
                Some(Ok(t)) => s += &format!("model: {t}\n"),
                Some(Err(e)) => s += &format!("model: error ({e})\n"),
                None => {}
            }
            s
        }
        Format::Json => envelope(
            "check",
            json!({
                "premises": gamma.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                "consistent": consistency.consistent,
                "witness": witness.map(|(a, b, rule)| json!({ "pair": [a, b], "rule": rule })),
                "query": query.as_ref().map(|q| q.to_string()),
                "derivable": derivable,
                "derivation": reason,
                "countermodel": countermodel.map(|c| c.map(|i| {
                    i.iter().map(|(k, v)| (k.clone(), v.to_string())).collect::<BTreeMap<_, _>>()
                })),
                "model": model.map(|m| m.map(|t| t.to_string()).unwrap_or_else(|e| format!("error: {e}"))),
            }),
        ),
    };
    Ok((code, out))
}

fn cmd_axioms(cfg: &Config, trials: u64, bound: u64) -> Result<Output, Failure> {
    let axioms = axiom_suite(trials, cfg.seed, bound, &cfg.normalizer());
    let props = proposition_suite(cfg.seed, trials, &cfg.classifier());
    let (pass, disc, fail) = props.summary();
    let verdict = |ok: bool| if ok { "pass" } else { "FAIL" };
    let discrepancies: Vec<String> = (1..=6)
        .filter(|&id| props.status(id) == PropositionStatus::Discrepancy)
        .map(|id| format!("Prop {id} / semantics (1)"))
        .collect();
    let mut summary = format!(
        "axioms 1-5: {}; properties i-iii: {}; propositions: {pass} pass",
        verdict(axioms.axioms_pass()),
        verdict(axioms.properties_pass()),
    );
    if disc > 0 {
        summary += &format!(", {disc} discrepancy ({})", discrepancies.join(", "));
    }
    if fail > 0 {
        summary += &format!(", {fail} FAIL");
    }
    let ok = axioms.all_passed() && props.all_passed() && axioms.unavailable == 0;
    let out = match cfg.format {
        Format::Text => {
            let mut s = summary.clone() + "\n";
            for l in &axioms.laws {
                s += &format!(
                    "law {}: checked {} passed {} skipped {}\n",
                    l.law, l.checked, l.passed, l.skipped
                );
                if let Some(c) = &l.first_counterexample {
                    s += &format!("  counterexample: {c}\n");
                }
            }
            if axioms.unavailable > 0 {
                s += &format!("trials over period cap: {}\n", axioms.unavailable);
            }
            for r in &props.rows {
                s += &format!(
                    "prop {} [{}]: checked {} passed {} skipped {}{}\n",
                    r.id,
                    r.semantics,
                    r.checked,
                    r.passed,
                    r.skipped,
                    if r.expected_discrepancy {
                        " (claim conflicts with props 4-5)"
                    } else {
                        ""
                    }
                );
                if let Some(c) = &r.first_counterexample {
                    s += &format!("  counterexample: {c}\n");
                }
            }
            s
        }
        Format::Json => envelope(
            "axioms",
            json!({ "summary": summary, "passed": ok, "axioms": axioms, "propositions": props }),
        ),
        Format::Csv => {
            let mut rows = vec![vec![
                "suite".into(),
                "item".into(),
                "checked".into(),
                "passed".into(),
                "skipped".into(),
            ]];
            for l in &axioms.laws {
                rows.push(vec![
                    "axiom".into(),
                    l.law.into(),
                    l.checked.to_string(),
                    l.passed.to_string(),
                    l.skipped.to_string(),
                ]);
            }
            for r in &props.rows {
                rows.push(vec![
                    "proposition".into(),
                    format!("{}:{}", r.id, r.semantics),
                    r.checked.to_string(),
                    r.passed.to_string(),
                    r.skipped.to_string(),
                ]);
            }
            csv_string(&rows)
        }
    };
    Ok((if ok { EXIT_OK } else { 1 }, out))
}

/// Runs the CLI on `args` (including the program name), writing to the
/// given streams, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    let result = Config::from_cli(&cli).and_then(|cfg| match &cli.command {
        Command::Density { expr } => cmd_density(&cfg, expr),
        Command::Eval { sentence, sem } => cmd_eval(&cfg, sentence, *sem),
        Command::Converge { expr, checkpoints } => cmd_converge(&cfg, expr, checkpoints),
        Command::Check {
            premises,
            query,
            max_modulus,
        } => cmd_check(&cfg, premises, query.as_deref(), *max_modulus),
        Command::Axioms { trials, bound } => cmd_axioms(&cfg, *trials, *bound),
    });
    match result {
        Ok((code, text)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(err, "most: {}", f.message);
            f.code
        }
    }
}
