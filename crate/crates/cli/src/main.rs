//! `sandwich`: construct and analyse sandwich semigroups from the command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 a closed form disagrees with brute
//! force, 3 enumeration cap or search budget exhausted.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use sandwich_core::eggbox::{build_eggbox, render, Format as BoxFormat, Scope as BoxScope};
use sandwich_core::generation::{rank_exact, rank_formula};
use sandwich_core::idempotents::{
    egen_closure, egen_membership, egen_rank_formula, egen_report, idempotent_count_formula,
    idempotents, EgenRank,
};
use sandwich_core::maps::hom_size;
use sandwich_core::regular::{reg_rank_formula, reg_size_formula};
use sandwich_core::semigroup::DEFAULT_BUDGET;
use sandwich_core::verify::verify;
use sandwich_core::{parse_map, Error, GreenKind, PartialMap, Sandwich, Variant};

#[derive(Parser, Debug)]
#[command(
    name = "sandwich",
    version,
    about = "Sandwich semigroups over PT, T and I"
)]
struct Cli {
    /// Category of maps: pt, t or i.
    #[arg(long, global = true)]
    variant: Option<Variant>,
    /// Size of the source set X.
    #[arg(long, global = true)]
    m: Option<usize>,
    /// Size of the target set Y.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// The sandwich element a: Y -> X as 1-based images, `-` for undefined.
    #[arg(long, global = true, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Largest hom-set that may be enumerated (overrides SANDWICH_CAP).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    cap: Option<u64>,
    /// Number of candidate sets an exact rank search may try.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parameters of the sandwich element.
    Info,
    /// Every element of the hom-set in canonical order.
    Enumerate,
    /// P-set membership of an element.
    Pset { f: String },
    /// Sandwich Green's class of an element.
    Greens { kind: GreenKind, f: String },
    /// Size of the regular part, by formula and by count, and its rank.
    Regular,
    /// Number of idempotents, by formula and by count.
    Idempotents,
    /// The idempotent-generated subsemigroup: membership, rank and idempotent rank.
    Egen,
    /// Rank of the sandwich semigroup with a generating set.
    Rank,
    /// Egg-box diagram.
    Eggbox {
        #[arg(long, value_enum, default_value = "full")]
        scope: ScopeArg,
    },
    /// Differential check of every closed form against brute force.
    Verify {
        #[arg(long, default_value_t = 2)]
        max_size: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    Dot,
    Ascii,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ScopeArg {
    Full,
    Regular,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

struct Output {
    text: String,
    mismatch: bool,
}

impl Output {
    fn new() -> Self {
        Output {
            text: String::new(),
            mismatch: false,
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    /// Records a formula next to its oracle value.
    fn compare(&mut self, label: &str, formula: &BigInt, oracle: Option<&BigInt>) {
        match oracle {
            Some(v) if v == formula => {
                self.line(format!("{label}: {formula} (formula) = {v} (oracle)"))
            }
            Some(v) => {
                self.mismatch = true;
                self.line(format!(
                    "{label}: {formula} (formula) != {v} (oracle)  MISMATCH"
                ));
            }
            None => self.line(format!("{label}: {formula} (formula)")),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(cap) = cli.cap {
        std::env::set_var("SANDWICH_CAP", cap.to_string());
    }
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli, &out.text) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(if out.mismatch { 2 } else { 0 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::CapExceeded { .. } | Error::BudgetExhausted { .. } => ExitCode::from(3),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn sandwich(cli: &Cli) -> Result<Sandwich, Failure> {
    let variant = cli
        .variant
        .ok_or_else(|| Failure::Usage("--variant is required".into()))?;
    let m = cli
        .m
        .ok_or_else(|| Failure::Usage("--m is required".into()))?;
    let n = cli
        .n
        .ok_or_else(|| Failure::Usage("--n is required".into()))?;
    let text = cli
        .a
        .as_deref()
        .ok_or_else(|| Failure::Usage("--a is required".into()))?;
    let a = parse_map(text, n, m, variant).map_err(|e| Failure::Usage(format!("--a: {e}")))?;
    Sandwich::new(variant, m, n, a).map_err(|e| Failure::Usage(e.to_string()))
}

fn element(s: &Sandwich, text: &str) -> Result<PartialMap, Failure> {
    parse_map(text, s.m(), s.n(), s.variant()).map_err(|e| Failure::Usage(format!("element: {e}")))
}

fn json_wanted(cli: &Cli) -> bool {
    matches!(cli.format, Some(OutputFormat::Json))
}

/// Exact value when the search fits the budget, `None` when it does not.
fn within_budget<T>(r: sandwich_core::Result<T>) -> Result<Option<T>, Failure> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::BudgetExhausted { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let mut out = Output::new();
    match &cli.command {
        Command::Verify { max_size } => {
            let variants = match cli.variant {
                Some(v) => vec![v],
                None => Variant::ALL.to_vec(),
            };
            for v in variants {
                let report = verify(v, *max_size, cli.budget)?;
                out.mismatch |= !report.passed();
                out.text.push_str(&report.to_string());
            }
        }
        Command::Info => {
            let s = sandwich(cli)?;
            let b_points: Vec<usize> = s.b_points().iter().map(|y| y + 1).collect();
            let classes: Vec<Vec<usize>> = s
                .kernel_classes()
                .iter()
                .map(|c| c.iter().map(|y| y + 1).collect())
                .collect();
            let image: Vec<usize> = s.image_points().iter().map(|x| x + 1).collect();
            if json_wanted(cli) {
                let doc = json!({
                    "variant": s.variant(),
                    "m": s.m(),
                    "n": s.n(),
                    "a": s.a().to_string(),
                    "b": s.b().to_string(),
                    "alpha": s.alpha(),
                    "beta": s.beta(),
                    "xi": s.xi(),
                    "lambda": s.lambda(),
                    "big_lambda": s.big_lambda().to_string(),
                    "image_points": image,
                    "kernel_classes": classes,
                    "hom_size": hom_size(s.variant(), s.m(), s.n()).to_string(),
                });
                out.line(serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                out.line(format!(
                    "variant {}, |X| = {}, |Y| = {}",
                    s.variant(),
                    s.m(),
                    s.n()
                ));
                out.line(format!("a = [{}]", s.a()));
                out.line(format!("b = [{}]", s.b()));
                out.line(format!(
                    "alpha = {}, beta = {}, xi = {}",
                    s.alpha(),
                    s.beta(),
                    s.xi()
                ));
                out.line(format!(
                    "lambda = {:?}, Lambda = {}",
                    s.lambda(),
                    s.big_lambda()
                ));
                out.line(format!(
                    "image points = {image:?}, kernel classes = {classes:?}, b_i = {b_points:?}"
                ));
                out.line(format!(
                    "hom-set size = {}",
                    hom_size(s.variant(), s.m(), s.n())
                ));
            }
        }
        Command::Enumerate => {
            let s = sandwich(cli)?;
            for f in s.elements()? {
                out.line(f.to_string());
            }
        }
        Command::Pset { f } => {
            let s = sandwich(cli)?;
            let f = element(&s, f)?;
            let flags = s.pset(&f);
            if json_wanted(cli) {
                out.line(serde_json::to_string_pretty(&flags).expect("serializable"));
            } else {
                out.line(format!("f = [{f}]"));
                out.line(format!(
                    "p1 = {}, p2 = {}, p3 = {}, regular = {}",
                    flags.p1, flags.p2, flags.p3, flags.regular
                ));
            }
        }
        Command::Greens { kind, f } => {
            let s = sandwich(cli)?;
            let f = element(&s, f)?;
            let class = s.green_class(*kind, &f)?;
            out.line(format!(
                "{kind:?}-class of [{f}]: {} elements",
                class.members.len()
            ));
            out.line(format!("representative [{}]", class.representative));
            if class.is_singleton_non_p {
                out.line("singleton outside P");
            }
            for g in &class.members {
                out.line(format!("  {g}"));
            }
        }
        Command::Regular => {
            let s = sandwich(cli)?;
            let p = s.regular_elements()?;
            out.compare("|P|", &reg_size_formula(&s), Some(&BigInt::from(p.len())));
            for (rank, count) in s.regular_dclasses()? {
                out.line(format!("  rank {rank}: {count}"));
            }
            if let Ok(formula) = reg_rank_formula(&s) {
                let exact = within_budget(s.subsemigroup(p)?.rank(cli.budget))?
                    .map(|r| BigInt::from(r.rank));
                out.compare("rank(P)", &formula, exact.as_ref());
            }
        }
        Command::Idempotents => {
            let s = sandwich(cli)?;
            let found = idempotents(&s)?;
            out.compare(
                "|E|",
                &idempotent_count_formula(&s),
                Some(&BigInt::from(found.len())),
            );
            for f in &found {
                out.line(format!("  {f}"));
            }
        }
        Command::Egen => {
            let s = sandwich(cli)?;
            let closure = egen_closure(&s)?;
            let mut disagree = 0usize;
            let mut table = String::new();
            for f in s.elements()? {
                let by_closure = closure.binary_search(&f).is_ok();
                let by_test = egen_membership(&s, &f);
                disagree += usize::from(by_closure != by_test);
                let mark = if by_closure { "in" } else { "out" };
                writeln!(table, "  {f}  {mark}").unwrap();
            }
            out.line(format!("|<E>| = {}", closure.len()));
            if disagree > 0 {
                out.mismatch = true;
                out.line(format!(
                    "membership test disagrees with closure on {disagree} elements  MISMATCH"
                ));
            }
            let exact = within_budget(egen_report(&s, cli.budget))?;
            match egen_rank_formula(&s) {
                EgenRank::Formula { rank, idrank } => {
                    out.compare(
                        "rank",
                        &rank,
                        exact.as_ref().map(|r| BigInt::from(r.rank)).as_ref(),
                    );
                    out.compare(
                        "idrank",
                        &idrank,
                        exact.as_ref().map(|r| BigInt::from(r.idrank)).as_ref(),
                    );
                }
                EgenRank::Semilattice { idempotents } => {
                    out.compare(
                        "idempotents",
                        &idempotents,
                        Some(&BigInt::from(closure.len())),
                    );
                    if let Some(r) = &exact {
                        out.line(format!(
                            "rank: {} (exact), idrank: {} (exact)",
                            r.rank, r.idrank
                        ));
                    }
                }
            }
            out.line("membership:");
            out.text.push_str(&table);
        }
        Command::Rank => {
            let s = sandwich(cli)?;
            let report = rank_formula(&s)?;
            let exact = within_budget(rank_exact(&s, cli.budget))?;
            if json_wanted(cli) {
                let doc = json!({
                    "rank": report.rank_value.to_string(),
                    "case": report.case_tag,
                    "lower_bound": report.lower_bound_witness.to_string(),
                    "generating_set": report.generating_set.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                    "exact": exact.as_ref().map(|e| e.rank),
                });
                out.line(serde_json::to_string_pretty(&doc).expect("serializable"));
                out.mismatch = exact.is_some_and(|e| BigInt::from(e.rank) != report.rank_value);
            } else {
                out.line(format!("case {}", report.case_tag));
                out.compare(
                    "rank",
                    &report.rank_value,
                    exact.as_ref().map(|e| BigInt::from(e.rank)).as_ref(),
                );
                if exact.is_none() {
                    out.line("exact search exceeded the budget");
                }
                out.line(format!("lower bound: {}", report.lower_bound_witness));
                out.line(format!("generating set ({}):", report.generating_set.len()));
                for f in &report.generating_set {
                    out.line(format!("  {f}"));
                }
            }
        }
        Command::Eggbox { scope } => {
            let s = sandwich(cli)?;
            let scope = match scope {
                ScopeArg::Full => BoxScope::Full,
                ScopeArg::Regular => BoxScope::Regular,
            };
            let format = match cli.format {
                None | Some(OutputFormat::Ascii) | Some(OutputFormat::Text) => BoxFormat::Ascii,
                Some(OutputFormat::Json) => BoxFormat::Json,
                Some(OutputFormat::Dot) => BoxFormat::Dot,
            };
            let eggbox = build_eggbox(&s, scope)?;
            out.text = String::from_utf8(render(&eggbox, format)).expect("utf-8");
            if !out.text.ends_with('\n') {
                out.text.push('\n');
            }
        }
    }
    Ok(out)
}
