//! Command-line surface over the table and identity formats.
//!
//! Exit codes are part of the contract:
//! * `check`  — 0 all checks hold, 1 some check fails, 65 bad input
//! * `search` — 0 witness, 1 exhausted, 2 budget exceeded
//! * `verify` — 0 absence confirmed, 1 witness found, 2 budget exceeded
//! * `lab`    — 0 all claims pass, 1 a claim fails, 2 budget hit a claim
//! * `b25`    — 0 no counterexample, 1 counterexample, 2 budget exceeded
//! * `decode`/`dual`/`enumerate` — 0 on success
//! * 65 — malformed input (table, code, identity, checkpoint) anywhere

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use bolmoufang::finder::{self, SearchProblem, SearchStatus, Target};
use bolmoufang::lab::{self, record};
use bolmoufang::magma::{InverseSide, Magma, Side, StructureSpec};
use bolmoufang::term::{self, BMCode, Identity};

#[derive(Parser)]
#[command(
    name = "bolmoufang",
    version,
    about = "Finite magmas as Cayley tables: property checks, identities of Bol-Moufang type, and bounded exhaustive model search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum OutputMode {
    Human,
    Record,
}

#[derive(Clone, Copy, Debug)]
struct OrderRange {
    lo: usize,
    hi: usize,
}

impl FromStr for OrderRange {
    type Err = String;

    fn from_str(s: &str) -> Result<OrderRange, String> {
        let parse_one = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad order {t:?}"))
        };
        if let Some((a, b)) = s.split_once("..") {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (lo, hi) = (parse_one(a)?, parse_one(b)?);
            if lo < 1 || hi < lo {
                return Err(format!("bad order range {s:?}"));
            }
            Ok(OrderRange { lo, hi })
        } else {
            let v = parse_one(s)?;
            if v < 1 {
                return Err("orders start at 1".to_string());
            }
            Ok(OrderRange { lo: v, hi: v })
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Suite {
    Fixtures,
    Classification,
    Onesided,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a Cayley table file and check identities against it
    Check {
        /// Table file in the standard text format
        table: PathBuf,
        /// Identity to check: a named law (LA, LB, M1, ..., ASSOC) or an Xij code
        #[arg(long = "identity")]
        identities: Vec<String>,
        /// Also demand a neutral element of this sidedness
        #[arg(long)]
        neutral: Option<Side>,
        /// Also demand inverses of this sidedness (relative to the neutral)
        #[arg(long)]
        inverses: Option<InverseSide>,
        #[arg(long, value_enum, default_value_t = OutputMode::Human)]
        format: OutputMode,
    },
    /// Search for a model of the structure plus identities hitting the target
    Search {
        /// Order or inclusive order range, e.g. 3 or 1..5
        #[arg(long)]
        order: OrderRange,
        #[arg(long, default_value = "two-sided")]
        neutral: Side,
        #[arg(long, default_value = "two-sided")]
        inverses: InverseSide,
        #[arg(long = "identity")]
        identities: Vec<String>,
        #[arg(long, default_value = "any-model")]
        target: Target,
        /// Wall-clock limit in seconds
        #[arg(long)]
        budget: Option<f64>,
        /// Return the lexicographically least minimal-order witness,
        /// bit-identical between sequential and parallel runs
        #[arg(long)]
        deterministic: bool,
        /// Worker threads (0 = all cores)
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long, value_enum, default_value_t = OutputMode::Human)]
        format: OutputMode,
    },
    /// Enumerate every model (or one per isomorphism class)
    Enumerate {
        #[arg(long)]
        order: OrderRange,
        #[arg(long, default_value = "two-sided")]
        neutral: Side,
        #[arg(long, default_value = "two-sided")]
        inverses: InverseSide,
        #[arg(long = "identity")]
        identities: Vec<String>,
        /// Keep one representative per isomorphism class (orders up to 8)
        #[arg(long)]
        up_to_iso: bool,
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Certify that no non-loop model exists up to a bound
    Verify {
        #[arg(long = "identity", required = true)]
        identities: Vec<String>,
        #[arg(long, default_value = "two-sided")]
        neutral: Side,
        #[arg(long, default_value = "two-sided")]
        inverses: InverseSide,
        #[arg(long, default_value_t = 5)]
        max_order: usize,
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Run a claim suite and write its record file
    Lab {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 5)]
        max_order: usize,
        /// Wall-clock limit in seconds, applied per claim
        #[arg(long)]
        budget: Option<f64>,
        /// Record file path (defaults to <suite>.records)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the B25 campaign: search for a non-group magma with inverses
    /// satisfying x((yx)z) = ((xy)x)z, orders 2 up to the bound
    B25 {
        #[arg(long, default_value_t = 6)]
        max_order: usize,
        #[arg(long)]
        budget: Option<f64>,
        /// Checkpoint file: resumed from when present, rewritten as the
        /// search progresses
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Print a coded identity with explicit parentheses
    Decode {
        /// An Xij code such as C25, or a named law
        code: String,
    },
    /// Print the dual code X'j'i' of an Xij code
    Dual {
        code: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(65)
        }
    }
}

fn run(command: Command) -> Result<u8, String> {
    match command {
        Command::Check {
            table,
            identities,
            neutral,
            inverses,
            format,
        } => cmd_check(&table, &identities, neutral, inverses, format),
        Command::Search {
            order,
            neutral,
            inverses,
            identities,
            target,
            budget,
            deterministic,
            workers,
            format,
        } => {
            let problem = build_problem(
                order,
                neutral,
                inverses,
                &identities,
                target,
                budget,
                deterministic,
                workers,
            )?;
            cmd_search(&problem, format)
        }
        Command::Enumerate {
            order,
            neutral,
            inverses,
            identities,
            up_to_iso,
            budget,
        } => {
            let problem = build_problem(
                order,
                neutral,
                inverses,
                &identities,
                Target::AnyModel,
                budget,
                true,
                1,
            )?;
            cmd_enumerate(&problem, up_to_iso)
        }
        Command::Verify {
            identities,
            neutral,
            inverses,
            max_order,
            budget,
        } => cmd_verify(&identities, neutral, inverses, max_order, parse_budget(budget)?),
        Command::Lab {
            suite,
            max_order,
            budget,
            out,
        } => cmd_lab(suite, max_order, parse_budget(budget)?, out),
        Command::B25 {
            max_order,
            budget,
            checkpoint,
        } => cmd_b25(max_order, parse_budget(budget)?, checkpoint),
        Command::Decode { code } => {
            let identity = term::parse_identity_arg(&code).map_err(|e| e.to_string())?;
            println!("{identity}");
            Ok(0)
        }
        Command::Dual { code } => {
            let parsed: BMCode = code.parse().map_err(|e: term::CodeError| e.to_string())?;
            println!("{}", parsed.dual());
            Ok(0)
        }
    }
}

fn parse_budget(budget: Option<f64>) -> Result<Option<Duration>, String> {
    match budget {
        None => Ok(None),
        Some(secs) if secs >= 0.0 && secs.is_finite() => Ok(Some(Duration::from_secs_f64(secs))),
        Some(bad) => Err(format!("bad budget {bad}: expected seconds >= 0")),
    }
}

fn parse_identities(args: &[String]) -> Result<Vec<Identity>, String> {
    args.iter()
        .map(|a| term::parse_identity_arg(a).map_err(|e| format!("identity {a:?}: {e}")))
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn build_problem(
    order: OrderRange,
    neutral: Side,
    inverses: InverseSide,
    identities: &[String],
    target: Target,
    budget: Option<f64>,
    deterministic: bool,
    workers: usize,
) -> Result<SearchProblem, String> {
    let mut problem = SearchProblem::new(order.lo..=order.hi, StructureSpec::new(neutral, inverses))
        .with_identities(parse_identities(identities)?)
        .with_target(target)
        .with_workers(workers);
    problem.deterministic = deterministic;
    problem.budget = parse_budget(budget)?;
    Ok(problem)
}

fn cmd_check(
    table: &PathBuf,
    identity_args: &[String],
    neutral: Option<Side>,
    inverses: Option<InverseSide>,
    format: OutputMode,
) -> Result<u8, String> {
    let text =
        fs::read_to_string(table).map_err(|e| format!("cannot read {}: {e}", table.display()))?;
    let magma = Magma::parse_table(&text).map_err(|e| e.to_string())?;
    let identities = parse_identities(identity_args)?;
    let report = magma.analyze();
    let mut all_ok = true;

    if format == OutputMode::Human {
        println!("{report}");
    } else {
        println!(
            "kind=check order={} latin={} loop={} associative={} group={} two-sided-neutral={} two-sided-inverses={}",
            report.order,
            report.is_latin,
            report.is_loop,
            report.is_associative,
            report.is_group,
            report
                .two_sided_neutral
                .map_or("none".to_string(), |e| e.to_string()),
            report.inverse_map_two_sided.is_some(),
        );
    }

    for identity in &identities {
        let label = identity.label();
        match term::falsifying_assignment(identity, &magma) {
            Ok(None) => match format {
                OutputMode::Human => println!("{label}: holds"),
                OutputMode::Record => {
                    println!("kind=identity id={} holds=true", record::quote(&label))
                }
            },
            Ok(Some((asg, l, r))) => {
                all_ok = false;
                match format {
                    OutputMode::Human => {
                        println!("{label}: fails at {asg} (lhs={l} rhs={r})")
                    }
                    OutputMode::Record => println!(
                        "kind=identity id={} holds=false {asg} lhs={l} rhs={r}",
                        record::quote(&label)
                    ),
                }
            }
            Err(e) => {
                all_ok = false;
                match format {
                    OutputMode::Human => println!("{label}: undefined ({e})"),
                    OutputMode::Record => println!(
                        "kind=identity id={} holds=undefined",
                        record::quote(&label)
                    ),
                }
            }
        }
    }

    if neutral.is_some() || inverses.is_some() {
        let spec = StructureSpec::new(
            neutral.unwrap_or(Side::TwoSided),
            inverses.unwrap_or(InverseSide::TwoSided),
        );
        let witness = magma.satisfies_structure(spec);
        if witness.is_none() {
            all_ok = false;
        }
        match format {
            OutputMode::Human => match &witness {
                Some(w) => println!("structure {spec}: satisfied (neutral {})", w.neutral),
                None => println!("structure {spec}: not satisfied"),
            },
            OutputMode::Record => println!(
                "kind=structure neutral={} inverses={} satisfied={}",
                spec.neutral,
                spec.inverses,
                witness.is_some()
            ),
        }
    }

    Ok(if all_ok { 0 } else { 1 })
}

fn cmd_search(problem: &SearchProblem, format: OutputMode) -> Result<u8, String> {
    let outcome = finder::search(problem).map_err(|e| e.to_string())?;
    if format == OutputMode::Record {
        let order = outcome
            .witness
            .as_ref()
            .map_or("none".to_string(), |w| w.magma.order().to_string());
        println!(
            "kind=search status={} order={} nodes={} elapsed_ms={}",
            outcome.status,
            order,
            outcome.nodes_explored,
            outcome.elapsed.as_millis()
        );
    }
    match &outcome.witness {
        Some(w) => {
            print!("{}", w.magma);
            eprintln!(
                "{}: order {} (neutral {}, nodes {}, {:.3}s)",
                outcome.status,
                w.magma.order(),
                w.neutral,
                outcome.nodes_explored,
                outcome.elapsed.as_secs_f64()
            );
        }
        None => {
            eprintln!(
                "{}: orders {}..={} (nodes {}, {:.3}s)",
                outcome.status,
                problem.orders.start(),
                problem.orders.end(),
                outcome.nodes_explored,
                outcome.elapsed.as_secs_f64()
            );
        }
    }
    Ok(match outcome.status {
        SearchStatus::Witness => 0,
        SearchStatus::Exhausted => 1,
        SearchStatus::BudgetExceeded => 2,
    })
}

fn cmd_enumerate(problem: &SearchProblem, up_to_iso: bool) -> Result<u8, String> {
    let models = finder::enumerate_models(problem, up_to_iso).map_err(|e| e.to_string())?;
    for m in &models {
        println!("{m}");
    }
    eprintln!("{} model(s)", models.len());
    Ok(0)
}

fn cmd_verify(
    identity_args: &[String],
    neutral: Side,
    inverses: InverseSide,
    max_order: usize,
    budget: Option<Duration>,
) -> Result<u8, String> {
    let identities = parse_identities(identity_args)?;
    let spec = StructureSpec::new(neutral, inverses);
    let report =
        finder::verify_absence(&identities, spec, max_order, budget).map_err(|e| e.to_string())?;
    for summary in &report.per_order {
        println!(
            "order {}: {} (nodes {})",
            summary.order, summary.status, summary.nodes
        );
    }
    match report.status {
        SearchStatus::Exhausted => {
            println!(
                "no non-loop model up to order {max_order} ({:.3}s)",
                report.elapsed.as_secs_f64()
            );
            Ok(0)
        }
        SearchStatus::Witness => {
            let w = report.witness.as_ref().expect("witness status");
            println!("counterexample of order {}:", w.magma.order());
            print!("{}", w.magma);
            Ok(1)
        }
        SearchStatus::BudgetExceeded => {
            println!("budget exceeded");
            Ok(2)
        }
    }
}

fn suite_exit(any_budget: bool, all_pass: bool) -> u8 {
    if any_budget {
        2
    } else if all_pass {
        0
    } else {
        1
    }
}

fn cmd_lab(
    suite: Suite,
    max_order: usize,
    budget: Option<Duration>,
    out: Option<PathBuf>,
) -> Result<u8, String> {
    let (records, human, any_budget, all_pass, default_name) = match suite {
        Suite::Fixtures => {
            let claims = lab::reproduce_fixtures();
            summarize_claims(&claims, "fixtures")
        }
        Suite::Classification => {
            let rows = lab::run_classification(max_order, budget);
            let records: Vec<String> = rows.iter().map(record::row_record).collect();
            let human: Vec<String> = rows
                .iter()
                .map(|r| {
                    format!(
                        "{} {}: answer {}, observed {}",
                        if r.ok() { "PASS" } else { "FAIL" },
                        r.code,
                        r.answer,
                        r.observed
                    )
                })
                .collect();
            let any_budget = rows
                .iter()
                .any(|r| matches!(r.observed, lab::Observation::Budget));
            let all_pass = rows.iter().all(|r| r.ok());
            (records, human, any_budget, all_pass, "classification")
        }
        Suite::Onesided => {
            let claims = lab::run_onesided_suite(max_order, budget);
            summarize_claims(&claims, "onesided")
        }
    };

    let path = out.unwrap_or_else(|| PathBuf::from(format!("{default_name}.records")));
    fs::write(&path, records.join("\n") + "\n")
        .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    for line in &human {
        println!("{line}");
    }
    println!("records written to {}", path.display());
    Ok(suite_exit(any_budget, all_pass))
}

fn summarize_claims(
    claims: &[lab::ClaimResult],
    name: &'static str,
) -> (Vec<String>, Vec<String>, bool, bool, &'static str) {
    let records: Vec<String> = claims.iter().map(record::claim_record).collect();
    let human: Vec<String> = claims
        .iter()
        .map(|c| {
            format!(
                "{} {}: expected {}; observed {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.claim_id,
                c.expectation,
                c.observed
            )
        })
        .collect();
    let any_budget = claims.iter().any(|c| c.observed.contains("budget"));
    let all_pass = claims.iter().all(|c| c.pass);
    (records, human, any_budget, all_pass, name)
}

fn cmd_b25(
    max_order: usize,
    budget: Option<Duration>,
    checkpoint: Option<PathBuf>,
) -> Result<u8, String> {
    let resume = match &checkpoint {
        Some(path) if path.exists() => Some(
            fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?,
        ),
        _ => None,
    };
    let mut write_error: Option<String> = None;
    let outcome = lab::b25_campaign(max_order, budget, resume.as_deref(), |cp| {
        if let Some(path) = &checkpoint {
            if let Err(e) = fs::write(path, cp) {
                write_error.get_or_insert(format!("cannot write {}: {e}", path.display()));
            }
        }
    })
    .map_err(|e| e.to_string())?;
    if let Some(e) = write_error {
        return Err(e);
    }
    if let Some(path) = &checkpoint {
        fs::write(path, &outcome.checkpoint)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    let claim = &outcome.claim;
    println!(
        "{} {}: expected {}; observed {}",
        if claim.pass { "PASS" } else { "FAIL" },
        claim.claim_id,
        claim.expectation,
        claim.observed
    );
    if let Some(m) = &outcome.witness {
        print!("{m}");
        return Ok(1);
    }
    if claim.observed.starts_with("budget") {
        return Ok(2);
    }
    Ok(0)
}
