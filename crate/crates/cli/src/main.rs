//! `pnilp`: run p-nilpotency checks on permutation groups from the shell.
//!
//! Reports go to stdout as JSON lines (or a table with `--pretty`); sweep
//! summaries and errors go to stderr. Exit status is 0 on success, 1 when a
//! theorem equivalence or lemma fails, 2 on bad input or an exceeded cap.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pnilp::catalog::{self, NamedGroup};
use pnilp::criteria::{self, CheckReport, Lemma, LemmaParams};
use pnilp::harness::{self, Caps, SweepConfig, Summary};
use pnilp::structure;
use pnilp::words::{verbal_subgroup, word_values};
use pnilp::{arith, parse_word, Error, Limits, Word};

#[derive(Parser)]
#[command(name = "pnilp", version, about = "Word-value criteria for p-nilpotency of finite permutation groups")]
struct Cli {
    /// Print a table (reports) or indented JSON instead of JSON lines.
    #[arg(long, global = true)]
    pretty: bool,

    /// Largest group order that may be fully enumerated.
    #[arg(long, global = true, env = "PNILP_ENUM_CAP")]
    enum_cap: Option<usize>,

    /// Largest number of argument tuples a word evaluation may visit.
    #[arg(long, global = true, env = "PNILP_TUPLE_CAP")]
    tuple_cap: Option<u128>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GroupArg {
    /// Catalog name such as `symmetric(4)` or `group_72`, or a group JSON file.
    group: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesArg {
    LowerCentral,
    Derived,
}

#[derive(Subcommand)]
enum Command {
    /// Order, degree and structural predicates of a group.
    Order(GroupArg),
    /// Lower central or derived series.
    Series {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, value_enum, default_value = "lower-central")]
        kind: SeriesArg,
    },
    /// The set of values of a word and the subgroup it generates.
    Values {
        #[command(flatten)]
        group: GroupArg,
        /// `gamma:k`, `delta:k`, `pow:n` or a word such as `[x1,x2]^2`.
        word: String,
        /// Include the values themselves.
        #[arg(long)]
        list: bool,
    },
    /// The order condition on word values at a prime.
    CheckP {
        #[command(flatten)]
        group: GroupArg,
        word: String,
        #[arg(short, long)]
        p: u64,
    },
    /// p-nilpotency by all three tests.
    Pnilp {
        #[command(flatten)]
        group: GroupArg,
        #[arg(short, long)]
        p: Option<u64>,
    },
    /// Lower central term versus the order condition on `gamma:k` values.
    TheoremA {
        #[command(flatten)]
        group: GroupArg,
        #[arg(short, long, default_value_t = 2)]
        k: u32,
        #[arg(short, long)]
        p: Option<u64>,
    },
    /// Derived term versus the order condition on `delta:k` values (soluble groups).
    TheoremB {
        #[command(flatten)]
        group: GroupArg,
        #[arg(short, long, default_value_t = 2)]
        k: u32,
        #[arg(short, long)]
        p: Option<u64>,
    },
    /// Normalizer/centralizer test over the subgroups of a Sylow subgroup.
    Frobenius {
        #[command(flatten)]
        group: GroupArg,
        #[arg(short, long)]
        p: Option<u64>,
    },
    /// Executable lemma checks; skipped when hypotheses fail.
    Lemmas {
        #[command(flatten)]
        group: GroupArg,
        /// Lemma names; all of them when omitted.
        #[arg(long = "lemma")]
        lemmas: Vec<String>,
        #[arg(short, long, default_value_t = 2)]
        k: u32,
        #[arg(short, long)]
        p: Option<u64>,
        /// Word for the closure lemmas; `gamma:k` when omitted.
        #[arg(long)]
        word: Option<String>,
    },
    /// The power word counterexample and both readings of the Alt(5) set.
    Counterexamples,
    /// Run a sweep described by a JSON config.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Run checks one at a time.
        #[arg(long)]
        serial: bool,
    },
    /// List the default catalog, optionally writing the manifest and fixtures.
    Catalog {
        /// Write the catalog manifest JSON here.
        #[arg(long)]
        manifest: Option<PathBuf>,
        /// Write the order 72 group's JSON here.
        #[arg(long)]
        g72: Option<PathBuf>,
    },
}

enum Output {
    Reports(Vec<CheckReport>),
    Json(Value),
}

struct Run {
    pretty: bool,
    limits: Limits,
    /// Caps given by flag or environment; these override a sweep config's.
    caps: Caps,
}

impl Run {
    fn group(&self, arg: &GroupArg) -> Result<NamedGroup, Error> {
        let g = catalog::resolve(&arg.group)?;
        Ok(NamedGroup::new(g.name, g.group.relimit(self.limits)))
    }

    fn primes(&self, g: &NamedGroup, p: Option<u64>) -> Vec<u64> {
        match p {
            Some(p) => vec![p],
            None => arith::prime_divisors(g.group.order()),
        }
    }

    fn execute(&self, command: Command) -> Result<(Output, i32), Error> {
        let reports = |r: Vec<CheckReport>| {
            let code = if r.iter().any(harness::is_mismatch) { 1 } else { 0 };
            (Output::Reports(r), code)
        };
        Ok(match command {
            Command::Order(arg) => {
                let g = self.group(&arg)?;
                let preds = structure::predicates(&g.group)?;
                let json = json!({
                    "group": g.name,
                    "degree": g.group.degree(),
                    "order": g.group.order(),
                    "generators": g.group.generators(),
                    "predicates": preds,
                });
                (Output::Json(json), 0)
            }
            Command::Series { group, kind } => {
                let g = self.group(&group)?;
                let series = match kind {
                    SeriesArg::LowerCentral => structure::lower_central_series(&g.group),
                    SeriesArg::Derived => structure::derived_series(&g.group),
                };
                let mut json = serde_json::to_value(series.to_json())?;
                json["group"] = json!(g.name);
                (Output::Json(json), 0)
            }
            Command::Values { group, word, list } => {
                let g = self.group(&group)?;
                let w = parse_word(&word)?;
                let values = word_values(&g.group, &w)?;
                let verbal = verbal_subgroup(&g.group, &w)?;
                let mut json = json!({
                    "group": g.name,
                    "word": w.descriptor(),
                    "count": values.len(),
                    "verbal_order": verbal.order(),
                    "conjugation_closed": values.is_conjugation_closed(),
                    "inversion_closed": values.is_inversion_closed(),
                });
                if list {
                    json["values"] = json!(values.values().iter().map(|v| v.to_string()).collect::<Vec<_>>());
                }
                (Output::Json(json), 0)
            }
            Command::CheckP { group, word, p } => {
                let g = self.group(&group)?;
                let w = parse_word(&word)?;
                reports(vec![criteria::satisfies_p(&g, &w, p)?])
            }
            Command::Pnilp { group, p } => {
                let g = self.group(&group)?;
                let mut rows = Vec::new();
                for p in self.primes(&g, p) {
                    let complement = structure::p_prime_core(&g.group, p)?;
                    let frobenius = match criteria::frobenius_p_nilpotent(&g, p) {
                        Ok(r) => json!(r.holds),
                        Err(Error::BoundExceeded(_)) => Value::Null,
                        Err(e) => return Err(e),
                    };
                    rows.push(json!({
                        "group": g.name,
                        "p": p,
                        "p_nilpotent": structure::is_p_nilpotent(&g.group, p)?,
                        "by_core": structure::is_p_nilpotent_by_core(&g.group, p)?,
                        "frobenius": frobenius,
                        "p_prime_core_order": complement.order(),
                    }));
                }
                (Output::Json(Value::Array(rows)), 0)
            }
            Command::TheoremA { group, k, p } => {
                let g = self.group(&group)?;
                let r = self
                    .primes(&g, p)
                    .into_iter()
                    .map(|p| criteria::check_theorem_gamma(&g, k, p))
                    .collect::<Result<_, _>>()?;
                reports(r)
            }
            Command::TheoremB { group, k, p } => {
                let g = self.group(&group)?;
                let r = self
                    .primes(&g, p)
                    .into_iter()
                    .map(|p| criteria::check_theorem_delta(&g, k, p))
                    .collect::<Result<_, _>>()?;
                reports(r)
            }
            Command::Frobenius { group, p } => {
                let g = self.group(&group)?;
                let r = self
                    .primes(&g, p)
                    .into_iter()
                    .map(|p| criteria::frobenius_p_nilpotent(&g, p))
                    .collect::<Result<_, _>>()?;
                reports(r)
            }
            Command::Lemmas { group, lemmas, k, p, word } => {
                let g = self.group(&group)?;
                let lemmas: Vec<Lemma> = if lemmas.is_empty() {
                    Lemma::ALL.to_vec()
                } else {
                    lemmas.iter().map(|l| l.parse()).collect::<Result<_, _>>()?
                };
                let word: Option<Word> = word.as_deref().map(parse_word).transpose()?;
                let mut out = Vec::new();
                for lemma in lemmas {
                    for p in self.primes(&g, p) {
                        let params = LemmaParams {
                            k: Some(k),
                            p: Some(p),
                            word: word.clone(),
                        };
                        out.push(criteria::lemma_check(lemma, &g, &params)?);
                    }
                }
                reports(out)
            }
            Command::Counterexamples => {
                let mut out = harness::run_sweep(&SweepConfig::counterexample_profile().with_caps(&self.caps))?;
                let (readings, matching) = harness::external_reading_reports(self.limits)?;
                eprintln!("readings satisfying the claim at p = 2, 3, 5: {}", matching.join(", "));
                out.reports.extend(readings);
                let code = out.summary.exit_code();
                (Output::Reports(out.reports), code)
            }
            Command::Sweep { config, serial } => {
                let mut config = SweepConfig::load(&config)?;
                if serial {
                    config.parallel = false;
                }
                config = config.with_caps(&self.caps);
                let out = harness::run_sweep(&config)?;
                print_summary(&out.summary);
                let code = out.summary.exit_code();
                (Output::Reports(out.reports), code)
            }
            Command::Catalog { manifest, g72 } => {
                let entries = catalog::default_catalog();
                if let Some(path) = manifest {
                    std::fs::write(path, catalog::manifest_text(&entries)?)?;
                }
                if let Some(path) = g72 {
                    catalog::save(path, &catalog::group_72().named())?;
                }
                (Output::Json(serde_json::to_value(entries)?), 0)
            }
        })
    }

    fn print(&self, output: &Output) -> serde_json::Result<()> {
        match output {
            Output::Reports(reports) if self.pretty => print_table(reports),
            Output::Reports(reports) => {
                for r in reports {
                    println!("{}", serde_json::to_string(r)?);
                }
            }
            Output::Json(value) if self.pretty => println!("{}", serde_json::to_string_pretty(value)?),
            Output::Json(Value::Array(items)) => {
                for item in items {
                    println!("{}", serde_json::to_string(item)?);
                }
            }
            Output::Json(value) => println!("{}", serde_json::to_string(value)?),
        }
        Ok(())
    }
}

fn print_summary(s: &Summary) {
    eprintln!(
        "holds {} fails {} skipped {} mismatches {} errors {}",
        s.holds, s.fails, s.skipped, s.mismatches, s.errors
    );
}

fn verdict(r: &CheckReport) -> &'static str {
    if harness::is_error(r) {
        "error"
    } else if r.skipped {
        "skipped"
    } else if r.holds {
        "holds"
    } else {
        "fails"
    }
}

fn print_table(reports: &[CheckReport]) {
    println!(
        "{:<26} {:<44} {:<34} {:>3} {:>3} {:<8} {:>9}",
        "check", "group", "word", "k", "p", "result", "ms"
    );
    for r in reports {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        println!(
            "{:<26} {:<44} {:<34} {:>3} {:>3} {:<8} {:>9.2}",
            r.check,
            r.group,
            opt(r.word.clone()),
            opt(r.k.map(|k| k.to_string())),
            opt(r.p.map(|p| p.to_string())),
            verdict(r),
            r.ms
        );
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut limits = match Limits::from_env() {
        Ok(l) => l,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(cap) = cli.enum_cap {
        limits.enumeration_cap = cap;
    }
    if let Some(cap) = cli.tuple_cap {
        limits.tuple_cap = cap;
    }
    let run = Run {
        pretty: cli.pretty,
        limits,
        caps: Caps {
            enumeration: cli.enum_cap,
            tuple: cli.tuple_cap,
        },
    };
    match run.execute(cli.command) {
        Ok((output, code)) => {
            if let Err(e) = run.print(&output) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
