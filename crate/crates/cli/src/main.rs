use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use knotparity::enumerate::{knot_classes, word_count};
use knotparity::invariants::{big_l_invariant, bracket, is_irreducibly_odd, turaev_delta_bracket, DeltaFilter};
use knotparity::moves::{bfs_reachable_with_budget, reduce_r2, reduce_r2_random, DEFAULT_NODE_BUDGET};
use knotparity::parity::GaussianParity;
use knotparity::projections::{project_level, Level};
use knotparity::{canonical_key, Error, GaussPhrase, VirtualGaussDiagram};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

mod report;

use report::{free_report, render_text, virtual_report, InvariantReport};

/// Largest chord count `search` will enumerate.
const SEARCH_CAP: usize = 9;

#[derive(Parser)]
#[command(name = "knotparity", version, about = "Parity invariants of free and virtual knots")]
struct Cli {
    /// Print JSON instead of `key: value` lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Find {
    IrreduciblyOdd,
    NonzeroL,
    Trivializable,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a code and print its canonical form.
    Parse {
        code: String,
        /// Read a signed over/under code instead of a free one.
        #[arg(long = "virtual")]
        is_virtual: bool,
    },
    /// Compute every applicable invariant.
    Invariants {
        /// Inline code; omit when using --file.
        code: Option<String>,
        /// File with one code per line; blank lines and `#` comments are skipped.
        #[arg(long, conflicts_with = "code")]
        file: Option<PathBuf>,
        #[arg(long = "virtual")]
        is_virtual: bool,
    },
    /// Remove bigons until none is left.
    Reduce {
        code: String,
        /// Pick bigons at random with this seed instead of in scan order.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Delete odd chords until the diagram lies in the given filtration level.
    Project {
        code: String,
        /// A non-negative integer or `inf`.
        #[arg(long)]
        level: String,
    },
    /// Exhaustive search over diagrams with at most --max-chords chords.
    Search {
        #[arg(long)]
        max_chords: usize,
        #[arg(long, value_enum)]
        find: Find,
        /// Diagram to test with `trivializable`.
        code: Option<String>,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: usize,
    },
    /// Decide whether two free knots agree, within a chord bound.
    OracleEquiv {
        first: String,
        second: String,
        /// Defaults to two more than the larger chord count.
        #[arg(long)]
        max_chords: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: usize,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded(_) => 4,
        Error::InvariantViolation(_) => 3,
        _ => 2,
    }
}

fn print_reports(reports: &[InvariantReport], json: bool) {
    if json {
        let v = if reports.len() == 1 {
            serde_json::to_string_pretty(&reports[0])
        } else {
            serde_json::to_string_pretty(reports)
        };
        println!("{}", v.expect("reports serialize"));
    } else {
        let blocks: Vec<String> = reports.iter().map(render_text).collect();
        print!("{}", blocks.join("\n"));
    }
}

fn print_codes(label: &str, codes: &[String], json: bool) {
    if json {
        println!("{}", serde_json::json!({ label: codes }));
    } else {
        for c in codes {
            println!("{c}");
        }
    }
}

fn invariants_of(code: &str, is_virtual: bool) -> Result<InvariantReport, Error> {
    if is_virtual {
        virtual_report(code, &code.parse::<VirtualGaussDiagram>()?)
    } else {
        free_report(code, &code.parse::<GaussPhrase>()?)
    }
}

fn search(max_chords: usize, find: Find, code: Option<&str>, budget: usize, json: bool) -> Result<(), Error> {
    if max_chords > SEARCH_CAP {
        return Err(Error::MalformedCode(format!("--max-chords is capped at {SEARCH_CAP}")));
    }
    if let Find::Trivializable = find {
        let p: GaussPhrase = code
            .ok_or_else(|| Error::MalformedCode("trivializable needs a code".into()))?
            .parse()?;
        let reached = bfs_reachable_with_budget(&p, max_chords.max(p.chord_count()), budget)?;
        let unknot = canonical_key(&GaussPhrase::unknot());
        let found = reached.contains(&unknot);
        if json {
            println!("{}", serde_json::json!({ "trivializable": found, "visited": reached.len() }));
        } else if found {
            println!("reachable: ()");
        } else {
            println!("not reachable within {max_chords} chords ({} classes visited)", reached.len());
        }
        return Ok(());
    }
    let words: u64 = (0..=max_chords).map(word_count).sum();
    let keys = knot_classes(max_chords, budget as u64).map_err(|_| {
        eprintln!("search needs {words} words, budget is {budget}");
        Error::BudgetExceeded(budget)
    })?;
    let mut hits = Vec::new();
    for k in keys {
        let p = k.to_phrase();
        let hit = match find {
            Find::IrreduciblyOdd => is_irreducibly_odd(&p, &GaussianParity)?,
            Find::NonzeroL => big_l_invariant(&p)? != 0,
            Find::Trivializable => unreachable!(),
        };
        if hit {
            hits.push(p.to_string());
        }
    }
    print_codes("found", &hits, json);
    Ok(())
}

#[derive(Debug, PartialEq, Eq)]
enum Verdict {
    Same,
    Different,
    Unknown,
}

fn oracle_equiv(a: &GaussPhrase, b: &GaussPhrase, max_chords: usize, budget: usize) -> Result<Verdict, Error> {
    if canonical_key(a) == canonical_key(b) {
        return Ok(Verdict::Same);
    }
    if a.unicursal_count() != b.unicursal_count() {
        return Ok(Verdict::Different);
    }
    if a.unicursal_count() == 1 {
        let g = GaussianParity;
        if bracket(a, &g)? != bracket(b, &g)?
            || big_l_invariant(a)? != big_l_invariant(b)?
            || turaev_delta_bracket(a, DeltaFilter::All, &g)? != turaev_delta_bracket(b, DeltaFilter::All, &g)?
        {
            return Ok(Verdict::Different);
        }
    }
    let reached = bfs_reachable_with_budget(a, max_chords, budget)?;
    Ok(if reached.contains(&canonical_key(b)) {
        Verdict::Same
    } else {
        Verdict::Unknown
    })
}

fn run(cli: Cli) -> Result<(), Error> {
    let json = cli.json;
    match cli.command {
        Command::Parse { code, is_virtual } => {
            let canonical = if is_virtual {
                code.parse::<VirtualGaussDiagram>()?.canonical_key().to_string()
            } else {
                code.parse::<GaussPhrase>()?.to_canonical_string()
            };
            if json {
                println!("{}", serde_json::json!({ "canonical": canonical }));
            } else {
                println!("{canonical}");
            }
        }
        Command::Invariants { code, file, is_virtual } => {
            let inputs: Vec<String> = match (code, file) {
                (Some(c), _) => vec![c],
                (None, Some(path)) => fs::read_to_string(&path)
                    .map_err(|e| Error::MalformedCode(format!("{}: {e}", path.display())))?
                    .lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty() && !l.starts_with('#'))
                    .map(String::from)
                    .collect(),
                (None, None) => return Err(Error::MalformedCode("give a code or --file".into())),
            };
            let reports = inputs
                .iter()
                .map(|c| invariants_of(c, is_virtual))
                .collect::<Result<Vec<_>, _>>()?;
            print_reports(&reports, json);
        }
        Command::Reduce { code, seed } => {
            let p: GaussPhrase = code.parse()?;
            let r = match seed {
                Some(s) => reduce_r2_random(&p, &mut ChaCha8Rng::seed_from_u64(s)),
                None => reduce_r2(&p),
            };
            let out = r.to_canonical_string();
            if json {
                println!("{}", serde_json::json!({ "reduced": out }));
            } else {
                println!("{out}");
            }
        }
        Command::Project { code, level } => {
            let d: VirtualGaussDiagram = code.parse()?;
            let out = project_level(&d, level.parse::<Level>()?).canonical_key().to_string();
            if json {
                println!("{}", serde_json::json!({ "projected": out }));
            } else {
                println!("{out}");
            }
        }
        Command::Search { max_chords, find, code, budget } => search(max_chords, find, code.as_deref(), budget, json)?,
        Command::OracleEquiv { first, second, max_chords, budget } => {
            let a: GaussPhrase = first.parse()?;
            let b: GaussPhrase = second.parse()?;
            let bound = max_chords.unwrap_or(a.chord_count().max(b.chord_count()) + 2);
            let v = match oracle_equiv(&a, &b, bound, budget)? {
                Verdict::Same => "SAME",
                Verdict::Different => "DIFFERENT",
                Verdict::Unknown => "UNKNOWN",
            };
            if json {
                println!("{}", serde_json::json!({ "verdict": v }));
            } else {
                println!("{v}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
