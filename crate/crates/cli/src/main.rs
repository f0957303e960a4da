//! `sepdesc`: command-line front end for the separable-permutation toolkit.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage or domain
//! error, 3 a resource cap was exceeded.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use sepdesc::cache::PolyCache;
use sepdesc::disk_tree::DiskTree;
use sepdesc::gamma_bij;
use sepdesc::perm::{BruteForceCap, Permutation};
use sepdesc::poly::{Family, IntPolynomial, Method};
use sepdesc::rc_index::phi;
use sepdesc::schroder::sweep;
use sepdesc::verify::{verify_suite_with_cache, Suite};
use sepdesc::Error;

#[derive(Parser)]
#[command(name = "sepdesc", version, about = "Separable permutations, di-sk trees and their descent polynomials")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Directory for cached polynomials, one JSON file per family and n.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Enum,
    Rec,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    Psi,
    Phi,
}

#[derive(Subcommand)]
enum Command {
    /// Schröder word of a separable permutation, e.g. "9 8 4 1 3 2 7 5 6".
    Sweep {
        /// One-line notation: digits, or space/comma separated values.
        perm: String,
    },
    /// Di-sk tree of a separable permutation with its right chains.
    Tree {
        /// One-line notation: digits, or space/comma separated values.
        perm: String,
    },
    /// Descent polynomial: S, D, A, Dtilde or Gamma.
    Poly {
        family: String,
        n: usize,
        /// Build by recurrence or by enumerating permutations.
        #[arg(long, value_enum, default_value_t = MethodArg::Rec)]
        method: MethodArg,
        /// Largest n allowed for enumeration.
        #[arg(long, default_value_t = BruteForceCap::DEFAULT)]
        cap: usize,
    },
    /// γ-vector of a palindromic family polynomial.
    Gamma {
        family: String,
        n: usize,
        /// Symmetry parameter; defaults to n - 1.
        #[arg(long)]
        darga: Option<usize>,
    },
    /// rc-index Φ_n, optionally evaluated.
    RcIndex {
        n: usize,
        /// Set every generator to this value.
        #[arg(long, conflicts_with = "ab")]
        eval: Option<i64>,
        /// Substitute a = 1, b = t, giving S_n(t).
        #[arg(long)]
        ab: bool,
    },
    /// Apply ψ (DT² → DT¹) or φ (DT¹ → DT²) to a tree read from a file.
    Bij {
        direction: Direction,
        /// File holding a tree in bracket form or as JSON.
        #[arg(long)]
        tree: PathBuf,
    },
    /// Run a verification suite: tables, bijection, identities or conjectures.
    Verify {
        suite: String,
        /// Largest n to check; each suite has its own default.
        #[arg(long)]
        max_n: Option<usize>,
    },
}

enum Failure {
    Checks,
    Error(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            if let Error::NotSeparable(w) = &e {
                eprintln!("witness: pattern {:?} at positions {:?}", w.pattern, w.positions);
            }
            ExitCode::from(if matches!(e, Error::ResourceCap { .. }) { 3 } else { 2 })
        }
    }
}

fn csv_rows(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("UTF-8")
}

fn poly_rows(p: &IntPolynomial) -> Vec<Vec<String>> {
    p.coeffs().iter().enumerate().map(|(i, c)| vec![i.to_string(), c.to_string()]).collect()
}

fn family_poly(cli: &Cli, family: Family, n: usize, method: Method) -> Result<IntPolynomial, Error> {
    match (&cli.cache_dir, method) {
        (Some(dir), Method::Recurrence) => PolyCache::open(dir)?.get_or_compute(family, n, method),
        _ => family.poly(n, method),
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let fmt = cli.format;
    match &cli.command {
        Command::Sweep { perm } => {
            let p: Permutation = perm.parse()?;
            let w = sweep(&p)?;
            match fmt {
                Format::Text => println!("{w}"),
                Format::Json => println!("{}", json!({ "perm": p.word(), "word": w.to_string(), "skew_positions": w.skew_positions() })),
                Format::Csv => print!("{}", csv_rows(&["perm", "word"], &[vec![p.to_string(), w.to_string()]])),
            }
        }
        Command::Tree { perm } => {
            let p: Permutation = perm.parse()?;
            let t = DiskTree::from_permutation(&p)?;
            let view = t.right_chains();
            match fmt {
                Format::Text => {
                    println!("{t}");
                    for c in &view.chains {
                        let start = c.starts_with.map(|o| o.symbol().to_string()).unwrap_or_default();
                        println!(
                            "chain {}: nodes {:?} starts {start} level {} {:?} anchor {} group {}",
                            c.index, c.nodes, c.level, c.attachment, c.anchor, c.group
                        );
                    }
                }
                Format::Json => println!("{}", json!({ "perm": p.word(), "tree": t.to_json(), "text": t.to_string(), "chains": view })),
                Format::Csv => {
                    let rows: Vec<Vec<String>> = view
                        .chains
                        .iter()
                        .map(|c| {
                            vec![
                                c.index.to_string(),
                                c.nodes.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "),
                                c.starts_with.map(|o| o.symbol().to_string()).unwrap_or_default(),
                                c.level.to_string(),
                                format!("{:?}", c.attachment).to_lowercase(),
                                c.anchor.to_string(),
                                c.group.to_string(),
                            ]
                        })
                        .collect();
                    print!("{}", csv_rows(&["chain", "nodes", "starts_with", "level", "attachment", "anchor", "group"], &rows));
                }
            }
        }
        Command::Poly { family, n, method, cap } => {
            let family: Family = family.parse()?;
            let method = match method {
                MethodArg::Rec => Method::Recurrence,
                MethodArg::Enum => Method::Enumeration(BruteForceCap::new(*cap)?),
            };
            let p = family_poly(cli, family, *n, method)?;
            let shown = p.display_in(family.variable());
            match fmt {
                Format::Text => println!("{shown}"),
                Format::Json => println!(
                    "{}",
                    json!({ "family": family.name(), "n": n, "variable": family.variable(), "coeffs": p.to_json(), "display": shown })
                ),
                Format::Csv => print!("{}", csv_rows(&["exponent", "coefficient"], &poly_rows(&p))),
            }
        }
        Command::Gamma { family, n, darga } => {
            let family: Family = family.parse()?;
            if family == Family::Gamma {
                return Err(Error::Domain("Gamma is already a γ-polynomial".into()).into());
            }
            let darga = darga.unwrap_or(n.saturating_sub(1));
            let p = family_poly(cli, family, *n, Method::Recurrence)?;
            let g = p.gamma_decompose(darga)?;
            let full = g.full();
            match fmt {
                Format::Text => println!("{}", full.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")),
                Format::Json => println!("{}", json!({ "family": family.name(), "n": n, "darga": darga, "gamma": g.as_polynomial().to_json() })),
                Format::Csv => {
                    let rows: Vec<Vec<String>> = full.iter().enumerate().map(|(k, c)| vec![k.to_string(), c.to_string()]).collect();
                    print!("{}", csv_rows(&["k", "gamma"], &rows));
                }
            }
        }
        Command::RcIndex { n, eval, ab } => {
            let idx = phi(*n)?;
            if let Some(v) = eval {
                let value = idx.evaluate_constant(*v);
                match fmt {
                    Format::Text => println!("{value}"),
                    Format::Json => println!("{}", json!({ "n": n, "eval": v, "value": value.to_string() })),
                    Format::Csv => print!("{}", csv_rows(&["n", "eval", "value"], &[vec![n.to_string(), v.to_string(), value.to_string()]])),
                }
            } else if *ab {
                let p = idx.substitute_ab();
                match fmt {
                    Format::Text => println!("{p}"),
                    Format::Json => println!("{}", json!({ "n": n, "coeffs": p.to_json(), "display": p.to_string() })),
                    Format::Csv => print!("{}", csv_rows(&["exponent", "coefficient"], &poly_rows(&p))),
                }
            } else {
                match fmt {
                    Format::Text => println!("{idx}"),
                    Format::Json => println!("{}", idx.to_json()),
                    Format::Csv => {
                        let rows: Vec<Vec<String>> = idx
                            .terms
                            .iter()
                            .map(|(m, c)| vec![m.to_string(), c.to_string()])
                            .collect();
                        print!("{}", csv_rows(&["monomial", "multiplicity"], &rows));
                    }
                }
            }
        }
        Command::Bij { direction, tree } => {
            let text = fs::read_to_string(tree)
                .map_err(|e| Error::Domain(format!("cannot read {}: {e}", tree.display())))?;
            let trimmed = text.trim();
            let t = if trimmed.starts_with('{') || trimmed == "null" {
                let v: serde_json::Value = serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()))?;
                DiskTree::from_json(&v)?
            } else {
                trimmed.parse()?
            };
            let image = match direction {
                Direction::Psi => gamma_bij::psi(&t)?,
                Direction::Phi => gamma_bij::phi(&t)?,
            };
            match fmt {
                Format::Text => println!("{image}"),
                Format::Json => println!("{}", json!({ "input": t.to_string(), "output": image.to_string(), "tree": image.to_json() })),
                Format::Csv => print!("{}", csv_rows(&["input", "output"], &[vec![t.to_string(), image.to_string()]])),
            }
        }
        Command::Verify { suite, max_n } => {
            let suite: Suite = suite.parse()?;
            let cache = cli.cache_dir.as_ref().map(PolyCache::open).transpose()?;
            let report = verify_suite_with_cache(suite, *max_n, cache.as_ref())?;
            match fmt {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{}", report.to_json()),
                Format::Csv => print!("{}", report.to_csv()),
            }
            if !report.passed {
                return Err(Failure::Checks);
            }
        }
    }
    Ok(())
}
