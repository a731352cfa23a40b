use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use boolpres::algebra::Algebra;
use boolpres::calculus::{canonical_extension, derive_closure, merge, Closure};
use boolpres::products::{compare_densities, ReducedProduct};
use boolpres::sampler::GenericSession;
use boolpres::theorem_b::{build_construction, TreeParams};
use boolpres::theory::{check_axioms, standard_model};
use boolpres::{invariants, text, Error};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "boolpres",
    version,
    about = "Boolean algebras presented by generator relations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a table against the closure conditions.
    Check { valuation: PathBuf },
    /// Print everything a relation set derives.
    Close { relations: PathBuf },
    /// Canonical extension of a consistent relation set.
    Extend {
        relations: PathBuf,
        /// Domain; defaults to the indices the relations mention.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        dom: Option<Vec<usize>>,
    },
    /// Merge two compatible valuation functions.
    Merge { p: PathBuf, q: PathBuf },
    /// Presentation and atoms of the algebra a valuation function presents.
    Algebra { valuation: PathBuf },
    /// Atom count, densities, endomorphism and ideal counts.
    Invariants { presentation: PathBuf },
    /// Finite models of the theory T.
    TheoryT {
        #[command(subcommand)]
        command: TheoryCommand,
    },
    /// Run a schedule of dense sets through a generic-filter session.
    SampleGeneric {
        #[arg(long)]
        lambda: usize,
        #[arg(long)]
        mu: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        schedule: PathBuf,
    },
    /// Reduced product of presented algebras over a filter.
    Product {
        #[arg(long)]
        filter: PathBuf,
        #[arg(required = true)]
        algebras: Vec<PathBuf>,
    },
    /// Tree construction of an ideal-independent family.
    TheoremB {
        #[arg(long)]
        depth: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        widths: Vec<usize>,
        #[arg(long)]
        branches: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum)]
        check: Option<BCheck>,
    },
}

#[derive(Subcommand)]
enum TheoryCommand {
    /// Check the axioms on a model file.
    Check { model: PathBuf },
    /// The standard model over a valuation function on 0..n.
    Standard {
        valuation: PathBuf,
        #[arg(long)]
        block: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BCheck {
    Independence,
    Partition,
}

/// Printed output plus whether the run was a semantic success.
struct Outcome {
    out: String,
    ok: bool,
}

impl Outcome {
    fn ok(out: String) -> Self {
        Self { out, ok: true }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| {
        text::ParseError {
            line: 0,
            message: format!("{}: {e}", path.display()),
        }
        .into()
    })
}

fn run(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Check { valuation } => {
            let table = text::parse_table(&read(&valuation)?)?;
            Ok(match table.check() {
                Ok(()) => Outcome::ok("valid\n".into()),
                Err(v) => Outcome {
                    out: format!("{v}\n"),
                    ok: false,
                },
            })
        }
        Command::Close { relations } => {
            let r = text::parse_relations(&read(&relations)?)?;
            let mut out = text::write_relations(&derive_closure(&r));
            let bad = Closure::of(&r).inconsistency();
            if let Some(why) = bad {
                let _ = writeln!(out, "# inconsistent: {why}");
            }
            Ok(Outcome {
                out,
                ok: bad.is_none(),
            })
        }
        Command::Extend { relations, dom } => {
            let r = text::parse_relations(&read(&relations)?)?;
            let dom = dom.unwrap_or_else(|| r.indices());
            Ok(Outcome::ok(text::write_valuation(&canonical_extension(
                &r, &dom,
            )?)))
        }
        Command::Merge { p, q } => {
            let p = text::parse_valuation(&read(&p)?)?;
            let q = text::parse_valuation(&read(&q)?)?;
            Ok(Outcome::ok(text::write_valuation(&merge(&p, &q)?)))
        }
        Command::Algebra { valuation } => {
            let p = text::parse_valuation(&read(&valuation)?)?;
            let alg = p.algebra()?;
            let mut out = text::write_presentation(alg.presentation());
            let _ = writeln!(out, "# atoms: {}", alg.atom_count());
            for a in alg.atoms() {
                let _ = writeln!(out, "#   {a}");
            }
            Ok(Outcome::ok(out))
        }
        Command::Invariants { presentation } => {
            let alg = Algebra::new(text::parse_presentation(&read(&presentation)?)?);
            Ok(Outcome::ok(format!("{}\n", invariants::report(&alg)?)))
        }
        Command::TheoryT { command } => match command {
            TheoryCommand::Check { model } => {
                let m = text::parse_model(&read(&model)?)?;
                let report = check_axioms(&m);
                Ok(Outcome {
                    out: format!("{report}\n"),
                    ok: report.all_pass(),
                })
            }
            TheoryCommand::Standard { valuation, block } => {
                let p = text::parse_valuation(&read(&valuation)?)?;
                Ok(Outcome::ok(text::write_model(&standard_model(&p, block)?)))
            }
        },
        Command::SampleGeneric {
            lambda,
            mu,
            seed,
            schedule,
        } => {
            let reqs = text::parse_schedule(&read(&schedule)?)?;
            let mut session = GenericSession::new(lambda, mu, seed)?;
            let (p, report) = session.run_schedule(reqs);
            let mut out = text::write_valuation(&p);
            for line in report.to_string().lines() {
                let _ = writeln!(out, "# {line}");
            }
            Ok(Outcome::ok(out))
        }
        Command::Product { filter, algebras } => {
            let factors = algebras
                .iter()
                .map(|a| Ok(Algebra::new(text::parse_presentation(&read(a)?)?)))
                .collect::<Result<Vec<_>, Error>>()?;
            let filter = text::parse_filter(&read(&filter)?, factors.len())?;
            let rp = ReducedProduct::new(factors.clone(), filter.clone())?;
            let mut out = text::write_presentation(rp.algebra().presentation());
            let _ = writeln!(out, "# filter: {filter}");
            let _ = writeln!(out, "# atoms: {}", rp.algebra().atom_count());
            let cmp = compare_densities(&factors, &filter)?;
            let _ = writeln!(out, "# densities: {cmp}");
            let mut ok = true;
            if filter.is_ultra() {
                match rp.verify_isomorphism_to_factor() {
                    Ok(i0) => {
                        let _ = writeln!(out, "# isomorphic to factor {i0}");
                    }
                    Err(e) => {
                        let _ = writeln!(out, "# {e}");
                        ok = false;
                    }
                }
            }
            Ok(Outcome { out, ok })
        }
        Command::TheoremB {
            depth,
            widths,
            branches,
            seed,
            check,
        } => {
            let branches = text::parse_branches(&read(&branches)?)?;
            let c = build_construction(
                TreeParams {
                    depth,
                    widths,
                    branches,
                },
                seed,
            )?;
            let mut out = String::new();
            let mut ok = true;
            for i in 0..c.branch_count() {
                let _ = writeln!(out, "b_{i}: {}", c.b(i));
            }
            if !matches!(check, Some(BCheck::Independence)) {
                for i in 0..c.branch_count() {
                    let r = c.check_partition(i)?;
                    ok &= r.holds();
                    let _ = writeln!(out, "partition {i}: {r}");
                }
            }
            if !matches!(check, Some(BCheck::Partition)) {
                for i in 0..c.branch_count() {
                    let others: Vec<usize> = (0..c.branch_count()).filter(|&j| j != i).collect();
                    let r = c.check_ideal_independence(i, &others)?;
                    ok &= r.holds();
                    let _ = writeln!(out, "{r}");
                }
            }
            Ok(Outcome { out, ok })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome { out, ok }) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Error::Parse(e)) => {
            eprintln!("parse error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
