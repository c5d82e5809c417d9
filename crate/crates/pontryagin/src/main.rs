use clap::{Parser, Subcommand, ValueEnum};
use pontryagin::error::Error;
use pontryagin::format::{full_report, read_descriptor, to_json, to_text};
use pontryagin::lyndon::standard_basis;
use pontryagin::manifold::{
    classify_low_rank, hyperbolicity, normalize_basis, presentation_of, validate, Hyperbolicity,
};
use pontryagin::manifold::build_presentation;
use pontryagin::quotient::QuotientEngine;
use pontryagin::report::ReportOptions;
use std::path::PathBuf;
use std::process::ExitCode;

/// Loop-space homology, Lyndon bases, and sphere-summand decompositions of
/// homotopy groups for highly connected manifolds, from a JSON descriptor
/// of the rational cohomology.
#[derive(Parser)]
#[command(name = "pontryagin", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check a descriptor against every hypothesis and duality constraint.
    Validate { path: PathBuf },
    /// Run the full pipeline and emit the report document.
    Report {
        path: PathBuf,
        /// truncation of all graded computations (loop degree)
        #[arg(long, default_value_t = 12)]
        max_degree: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// letter-order override: comma-separated letters, smallest rank
        /// first, e.g. 3,1,2
        #[arg(long)]
        seed_order: Option<String>,
    },
    /// Print the standard Lyndon basis of the quadratic Lie algebra.
    LieBasis {
        path: PathBuf,
        #[arg(long, default_value_t = 12)]
        max_degree: u32,
        #[arg(long)]
        seed_order: Option<String>,
    },
    /// Report hyperbolicity or the low-rank homotopy type.
    Classify {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn parse_seed_order(spec: &str, r: usize) -> Result<Vec<u8>, Error> {
    let letters: Vec<usize> = spec
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad letter {s:?} in --seed-order")))
        })
        .collect::<Result<_, _>>()?;
    if letters.len() != r {
        return Err(Error::Usage(format!(
            "--seed-order must list all {r} letters exactly once"
        )));
    }
    let mut ranks = vec![u8::MAX; r];
    for (pos, &x) in letters.iter().enumerate() {
        if x == 0 || x > r || ranks[x - 1] != u8::MAX {
            return Err(Error::Usage(format!(
                "--seed-order must be a permutation of 1..={r}"
            )));
        }
        ranks[x - 1] = pos as u8;
    }
    Ok(ranks)
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Validate { path } => {
            let desc = read_descriptor(&path)?;
            match validate(&desc) {
                Ok(v) => {
                    println!(
                        "valid, r={}, {}",
                        v.r(),
                        match hyperbolicity(&v) {
                            Hyperbolicity::Hyperbolic => "hyperbolic",
                            Hyperbolicity::Elliptic => "elliptic",
                        }
                    );
                    Ok(())
                }
                Err(violations) => Err(pontryagin::manifold::validation_error(violations)),
            }
        }
        Command::Report {
            path,
            max_degree,
            format,
            seed_order,
        } => {
            let desc = read_descriptor(&path)?;
            let seed = match &seed_order {
                Some(s) => Some(parse_seed_order(s, desc.generator_degrees.len())?),
                None => None,
            };
            let opts = ReportOptions {
                max_degree,
                ..Default::default()
            };
            let doc = full_report(&desc, &opts, seed.as_deref())?;
            match format {
                Format::Json => print!("{}", to_json(&doc)),
                Format::Text => print!("{}", to_text(&doc)),
            }
            Ok(())
        }
        Command::LieBasis {
            path,
            max_degree,
            seed_order,
        } => {
            let desc = read_descriptor(&path)?;
            let v = validate(&desc).map_err(pontryagin::manifold::validation_error)?;
            if !v.is_hyperbolic() {
                return Err(Error::Usage(format!(
                    "the Lyndon basis table needs the hyperbolic case r >= 3; this \
                     descriptor has r = {} and is handled by `classify`",
                    v.r()
                )));
            }
            let p = match seed_order {
                Some(s) => {
                    let ranks = parse_seed_order(&s, v.r())?;
                    build_presentation(&normalize_basis(&v, Some(&ranks))?)?
                }
                None => presentation_of(&v)?,
            };
            let engine = QuotientEngine::new(
                p.ungraded.clone(),
                p.leading,
                pontryagin::quotient::DEFAULT_WORD_GUARD,
            );
            println!("deg  sphere  word          bracket");
            for entry in standard_basis(&engine, max_degree)? {
                let word: String = entry
                    .word
                    .display_indices()
                    .iter()
                    .map(|x| x.to_string())
                    .collect();
                println!(
                    "{:>3}  S^{:<5} {:<13} {}",
                    entry.loop_degree, entry.sphere_dim, word, entry.bracket
                );
            }
            Ok(())
        }
        Command::Classify { path, format } => {
            let desc = read_descriptor(&path)?;
            let v = validate(&desc).map_err(pontryagin::manifold::validation_error)?;
            if v.is_hyperbolic() {
                match format {
                    Format::Json => println!(
                        "{}",
                        serde_json::json!({
                            "kind": "hyperbolic",
                            "r": v.r(),
                        })
                    ),
                    Format::Text => println!(
                        "rationally hyperbolic (r = {} > 2); the main pipeline applies: \
                         run `report` for the sphere decomposition",
                        v.r()
                    ),
                }
            } else {
                let t = classify_low_rank(&v)?;
                match format {
                    Format::Json => println!(
                        "{}",
                        serde_json::json!({
                            "kind": "low-rank",
                            "r": v.r(),
                            "homotopy_type": t,
                            "display": t.to_string(),
                        })
                    ),
                    Format::Text => println!(
                        "localized homotopy type: {t} (after inverting finitely many primes)"
                    ),
                }
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
