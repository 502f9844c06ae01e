//! Command-line surface for partial spread codes: construct a code file,
//! inspect its parameters and bounds, encode messages, corrupt words through
//! the operator channel, decode received words, run exhaustive verification,
//! and run seeded channel trials.
//!
//! Exit codes: 0 on success, 1 on domain errors (invalid parameters, not
//! decodable, failed verification), 2 on I/O or format errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pspread::{
    beutelspacher_lower_bound, decode, decode_mindist_oracle, io, is_partial_spread,
    partial_spread_upper_bound, run_trials, singleton_bound, ChannelSpec, Code, CollectionPolicy,
    DecodeStatus, Error, MatF, Received, Rng, Subspace,
};

/// Enumeration guard, overridable through PSPREAD_ENUM_LIMIT.
fn enum_limit() -> Option<u128> {
    std::env::var("PSPREAD_ENUM_LIMIT")
        .ok()
        .and_then(|v| v.parse::<u128>().ok())
}

#[derive(Parser)]
#[command(name = "pspread", version, about = "partial spread subspace codes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Full,
    #[value(name = "truncate_to_k", alias = "truncate-to-k")]
    TruncateToK,
}

#[derive(Subcommand)]
enum Cmd {
    /// Construct a code and write it as a PSC v1 file.
    Construct {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Coefficients c_0 .. c_k of a monic irreducible of degree k.
        #[arg(long, num_args = 1.., value_name = "COEFF")]
        p: Option<Vec<u32>>,
        /// Coefficients c_0 .. c_{k+r} of a monic irreducible of degree k+r.
        #[arg(long, num_args = 1.., value_name = "COEFF")]
        pp: Option<Vec<u32>>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print parameters, cardinality and bounds of a code file.
    Info { code: PathBuf },
    /// Write the generator matrix of a message index as a MATFQ v1 file.
    Encode {
        code: PathBuf,
        #[arg(long)]
        index: u128,
        #[arg(long)]
        out: PathBuf,
    },
    /// Erase a word to `erase` dimensions, add `error` fresh dimensions, and
    /// write the received word (zero-padded to k rows).
    Corrupt {
        word: PathBuf,
        #[arg(long)]
        erase: usize,
        #[arg(long)]
        error: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decode a received word; `--oracle` uses the exhaustive
    /// minimum-distance scan instead of the pipeline.
    Decode {
        code: PathBuf,
        received: PathBuf,
        #[arg(long)]
        oracle: bool,
    },
    /// Run exhaustive checks; with no flags, run them all.
    Verify {
        code: PathBuf,
        #[arg(long)]
        enumerate: bool,
        #[arg(long = "min-distance")]
        min_distance: bool,
        #[arg(long)]
        maximality: bool,
        #[arg(long)]
        bounds: bool,
    },
    /// Seeded operator-channel experiments.
    Trials {
        code: PathBuf,
        #[arg(long)]
        erase: usize,
        #[arg(long)]
        error: usize,
        #[arg(long = "n")]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "full")]
        policy: PolicyArg,
    },
}

/// 1 for domain errors, 2 for anything touching files or formats.
fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Io(_) | Error::Format(_) => 2,
        _ => 1,
    }
}

fn with_path(path: &Path, e: Error) -> Error {
    match e {
        Error::Format(msg) => Error::Format(format!("{}: {msg}", path.display())),
        other => Error::Format(format!("{}: {other}", path.display())),
    }
}

fn read_file(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn load_code(path: &Path) -> Result<Code, Error> {
    io::read_code(&read_file(path)?).map_err(|e| with_path(path, e))
}

fn load_matf(path: &Path) -> Result<MatF, Error> {
    io::read_matf(&read_file(path)?).map_err(|e| with_path(path, e))
}

fn run(cmd: Cmd) -> Result<u8, Error> {
    match cmd {
        Cmd::Construct {
            q,
            k,
            n,
            p,
            pp,
            out,
        } => {
            let code = Code::build(q, k, n, p.as_deref(), pp.as_deref())?;
            fs::write(&out, io::write_code(&code))?;
            println!("wrote {}", out.display());
            Ok(0)
        }
        Cmd::Info { code } => {
            let code = load_code(&code)?;
            print!(
                "q {}\nk {}\nn {}\nh {}\nr {}\ncardinality {}\nmin_distance {}\n",
                code.q(),
                code.k(),
                code.n(),
                code.h(),
                code.r(),
                code.cardinality(),
                code.min_distance()
            );
            print!(
                "singleton {}\nupper {}\nlower {}\n",
                singleton_bound(code.q(), code.k(), code.n(), code.min_distance())?,
                partial_spread_upper_bound(code.q(), code.k(), code.n())?,
                beutelspacher_lower_bound(code.q(), code.k(), code.n())?
            );
            Ok(0)
        }
        Cmd::Encode { code, index, out } => {
            let code = load_code(&code)?;
            let word = code.encode(index)?;
            fs::write(&out, io::write_matf(&word.generator))?;
            println!("wrote {}", out.display());
            Ok(0)
        }
        Cmd::Corrupt {
            word,
            erase,
            error,
            seed,
            out,
        } => {
            let mat = load_matf(&word)?;
            let k = mat.rows();
            let v = Subspace::span(&mat);
            let mut rng = Rng::new(seed);
            let h = pspread::channel::erase(&v, erase, &mut rng)?;
            let u = pspread::channel::inject_error(&h, error, &mut rng)?;
            if u.dim() > k {
                return Err(Error::InvalidParams(format!(
                    "erase + error = {} rows cannot fit the {k}-row wire; \
                     lower the dimensions or use `trials --policy truncate_to_k`",
                    u.dim()
                )));
            }
            let mut rows = u.basis().clone();
            if rows.rows() < k {
                rows = rows.vstack(&MatF::zeros(rows.q(), k - rows.rows(), rows.cols()))?;
            }
            fs::write(&out, io::write_matf(&rows))?;
            println!("wrote {}", out.display());
            Ok(0)
        }
        Cmd::Decode {
            code,
            received,
            oracle,
        } => {
            let code = load_code(&code)?;
            let mat = load_matf(&received)?;
            let x = Received::new(&code, mat)?;
            let outcome = if oracle {
                decode_mindist_oracle(&code, &x, enum_limit())?
            } else {
                decode(&code, &x)
            };
            print!("{}", io::write_outcome(&outcome));
            Ok(if outcome.status == DecodeStatus::Decoded {
                0
            } else {
                1
            })
        }
        Cmd::Verify {
            code,
            enumerate,
            min_distance,
            maximality,
            bounds,
        } => {
            let code = load_code(&code)?;
            let all = !(enumerate || min_distance || maximality || bounds);
            let mut failed = false;
            let mut report = |name: &str, ok: bool| {
                println!("{name} {}", if ok { "ok" } else { "fail" });
                failed |= !ok;
            };
            if enumerate || all {
                let spaces: Vec<Subspace> = code.codewords().map(|w| w.subspace()).collect();
                let distinct: std::collections::HashSet<&Subspace> = spaces.iter().collect();
                let ok = spaces.len() as u128 == code.cardinality()
                    && distinct.len() == spaces.len()
                    && spaces.iter().all(|s| s.dim() == code.k())
                    && is_partial_spread(&spaces)?;
                report("enumerate", ok);
            }
            if min_distance || all {
                let d = code.min_distance_exhaustive(enum_limit())?;
                report("min_distance", d == code.min_distance());
            }
            if maximality || all {
                report("maximality", code.is_maximal_exhaustive(enum_limit())?);
            }
            if bounds || all {
                let card = code.cardinality();
                let lower = beutelspacher_lower_bound(code.q(), code.k(), code.n())?;
                let upper = partial_spread_upper_bound(code.q(), code.k(), code.n())?;
                let single = singleton_bound(code.q(), code.k(), code.n(), code.min_distance())?;
                report("bounds", card == lower && card <= upper && upper <= single);
            }
            Ok(if failed { 1 } else { 0 })
        }
        Cmd::Trials {
            code,
            erase,
            error,
            trials,
            seed,
            policy,
        } => {
            let code = load_code(&code)?;
            let spec = ChannelSpec {
                erase_dim: erase,
                error_dim: error,
                seed,
                policy: match policy {
                    PolicyArg::Full => CollectionPolicy::Full,
                    PolicyArg::TruncateToK => CollectionPolicy::TruncateToK,
                },
            };
            let stats = run_trials(&code, &spec, trials)?;
            print!("{}", io::write_stats(&stats));
            Ok(if stats.guarantee_holds && stats.decoded_wrong > 0 {
                1
            } else {
                0
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
