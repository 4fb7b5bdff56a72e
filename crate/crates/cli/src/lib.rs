//! Command-line driver: generator setup, model registration, proving,
//! verification and benchmarks.

pub mod bench;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use range_arith::format;
use range_arith::pipeline::{self, fixtures, INFERENCE_DOMAIN};
use range_arith::{FieldElement, FixedPointParams, GeneratorSet, Mode, Transcript, VerifyError};
use thiserror::Error;

pub const EXIT_ACCEPT: i32 = 0;
pub const EXIT_REJECT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: range_arith::Error },
    #[error(transparent)]
    Core(#[from] range_arith::Error),
    #[error("proof rejected: {0}")]
    Rejected(VerifyError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Rejected(_) => EXIT_REJECT,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "range-arith", version, about = "Proofs of fixed-point neural-network inference")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Op {
    Matmul,
    Relu,
    Nn,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Derive public generators from a seed.
    Setup {
        #[arg(long)]
        seed: String,
        #[arg(long)]
        tau: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Commit to a model's weights.
    Register {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        gens: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the model on an input and prove the result.
    Prove {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        gens: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also write the output vector here.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        print_output: bool,
        /// Use seeded verifier randomness instead of Fiat-Shamir.
        #[arg(long)]
        interactive_seed: Option<u64>,
    },
    /// Check a proof; exits 0 on accept and 1 on reject.
    Verify {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long)]
        proof: PathBuf,
        #[arg(long)]
        gens: PathBuf,
        /// Registered weight commitments; recomputed from the model if absent.
        #[arg(long)]
        commits: Option<PathBuf>,
    },
    /// Time proving and verification and write CSV.
    Bench {
        #[arg(long, value_enum, default_value = "matmul")]
        op: Op,
        #[arg(long, value_delimiter = ',', default_value = "16,32,64")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        interactive_seed: Option<u64>,
        /// Fixture seed for `--op nn`.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Write a seeded model and input.
    Fixture {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Layer widths, input first; defaults to the 784-12-16-16-10 network.
        #[arg(long, value_delimiter = ',')]
        widths: Option<Vec<usize>>,
        #[arg(long, default_value_t = 8)]
        frac_bits: u32,
        #[arg(long, default_value_t = 6)]
        int_bits: u32,
        #[arg(long)]
        model_out: PathBuf,
        #[arg(long)]
        input_out: PathBuf,
    },
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })
}

fn load<T>(path: &Path, f: impl FnOnce(&[u8]) -> range_arith::Result<T>) -> Result<T, CliError> {
    f(&read(path)?).map_err(|source| CliError::Format {
        path: path.into(),
        source,
    })
}

fn mode_from(seed: Option<u64>) -> Mode {
    seed.map_or(Mode::FiatShamir, |seed| Mode::Interactive { seed })
}

fn run(cmd: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Setup { seed, tau, out: path } => {
            let gens = GeneratorSet::derive(seed.as_bytes(), tau)?;
            write(&path, &format::encode_generators(&gens))?;
        }
        Command::Register { model, gens, out: path } => {
            let spec = load(&model, format::decode_model)?;
            let gens = load(&gens, format::decode_generators)?;
            gens.require(spec.generators_needed())?;
            let c = pipeline::register_model(&gens, &spec)?;
            write(&path, &format::encode_commitments(&c))?;
        }
        Command::Prove {
            model,
            input,
            gens,
            out: path,
            output,
            print_output,
            interactive_seed,
        } => {
            let spec = load(&model, format::decode_model)?;
            let x = load(&input, format::decode_vector)?;
            let gens = load(&gens, format::decode_generators)?;
            let mode = mode_from(interactive_seed);
            let mut tr = Transcript::with_mode(INFERENCE_DOMAIN, mode);
            let (y, proof) = pipeline::prove_inference(&gens, &spec, &x, &mut tr)?;
            write(&path, &format::encode_proof(mode, &proof))?;
            if let Some(p) = output {
                write(&p, &format::encode_vector(&y))?;
            }
            if print_output {
                print_vector(out, &y, &spec.params);
            }
        }
        Command::Verify {
            model,
            input,
            output,
            proof,
            gens,
            commits,
        } => {
            let spec = load(&model, format::decode_model)?;
            let x = load(&input, format::decode_vector)?;
            let y = load(&output, format::decode_vector)?;
            let (mode, proof) = load(&proof, format::decode_proof)?;
            let gens = load(&gens, format::decode_generators)?;
            if gens.tau() < spec.generators_needed() {
                return Err(CliError::Usage(format!(
                    "model needs {} generators, file has {}",
                    spec.generators_needed(),
                    gens.tau()
                )));
            }
            let weights = match commits {
                Some(p) => load(&p, format::decode_commitments)?,
                None => pipeline::register_model(&gens, &spec)?,
            };
            let mut tr = Transcript::with_mode(INFERENCE_DOMAIN, mode);
            pipeline::verify_inference(&gens, &spec, &weights, &x, &y, &proof, &mut tr)
                .map_err(CliError::Rejected)?;
            let _ = writeln!(out, "accept");
        }
        Command::Bench {
            op,
            sizes,
            reps,
            csv,
            interactive_seed,
            seed,
        } => {
            let mode = mode_from(interactive_seed);
            let records = match op {
                Op::Matmul => {
                    if let Some(&n) = sizes.iter().find(|n| !n.is_power_of_two()) {
                        return Err(CliError::Usage(format!("size {n} is not a power of two")));
                    }
                    let gens = bench::matmul_generators(&sizes)?;
                    bench::bench_matmul(&gens, &sizes, reps, mode)?
                }
                Op::Relu => {
                    if let Some(&n) = sizes.iter().find(|n| !n.is_power_of_two()) {
                        return Err(CliError::Usage(format!("size {n} is not a power of two")));
                    }
                    bench::bench_relu(&sizes, reps, mode)?
                }
                Op::Nn => vec![bench::bench_nn(seed, reps, mode)?],
            };
            match csv {
                Some(p) => {
                    let f = fs::File::create(&p).map_err(|source| CliError::Io { path: p, source })?;
                    bench::write_csv(f, &records)?;
                }
                None => bench::write_csv(&mut *out, &records)?,
            }
        }
        Command::Fixture {
            seed,
            widths,
            frac_bits,
            int_bits,
            model_out,
            input_out,
        } => {
            let (spec, x) = match widths {
                None => fixtures::case_study(seed)?,
                Some(w) if w.len() >= 2 => {
                    let params = FixedPointParams::new(frac_bits, int_bits)?;
                    let x = fixtures::random_input(&params, w[0], seed);
                    (fixtures::calibrated_model(params, &w, &x, seed)?, x)
                }
                Some(_) => return Err(CliError::Usage("--widths needs at least two entries".into())),
            };
            write(&model_out, &format::encode_model(&spec))?;
            write(&input_out, &format::encode_vector(&pipeline::encode_input(&x)))?;
            let _ = writeln!(
                out,
                "{} parameters, {} layers, tau {}",
                spec.num_parameters(),
                spec.layers.len(),
                spec.generators_needed()
            );
        }
    }
    Ok(())
}

fn print_vector(out: &mut dyn Write, y: &[FieldElement], params: &FixedPointParams) {
    for v in y {
        let int = v.to_i128().unwrap_or_default();
        let _ = writeln!(out, "{int}\t{}", params.decode(v).unwrap_or(f64::NAN));
    }
}

/// Runs the CLI on `argv` (program name first), writing normal output to
/// `out` and diagnostics to stderr. Returns the process exit code.
pub fn cli_main<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_ACCEPT };
            let _ = e.print();
            return code;
        }
    };
    match run(cli.cmd, out) {
        Ok(()) => EXIT_ACCEPT,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
