use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tachikawa::derived::{ext_dims, FreeResolution};
use tachikawa::detect::{golod, gorenstein, hypersurface, loewy3_diagnostic, tc1_check, tc2_check, TcStatus};
use tachikawa::harness::{audit, run_sweep, Checks, Family, GeneratorSpec, Invariants, DEFAULT_TAIL_START};
use tachikawa::modules::ModuleJson;
use tachikawa::poly::quotient_algebra_from_text;
use tachikawa::series::{
    pole_factorization_check, simple_root_check, square_factor_exclusion, table_verdicts, verdicts_csv,
    IntegerPolynomial,
};
use tachikawa::{AModule, Fp, LocalAlgebra};

/// Exact homological algebra over finite local F_p-algebras.
#[derive(Parser)]
#[command(name = "tachikawa", version)]
struct Cli {
    /// Characteristic of the ground field.
    #[arg(long = "char", global = true, default_value_t = 2)]
    characteristic: u32,

    /// Homological bound for Ext windows and resolutions.
    #[arg(long, global = true, default_value_t = 10)]
    bound: usize,

    /// Seed for random generation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Also write the algebra JSON of the input to this path.
    #[arg(long, global = true)]
    dump: Option<PathBuf>,

    /// Report wall time on stderr (and in sweep records).
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct AlgebraArg {
    /// Ideal generators such as "x^2, x*y, y^2", or a path to an algebra JSON file.
    algebra: String,

    /// Variable order, comma separated; inferred from the ideal when absent.
    #[arg(long, value_delimiter = ',')]
    vars: Option<Vec<String>>,
}

#[derive(Subcommand)]
enum Command {
    /// Build the algebra JSON of a quotient k[x]/I.
    Build(AlgebraArg),
    /// Dimension, embedding dimension, Hilbert function, socle and Loewy length.
    Invariants(AlgebraArg),
    /// Betti numbers of a module through the bound.
    Resolve {
        #[command(flatten)]
        algebra: AlgebraArg,
        /// k, a, d, or a path to a module JSON file.
        #[arg(long, default_value = "k")]
        module: String,
    },
    /// dim Ext^i(M, N) for i = 0..=bound.
    Ext {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long, default_value = "d")]
        m: String,
        #[arg(long, default_value = "a")]
        n: String,
    },
    /// Tests whether Ext^{1..B}(D, A) = 0 forces A to be Gorenstein.
    Tc1(AlgebraArg),
    /// Over a Gorenstein algebra, tests whether Ext^{1..B}(M, M) = 0 forces M free.
    Tc2 {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long, default_value = "k")]
        module: String,
    },
    /// Golod, Gorenstein and hypersurface verdicts.
    Golod(AlgebraArg),
    /// The step-by-step Loewy length three diagnostic.
    Loewy3(AlgebraArg),
    /// Poincare series checks for the codepth table.
    Series {
        #[command(subcommand)]
        command: SeriesCommand,
    },
    /// Run a generator family and write one JSON record per instance.
    Sweep(SweepArgs),
    /// Recompute every record of a JSONL log and report mismatches.
    Audit { log: PathBuf },
}

#[derive(Subcommand)]
enum SeriesCommand {
    /// CSV verdicts for every table row with parameters up to MAX.
    Table {
        #[arg(long, default_value_t = 10)]
        max: i64,
    },
    /// Check one polynomial given by its coefficients, constant term first.
    Check {
        #[arg(value_delimiter = ',', allow_negative_numbers = true, required = true)]
        coeffs: Vec<i128>,
    },
    /// The factorization check of the pole expansion for l = 2..=MAX.
    Poles {
        #[arg(long, default_value_t = 10)]
        max: i64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Monomial,
    Loewy3,
    RandomHomogeneous,
}

#[derive(Args)]
struct SweepArgs {
    /// A GeneratorSpec JSON file; overrides the family flags.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "monomial")]
    family: FamilyArg,
    #[arg(long, default_value_t = 2)]
    nvars: usize,
    #[arg(long, default_value_t = 7)]
    max_dim: usize,
    #[arg(long, default_value_t = 3)]
    max_degree: u32,
    #[arg(long)]
    forms: Option<usize>,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Skip the Golod and hypersurface verdicts.
    #[arg(long)]
    tc1_only: bool,
    #[arg(long, default_value_t = DEFAULT_TAIL_START)]
    tail_start: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn field(cli: &Cli) -> Result<Fp> {
    Ok(Fp::new(cli.characteristic)?)
}

fn load_algebra(cli: &Cli, arg: &AlgebraArg) -> Result<Arc<LocalAlgebra>> {
    let path = Path::new(&arg.algebra);
    let a = if arg.algebra.ends_with(".json") || path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        LocalAlgebra::from_json_str(&text).with_context(|| format!("loading {}", path.display()))?
    } else {
        quotient_algebra_from_text(field(cli)?, &arg.algebra, arg.vars.as_deref())?
    };
    if let Some(dump) = &cli.dump {
        write_file(dump, &(serde_json::to_string_pretty(&a.to_json())? + "\n"))?;
    }
    Ok(a)
}

fn load_module(a: &Arc<LocalAlgebra>, spec: &str) -> Result<AModule> {
    Ok(match spec {
        "k" => AModule::residue_field(a),
        "a" => AModule::regular(a),
        "d" => AModule::dualizing(a),
        path => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
            let j: ModuleJson = serde_json::from_str(&text).with_context(|| format!("parsing {path}"))?;
            AModule::from_json(a, &j).with_context(|| format!("loading {path}"))?
        }
    })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => write_file(path, text),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(cli: &Cli, value: &T) -> Result<()> {
    emit(cli, &(serde_json::to_string_pretty(value)? + "\n"))
}

fn run(cli: &Cli) -> Result<u8> {
    let start = Instant::now();
    let code = dispatch(cli)?;
    if cli.timing {
        eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    Ok(code)
}

fn dispatch(cli: &Cli) -> Result<u8> {
    let bound = cli.bound;
    match &cli.command {
        Command::Build(arg) => {
            let a = load_algebra(cli, arg)?;
            emit_json(cli, &a.to_json())?;
        }
        Command::Invariants(arg) => {
            let a = load_algebra(cli, arg)?;
            #[derive(Serialize)]
            struct Out<'a> {
                fingerprint: &'a str,
                #[serde(flatten)]
                invariants: Invariants,
            }
            emit_json(cli, &Out { fingerprint: a.fingerprint(), invariants: Invariants::of(&a) })?;
        }
        Command::Resolve { algebra, module } => {
            let a = load_algebra(cli, algebra)?;
            let m = load_module(&a, module)?;
            let res = FreeResolution::of_module(&m, bound)?;
            emit_json(cli, &serde_json::json!({ "module": module, "bound": bound, "betti": res.ranks() }))?;
        }
        Command::Ext { algebra, m, n } => {
            let a = load_algebra(cli, algebra)?;
            let (mm, nn) = (load_module(&a, m)?, load_module(&a, n)?);
            let res = FreeResolution::of_module(&mm, bound + 1)?;
            let dims = ext_dims(&res, &nn, 0, bound as i32)?;
            emit_json(cli, &serde_json::json!({ "m": m, "n": n, "bound": bound, "ext": dims }))?;
        }
        Command::Tc1(arg) => {
            let a = load_algebra(cli, arg)?;
            let v = tc1_check(&a, bound)?;
            emit_json(cli, &v)?;
            return Ok(status_code(v.tc_status()));
        }
        Command::Tc2 { algebra, module } => {
            let a = load_algebra(cli, algebra)?;
            let m = load_module(&a, module)?;
            let v = tc2_check(&a, &m, bound)?;
            emit_json(cli, &v)?;
            return Ok(status_code(v.tc_status()));
        }
        Command::Golod(arg) => {
            let a = load_algebra(cli, arg)?;
            let out = serde_json::json!({
                "golod": golod(&a, bound)?,
                "gorenstein": gorenstein(&a)?,
                "hypersurface": hypersurface(&a, bound)?,
            });
            emit_json(cli, &out)?;
        }
        Command::Loewy3(arg) => {
            let a = load_algebra(cli, arg)?;
            emit_json(cli, &loewy3_diagnostic(&a)?)?;
        }
        Command::Series { command } => series(cli, command)?,
        Command::Sweep(args) => return sweep(cli, args),
        Command::Audit { log } => {
            let file = File::open(log).with_context(|| format!("opening {}", log.display()))?;
            let report = audit(BufReader::new(file))?;
            emit_json(cli, &report)?;
            if !report.mismatches.is_empty() {
                bail!("{} records do not recompute identically", report.mismatches.len());
            }
        }
    }
    Ok(0)
}

fn status_code(status: Option<TcStatus>) -> u8 {
    match status {
        Some(TcStatus::CounterexampleCandidate) => 2,
        _ => 0,
    }
}

fn series(cli: &Cli, command: &SeriesCommand) -> Result<()> {
    match command {
        SeriesCommand::Table { max } => emit(cli, &verdicts_csv(&table_verdicts(*max)?)),
        SeriesCommand::Check { coeffs } => {
            let d = IntegerPolynomial::new(coeffs.clone());
            let square = square_factor_exclusion(&d)?;
            let simple = simple_root_check(&d);
            let certificate = square.certificate.as_ref().map(|c| c.to_string()).unwrap_or_default();
            let verdict = |b: bool| if b { "PASS" } else { "FAIL" };
            emit(
                cli,
                &format!(
                    "d,square_factor,simple_root,square_factor_certificate,multiple_roots\n{d},{},{},{certificate},{}\n",
                    verdict(square.pass),
                    verdict(simple.pass),
                    simple.multiple_roots
                ),
            )
        }
        SeriesCommand::Poles { max } => {
            let mut s = String::from("l,expansion,value_at_one,shape_matches,admissible\n");
            for l in 2..=*max {
                let p = pole_factorization_check(l);
                let rows: Vec<String> = p.admissible.iter().map(|r| format!("{} m={}", r.kind, r.m)).collect();
                s.push_str(&format!("{l},{},{},{},{}\n", p.expansion, p.value_at_one, p.shape_matches, rows.join(";")));
            }
            emit(cli, &s)
        }
    }
}

fn sweep(cli: &Cli, args: &SweepArgs) -> Result<u8> {
    let spec = match &args.spec {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => GeneratorSpec {
            family: match args.family {
                FamilyArg::Monomial => Family::MonomialEnumerate,
                FamilyArg::Loewy3 => Family::Loewy3Random,
                FamilyArg::RandomHomogeneous => Family::RandomHomogeneous,
            },
            nvars: args.nvars,
            characteristic: cli.characteristic,
            max_dim: args.max_dim,
            max_degree: args.max_degree,
            forms: args.forms,
            samples: args.samples,
            seed: cli.seed,
        },
    };
    let checks =
        Checks { golod: !args.tc1_only, hypersurface: !args.tc1_only, timing: cli.timing, tail_start: args.tail_start };
    let summary = match &cli.out {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = BufWriter::new(file);
            let s = run_sweep(&spec, &checks, cli.bound, &mut w)?;
            w.flush().with_context(|| format!("writing {}", path.display()))?;
            s
        }
        None => {
            let mut w = io::stdout().lock();
            run_sweep(&spec, &checks, cli.bound, &mut w)?
        }
    };
    eprintln!("{}", serde_json::to_string(&summary)?);
    Ok(summary.exit_code() as u8)
}
