use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eqpencil::catalog::{
    fixture_names, fixture_parse, pencil_from_json, pencil_to_json, reattach_certificate, run_catalog, CheckStatus,
    RunConfig,
};
use eqpencil::combinatorics::Partition;
use eqpencil::field::DEFAULT_PRIME;
use eqpencil::pencil::{
    build_adjoint_pencil, build_gl_pencil, build_koszul_pencil, build_so_pencil, build_sp_pencil, build_spin_pencil,
    Pencil,
};
use eqpencil::rank::{constant_rank_verdict, rnd, Mode, RankReport, DEFAULT_BUDGET, DEFAULT_TRIALS};
use eqpencil::Error;

#[derive(Parser)]
#[command(name = "eqpencil", version, about = "Build and certify equivariant spaces of matrices of constant and bounded rank")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sampled,
    Transitivity,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GroupArg {
    Gl,
    Sp,
    So,
    Spin,
    Koszul,
    Adjoint,
}

#[derive(Args, Clone, Copy)]
struct Sampling {
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    prime: u64,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest number of projective points an exhaustive run may visit.
    #[arg(long, default_value_t = DEFAULT_BUDGET as f64)]
    budget: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

impl Sampling {
    fn config(&self) -> RunConfig {
        RunConfig { prime: self.prime, trials: self.trials, seed: self.seed, budget: self.budget as u128 }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Construct a pencil and write it as JSON.
    Build {
        #[arg(value_enum)]
        group: GroupArg,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long)]
        nu: Option<String>,
        /// GL: dim V = n + 1. Spin: W = C^(2n).
        #[arg(long)]
        n: Option<usize>,
        /// Natural dimension (Sp).
        #[arg(long = "N")]
        big_n: Option<usize>,
        /// Natural dimension (SO).
        #[arg(long)]
        m: Option<usize>,
        /// Natural dimension for any one-box group, instead of --n/--N/--m.
        #[arg(long)]
        dim: Option<usize>,
        /// Koszul: source degree.
        #[arg(long)]
        k: Option<usize>,
        /// Koszul: dim V.
        #[arg(long)]
        v: Option<usize>,
        /// Adjoint: dim A.
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank stratification and verdict for a pencil file.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Sampled)]
        mode: ModeArg,
        /// Also compute rank neutral directions.
        #[arg(long)]
        rnd: bool,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Run catalogued examples and report pass or fail.
    Catalog {
        /// Glob over entry ids, e.g. `gl-*`.
        #[arg(long)]
        filter: Option<String>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Write a bundled fixture as a pencil file.
    Fixture {
        name: Option<String>,
        #[arg(long)]
        list: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Json(_) => 3,
        _ => 2,
    }
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, Error> {
    v.ok_or_else(|| Error::Shape(format!("missing --{flag}")))
}

fn shapes(mu: Option<String>, nu: Option<String>) -> Result<(Partition, Partition), Error> {
    Ok((need(mu, "mu")?.parse()?, need(nu, "nu")?.parse()?))
}

fn emit(text: &str, out: Option<PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => Ok(fs::write(path, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn build(
    group: GroupArg,
    mu: Option<String>,
    nu: Option<String>,
    n: Option<usize>,
    big_n: Option<usize>,
    m: Option<usize>,
    dim: Option<usize>,
    k: Option<usize>,
    v: Option<usize>,
    a: Option<usize>,
) -> Result<Pencil, Error> {
    match group {
        GroupArg::Gl => {
            let (mu, nu) = shapes(mu, nu)?;
            let v = dim.or(n.map(|n| n + 1));
            build_gl_pencil(&mu, &nu, need(v, "n")?)
        }
        GroupArg::Sp => {
            let (mu, nu) = shapes(mu, nu)?;
            build_sp_pencil(&mu, &nu, need(dim.or(big_n), "N")?)
        }
        GroupArg::So => {
            let (mu, nu) = shapes(mu, nu)?;
            build_so_pencil(&mu, &nu, need(dim.or(m), "m")?)
        }
        GroupArg::Spin => build_spin_pencil(need(n, "n")?),
        GroupArg::Koszul => build_koszul_pencil(need(k, "k")?, need(v, "v")?),
        GroupArg::Adjoint => build_adjoint_pencil(need(a, "a")?),
    }
}

fn report_text(r: &RankReport) -> String {
    let mut s = format!(
        "{}x{} generic rank {} verdict {:?}\nmethod {:?}\n",
        r.target_dim, r.source_dim, r.generic_rank, r.verdict, r.method
    );
    for st in &r.strata {
        s.push_str(&format!("  rank {:>4}  {:?}  {} points\n", st.rank, st.class, st.count));
    }
    if let Some(p) = &r.predicted {
        s.push_str(&format!("predicted ker {} im {} coker {}\n", p.kernel_dim, p.image_dim, p.cokernel_dim));
    }
    s
}

fn verify(file: PathBuf, mode: ModeArg, with_rnd: bool, s: Sampling) -> Result<ExitCode, Error> {
    let text = fs::read_to_string(&file)?;
    let pencil = pencil_from_json(&text)?;
    let pencil = match mode {
        ModeArg::Transitivity => reattach_certificate(&pencil)?,
        _ => pencil,
    };
    let prime = pencil.modulus.unwrap_or(s.prime);
    let m = match mode {
        ModeArg::Exhaustive => Mode::Exhaustive { prime, budget: s.budget as u128 },
        ModeArg::Sampled => Mode::Sampled { prime, trials: s.trials, seed: s.seed },
        ModeArg::Transitivity => Mode::Transitivity { prime },
    };
    let report = constant_rank_verdict(&pencil, m)?;
    let neutral = if with_rnd { Some(rnd(&pencil, prime, None, s.seed)?) } else { None };
    match s.format {
        Format::Json => {
            let value = match &neutral {
                None => serde_json::to_value(&report)?,
                Some(r) => serde_json::json!({ "report": report, "rnd": r }),
            };
            println!("{}", serde_json::to_string_pretty(&value)?);
        }
        Format::Text => {
            print!("{}", report_text(&report));
            if let Some(r) = &neutral {
                println!("rnd {:?} dim {} (pencil span {}), prime {} seed {}", r.verdict, r.dim, r.pencil_dim, r.prime, r.seed);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn catalog(filter: Option<String>, s: Sampling) -> Result<ExitCode, Error> {
    let out = run_catalog(filter.as_deref(), &s.config())?;
    if out.is_empty() {
        return Err(Error::Shape("no catalog entry matches the filter".into()));
    }
    let ok = out.iter().all(|o| o.passed);
    match s.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&out)?),
        Format::Text => {
            println!("prime {} trials {} seed {}", s.prime, s.trials, s.seed);
            for o in &out {
                println!("{:<4} {:<24} {:>7}ms  {}", if o.passed { "PASS" } else { "FAIL" }, o.id, o.millis, o.topic);
                if let Some(e) = &o.error {
                    println!("       error: {e}");
                }
                for c in &o.checks {
                    let tag = match c.status {
                        CheckStatus::Pass => continue,
                        CheckStatus::Fail => "fail",
                        CheckStatus::SuspectedErratum => "suspected erratum",
                    };
                    println!("       {tag}: {} (expected {}, measured {})", c.name, c.expected, c.measured);
                }
            }
        }
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Build { group, mu, nu, n, big_n, m, dim, k, v, a, out } => {
            let p = build(group, mu, nu, n, big_n, m, dim, k, v, a)?;
            emit(&pencil_to_json(&p)?, out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { file, mode, rnd, sampling } => verify(file, mode, rnd, sampling),
        Command::Catalog { filter, sampling } => catalog(filter, sampling),
        Command::Fixture { name, list, out } => {
            if list {
                println!("{}", fixture_names().join("\n"));
                return Ok(ExitCode::SUCCESS);
            }
            let p = fixture_parse(&need(name, "name")?)?;
            emit(&pencil_to_json(&p)?, out)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
