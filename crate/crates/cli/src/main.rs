use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use grm_core::engine::{gap_scan, gr_measure_oracle, scan_realized, ScanMode};
use grm_core::kronecker::{construct_family, ext_dim, hom_dim, tau_inverse_module, tau_module, Family, Lambda};
use grm_core::verify::{run_suite, VerifyConfig, SUITES};
use grm_core::{ar::euler_form, Caps, Error, Fq, GrMeasure, KroneckerModule, Lattice, Result};

#[derive(Parser)]
#[command(name = "grm", version, about = "Gabriel-Roiter measures of n-Kronecker modules over F_q")]
struct Cli {
    /// Worker threads for scans (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    #[command(flatten)]
    caps: CapArgs,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct CapArgs {
    /// Longest module whose submodule lattice may be walked.
    #[arg(long, global = true)]
    cap_submodule_length: Option<usize>,
    /// Largest endomorphism ring searched for a splitting.
    #[arg(long, global = true)]
    cap_idempotent_search: Option<u64>,
    /// Largest Hom space scanned for an isomorphism.
    #[arg(long, global = true)]
    cap_hom_scan: Option<u64>,
    /// Largest number of normalized tuples per dimension vector in exhaustive scans.
    #[arg(long, global = true)]
    cap_exhaustive_tuples: Option<u64>,
    /// Longest module given to the brute-force oracle.
    #[arg(long, global = true)]
    cap_oracle_length: Option<usize>,
}

impl CapArgs {
    fn caps(&self) -> Caps {
        let d = Caps::default();
        Caps {
            submodule_length: self.cap_submodule_length.unwrap_or(d.submodule_length),
            idempotent_search: self.cap_idempotent_search.unwrap_or(d.idempotent_search),
            hom_scan: self.cap_hom_scan.unwrap_or(d.hom_scan),
            exhaustive_tuples: self.cap_exhaustive_tuples.unwrap_or(d.exhaustive_tuples),
            oracle_length: self.cap_oracle_length.unwrap_or(d.oracle_length),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the measure of a module file.
    Measure {
        file: PathBuf,
        /// Also print a chain of indecomposable submodules realizing the measure.
        #[arg(long)]
        chain: bool,
        /// Also list the GR submodules.
        #[arg(long)]
        gr_submodules: bool,
        /// Cross-check against brute-force chain enumeration.
        #[arg(long)]
        oracle: bool,
    },
    /// Build a named module: s1, s2, p R, q R, regular2k M LAMBDA, preproj2k M, preinj2k M.
    Make {
        kind: String,
        params: Vec<String>,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare two measures in brace notation; prints <, = or >.
    Compare { i: String, j: String },
    /// Auslander-Reiten translate of a module file.
    Tau {
        file: PathBuf,
        #[arg(long)]
        inverse: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// dim Hom and dim Ext between two module files, checked against the Euler form.
    Hom { x: PathBuf, y: PathBuf },
    /// Catalog of realized measures as CSV.
    Scan {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long, default_value_t = 4)]
        max_length: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        /// Modules drawn per dimension vector in sampled mode.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gap report around {1,2,...,2m,2m+1} as JSON.
    Gap {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        q: u32,
        /// Exhaustive scan length.
        #[arg(long, default_value_t = 7)]
        max_length: usize,
        /// Length reached by the named families (default: max-length + 2).
        #[arg(long)]
        family_length: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named verification suite.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        max_length: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        /// Print the full result as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Sampled,
    Families,
}

fn read_module(path: &Path) -> Result<KroneckerModule> {
    let text = fs::read_to_string(path)
        .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
    KroneckerModule::from_json(&text).map_err(|e| match e {
        Error::Json(j) => Error::Parse(format!("{}: {j}", path.display())),
        other => other,
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
        }
    }
    Ok(())
}

fn parse_family(kind: &str, params: &[String]) -> Result<Family> {
    let int = |i: usize| -> Result<usize> {
        params
            .get(i)
            .ok_or_else(|| Error::Parse(format!("{kind} needs {} parameter(s)", i + 1)))?
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer {:?}", params[i])))
    };
    let arity = |k: usize| -> Result<()> {
        if params.len() == k {
            Ok(())
        } else {
            Err(Error::Parse(format!("{kind} takes {k} parameter(s), got {}", params.len())))
        }
    };
    let family = match kind.to_ascii_lowercase().as_str() {
        "s1" => Family::Simple { vertex: 1 },
        "s2" => Family::Simple { vertex: 2 },
        "simple" => {
            arity(1)?;
            return Ok(Family::Simple { vertex: int(0)? as u8 });
        }
        "p" => {
            arity(1)?;
            return Ok(Family::P { r: int(0)? });
        }
        "q" => {
            arity(1)?;
            return Ok(Family::Q { r: int(0)? });
        }
        "regular2k" => {
            arity(2)?;
            return Ok(Family::Regular2k { m: int(0)?, lambda: params[1].parse::<Lambda>()? });
        }
        "preproj2k" => {
            arity(1)?;
            return Ok(Family::Preproj2k { m: int(0)? });
        }
        "preinj2k" => {
            arity(1)?;
            return Ok(Family::Preinj2k { m: int(0)? });
        }
        other => return Err(Error::Parse(format!("unknown module kind {other:?}"))),
    };
    arity(0)?;
    Ok(family)
}

fn describe(m: &KroneckerModule, s: &grm_core::SubmodulePair) -> String {
    let sub = m.restrict(s).expect("submodule");
    format!("{} {} {}", s.len(), sub.dim(), sub.to_json())
}

/// Returns the exit code on success paths that still signal failure.
fn run(cli: Cli) -> Result<u8> {
    let caps = cli.caps.caps();
    match cli.cmd {
        Cmd::Measure { file, chain, gr_submodules, oracle } => {
            let m = read_module(&file)?;
            let mut lat = Lattice::new(&m, &caps)?;
            let mu = lat.measure()?;
            println!("{mu}");
            if chain {
                for s in lat.witness_chain()? {
                    println!("  chain {}", describe(&m, &s));
                }
            }
            if gr_submodules {
                for s in lat.gr_submodules()? {
                    println!("  gr-submodule {}", describe(&m, &s));
                }
            }
            if oracle {
                let slow = gr_measure_oracle(&m, &caps)?;
                if slow != mu {
                    println!("oracle MISMATCH: {slow}");
                    return Ok(1);
                }
                println!("oracle agrees");
            }
        }
        Cmd::Make { kind, params, n, q, out } => {
            let family = parse_family(&kind, &params)?;
            let m = construct_family(family, n, Fq::new(q)?)?;
            emit(out.as_deref(), &m.to_json())?;
        }
        Cmd::Compare { i, j } => {
            let (i, j): (GrMeasure, GrMeasure) = (i.parse()?, j.parse()?);
            let sym = match i.cmp(&j) {
                std::cmp::Ordering::Less => "<",
                std::cmp::Ordering::Equal => "=",
                std::cmp::Ordering::Greater => ">",
            };
            println!("{sym}");
        }
        Cmd::Tau { file, inverse, out } => {
            let m = read_module(&file)?;
            let t = if inverse { tau_inverse_module(&m, &caps)? } else { tau_module(&m, &caps)? };
            emit(out.as_deref(), &t.to_json())?;
        }
        Cmd::Hom { x, y } => {
            let (x, y) = (read_module(&x)?, read_module(&y)?);
            if (x.n(), x.q()) != (y.n(), y.q()) {
                return Err(Error::ParameterMismatch("modules over different quivers or fields".into()));
            }
            let (h, e) = (hom_dim(&x, &y)?, ext_dim(&x, &y)?);
            let euler = euler_form(x.dim(), y.dim(), x.n() as i64);
            let ok = h as i64 - e as i64 == euler;
            println!("hom={h} ext={e} euler={euler} {}", if ok { "OK" } else { "MISMATCH" });
            if !ok {
                return Ok(1);
            }
        }
        Cmd::Scan { n, q, max_length, mode, samples, out } => {
            let mode = match mode {
                Mode::Exhaustive => ScanMode::Exhaustive,
                Mode::Sampled => ScanMode::Sampled { count: samples, seed: cli.seed },
                Mode::Families => ScanMode::Families,
            };
            let cat = scan_realized(n, q, max_length, mode, &caps)?;
            emit(out.as_deref(), &cat.to_csv_string()?)?;
            eprintln!(
                "{} rows, {} distinct measures, {} dimension vectors skipped",
                cat.records.len(),
                cat.measures().len(),
                cat.skipped.len()
            );
        }
        Cmd::Gap { m, n, q, max_length, family_length, out } => {
            let ex = scan_realized(n, q, max_length, ScanMode::Exhaustive, &caps)?;
            let fam = scan_realized(n, q, family_length.unwrap_or(max_length + 2), ScanMode::Families, &caps)?;
            let rep = gap_scan(m, &ex.merge(fam)?, &caps)?;
            emit(out.as_deref(), &rep.to_json())?;
            if !rep.violations.is_empty() {
                return Ok(1);
            }
        }
        Cmd::Verify { suite, n, q, m, max_length, samples, json } => {
            let cfg = VerifyConfig { n, q, m, max_length, samples, seed: cli.seed, caps };
            let r = run_suite(&suite, &cfg)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&r)?);
            } else {
                println!("{}", r.summary_line());
                for d in &r.details {
                    println!("  {d}");
                }
            }
            if !r.passed {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("grm: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("grm: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
