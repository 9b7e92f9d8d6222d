use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use supportwit::bundle::{self, Example};
use supportwit::cert::{self, Certificate, Status};
use supportwit::construct::{self, SearchConfig};
use supportwit::poly::PolyRing;
use supportwit::ringfile::RingFile;
use supportwit::support::{analyze, CiStatus, Presentation};
use supportwit::Error;

const EXIT_WITNESS: u8 = 0;
const EXIT_NO_WITNESS: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(
    name = "supportwit",
    version,
    about = "Certified non-proxy-small quotients of local rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the numerical invariants of a presentation
    Analyze {
        /// JSON ring file
        ring: PathBuf,
        /// Lower bound s on the dimension of the support span
        #[arg(long)]
        span_dim: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Search for quotients whose supports intersect trivially
    Construct {
        /// JSON ring file
        ring: PathBuf,
        /// Seed for the random linear forms
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Lower bound s on the dimension of the support span
        #[arg(long)]
        span_dim: Option<u32>,
        /// Attempts per step before giving up
        #[arg(long, default_value_t = 200)]
        max_attempts: u32,
        /// Initial bound on random coefficients; doubles every 50 failures
        #[arg(long, default_value_t = 10)]
        coeff_bound: u32,
        /// Write the certificate here
        #[arg(short = 'o')]
        output: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Re-check every claim of a certificate
    Verify {
        /// JSON ring file
        ring: PathBuf,
        certificate: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Apply the monomial recipe to a monomial ideal with incomparable supports
    Monomial {
        /// JSON ring file
        ring: PathBuf,
        /// Write the certificate here
        #[arg(short = 'o')]
        output: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Emit a bundled example: shortgor3, truncated:d,s, thomas, monomial4, sr:<file>
    Example {
        name: String,
        /// Directory receiving <name>.ring.json and <name>.cert.json
        #[arg(short = 'o')]
        output: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// Machine-readable output
    #[arg(long)]
    json: bool,
    /// Treat the generators as minimal when this cannot be certified
    #[arg(long)]
    assume_minimal: bool,
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SearchExhausted { .. } => EXIT_NO_WITNESS,
            Error::OracleDisagreement => EXIT_VERIFY,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: String) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message,
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load(path: &Path, assume_minimal: bool) -> Result<(RingFile, Presentation), Failure> {
    let text = read(path)?;
    RingFile::load(&text, assume_minimal).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn ci_text(ci: CiStatus) -> &'static str {
    match ci {
        CiStatus::Yes => "yes",
        CiStatus::No => "no",
        CiStatus::Unknown => "unknown",
    }
}

fn cmd_analyze(path: &Path, span_dim: Option<u32>, common: &Common) -> Result<u8, Failure> {
    let (rf, p) = load(path, common.assume_minimal)?;
    let a = analyze(&p);
    let s = span_dim.or(rf.span_dim);
    let large = s.map(|s| a.large_support(s as usize));
    let applicable = if a.complete_intersection == CiStatus::Yes {
        "no (complete intersection)"
    } else if construct::is_incomparable_monomial(&p) {
        "yes (monomial recipe)"
    } else if a.equipresented {
        "yes"
    } else {
        match large {
            Some(true) => "yes (lhs < s)",
            Some(false) => "no (lhs >= s)",
            None => "needs --span-dim",
        }
    };
    if common.json {
        let out = json!({ "analysis": a, "large_support": large, "witness_construction": applicable });
        println!("{}", serde_json::to_string_pretty(&out).expect("json"));
        return Ok(EXIT_WITNESS);
    }
    println!("e: {}", a.e);
    println!("n: {}", a.n);
    println!("d: {}", a.d);
    println!("c: {}", a.c);
    println!("lhs: {}", a.lhs);
    println!("equipresented: {}", yes_no(a.equipresented));
    println!("homogeneous: {}", yes_no(a.homogeneous));
    println!("minimality certified: {}", yes_no(a.minimality_certified));
    println!("m-primary: {}", yes_no(a.m_primary));
    println!("complete intersection: {}", ci_text(a.complete_intersection));
    if let (Some(s), Some(l)) = (s, large) {
        println!("large support (lhs < {s}): {}", yes_no(l));
    }
    println!("witness construction applicable: {applicable}");
    Ok(EXIT_WITNESS)
}

fn join(ring: &PolyRing, gens: &[supportwit::poly::Polynomial]) -> String {
    gens.iter().map(|g| ring.format(g)).collect::<Vec<_>>().join(", ")
}

fn summarize(c: &Certificate) -> Result<String, Failure> {
    let (ring, _) = c.recorded_generators()?;
    let mut out = String::new();
    for s in &c.steps {
        let j = s
            .ideal
            .iter()
            .map(|g| cert::poly_from_record(&ring, g))
            .collect::<Result<Vec<_>, _>>()?;
        let g = match &s.g {
            Some(g) => ring.format(&cert::poly_from_record(&ring, g)?),
            None => "-".into(),
        };
        out.push_str(&format!(
            "step {}: g = {g}; J = ({}); dim K = {}; running dim = {}\n",
            s.index,
            join(&ring, &j),
            s.kernel.dim,
            s.running_dim
        ));
    }
    out.push_str(&format!("intersection dim: {}\n", c.intersection.dim));
    out.push_str(&format!("status: {}\n", c.status));
    Ok(out)
}

fn emit_certificate(c: &Certificate, output: Option<&Path>, json: bool) -> Result<(), Failure> {
    if let Some(path) = output {
        write(path, &c.to_json())?;
    }
    if json {
        if output.is_none() {
            print!("{}", c.to_json());
        }
    } else {
        print!("{}", summarize(c)?);
        if let Some(path) = output {
            println!("certificate written to {}", path.display());
        }
    }
    Ok(())
}

fn status_code(s: Status) -> u8 {
    if s.is_witness() {
        EXIT_WITNESS
    } else {
        EXIT_NO_WITNESS
    }
}

fn cmd_construct(path: &Path, cfg: SearchConfig, output: Option<&Path>, common: &Common) -> Result<u8, Failure> {
    let (rf, p) = load(path, common.assume_minimal)?;
    let cfg = SearchConfig {
        span_dim: cfg.span_dim.or(rf.span_dim),
        ..cfg
    };
    match construct::construct(&p, &cfg) {
        Ok(c) => {
            emit_certificate(&c, output, common.json)?;
            Ok(status_code(c.status))
        }
        Err(Error::SearchExhausted { attempts, partial }) => {
            if let (Some(c), Some(path)) = (&partial, output) {
                write(path, &c.to_json())?;
                eprintln!("partial transcript written to {}", path.display());
            }
            Err(Error::SearchExhausted { attempts, partial }.into())
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_monomial(path: &Path, output: Option<&Path>, common: &Common) -> Result<u8, Failure> {
    let (_, p) = load(path, common.assume_minimal)?;
    let c = construct::monomial_witnesses(&p)?;
    emit_certificate(&c, output, common.json)?;
    Ok(status_code(c.status))
}

fn cmd_verify(ring: &Path, cert_path: &Path, common: &Common) -> Result<u8, Failure> {
    let (_, p) = load(ring, common.assume_minimal)?;
    let text = read(cert_path)?;
    let c = Certificate::from_json(&text).map_err(|e| input_error(format!("{}: {e}", cert_path.display())))?;
    let report = cert::verify(&c, &p);
    if common.json {
        let out = json!({ "passed": report.passed(), "status": c.status.to_string(), "checks": report.checks });
        println!("{}", serde_json::to_string_pretty(&out).expect("json"));
    } else {
        print!("{report}");
        if report.passed() {
            println!("verified: {} (intersection dim {})", c.status, c.intersection.dim);
        } else {
            let names: Vec<String> = report
                .failures()
                .map(|f| match f.step {
                    Some(s) => format!("step {s}: {}", f.name),
                    None => f.name.clone(),
                })
                .collect();
            println!("verification failed: {}", names.join("; "));
        }
    }
    Ok(if report.passed() { EXIT_WITNESS } else { EXIT_VERIFY })
}

fn slug(name: &str) -> String {
    match name.strip_prefix("sr:") {
        Some(file) => {
            let stem = Path::new(file)
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or("complex");
            format!("sr-{stem}")
        }
        None => name.replace([':', ','], "-"),
    }
}

fn cmd_example(name: &str, output: Option<&Path>, common: &Common) -> Result<u8, Failure> {
    let ex: Example = match name.strip_prefix("sr:") {
        Some(file) => {
            let text = read(Path::new(file))?;
            bundle::stanley_reisner(&text).map_err(|e| input_error(format!("{file}: {e}")))?
        }
        None => bundle::example(name)?,
    };
    match output {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| input_error(format!("{}: {e}", dir.display())))?;
            let base = slug(name);
            let ring_path = dir.join(format!("{base}.ring.json"));
            write(&ring_path, &ex.ring.to_json())?;
            println!("{}", ring_path.display());
            if let Some(c) = &ex.certificate {
                let cert_path = dir.join(format!("{base}.cert.json"));
                write(&cert_path, &c.to_json())?;
                println!("{}", cert_path.display());
            }
        }
        None if common.json => {
            let out = json!({ "ring": ex.ring, "certificate": ex.certificate });
            println!("{}", serde_json::to_string_pretty(&out).expect("json"));
        }
        None => {
            print!("{}", ex.ring.to_json());
            if let Some(c) = &ex.certificate {
                print!("{}", summarize(c)?);
            }
        }
    }
    Ok(EXIT_WITNESS)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Analyze { ring, span_dim, common } => cmd_analyze(&ring, span_dim, &common),
        Command::Construct {
            ring,
            seed,
            span_dim,
            max_attempts,
            coeff_bound,
            output,
            common,
        } => {
            let cfg = SearchConfig {
                seed,
                max_attempts,
                coeff_bound,
                span_dim,
            };
            cmd_construct(&ring, cfg, output.as_deref(), &common)
        }
        Command::Verify {
            ring,
            certificate,
            common,
        } => cmd_verify(&ring, &certificate, &common),
        Command::Monomial { ring, output, common } => cmd_monomial(&ring, output.as_deref(), &common),
        Command::Example { name, output, common } => cmd_example(&name, output.as_deref(), &common),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
