use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use realk::spectral::{random_commuting, random_orthogonal_commuting, random_spec, roundtrip};
use realk::{
    component_invariant, decompose, is_rep_stable, pi, realize, real_form, table, CalcError, CommutingTuple,
    LabeledConfig, RODegree, RingError, SpaceFamily, SpectralError, TableFormat, Tolerances,
};
use serde::Serialize;

/// Largest round-trip error accepted by `spectral roundtrip`.
const ROUNDTRIP_LIMIT: f64 = 1e-8;

#[derive(Parser)]
#[command(name = "realk", version, about = "Real K-theory coefficients, commuting-matrix homotopy and joint eigenspaces")]
struct Cli {
    #[command(flatten)]
    config: CliConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CliConfig {
    /// Seed for every random choice
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Tolerance for unitarity and commutation checks
    #[arg(long, global = true, default_value_t = 1e-9, value_parser = positive)]
    tol_commute: f64,
    /// Gap below which eigenvalues are treated as equal
    #[arg(long, global = true, default_value_t = 1e-6, value_parser = positive)]
    tol_cluster: f64,
    /// Output format; `pi`, `coeff` and `mul` print plain text unless set
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    #[value(alias = "md")]
    Markdown,
}

#[derive(Clone, Copy, ValueEnum)]
enum Ring {
    Kr,
    Hz,
    Ku,
    #[value(name = "bcom-kr")]
    BcomKr,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoeffRing {
    Kr,
    Hz,
}

#[derive(Subcommand)]
enum Command {
    /// The homotopy group pi_k of a space in a family
    Pi {
        #[arg(long, value_parser = family)]
        space: SpaceFamily,
        #[arg(long)]
        k: u32,
        /// Number of matrices; ignored by the classifying spaces
        #[arg(long)]
        n: Option<u32>,
    },
    /// The coefficient group in degree p + q*sigma
    Coeff {
        #[arg(long, value_enum)]
        ring: CoeffRing,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
    },
    /// Multiply two ring elements
    Mul {
        #[arg(long, value_enum)]
        ring: Ring,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// A table of pi_k over k and n
    Table {
        #[arg(long, value_parser = family)]
        space: SpaceFamily,
        #[arg(long)]
        kmax: u32,
        #[arg(long, default_value_t = 1)]
        nmax: u32,
    },
    /// Representation stability of n -> pi_k
    Stability {
        #[arg(long, value_parser = family)]
        family: SpaceFamily,
        #[arg(long)]
        k: u32,
    },
    /// Joint eigenspaces of commuting unitary tuples
    #[command(subcommand)]
    Spectral(Spectral),
}

#[derive(Subcommand)]
enum Spectral {
    /// Decompose and rebuild random tuples, reporting the worst error
    Roundtrip {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Write a random commuting tuple
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dim: usize,
        /// Generate a real orthogonal tuple
        #[arg(long)]
        real: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The mod 2 component invariant of a real tuple
    Kappa { input: PathBuf },
    /// Joint eigenspaces and labels of a tuple
    Decompose {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Rebuild a tuple from a labeled configuration
    Realize {
        input: PathBuf,
        /// Produce a real tuple in standard coordinates
        #[arg(long)]
        real: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(_) => Err("must be a positive number".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn family(s: &str) -> Result<SpaceFamily, String> {
    s.parse::<SpaceFamily>().map_err(|e| e.to_string())
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn io(path: &Path, e: impl std::fmt::Display) -> Self {
        Failure { code: 5, message: format!("{}: {e}", path.display()) }
    }
}

impl From<RingError> for Failure {
    fn from(e: RingError) -> Self {
        let code = match e {
            RingError::OutOfRegion(_) => 3,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<CalcError> for Failure {
    fn from(e: CalcError) -> Self {
        match e {
            CalcError::Ring(r) => r.into(),
            other => Failure::usage(other.to_string()),
        }
    }
}

impl From<SpectralError> for Failure {
    fn from(e: SpectralError) -> Self {
        let code = match e {
            SpectralError::DimensionMismatch(_) | SpectralError::InvalidSpec(_) => 2,
            _ => 4,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<String, Failure>;

fn json<T: Serialize>(v: &T) -> Outcome {
    serde_json::to_string_pretty(v).map_err(|e| Failure::usage(e.to_string()))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// Writes to `output` when given, otherwise returns the text for stdout.
fn emit(text: String, output: Option<&Path>) -> Outcome {
    match output {
        Some(p) => {
            fs::write(p, text + "\n").map_err(|e| Failure::io(p, e))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn mul(ring: Ring, x: &str, y: &str) -> Result<(String, serde_json::Value), Failure> {
    fn run<B: realk::Basis>(x: &str, y: &str) -> Result<(String, serde_json::Value), Failure> {
        let p = realk::Element::<B>::parse(x)?.mul(&realk::Element::<B>::parse(y)?);
        let v = serde_json::to_value(&p).map_err(|e| Failure::usage(e.to_string()))?;
        Ok((p.to_string(), v))
    }
    match ring {
        Ring::Kr => run::<realk::KRMonomial>(x, y),
        Ring::Hz => run::<realk::HZMonomial>(x, y),
        Ring::Ku => run::<realk::KuMonomial>(x, y),
        Ring::BcomKr => run::<realk::BcomMonomial>(x, y),
    }
}

fn spectral(cmd: Spectral, cfg: &CliConfig) -> Outcome {
    let tol = Tolerances {
        commute: cfg.tol_commute,
        cluster: cfg.tol_cluster,
    };
    match cmd {
        Spectral::Roundtrip { n, dim, trials } => {
            let r = roundtrip(n, dim, cfg.seed, trials, &tol)?;
            let text = json(&r)?;
            if r.max_error > ROUNDTRIP_LIMIT || r.label_mismatches > 0 {
                return Err(Failure {
                    code: 4,
                    message: format!("{text}\nround trip failed: max error {:.3e}, {} label mismatches", r.max_error, r.label_mismatches),
                });
            }
            Ok(text)
        }
        Spectral::Random { n, dim, real, output } => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let t = if real {
                // close the spec under conjugation by projecting labels to signs
                let spec: Vec<_> = random_spec(n, dim, &mut rng)
                    .into_iter()
                    .map(|mut b| {
                        for z in &mut b.label {
                            *z = Complex64::new(z.re.signum(), 0.0);
                        }
                        b
                    })
                    .collect();
                random_orthogonal_commuting(n, dim, &dedup(spec), cfg.seed)?
            } else {
                random_commuting(n, dim, &random_spec(n, dim, &mut rng), cfg.seed)?
            };
            emit(json(&t.with_tol(tol.commute))?, output.as_deref())
        }
        Spectral::Kappa { input } => {
            let t: CommutingTuple = read_json(&input)?;
            let inv = component_invariant(&t, &tol)?;
            json(&serde_json::json!({ "n": t.n(), "invariant": inv }))
        }
        Spectral::Decompose { input, output } => {
            let t: CommutingTuple = read_json(&input)?;
            emit(json(&decompose(&t, tol.cluster)?)?, output.as_deref())
        }
        Spectral::Realize { input, real, output } => {
            let c: LabeledConfig = read_json(&input)?;
            let t = if real { real_form(&c, tol.commute)? } else { realize(&c, tol.commute)? };
            emit(json(&t)?, output.as_deref())
        }
    }
}

/// Merges blocks whose labels coincide.
fn dedup(spec: Vec<realk::spectral::SpecBlock>) -> Vec<realk::spectral::SpecBlock> {
    let mut out: Vec<realk::spectral::SpecBlock> = Vec::new();
    for b in spec {
        match out.iter_mut().find(|o| o.label == b.label) {
            Some(o) => o.dim += b.dim,
            None => out.push(b),
        }
    }
    out
}

fn run(cli: Cli) -> Outcome {
    let cfg = &cli.config;
    match cli.command {
        Command::Pi { space, k, n } => {
            let n = match (n, space.uses_n()) {
                (Some(n), _) => n,
                (None, false) => 1,
                (None, true) => return Err(Failure::usage(format!("--n is required for {space}"))),
            };
            let g = pi(space, k, n)?;
            match cfg.format {
                Some(Format::Json) => json(&g),
                _ => Ok(g.to_string()),
            }
        }
        Command::Coeff { ring, p, q } => {
            let d = RODegree::new(p, q);
            let g = match ring {
                CoeffRing::Kr => realk::kr::kr_group_at(d)?,
                CoeffRing::Hz => realk::hz::hz_group_at(d)?,
            };
            match cfg.format {
                Some(Format::Json) => json(&g),
                _ => Ok(g.to_string()),
            }
        }
        Command::Mul { ring, x, y } => {
            let (text, value) = mul(ring, &x, &y)?;
            match cfg.format {
                Some(Format::Json) => json(&value),
                _ => Ok(text),
            }
        }
        Command::Table { space, kmax, nmax } => {
            let format = match cfg.format.unwrap_or(Format::Json) {
                Format::Json => TableFormat::Json,
                Format::Csv => TableFormat::Csv,
                Format::Markdown => TableFormat::Markdown,
            };
            Ok(table(space, kmax, nmax, format)?.trim_end().to_string())
        }
        Command::Stability { family, k } => json(&is_rep_stable(family, k)?),
        Command::Spectral(cmd) => spectral(cmd, cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            if !out.is_empty() {
                let mut stdout = std::io::stdout().lock();
                if writeln!(stdout, "{out}").is_err() {
                    return ExitCode::from(5);
                }
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
