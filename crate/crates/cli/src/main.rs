mod input;
mod render;

use adjunction_core::adjunction::{AdjunctionComplex, Which};
use adjunction_core::geometry::selftest::{self, SelfTestConfig};
use adjunction_core::geometry::WarpConvention;
use adjunction_core::lattice::{make_example_collection, ExampleKind, ExampleSpec, HomologyClass, ManifoldModel, SpinCStructure};
use adjunction_core::simplicial::{homology, Complex};
use adjunction_core::wall_crossing::{
    certify, collection_complex, derive_constraints, evaluate_invariant, fundamental_cycle, verify_bounding, SwSeed,
    WallCrossingCollection,
};
use adjunction_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use input::{load_bounding, load_bundle, Bundle, InputError};
use num_bigint::BigInt;
use render::{CycleReport, DegreeGroup, HomologyReport};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "adjunction", version, about = "Adjunction complexes, wall-crossing certificates and stretching geometry")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Build the catalog complexes or compute their homology.
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Certify a wall-crossing collection or print its fundamental cycle.
    #[command(subcommand)]
    Wallcross(WallcrossCmd),
    /// Check that a chain bounds the fundamental cycle.
    #[command(subcommand)]
    Bounding(BoundingCmd),
    /// Genus constraints forced by a bounding collection.
    #[command(subcommand)]
    Constraints(ConstraintsCmd),
    /// The pairing of the invariant with the fundamental cycle.
    #[command(subcommand)]
    Invariant(InvariantCmd),
    /// Property checks of the stretching-parameter geometry.
    #[command(subcommand)]
    Paramgeo(ParamgeoCmd),
    /// Generate the example families.
    #[command(subcommand)]
    Examples(ExamplesCmd),
}

#[derive(Args)]
struct InputArgs {
    /// Bundle file: `{"catalog": …, "collection": …}`.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Subcommand)]
enum ComplexCmd {
    Build {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 8)]
        max_dim: usize,
    },
    Homology {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 8)]
        max_dim: usize,
        /// Only this degree; all degrees up to the dimension otherwise.
        #[arg(long)]
        deg: Option<usize>,
        #[arg(long, value_enum, default_value_t = WhichArg::Adjunction)]
        which: WhichArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichArg {
    Ambient,
    Adjunction,
    Nonneg,
    /// The complex spanned by the collection alone.
    Collection,
}

#[derive(Subcommand)]
enum WallcrossCmd {
    Certify {
        #[command(flatten)]
        input: InputArgs,
    },
    Cycle {
        #[command(flatten)]
        input: InputArgs,
    },
}

#[derive(Subcommand)]
enum BoundingCmd {
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        bounding: PathBuf,
    },
}

#[derive(Subcommand)]
enum ConstraintsCmd {
    Derive {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        bounding: PathBuf,
        /// Seed invariant of the extra summand; the K3 value 1 by default.
        #[arg(long)]
        sw_seed: Option<BigInt>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Summand {
    K3,
}

#[derive(Subcommand)]
enum InvariantCmd {
    Evaluate {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Summand::K3)]
        summand: Summand,
        /// Overrides the seed invariant stored with the summand.
        #[arg(long)]
        sw_seed: Option<BigInt>,
    },
}

#[derive(Subcommand)]
enum ParamgeoCmd {
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "claimed")]
        warp: WarpConvention,
        /// Bound on ψ round-trip errors.
        #[arg(long, default_value_t = 1e-12)]
        tolerance: f64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum ExamplesCmd {
    Make {
        #[arg(long)]
        kind: ExampleKind,
        #[arg(long)]
        k: usize,
        /// One degree, one per index, or `d+,d-` pairs per index.
        #[arg(long, value_delimiter = ',', required = true)]
        d: Vec<u64>,
        /// One block size, or one per index.
        #[arg(long, value_delimiter = ',', required = true)]
        l: Vec<u64>,
        /// Write here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Anything that ends a run early, with its exit code.
enum Failure {
    Input(InputError),
    /// A hypothesis fails or nothing can be concluded.
    Refused(String),
    Other(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Hypothesis(_) | Error::NoConclusion(_) => Failure::Refused(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

/// Exit code 0 on success, 1 when a check comes out false.
struct Outcome {
    ok: bool,
    text: String,
    json: String,
}

fn outcome<T: Serialize>(ok: bool, report: &T, text: String) -> Outcome {
    let json = serde_json::to_string_pretty(report).expect("reports serialize");
    Outcome { ok, text, json }
}

fn collection(b: &Bundle, path: &Path) -> Result<WallCrossingCollection, Failure> {
    b.collection.clone().ok_or_else(|| {
        Failure::Input(InputError {
            path: path.display().to_string(),
            position: None,
            message: "the bundle has no `collection`".into(),
        })
    })
}

fn seed_or_k3(v: Option<BigInt>) -> SwSeed {
    v.map_or_else(SwSeed::k3, |v| SwSeed::new(v, "given on the command line"))
}

fn run(cmd: Command) -> Result<Outcome, Failure> {
    Ok(match cmd {
        Command::Complex(ComplexCmd::Build { input, max_dim }) => {
            let b = load_bundle(&input.input)?;
            let c = AdjunctionComplex::build(&b.catalog, max_dim)?;
            let text = render::complex(&c);
            outcome(true, &c, text)
        }
        Command::Complex(ComplexCmd::Homology { input, max_dim, deg, which }) => {
            let b = load_bundle(&input.input)?;
            let (label, k): (&str, Complex<String>) = match which {
                WhichArg::Collection => ("collection", collection_complex(&b.catalog, &collection(&b, &input.input)?)?),
                w => {
                    let (label, which) = match w {
                        WhichArg::Ambient => ("ambient", Which::Ambient),
                        WhichArg::Nonneg => ("nonneg", Which::NonNegative),
                        _ => ("adjunction", Which::Adjunction),
                    };
                    (label, AdjunctionComplex::build(&b.catalog, max_dim)?.complex(which).clone())
                }
            };
            let degrees: Vec<usize> = match deg {
                Some(d) => vec![d],
                None => (0..=k.dim().unwrap_or(0)).collect(),
            };
            let r = HomologyReport {
                catalog_hash: b.catalog.hash(),
                complex: label.into(),
                f_vector: k.f_vector(),
                groups: degrees.into_iter().map(|d| DegreeGroup { degree: d, group: homology(&k, d) }).collect(),
            };
            let text = render::homology(&r);
            outcome(true, &r, text)
        }
        Command::Wallcross(WallcrossCmd::Certify { input }) => {
            let b = load_bundle(&input.input)?;
            let c = certify(&b.catalog, &collection(&b, &input.input)?)?;
            let text = render::certificate(&c);
            outcome(c.certified, &c, text)
        }
        Command::Wallcross(WallcrossCmd::Cycle { input }) => {
            let b = load_bundle(&input.input)?;
            let coll = collection(&b, &input.input)?;
            let z = fundamental_cycle(&coll)?;
            let r = CycleReport { catalog_hash: b.catalog.hash(), k: coll.k(), terms: z.len(), is_cycle: z.is_cycle(), cycle: z };
            let text = render::cycle(&r);
            outcome(r.is_cycle, &r, text)
        }
        Command::Bounding(BoundingCmd::Verify { input, bounding }) => {
            let b = load_bundle(&input.input)?;
            let w = load_bounding(&bounding)?;
            let r = verify_bounding(&b.catalog, &collection(&b, &input.input)?, &w)?;
            let text = render::bounding(&r);
            outcome(r.verified, &r, text)
        }
        Command::Constraints(ConstraintsCmd::Derive { input, bounding, sw_seed }) => {
            let b = load_bundle(&input.input)?;
            let w = load_bounding(&bounding)?;
            let r = derive_constraints(&b.catalog, &collection(&b, &input.input)?, &w, &seed_or_k3(sw_seed))?;
            let text = render::constraints(&r);
            outcome(true, &r, text)
        }
        Command::Invariant(InvariantCmd::Evaluate { input, summand, sw_seed }) => {
            let b = load_bundle(&input.input)?;
            let m = match summand {
                Summand::K3 => ManifoldModel::k3(),
            };
            let s0 = SpinCStructure::new(&m, HomologyClass::zero())?;
            let seed = match sw_seed {
                Some(v) => SwSeed::new(v, "given on the command line"),
                None => SwSeed::from_model(&m).unwrap_or_else(SwSeed::k3),
            };
            let r = evaluate_invariant(&b.catalog, &collection(&b, &input.input)?, &m, &s0, &seed)?;
            let text = render::invariant(&r);
            outcome(true, &r, text)
        }
        Command::Paramgeo(ParamgeoCmd::Selftest { seed, warp, tolerance, samples }) => {
            if tolerance.is_nan() || tolerance <= 0.0 {
                return Err(Failure::Other(format!("--tolerance must be positive, got {tolerance}")));
            }
            let cfg = SelfTestConfig { seed, warp, samples, psi_tolerance: tolerance, ..Default::default() };
            let r = selftest::run(&cfg)?;
            let text = render::selftest(&r);
            outcome(r.passed, &r, text)
        }
        Command::Examples(ExamplesCmd::Make { kind, k, d, l, out }) => {
            let spec = example_spec(kind, k, &d, &l)?;
            let (catalog, coll) = make_example_collection(&spec)?;
            let bundle = Bundle { catalog, collection: Some(coll) };
            let json = serde_json::to_string_pretty(&bundle).expect("bundle serializes");
            if let Some(path) = out {
                std::fs::write(&path, format!("{json}\n")).map_err(|e| Failure::Other(format!("{}: {e}", path.display())))?;
                let text = format!("wrote {} ({} surfaces, catalog {})", path.display(), bundle.catalog.surfaces.len(), bundle.catalog.hash());
                Outcome { ok: true, text, json: json.clone() }
            } else {
                Outcome { ok: true, text: json.clone(), json }
            }
        }
    })
}

fn example_spec(kind: ExampleKind, k: usize, d: &[u64], l: &[u64]) -> Result<ExampleSpec, Failure> {
    let (d_plus, d_minus) = if d.len() == 1 {
        (vec![d[0]; k], vec![d[0]; k])
    } else if d.len() == k {
        (d.to_vec(), d.to_vec())
    } else if d.len() == 2 * k {
        (d.iter().step_by(2).copied().collect(), d.iter().skip(1).step_by(2).copied().collect())
    } else {
        return Err(Failure::Other(format!("--d needs 1, {k} or {} values, got {}", 2 * k, d.len())));
    };
    let l = match l.len() {
        1 => vec![l[0]; k],
        n if n == k => l.to_vec(),
        n => return Err(Failure::Other(format!("--l needs 1 or {k} values, got {n}"))),
    };
    Ok(ExampleSpec { kind, d_plus, d_minus, l })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(o) => {
            match cli.format {
                Format::Text => println!("{}", o.text),
                Format::Json => println!("{}", o.json),
            }
            ExitCode::from(if o.ok { 0 } else { 1 })
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Refused(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
