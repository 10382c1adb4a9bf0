//! Command-line driver and the JSON complex file format.
//!
//! A complex file looks like
//!
//! ```json
//! {
//!   "version": 1,
//!   "facets": [[-3, -2, -1], [-3, -2, 1]],
//!   "z2": true,
//!   "labels": { "-1": -1, "1": 1 }
//! }
//! ```
//!
//! Facets are written sorted with ascending vertices and labels in vertex
//! order, so serializing a parsed file reproduces it byte for byte.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 validation failure,
//! 3 inconclusive reduction.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::error::Error;
use crate::fan::{alpha_counts, tucker_witness, validate_fan, FanLabelling};
use crate::generators::{canonical_cross_labelling, cross_polytope, random_fan_labelling, simplex_boundary};
use crate::moves::{apply_move, apply_z2_move, enumerate_moves, enumerate_z2_moves, random_z2_walk, BistellarMove};
use crate::recognition::{
    check_closed_pseudomanifold, fan_certificate, reduce_to_boundary_simplex, replay_verify,
    z2_reduce_to_cross_polytope, ReductionConfig, DEFAULT_BUDGET,
};
use crate::z2::Z2Complex;

pub const FORMAT_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub version: u32,
    pub facets: Vec<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z2: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<Vertex, i64>>,
}

impl ComplexFile {
    pub fn from_complex(k: &SimplicialComplex, z2: bool, labels: Option<&FanLabelling>) -> Self {
        ComplexFile {
            version: FORMAT_VERSION,
            facets: k.facets().iter().map(|f| f.vertices().to_vec()).collect(),
            z2: z2.then_some(true),
            labels: labels.map(|l| l.to_integers().expect("integer labels at the file boundary")),
        }
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let file: ComplexFile = serde_json::from_str(text)
            .map_err(|e| format!("parse error at line {}, column {}: {e}", e.line(), e.column()))?;
        if file.version != FORMAT_VERSION {
            return Err(format!("unsupported format version {}", file.version));
        }
        Ok(file)
    }

    /// Canonical text: pretty JSON with a trailing newline.
    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("complex file serializes");
        s.push('\n');
        s
    }

    pub fn complex(&self) -> Result<SimplicialComplex, Error> {
        SimplicialComplex::from_facets(self.facets.iter().cloned())
    }

    pub fn z2_complex(&self) -> Result<Z2Complex, Error> {
        Z2Complex::new(self.complex()?)
    }

    pub fn labelling(&self) -> Option<FanLabelling> {
        self.labels.as_ref().map(|l| FanLabelling::from_integers(l.iter().map(|(v, x)| (*v, *x))))
    }
}

#[derive(Parser, Debug)]
#[command(name = "fanflip", version, about = "Bistellar moves, Z2-complexes and Fan labellings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// f-vector, Euler characteristic and validators
    Info { file: PathBuf },
    /// List admissible moves
    Moves {
        file: PathBuf,
        /// Z2-moves (one representative per antipodal pair)
        #[arg(long)]
        z2: bool,
    },
    /// Apply one move κ(A, B)
    Flip {
        file: PathBuf,
        /// Face A, comma separated
        #[arg(long, value_parser = parse_simplex, allow_hyphen_values = true)]
        a: Simplex,
        /// Face B; defaults to the admissible choice for A
        #[arg(long, value_parser = parse_simplex, allow_hyphen_values = true)]
        b: Option<Simplex>,
        #[arg(long)]
        z2: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Random Z2-walk
    Walk {
        file: PathBuf,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
        /// Write the flip sequence here
        #[arg(long)]
        sequence_out: Option<PathBuf>,
    },
    /// Barycentric or stellar subdivision
    Subdivide {
        file: PathBuf,
        #[arg(long, conflicts_with = "stellar", required_unless_present = "stellar")]
        barycentric: bool,
        /// Face to subdivide, comma separated
        #[arg(long, value_parser = parse_simplex, allow_hyphen_values = true)]
        stellar: Option<Simplex>,
        /// New vertex id for --stellar (default: next unused)
        #[arg(long, allow_hyphen_values = true)]
        vertex: Option<Vertex>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// sd(M)/Z2 of a Z2-complex
    Quotient {
        file: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Validate a Fan labelling and count alternating facets
    FanCheck {
        file: PathBuf,
        #[command(flatten)]
        labels: LabelArgs,
    },
    /// Find a complementary edge
    Tucker {
        file: PathBuf,
        #[command(flatten)]
        labels: LabelArgs,
    },
    /// Heuristic bistellar reduction
    Reduce {
        file: PathBuf,
        /// Reduce with Z2-moves to the cross polytope
        #[arg(long)]
        z2: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long)]
        seed: u64,
        /// Write the flip sequence here
        #[arg(long)]
        sequence_out: Option<PathBuf>,
    },
    /// Parity certificate for a Fan labelling
    Certify {
        file: PathBuf,
        #[command(flatten)]
        labels: LabelArgs,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long)]
        seed: u64,
        /// Write the certificate here
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Verify a flip sequence file against source and target complexes
    Replay { source: PathBuf, sequence: PathBuf, target: PathBuf },
    /// Write a canonical complex
    Generate {
        #[arg(value_enum)]
        kind: GenerateKind,
        /// `k` for ∂Δ^k, or the number of antipodal pairs of the cross polytope
        k: usize,
        /// Attach the canonical labelling (cross polytope only)
        #[arg(long)]
        labels: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(clap::ValueEnum, Clone, Copy, Debug)]
enum GenerateKind {
    Simplex,
    Cross,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Output complex file (default: standard output)
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct LabelArgs {
    /// `file` (labels in the input), `canon` (λ(v) = v), or `random:M`
    #[arg(long, default_value = "file")]
    labels: String,
    /// Seed for `random:M`
    #[arg(long = "label-seed", default_value_t = 0)]
    label_seed: u64,
}

fn parse_simplex(s: &str) -> Result<Simplex, String> {
    let vs: Result<Vec<Vertex>, _> = s.split(',').map(|p| p.trim().parse::<Vertex>()).collect();
    let vs = vs.map_err(|e| format!("bad vertex list {s:?}: {e}"))?;
    if vs.contains(&0) {
        return Err("vertex id 0 is reserved".into());
    }
    Ok(Simplex::new(vs))
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: EXIT_ERROR, message: e.to_string() }
    }
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

type CmdResult = Result<i32, Failure>;

/// Runs the command line `args` (including the program name), writing
/// reports to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read_file(path: &Path) -> Result<ComplexFile, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| fail(EXIT_ERROR, format!("{}: {e}", path.display())))?;
    ComplexFile::parse(&text).map_err(|m| fail(EXIT_ERROR, format!("{}: {m}", path.display())))
}

fn write_path(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| fail(EXIT_ERROR, format!("{}: {e}", path.display())))
}

fn emit_report(out: &mut dyn Write, value: &serde_json::Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("report serializes");
    writeln!(out, "{text}").map_err(|e| fail(EXIT_ERROR, e.to_string()))
}

fn emit_complex(out: &mut dyn Write, output: &OutputArgs, file: &ComplexFile) -> Result<(), Failure> {
    match &output.output {
        Some(p) => write_path(p, &file.to_text()),
        None => write!(out, "{}", file.to_text()).map_err(|e| fail(EXIT_ERROR, e.to_string())),
    }
}

fn resolve_labels(file: &ComplexFile, k: &SimplicialComplex, m: Option<&Z2Complex>, args: &LabelArgs) -> Result<FanLabelling, Failure> {
    match args.labels.as_str() {
        "file" => file.labelling().ok_or_else(|| fail(EXIT_ERROR, "input has no labels")),
        "canon" => Ok(FanLabelling::identity(k)),
        other => {
            let bound = other
                .strip_prefix("random:")
                .and_then(|b| b.parse::<i64>().ok())
                .ok_or_else(|| fail(EXIT_ERROR, format!("unknown label source {other:?}")))?;
            let m = m.ok_or_else(|| fail(EXIT_ERROR, "random labels need a Z2-complex"))?;
            Ok(random_fan_labelling(m, bound, args.label_seed)?)
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Info { file } => {
            let f = read_file(&file)?;
            let k = f.complex()?;
            let fv = k.f_vector();
            let z2 = Z2Complex::new(k.clone());
            let report = json!({
                "dimension": k.dim(),
                "f_vector": fv.counts,
                "euler_characteristic": fv.euler_characteristic(),
                "facets": k.num_facets(),
                "pure": k.is_pure(),
                "closed_pseudomanifold": check_closed_pseudomanifold(&k).is_ok(),
                "z2": match &z2 { Ok(_) => json!({"valid": true}), Err(e) => json!({"valid": false, "reason": e.to_string()}) },
            });
            emit_report(out, &report)?;
            if f.z2 == Some(true) {
                if let Err(e) = z2 {
                    return Err(fail(EXIT_INVALID, e.to_string()));
                }
            }
            Ok(EXIT_OK)
        }
        Command::Moves { file, z2 } => {
            let f = read_file(&file)?;
            let moves = if z2 {
                enumerate_z2_moves(&f.z2_complex().map_err(invalid)?)
            } else {
                enumerate_moves(&f.complex()?)
            };
            emit_report(out, &json!({ "count": moves.len(), "moves": moves }))?;
            Ok(EXIT_OK)
        }
        Command::Flip { file, a, b, z2, output } => {
            let f = read_file(&file)?;
            let k = f.complex()?;
            let b = match b {
                Some(b) => b,
                None => crate::moves::find_move(&k, &a)?
                    .ok_or_else(|| fail(EXIT_INVALID, format!("no admissible move at {a}")))?
                    .b,
            };
            let m = BistellarMove { a, b };
            let result = if z2 {
                let mz = f.z2_complex().map_err(invalid)?;
                apply_z2_move(&mz, &m).map(|(c, _)| c.into_complex())
            } else {
                apply_move(&k, &m).map(|(c, _)| c)
            };
            let next = result.map_err(invalid)?;
            emit_complex(out, &output, &ComplexFile::from_complex(&next, z2 || f.z2 == Some(true), None))?;
            Ok(EXIT_OK)
        }
        Command::Walk { file, steps, seed, output, sequence_out } => {
            let f = read_file(&file)?;
            let m = f.z2_complex().map_err(invalid)?;
            let (walked, seq) = random_z2_walk(&m, steps, seed)?;
            emit_complex(out, &output, &ComplexFile::from_complex(walked.complex(), true, None))?;
            if let Some(p) = sequence_out {
                write_path(&p, &to_json_text(&seq))?;
            }
            Ok(EXIT_OK)
        }
        Command::Subdivide { file, barycentric, stellar, vertex, output } => {
            let f = read_file(&file)?;
            let k = f.complex()?;
            let is_z2 = f.z2 == Some(true);
            let result = if barycentric {
                if is_z2 {
                    f.z2_complex().map_err(invalid)?.equivariant_sd().0.into_complex()
                } else {
                    k.barycentric_subdivide().0
                }
            } else {
                let a = stellar.expect("clap enforces --stellar");
                let v = vertex.unwrap_or_else(|| crate::moves::fresh_vertex(&k));
                k.stellar_subdivide(&a, v)?
            };
            emit_complex(out, &output, &ComplexFile::from_complex(&result, barycentric && is_z2, None))?;
            Ok(EXIT_OK)
        }
        Command::Quotient { file, output } => {
            let f = read_file(&file)?;
            let m = f.z2_complex().map_err(invalid)?;
            let (q, _) = m.equivariant_sd().0.quotient()?;
            emit_complex(out, &output, &ComplexFile::from_complex(&q, false, None))?;
            Ok(EXIT_OK)
        }
        Command::FanCheck { file, labels } => {
            let f = read_file(&file)?;
            let m = f.z2_complex().map_err(invalid)?;
            let l = resolve_labels(&f, m.complex(), Some(&m), &labels)?;
            let violations = validate_fan(&m, &l).map_err(invalid)?;
            let counts = alpha_counts(m.complex(), &l);
            emit_report(
                out,
                &json!({
                    "valid": violations.is_empty(),
                    "violations": violations,
                    "alpha_plus": counts.alpha_plus,
                    "alpha_minus": counts.alpha_minus,
                }),
            )?;
            Ok(if violations.is_empty() { EXIT_OK } else { EXIT_INVALID })
        }
        Command::Tucker { file, labels } => {
            let f = read_file(&file)?;
            let m = f.z2_complex().map_err(invalid)?;
            let l = resolve_labels(&f, m.complex(), Some(&m), &labels)?;
            let (u, v) = tucker_witness(&m, &l).map_err(invalid)?;
            emit_report(out, &json!({ "edge": [u, v] }))?;
            Ok(EXIT_OK)
        }
        Command::Reduce { file, z2, budget, seed, sequence_out } => {
            let f = read_file(&file)?;
            let config = ReductionConfig::new(budget, seed);
            let report = if z2 {
                z2_reduce_to_cross_polytope(&f.z2_complex().map_err(invalid)?, &config)
            } else {
                reduce_to_boundary_simplex(&f.complex()?, &config)
            }
            .map_err(invalid)?;
            let verified = report.is_reduced()
                && replay_verify(&f.complex()?, &report.sequence, &report.target)?;
            emit_report(
                out,
                &json!({
                    "outcome": report.outcome,
                    "verified": verified,
                    "moves": report.sequence.len(),
                    "final_f_vector": report.final_complex.f_vector().counts,
                    "stats": report.stats,
                    "budget": budget,
                    "seed": seed,
                }),
            )?;
            if let Some(p) = sequence_out {
                write_path(&p, &to_json_text(&report.sequence))?;
            }
            Ok(if verified { EXIT_OK } else { EXIT_INCONCLUSIVE })
        }
        Command::Certify { file, labels, budget, seed, output } => {
            let f = read_file(&file)?;
            let m = f.z2_complex().map_err(invalid)?;
            let l = resolve_labels(&f, m.complex(), Some(&m), &labels)?;
            let config = ReductionConfig::new(budget, seed);
            match fan_certificate(&m, &l, &config) {
                Ok(cert) => {
                    emit_report(
                        out,
                        &json!({
                            "certified": true,
                            "alpha_plus": cert.alpha_plus,
                            "alpha_minus": cert.alpha_minus,
                            "moves": cert.sequence.len(),
                            "final_alpha_plus": cert.trace.last().map(|t| t.alpha_plus),
                        }),
                    )?;
                    if let Some(p) = output {
                        write_path(&p, &to_json_text(&cert))?;
                    }
                    Ok(EXIT_OK)
                }
                Err(Error::CertificateUnavailable { alpha_plus }) => {
                    emit_report(out, &json!({ "certified": false, "alpha_plus": alpha_plus }))?;
                    Ok(EXIT_INCONCLUSIVE)
                }
                Err(e @ (Error::InvalidLabelling(_) | Error::IncompleteLabelling(_))) => Err(invalid(e)),
                Err(e) => Err(e.into()),
            }
        }
        Command::Replay { source, sequence, target } => {
            let src = read_file(&source)?.complex()?;
            let tgt = read_file(&target)?.complex()?;
            let text = std::fs::read_to_string(&sequence)
                .map_err(|e| fail(EXIT_ERROR, format!("{}: {e}", sequence.display())))?;
            let seq: crate::moves::FlipSequence = serde_json::from_str(&text).map_err(|e| {
                fail(EXIT_ERROR, format!("{}: parse error at line {}, column {}: {e}", sequence.display(), e.line(), e.column()))
            })?;
            let ok = replay_verify(&src, &seq, &tgt).map_err(invalid)?;
            emit_report(out, &json!({ "verified": ok, "moves": seq.len() }))?;
            Ok(if ok { EXIT_OK } else { EXIT_INVALID })
        }
        Command::Generate { kind, k, labels, output } => {
            let file = match kind {
                GenerateKind::Simplex => ComplexFile::from_complex(&simplex_boundary(k)?, false, None),
                GenerateKind::Cross => {
                    let l = if labels { Some(canonical_cross_labelling(k)?) } else { None };
                    ComplexFile::from_complex(cross_polytope(k)?.complex(), true, l.as_ref())
                }
            };
            emit_complex(out, &output, &file)?;
            Ok(EXIT_OK)
        }
    }
}

fn invalid(e: Error) -> Failure {
    fail(EXIT_INVALID, e.to_string())
}

fn to_json_text<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("value serializes");
    s.push('\n');
    s
}
