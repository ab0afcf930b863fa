//! Command-line frontend. `run` is the whole program minus process I/O, so it
//! can be driven in-process by tests.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::balance::{check_curve, BalanceReport, Overall};
use crate::chow::alpha_map;
use crate::complex::{embed_faces, locate};
use crate::error::Error;
use crate::fixtures::{fixture, FixtureName};
use crate::io::{
    curve_from_json, to_pretty_json, AlphaOutput, AnnuliFile, CurveFile, Degeneration, ErrorObject,
    FixtureOutput, LocateOutput, SkeletonOutput, WeightsOutput,
};
use crate::ratlinalg::RatMatrix;
use crate::tropcurve::TropicalCurve;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WeightsMode {
    /// Replace curve weights with the computed ones.
    Set,
    /// Fail when a computed weight differs from the curve's.
    Verify,
}

#[derive(Debug, Parser)]
#[command(
    name = "tropbal",
    version,
    about = "Exact checker for generalized tropical balancing conditions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check every vertex of a curve against the balancing condition.
    Check {
        #[arg(long)]
        degeneration: PathBuf,
        #[arg(long)]
        curve: PathBuf,
        /// Annulus data from which to compute edge weights.
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = WeightsMode::Set)]
        weights_mode: WeightsMode,
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Print the α matrix of a stratum.
    Alpha {
        #[arg(long)]
        degeneration: PathBuf,
        /// Comma-separated component names, e.g. D0,D1.
        #[arg(long)]
        stratum: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Compute edge weights from annulus data.
    Weights {
        #[arg(long)]
        annuli: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Print the embedded faces of the skeleton.
    Skeleton {
        #[arg(long)]
        degeneration: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Find the face whose relative interior contains a point.
    Locate {
        #[arg(long)]
        degeneration: PathBuf,
        /// Coordinates as name=value pairs, e.g. "D0=1/2,D1=1/2".
        #[arg(long)]
        point: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Emit a built-in example (k3-quartic, toric-simplex).
    Fixture {
        name: String,
        /// Write NAME.degeneration.json, NAME.curve.json and NAME.annuli.json here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(e: &Error) -> Self {
        Outcome {
            code: 2,
            stdout: to_pretty_json(&ErrorObject::from(e)),
            stderr: format!("error: {e}\n"),
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome::ok(e.to_string());
            }
            let obj = ErrorObject {
                error: "E_USAGE".into(),
                detail: e.kind().to_string(),
            };
            return Outcome {
                code: 2,
                stdout: to_pretty_json(&obj),
                stderr: e.to_string(),
            };
        }
    };
    match execute(cli.command) {
        Ok(outcome) => outcome,
        Err(e) => Outcome::error(&e),
    }
}

fn execute(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Check {
            degeneration,
            curve,
            weights,
            weights_mode,
            strict,
            format,
        } => {
            let deg = Degeneration::load(&degeneration, strict)?;
            let mut t = curve_from_json(&read(&curve)?)?;
            if let Some(path) = weights {
                let computed = AnnuliFile::from_json(&read(&path)?)?.weights()?;
                apply_weights(&deg, &mut t, &computed, weights_mode)?;
            }
            let report = check_curve(&deg.complex, &deg.cycle_data, &t, strict);
            if report.overall == Overall::HasErrors {
                return Err(Error::Validation(report.errors));
            }
            let code = match report.overall {
                Overall::HasViolation => 1,
                _ => 0,
            };
            let stdout = match format {
                Format::Json => to_pretty_json(&report),
                Format::Text => render_report(&report),
            };
            Ok(Outcome {
                code,
                stdout,
                stderr: String::new(),
            })
        }
        Command::Alpha {
            degeneration,
            stratum,
            format,
        } => {
            let deg = Degeneration::load(&degeneration, false)?;
            let (s, data) = deg.stratum_data(&stratum)?;
            let alpha = alpha_map(data);
            Ok(Outcome::ok(match format {
                Format::Json => to_pretty_json(&AlphaOutput {
                    stratum: deg.complex.names(&s),
                    alpha: &alpha,
                }),
                Format::Text => render_alpha(&deg.complex.display(&s), &alpha),
            }))
        }
        Command::Weights { annuli, format } => {
            let out = AnnuliFile::from_json(&read(&annuli)?)?.weights()?;
            Ok(Outcome::ok(match format {
                Format::Json => to_pretty_json(&out),
                Format::Text => out
                    .edges
                    .iter()
                    .map(|e| format!("{}: {}\n", e.edge_id, e.weight))
                    .collect(),
            }))
        }
        Command::Skeleton {
            degeneration,
            format,
        } => {
            let deg = Degeneration::load(&degeneration, false)?;
            let out = SkeletonOutput::new(&deg.complex, embed_faces(&deg.complex)?);
            Ok(Outcome::ok(match format {
                Format::Json => to_pretty_json(&out),
                Format::Text => {
                    let mut s = String::new();
                    for f in &out.faces {
                        let verts: Vec<String> =
                            f.vertices.iter().map(ToString::to_string).collect();
                        let _ = writeln!(
                            s,
                            "{{{}}} val_a={}: {}",
                            f.face.join(","),
                            f.val_a,
                            verts.join(" ")
                        );
                    }
                    s
                }
            }))
        }
        Command::Locate {
            degeneration,
            point,
            format,
        } => {
            let deg = Degeneration::load(&degeneration, false)?;
            let p = crate::io::parse_point(&point)?;
            let face = locate(&deg.complex, &p)?;
            let names = deg.complex.names(&face);
            Ok(Outcome::ok(match format {
                Format::Json => to_pretty_json(&LocateOutput { face: names }),
                Format::Text => format!("{{{}}}\n", names.join(",")),
            }))
        }
        Command::Fixture { name, out } => {
            let fx = fixture(name.parse::<FixtureName>()?);
            let deg_file = fx.degeneration.to_file();
            let curve_file = CurveFile::from(&fx.curve);
            match out {
                None => Ok(Outcome::ok(to_pretty_json(&FixtureOutput {
                    degeneration: &deg_file,
                    curve: &curve_file,
                    annuli: &fx.annuli,
                }))),
                Some(dir) => {
                    let files = [
                        (
                            format!("{name}.degeneration.json"),
                            to_pretty_json(&deg_file),
                        ),
                        (format!("{name}.curve.json"), to_pretty_json(&curve_file)),
                        (format!("{name}.annuli.json"), to_pretty_json(&fx.annuli)),
                    ];
                    write_all(&dir, &files)?;
                    let mut listing = String::new();
                    for (file, _) in &files {
                        let _ = writeln!(listing, "{}", dir.join(file).display());
                    }
                    Ok(Outcome::ok(listing))
                }
            }
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

/// Stages every file before renaming any into place, so a failure leaves no output.
fn write_all(dir: &Path, files: &[(String, String)]) -> Result<(), Error> {
    std::fs::create_dir_all(dir)?;
    let staged: Vec<PathBuf> = files
        .iter()
        .map(|(f, _)| dir.join(format!(".{f}.tmp")))
        .collect();
    let result = staged
        .iter()
        .zip(files)
        .try_for_each(|(tmp, (_, content))| std::fs::write(tmp, content))
        .and_then(|()| {
            staged
                .iter()
                .zip(files)
                .try_for_each(|(tmp, (f, _))| std::fs::rename(tmp, dir.join(f)))
        });
    if result.is_err() {
        for tmp in &staged {
            let _ = std::fs::remove_file(tmp);
        }
    }
    Ok(result?)
}

fn apply_weights(
    deg: &Degeneration,
    t: &mut TropicalCurve,
    computed: &WeightsOutput,
    mode: WeightsMode,
) -> Result<(), Error> {
    let comps = deg.complex.components();
    for ew in &computed.edges {
        ew.weight.check_labels(comps)?;
        let edge = t.edge_mut(&ew.edge_id)?;
        let new = ew.weight.aligned(comps);
        match mode {
            WeightsMode::Set => edge.weight = new,
            WeightsMode::Verify => {
                let old = edge.weight.aligned(comps);
                if old != new {
                    return Err(Error::WeightMismatch {
                        edge: ew.edge_id.clone(),
                        curve: old.to_string(),
                        computed: new.to_string(),
                    });
                }
            }
        }
    }
    Ok(())
}

fn render_alpha(stratum: &str, alpha: &RatMatrix) -> String {
    if alpha.ncols() == 0 {
        return format!("alpha on {stratum}: zero map (no curve classes)\n");
    }
    format!("alpha on {stratum}:\n{alpha}")
}

fn render_report(report: &BalanceReport) -> String {
    let mut s = String::new();
    for v in &report.verdicts {
        let _ = write!(
            s,
            "{} {{{}}} sigma={}: {}",
            v.vertex,
            v.face.join(","),
            v.sigma,
            v.summary()
        );
        if let Some(w) = &v.witness {
            let _ = write!(s, "; witness {w}");
        }
        if let Some(y) = &v.certificate {
            let _ = write!(s, "; certificate {y}");
        }
        s.push('\n');
        for note in &v.notes {
            let _ = writeln!(s, "  note: {note}");
        }
    }
    for w in &report.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    let _ = writeln!(
        s,
        "overall: {}",
        match report.overall {
            Overall::AllBalanced => "all_balanced",
            Overall::HasViolation => "has_violation",
            Overall::HasErrors => "has_errors",
        }
    );
    s
}
