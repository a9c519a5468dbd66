//! Command-line front end. `run_cli` never exits the process; it returns the
//! status code and writes the report to `out`, diagnostics to `err`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;

use super::fan_file::{read_fan_file, FanFile};
use super::report::{self, PicardResult, PlotResult, ReportDocument, ResultSection, TrivialResult, ValidateResult};
use super::semigroup_file::{parse_element, read_semigroup_file};
use super::svg::{render_fan_svg, render_picard_slice_svg, PicardSlice};
use crate::classify::{enumerate_h_trivial, has_infinitely_many_h_trivial, lambda_m_enumerate, ClassifyOptions};
use crate::cohomology::cohomology_dims;
use crate::error::HtError;
use crate::forbidden::{first_forbidden_set, is_h_trivial, is_h_trivial_cross_checked};
use crate::picard::{LineBundleClass, PicardGroup};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ORACLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "htriv",
    version,
    about = "Picard groups, line-bundle cohomology and H-trivial classes of 2-D stacky fans"
)]
struct Cli {
    /// Display basis: 1-based ray indices, e.g. 1,4,5 (overrides the fan file).
    #[arg(long, global = true, value_delimiter = ',')]
    basis: Option<Vec<usize>>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a fan file.
    Validate {
        #[arg(value_name = "FAN")]
        file: PathBuf,
    },
    /// Print the Picard group presentation.
    Picard {
        #[arg(value_name = "FAN")]
        file: PathBuf,
    },
    /// Cohomology dimensions of a class.
    Cohomology {
        #[arg(value_name = "FAN")]
        file: PathBuf,
        /// Class such as "(1,0,-1)"; torsion residues after a semicolon.
        #[arg(long, allow_hyphen_values = true)]
        class: String,
    },
    /// Decide whether a class is H-trivial.
    Trivial {
        #[arg(value_name = "FAN")]
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        /// Also compute the cohomology and fail with status 3 if the answers differ.
        #[arg(long)]
        cross_check: bool,
    },
    /// Enumerate H-trivial classes in a ball and sort them into line families.
    Classify {
        #[arg(value_name = "FAN")]
        file: PathBuf,
        /// Ball radius, an integer or p/q.
        #[arg(long, allow_hyphen_values = true)]
        radius: String,
        /// Compute the bound certificate and widen the ball to it (fans without opposite rays).
        #[arg(long)]
        certify: bool,
        /// Half-width of the window used for lines that are not fully trivial.
        #[arg(long)]
        line_window: Option<u64>,
    },
    /// Classes whose total cohomology is below m.
    Lambda {
        #[arg(value_name = "FAN")]
        file: PathBuf,
        #[arg(short = 'm', allow_hyphen_values = true)]
        m: String,
        #[arg(long, allow_hyphen_values = true)]
        radius: String,
    },
    /// Draw the fan, or with --picard-slice a slice of the Picard lattice, as SVG.
    Plot {
        #[arg(value_name = "FAN")]
        file: PathBuf,
        /// Output SVG path.
        #[arg(long)]
        out: PathBuf,
        /// Slice `X[,Y][:VALUE][;TORSION]` of the free coordinates; empty for the default.
        #[arg(long, num_args = 0..=1, default_missing_value = "")]
        picard_slice: Option<String>,
        /// Ball radius for the Picard plot.
        #[arg(long, default_value = "5")]
        radius: String,
    },
    /// Constructions on affine semigroups read from a semigroup file.
    #[command(subcommand)]
    Semigroup(SemigroupCommand),
}

#[derive(Debug, Subcommand)]
enum SemigroupCommand {
    /// Cone points of height below the sum of the generator heights.
    Gamma {
        #[arg(value_name = "SEMIGROUP")]
        file: PathBuf,
    },
    /// A saturation shift r with r + (C ∩ M) inside the semigroup.
    Shift {
        #[arg(value_name = "SEMIGROUP")]
        file: PathBuf,
    },
    /// Split a cone point as a + b with a in the semigroup and b of small height.
    Decompose {
        #[arg(value_name = "SEMIGROUP")]
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// A point with more than m representations.
    Mult {
        #[arg(value_name = "SEMIGROUP")]
        file: PathBuf,
        #[arg(short = 'm', allow_hyphen_values = true)]
        m: String,
    },
}

enum Failure {
    Usage(String),
    Domain(HtError),
}

impl From<HtError> for Failure {
    fn from(e: HtError) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = std::result::Result<ReportDocument, Failure>;

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn parse_rational(text: &str) -> std::result::Result<BigRational, Failure> {
    text.trim().parse::<BigRational>().map_err(|_| usage(format!("{text:?} is not an integer or a fraction p/q")))
}

fn parse_integer(text: &str) -> std::result::Result<BigInt, Failure> {
    text.trim().parse::<BigInt>().map_err(|_| usage(format!("{text:?} is not an integer")))
}

struct Loaded {
    file: FanFile,
    pic: PicardGroup,
}

impl Loaded {
    fn open(path: &Path, basis: &Option<Vec<usize>>) -> std::result::Result<Self, Failure> {
        let mut file = read_fan_file(path)?;
        if let Some(b) = basis {
            if b.iter().any(|&i| i == 0 || i > file.fan.n()) {
                return Err(usage(format!("--basis indices must be between 1 and {}", file.fan.n())));
            }
            file.basis = Some(b.iter().map(|i| i - 1).collect());
        }
        let pic = file.picard()?;
        Ok(Loaded { file, pic })
    }

    fn class(&self, text: &str) -> std::result::Result<LineBundleClass, Failure> {
        self.pic.parse_class(text).map_err(usage)
    }

    fn report(&self, result: ResultSection) -> ReportDocument {
        ReportDocument::for_fan(self.file.name.as_deref(), &self.pic, result)
    }
}

fn dispatch(cli: Cli) -> Outcome {
    let basis = cli.basis;
    let open = |p: &Path| Loaded::open(p, &basis);
    match cli.command {
        Command::Validate { file } => {
            let l = open(&file)?;
            Ok(l.report(ResultSection::Validate(ValidateResult {
                valid: true,
                rays: l.file.fan.n().to_string(),
                infinite: has_infinitely_many_h_trivial(&l.pic),
            })))
        }
        Command::Picard { file } => {
            let l = open(&file)?;
            let relations =
                l.file.fan.relation_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
            Ok(l.report(ResultSection::Picard(PicardResult { relations })))
        }
        Command::Cohomology { file, class } => {
            let l = open(&file)?;
            let c = l.class(&class)?;
            let rep = l.pic.divisor_representative(&c)?;
            let dims = cohomology_dims(&l.pic, &c)?;
            Ok(l.report(ResultSection::Cohomology(report::cohomology_result(&c, &rep, dims))))
        }
        Command::Trivial { file, class, cross_check } => {
            let l = open(&file)?;
            let c = l.class(&class)?;
            let h_trivial =
                if cross_check { is_h_trivial_cross_checked(&l.pic, &c)? } else { is_h_trivial(&l.pic, &c)? };
            let witness =
                if h_trivial { None } else { first_forbidden_set(&l.pic, &c)?.map(|w| report::witness_doc(&w)) };
            let cohomology = if cross_check {
                let d = cohomology_dims(&l.pic, &c)?;
                Some([d.h0.to_string(), d.h1.to_string(), d.h2.to_string()])
            } else {
                None
            };
            Ok(l.report(ResultSection::Trivial(TrivialResult {
                class: c.to_string(),
                h_trivial,
                witness,
                cross_checked: cross_check,
                cohomology,
            })))
        }
        Command::Classify { file, radius, certify, line_window } => {
            let l = open(&file)?;
            let options = ClassifyOptions {
                radius: parse_rational(&radius)?,
                certify,
                line_window: line_window.map(BigInt::from),
            };
            let r = enumerate_h_trivial(&l.pic, &options)?;
            Ok(l.report(ResultSection::Classify(report::classify_result(&r))))
        }
        Command::Lambda { file, m, radius } => {
            let l = open(&file)?;
            let m = parse_integer(&m)?;
            let m = u64::try_from(m).map_err(|_| Failure::Domain(HtError::NonPositiveM))?;
            let radius = parse_rational(&radius)?;
            let classes = lambda_m_enumerate(&l.pic, m, &radius)?;
            Ok(l.report(ResultSection::Lambda(report::lambda_result(m, &radius, &classes))))
        }
        Command::Plot { file, out, picard_slice, radius } => {
            let l = open(&file)?;
            let title = l.file.name.clone().unwrap_or_else(|| file.display().to_string());
            let (svg, kind) = match picard_slice {
                None => (render_fan_svg(&l.file.fan, &title), "fan"),
                Some(text) => {
                    let slice = if text.trim().is_empty() {
                        PicardSlice::default_for(&l.pic)?
                    } else {
                        PicardSlice::parse(&text, &l.pic).map_err(usage)?
                    };
                    let options =
                        ClassifyOptions { radius: parse_rational(&radius)?, certify: false, line_window: None };
                    let r = enumerate_h_trivial(&l.pic, &options)?;
                    (render_picard_slice_svg(&l.pic, &r, &slice, &title)?, "picard_slice")
                }
            };
            std::fs::write(&out, svg).map_err(|e| HtError::Io(format!("{}: {e}", out.display())))?;
            Ok(l.report(ResultSection::Plot(PlotResult { output: out.display().to_string(), kind: kind.to_string() })))
        }
        Command::Semigroup(cmd) => {
            let result = match cmd {
                SemigroupCommand::Gamma { file } => {
                    let sg = read_semigroup_file(&file)?;
                    ResultSection::SemigroupGamma(report::gamma_result(&sg, &sg.gamma_set()))
                }
                SemigroupCommand::Shift { file } => {
                    let sg = read_semigroup_file(&file)?;
                    ResultSection::SemigroupShift(report::shift_result(&sg, &sg.saturation_shift()?))
                }
                SemigroupCommand::Decompose { file, point } => {
                    let sg = read_semigroup_file(&file)?;
                    let x = parse_element(&point, sg.k(), sg.torsion().len()).map_err(usage)?;
                    let x = sg.element(x.free, x.torsion)?;
                    ResultSection::SemigroupDecompose(report::decompose_result(&sg, &x, &sg.decompose(&x)?))
                }
                SemigroupCommand::Mult { file, m } => {
                    let sg = read_semigroup_file(&file)?;
                    let m = parse_integer(&m)?;
                    ResultSection::SemigroupMult(report::mult_result(&sg, &m, &sg.multiplicity_point(&m)?))
                }
            };
            Ok(ReportDocument::new(None, None, result))
        }
    }
}

/// Parse `args` (including the program name), run the command and return
/// the exit status: 0 success, 1 domain error, 2 usage error, 3 oracle
/// disagreement.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli) {
        Ok(doc) => match out.write_all(doc.to_json().as_bytes()) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(err, "error[E_IO]: {e}");
                EXIT_DOMAIN
            }
        },
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error[E_USAGE]: {m}");
            EXIT_USAGE
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error[{}]: {e}", e.code());
            domain_exit_code(&e)
        }
    }
}

fn domain_exit_code(e: &HtError) -> i32 {
    if matches!(e.root(), HtError::OracleDisagreement(_)) {
        EXIT_ORACLE
    } else {
        EXIT_DOMAIN
    }
}
