//! `su3`: command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error, 3 I/O error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use su3_geometry::cartan::{
    left_coeffs, left_fields, left_forms, right_coeffs, right_fields, right_forms,
};
use su3_geometry::domain::domain_by_name;
use su3_geometry::group::{compose, decompose};
use su3_geometry::io::{group_element_json, parse_angles, parse_matrix, DensityStateJson};
use su3_geometry::measure::{sample_haar_in, write_samples_csv};
use su3_geometry::phase::{method_by_name, run, LoopSpec, LoopSpecJson, PhaseOptions};
use su3_geometry::states::project;
use su3_geometry::verify::{self, Level, VerifyContext};
use su3_geometry::{Error, EulerAngles, GroupElement};

#[derive(Parser)]
#[command(name = "su3", version, about = "Euler-angle geometry of SU(3)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct AnglesArg {
    /// Angles as JSON: an array of 8 or an object with named fields.
    #[arg(long)]
    angles: Option<String>,
    /// Angles α β γ θ a b c φ in radians.
    #[arg(num_args = 8, allow_negative_numbers = true, conflicts_with = "angles")]
    values: Vec<f64>,
}

impl AnglesArg {
    fn resolve(&self) -> Result<EulerAngles, Error> {
        match (&self.angles, self.values.len()) {
            (Some(text), _) => parse_angles(text),
            (None, 8) => {
                let x: [f64; 8] = self.values.clone().try_into().expect("length checked");
                parse_angles(&serde_json::to_string(&x)?)
            }
            _ => Err(Error::InvalidInput(
                "give --angles JSON or 8 positional angles".into(),
            )),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Hand {
    Left,
    Right,
}

#[derive(Clone, Copy, ValueEnum)]
enum FrameKind {
    Coefficients,
    Fields,
    Forms,
}

#[derive(Subcommand)]
enum Command {
    /// Print the group element for a set of angles.
    Compose(AnglesArg),
    /// Recover angles and degenerate-stratum flags from a matrix file.
    Decompose {
        #[arg(long)]
        matrix: PathBuf,
        /// Tolerance on the unitarity and determinant residuals.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Write Haar-distributed angles as CSV.
    Haar {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Coordinate box to sample: `covering` or `classical`.
        #[arg(long, default_value = "covering")]
        domain: String,
    },
    /// Geometric phase around a closed loop.
    Phase {
        #[arg(long = "loop")]
        loop_file: PathBuf,
        #[arg(long, default_value = "connection")]
        method: String,
        /// Keep the −(2/√3)dφ term of the connection.
        #[arg(long)]
        include_dphi: bool,
    },
    /// Run the verification suite and print a JSON report.
    Verify {
        #[arg(long, default_value = "quick")]
        level: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Multiplier applied to every default threshold.
        #[arg(long, default_value_t = 1.0)]
        tol: f64,
    },
    /// Coefficient matrix at a point as CSV, rows by algebra index.
    Frame {
        #[command(flatten)]
        angles: AnglesArg,
        #[arg(long, value_enum, default_value_t = Hand::Left)]
        hand: Hand,
        #[arg(long, value_enum, default_value_t = FrameKind::Fields)]
        kind: FrameKind,
    },
    /// Pure-state density matrix reached from the base state.
    State(AnglesArg),
}

enum Failure {
    Verify,
    Input(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) => Failure::Io(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Input(e.to_string()))?;
    let mut out = io::stdout().lock();
    writeln!(out, "{text}").map_err(|e| Failure::Io(e.to_string()))
}

fn execute(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Compose(args) => {
            let g = compose(&args.resolve()?);
            eprintln!(
                "unitarity residual {:.3e}, determinant residual {:.3e}",
                g.unitarity_residual(),
                g.determinant_residual()
            );
            print_json(&group_element_json(&g))
        }
        Command::Decompose { matrix, tol } => {
            let m = parse_matrix(&read_input(&matrix)?)?;
            let g = GroupElement::new_with_tol(m, tol)?;
            let d = decompose(&g);
            eprintln!(
                "round-trip residual {:.3e}",
                compose(&d.angles).max_abs_diff(&g)
            );
            print_json(&d)
        }
        Command::Haar {
            n,
            seed,
            out,
            domain,
        } => {
            if n == 0 {
                return Err(Failure::Input("--n must be at least 1".into()));
            }
            let domain = domain_by_name(&domain)?;
            let samples = sample_haar_in(domain, seed, n);
            match out {
                Some(path) => {
                    let file = File::create(&path).map_err(|e| {
                        Failure::Io(format!("cannot create {}: {e}", path.display()))
                    })?;
                    write_samples_csv(&samples, BufWriter::new(file))?;
                }
                None => write_samples_csv(&samples, io::stdout().lock())?,
            }
            Ok(())
        }
        Command::Phase {
            loop_file,
            method,
            include_dphi,
        } => {
            let raw: LoopSpecJson = serde_json::from_str(&read_input(&loop_file)?)
                .map_err(|e| Failure::Input(format!("cannot parse loop: {e}")))?;
            let lp = LoopSpec::try_from(raw)?;
            let result = run(
                method_by_name(&method)?,
                &lp,
                &PhaseOptions { include_dphi },
            )?;
            print_json(&result)
        }
        Command::Verify { level, seed, tol } => {
            let ctx = VerifyContext {
                level: level.parse::<Level>()?,
                seed,
                tol_scale: tol,
            };
            let report = verify::run(&ctx)?;
            for c in report.checks.iter().filter(|c| !c.pass) {
                eprintln!(
                    "FAIL {}: residual {:.3e} > {:.3e}",
                    c.name, c.residual, c.threshold
                );
            }
            print_json(&report)?;
            if report.pass {
                Ok(())
            } else {
                Err(Failure::Verify)
            }
        }
        Command::Frame { angles, hand, kind } => {
            let p = angles.resolve()?;
            let m = match (hand, kind) {
                (Hand::Left, FrameKind::Coefficients) => left_coeffs(&p),
                (Hand::Right, FrameKind::Coefficients) => right_coeffs(&p),
                (Hand::Left, FrameKind::Fields) => left_fields(&p)?,
                (Hand::Right, FrameKind::Fields) => right_fields(&p)?,
                (Hand::Left, FrameKind::Forms) => left_forms(&p)?,
                (Hand::Right, FrameKind::Forms) => right_forms(&p)?,
            };
            m.write_csv(io::stdout().lock())?;
            Ok(())
        }
        Command::State(args) => {
            let s = project(&compose(&args.resolve()?));
            print_json(&DensityStateJson::from(&s))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
