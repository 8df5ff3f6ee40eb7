//! Command-line surface. Exit codes: 0 success, 1 usage/parameter problems,
//! 2 a mathematical check failed (engine disagreement, falsified
//! certificate, or a verification mismatch).

use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use crate::cusps::{enumerate_closed_points, enumerate_cusp_classes};
use crate::delta::g_map;
use crate::divisor::weighted_degree;
use crate::emit::{matrix_to_csv, matrix_to_json_string, matrix_to_text};
use crate::engine::{
    build_m_delta, det_certify, det_residue, generator_divisors, torsion_report,
    verify_reduced_template, verify_sigma_closed_forms, verify_small_reduced_template, Variant,
};
use crate::error::{EngineError, ParamError};
use crate::params::{derived_scalars, FieldParams};
use crate::sigma::{sigma_closed_form, sigma_r_minus_1};

const DEFAULT_MAX_R: usize = 64;

#[derive(Parser)]
#[command(
    name = "cuspforge",
    about = "Cuspidal divisor groups and exponent-matrix certificates for Drinfeld modular curves",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ParamArgs {
    /// Size of the coefficient field F_q (prime power).
    #[arg(long, default_value_t = 3)]
    q: u64,
    /// Degree of the prime p.
    #[arg(long = "deg-p", default_value_t = 1)]
    deg_p: u32,
    /// Level exponent r.
    #[arg(long)]
    r: usize,
}

impl ParamArgs {
    fn build(&self) -> Result<FieldParams, ParamError> {
        let cap = std::env::var("CUSPFORGE_MAX_R")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(DEFAULT_MAX_R);
        if self.r > cap {
            return Err(ParamError::RCapExceeded { got: self.r, cap });
        }
        FieldParams::new(self.q, self.deg_p, self.r)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Plain,
    Bold,
    H,
    SmallH,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Plain => Variant::Plain,
            VariantArg::Bold => Variant::Bold,
            VariantArg::H => Variant::HReduced,
            VariantArg::SmallH => Variant::SmallHReduced,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate closed cuspidal points with degrees and residue fields.
    Cusps {
        #[command(flatten)]
        params: ParamArgs,
        /// Also count equivalence classes exhaustively (slow for large q, r).
        #[arg(long)]
        exhaustive: bool,
    },
    /// Print the generator divisors of the rational cuspidal group.
    Divisors {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Exponent vector of the delta-quotient of one generator.
    Gmap {
        #[command(flatten)]
        params: ParamArgs,
        /// Generator label as printed by `divisors` (e.g. D0, C2, C4-pC5, D6).
        #[arg(long = "gen")]
        generator: String,
    },
    /// Closed-form sigma row of one generator.
    Sigma {
        #[command(flatten)]
        params: ParamArgs,
        /// Row index 0..=r-1 (gaps between the two index ranges rejected).
        #[arg(long = "gen")]
        generator: usize,
    },
    /// Emit an exponent matrix.
    Matrix {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value = "plain")]
        variant: VariantArg,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        /// Evaluation point for csv output.
        #[arg(long)]
        at: Option<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the two-step reduction and print the row-operation log.
    Reduce {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Determinant certificate det = sign + |p| f(|p|).
    Det {
        #[command(flatten)]
        params: ParamArgs,
        /// Only compute the residue mod |p| (cheap path).
        #[arg(long)]
        residue_only: bool,
    },
    /// Cross-check closed forms against the pipeline oracle and the reduced
    /// matrix against its row templates.
    Verify {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Full structure report for the rational cuspidal group.
    Report {
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Emit(#[from] crate::emit::EmitError),
    #[error(transparent)]
    Delta(#[from] crate::error::DeltaError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
    #[error("verification failed:\n{0}")]
    VerifyFailed(String),
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Engine(EngineError::Param(_)) => 1,
            AppError::Engine(_) | AppError::VerifyFailed(_) => 2,
            _ => 1,
        }
    }
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help/version are success paths
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("cuspforge: {e}");
            e.exit_code()
        }
    }
}

fn emit(out: &Option<PathBuf>, body: &str) -> Result<(), AppError> {
    match out {
        Some(path) => std::fs::write(path, body)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
        }
    }
    Ok(())
}

fn dispatch(cmd: Command) -> Result<(), AppError> {
    match cmd {
        Command::Cusps { params, exhaustive } => {
            let p = params.build()?;
            let points = enumerate_closed_points(&p);
            for pt in &points {
                println!(
                    "point {}: d_exp = {}, degree = {}, residue field = {}",
                    pt.index, pt.d_exp, pt.degree, pt.residue_field
                );
            }
            let total: BigInt = points.iter().map(|pt| pt.degree.clone()).sum();
            println!("closed points: {}, total cusp count: {total}", points.len());
            if exhaustive {
                let counts = enumerate_cusp_classes(&p)?;
                for (j, c) in counts.iter().enumerate() {
                    println!("height |p|^{j}: {c} classes");
                }
            }
            Ok(())
        }
        Command::Divisors { params } => {
            let p = params.build()?;
            for (label, div, ord) in generator_divisors(&p)? {
                let coeffs: Vec<String> = div.coeffs().iter().map(|c| c.to_string()).collect();
                println!(
                    "{label}: order {ord}, coeffs [{}], degree {}",
                    coeffs.join(", "),
                    weighted_degree(&div, &p)
                );
            }
            Ok(())
        }
        Command::Gmap { params, generator } => {
            let p = params.build()?;
            let gens = generator_divisors(&p)?;
            let (label, div, ord) = gens
                .into_iter()
                .find(|(l, _, _)| *l == generator)
                .ok_or_else(|| AppError::Usage(format!("unknown generator {generator}")))?;
            let quot = g_map(&div, &p)?;
            let exps: Vec<String> = quot.r_exps.iter().map(|x| x.to_string()).collect();
            println!("{label} (order {ord}): r = [{}]", exps.join(", "));
            let cleared = crate::delta::integer_exponents(&div, &ord, &p)?;
            let es: Vec<String> = cleared.iter().map(|x| x.to_string()).collect();
            println!("cleared integer exponents: [{}]", es.join(", "));
            Ok(())
        }
        Command::Sigma { params, generator } => {
            let p = params.build()?;
            let s = if generator == p.r() - 1 {
                sigma_r_minus_1(&p)?
            } else {
                sigma_closed_form(generator, &p)?
            };
            for (k, e) in s.entries.iter().enumerate() {
                println!("sigma_{k} = {e}");
            }
            if !num_traits::One::is_one(&s.prefactor) {
                println!("prefactor: {}", s.prefactor);
            }
            println!("tensor denominator: {}", s.tensor_denom);
            Ok(())
        }
        Command::Matrix {
            params,
            variant,
            format,
            at,
            out,
        } => {
            let p = params.build()?;
            let m = build_m_delta(&p, variant.into())?;
            let body = match format {
                FormatArg::Json => matrix_to_json_string(&m)?,
                FormatArg::Text => matrix_to_text(&m.body),
                FormatArg::Csv => {
                    let at = at.ok_or_else(|| {
                        AppError::Usage("--format csv requires --at <point>".into())
                    })?;
                    matrix_to_csv(&m.body, &BigInt::from(at))
                }
            };
            emit(&out, &body)
        }
        Command::Reduce { params } => {
            let p = params.build()?;
            let m = build_m_delta(&p, Variant::SmallHReduced)?;
            for line in &m.provenance {
                println!("# {line}");
            }
            print!("{}", matrix_to_text(&m.body));
            Ok(())
        }
        Command::Det {
            params,
            residue_only,
        } => {
            let p = params.build()?;
            if residue_only {
                println!("det mod |p| = {}", det_residue(&p)?);
                return Ok(());
            }
            let cert = det_certify(&p)?;
            println!("{}", serde_json::to_string_pretty(&cert).expect("serializable"));
            Ok(())
        }
        Command::Verify { params } => {
            let p = params.build()?;
            let mut problems = verify_sigma_closed_forms(&p)?;
            if p.r() >= 7 {
                let h = build_m_delta(&p, Variant::HReduced)?;
                let rep = verify_reduced_template(&h, &p)?;
                problems.extend(rep.mismatches.iter().map(|m| {
                    format!(
                        "reduced template ({}, {}): expected {}, got {}",
                        m.row, m.col, m.expected, m.got
                    )
                }));
                let sh = build_m_delta(&p, Variant::SmallHReduced)?;
                let rep = verify_small_reduced_template(&sh, &p)?;
                problems.extend(rep.mismatches.iter().map(|m| {
                    format!(
                        "small reduced template ({}, {}): expected {}, got {}",
                        m.row, m.col, m.expected, m.got
                    )
                }));
                if rep.corner_residue != Some(1) && rep.corner_residue != Some(-1) {
                    problems.push(format!(
                        "corner residue {:?} is not a unit",
                        rep.corner_residue
                    ));
                }
            }
            if problems.is_empty() {
                let (m, n) = derived_scalars(&p);
                println!(
                    "verify ok: q = {}, deg p = {}, r = {}, M = {m}, N = {n}",
                    p.q(),
                    p.deg_p(),
                    p.r()
                );
                Ok(())
            } else {
                Err(AppError::VerifyFailed(problems.join("\n")))
            }
        }
        Command::Report { params } => {
            let p = params.build()?;
            let rep = torsion_report(&p)?;
            println!("{}", serde_json::to_string_pretty(&rep).expect("serializable"));
            Ok(())
        }
    }
}
