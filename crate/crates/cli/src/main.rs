//! Batch front-end: enumerations, correspondence tables and verification
//! suites as JSON, CSV or markdown tables.

mod commands;
mod show;
mod table;
mod verify;

use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use gl2modp::Ctx;

use commands::{ModuleArgs, Report, Usage};
use table::Format;
use verify::Suite;

/// Mod-p Langlands parameters for GL_2. Field elements are written `0` or
/// `g^k` in a fixed generator of F_{q^{2m}}; plain integers are read as
/// elements of the prime field.
#[derive(Parser)]
#[command(name = "gl2modp", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct Common {
    /// Residue characteristic, an odd prime.
    #[arg(long, global = true, default_value_t = 3)]
    p: u32,
    /// Residue degree: q = p^f.
    #[arg(long, global = true, default_value_t = 1)]
    f: u32,
    /// Coefficients live in F_{q^m}.
    #[arg(long = "ext", visible_alias = "m", global = true, default_value_t = 2)]
    ext: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Md)]
    format: Format,
    /// Seed for sampled units in `phigamma`.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Tame inertial types by determinant.
    ///
    /// Columns: det, niveau, exponents, type, generic (niveau 2 with f > 1).
    Types {
        /// Determinant exponent d, for omega_f^d.
        #[arg(long)]
        det: Option<u32>,
        #[arg(long)]
        niveau: Option<u32>,
    },
    /// Points of X(q) over the coefficient field with their representations.
    ///
    /// Columns: n, z2, kind, component, position, closed, rep.
    Xscheme(FiberArgs),
    /// Points of S(q) over the coefficient field.
    ///
    /// Columns: n, z2, component, pair, weyl, regular, coords, supersingular.
    Satake(FiberArgs),
    /// The morphism L on points of S(q).
    ///
    /// Columns: n, z2, component, coords, image, rep.
    Lmap(FiberArgs),
    /// Supersingular points with central data, image under L and representation.
    ///
    /// Columns: n, z2, component, coords, gamma, u2, image, rep.
    Correspond {
        #[arg(long)]
        z2: Option<String>,
        /// Include non-supersingular points.
        #[arg(long)]
        all: bool,
    },
    /// Hecke parameters read off L against the twisted module parameters.
    ///
    /// Columns: h, s, lambda, gamma_l, u2_l, gamma_gk, u2_gk, pass.
    /// Exits 1 if any row fails.
    CompareGk {
        #[arg(long)]
        h: Option<u32>,
    },
    /// Digit-condition certificates for generic niveau-2 types (f >= 2).
    ///
    /// Columns: tau, type, r, s, digits, test, weight, cyclic, chain. Tested
    /// weights are F(r)det^s, F(q-1-r)det^{s+r}, F(q-1-r)det^{s+r-1} (marked
    /// with a prime) and the identity-tuple weight. The last two columns say
    /// whether the weight is certified outside W(tau) under each reading of
    /// the linking condition.
    Serre,
    /// Lubin-Tate (phi, Gamma)-modules over truncated Laurent series.
    #[command(subcommand)]
    Phigamma(PhiCommand),
    /// Runs invariant suites; exits 1 on any failure.
    ///
    /// Columns: suite, check, status, detail.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
}

#[derive(Args)]
struct FiberArgs {
    /// Fiber index n, for d_n = 1 + n.
    #[arg(long)]
    n: Option<u32>,
    /// Determinant scalar; all units of F_{q^m} if omitted.
    #[arg(long)]
    z2: Option<String>,
}

#[derive(Subcommand)]
enum PhiCommand {
    /// Matrix entries of phi and of Gamma at sampled units.
    ///
    /// Columns: matrix, unit, row, col, val, prec, coeffs. The entry is
    /// t^val * sum coeffs[i] t^i + O(t^prec); val is null for zero.
    Build {
        #[command(flatten)]
        module: ModuleFlags,
        #[arg(long, default_value_t = 2)]
        units: usize,
    },
    /// Semilinearity and determinant checks; exits 1 on failure.
    ///
    /// Columns: q, n, h, s, lambda, tprec, units, cocycle, commutation,
    /// fbar_in_fq, residual_degree, det_phi, det_gamma.
    Check {
        #[command(flatten)]
        module: ModuleFlags,
        #[arg(long, default_value_t = 6)]
        units: usize,
    },
    /// The psi-stable lattice of the rank-two module and the torsion-dual
    /// relations; exits 1 unless psi-stable.
    ///
    /// Columns: q, h, k, hexp, h2, psi_stable, dual_first, dual_second.
    Lattice {
        #[arg(long)]
        h: Option<u32>,
    },
}

#[derive(Args)]
struct ModuleFlags {
    /// Rank, 1 to 3.
    #[arg(long, default_value_t = 2)]
    n: u32,
    /// Exponent of omega_{nf}; q-primitive for n > 1.
    #[arg(long, default_value_t = 1)]
    h: u64,
    /// Twist by omega_f^s.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    s: i64,
    /// Unramified scalar; lambda^n must lie in F_{q^m}.
    #[arg(long, default_value = "1")]
    lambda: String,
    /// t-adic precision N.
    #[arg(long, default_value_t = gl2modp::phigamma::DEFAULT_TPREC)]
    tprec: i64,
    /// p-adic precision K of o_F; the smallest sufficient value if omitted.
    #[arg(long)]
    kprec: Option<u32>,
}

impl ModuleFlags {
    fn args(&self) -> ModuleArgs<'_> {
        ModuleArgs { n: self.n, h: self.h, s: self.s, lambda: &self.lambda, tprec: self.tprec, kprec: self.kprec }
    }
}

fn run(cli: &Cli) -> Result<Report> {
    let c = &cli.common;
    let ctx = Ctx::new(c.p, c.f, c.ext)?;
    let seed = c.seed.unwrap_or(0);
    match &cli.cmd {
        Command::Types { det, niveau } => commands::types(&ctx, *det, *niveau),
        Command::Xscheme(a) => commands::xscheme(&ctx, a.n, a.z2.as_deref()),
        Command::Satake(a) => commands::satake(&ctx, a.n, a.z2.as_deref()),
        Command::Lmap(a) => commands::lmap(&ctx, a.n, a.z2.as_deref()),
        Command::Correspond { z2, all } => commands::correspond(&ctx, z2.as_deref(), *all),
        Command::CompareGk { h } => commands::compare(&ctx, *h),
        Command::Serre => commands::serre(&ctx),
        Command::Phigamma(PhiCommand::Build { module, units }) => {
            commands::phigamma_build(&ctx, &module.args(), *units, seed)
        }
        Command::Phigamma(PhiCommand::Check { module, units }) => {
            commands::phigamma_check(&ctx, &module.args(), *units, seed)
        }
        Command::Phigamma(PhiCommand::Lattice { h }) => commands::phigamma_lattice(&ctx, *h),
        Command::Verify { suite } => verify::run(&ctx, *suite),
    }
}

fn is_usage(e: &anyhow::Error) -> bool {
    use gl2modp::Error;
    e.is::<Usage>()
        || matches!(
            e.downcast_ref::<Error>(),
            Some(Error::InvalidParameter(_) | Error::InvalidPoint(_) | Error::Precision(_))
        )
}

fn emit(report: &Report, format: Format) -> Result<()> {
    let mut buf = Vec::new();
    report.table.write(format, &mut buf)?;
    let mut out = io::stdout().lock();
    match out.write_all(&buf).and_then(|_| out.flush()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|r| emit(&r, cli.common.format).map(|_| r.ok));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
    }
}
