//! `ahecke`: Kazhdan-Lusztig polynomials, the asymptotic ring `J` of affine
//! A1/A2, and the SL(2) cell computations, from the command line.
//!
//! Exit codes: 0 success, 1 a verification found a failing check, 2 usage
//! error, 3 refusal (result not certified, radius or depth too small).

mod algebra;
mod report;
mod sl2;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dashu_ratio::RBig;

use asymptotic_hecke::hecke::KLTable;
use asymptotic_hecke::weyl::{Group, GroupDescriptor, GroupElement};
use asymptotic_hecke::Error;

use report::{Format, Report};

pub const CACHE_ENV: &str = "AHECKE_CACHE_DIR";

#[derive(Parser, Debug)]
#[command(
    name = "ahecke",
    version,
    about = "Exact computations in affine Hecke algebras and their asymptotic ring"
)]
struct Cli {
    #[command(flatten)]
    cfg: RunConfig,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Group type: A1~ or A2~.
    #[arg(long = "type", global = true, default_value = "A1~")]
    pub group_type: String,
    /// Use the extended affine Weyl group W ⋊ Ω.
    #[arg(long, global = true)]
    pub extended: bool,
    /// Working radius (maximal length); each command has its own default.
    #[arg(long, global = true)]
    pub radius: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = BasisArg::Signed)]
    pub basis: BasisArg,
    /// Positive rational parameter, e.g. 2 or 7/2.
    #[arg(long, global = true, value_parser = parse_positive_rational)]
    pub q: Option<RBig>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Directory for cached KL tables.
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Print a-values that the scan radius does not certify.
    #[arg(long, global = true)]
    pub allow_uncertified: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    /// `C_w` with the sign twist.
    Signed,
    /// Classical `C'_w`.
    Unsigned,
}

impl BasisArg {
    pub fn signed(self) -> bool {
        self == BasisArg::Signed
    }

    pub fn name(self) -> &'static str {
        match self {
            BasisArg::Signed => "signed",
            BasisArg::Unsigned => "unsigned",
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the elements of the ball of the given radius.
    Group,
    /// Kazhdan-Lusztig polynomial P_{y,w}.
    Kl {
        #[arg(long)]
        y: String,
        #[arg(long)]
        w: String,
    },
    /// Expand C_x C_y in the KL basis.
    Hmul {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// One structure constant h_{x,y,z}.
    Hconst {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        z: String,
    },
    /// a-function of one element, or of the whole ball.
    Afn {
        #[arg(long)]
        z: Option<String>,
        /// Scan radius; defaults to the certification bound.
        #[arg(long)]
        scan: Option<usize>,
    },
    /// γ_{x,y,z}, or the row γ_{x,y,·}.
    Gamma {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        z: Option<String>,
    },
    /// The product t_x t_y in J.
    Jmul {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Distinguished involutions within the radius.
    Dinv,
    /// φ(C_x) in J ⊗ A, or its specialization at --q.
    Phi {
        #[arg(long)]
        x: String,
    },
    /// Check φ(C_x)φ(C_y) = φ(C_x C_y) on all pairs with ℓ(x)+ℓ(y) ≤ bound;
    /// with --q also the rank of the specialized images.
    PhiCheck {
        #[arg(long, default_value_t = 4)]
        bound: usize,
        #[arg(long, default_value_t = 4)]
        rank_ball: usize,
    },
    /// Cell computations in SL(2).
    Sl2 {
        #[command(subcommand)]
        cmd: sl2::Sl2Command,
    },
}

pub fn parse_positive_rational(s: &str) -> Result<RBig, String> {
    let q = RBig::from_str(s.trim()).map_err(|e| format!("`{s}` is not a rational number: {e}"))?;
    if q <= RBig::ZERO {
        return Err(format!("`{s}` is not positive"));
    }
    Ok(q)
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Refusal(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Refusal(_) => 3,
            CliError::Core(e) => match e {
                Error::RadiusExceeded { .. }
                | Error::DepthTooSmall { .. }
                | Error::BudgetExceeded { .. }
                | Error::DivergentTail(_) => 3,
                Error::NotInAPlus { .. } | Error::NonInvertibleTerm => 1,
                _ => 2,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) | CliError::Refusal(m) => m.clone(),
            CliError::Core(e) => e.to_string(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Shared state of one invocation.
pub struct Ctx {
    pub cfg: RunConfig,
    pub group: Group,
}

impl Ctx {
    fn new(cfg: RunConfig) -> CliResult<Self> {
        let desc = GroupDescriptor::parse(&cfg.group_type, cfg.extended)
            .map_err(|e| CliError::Usage(format!("--type: {e}")))?;
        let group = Group::new(&desc).map_err(|e| CliError::Usage(format!("--type: {e}")))?;
        Ok(Self { cfg, group })
    }

    pub fn elem(&self, flag: &str, s: &str) -> CliResult<GroupElement> {
        self.group
            .parse_element(s)
            .map_err(|e| CliError::Usage(format!("--{flag}: {e}")))
    }

    /// The configured radius, or `default`.
    pub fn radius_or(&self, default: usize) -> usize {
        self.cfg.radius.unwrap_or(default)
    }

    /// KL table of the given radius, through the cache when one is configured.
    pub fn table(&self, radius: usize) -> CliResult<Arc<KLTable>> {
        let t = match &self.cfg.cache_dir {
            Some(dir) => KLTable::load_or_build(&self.group, radius, dir)?,
            None => KLTable::build(&self.group, radius),
        };
        Ok(Arc::new(t))
    }

    pub fn basis(&self) -> Option<&'static str> {
        Some(self.cfg.basis.name())
    }

    pub fn signed(&self) -> bool {
        self.cfg.basis.signed()
    }
}

fn run(cli: Cli) -> CliResult<Report> {
    if let Command::Sl2 { cmd } = &cli.cmd {
        return sl2::run(&cli.cfg, cmd);
    }
    let ctx = Ctx::new(cli.cfg)?;
    match cli.cmd {
        Command::Group => algebra::group(&ctx),
        Command::Kl { y, w } => algebra::kl(&ctx, &y, &w),
        Command::Hmul { x, y } => algebra::hmul(&ctx, &x, &y),
        Command::Hconst { x, y, z } => algebra::hconst(&ctx, &x, &y, &z),
        Command::Afn { z, scan } => algebra::afn(&ctx, z.as_deref(), scan),
        Command::Gamma { x, y, z } => algebra::gamma(&ctx, &x, &y, z.as_deref()),
        Command::Jmul { x, y } => algebra::jmul(&ctx, &x, &y),
        Command::Dinv => algebra::dinv(&ctx),
        Command::Phi { x } => algebra::phi(&ctx, &x),
        Command::PhiCheck { bound, rank_ball } => algebra::phi_check(&ctx, bound, rank_ball),
        Command::Sl2 { .. } => unreachable!(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let format = cli.cfg.format;
    match run(cli) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            if let Err(e) = report.write(format, &mut out).and_then(|_| out.flush()) {
                eprintln!("error: writing output: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if report.failed() { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
