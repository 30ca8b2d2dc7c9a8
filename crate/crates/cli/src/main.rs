//! `artin`: quotient maps and Frobenius invariants over finite fields.
//!
//! Exit codes: 0 success, 2 invalid input, 3 theorem violation.

mod commands;
mod render;

use std::process::ExitCode;
use std::sync::Arc;

use artin_core::ff::{field_of_order, make_field, FieldCtx};
use artin_core::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{Method, Output};

#[derive(Parser, Debug)]
#[command(name = "artin", version, about = "Quotient maps of subgroups of PGL2(F_q) and their Frobenius invariants")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// The field, as `--q 9`, `--q 3^2`, or `--p 3 --n 2`.
#[derive(Args, Debug)]
struct FieldArgs {
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    n: Option<u32>,
}

impl FieldArgs {
    fn field(&self) -> Result<Arc<FieldCtx>> {
        match (&self.q, self.p) {
            (Some(q), None) => match q.split_once('^') {
                Some((p, n)) => make_field(parse_num(p)?, parse_num(n)? as u32),
                None => field_of_order(parse_num(q)?),
            },
            (None, Some(p)) => make_field(p, self.n.unwrap_or(1)),
            (Some(_), Some(_)) => Err(Error::Invalid("give either --q or --p/--n".into())),
            (None, None) => Err(Error::Invalid("missing --q".into())),
        }
    }
}

fn parse_num(s: &str) -> Result<u64> {
    s.trim().parse().map_err(|_| Error::Invalid(format!("bad integer {s:?}")))
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Modulus and primitive element of F_q.
    FieldInfo {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Frobenius invariant of tau for the group's quotient map.
    Inv {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// The cubic residue symbol [tau/q] in {0, 1, 2}.
    Symbol {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        /// Use the other primitive cube root of unity.
        #[arg(long)]
        swap_omega: bool,
    },
    /// Named quotient map and its irregular values.
    Quotient {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        group: String,
    },
    /// Verifies the named map, or --num/--den, as a quotient map for the group.
    VerifyQuotient {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        group: String,
        #[arg(long)]
        num: Option<String>,
        #[arg(long)]
        den: Option<String>,
    },
    /// h with Q_G = h o Q_H for H = --group inside G = --over.
    Relate {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        group: String,
        #[arg(long)]
        over: String,
    },
    /// Short orbits over F_(q^2), or the orbit of --point.
    Orbits {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        group: String,
        #[arg(long)]
        point: Option<String>,
    },
    /// Per-class counts of regular values.
    Census {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        group: String,
    },
    /// Whether the additive polynomial with --coeffs (a0, ..., ad) splits in F_q.
    Split {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "P")]
        big_p: Option<u64>,
        #[arg(long)]
        coeffs: String,
    },
    /// Q_W and Q_Y for the F_P-span of --basis.
    Reciprocity {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "P")]
        big_p: Option<u64>,
        #[arg(long)]
        basis: String,
    },
    /// Factorization shape of x^q(cx+d) - (ax+b).
    FactorShape {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Dickson form, iota and order of a matrix.
    Classify {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Classes of order >= 3 in PGL2(F_q) against their values in F_q^x.
    Bijection {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Runs an acceptance suite: `all`, a number 1-11, or a suite name.
    Check {
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 9)]
        qmax: u64,
    },
}

fn dispatch(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::FieldInfo { field } => commands::field_info(&field.field()?),
        Command::Inv { field, group, tau, method } => commands::inv(&field.field()?, group, tau, *method),
        Command::Symbol { field, tau, swap_omega } => commands::symbol(&field.field()?, tau, *swap_omega),
        Command::Quotient { field, group } => commands::quotient(&field.field()?, group),
        Command::VerifyQuotient { field, group, num, den } => {
            commands::verify(&field.field()?, group, num.as_deref(), den.as_deref())
        }
        Command::Relate { field, group, over } => commands::relate_maps(&field.field()?, group, over),
        Command::Orbits { field, group, point } => commands::orbits(&field.field()?, group, point.as_deref()),
        Command::Census { field, group } => commands::census_table(&field.field()?, group),
        Command::Split { field, big_p, coeffs } => commands::split(&field.field()?, *big_p, coeffs),
        Command::Reciprocity { field, big_p, basis } => commands::reciprocity(&field.field()?, *big_p, basis),
        Command::FactorShape { field, matrix } => commands::factor_shape(&field.field()?, matrix),
        Command::Classify { field, matrix } => commands::classify(&field.field()?, matrix),
        Command::Bijection { field } => commands::bijection(&field.field()?),
        Command::Check { suite, qmax } => commands::check(suite, *qmax),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Violation(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", out.json),
                Format::Text => println!("{}", out.text),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
