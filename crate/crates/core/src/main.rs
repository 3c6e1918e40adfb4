use agroup::constructions::{search_family, FamilyParams};
use agroup::expr::GroupExpr;
use agroup::group::Limits;
use agroup::report::{decompose_group, verify_family, SearchReport};
use agroup::Error;
use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

const GROUP_SYNTAX: &str = "\
Group expressions (for `decompose`):
  cyclic(n)               cyclic group C_n
  field(p,a)              additive group of F_{p^a}
  scalar(p,a,m)           F_{p^a}+ : C_m, generator acting by a unit of order m
  csd(n,m,k)              C_n : C_m, generator acting by x -> k*x
  direct(G,H)             direct product
  pair(p,q,a,b)           (F_{p^a}+ : C_q) x (F_{q^b}+ : C_p)
  family(p,q,r,a,b)       the family group; `p,q,r,a,b` is shorthand
  heis3()                 (C_3 x C_3) : C_3

Exit codes: 0 success, 1 invalid input, 2 a check failed, 3 resource cap.";

#[derive(Parser)]
#[command(name = "agroup", version, about = "A-groups, A'-groups and the metabelian counterexample family", after_help = GROUP_SYNTAX)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Cap on the number of group elements enumerated.
    #[arg(long, global = true, default_value_t = agroup::group::DEFAULT_ELEMENT_CAP)]
    cap: u64,
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build G(p,q,r;a,b) and check that it is a metabelian A-group which is not an A'-group.
    Verify {
        /// Parameters as "p,q,r,a,b".
        params: String,
    },
    /// List family parameters with group order at most N.
    Search {
        #[arg(long, value_name = "N")]
        max_order: u64,
    },
    /// Split a one- or two-prime A-group as K_p x K_q.
    Decompose {
        /// Group expression, see below.
        group: String,
    },
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::BadParams(_) | Error::NonPrime(_) | Error::OrderDoesNotDivide { .. } | Error::InvalidAction(_) => 1,
        e if e.is_cap() => 3,
        _ => 2,
    }
}

fn emit(cli: &Cli, body: &str) -> Result<(), ExitCode> {
    match &cli.out {
        Some(path) => std::fs::write(path, body).map_err(|e| {
            eprintln!("error: cannot write {}: {e}", path.display());
            ExitCode::from(2)
        }),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(exit_code_for(&e))
}

fn run(cli: &Cli) -> Result<ExitCode, ExitCode> {
    let limits = Limits { element_cap: cli.cap, ..Limits::default() };
    match &cli.command {
        Command::Verify { params } => {
            let params: FamilyParams = params.parse().map_err(fail)?;
            let report = verify_family(params, limits).map_err(fail)?;
            let body = if cli.json { report.to_json() } else { report.render_text() };
            emit(cli, &body)?;
            Ok(if report.all_pass() { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::Search { max_order } => {
            if *max_order == 0 {
                return Err(fail(Error::BadParams("--max-order must be at least 1".into())));
            }
            let report = SearchReport { max_order: *max_order, entries: search_family(*max_order) };
            let body = if cli.json { report.to_json() } else { report.render_text() };
            emit(cli, &body)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose { group } => {
            let expr: GroupExpr = group.parse().map_err(fail)?;
            let g = expr.build(limits).map_err(fail)?;
            let report = decompose_group(group, &g).map_err(fail)?;
            let body = if cli.json { report.to_json() } else { report.render_text() };
            emit(cli, &body)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    run(&cli).unwrap_or_else(|code| code)
}
