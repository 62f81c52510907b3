//! Command-line front end. [`run`] takes the argument list (program name
//! first) and returns the exit code with everything meant for standard
//! output; the binary only prints it.

use std::path::{Path as FsPath, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::flow::{check_feasible, enumerate_paths, Flow, DEFAULT_PATH_CAP};
use crate::instance::{gen_c4_2k2_overline, gen_gk, Instance};
use crate::multicut::{verify_multicut, wgmv_multicut};
use crate::oracle::{exact_max_half_integer_flow, exact_max_integer_flow, exact_min_multicut};
use crate::rational::{self, from_u64};
use crate::report::{document, flow_from_json, run_pipeline, solve_stage, Stage};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SOLVER: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "planemf",
    version,
    about = "Exact plane multiflow maximisation and multicuts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a generated instance.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Solve one pipeline stage and print the flow.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        json: bool,
    },
    /// Primal-dual multicut with its certifying flow.
    Multicut {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Brute-force optimum of a small instance.
    Oracle {
        file: PathBuf,
        #[arg(long, value_enum)]
        what: OracleKind,
    },
    /// Check a flow file against the capacities of an instance.
    Verify {
        file: PathBuf,
        #[arg(long)]
        flow: PathBuf,
    },
    /// Full pipeline with every value, ratio and inequality check.
    Report {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
enum Family {
    /// The ladder instance G_k (k >= 3).
    Gk {
        #[arg(long)]
        k: usize,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// C4 with two crossing demands, with both pairs of sides doubled.
    C4 {
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Frac,
    Half,
    Int,
    PlusOne,
}

impl From<Mode> for Stage {
    fn from(mode: Mode) -> Stage {
        match mode {
            Mode::Frac => Stage::Fractional,
            Mode::Half => Stage::HalfInteger,
            Mode::Int => Stage::Integer,
            Mode::PlusOne => Stage::PlusOne,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OracleKind {
    Mincut,
    Int,
    Half,
}

/// Failure while running a command: solver errors and I/O both exit with 1.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    match execute(cli.command) {
        Ok((code, out)) => (code, out),
        Err(Failure(msg)) => (EXIT_SOLVER, format!("error: {msg}\n")),
    }
}

fn load(path: &FsPath) -> std::result::Result<Instance, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    Instance::parse(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn instance_name(path: &FsPath) -> String {
    path.display().to_string()
}

fn emit(text: String, output: Option<PathBuf>) -> std::result::Result<(i32, String), Failure> {
    match output {
        Some(path) => {
            std::fs::write(&path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            Ok((EXIT_OK, String::new()))
        }
        None => Ok((EXIT_OK, text)),
    }
}

fn flow_text(flow: &Flow) -> String {
    let mut out = String::new();
    for (p, v) in flow.iter() {
        let verts: Vec<String> = p.vertices().iter().map(|v| v.to_string()).collect();
        out.push_str(&format!(
            "demand {} path {} value {}\n",
            p.demand(),
            verts.join(" "),
            rational::display(v)
        ));
    }
    out
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).unwrap_or_default();
    s.push('\n');
    s
}

fn execute(command: Command) -> std::result::Result<(i32, String), Failure> {
    match command {
        Command::Gen { family } => match family {
            Family::Gk { k, output } => emit(gen_gk(k)?.serialize(), output),
            Family::C4 { output } => emit(gen_c4_2k2_overline()?.serialize(), output),
        },
        Command::Solve { file, mode, json } => {
            let inst = load(&file)?;
            let stage = Stage::from(mode);
            let (flow, checks) = solve_stage(&inst, stage)?;
            let ok = checks.values().all(|v| v.as_bool() != Some(false));
            let code = if ok { EXIT_OK } else { EXIT_SOLVER };
            if json {
                Ok((
                    code,
                    pretty(&document(
                        &instance_name(&file),
                        stage.name(),
                        &flow.value(),
                        &flow,
                        &[],
                        checks,
                    )),
                ))
            } else {
                let mut out = format!("value {}\n", rational::display(&flow.value()));
                out.push_str(&flow_text(&flow));
                for (name, v) in &checks {
                    if let Some(b) = v.as_bool() {
                        out.push_str(&format!("check {name} {}\n", if b { "ok" } else { "FAIL" }));
                    }
                }
                Ok((code, out))
            }
        }
        Command::Multicut { file, json } => {
            let inst = load(&file)?;
            let run = wgmv_multicut(&inst)?;
            let cost = run.cost(&inst);
            let flow_value = run.flow.value();
            let mut checks = Map::new();
            checks.insert("multicut".into(), json!(verify_multicut(&inst, &run.q)));
            checks.insert(
                "flow_feasible".into(),
                json!(check_feasible(&inst, &run.flow)?.feasible),
            );
            checks.insert(
                "cost_at_most_twice_flow".into(),
                json!(from_u64(cost) <= from_u64(2) * &flow_value),
            );
            let ok = checks.values().all(|v| v.as_bool() == Some(true));
            let code = if ok { EXIT_OK } else { EXIT_SOLVER };
            if json {
                checks.insert("flow_value".into(), rational::to_json(&flow_value));
                let doc = document(
                    &instance_name(&file),
                    "multicut",
                    &from_u64(cost),
                    &run.flow,
                    &run.q,
                    checks,
                );
                Ok((code, pretty(&doc)))
            } else {
                let q: Vec<String> = run.q.iter().map(|e| e.to_string()).collect();
                let mut out = format!(
                    "multicut {}\ncost {cost}\nflow {}\n",
                    q.join(" "),
                    rational::display(&flow_value)
                );
                out.push_str(&flow_text(&run.flow));
                Ok((code, out))
            }
        }
        Command::Oracle { file, what } => {
            let inst = load(&file)?;
            match what {
                OracleKind::Mincut => {
                    let cut = exact_min_multicut(&inst)?;
                    let q: Vec<String> = cut.q.iter().map(|e| e.to_string()).collect();
                    Ok((EXIT_OK, format!("value {}\nmulticut {}\n", cut.value, q.join(" "))))
                }
                OracleKind::Int | OracleKind::Half => {
                    let paths = enumerate_paths(&inst, DEFAULT_PATH_CAP)?;
                    let o = match what {
                        OracleKind::Int => exact_max_integer_flow(&inst, &paths)?,
                        _ => exact_max_half_integer_flow(&inst, &paths)?,
                    };
                    Ok((
                        EXIT_OK,
                        format!("value {}\n{}", rational::display(&o.value), flow_text(&o.flow)),
                    ))
                }
            }
        }
        Command::Verify { file, flow } => {
            let inst = load(&file)?;
            let text = std::fs::read_to_string(&flow).map_err(|e| Failure(format!("{}: {e}", flow.display())))?;
            let doc: Value = serde_json::from_str(&text)
                .map_err(|e| Failure(format!("{}: line {}: {e}", flow.display(), e.line())))?;
            let f = flow_from_json(&inst, &doc).map_err(|e| Failure(format!("{}: {e}", flow.display())))?;
            let report = check_feasible(&inst, &f)?;
            let mut out = format!(
                "value {}\nmax load {}\n",
                rational::display(&f.value()),
                rational::display(&report.max_load)
            );
            for l in &report.loads {
                out.push_str(&format!(
                    "edge {} load {} capacity {}\n",
                    l.edge,
                    rational::display(&l.load),
                    l.capacity
                ));
            }
            if report.feasible {
                out.push_str("feasible\n");
                Ok((EXIT_OK, out))
            } else {
                let over: Vec<String> = report.overloaded.iter().map(|e| e.to_string()).collect();
                out.push_str(&format!("infeasible: overloaded edges {}\n", over.join(" ")));
                Ok((EXIT_SOLVER, out))
            }
        }
        Command::Report { file, json } => {
            let inst = load(&file)?;
            let report = run_pipeline(&inst)?;
            let code = if report.all_hold() { EXIT_OK } else { EXIT_SOLVER };
            let out = if json {
                pretty(&report.to_json(&instance_name(&file)))
            } else {
                report.to_text()
            };
            Ok((code, out))
        }
    }
}
