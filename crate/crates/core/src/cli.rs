//! The `nilorbit` command line.
//!
//! Exit codes: `0` on success, `1` when a mathematical hypothesis is violated
//! (bad characteristic, unsupported type, budget, failed verification) and
//! `2` for usage errors.

use std::io::Write;

use clap::{Parser, Subcommand};
use itertools::Itertools;
use serde_json::json;

use crate::error::Error;
use crate::frobenius::{diagram_stability, frobenius_classes, orbit_action, rationality_report, FrobeniusDescriptor};
use crate::oracle::{budget_from_env, verify_orbit_stability, FiniteField, MatrixFrobenius};
use crate::orbits::{closure, closure_hasse, enumerate_orbit_labels, OrbitLabel};
use crate::roottypes::DynkinType;
use crate::wdd::{orbit_dimension, weighted_diagram, WeightedDynkinDiagram};

#[derive(Parser, Debug)]
#[command(name = "nilorbit", version, about = "Nilpotent orbits, weighted Dynkin diagrams and Frobenius stability")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the nilpotent orbits of a type-A or type-D algebra.
    Orbits {
        #[arg(long = "type")]
        dynkin_type: DynkinType,
        #[arg(long)]
        json: bool,
    },
    /// Weighted Dynkin diagram of one orbit.
    Diagram {
        #[arg(long)]
        orbit: OrbitLabel,
        #[arg(long)]
        json: bool,
    },
    /// Stability and rational points of every orbit under a Frobenius morphism.
    Stability {
        #[arg(long = "type")]
        dynkin_type: DynkinType,
        #[arg(long)]
        frobenius: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        /// Diagram JSON, for types without built-in orbit data.
        #[arg(long)]
        diagram: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// The permutation of orbits induced by a Frobenius morphism.
    Action {
        #[arg(long = "type")]
        dynkin_type: DynkinType,
        #[arg(long)]
        frobenius: String,
        #[arg(long)]
        json: bool,
    },
    /// Orbits in the closure of a type-A orbit.
    Closure {
        #[arg(long)]
        orbit: OrbitLabel,
        /// Emit the Hasse diagram in Graphviz DOT.
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Frobenius morphism classes of a type.
    Frobenius {
        #[arg(long = "type")]
        dynkin_type: DynkinType,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive finite-field check that a Frobenius map preserves Jordan types.
    Verify {
        #[arg(long)]
        n: usize,
        /// Field size, p or p^2.
        #[arg(long)]
        q: u32,
        #[arg(long, default_value = "standard")]
        map: MatrixFrobenius,
        /// Cap on q^(n^2); defaults to NILORBIT_BUDGET or the built-in default.
        #[arg(long)]
        budget: Option<u128>,
        #[arg(long)]
        json: bool,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::InvalidRank { .. }
        | Error::InvalidLabel(_)
        | Error::InvalidDiagram(_)
        | Error::UnknownFrobenius { .. }
        | Error::TypeMismatch { .. } => 2,
        _ => 1,
    }
}

/// Parses `args` (including the program name) and runs one subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

macro_rules! emit {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).map_err(|e| Error::Parse(format!("write failed: {e}")))?
    };
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Error> {
    match command {
        Command::Orbits { dynkin_type, json } => {
            let labels = enumerate_orbit_labels(dynkin_type)?;
            if json {
                emit!(out, "{}", serde_json::to_string(&labels).expect("labels serialize"));
            } else {
                for l in labels {
                    emit!(out, "{l}");
                }
            }
        }
        Command::Diagram { orbit, json } => {
            let d = weighted_diagram(&orbit)?;
            let dim = orbit_dimension(&d)?;
            if json {
                let v = json!({"orbit": orbit, "type": d.dynkin_type(), "labels": serde_json::to_value(&d).expect("diagram serializes")["labels"], "dimension": dim});
                emit!(out, "{v}");
            } else {
                emit!(out, "{orbit} {d} dim={dim}");
            }
        }
        Command::Stability { dynkin_type, frobenius, p, q, diagram, json } => {
            let f = FrobeniusDescriptor::by_name(dynkin_type, &frobenius)?;
            if let Some(raw) = diagram {
                let d: WeightedDynkinDiagram =
                    serde_json::from_str(&raw).map_err(|e| Error::InvalidDiagram(e.to_string()))?;
                if d.dynkin_type() != dynkin_type {
                    return Err(Error::TypeMismatch { left: dynkin_type, right: d.dynkin_type() });
                }
                let r = diagram_stability(&d, &f, p, q)?;
                if json {
                    emit!(out, "{}", serde_json::to_string(&r).expect("report serializes"));
                } else {
                    emit!(out, "{} {} stable={} image={} rational_point={}", r.diagram, r.frobenius, r.stable, r.image, r.has_rational_point);
                }
                return Ok(0);
            }
            let report = rationality_report(&f, p, q)?;
            let summary = json!({
                "summary": {
                    "type": report.dynkin_type,
                    "frobenius": report.frobenius,
                    "p": report.p,
                    "q": report.q,
                    "coxeter_number": report.coxeter_number,
                    "nilpotent_cone_restricted": report.nilpotent_cone_restricted,
                    "orbits": report.orbits.len(),
                    "stable": report.stable_count(),
                }
            });
            for r in &report.orbits {
                if json {
                    emit!(out, "{}", serde_json::to_string(r).expect("report serializes"));
                } else {
                    emit!(out, "{} {} stable={} image={} rational_point={}", r.orbit, r.frobenius, r.stable, r.image, r.has_rational_point);
                }
            }
            if json {
                emit!(out, "{summary}");
            } else {
                let s = &summary["summary"];
                emit!(
                    out,
                    "summary type={} frobenius={} p={} q={} coxeter_number={} nilpotent_cone_restricted={} orbits={} stable={}",
                    report.dynkin_type,
                    report.frobenius,
                    s["p"],
                    s["q"],
                    s["coxeter_number"],
                    s["nilpotent_cone_restricted"],
                    s["orbits"],
                    s["stable"]
                );
            }
        }
        Command::Action { dynkin_type, frobenius, json } => {
            let f = FrobeniusDescriptor::by_name(dynkin_type, &frobenius)?;
            let action = orbit_action(&f)?;
            if json {
                let rows: Vec<_> = action.iter().map(|(a, b)| json!({"orbit": a, "image": b})).collect();
                emit!(out, "{}", json!({"frobenius": f.name(), "twist": f.twist().to_string(), "action": rows}));
            } else {
                emit!(out, "# {f}");
                for (a, b) in action {
                    emit!(out, "{a} -> {b}");
                }
            }
        }
        Command::Closure { orbit, dot, json } => {
            if dot {
                write!(out, "{}", closure_hasse(&orbit)?.to_dot()).map_err(|e| Error::Parse(e.to_string()))?;
            } else {
                let labels = closure(&orbit)?;
                if json {
                    emit!(out, "{}", serde_json::to_string(&labels).expect("labels serialize"));
                } else {
                    for l in labels {
                        emit!(out, "{l}");
                    }
                }
            }
        }
        Command::Frobenius { dynkin_type, json } => {
            let classes = frobenius_classes(dynkin_type);
            if json {
                let rows: Vec<_> = classes
                    .iter()
                    .map(|f| json!({"name": f.name(), "twist": f.twist().to_string(), "split": f.is_split()}))
                    .collect();
                emit!(out, "{}", serde_json::Value::Array(rows));
            } else {
                for f in classes {
                    emit!(out, "{f}");
                }
            }
        }
        Command::Verify { n, q, map, budget, json } => {
            let field = FiniteField::with_size(q)?;
            let budget = match budget {
                Some(b) => b,
                None => budget_from_env()?,
            };
            let report = verify_orbit_stability(n, &field, map, budget)?;
            if json {
                emit!(out, "{}", serde_json::to_string(&report).expect("report serializes"));
            } else {
                emit!(out, "n={} q={} map={} nilpotent={} pass={}", report.n, report.field_size, json!(report.map).as_str().unwrap_or(""), report.nilpotent_count, report.pass);
                for (ty, count) in &report.jordan_type_counts {
                    emit!(out, "{ty} {count}");
                }
                if let Some(fp) = &report.fixed_points {
                    for (ty, m) in fp {
                        let shown = m.as_ref().map_or("none".to_string(), |rows| {
                            rows.iter().map(|r| format!("[{}]", r.join(","))).join(",")
                        });
                        emit!(out, "fixed {ty} {shown}");
                    }
                }
                if let Some(c) = &report.counterexample {
                    emit!(out, "counterexample {}", c.iter().map(|r| format!("[{}]", r.join(","))).join(","));
                }
            }
            if !report.pass {
                return Ok(1);
            }
        }
    }
    Ok(0)
}
