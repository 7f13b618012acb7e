//! `colorlie`: command-line front end for the color Heisenberg-Lie engine.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use colorlie_core::braid::{self, Level};
use colorlie_core::colorlie::{build_algebra_with, run_checks, BuildOptions, Check};
use colorlie_core::exec::configure_threads;
use colorlie_core::fock::{
    self, density_grid_with, find_local_maxima_with, parse_j, symmetrized_density,
};
use colorlie_core::gmat::{self, C02Form};
use colorlie_core::grading::{self, FactorTable};
use colorlie_core::pascal::{specialize_row, triangle_row, truncation_table};
use colorlie_core::{report, Cyclotomic, Exec};

#[derive(Parser)]
#[command(
    name = "colorlie",
    version,
    about = "Exact color Heisenberg-Lie (super)algebra toolkit"
)]
struct Cli {
    /// Run data-parallel loops sequentially
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a commutation-factor table
    Table {
        /// z2, z3, z2xz3, z3xz3 or z2xz3xz3
        #[arg(long, default_value = "z3xz3")]
        group: String,
        #[arg(long, default_value = "j1")]
        j: String,
        #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
        delta: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate and classify valid tables on Z2^p x Z3^q
    Search {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        /// Largest root-of-unity order allowed in entries; defaults to the group order
        #[arg(long)]
        max_order: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump a building block or C matrix
    Mat {
        #[arg(long)]
        name: String,
        #[arg(long, default_value = "j1")]
        j: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build an algebra instance and run its checks
    Algebra {
        #[arg(long)]
        name: String,
        /// all, skew, jacobi, metaabelian, expectations, relations or minimal
        #[arg(long, default_value = "all")]
        check: String,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        /// Use the printed N0''⊗N0 for C_02 instead of the adjoint of C_01
        #[arg(long)]
        printed_c02: bool,
        /// Build A4 from a1 as printed instead of from a4
        #[arg(long)]
        printed_a4: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample the two-particle probability density on a square grid (CSV)
    Density {
        #[arg(long, default_value = "j1")]
        j: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2.0)]
        range: f64,
        #[arg(long, default_value_t = 400)]
        res: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Local maxima of the density by Newton ascent
    Maxima {
        #[arg(long, default_value = "j1")]
        j: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rows of the (j, z) Pascal triangle
    Triangle {
        #[arg(long, default_value_t = 6)]
        n: usize,
        /// sym, 1, j1 or j2
        #[arg(long, default_value = "sym")]
        j: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Zero pattern of (D_1 + ... + D_N)^n at a k-th root of unity
    Truncation {
        #[arg(long)]
        k: u32,
        #[arg(long = "N")]
        sites: usize,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Energy levels of the N-site braided Majorana tower
    Majorana {
        #[arg(long = "N")]
        sites: usize,
        /// Level s, or "inf"
        #[arg(long)]
        s: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Braid relation, roots, intertwiner and bracket reconstruction at level s
    BraidCheck {
        #[arg(long)]
        s: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every self check and print a JSON summary
    Report {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn emit_json(out: Option<&Path>, v: &Value) -> anyhow::Result<()> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    emit(out, &s)
}

/// Rounds to 15 significant digits so repeated runs diff cleanly.
fn sig15(v: f64) -> f64 {
    format!("{v:.14e}").parse().unwrap_or(v)
}

fn table_for(group: &str, j: &Cyclotomic, delta: &Cyclotomic) -> anyhow::Result<FactorTable> {
    let z3 = grading::iterate_z3(&FactorTable::trivial());
    Ok(match group {
        "z2" => grading::iterate_z2(&FactorTable::trivial(), delta)?,
        "z3" => z3,
        "z2xz3" => grading::iterate_z2(&z3, delta)?,
        "z3xz3" => grading::canonical_z3z3(j)?,
        "z2xz3xz3" => grading::canonical_z2z3z3(j, delta)?,
        _ => bail!("unknown group '{group}' (expected z2, z3, z2xz3, z3xz3 or z2xz3xz3)"),
    })
}

fn checks_failed(v: &Value) -> ExitCode {
    eprintln!("checks failed");
    if let Ok(s) = serde_json::to_string(v) {
        eprintln!("{s}");
    }
    ExitCode::FAILURE
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    match cli.cmd {
        Cmd::Table {
            group,
            j,
            delta,
            out,
        } => {
            if delta != 1 && delta != -1 {
                bail!("delta must be 1 or -1");
            }
            let t = table_for(&group, &parse_j(&j)?, &Cyclotomic::from_int(delta))?;
            let valid = grading::validate_table_with(&t, exec)?.is_valid();
            emit_json(
                out.as_deref(),
                &json!({"group": group, "valid": valid, "exact": true, "table": t}),
            )?;
        }
        Cmd::Search {
            p,
            q,
            max_order,
            out,
        } => {
            let order = max_order.unwrap_or(grading::Shape::new(p, q).order() as u32);
            let tables = grading::search_tables_with(p, q, order, grading::DEFAULT_BUDGET, exec)?;
            let classes = grading::classify_inequivalent_with(&tables, exec)?;
            let reps: Vec<&FactorTable> = classes.iter().map(|c| &tables[c[0]]).collect();
            emit_json(
                out.as_deref(),
                &json!({
                    "p": p, "q": q, "max_order": order,
                    "tables": tables.len(), "classes": classes.len(),
                    "members": classes, "representatives": reps, "exact": true,
                }),
            )?;
        }
        Cmd::Mat { name, j, out } => {
            let m = gmat::named_matrix(&name, &parse_j(&j)?)?;
            emit_json(
                out.as_deref(),
                &json!({"name": name, "exact": true, "matrix": m}),
            )?;
        }
        Cmd::Algebra {
            name,
            check,
            n_max,
            printed_c02,
            printed_a4,
            out,
        } => {
            let opts = BuildOptions {
                n_max,
                a4_from_a1: printed_a4,
                c02: if printed_c02 {
                    C02Form::NZero
                } else {
                    C02Form::Adjoint
                },
                ..Default::default()
            };
            let alg = build_algebra_with(&name, &opts)?;
            let r = run_checks(&alg, &Check::parse(&check)?, exec);
            let v = serde_json::to_value(&r)?;
            emit_json(out.as_deref(), &v)?;
            if !r.passed() {
                return Ok(checks_failed(&v));
            }
        }
        Cmd::Density {
            j,
            n,
            range,
            res,
            out,
        } => {
            let f = symmetrized_density(n, &parse_j(&j)?, 8.max(n + 2))?;
            let g = density_grid_with(&f, range, res, exec)?;
            emit(out.as_deref(), &g.to_csv())?;
        }
        Cmd::Maxima { j, n, out } => {
            let f = symmetrized_density(n, &parse_j(&j)?, 8.max(n + 2))?;
            let r = find_local_maxima_with(&f, &fock::default_seeds(), exec);
            let list: Vec<Value> = r
                .maxima
                .iter()
                .map(|m| json!({"x": sig15(m.x), "y": sig15(m.y), "value": sig15(m.value), "exact": false}))
                .collect();
            emit_json(out.as_deref(), &Value::Array(list))?;
        }
        Cmd::Triangle { n, j, format, out } => {
            let rows: Vec<Vec<String>> = (0..=n)
                .map(|k| {
                    let row = triangle_row(k);
                    Ok(match j.as_str() {
                        "sym" => row.coeffs.iter().map(|c| c.to_string()).collect(),
                        other => specialize_row(&row, &parse_j(other)?)?
                            .iter()
                            .map(|c| c.to_string())
                            .collect(),
                    })
                })
                .collect::<anyhow::Result<_>>()?;
            match format {
                Format::Json => emit_json(
                    out.as_deref(),
                    &json!({"j": j, "exact": true, "rows": rows}),
                )?,
                Format::Text => {
                    let w = rows
                        .iter()
                        .flatten()
                        .map(|s| s.chars().count())
                        .max()
                        .unwrap_or(1);
                    let mut s = String::new();
                    for (k, r) in rows.iter().enumerate() {
                        let cells: Vec<String> = r.iter().map(|c| format!("{c:>w$}")).collect();
                        s.push_str(&format!("n={k}: {}\n", cells.join("  ")));
                    }
                    emit(out.as_deref(), &s)?;
                }
            }
        }
        Cmd::Truncation {
            k,
            sites,
            max_n,
            out,
        } => {
            let t = truncation_table(k, sites, max_n)?;
            emit_json(out.as_deref(), &serde_json::to_value(&t)?)?;
        }
        Cmd::Majorana { sites, s, out } => {
            let spectrum = braid::chain_spectrum(sites, Level::parse(&s)?)?;
            emit_json(out.as_deref(), &serde_json::to_value(&spectrum)?)?;
        }
        Cmd::BraidCheck { s, out } => {
            let level = Level::parse(&s)?;
            let v = braid_check(level)?;
            emit_json(out.as_deref(), &v)?;
            if v["passed"] != json!(true) {
                return Ok(checks_failed(&v));
            }
        }
        Cmd::Report { out } => {
            let r = report::run_report(exec);
            let v = serde_json::to_value(&r)?;
            emit_json(out.as_deref(), &v)?;
            if !r.passed {
                return Ok(checks_failed(&v));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn braid_check(level: Level) -> anyhow::Result<Value> {
    let t = braid::t_s(level);
    let minus_t = -&t;
    let symbolic = braid::braid_relation_symbolic();
    let at_t = braid::braid_relation_at(&t)?;
    let (power, root_level) = match level {
        Level::Finite(s) => (
            braid::b_power_is_identity(s)?,
            minus_t.level().ok().map(|l| l.0),
        ),
        Level::Infinite => (true, None),
    };
    let level_ok = match level {
        Level::Finite(s) => root_level == Some(s),
        Level::Infinite => t == Cyclotomic::from_int(-1),
    };
    let intertwines = braid::intertwining_factor(level)? == Some(minus_t.clone());
    let tensor = braid::braided_tensor_check(level)?;
    let recon = match level {
        Level::Finite(s @ (3 | 6)) => Some(braid::reconstruct_color_bracket(s)?),
        _ => None,
    };
    let passed = symbolic
        && at_t
        && power
        && level_ok
        && intertwines
        && tensor.holds
        && tensor.r_matrix_form
        && recon.as_ref().is_none_or(|r| r.passed());
    Ok(json!({
        "level": level,
        "t": t.to_string(),
        "braid_relation_symbolic": symbolic,
        "braid_relation_at_t": at_t,
        "b_power_identity": power,
        "root_level": root_level,
        "intertwiner": intertwines,
        "braided_tensor": tensor,
        "reconstruction": recon,
        "exact": true,
        "passed": passed,
    }))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(v) = std::env::var("COLORLIE_THREADS") {
        match v.parse::<usize>() {
            Ok(n) if n > 0 => {
                if let Err(e) = configure_threads(n) {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            _ => {
                eprintln!("error: COLORLIE_THREADS must be a positive integer");
                return ExitCode::from(2);
            }
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
