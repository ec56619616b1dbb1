//! `twistlab` command-line driver.

mod builtins;
mod checks;
mod spec;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use twistlab_core::coc::{search_cocycles, SEARCH_LIMIT};
use twistlab_core::galg::{to_csv, ExportMode, Tensor2};
use twistlab_core::grp::is_solvable;
use twistlab_core::symp::hierarchy_invertible;

use crate::spec::{parse_spec, Object, SpecFile};

#[derive(Parser)]
#[command(name = "twistlab", version, about = "Exact checks for twists on finite group algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run checks on a named object.
    Verify {
        /// Object name, or a builtin name when no spec file is given.
        target: String,
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Comma-separated check names; all applicable checks by default.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        /// Print wall-clock time per check.
        #[arg(long)]
        timing: bool,
    },
    /// Write a coefficient matrix as CSV.
    Export {
        target: String,
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, value_enum)]
        tensor: Option<TensorKind>,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate bijective 1-cocycles for a named action.
    Search {
        action: String,
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Write the source spec extended with one section per cocycle.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List builtin spec files, or print one.
    Builtin { name: Option<String> },
}

#[derive(Clone, Copy, ValueEnum)]
enum TensorKind {
    R,
    Twist,
    Inverse,
    Unit,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Complex,
}

/// Failure to load or interpret input; exits with status 2.
struct InputError(String);

impl<T: std::fmt::Display> From<T> for InputError {
    fn from(e: T) -> Self {
        InputError(e.to_string())
    }
}

type CliResult<T> = Result<T, InputError>;

fn configure_threads() -> CliResult<()> {
    let n = match std::env::var("TWISTLAB_THREADS") {
        Err(_) => 0,
        Ok(v) => v.trim().parse::<usize>().map_err(|_| InputError(format!("TWISTLAB_THREADS must be a non-negative integer, got `{v}`")))?,
    };
    if n > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

/// Spec text and the resolved target. Without `--spec` the target is a
/// builtin and the object is its last declaration.
fn load(target: &str, spec: Option<&PathBuf>) -> CliResult<(String, SpecFile, String)> {
    let (text, name) = match spec {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            (text, target.to_string())
        }
        None => {
            let (_, text) = builtins::lookup(target)
                .ok_or_else(|| InputError(format!("`{target}` is not a builtin; pass --spec FILE")))?;
            let file = parse_spec(text)?;
            let name = file.names().last().cloned().unwrap_or_default();
            (text.to_string(), name)
        }
    };
    let file = parse_spec(&text)?;
    if file.get(&name).is_none() {
        return Err(InputError(format!("no object named `{name}`")));
    }
    Ok((text, file, name))
}

fn verify(target: &str, spec: Option<&PathBuf>, requested: &[String], timing: bool) -> CliResult<bool> {
    let (_, file, name) = load(target, spec)?;
    let obj = file.get(&name).unwrap();
    let report = checks::verify(&name, obj, requested).map_err(InputError)?;
    print!("{}", report.render(timing));
    Ok(report.passed())
}

fn select_tensor(obj: &Object, kind: Option<TensorKind>) -> CliResult<Tensor2> {
    let structured = matches!(obj, Object::Symplectic(_) | Object::Hierarchy(_) | Object::Double(_));
    let kind = kind.unwrap_or(if structured { TensorKind::R } else { TensorKind::Unit });
    if let TensorKind::Unit = kind {
        return Ok(Tensor2::unit(obj.group(), 1));
    }
    Ok(match (obj, kind) {
        (Object::Symplectic(s), TensorKind::R) => s.r_matrix(),
        (Object::Symplectic(s), TensorKind::Twist) => s.twist(),
        (Object::Symplectic(s), TensorKind::Inverse) => s.twist_inverse(),
        (Object::Hierarchy(h), TensorKind::R) => twistlab_core::symp::theorem31_r(h)?,
        (Object::Hierarchy(h), TensorKind::Twist) => hierarchy_invertible(h)?.elem().clone(),
        (Object::Hierarchy(h), TensorKind::Inverse) => hierarchy_invertible(h)?.inv().clone(),
        (Object::Double(d), TensorKind::R) => d.r_matrix(),
        (Object::Double(d), TensorKind::Twist) => d.twist(),
        (Object::Double(d), TensorKind::Inverse) => d.twist_inverse(),
        _ => return Err(InputError(format!("a {} carries only the unit tensor", obj.kind()))),
    })
}

fn export(target: &str, spec: Option<&PathBuf>, kind: Option<TensorKind>, mode: Mode, out: Option<&PathBuf>) -> CliResult<()> {
    let (_, file, name) = load(target, spec)?;
    let t = select_tensor(file.get(&name).unwrap(), kind)?;
    let mode = match mode {
        Mode::Exact => ExportMode::Exact,
        Mode::Complex => ExportMode::Complex,
    };
    let csv = to_csv(&t, mode)?;
    match out {
        Some(path) => fs::write(path, csv).map_err(|e| InputError(format!("{}: {e}", path.display())))?,
        None => print!("{csv}"),
    }
    Ok(())
}

fn search(action: &str, spec: Option<&PathBuf>, out: Option<&PathBuf>) -> CliResult<()> {
    let (text, file, name) = load(action, spec)?;
    let Some(Object::Action(rho)) = file.get(&name) else {
        return Err(InputError(format!("`{name}` is not an action")));
    };
    let g = Arc::clone(rho.source());
    if g.order() > SEARCH_LIMIT {
        return Err(InputError(format!("search is limited to groups of order at most {SEARCH_LIMIT}, got {}", g.order())));
    }
    let found = search_cocycles(rho)?;
    println!("{name}: {} bijective 1-cocycles on {} of order {}", found.len(), g.describe(), g.order());
    println!("{name}: acting group solvable: {}", is_solvable(&g));
    let a = rho.target();
    let mut extended = text.clone();
    if !extended.ends_with('\n') {
        extended.push('\n');
    }
    for (k, c) in found.iter().enumerate() {
        println!("  {k}: {}", (0..g.order()).map(|x| format!("{} -> {}", g.label(x), a.label(c.pi(x)))).collect::<Vec<_>>().join(", "));
        extended.push_str(&format!("\n[cocycle {name}_cocycle_{k}] action = {name}\n"));
        for x in 0..g.order() {
            extended.push_str(&format!("{} -> {}\n", g.label(x), a.label(c.pi(x))));
        }
    }
    if let Some(path) = out {
        fs::write(path, extended).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn builtin(name: Option<&str>) -> CliResult<()> {
    match name {
        None => {
            for (n, about, _) in builtins::BUILTINS {
                println!("{n:<10} {about}");
            }
        }
        Some(n) => {
            let (_, text) = builtins::lookup(n).ok_or_else(|| InputError(format!("no builtin named `{n}`")))?;
            print!("{text}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match &cli.command {
        Command::Verify { target, spec, checks, timing } => verify(target, spec.as_ref(), checks, *timing),
        Command::Export { target, spec, tensor, mode, out } => export(target, spec.as_ref(), *tensor, *mode, out.as_ref()).map(|()| true),
        Command::Search { action, spec, out } => search(action, spec.as_ref(), out.as_ref()).map(|()| true),
        Command::Builtin { name } => builtin(name.as_deref()).map(|()| true),
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(InputError(msg)) => {
            eprintln!("twistlab: {msg}");
            ExitCode::from(2)
        }
    }
}
