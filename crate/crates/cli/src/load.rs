//! Reading `.loop`, `.whl` and `.dag` files.

use std::fs;
use std::path::{Path, PathBuf};

use prlab::fuel_vm::{loop_to_while, parse_while, WhileProgram};
use prlab::loop_lang::{parse_loop, LoopProgram};
use prlab::pr_algebra::FnHandle;
use prlab::pr_graph::{build_dag, default_registry, parse_dag, AcyclicExpr, EquationSystem};

pub enum Loaded {
    Loop(LoopProgram),
    While(WhileProgram),
    Dag(EquationSystem, AcyclicExpr),
}

impl Loaded {
    pub fn format(&self) -> &'static str {
        match self {
            Loaded::Loop(_) => "loop",
            Loaded::While(_) => "whl",
            Loaded::Dag(..) => "dag",
        }
    }

    /// Any program, widened to a While program.
    pub fn program(&self) -> Result<WhileProgram, String> {
        match self {
            Loaded::Loop(p) => Ok(loop_to_while(p)),
            Loaded::While(p) => Ok(p.clone()),
            Loaded::Dag(..) => Err("expected a program, got an equation system".into()),
        }
    }
}

pub fn load(path: &Path) -> Result<Loaded, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let at = |e: &dyn std::fmt::Display| format!("{}: {e}", path.display());
    match path.extension().and_then(|e| e.to_str()) {
        Some("loop") => parse_loop(&text).map(Loaded::Loop).map_err(|e| at(&e)),
        Some("whl") => parse_while(&text).map(Loaded::While).map_err(|e| at(&e)),
        Some("dag") => {
            let sys = parse_dag(&text).map_err(|e| at(&e))?;
            let d = build_dag(&sys, &default_registry()).map_err(|e| at(&e))?;
            Ok(Loaded::Dag(sys, d))
        }
        _ => Err(format!("{}: unknown extension (expected .loop, .whl or .dag)", path.display())),
    }
}

/// One `.dag` file plus any `.loop` files, which bind function names
/// (by program name) ahead of the bundled library.
pub fn load_dag(paths: &[PathBuf]) -> Result<AcyclicExpr, String> {
    let mut registry = default_registry();
    let mut dag = None;
    for path in paths {
        if path.extension().and_then(|e| e.to_str()) == Some("dag") {
            if dag.replace(path).is_some() {
                return Err("more than one .dag file given".into());
            }
            continue;
        }
        match load(path)? {
            Loaded::Loop(p) => {
                registry.insert(p.name().to_string(), FnHandle::from_loop(p));
            }
            other => return Err(format!("{}: expected a .loop file, got .{}", path.display(), other.format())),
        }
    }
    let path = dag.ok_or("no .dag file given")?;
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let sys = parse_dag(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    build_dag(&sys, &registry).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn single(paths: &[PathBuf]) -> Result<&Path, String> {
    match paths {
        [p] => Ok(p),
        _ => Err(format!("expected one input file, got {}", paths.len())),
    }
}
