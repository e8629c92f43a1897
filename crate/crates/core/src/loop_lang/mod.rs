//! The Loop language: register programs whose only iteration construct is a
//! bounded `loop` whose count is latched on entry.
//!
//! The statement type [`Stmt`] also carries the `while` form so that the
//! While extension in [`crate::fuel_vm`] can share the parser and printer;
//! a [`LoopProgram`] can never contain it.

mod eval;
mod parse;
mod print;
mod validate;

pub use eval::{eval_loop, eval_loop_bounded, StepCount};
pub(crate) use eval::walk as walk_body;
pub use parse::{parse_loop, parse_source, ParseError, Source};
pub use print::{print_loop, print_source};
pub use validate::{validate_loop, validate_body, Validation, Violation, Warning};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest arity a program header may declare.
pub const MAX_ARITY: usize = 1024;

/// Register indices must stay below this bound.
pub const MAX_REGISTERS: usize = 1 << 20;

/// A register name `xN`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Var(pub u32);

impl Var {
    pub const OUT: Var = Var(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// One statement of the shared Loop/While syntax.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Stmt {
    /// `clear xv`
    Clear(Var),
    /// `xv = xw`
    Copy(Var, Var),
    /// `inc xv`
    Inc(Var),
    /// `loop xv { .. }`: runs the body as many times as xv held on entry.
    Loop(Var, Vec<Stmt>),
    /// `while xv { .. }`: only legal in While programs.
    While(Var, Vec<Stmt>),
}

impl Stmt {
    pub fn contains_while(&self) -> bool {
        match self {
            Stmt::While(..) => true,
            Stmt::Loop(_, body) => body.iter().any(Stmt::contains_while),
            _ => false,
        }
    }

    /// Largest register index mentioned by this statement, if any.
    pub fn max_var(&self) -> u32 {
        match self {
            Stmt::Clear(v) | Stmt::Inc(v) => v.0,
            Stmt::Copy(v, w) => v.0.max(w.0),
            Stmt::Loop(v, body) | Stmt::While(v, body) => {
                body.iter().map(Stmt::max_var).fold(v.0, u32::max)
            }
        }
    }

    /// Rewrites every register through `map`.
    pub fn rename(&self, map: &impl Fn(Var) -> Var) -> Stmt {
        match self {
            Stmt::Clear(v) => Stmt::Clear(map(*v)),
            Stmt::Copy(v, w) => Stmt::Copy(map(*v), map(*w)),
            Stmt::Inc(v) => Stmt::Inc(map(*v)),
            Stmt::Loop(v, body) => Stmt::Loop(map(*v), body.iter().map(|s| s.rename(map)).collect()),
            Stmt::While(v, body) => {
                Stmt::While(map(*v), body.iter().map(|s| s.rename(map)).collect())
            }
        }
    }

    /// Number of statements in this subtree, counting itself.
    pub fn size(&self) -> usize {
        match self {
            Stmt::Loop(_, body) | Stmt::While(_, body) => 1 + body.iter().map(Stmt::size).sum::<usize>(),
            _ => 1,
        }
    }
}

/// Register width needed to run `body` for a program of the given arity.
pub fn body_width(arity: usize, body: &[Stmt]) -> usize {
    let top = body.iter().map(|s| s.max_var() as usize).max().unwrap_or(0);
    top.max(arity) + 1
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProgramError {
    #[error("`while` is not part of the Loop language")]
    WhileInLoop,
    #[error("arity {0} exceeds the supported maximum {MAX_ARITY}")]
    ArityTooLarge(usize),
    #[error("`{0}` is not a valid identifier")]
    BadName(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("expected {expected} argument(s), got {got}")]
pub struct ArityError {
    pub expected: usize,
    pub got: usize,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A total register program: inputs in x1..xk, output in x0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LoopProgram {
    name: String,
    arity: usize,
    body: Vec<Stmt>,
}

impl LoopProgram {
    pub fn new(name: impl Into<String>, arity: usize, body: Vec<Stmt>) -> Result<Self, ProgramError> {
        let name = name.into();
        if !is_identifier(&name) {
            return Err(ProgramError::BadName(name));
        }
        if arity > MAX_ARITY {
            return Err(ProgramError::ArityTooLarge(arity));
        }
        if body.iter().any(Stmt::contains_while) {
            return Err(ProgramError::WhileInLoop);
        }
        Ok(LoopProgram { name, arity, body })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn body(&self) -> &[Stmt] {
        &self.body
    }

    pub fn into_parts(self) -> (String, usize, Vec<Stmt>) {
        (self.name, self.arity, self.body)
    }

    /// Number of registers an evaluator must allocate.
    pub fn width(&self) -> usize {
        body_width(self.arity, &self.body)
    }

    /// Same program under a different name.
    pub fn renamed(&self, name: &str) -> Result<Self, ProgramError> {
        LoopProgram::new(name, self.arity, self.body.clone())
    }

    pub fn size(&self) -> usize {
        self.body.iter().map(Stmt::size).sum()
    }
}

impl fmt::Display for LoopProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_loop(self))
    }
}
