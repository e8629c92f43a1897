//! The While language, its integer indexing, and step-bounded universal
//! evaluation (the `T` predicate and `U` extractor).

mod index;
mod kleene;
mod machine;

pub use index::{decode_program, encode_program, is_loop_index, ProgramIndex};
pub use kleene::{t_predicate, u_extract, Probe, TMode, Universal};
pub use machine::{run_bounded, run_program, Compiled, Machine, RunOutcome, RunStatus};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::loop_lang::{
    self, body_width, is_identifier, parse_source, print_source, ArityError, LoopProgram, ParseError,
    ProgramError, Stmt, StepCount, Validation, MAX_ARITY,
};
use crate::Nat;

/// A possibly partial register program: Loop statements plus `while`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WhileProgram {
    name: String,
    arity: usize,
    body: Vec<Stmt>,
}

impl WhileProgram {
    pub fn new(name: impl Into<String>, arity: usize, body: Vec<Stmt>) -> Result<Self, ProgramError> {
        let name = name.into();
        if !is_identifier(&name) {
            return Err(ProgramError::BadName(name));
        }
        if arity > MAX_ARITY {
            return Err(ProgramError::ArityTooLarge(arity));
        }
        Ok(WhileProgram { name, arity, body })
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

    pub fn width(&self) -> usize {
        body_width(self.arity, &self.body)
    }

    /// The Loop program this is, if it uses no `while`.
    pub fn as_loop(&self) -> Option<LoopProgram> {
        LoopProgram::new(self.name.clone(), self.arity, self.body.clone()).ok()
    }

    pub fn is_loop(&self) -> bool {
        !self.body.iter().any(Stmt::contains_while)
    }
}

impl fmt::Display for WhileProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_while(self))
    }
}

pub fn parse_while(text: &str) -> Result<WhileProgram, ParseError> {
    let src = parse_source(text, true)?;
    WhileProgram::new(src.name, src.arity, src.body)
        .map_err(|e| ParseError::Syntax { line: 1, col: 1, msg: e.to_string() })
}

pub fn print_while(p: &WhileProgram) -> String {
    print_source(&p.name, p.arity, &p.body)
}

pub fn validate_while(p: &WhileProgram) -> Validation {
    loop_lang::validate_body(&p.name, p.arity, &p.body, true)
}

/// Every Loop program is a While program with the same text and cost.
pub fn loop_to_while(p: &LoopProgram) -> WhileProgram {
    WhileProgram { name: p.name().to_string(), arity: p.arity(), body: p.body().to_vec() }
}

/// Direct tree-walking evaluation with a step limit; `None` if the program
/// has not halted after `fuel` steps. Independent of the bytecode machine.
pub fn eval_while(p: &WhileProgram, args: &[Nat], fuel: u64) -> Result<Option<(Nat, StepCount)>, ArityError> {
    loop_lang::walk_body(p.arity, p.width(), &p.body, args, fuel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loop_lang::{eval_loop, parse_loop, print_loop};

    #[test]
    fn loop_files_parse_as_while() {
        let text = "fn id(1){ x0 = x1 }";
        let l = parse_loop(text).unwrap();
        let w = parse_while(text).unwrap();
        assert_eq!(loop_to_while(&l), w);
        assert_eq!(print_loop(&l), print_while(&w));
    }

    #[test]
    fn diverger_runs_out_of_fuel() {
        let bot = parse_while("fn bot(1){ inc x2  while x2 { inc x2 } }").unwrap();
        assert_eq!(eval_while(&bot, &[3], 1_000_000).unwrap(), None);
    }

    #[test]
    fn embedding_preserves_value_and_cost() {
        let p = parse_loop("fn f(2) { loop x1 { loop x2 { inc x0 } } }").unwrap();
        let w = loop_to_while(&p);
        for a in 0..6 {
            for b in 0..6 {
                let direct = eval_loop(&p, &[a, b]).unwrap();
                assert_eq!(eval_while(&w, &[a, b], u64::MAX).unwrap(), Some(direct));
            }
        }
    }
}
