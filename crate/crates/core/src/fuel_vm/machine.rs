//! A resumable bytecode machine for While programs.
//!
//! Control instructions (`Jump`, `LoopNext`) are free; everything else costs
//! one step, matching the tree-walking evaluators exactly.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{decode_program, ProgramIndex, WhileProgram};
use crate::loop_lang::Stmt;
use crate::Nat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Instr {
    Clear(u32),
    Copy(u32, u32),
    Inc(u32),
    /// Costs one step; latches the count or skips an empty body.
    LoopEnter { var: u32, counter: u32, exit: u32, empty: bool },
    LoopNext { counter: u32, exit: u32 },
    /// Costs one step per guard test.
    WhileTest { var: u32, exit: u32 },
    Jump(u32),
}

impl Instr {
    fn is_free(self) -> bool {
        matches!(self, Instr::LoopNext { .. } | Instr::Jump(_))
    }
}

/// A While program lowered to bytecode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Compiled {
    arity: usize,
    width: usize,
    counters: usize,
    code: Vec<Instr>,
}

impl Compiled {
    pub fn new(p: &WhileProgram) -> Self {
        let mut c = Compiled { arity: p.arity(), width: p.width(), counters: 0, code: Vec::new() };
        c.lower(p.body());
        c
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    fn lower(&mut self, body: &[Stmt]) {
        for stmt in body {
            match stmt {
                Stmt::Clear(v) => self.code.push(Instr::Clear(v.0)),
                Stmt::Copy(v, w) => self.code.push(Instr::Copy(v.0, w.0)),
                Stmt::Inc(v) => self.code.push(Instr::Inc(v.0)),
                Stmt::Loop(v, inner) => {
                    let counter = self.counters as u32;
                    self.counters += 1;
                    let enter = self.code.len();
                    self.code.push(Instr::LoopEnter { var: v.0, counter, exit: 0, empty: inner.is_empty() });
                    let head = self.code.len();
                    self.code.push(Instr::LoopNext { counter, exit: 0 });
                    self.lower(inner);
                    self.code.push(Instr::Jump(head as u32));
                    let exit = self.code.len() as u32;
                    if let Instr::LoopEnter { exit: e, .. } = &mut self.code[enter] {
                        *e = exit;
                    }
                    if let Instr::LoopNext { exit: e, .. } = &mut self.code[head] {
                        *e = exit;
                    }
                }
                Stmt::While(v, inner) => {
                    let head = self.code.len();
                    self.code.push(Instr::WhileTest { var: v.0, exit: 0 });
                    self.lower(inner);
                    self.code.push(Instr::Jump(head as u32));
                    let exit = self.code.len() as u32;
                    if let Instr::WhileTest { exit: e, .. } = &mut self.code[head] {
                        *e = exit;
                    }
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RunStatus {
    Halted { output: Nat, at_step: u64 },
    StillRunning { digest: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RunOutcome {
    pub status: RunStatus,
    pub fuel_used: u64,
}

impl RunOutcome {
    pub fn halted(&self) -> Option<(Nat, u64)> {
        match self.status {
            RunStatus::Halted { output, at_step } => Some((output, at_step)),
            RunStatus::StillRunning { .. } => None,
        }
    }

    /// What an invalid index or an arity mismatch reports.
    pub fn diverging(fuel: u64) -> Self {
        RunOutcome { status: RunStatus::StillRunning { digest: 0 }, fuel_used: fuel }
    }
}

/// An in-flight execution that can be advanced to larger and larger fuel.
#[derive(Debug, Clone)]
pub struct Machine {
    prog: Arc<Compiled>,
    pc: usize,
    regs: Vec<Nat>,
    counters: Vec<Nat>,
    steps: u64,
}

impl Machine {
    /// `None` if `args` does not match the program's arity.
    pub fn start(prog: Arc<Compiled>, args: &[Nat]) -> Option<Self> {
        if args.len() != prog.arity {
            return None;
        }
        let mut regs = vec![0; prog.width];
        regs[1..=prog.arity].copy_from_slice(args);
        let counters = vec![0; prog.counters];
        let mut m = Machine { prog, pc: 0, regs, counters, steps: 0 };
        m.settle();
        Some(m)
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn is_halted(&self) -> bool {
        self.pc >= self.prog.code.len()
    }

    pub fn output(&self) -> Nat {
        self.regs[0]
    }

    /// Executes free control instructions until the next costed one.
    fn settle(&mut self) {
        while let Some(&ins) = self.prog.code.get(self.pc) {
            match ins {
                Instr::Jump(to) => self.pc = to as usize,
                Instr::LoopNext { counter, exit } => {
                    let c = &mut self.counters[counter as usize];
                    if *c == 0 {
                        self.pc = exit as usize;
                    } else {
                        *c -= 1;
                        self.pc += 1;
                    }
                }
                _ => return,
            }
        }
    }

    fn step(&mut self) {
        let ins = self.prog.code[self.pc];
        debug_assert!(!ins.is_free());
        self.steps += 1;
        self.pc += 1;
        match ins {
            Instr::Clear(v) => self.regs[v as usize] = 0,
            Instr::Copy(v, w) => self.regs[v as usize] = self.regs[w as usize],
            Instr::Inc(v) => {
                let r = &mut self.regs[v as usize];
                *r = r.saturating_add(1);
            }
            Instr::LoopEnter { var, counter, exit, empty } => {
                if empty {
                    self.pc = exit as usize;
                } else {
                    self.counters[counter as usize] = self.regs[var as usize];
                }
            }
            Instr::WhileTest { var, exit } => {
                if self.regs[var as usize] == 0 {
                    self.pc = exit as usize;
                }
            }
            Instr::LoopNext { .. } | Instr::Jump(_) => unreachable!(),
        }
        self.settle();
    }

    /// Runs until halted or until `fuel` total steps have been spent.
    pub fn advance(&mut self, fuel: u64) {
        while !self.is_halted() && self.steps < fuel {
            self.step();
        }
    }

    pub fn digest(&self) -> u64 {
        let mut h = DefaultHasher::new();
        (self.pc, &self.regs, &self.counters).hash(&mut h);
        h.finish()
    }

    /// Outcome as seen at `fuel`, which must not be below the steps already
    /// spent unless the machine has halted.
    pub fn outcome(&self, fuel: u64) -> RunOutcome {
        if self.is_halted() && self.steps <= fuel {
            RunOutcome {
                status: RunStatus::Halted { output: self.regs[0], at_step: self.steps },
                fuel_used: self.steps,
            }
        } else {
            RunOutcome { status: RunStatus::StillRunning { digest: self.digest() }, fuel_used: fuel }
        }
    }
}

pub fn run_program(p: &WhileProgram, args: &[Nat], fuel: u64) -> RunOutcome {
    match Machine::start(Arc::new(Compiled::new(p)), args) {
        Some(mut m) => {
            m.advance(fuel);
            m.outcome(fuel)
        }
        None => RunOutcome::diverging(fuel),
    }
}

/// Runs program `e` for at most `fuel` steps. Indices that do not decode,
/// and argument tuples of the wrong length, behave as divergence.
pub fn run_bounded(e: &ProgramIndex, args: &[Nat], fuel: u64) -> RunOutcome {
    match decode_program(e) {
        Some(p) => run_program(&p, args, fuel),
        None => RunOutcome::diverging(fuel),
    }
}

#[cfg(test)]
mod tests {
    use super::super::{encode_program, eval_while, parse_while};
    use super::*;

    #[test]
    fn identity_halts() {
        let id = parse_while("fn id(1){ x0 = x1 }").unwrap();
        let out = run_bounded(&encode_program(&id), &[7], 100);
        assert_eq!(out.status, RunStatus::Halted { output: 7, at_step: 1 });
        assert_eq!(out.fuel_used, 1);
    }

    #[test]
    fn diverger_keeps_running() {
        let bot = parse_while("fn bot(1){ inc x2  while x2 { inc x2 } }").unwrap();
        let out = run_bounded(&encode_program(&bot), &[0], 1_000_000);
        assert!(out.halted().is_none());
        assert_eq!(out.fuel_used, 1_000_000);
    }

    #[test]
    fn exact_halting_step() {
        // 3 incs, loop entry, 3 iterations of one inc, final copy: 3 + 1 + 3 + 1.
        let p = parse_while("fn d(1){ inc x2 inc x2 inc x2 loop x2 { inc x3 } x0 = x1 }").unwrap();
        assert!(run_program(&p, &[4], 7).halted().is_none());
        assert_eq!(run_program(&p, &[4], 8).halted(), Some((4, 8)));
    }

    #[test]
    fn wrong_arity_diverges() {
        let id = parse_while("fn id(1){ x0 = x1 }").unwrap();
        assert!(run_program(&id, &[1, 2], 50).halted().is_none());
    }

    #[test]
    fn matches_tree_walker() {
        let p = parse_while(
            "fn f(2){ loop x1 { clear x9 inc x9 loop x8 { clear x9 } x8 = x9 } \
             while x8 { loop x2 { inc x0 } clear x8 } loop x2 { } }",
        )
        .unwrap();
        for a in 0..8 {
            for b in 0..5 {
                for fuel in [0, 3, 10, 40, 1000] {
                    let walked = eval_while(&p, &[a, b], fuel).unwrap();
                    let ran = run_program(&p, &[a, b], fuel).halted();
                    assert_eq!(walked.map(|(v, s)| (v, s.steps)), ran, "{a} {b} {fuel}");
                }
            }
        }
    }

    #[test]
    fn resumable() {
        let p = parse_while("fn f(1){ loop x1 { inc x0 inc x0 } }").unwrap();
        let mut m = Machine::start(Arc::new(Compiled::new(&p)), &[10]).unwrap();
        for fuel in 0..30 {
            m.advance(fuel);
            assert_eq!(m.outcome(fuel).halted(), run_program(&p, &[10], fuel).halted());
        }
    }
}
