use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ArityError, LoopProgram, Stmt};
use crate::Nat;

/// Primitive statements executed: one per clear/copy/inc, one per loop entry,
/// one per `while` guard test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct StepCount {
    pub steps: u64,
}

impl fmt::Display for StepCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} steps", self.steps)
    }
}

struct OutOfSteps;

struct Walker {
    regs: Vec<Nat>,
    steps: u64,
    limit: u64,
}

impl Walker {
    #[inline]
    fn charge(&mut self) -> Result<(), OutOfSteps> {
        if self.steps >= self.limit {
            return Err(OutOfSteps);
        }
        self.steps += 1;
        Ok(())
    }

    fn run(&mut self, body: &[Stmt]) -> Result<(), OutOfSteps> {
        for stmt in body {
            match stmt {
                Stmt::Clear(v) => {
                    self.charge()?;
                    self.regs[v.index()] = 0;
                }
                Stmt::Copy(v, w) => {
                    self.charge()?;
                    self.regs[v.index()] = self.regs[w.index()];
                }
                Stmt::Inc(v) => {
                    self.charge()?;
                    let r = &mut self.regs[v.index()];
                    *r = r.saturating_add(1);
                }
                Stmt::Loop(v, inner) => {
                    self.charge()?;
                    let count = self.regs[v.index()];
                    // Iterations of an empty body are free and have no effect.
                    if !inner.is_empty() {
                        for _ in 0..count {
                            self.run(inner)?;
                        }
                    }
                }
                Stmt::While(v, inner) => loop {
                    self.charge()?;
                    if self.regs[v.index()] == 0 {
                        break;
                    }
                    self.run(inner)?;
                },
            }
        }
        Ok(())
    }
}

/// Tree-walking evaluation shared by the Loop and While front ends. Returns
/// `None` when more than `limit` steps would be needed.
pub(crate) fn walk(
    arity: usize,
    width: usize,
    body: &[Stmt],
    args: &[Nat],
    limit: u64,
) -> Result<Option<(Nat, StepCount)>, ArityError> {
    if args.len() != arity {
        return Err(ArityError { expected: arity, got: args.len() });
    }
    let mut regs = vec![0; width];
    regs[1..=arity].copy_from_slice(args);
    let mut w = Walker { regs, steps: 0, limit };
    match w.run(body) {
        Ok(()) => Ok(Some((w.regs[0], StepCount { steps: w.steps }))),
        Err(OutOfSteps) => Ok(None),
    }
}

/// Runs `p` to completion. Always terminates, though possibly after a very
/// large number of steps.
pub fn eval_loop(p: &LoopProgram, args: &[Nat]) -> Result<(Nat, StepCount), ArityError> {
    walk(p.arity(), p.width(), p.body(), args, u64::MAX).map(|r| r.expect("step counter overflow"))
}

/// Like [`eval_loop`] but gives up (returning `None`) past `max_steps`.
pub fn eval_loop_bounded(
    p: &LoopProgram,
    args: &[Nat],
    max_steps: u64,
) -> Result<Option<(Nat, StepCount)>, ArityError> {
    walk(p.arity(), p.width(), p.body(), args, max_steps)
}

#[cfg(test)]
mod tests {
    use super::super::parse_loop;
    use super::*;

    #[test]
    fn latching() {
        let p = parse_loop("fn f(1) { loop x1 { inc x1 inc x0 } }").unwrap();
        for n in 0..20 {
            assert_eq!(eval_loop(&p, &[n]).unwrap().0, n);
        }
    }

    #[test]
    fn cost_model() {
        let p = parse_loop("fn f(1) { clear x0 loop x1 { inc x0 } }").unwrap();
        assert_eq!(eval_loop(&p, &[4]).unwrap(), (4, StepCount { steps: 1 + 1 + 4 }));
        let empty = parse_loop("fn f(1) { loop x1 { } }").unwrap();
        assert_eq!(eval_loop(&empty, &[u64::MAX]).unwrap().1.steps, 1);
    }

    #[test]
    fn arity_mismatch() {
        let p = parse_loop("fn f(2) { x0 = x2 }").unwrap();
        assert_eq!(eval_loop(&p, &[1]), Err(ArityError { expected: 2, got: 1 }));
    }

    #[test]
    fn bounded_gives_up() {
        let p = parse_loop("fn f(1) { loop x1 { inc x0 } }").unwrap();
        assert_eq!(eval_loop_bounded(&p, &[10], 11).unwrap().map(|r| r.0), Some(10));
        assert_eq!(eval_loop_bounded(&p, &[10], 10).unwrap(), None);
    }

    #[test]
    fn uninitialised_scratch_reads_zero() {
        let p = parse_loop("fn f(1) { x0 = x5 }").unwrap();
        assert_eq!(eval_loop(&p, &[3]).unwrap().0, 0);
    }
}
