//! The step-bounded predicates `T(e, x, t)` and `U(e, x, t)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use super::{decode_program, run_bounded, Compiled, Machine, ProgramIndex, WhileProgram};
use crate::Nat;

/// Whether `T` asks for halting within `t` steps or at exactly step `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TMode {
    AtMost,
    Exactly,
}

impl std::fmt::Display for TMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TMode::AtMost => "at_most",
            TMode::Exactly => "exactly",
        })
    }
}

/// 0 if `φ_e(x)` halts within (or exactly at) `t` steps, 1 otherwise.
pub fn t_predicate(e: &ProgramIndex, x: &[Nat], t: u64, mode: TMode) -> Nat {
    match run_bounded(e, x, t).halted() {
        Some((_, at)) if mode == TMode::AtMost || at == t => 0,
        _ => 1,
    }
}

/// The output if `φ_e(x)` halts within `t` steps, else 0.
pub fn u_extract(e: &ProgramIndex, x: &[Nat], t: u64) -> Nat {
    run_bounded(e, x, t).halted().map_or(0, |(v, _)| v)
}

/// What is known about one input after probing it with some fuel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Probe {
    Halted { output: Nat, at_step: u64 },
    Running,
}

/// A decoded program with per-input resumable machines, so that scanning
/// `T(e, x, t)` over increasing `t` costs the simulation only once.
/// The cache is invisible: every answer equals a fresh `run_bounded`.
pub struct Universal {
    program: Option<Arc<Compiled>>,
    machines: Mutex<HashMap<Vec<Nat>, Machine>>,
}

impl std::fmt::Debug for Universal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Universal").field("valid", &self.program.is_some()).finish()
    }
}

impl Universal {
    pub fn from_index(e: &ProgramIndex) -> Self {
        Universal::from_decoded(decode_program(e).as_ref())
    }

    pub fn from_program(p: &WhileProgram) -> Self {
        Universal::from_decoded(Some(p))
    }

    fn from_decoded(p: Option<&WhileProgram>) -> Self {
        Universal { program: p.map(|p| Arc::new(Compiled::new(p))), machines: Mutex::new(HashMap::new()) }
    }

    pub fn arity(&self) -> Option<usize> {
        self.program.as_ref().map(|p| p.arity())
    }

    pub fn probe(&self, x: &[Nat], fuel: u64) -> Probe {
        let Some(prog) = &self.program else { return Probe::Running };
        let mut cache = self.machines.lock().unwrap_or_else(|e| e.into_inner());
        let m = match cache.get_mut(x) {
            Some(m) => m,
            None => match Machine::start(prog.clone(), x) {
                Some(m) => cache.entry(x.to_vec()).or_insert(m),
                None => return Probe::Running,
            },
        };
        if !m.is_halted() && m.steps() < fuel {
            m.advance(fuel);
        }
        if m.is_halted() && m.steps() <= fuel {
            Probe::Halted { output: m.output(), at_step: m.steps() }
        } else {
            Probe::Running
        }
    }

    pub fn t(&self, x: &[Nat], t: u64, mode: TMode) -> Nat {
        match self.probe(x, t) {
            Probe::Halted { at_step, .. } if mode == TMode::AtMost || at_step == t => 0,
            _ => 1,
        }
    }

    pub fn u(&self, x: &[Nat], t: u64) -> Nat {
        match self.probe(x, t) {
            Probe::Halted { output, .. } => output,
            Probe::Running => 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{encode_program, parse_while};
    use super::*;

    fn idx(text: &str) -> ProgramIndex {
        encode_program(&parse_while(text).unwrap())
    }

    #[test]
    fn identity_needs_a_step() {
        let id = idx("fn id(1){ x0 = x1 }");
        assert_eq!(t_predicate(&id, &[0], 0, TMode::AtMost), 1);
        assert_eq!(t_predicate(&id, &[0], 1, TMode::AtMost), 0);
        assert_eq!(t_predicate(&id, &[0], 1, TMode::Exactly), 0);
        assert_eq!(t_predicate(&id, &[0], 2, TMode::Exactly), 1);
        assert_eq!(u_extract(&id, &[9], 1000), 9);
    }

    #[test]
    fn diverger_never_zero() {
        let bot = idx("fn bot(1){ inc x2 while x2 { inc x2 } }");
        for t in 0..200 {
            assert_eq!(t_predicate(&bot, &[3], t, TMode::AtMost), 1);
            assert_eq!(u_extract(&bot, &[3], t), 0);
        }
    }

    #[test]
    fn invalid_index_diverges() {
        let junk = ProgramIndex::from(987_654_321);
        assert_eq!(t_predicate(&junk, &[], 10, TMode::AtMost), 1);
        assert_eq!(u_extract(&junk, &[], 10), 0);
    }

    #[test]
    fn cached_answers_match_fresh_runs_in_any_order() {
        let e = idx("fn f(1){ loop x1 { inc x0 } }");
        let u = Universal::from_index(&e);
        for t in [30u64, 2, 9, 0, 5, 6, 7, 100, 1] {
            for x in 0..8 {
                for mode in [TMode::AtMost, TMode::Exactly] {
                    assert_eq!(u.t(&[x], t, mode), t_predicate(&e, &[x], t, mode), "{x} {t} {mode}");
                }
                assert_eq!(u.u(&[x], t), u_extract(&e, &[x], t));
            }
        }
    }
}
