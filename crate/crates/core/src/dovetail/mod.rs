//! Dovetailed enumeration, bounded semi-deciders, the decidable branches of
//! the frontier problems, and exhaustive window property evaluators.

pub mod props;

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fuel_vm::{decode_program, Compiled, Machine, ProgramIndex};
use crate::pr_algebra::FnHandle;
use crate::Nat;

pub use props::*;

/// Limits for an unbounded search. Exhaustion is always reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_global_steps: u64,
    pub per_machine_cap: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("search budget must be positive")]
pub struct ZeroBudget;

impl SearchBudget {
    pub fn new(max_global_steps: u64) -> Result<Self, ZeroBudget> {
        if max_global_steps == 0 {
            return Err(ZeroBudget);
        }
        Ok(SearchBudget { max_global_steps, per_machine_cap: None })
    }

    pub fn with_machine_cap(mut self, cap: u64) -> Self {
        self.per_machine_cap = Some(cap);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchOutcome<W> {
    Found { witness: W, global_step: u64 },
    Exhausted { budget: SearchBudget },
}

impl<W> SearchOutcome<W> {
    pub fn witness(&self) -> Option<&W> {
        match self {
            SearchOutcome::Found { witness, .. } => Some(witness),
            SearchOutcome::Exhausted { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("global steps are numbered from 1")]
pub struct StepZero;

/// Global step `k ≥ 1` of the triangular schedule, as `(machine, machine step)`.
/// Round `r` runs machines `1..=r`, machine `m` performing its step `r+1−m`.
pub fn dovetail_schedule(k: u64) -> Result<(u64, u64), StepZero> {
    if k == 0 {
        return Err(StepZero);
    }
    // Smallest r with r(r+1)/2 ≥ k.
    let k128 = k as u128;
    let mut r = (((8 * k128 + 1) as f64).sqrt() as u128).saturating_sub(1) / 2;
    while r * (r + 1) / 2 < k128 {
        r += 1;
    }
    while r > 1 && (r - 1) * r / 2 >= k128 {
        r -= 1;
    }
    let m = k128 - (r - 1) * r / 2;
    Ok((m as u64, (r + 1 - m) as u64))
}

/// Least zero of `f`, one evaluation per global step.
pub fn semidecide_haszeros(f: &FnHandle, budget: SearchBudget) -> SearchOutcome<Nat> {
    for step in 1..=budget.max_global_steps {
        let x = step - 1;
        if f.at(x) == 0 {
            return SearchOutcome::Found { witness: x, global_step: step };
        }
    }
    SearchOutcome::Exhausted { budget }
}

/// `(a, b)` with `h(a) = 0` and `h(b) ≠ 0`, taking the first of each kind.
pub fn semidecide_zeromore(h: &FnHandle, budget: SearchBudget) -> SearchOutcome<(Nat, Nat)> {
    let (mut zero, mut nonzero) = (None, None);
    for step in 1..=budget.max_global_steps {
        let x = step - 1;
        if h.at(x) == 0 {
            zero.get_or_insert(x);
        } else {
            nonzero.get_or_insert(x);
        }
        if let (Some(a), Some(b)) = (zero, nonzero) {
            return SearchOutcome::Found { witness: (a, b), global_step: step };
        }
    }
    SearchOutcome::Exhausted { budget }
}

/// One halting machine reported by [`semidecide_halt_family`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Emission {
    /// 1-based position of the machine in the family.
    pub machine: u64,
    pub index: ProgramIndex,
    pub output: Nat,
    pub at_step: u64,
    pub global_step: u64,
}

/// Runs the family under the triangular schedule, one program step per
/// scheduled slot, and reports each halt in schedule order.
pub fn semidecide_halt_family(indices: &[ProgramIndex], args: &[Nat], budget: SearchBudget) -> Vec<Emission> {
    let mut machines: Vec<Option<Machine>> = indices
        .iter()
        .map(|e| decode_program(e).and_then(|p| Machine::start(Arc::new(Compiled::new(&p)), args)))
        .collect();
    let mut done = vec![false; indices.len()];
    let mut out = Vec::new();
    for k in 1..=budget.max_global_steps {
        let (m, s) = dovetail_schedule(k).expect("k ≥ 1");
        let Some(i) = (m as usize).checked_sub(1).filter(|&i| i < indices.len()) else {
            // Machines beyond the family idle; the round structure is kept.
            continue;
        };
        if done[i] || budget.per_machine_cap.is_some_and(|cap| s > cap) {
            continue;
        }
        let Some(mach) = machines[i].as_mut() else { continue };
        mach.advance(s);
        if mach.is_halted() {
            done[i] = true;
            out.push(Emission {
                machine: m,
                index: indices[i].clone(),
                output: mach.output(),
                at_step: mach.steps(),
                global_step: k,
            });
        }
        if done.iter().all(|&d| d) {
            break;
        }
    }
    out
}

/// Exact decision for `∃y: f(g(y)) = 0` when the codomain of `g` is finite
/// and listed.
pub fn decide_hz_fg_finite(f: &FnHandle, cod_listing: &[Nat]) -> bool {
    cod_listing.iter().any(|&y| f.at(y) == 0)
}

/// How `h` behaves on the range that matters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HClass {
    AlwaysZeroOnRange,
    NeverZeroOnRange,
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Yes,
    No,
    Undecided,
}

/// The trivial branches of `∃x: h(f(x)) = 0`. Classifying `h` is itself
/// undecidable, so the class is an input.
pub fn decide_hz_hf_trivial(class: HClass) -> Decision {
    match class {
        HClass::AlwaysZeroOnRange => Decision::Yes,
        HClass::NeverZeroOnRange => Decision::No,
        HClass::Mixed => Decision::Undecided,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuel_vm::{encode_program, parse_while, run_bounded};

    #[test]
    fn schedule_rows() {
        let got: Vec<_> = (1..=10).map(|k| dovetail_schedule(k).unwrap()).collect();
        let want = [(1, 1), (1, 2), (2, 1), (1, 3), (2, 2), (3, 1), (1, 4), (2, 3), (3, 2), (4, 1)];
        assert_eq!(got, want);
        assert_eq!(dovetail_schedule(0), Err(StepZero));
    }

    #[test]
    fn schedule_is_fair_and_consecutive() {
        let mut next = std::collections::HashMap::new();
        for k in 1..=10_000u64 {
            let (m, s) = dovetail_schedule(k).unwrap();
            let expect = next.entry(m).or_insert(1u64);
            assert_eq!(s, *expect, "machine {m} skipped a step at {k}");
            *expect += 1;
        }
        for m in 1..=50u64 {
            for s in 1..=50u64 {
                let hit = (1..=(m + s) * (m + s)).any(|k| dovetail_schedule(k).unwrap() == (m, s));
                assert!(hit);
            }
        }
    }

    #[test]
    fn large_steps_do_not_lose_precision() {
        for k in [u64::MAX, u64::MAX - 1, 1 << 53, (1 << 53) + 1] {
            let (m, s) = dovetail_schedule(k).unwrap();
            let r = (m + s - 1) as u128;
            assert_eq!((r - 1) * r / 2 + m as u128, k as u128);
        }
    }

    #[test]
    fn zero_searches() {
        let b = SearchBudget::new(20_000).unwrap();
        let f = FnHandle::unary("z", |x| (x != 10_000) as Nat);
        assert_eq!(semidecide_haszeros(&f, b), SearchOutcome::Found { witness: 10_000, global_step: 10_001 });
        let one = FnHandle::constant(1);
        assert!(matches!(semidecide_haszeros(&one, b), SearchOutcome::Exhausted { .. }));
        let parity = FnHandle::unary("parity", |x| x % 2);
        assert_eq!(semidecide_zeromore(&parity, b).witness(), Some(&(0, 1)));
        assert!(semidecide_zeromore(&FnHandle::constant(0), b).witness().is_none());
        assert!(semidecide_zeromore(&FnHandle::constant(1), b).witness().is_none());
        assert!(SearchBudget::new(0).is_err());
    }

    #[test]
    fn halt_family_emits_in_schedule_order() {
        let id = encode_program(&parse_while("fn id(1){ x0 = x1 }").unwrap());
        let bot = encode_program(&parse_while("fn bot(1){ inc x2  while x2 { inc x2 } }").unwrap());
        let fam = [id.clone(), bot, id];
        let out = semidecide_halt_family(&fam, &[4], SearchBudget::new(200).unwrap());
        assert_eq!(out.len(), 2);
        assert_eq!((out[0].machine, out[0].global_step), (1, 1));
        assert_eq!((out[1].machine, out[1].global_step), (3, 6));
        for e in &out {
            assert_eq!(run_bounded(&e.index, &[4], e.at_step).halted(), Some((e.output, e.at_step)));
        }
    }

    #[test]
    fn frontier_branches() {
        assert!(!decide_hz_fg_finite(&FnHandle::constant(1), &[1, 3]));
        assert!(decide_hz_fg_finite(&FnHandle::unary("f", |x| (x != 5) as Nat), &[2, 5]));
        assert_eq!(decide_hz_hf_trivial(HClass::AlwaysZeroOnRange), Decision::Yes);
        assert_eq!(decide_hz_hf_trivial(HClass::NeverZeroOnRange), Decision::No);
        assert_eq!(decide_hz_hf_trivial(HClass::Mixed), Decision::Undecided);
    }
}
