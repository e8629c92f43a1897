//! Loop programs for the PR targets, built around the source program of `f`.
//! Each one computes exactly the native evaluator of the same row.

use crate::loop_lang::{LoopProgram, Var};
use crate::pr_algebra::LoopBuilder;
use crate::Nat;

fn unary(name: &str, body: impl FnOnce(&mut LoopBuilder, Var) -> Var) -> LoopProgram {
    let mut b = LoopBuilder::new(1);
    let x = b.input(1);
    let out = body(&mut b, x);
    b.finish(name, out).expect("target program is well formed")
}

/// 1 if `f(i) = 0`, else 0.
fn zero_at(b: &mut LoopBuilder, f: &LoopProgram, i: Var) -> Var {
    let v = b.call(f, &[i]);
    b.is_zero(v)
}

/// Number of `i < count` with `f(i) = 0`.
fn zeros_below(b: &mut LoopBuilder, f: &LoopProgram, count: Var) -> Var {
    let c = b.constant(0);
    let i = b.constant(0);
    b.repeat(count, |b| {
        let z = zero_at(b, f, i);
        b.add_into(c, z);
        b.inc(i);
    });
    c
}

/// `r` chosen by a 0/1 flag: `then` when set, `otherwise` when clear.
fn select(b: &mut LoopBuilder, flag: Var, then: Var, otherwise: Var) -> Var {
    let r = b.dup(otherwise);
    b.when(flag, |b| b.copy(r, then));
    r
}

pub(crate) fn first_zero(f: &LoopProgram) -> LoopProgram {
    unary("first_zero", |b, x| {
        let before = zeros_below(b, f, x);
        let fresh = b.is_zero(before);
        let z = zero_at(b, f, x);
        let hit = b.and(z, fresh);
        b.not(hit)
    })
}

pub(crate) fn shifted_zero_marker(f: &LoopProgram) -> LoopProgram {
    unary("shifted_zero_marker", |b, x| {
        let p = b.pred(x);
        let v = b.call(f, &[p]);
        let pos = b.is_pos(x);
        let nz = b.is_pos(v);
        b.and(pos, nz)
    })
}

pub(crate) fn blocks(f: &LoopProgram, k: Nat) -> LoopProgram {
    unary("blocks", |b, x| {
        let (q, _) = b.divmod_const(x, k);
        b.call(f, &[q])
    })
}

pub(crate) fn first_k_zeros(f: &LoopProgram, k: Nat) -> LoopProgram {
    unary("first_k_zeros", |b, x| {
        let before = zeros_below(b, f, x);
        let kc = b.constant(k);
        let room = b.monus(kc, before);
        let lt = b.is_pos(room);
        let z = zero_at(b, f, x);
        let hit = b.and(z, lt);
        b.not(hit)
    })
}

pub(crate) fn padded_zero_marker(f: &LoopProgram, k: Nat) -> LoopProgram {
    unary("padded_zero_marker", |b, x| {
        let kc = b.constant(k);
        let x1 = b.dup(x);
        b.inc(x1);
        let over = b.monus(x1, kc);
        let ge = b.is_pos(over);
        let d = b.monus(x, kc);
        let v = b.call(f, &[d]);
        let nz = b.is_pos(v);
        b.and(ge, nz)
    })
}

pub(crate) fn zero_indicator(f: &LoopProgram) -> LoopProgram {
    unary("zero_indicator", |b, x| zero_at(b, f, x))
}

/// `g(0) = 0`, `g(x) = f(x−1)`.
pub(crate) fn shift_right(f: &LoopProgram) -> LoopProgram {
    unary("shift_right", |b, x| {
        let p = b.pred(x);
        let v = b.call(f, &[p]);
        let pos = b.is_pos(x);
        let zero = b.constant(0);
        select(b, pos, v, zero)
    })
}

pub(crate) fn staircase(f: &LoopProgram, k: Nat) -> LoopProgram {
    unary("staircase", |b, x| {
        let kc = b.constant(k);
        let room = b.monus(kc, x);
        let lt = b.is_pos(room);
        let d = b.monus(x, kc);
        let v = b.call(f, &[d]);
        let m = b.mul_const(v, k);
        select(b, lt, x, m)
    })
}

pub(crate) fn block_residues(f: &LoopProgram, k: Nat) -> LoopProgram {
    unary("block_residues", |b, x| {
        let (q, i) = b.divmod_const(x, k);
        let v = b.call(f, &[q]);
        let nz = b.is_pos(v);
        let zero = b.constant(0);
        select(b, nz, i, zero)
    })
}

pub(crate) fn running_zero_count(f: &LoopProgram) -> LoopProgram {
    unary("running_zero_count", |b, x| {
        let x1 = b.dup(x);
        b.inc(x1);
        zeros_below(b, f, x1)
    })
}

pub(crate) fn collapse_after_zero(f: &LoopProgram) -> LoopProgram {
    unary("collapse_after_zero", |b, x| {
        let p = b.pred(x);
        let v = b.call(f, &[p]);
        let nz = b.is_pos(v);
        let zero = b.constant(0);
        select(b, nz, x, zero)
    })
}

pub(crate) fn zero_more_marker(f: &LoopProgram) -> LoopProgram {
    unary("zero_more_marker", |b, x| {
        let p = b.pred(x);
        let z = zero_at(b, f, p);
        let pos = b.is_pos(x);
        let hit = b.and(pos, z);
        b.not(hit)
    })
}

/// `g(2i) = 2i+1`, `g(2i+1) = 2f(i)`, generalised to chains of length `n`.
pub(crate) fn chains(f: &LoopProgram, n: Nat) -> LoopProgram {
    unary("chains", |b, x| {
        let (q, j) = b.divmod_const(x, n);
        let last = b.constant(n - 1);
        let at_end = b.eq(j, last);
        let next = b.dup(x);
        b.inc(next);
        let v = b.call(f, &[q]);
        let jump = b.mul_const(v, n);
        select(b, at_end, jump, next)
    })
}

pub(crate) fn two_valued(f: &LoopProgram, a: Nat, bv: Nat) -> LoopProgram {
    unary("two_valued", |b, x| {
        let z = zero_at(b, f, x);
        let av = b.constant(a);
        let other = b.constant(bv);
        select(b, z, av, other)
    })
}

/// 1 if `f(m div 2)` already occurs among `f(i div 2)`, `i < m`.
fn repeats_earlier(b: &mut LoopBuilder, f: &LoopProgram, m: Var) -> (Var, Var) {
    let (hm, _) = b.divmod_const(m, 2);
    let gm = b.call(f, &[hm]);
    let found = b.constant(0);
    let i = b.constant(0);
    b.repeat(m, |b| {
        let (hi, _) = b.divmod_const(i, 2);
        let gi = b.call(f, &[hi]);
        let same = b.eq(gi, gm);
        b.when(same, |b| b.set_const(found, 1));
        b.inc(i);
    });
    (found, gm)
}

pub(crate) fn doubled_or_odd(f: &LoopProgram) -> LoopProgram {
    unary("doubled_or_odd", |b, x| {
        let repeats = b.constant(0);
        let m = b.constant(0);
        b.repeat(x, |b| {
            let (found, _) = repeats_earlier(b, f, m);
            b.add_into(repeats, found);
            b.inc(m);
        });
        let (found, gx) = repeats_earlier(b, f, x);
        let even = b.mul_const(gx, 2);
        let odd = b.mul_const(repeats, 2);
        b.inc(odd);
        select(b, found, odd, even)
    })
}
