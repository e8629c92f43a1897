//! Assembles Loop programs from arithmetic building blocks and inlined calls.
//!
//! Every operation allocates fresh registers and clears them before use, so
//! emitted code stays correct when it ends up inside a loop body.

use crate::loop_lang::{LoopProgram, ProgramError, Stmt, Var};
use crate::Nat;

#[derive(Debug)]
pub struct LoopBuilder {
    arity: usize,
    next: u32,
    blocks: Vec<Vec<Stmt>>,
}

impl LoopBuilder {
    pub fn new(arity: usize) -> Self {
        LoopBuilder { arity, next: arity as u32 + 1, blocks: vec![Vec::new()] }
    }

    /// Input register `i` (1-based).
    pub fn input(&self, i: usize) -> Var {
        assert!(i >= 1 && i <= self.arity, "input {i} out of range");
        Var(i as u32)
    }

    pub fn fresh(&mut self) -> Var {
        let v = Var(self.next);
        self.next += 1;
        v
    }

    pub fn emit(&mut self, s: Stmt) {
        self.blocks.last_mut().expect("builder block stack").push(s);
    }

    pub fn clear(&mut self, v: Var) {
        self.emit(Stmt::Clear(v));
    }

    pub fn inc(&mut self, v: Var) {
        self.emit(Stmt::Inc(v));
    }

    pub fn copy(&mut self, dst: Var, src: Var) {
        if dst != src {
            self.emit(Stmt::Copy(dst, src));
        }
    }

    /// A fresh register holding `src`.
    pub fn dup(&mut self, src: Var) -> Var {
        let r = self.fresh();
        self.copy(r, src);
        r
    }

    /// Sets `v` to the constant `c` with an inc-chain.
    pub fn set_const(&mut self, v: Var, c: Nat) {
        self.clear(v);
        for _ in 0..c {
            self.inc(v);
        }
    }

    pub fn constant(&mut self, c: Nat) -> Var {
        let r = self.fresh();
        self.set_const(r, c);
        r
    }

    /// `loop count { body }`.
    pub fn repeat(&mut self, count: Var, body: impl FnOnce(&mut Self)) {
        self.blocks.push(Vec::new());
        body(self);
        let inner = self.blocks.pop().expect("builder block stack");
        self.emit(Stmt::Loop(count, inner));
    }

    /// Runs `body` once if `flag` holds 1 and not at all if it holds 0.
    pub fn when(&mut self, flag: Var, body: impl FnOnce(&mut Self)) {
        self.repeat(flag, body);
    }

    /// `acc += v`.
    pub fn add_into(&mut self, acc: Var, v: Var) {
        assert_ne!(acc, v);
        self.repeat(v, |b| b.inc(acc));
    }

    pub fn add(&mut self, a: Var, b: Var) -> Var {
        let r = self.dup(a);
        self.add_into(r, b);
        r
    }

    /// `a ∸ 1`.
    pub fn pred(&mut self, a: Var) -> Var {
        let r = self.fresh();
        let t = self.fresh();
        self.clear(r);
        self.clear(t);
        self.repeat(a, |b| {
            b.copy(r, t);
            b.inc(t);
        });
        r
    }

    /// `a ∸ b`.
    pub fn monus(&mut self, a: Var, b: Var) -> Var {
        let r = self.fresh();
        self.copy(r, a);
        self.repeat(b, |bl| {
            let p = bl.pred(r);
            bl.copy(r, p);
        });
        r
    }

    /// 1 if `a = 0`, else 0.
    pub fn is_zero(&mut self, a: Var) -> Var {
        let r = self.constant(1);
        self.repeat(a, |b| b.clear(r));
        r
    }

    /// 1 if `a > 0`, else 0.
    pub fn is_pos(&mut self, a: Var) -> Var {
        let r = self.fresh();
        self.clear(r);
        self.repeat(a, |b| {
            b.clear(r);
            b.inc(r);
        });
        r
    }

    /// 1 if `a = b`, else 0, via `(a ∸ b) + (b ∸ a)`.
    pub fn eq(&mut self, a: Var, b: Var) -> Var {
        let d1 = self.monus(a, b);
        let d2 = self.monus(b, a);
        let s = self.add(d1, d2);
        self.is_zero(s)
    }

    /// Logical and of two 0/1 flags.
    pub fn and(&mut self, p: Var, q: Var) -> Var {
        let r = self.fresh();
        self.clear(r);
        self.when(p, |b| b.copy(r, q));
        r
    }

    /// `1 ∸ p` for a 0/1 flag.
    pub fn not(&mut self, p: Var) -> Var {
        self.is_zero(p)
    }

    pub fn mul_const(&mut self, a: Var, k: Nat) -> Var {
        let r = self.fresh();
        self.clear(r);
        self.repeat(a, |b| {
            for _ in 0..k {
                b.inc(r);
            }
        });
        r
    }

    /// `(a div k, a mod k)` for a constant `k ≥ 1`.
    pub fn divmod_const(&mut self, a: Var, k: Nat) -> (Var, Var) {
        assert!(k >= 1);
        let q = self.fresh();
        let r = self.fresh();
        let left = self.fresh();
        self.clear(q);
        self.clear(r);
        self.set_const(left, k);
        self.repeat(a, |b| {
            b.inc(r);
            let p = b.pred(left);
            b.copy(left, p);
            let z = b.is_zero(left);
            b.when(z, |b| {
                b.clear(r);
                b.inc(q);
                b.set_const(left, k);
            });
        });
        (q, r)
    }

    /// Inlines `p` on `args`; returns the register holding its result.
    pub fn call(&mut self, p: &LoopProgram, args: &[Var]) -> Var {
        assert_eq!(args.len(), p.arity(), "call of `{}` with wrong arity", p.name());
        let base = self.next;
        let width = p.width() as u32;
        self.next += width;
        for i in 0..width {
            self.clear(Var(base + i));
        }
        for (i, a) in args.iter().enumerate() {
            self.copy(Var(base + 1 + i as u32), *a);
        }
        for s in p.body() {
            self.emit(s.rename(&|v| Var(base + v.0)));
        }
        Var(base)
    }

    pub fn finish(mut self, name: &str, out: Var) -> Result<LoopProgram, ProgramError> {
        assert_eq!(self.blocks.len(), 1, "unbalanced builder blocks");
        self.copy(Var::OUT, out);
        let body = self.blocks.pop().unwrap_or_default();
        LoopProgram::new(name, self.arity, body)
    }
}
