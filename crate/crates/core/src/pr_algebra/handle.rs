use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::builder::LoopBuilder;
use crate::loop_lang::{eval_loop, ArityError, LoopProgram};
use crate::Nat;

/// Where a handle's evaluator comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Provenance {
    /// Evaluates a Loop program.
    Loop,
    /// Built from step-bounded runs of a While program (a `T`/`U` family).
    WhileFuel,
    /// A native Rust construction.
    Native,
}

type Evaluator = dyn Fn(&[Nat]) -> Vec<Nat> + Send + Sync;

/// A total function `ℕ^arity → ℕ^out_arity`.
#[derive(Clone)]
pub struct FnHandle {
    name: Arc<str>,
    arity: usize,
    out_arity: usize,
    eval: Arc<Evaluator>,
    source: Option<Arc<LoopProgram>>,
    provenance: Provenance,
}

impl fmt::Debug for FnHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnHandle")
            .field("name", &self.name)
            .field("arity", &self.arity)
            .field("out_arity", &self.out_arity)
            .field("provenance", &self.provenance)
            .field("has_source", &self.source.is_some())
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HandleError {
    #[error(transparent)]
    Arity(#[from] ArityError),
    #[error("{0}")]
    Shape(String),
}

impl FnHandle {
    pub fn native(
        name: impl Into<String>,
        arity: usize,
        out_arity: usize,
        f: impl Fn(&[Nat]) -> Vec<Nat> + Send + Sync + 'static,
    ) -> Self {
        assert!(out_arity >= 1, "handles produce at least one output");
        FnHandle {
            name: Arc::from(name.into()),
            arity,
            out_arity,
            eval: Arc::new(f),
            source: None,
            provenance: Provenance::Native,
        }
    }

    /// Single-output native function of any arity.
    pub fn scalar(name: impl Into<String>, arity: usize, f: impl Fn(&[Nat]) -> Nat + Send + Sync + 'static) -> Self {
        FnHandle::native(name, arity, 1, move |a| vec![f(a)])
    }

    pub fn unary(name: impl Into<String>, f: impl Fn(Nat) -> Nat + Send + Sync + 'static) -> Self {
        FnHandle::scalar(name, 1, move |a| f(a[0]))
    }

    pub fn constant(c: Nat) -> Self {
        FnHandle::unary(format!("const{c}"), move |_| c)
    }

    pub fn identity() -> Self {
        FnHandle::unary("id", |x| x)
    }

    /// A handle evaluating `p` by direct interpretation.
    pub fn from_loop(p: LoopProgram) -> Self {
        let p = Arc::new(p);
        let q = p.clone();
        FnHandle {
            name: Arc::from(p.name()),
            arity: p.arity(),
            out_arity: 1,
            eval: Arc::new(move |a| vec![eval_loop(&q, a).expect("arity checked by FnHandle").0]),
            source: Some(p),
            provenance: Provenance::Loop,
        }
    }

    /// Attaches a Loop program computing the same function as this handle's
    /// evaluator. The evaluator is kept; callers vouch for agreement.
    pub fn with_source(mut self, p: LoopProgram) -> Self {
        assert_eq!(p.arity(), self.arity, "source arity");
        assert_eq!(self.out_arity, 1, "Loop sources have one output");
        self.source = Some(Arc::new(p));
        self
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = Arc::from(name.into());
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn out_arity(&self) -> usize {
        self.out_arity
    }

    pub fn source(&self) -> Option<&LoopProgram> {
        self.source.as_deref()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn eval(&self, args: &[Nat]) -> Result<Vec<Nat>, ArityError> {
        if args.len() != self.arity {
            return Err(ArityError { expected: self.arity, got: args.len() });
        }
        Ok((self.eval)(args))
    }

    /// First output. Panics on an arity mismatch.
    pub fn apply(&self, args: &[Nat]) -> Nat {
        assert_eq!(args.len(), self.arity, "`{}` applied to {} argument(s)", self.name, args.len());
        (self.eval)(args)[0]
    }

    /// Shorthand for unary single-output handles.
    pub fn at(&self, x: Nat) -> Nat {
        self.apply(&[x])
    }

    /// The same function with results cached. Purely an optimisation.
    pub fn memoized(&self) -> FnHandle {
        let inner = self.eval.clone();
        let cache: Mutex<HashMap<Vec<Nat>, Vec<Nat>>> = Mutex::new(HashMap::new());
        let mut h = self.clone();
        h.eval = Arc::new(move |a| {
            if let Some(v) = cache.lock().unwrap_or_else(|e| e.into_inner()).get(a) {
                return v.clone();
            }
            let v = inner(a);
            cache.lock().unwrap_or_else(|e| e.into_inner()).insert(a.to_vec(), v.clone());
            v
        });
        h
    }
}

/// `x̄ ↦ outer(inner₁(x̄), …, innerₘ(x̄))`. When every part has a Loop source
/// the result carries the fused Loop program too.
pub fn compose(outer: &FnHandle, inners: &[FnHandle]) -> Result<FnHandle, HandleError> {
    let Some(first) = inners.first() else {
        return Err(HandleError::Shape("composition needs at least one inner function".into()));
    };
    let n = first.arity;
    if let Some(bad) = inners.iter().find(|h| h.arity != n) {
        return Err(HandleError::Shape(format!(
            "inner functions disagree on arity: `{}` has {}, `{}` has {}",
            first.name, n, bad.name, bad.arity
        )));
    }
    let total: usize = inners.iter().map(|h| h.out_arity).sum();
    if total != outer.arity {
        return Err(ArityError { expected: outer.arity, got: total }.into());
    }
    let name = format!("{}({})", outer.name, inners.iter().map(|h| h.name()).collect::<Vec<_>>().join(", "));
    let o = outer.eval.clone();
    let ins: Vec<Arc<Evaluator>> = inners.iter().map(|h| h.eval.clone()).collect();
    let mut h = FnHandle::native(name, n, outer.out_arity, move |a| {
        let mid: Vec<Nat> = ins.iter().flat_map(|f| f(a)).collect();
        o(&mid)
    });
    let sources: Option<Vec<&LoopProgram>> = inners.iter().map(|h| h.source()).collect();
    if let (Some(out_src), Some(srcs)) = (outer.source(), sources) {
        h = h.with_source(fuse(out_src, &srcs, n));
    }
    let all_loop = outer.provenance == Provenance::Loop && inners.iter().all(|h| h.provenance == Provenance::Loop);
    if !all_loop && [outer].into_iter().chain(inners).any(|h| h.provenance == Provenance::WhileFuel) {
        h.provenance = Provenance::WhileFuel;
    }
    Ok(h)
}

fn fuse(outer: &LoopProgram, inners: &[&LoopProgram], n: usize) -> LoopProgram {
    let mut b = LoopBuilder::new(n);
    let inputs: Vec<_> = (1..=n).map(|i| b.input(i)).collect();
    let mids: Vec<_> = inners.iter().map(|p| b.call(p, &inputs)).collect();
    let out = b.call(outer, &mids);
    b.finish(&format!("{}_fused", outer.name()), out).expect("fused program is well formed")
}

/// `ȳ ↦ f(c̄, ȳ)` for a frozen prefix `c̄`. A Loop source is specialised by
/// inlining the constants as inc-chains.
pub fn smn_specialize(f: &FnHandle, prefix: &[Nat]) -> Result<FnHandle, HandleError> {
    if prefix.len() >= f.arity {
        return Err(HandleError::Shape(format!(
            "prefix of length {} leaves no argument of `{}` (arity {})",
            prefix.len(),
            f.name,
            f.arity
        )));
    }
    let k = prefix.len();
    let rest = f.arity - k;
    let inner = f.eval.clone();
    let fixed = prefix.to_vec();
    let name = format!("{}[{}]", f.name, prefix.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","));
    let mut h = FnHandle::native(name, rest, f.out_arity, move |a| {
        let mut full = fixed.clone();
        full.extend_from_slice(a);
        inner(&full)
    });
    h.provenance = f.provenance;
    if let Some(src) = f.source() {
        let mut b = LoopBuilder::new(rest);
        let mut args: Vec<_> = prefix.iter().map(|&c| b.constant(c)).collect();
        args.extend((1..=rest).map(|i| b.input(i)));
        let out = b.call(src, &args);
        h = h.with_source(b.finish(&format!("{}_s", src.name()), out).expect("specialised program"));
    }
    Ok(h)
}

/// `g(x) = Σ_{i<x} f(i)`.
pub fn prefix_sum(f: &FnHandle) -> Result<FnHandle, HandleError> {
    if f.arity != 1 || f.out_arity != 1 {
        return Err(ArityError { expected: 1, got: f.arity }.into());
    }
    let inner = f.eval.clone();
    let mut h = FnHandle::unary(format!("sum_{}", f.name), move |x| {
        (0..x).fold(0 as Nat, |acc, i| acc.saturating_add(inner(&[i])[0]))
    });
    h.provenance = f.provenance;
    if let Some(src) = f.source() {
        let mut b = LoopBuilder::new(1);
        let x = b.input(1);
        let acc = b.constant(0);
        let i = b.constant(0);
        b.repeat(x, |b| {
            let v = b.call(src, &[i]);
            b.add_into(acc, v);
            b.inc(i);
        });
        h = h.with_source(b.finish(&format!("sum_{}", src.name()), acc).expect("prefix-sum program"));
    }
    Ok(h)
}

/// The `n`-fold composition `f ∘ … ∘ f`.
pub fn iterate(f: &FnHandle, n: usize) -> Result<FnHandle, HandleError> {
    if n == 0 {
        return Err(HandleError::Shape("iteration count must be at least 1".into()));
    }
    if f.arity != 1 || f.out_arity != 1 {
        return Err(ArityError { expected: 1, got: f.arity }.into());
    }
    let mut h = f.clone();
    for _ in 1..n {
        h = compose(f, &[h])?;
    }
    Ok(h.renamed(format!("{}^{}", f.name, n)))
}

/// Side-by-side multifunction `x̄ ↦ (h₁(x̄), …, hₘ(x̄))`.
pub fn juxtapose(name: impl Into<String>, parts: &[FnHandle], arity: usize) -> Result<FnHandle, HandleError> {
    if let Some(bad) = parts.iter().find(|h| h.arity != arity) {
        return Err(ArityError { expected: arity, got: bad.arity }.into());
    }
    if parts.is_empty() {
        return Err(HandleError::Shape("a multifunction needs at least one component".into()));
    }
    let out: usize = parts.iter().map(|h| h.out_arity).sum();
    let evals: Vec<Arc<Evaluator>> = parts.iter().map(|h| h.eval.clone()).collect();
    Ok(FnHandle::native(name, arity, out, move |a| evals.iter().flat_map(|f| f(a)).collect()))
}
