//! Acyclic expressions built from fixed functions and one hole `f`, their
//! equation-system form, and rewriting into the normal form
//! `h(x̄, f(g(x̄)))`.

mod normal;
mod parse;
mod random;

pub use normal::{classify_nodes, expand_expression, normalize, Classified, NodeClass, NormalForm};
pub use parse::{parse_dag, print_dag};
pub use random::{hole_panel, random_registry, random_system};

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pr_algebra::{checked_pair, library, FnHandle};
use crate::Nat;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equation {
    pub lhs: String,
    pub func: String,
    pub args: Vec<String>,
}

/// Equations `v = s(w₁, …, wₘ)`; the last one defines the output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationSystem {
    pub inputs: Vec<String>,
    pub hole: String,
    /// Arities of functions that are not in the registry.
    pub decls: BTreeMap<String, usize>,
    pub equations: Vec<Equation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DagError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: port `{port}` is fed by more than one source")]
    FanIn { line: usize, port: String },
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("`{0}` is defined twice or redefines an input")]
    Redefined(String),
    #[error("cyclic definitions among {0:?}")]
    Cycle(Vec<String>),
    #[error("the hole `{0}` does not occur")]
    NoHole(String),
    #[error("the hole `{name}` occurs {count} times")]
    MultipleHoles { name: String, count: usize },
    #[error("the hole takes no arguments")]
    EmptyHole,
    #[error("`{0}` is defined but never used")]
    DeadOutput(String),
    #[error("the output `{0}` is used inside the expression")]
    OutputUsed(String),
    #[error("the system has no equations")]
    Empty,
    #[error("`{name}` takes {expected} argument(s), got {got}")]
    Arity { name: String, expected: usize, got: usize },
    #[error("no implementation bound for `{0}`")]
    Unbound(String),
}

/// Fixed functions by name.
pub type Registry = BTreeMap<String, FnHandle>;

/// The bundled Loop programs plus `pair`, `max` and `min`.
pub fn default_registry() -> Registry {
    let mut r: Registry = library::names().filter_map(|n| library::handle(n).map(|h| (n.to_string(), h))).collect();
    r.insert("pair".into(), FnHandle::scalar("pair", 2, |a| checked_pair(a[0], a[1]).unwrap_or(Nat::MAX)));
    r.insert("max".into(), FnHandle::scalar("max", 2, |a| a[0].max(a[1])));
    r.insert("min".into(), FnHandle::scalar("min", 2, |a| a[0].min(a[1])));
    r
}

/// A function argument: an input variable or an earlier node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Operand {
    Input(usize),
    Node(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FnNode {
    pub var: String,
    pub func: String,
    pub args: Vec<Operand>,
}

/// A validated acyclic expression. Nodes are stored in topological order
/// (ties broken by equation order), so the output is the last node.
#[derive(Debug, Clone)]
pub struct AcyclicExpr {
    inputs: Vec<String>,
    hole_name: String,
    nodes: Vec<FnNode>,
    hole: usize,
    arities: BTreeMap<String, usize>,
    impls: BTreeMap<String, FnHandle>,
}

impl AcyclicExpr {
    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn nodes(&self) -> &[FnNode] {
        &self.nodes
    }

    pub fn hole(&self) -> &FnNode {
        &self.nodes[self.hole]
    }

    pub fn hole_index(&self) -> usize {
        self.hole
    }

    pub fn hole_name(&self) -> &str {
        &self.hole_name
    }

    pub fn hole_arity(&self) -> usize {
        self.nodes[self.hole].args.len()
    }

    pub fn output(&self) -> &FnNode {
        self.nodes.last().expect("validated systems are non-empty")
    }

    /// Binds an implementation to a declared fixed function.
    pub fn bind(&mut self, name: &str, h: FnHandle) -> Result<(), DagError> {
        let expected = *self.arities.get(name).ok_or_else(|| DagError::UnknownFunction(name.into()))?;
        if h.arity() != expected || h.out_arity() != 1 {
            return Err(DagError::Arity { name: name.into(), expected, got: h.arity() });
        }
        self.impls.insert(name.into(), h);
        Ok(())
    }

    pub(crate) fn impls(&self) -> &BTreeMap<String, FnHandle> {
        &self.impls
    }

    fn operand_name(&self, o: Operand) -> &str {
        match o {
            Operand::Input(i) => &self.inputs[i],
            Operand::Node(j) => &self.nodes[j].var,
        }
    }

    /// Back to equations, in topological order.
    pub fn to_system(&self) -> EquationSystem {
        EquationSystem {
            inputs: self.inputs.clone(),
            hole: self.hole_name.clone(),
            decls: self.arities.iter().filter(|(n, _)| !self.impls.contains_key(*n)).map(|(n, a)| (n.clone(), *a)).collect(),
            equations: self
                .nodes
                .iter()
                .map(|n| Equation {
                    lhs: n.var.clone(),
                    func: n.func.clone(),
                    args: n.args.iter().map(|&o| self.operand_name(o).to_string()).collect(),
                })
                .collect(),
        }
    }
}

/// Validates `sys` and resolves its fixed functions against `registry`
/// (falling back to the system's `#fn` declarations).
pub fn build_dag(sys: &EquationSystem, registry: &Registry) -> Result<AcyclicExpr, DagError> {
    let last = sys.equations.last().ok_or(DagError::Empty)?;
    let mut defined: HashMap<&str, usize> = HashMap::new();
    for (i, x) in sys.inputs.iter().enumerate() {
        if defined.insert(x, usize::MAX - i).is_some() {
            return Err(DagError::Redefined(x.clone()));
        }
    }
    for (j, e) in sys.equations.iter().enumerate() {
        if defined.insert(&e.lhs, j).is_some() {
            return Err(DagError::Redefined(e.lhs.clone()));
        }
    }
    let holes: Vec<usize> = (0..sys.equations.len()).filter(|&j| sys.equations[j].func == sys.hole).collect();
    match holes.len() {
        0 => return Err(DagError::NoHole(sys.hole.clone())),
        1 => {}
        count => return Err(DagError::MultipleHoles { name: sys.hole.clone(), count }),
    }
    if sys.equations[holes[0]].args.is_empty() {
        return Err(DagError::EmptyHole);
    }

    let mut arities = BTreeMap::new();
    let mut impls = BTreeMap::new();
    for e in sys.equations.iter().filter(|e| e.func != sys.hole) {
        let expected = match (registry.get(&e.func), sys.decls.get(&e.func)) {
            (Some(h), _) => {
                impls.insert(e.func.clone(), h.clone());
                h.arity()
            }
            (None, Some(&a)) => a,
            (None, None) => return Err(DagError::UnknownFunction(e.func.clone())),
        };
        if e.args.len() != expected {
            return Err(DagError::Arity { name: e.func.clone(), expected, got: e.args.len() });
        }
        arities.insert(e.func.clone(), expected);
    }

    // Dependencies between equations, then Kahn's algorithm with the
    // smallest equation index first.
    let n = sys.equations.len();
    let mut deps: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    let mut users: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (j, e) in sys.equations.iter().enumerate() {
        for a in &e.args {
            match defined.get(a.as_str()) {
                None => return Err(DagError::UnknownVariable(a.clone())),
                Some(&d) if d < n => {
                    if deps[j].insert(d) {
                        users[d].push(j);
                    }
                }
                Some(_) => {}
            }
        }
    }
    for (j, e) in sys.equations.iter().enumerate() {
        if j + 1 == n && !users[j].is_empty() {
            return Err(DagError::OutputUsed(last.lhs.clone()));
        }
        if j + 1 < n && users[j].is_empty() {
            return Err(DagError::DeadOutput(e.lhs.clone()));
        }
    }
    let mut indeg: Vec<usize> = deps.iter().map(|d| d.len()).collect();
    let mut ready: BTreeSet<usize> = (0..n).filter(|&j| indeg[j] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(j) = ready.pop_first() {
        order.push(j);
        for &u in &users[j] {
            indeg[u] -= 1;
            if indeg[u] == 0 {
                ready.insert(u);
            }
        }
    }
    if order.len() < n {
        let stuck = (0..n).filter(|j| !order.contains(j)).map(|j| sys.equations[j].lhs.clone()).collect();
        return Err(DagError::Cycle(stuck));
    }
    let mut position = vec![0; n];
    for (p, &j) in order.iter().enumerate() {
        position[j] = p;
    }
    let nodes = order
        .iter()
        .map(|&j| {
            let e = &sys.equations[j];
            let args = e
                .args
                .iter()
                .map(|a| match defined[a.as_str()] {
                    d if d < n => Operand::Node(position[d]),
                    d => Operand::Input(usize::MAX - d),
                })
                .collect();
            FnNode { var: e.lhs.clone(), func: e.func.clone(), args }
        })
        .collect();
    Ok(AcyclicExpr {
        inputs: sys.inputs.clone(),
        hole_name: sys.hole.clone(),
        nodes,
        hole: position[holes[0]],
        arities,
        impls,
    })
}

fn check_call(d_inputs: usize, hole_arity: usize, hole: &FnHandle, args: &[Nat]) -> Result<(), DagError> {
    if args.len() != d_inputs {
        return Err(DagError::Arity { name: "input".into(), expected: d_inputs, got: args.len() });
    }
    if hole.arity() != hole_arity {
        return Err(DagError::Arity { name: hole.name().into(), expected: hole_arity, got: hole.arity() });
    }
    Ok(())
}

/// Evaluates the expression with `hole` in place of `f`, in topological order.
pub fn eval_dag(d: &AcyclicExpr, hole: &FnHandle, args: &[Nat]) -> Result<Nat, DagError> {
    check_call(d.inputs.len(), d.hole_arity(), hole, args)?;
    let mut vals: Vec<Nat> = Vec::with_capacity(d.nodes.len());
    for (j, node) in d.nodes.iter().enumerate() {
        let a: Vec<Nat> = node
            .args
            .iter()
            .map(|&o| match o {
                Operand::Input(i) => args[i],
                Operand::Node(k) => vals[k],
            })
            .collect();
        let v = if j == d.hole {
            hole.apply(&a)
        } else {
            d.impls.get(&node.func).ok_or_else(|| DagError::Unbound(node.func.clone()))?.apply(&a)
        };
        vals.push(v);
    }
    Ok(*vals.last().expect("non-empty"))
}

/// A closed term over named variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::App(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl Term {
    /// Occurrences of `sub` as a subterm.
    pub fn occurrences(&self, sub: &Term) -> usize {
        let inner = match self {
            Term::Var(_) => 0,
            Term::App(_, args) => args.iter().map(|a| a.occurrences(sub)).sum(),
        };
        inner + usize::from(self == sub)
    }

    /// Replaces every `Var(var)` by `by`.
    pub fn substitute(&self, var: &str, by: &Term) -> Term {
        match self {
            Term::Var(v) if v == var => by.clone(),
            Term::Var(_) => self.clone(),
            Term::App(name, args) => Term::App(name.clone(), args.iter().map(|a| a.substitute(var, by)).collect()),
        }
    }

    pub fn mentions(&self, var: &str) -> bool {
        match self {
            Term::Var(v) => v == var,
            Term::App(_, args) => args.iter().any(|a| a.mentions(var)),
        }
    }

    pub fn eval(&self, env: &HashMap<&str, Nat>, impls: &BTreeMap<String, FnHandle>) -> Result<Nat, DagError> {
        match self {
            Term::Var(v) => env.get(v.as_str()).copied().ok_or_else(|| DagError::UnknownVariable(v.clone())),
            Term::App(name, args) => {
                let h = impls.get(name).ok_or_else(|| DagError::Unbound(name.clone()))?;
                let vals = args.iter().map(|a| a.eval(env, impls)).collect::<Result<Vec<_>, _>>()?;
                Ok(h.apply(&vals))
            }
        }
    }
}

/// `h(x̄, hole(g(x̄)))`.
pub fn eval_normal_form(nf: &NormalForm, hole: &FnHandle, args: &[Nat]) -> Result<Nat, DagError> {
    check_call(nf.inputs.len(), nf.g.len(), hole, args)?;
    let mut env: HashMap<&str, Nat> = nf.inputs.iter().map(String::as_str).zip(args.iter().copied()).collect();
    let gx = nf.g.iter().map(|t| t.eval(&env, &nf.impls)).collect::<Result<Vec<_>, _>>()?;
    env.insert(&nf.hole_var, hole.apply(&gx));
    nf.h.eval(&env, &nf.impls)
}

/// The first `x̄ ∈ [0, window]ⁿ` in lexicographic order with
/// `h(x̄, hole(g(x̄))) = 0`.
pub fn existence_condition(nf: &NormalForm, hole: &FnHandle, window: Nat) -> Result<Option<Vec<Nat>>, DagError> {
    let n = nf.inputs.len();
    let mut x = vec![0; n];
    loop {
        if eval_normal_form(nf, hole, &x)? == 0 {
            return Ok(Some(x));
        }
        // Odometer with the last coordinate fastest.
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if x[i] < window {
                x[i] += 1;
                break;
            }
            x[i] = 0;
        }
    }
}

/// A handle evaluating `term` with `vars` bound positionally.
pub(crate) fn term_handle(name: String, vars: Vec<String>, term: Term, impls: BTreeMap<String, FnHandle>) -> FnHandle {
    let arity = vars.len();
    let impls = Arc::new(impls);
    FnHandle::scalar(name, arity, move |a| {
        let env: HashMap<&str, Nat> = vars.iter().map(String::as_str).zip(a.iter().copied()).collect();
        term.eval(&env, &impls).unwrap_or_else(|e| panic!("{e}"))
    })
}
