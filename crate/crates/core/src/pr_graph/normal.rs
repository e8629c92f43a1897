//! Node classification relative to the hole and the three inlining steps
//! that bring an expression to `h(x̄, f(g(x̄)))`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::{term_handle, AcyclicExpr, Operand, Term};
use crate::pr_algebra::{juxtapose, FnHandle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum NodeClass {
    /// Has a path into the hole.
    InpF,
    /// Reachable from the hole.
    OutF,
    Neither,
}

impl fmt::Display for NodeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NodeClass::InpF => "INP-f",
            NodeClass::OutF => "OUT-f",
            NodeClass::Neither => "NEITHER",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classified {
    pub var: String,
    pub func: String,
    pub class: NodeClass,
}

fn reach(d: &AcyclicExpr) -> (Vec<bool>, Vec<bool>) {
    let nodes = d.nodes();
    let hole = d.hole_index();
    let mut anc = vec![false; nodes.len()];
    let mut desc = vec![false; nodes.len()];
    anc[hole] = true;
    for j in (0..=hole).rev() {
        if anc[j] {
            for &o in &nodes[j].args {
                if let Operand::Node(k) = o {
                    anc[k] = true;
                }
            }
        }
    }
    desc[hole] = true;
    for j in hole + 1..nodes.len() {
        desc[j] = nodes[j].args.iter().any(|&o| matches!(o, Operand::Node(k) if desc[k]));
    }
    anc[hole] = false;
    desc[hole] = false;
    (anc, desc)
}

fn class_vec(d: &AcyclicExpr) -> Vec<Option<NodeClass>> {
    let (anc, desc) = reach(d);
    (0..d.nodes().len())
        .map(|j| {
            (j != d.hole_index()).then(|| match (anc[j], desc[j]) {
                (true, _) => NodeClass::InpF,
                (_, true) => NodeClass::OutF,
                _ => NodeClass::Neither,
            })
        })
        .collect()
}

/// Every fixed-function node, in topological order.
pub fn classify_nodes(d: &AcyclicExpr) -> Vec<Classified> {
    d.nodes()
        .iter()
        .zip(class_vec(d))
        .filter_map(|(n, c)| c.map(|class| Classified { var: n.var.clone(), func: n.func.clone(), class }))
        .collect()
}

fn operand_term(d: &AcyclicExpr, o: Operand) -> Term {
    match o {
        Operand::Input(i) => Term::Var(d.inputs()[i].clone()),
        Operand::Node(k) => Term::Var(d.nodes()[k].var.clone()),
    }
}

/// The expression as one term, shared subterms repeated.
pub fn expand_expression(d: &AcyclicExpr) -> Term {
    let mut terms: Vec<Term> = Vec::with_capacity(d.nodes().len());
    for n in d.nodes() {
        let args = n
            .args
            .iter()
            .map(|&o| match o {
                Operand::Input(i) => Term::Var(d.inputs()[i].clone()),
                Operand::Node(k) => terms[k].clone(),
            })
            .collect();
        terms.push(Term::App(n.func.clone(), args));
    }
    terms.pop().expect("non-empty")
}

#[derive(Debug, Clone)]
pub struct NormalForm {
    pub inputs: Vec<String>,
    pub hole_name: String,
    /// The variable standing for the hole's value inside `h`.
    pub hole_var: String,
    pub g: Vec<Term>,
    pub h: Term,
    /// One line per inlining performed.
    pub trace: Vec<String>,
    pub(crate) impls: BTreeMap<String, FnHandle>,
}

impl NormalForm {
    pub fn render_g(&self) -> String {
        let parts: Vec<String> = self.g.iter().map(Term::to_string).collect();
        format!("g({}) = <{}>", self.inputs.join(","), parts.join(","))
    }

    pub fn render_h(&self) -> String {
        format!("h({},{}) = {}", self.inputs.join(","), self.hole_var, self.h)
    }

    /// `g` as a multifunction of the inputs.
    pub fn g_handle(&self) -> FnHandle {
        let parts: Vec<FnHandle> = self
            .g
            .iter()
            .enumerate()
            .map(|(i, t)| term_handle(format!("g{}", i + 1), self.inputs.clone(), t.clone(), self.impls.clone()))
            .collect();
        juxtapose("g", &parts, self.inputs.len()).expect("components share the input arity")
    }

    /// `h` with the hole's value as the last argument.
    pub fn h_handle(&self) -> FnHandle {
        let mut vars = self.inputs.clone();
        vars.push(self.hole_var.clone());
        term_handle("h".into(), vars, self.h.clone(), self.impls.clone())
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.render_g())?;
        write!(f, "{}", self.render_h())
    }
}

/// Inlines INP-f nodes into their non-INP users (keeping the hole's
/// immediate predecessors as `g`), then OUT-f nodes, then NEITHER nodes,
/// leaving the output node as `h`.
pub fn normalize(d: &AcyclicExpr) -> NormalForm {
    let nodes = d.nodes();
    let hole = d.hole_index();
    let out = nodes.len() - 1;
    let classes = class_vec(d);
    let mut rhs: Vec<Option<Term>> = nodes
        .iter()
        .map(|n| Some(Term::App(n.func.clone(), n.args.iter().map(|&o| operand_term(d, o)).collect())))
        .collect();
    let immediate: Vec<bool> =
        (0..nodes.len()).map(|j| nodes[hole].args.contains(&Operand::Node(j))).collect();
    let mut trace = Vec::new();

    let mut inline = |rhs: &mut Vec<Option<Term>>, u: usize, into: &dyn Fn(usize) -> bool, step: usize| {
        let by = rhs[u].clone().expect("inlined once");
        let var = &nodes[u].var;
        let mut users = Vec::new();
        for v in u + 1..nodes.len() {
            if v == hole || !into(v) {
                continue;
            }
            if let Some(t) = &rhs[v] {
                if t.mentions(var) {
                    rhs[v] = Some(t.substitute(var, &by));
                    users.push(nodes[v].var.as_str());
                }
            }
        }
        if !users.is_empty() {
            trace.push(format!("step {step}: {var} = {by} into {}", users.join(", ")));
        }
    };

    for u in 0..nodes.len() {
        if classes[u] == Some(NodeClass::InpF) && !immediate[u] {
            inline(&mut rhs, u, &|_| true, 1);
            rhs[u] = None;
        }
    }
    for u in 0..nodes.len() {
        if immediate[u] {
            // Earlier predecessors are already expanded.
            for k in (0..u).filter(|&k| immediate[k]) {
                let t = rhs[u].take().expect("kept");
                rhs[u] = Some(t.substitute(&nodes[k].var, rhs[k].as_ref().expect("kept")));
            }
            inline(&mut rhs, u, &|v| classes[v] != Some(NodeClass::InpF), 1);
        }
    }
    for (step, class) in [(2, NodeClass::OutF), (3, NodeClass::Neither)] {
        for u in 0..out {
            if classes[u] == Some(class) {
                inline(&mut rhs, u, &|_| true, step);
                rhs[u] = None;
            }
        }
    }

    let hole_var = nodes[hole].var.clone();
    let h = if hole == out { Term::Var(hole_var.clone()) } else { rhs[out].clone().expect("output kept") };
    let g = nodes[hole]
        .args
        .iter()
        .map(|&o| match o {
            Operand::Node(k) => rhs[k].clone().expect("kept"),
            Operand::Input(_) => operand_term(d, o),
        })
        .collect();
    NormalForm {
        inputs: d.inputs().to_vec(),
        hole_name: d.hole_name().to_string(),
        hole_var,
        g,
        h,
        trace,
        impls: d.impls().clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::ag;
    use super::super::*;
    use super::*;

    #[test]
    fn worked_example_classes() {
        let classes: Vec<(String, NodeClass)> = classify_nodes(&ag()).into_iter().map(|c| (c.func, c.class)).collect();
        assert_eq!(
            classes,
            [("q".into(), NodeClass::InpF), ("p".into(), NodeClass::Neither), ("m".into(), NodeClass::OutF)]
        );
    }

    #[test]
    fn worked_example_normal_form() {
        let nf = normalize(&ag());
        assert_eq!(nf.render_g(), "g(x1,x2) = <x1,q(x1,x2)>");
        assert_eq!(nf.render_h(), "h(x1,x2,y') = m(y',q(x1,x2),p(q(x1,x2),x2))");
    }

    #[test]
    fn worked_example_expansion_repeats_shared_node() {
        let t = expand_expression(&ag());
        assert_eq!(t.to_string(), "m(f(x1,q(x1,x2)),q(x1,x2),p(q(x1,x2),x2))");
        let q = Term::App("q".into(), vec![Term::Var("x1".into()), Term::Var("x2".into())]);
        assert_eq!(t.occurrences(&q), 3);
    }

    #[test]
    fn normal_form_agrees_on_worked_example() {
        let d = ag();
        let nf = normalize(&d);
        let holes = hole_panel(2);
        for hole in &holes {
            for a in 0..6 {
                for b in 0..6 {
                    let want = eval_dag(&d, hole, &[a, b]).unwrap();
                    assert_eq!(eval_normal_form(&nf, hole, &[a, b]).unwrap(), want);
                    let gx = nf.g_handle().eval(&[a, b]).unwrap();
                    assert_eq!(nf.h_handle().apply(&[a, b, hole.apply(&gx)]), want);
                }
            }
        }
    }

    #[test]
    fn chain_and_bare_hole() {
        let reg = default_registry();
        let d = build_dag(&parse_dag("#inputs x\n#hole f\nu = succ(x)\nv = f(u)\nw = double(v)\n").unwrap(), &reg).unwrap();
        let c: Vec<NodeClass> = classify_nodes(&d).into_iter().map(|c| c.class).collect();
        assert_eq!(c, [NodeClass::InpF, NodeClass::OutF]);
        let nf = normalize(&d);
        assert_eq!(nf.render_g(), "g(x) = <succ(x)>");
        assert_eq!(nf.render_h(), "h(x,v) = double(v)");

        let d = build_dag(&parse_dag("#inputs a b\n#hole f\ny = f(b, a)\n").unwrap(), &reg).unwrap();
        assert!(classify_nodes(&d).is_empty());
        let nf = normalize(&d);
        assert_eq!(nf.to_string(), "g(a,b) = <b,a>\nh(a,b,y) = y");
    }

    #[test]
    fn stacked_predecessors_expand_into_g() {
        let reg = default_registry();
        let text = "#inputs x\n#hole f\na = succ(x)\nb = double(a)\ny' = f(a, b)\ny = add(y', b)\n";
        let d = build_dag(&parse_dag(text).unwrap(), &reg).unwrap();
        let nf = normalize(&d);
        assert_eq!(nf.render_g(), "g(x) = <succ(x),double(succ(x))>");
        assert_eq!(nf.render_h(), "h(x,y') = add(y',double(succ(x)))");
        for x in 0..8 {
            let hole = FnHandle::scalar("sub", 2, |a| a[1] - a[0]);
            assert_eq!(eval_normal_form(&nf, &hole, &[x]).unwrap(), eval_dag(&d, &hole, &[x]).unwrap());
        }
    }
}
