//! The `.dag` text format: one `v = name(args…)` equation per line plus
//! `#inputs`, `#hole` and `#fn name arity` directives. `//` starts a comment.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{DagError, Equation, EquationSystem};

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

fn ident(line: usize, s: &str) -> Result<String, DagError> {
    let s = s.trim();
    if is_ident(s) {
        Ok(s.to_string())
    } else {
        Err(DagError::Parse { line, msg: format!("`{s}` is not an identifier") })
    }
}

pub fn parse_dag(text: &str) -> Result<EquationSystem, DagError> {
    let mut inputs = None;
    let mut hole = None;
    let mut decls = BTreeMap::new();
    let mut equations = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split("//").next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(d) = body.strip_prefix('#') {
            let mut words = d.split_whitespace();
            match words.next() {
                Some("inputs") => {
                    let names = words.map(|w| ident(line, w)).collect::<Result<Vec<_>, _>>()?;
                    if inputs.replace(names).is_some() {
                        return Err(DagError::Parse { line, msg: "second #inputs directive".into() });
                    }
                }
                Some("hole") => {
                    let name = words.next().ok_or(DagError::Parse { line, msg: "#hole needs a name".into() })?;
                    if hole.replace(ident(line, name)?).is_some() {
                        return Err(DagError::Parse { line, msg: "second #hole directive".into() });
                    }
                }
                Some("fn") => {
                    let (Some(name), Some(arity), None) = (words.next(), words.next(), words.next()) else {
                        return Err(DagError::Parse { line, msg: "expected `#fn name arity`".into() });
                    };
                    let arity = arity
                        .parse::<usize>()
                        .map_err(|_| DagError::Parse { line, msg: format!("bad arity `{arity}`") })?;
                    decls.insert(ident(line, name)?, arity);
                }
                other => {
                    return Err(DagError::Parse { line, msg: format!("unknown directive `#{}`", other.unwrap_or("")) })
                }
            }
            continue;
        }
        equations.push(equation(line, body)?);
    }
    let inputs = inputs.ok_or(DagError::Parse { line: 0, msg: "missing #inputs directive".into() })?;
    let hole = hole.ok_or(DagError::Parse { line: 0, msg: "missing #hole directive".into() })?;
    Ok(EquationSystem { inputs, hole, decls, equations })
}

fn equation(line: usize, body: &str) -> Result<Equation, DagError> {
    let (lhs, rhs) = body.split_once('=').ok_or(DagError::Parse { line, msg: "expected `v = name(args)`".into() })?;
    let lhs = ident(line, lhs)?;
    let rhs = rhs.trim();
    let (func, rest) = rhs.split_once('(').ok_or(DagError::Parse { line, msg: "expected `(`".into() })?;
    let func = ident(line, func)?;
    let inner = rest.strip_suffix(')').ok_or(DagError::Parse { line, msg: "expected `)` at end of line".into() })?;
    let args = if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner
            .split(',')
            .map(|a| {
                let a = a.trim();
                if a.split_whitespace().count() > 1 || a.contains('|') {
                    return Err(DagError::FanIn { line, port: a.to_string() });
                }
                ident(line, a)
            })
            .collect::<Result<Vec<_>, _>>()?
    };
    Ok(Equation { lhs, func, args })
}

pub fn print_dag(sys: &EquationSystem) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "#inputs {}", sys.inputs.join(" "));
    let _ = writeln!(out, "#hole {}", sys.hole);
    for (name, arity) in &sys.decls {
        let _ = writeln!(out, "#fn {name} {arity}");
    }
    for e in &sys.equations {
        let _ = writeln!(out, "{} = {}({})", e.lhs, e.func, e.args.join(", "));
    }
    out
}
