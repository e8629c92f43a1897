use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::{is_identifier, LoopProgram, Stmt, Var, MAX_ARITY, MAX_REGISTERS};

/// A broken invariant; a program with violations is not a valid index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    BadName(String),
    ArityTooLarge(usize),
    RegisterOutOfRange(u32),
    WhileInLoop,
}

/// Legal but suspicious constructs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Warning {
    /// A scratch register (or x0) is read before any statement writes it;
    /// it reads as 0.
    UninitializedRead(Var),
    /// x0 is never written, so the program computes the zero function.
    OutputNeverWritten,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BadName(n) => write!(f, "`{n}` is not a valid identifier"),
            Violation::ArityTooLarge(k) => write!(f, "arity {k} exceeds {MAX_ARITY}"),
            Violation::RegisterOutOfRange(v) => write!(f, "register x{v} exceeds the register limit"),
            Violation::WhileInLoop => write!(f, "`while` inside a Loop program"),
        }
    }
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::UninitializedRead(v) => write!(f, "{v} is read before it is written (reads as 0)"),
            Warning::OutputNeverWritten => write!(f, "x0 is never written"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Warning>,
}

impl Validation {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

struct Scan {
    uninit: BTreeSet<Var>,
    out_written: bool,
    max_reg: u32,
    has_while: bool,
}

impl Scan {
    fn read(&mut self, v: Var, written: &BTreeSet<Var>) {
        if !written.contains(&v) {
            self.uninit.insert(v);
        }
    }

    fn block(&mut self, body: &[Stmt], written: &mut BTreeSet<Var>) {
        for stmt in body {
            self.max_reg = self.max_reg.max(stmt.max_var());
            match stmt {
                Stmt::Clear(v) => {
                    written.insert(*v);
                    self.out_written |= v.0 == 0;
                }
                Stmt::Copy(v, w) => {
                    self.read(*w, written);
                    written.insert(*v);
                    self.out_written |= v.0 == 0;
                }
                Stmt::Inc(v) => {
                    self.read(*v, written);
                    written.insert(*v);
                    self.out_written |= v.0 == 0;
                }
                Stmt::Loop(v, inner) | Stmt::While(v, inner) => {
                    self.has_while |= matches!(stmt, Stmt::While(..));
                    self.read(*v, written);
                    // The body may run zero times, so its writes do not count
                    // after the loop.
                    let mut inside = written.clone();
                    self.block(inner, &mut inside);
                }
            }
        }
    }
}

/// Checks the structural invariants of a program body. `allow_while`
/// selects the While dialect.
pub fn validate_body(name: &str, arity: usize, body: &[Stmt], allow_while: bool) -> Validation {
    let mut v = Validation::default();
    if !is_identifier(name) || matches!(name, "fn" | "clear" | "inc" | "loop" | "while") {
        v.violations.push(Violation::BadName(name.to_string()));
    }
    if arity > MAX_ARITY {
        v.violations.push(Violation::ArityTooLarge(arity));
    }
    let mut written: BTreeSet<Var> = (1..=arity.min(MAX_ARITY) as u32).map(Var).collect();
    let mut scan = Scan { uninit: BTreeSet::new(), out_written: false, max_reg: 0, has_while: false };
    scan.block(body, &mut written);
    if scan.max_reg as usize >= MAX_REGISTERS {
        v.violations.push(Violation::RegisterOutOfRange(scan.max_reg));
    }
    if scan.has_while && !allow_while {
        v.violations.push(Violation::WhileInLoop);
    }
    v.warnings.extend(scan.uninit.into_iter().map(Warning::UninitializedRead));
    if !scan.out_written {
        v.warnings.push(Warning::OutputNeverWritten);
    }
    v
}

pub fn validate_loop(p: &LoopProgram) -> Validation {
    validate_body(p.name(), p.arity(), p.body(), false)
}

#[cfg(test)]
mod tests {
    use super::super::parse_loop;
    use super::*;

    #[test]
    fn scratch_reads_are_warnings() {
        let p = parse_loop("fn f(1) { x0 = x5 }").unwrap();
        let v = validate_loop(&p);
        assert!(v.is_ok());
        assert_eq!(v.warnings, vec![Warning::UninitializedRead(Var(5))]);
    }

    #[test]
    fn input_like_free_variable() {
        let p = parse_loop("fn f(2) { x0 = x1 loop x3 { inc x0 } }").unwrap();
        let v = validate_loop(&p);
        assert!(v.is_ok());
        assert!(v.warnings.contains(&Warning::UninitializedRead(Var(3))));
    }

    #[test]
    fn writes_inside_loops_do_not_count_afterwards() {
        let p = parse_loop("fn f(1) { loop x1 { clear x2 } x0 = x2 }").unwrap();
        assert_eq!(validate_loop(&p).warnings, vec![Warning::UninitializedRead(Var(2))]);
        let q = parse_loop("fn f(1) { clear x2 loop x1 { inc x2 } x0 = x2 }").unwrap();
        assert!(validate_loop(&q).warnings.is_empty());
    }

    #[test]
    fn register_limit() {
        let p = LoopProgram::new("f", 0, vec![Stmt::Inc(Var(MAX_REGISTERS as u32))]).unwrap();
        assert_eq!(
            validate_loop(&p).violations,
            vec![Violation::RegisterOutOfRange(MAX_REGISTERS as u32)]
        );
    }

    #[test]
    fn while_is_a_violation_in_loop_dialect() {
        let body = vec![Stmt::While(Var(1), vec![])];
        assert!(!validate_body("f", 1, &body, false).is_ok());
        assert!(validate_body("f", 1, &body, true).is_ok());
    }
}
