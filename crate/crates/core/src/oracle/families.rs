//! While programs whose halting behaviour is known in closed form.
//!
//! Every family computes its halting step and output by formula; the formula
//! is checked against the machine when a case is generated.

use serde::{Deserialize, Serialize};

use crate::fuel_vm::{run_program, WhileProgram};
use crate::loop_lang::{Stmt, Var};
use crate::Nat;

/// What a halting run leaves in `x0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Output {
    Input,
    Const(Nat),
}

impl Output {
    fn value(self, x: Nat) -> Nat {
        match self {
            Output::Input => x,
            Output::Const(c) => c,
        }
    }

    fn cost(self) -> u64 {
        match self {
            Output::Input => 1,
            Output::Const(c) => c,
        }
    }

    fn emit(self, body: &mut Vec<Stmt>) {
        match self {
            Output::Input => body.push(Stmt::Copy(Var::OUT, X1)),
            Output::Const(c) => body.extend((0..c).map(|_| Stmt::Inc(Var::OUT))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum WhileFamily {
    /// Halts on every input after exactly `steps` steps with output `out`.
    Const { steps: u64, out: Nat },
    /// Halts on `x` after `1 + per·x` steps plus the output cost.
    Linear { per: u64, out: Output },
    /// Counts `a ∸ x` down by repeated predecessor; halts iff `x < a`, or iff
    /// `x ≥ a` when `invert` is set.
    Below { a: Nat, invert: bool, out: Output },
    /// Halts iff `x` is even, with output `x`.
    EvenOnly,
    Diverger,
}

const X1: Var = Var(1);
const JUNK: Var = Var(7);

/// Statements costing exactly `r` steps; counters are allocated from `next`.
fn delay(r: u64, next: &mut u32) -> Vec<Stmt> {
    if r <= 24 {
        return (0..r).map(|_| Stmt::Inc(JUNK)).collect();
    }
    // clear c; a × inc c; loop c { F }  costs  2 + a + a·|F|.
    let a = r.isqrt();
    let inner = (r - 2 - a) / a;
    let rest = r - 2 - a - a * inner;
    let c = Var(*next);
    *next += 1;
    let mut out = vec![Stmt::Clear(c)];
    out.extend((0..a).map(|_| Stmt::Inc(c)));
    out.push(Stmt::Loop(c, delay(inner, next)));
    out.extend(delay(rest, next));
    out
}

fn program(name: &str, body: Vec<Stmt>) -> WhileProgram {
    WhileProgram::new(name, 1, body).expect("family programs are well formed")
}

fn wide(v: u128) -> u64 {
    u64::try_from(v).unwrap_or(u64::MAX)
}

impl WhileFamily {
    pub fn label(&self) -> String {
        match self {
            WhileFamily::Const { steps, out } => format!("const(steps={steps},out={out})"),
            WhileFamily::Linear { per, out } => format!("linear(per={per},out={out:?})"),
            WhileFamily::Below { a, invert, out } => format!("below(a={a},invert={invert},out={out:?})"),
            WhileFamily::EvenOnly => "even_only".into(),
            WhileFamily::Diverger => "diverger".into(),
        }
    }

    pub fn program(&self) -> WhileProgram {
        let mut next = 10;
        match *self {
            WhileFamily::Const { steps, out } => {
                let mut body: Vec<Stmt> = (0..out).map(|_| Stmt::Inc(Var::OUT)).collect();
                body.extend(delay(steps - out, &mut next));
                program("delay", body)
            }
            WhileFamily::Linear { per, out } => {
                let mut body = vec![Stmt::Loop(X1, delay(per, &mut next))];
                out.emit(&mut body);
                program("linear", body)
            }
            WhileFamily::Below { a, invert, out } => {
                let (x2, x4, x5, x6) = (Var(2), Var(4), Var(5), Var(6));
                let mut body: Vec<Stmt> = (0..a).map(|_| Stmt::Inc(x2)).collect();
                body.push(Stmt::Loop(
                    X1,
                    vec![
                        Stmt::Clear(x5),
                        Stmt::Clear(x6),
                        Stmt::Loop(x2, vec![Stmt::Copy(x5, x6), Stmt::Inc(x6)]),
                        Stmt::Copy(x2, x5),
                    ],
                ));
                if invert {
                    body.push(Stmt::While(x2, vec![]));
                } else {
                    body.extend([
                        Stmt::Clear(x4),
                        Stmt::Inc(x4),
                        Stmt::Loop(x2, vec![Stmt::Clear(x4)]),
                        Stmt::While(x4, vec![]),
                    ]);
                }
                out.emit(&mut body);
                program("below", body)
            }
            WhileFamily::EvenOnly => {
                let (x8, x9) = (Var(8), Var(9));
                program(
                    "even_only",
                    vec![
                        Stmt::Loop(
                            X1,
                            vec![Stmt::Copy(x9, x8), Stmt::Clear(x8), Stmt::Inc(x8), Stmt::Loop(x9, vec![Stmt::Clear(x8)])],
                        ),
                        Stmt::While(x8, vec![]),
                        Stmt::Copy(Var::OUT, X1),
                    ],
                )
            }
            WhileFamily::Diverger => {
                program("diverger", vec![Stmt::Inc(Var(2)), Stmt::While(Var(2), vec![])])
            }
        }
    }

    /// Output and halting step on `x`, or `None` if the run never halts.
    /// Step counts past `u64::MAX` saturate.
    pub fn run(&self, x: Nat) -> Option<(Nat, u64)> {
        let x128 = x as u128;
        match *self {
            WhileFamily::Const { steps, out } => Some((out, steps)),
            WhileFamily::Linear { per, out } => Some((out.value(x), wide(1 + per as u128 * x128 + out.cost() as u128))),
            WhileFamily::Below { a, invert, out } => {
                let remaining = a.saturating_sub(x);
                if (remaining > 0) == invert {
                    return None;
                }
                let m = x.min(a) as u128;
                let a = a as u128;
                let counting = 4 * x128 + 2 * (a * m - m * (m.saturating_sub(1)) / 2);
                let test = if invert { 1 } else { 4 + remaining as u128 };
                Some((out.value(x), wide(a + 1 + counting + test + out.cost() as u128)))
            }
            WhileFamily::EvenOnly => x.is_multiple_of(2).then(|| (x, wide(3 + 9 * x128 / 2))),
            WhileFamily::Diverger => None,
        }
    }

    /// Compares the formula with the machine on `xs`.
    pub fn verify(&self, p: &WhileProgram, xs: &[Nat]) -> Result<(), String> {
        for &x in xs {
            let want = self.run(x);
            let cap = match want {
                Some((_, s)) if s > 2_000_000 => continue,
                Some((_, s)) => s,
                None => 5_000,
            };
            let got = run_program(p, &[x], cap).halted();
            if got != want {
                return Err(format!("{} on {x}: formula {want:?}, machine {got:?}", self.label()));
            }
        }
        Ok(())
    }

    /// Inputs worth checking the formula on.
    pub fn probe_points(&self) -> Vec<Nat> {
        let mut xs: Vec<Nat> = (0..=6).collect();
        if let WhileFamily::Below { a, .. } = *self {
            xs.extend([a.saturating_sub(1), a, a + 1]);
        }
        xs
    }
}
