//! Unary total functions with planted values, and random Loop programs.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::loop_lang::{eval_loop, eval_loop_bounded, LoopProgram, Stmt, Var};
use crate::pr_algebra::library::table_program;
use crate::Nat;

/// `f(x) = table[x]` below the table length and `tail` beyond.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlantedTable {
    pub shape: String,
    pub table: Vec<Nat>,
    pub tail: Nat,
}

impl PlantedTable {
    pub fn value(&self, x: Nat) -> Nat {
        usize::try_from(x).ok().and_then(|i| self.table.get(i)).copied().unwrap_or(self.tail)
    }

    pub fn zeros(&self) -> BTreeSet<Nat> {
        (0..self.table.len() as Nat).filter(|&x| self.table[x as usize] == 0).collect()
    }

    pub fn program(&self) -> LoopProgram {
        table_program("planted", &self.table, self.tail)
    }

    /// Spot-checks the Loop program against the table.
    pub fn verify(&self, p: &LoopProgram, rng: &mut impl Rng) -> Result<(), String> {
        let len = self.table.len() as Nat;
        let mut xs: Vec<Nat> = vec![0, len.saturating_sub(1), len, len + 3];
        xs.extend(self.zeros().into_iter().take(3));
        xs.extend((0..4).map(|_| rng.gen_range(0..=len)));
        for x in xs {
            let got = eval_loop(p, &[x]).map_err(|e| e.to_string())?.0;
            if got != self.value(x) {
                return Err(format!("table {} at {x}: planted {}, program {got}", self.shape, self.value(x)));
            }
        }
        Ok(())
    }

    /// Zeros exactly at `zeros` on `[0, len)` and value 1 elsewhere.
    pub fn with_zeros(zeros: &[Nat], len: usize) -> Result<Self, String> {
        if let Some(&z) = zeros.iter().find(|&&z| z as usize >= len) {
            return Err(format!("zero {z} lies outside a table of length {len}"));
        }
        let mut table = vec![1; len];
        for &z in zeros {
            table[z as usize] = 0;
        }
        Ok(PlantedTable { shape: "zeros".into(), table, tail: 1 })
    }

    /// A random table; the window `n` steers where zeros and boundaries fall.
    pub fn random(rng: &mut impl Rng, n: Nat) -> Self {
        let n = n as usize;
        let len = rng.gen_range(n / 2 + 1..=2 * n + 2);
        let small = |rng: &mut dyn rand::RngCore| rng.gen_range(1..=9);
        let (shape, table, tail): (&str, Vec<Nat>, Nat) = match rng.gen_range(0..11) {
            0 => ("no_zeros", (0..len).map(|_| small(rng)).collect(), small(rng)),
            1 => {
                let mut t: Vec<Nat> = (0..len).map(|_| small(rng)).collect();
                for _ in 0..rng.gen_range(1..=4) {
                    let i = rng.gen_range(0..len);
                    t[i] = 0;
                }
                ("sparse", t, small(rng))
            }
            2 => ("dense", (0..len).map(|_| Nat::from(rng.gen_bool(0.5))).collect(), rng.gen_range(0..=1)),
            3 => ("zero_fn", vec![0; len], if rng.gen_bool(0.5) { 0 } else { small(rng) }),
            4 => {
                let mut t = vec![0; len];
                for _ in 0..rng.gen_range(1..=2) {
                    let i = rng.gen_range(0..len);
                    t[i] = small(rng);
                }
                ("almost_zero", t, 0)
            }
            5 => {
                let top = rng.gen_range(1..=3);
                ("small_codomain", (0..len).map(|_| rng.gen_range(0..=top)).collect(), rng.gen_range(0..=top))
            }
            6 => {
                let mut t: Vec<Nat> = (0..len as Nat).collect();
                t.shuffle(rng);
                ("permutation", t, 0)
            }
            7 => {
                // One zero right at, just past, or just before the window edge.
                let z = [0, n.saturating_sub(1), n, n + 1][rng.gen_range(0..4)];
                let len = len.max(z + 1);
                let mut t: Vec<Nat> = (0..len).map(|_| small(rng)).collect();
                t[z] = 0;
                ("boundary", t, small(rng))
            }
            8 => {
                let c = rng.gen_range(0..=2);
                ("shifted_identity", (0..len as Nat).map(|x| x + c).collect(), len as Nat + c)
            }
            9 => {
                let mut t: Vec<Nat> = (0..len as Nat).map(|x| x + 1).collect();
                let (i, j) = (rng.gen_range(0..len), rng.gen_range(0..len));
                t[i] = t[j];
                ("collision", t, len as Nat + 1)
            }
            _ => {
                // Onto an initial segment with repeats.
                let m = rng.gen_range(1..=len as Nat);
                let mut t: Vec<Nat> = (0..len as Nat).map(|x| x % m).collect();
                t.shuffle(rng);
                ("onto_segment", t, rng.gen_range(0..m))
            }
        };
        PlantedTable { shape: shape.into(), table, tail }
    }
}

/// A random unary Loop program of nesting depth at most `depth` over
/// registers `x0..x3`, kept only if it stays cheap and small on `[0, reach]`.
pub fn random_loop(rng: &mut impl Rng, depth: usize, reach: Nat) -> LoopProgram {
    for _ in 0..200 {
        let len = 1 + rng.gen_range(0..4);
        let body = random_body(rng, depth, len);
        let p = LoopProgram::new("random", 1, body).expect("registers are in range");
        let tame = (0..=reach).all(|x| {
            eval_loop_bounded(&p, &[x], 50_000).ok().flatten().is_some_and(|(v, _)| v <= reach)
        });
        if tame {
            return p;
        }
    }
    LoopProgram::new("random", 1, vec![Stmt::Copy(Var::OUT, Var(1))]).expect("identity")
}

fn random_body(rng: &mut impl Rng, depth: usize, len: usize) -> Vec<Stmt> {
    (0..len)
        .map(|_| {
            let v = Var(rng.gen_range(0..4));
            let w = Var(rng.gen_range(0..4));
            match rng.gen_range(0..if depth > 0 { 5 } else { 3 }) {
                0 => Stmt::Clear(v),
                1 => Stmt::Copy(v, w),
                2 => Stmt::Inc(v),
                _ => {
                    let len = 1 + rng.gen_range(0..3);
                    Stmt::Loop(w, random_body(rng, depth - 1, len))
                }
            }
        })
        .collect()
}
