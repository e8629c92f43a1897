//! Random acyclic expressions over a small native registry, and a panel of
//! fixed hole functions used to compare an expression with its normal form.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Equation, EquationSystem, Registry};
use crate::pr_algebra::FnHandle;
use crate::Nat;

const BASIC: [(&str, usize); 7] =
    [("succ", 1), ("half", 1), ("add", 2), ("monus", 2), ("mul", 2), ("eq", 2), ("max3", 3)];

const MAX_MIX: usize = 8;

/// Saturating natives for every function [`random_system`] emits.
pub fn random_registry() -> Registry {
    let mut r = Registry::new();
    let mut put = |h: FnHandle| {
        r.insert(h.name().to_string(), h);
    };
    put(FnHandle::unary("succ", |x| x.saturating_add(1)));
    put(FnHandle::unary("half", |x| x / 2));
    put(FnHandle::scalar("add", 2, |a| a[0].saturating_add(a[1])));
    put(FnHandle::scalar("monus", 2, |a| a[0].saturating_sub(a[1])));
    put(FnHandle::scalar("mul", 2, |a| a[0].saturating_mul(a[1])));
    put(FnHandle::scalar("eq", 2, |a| Nat::from(a[0] == a[1])));
    put(FnHandle::scalar("max3", 3, |a| a[0].max(a[1]).max(a[2])));
    for k in 1..=MAX_MIX {
        // Weighted so that argument order matters.
        put(FnHandle::scalar(format!("mix{k}"), k, |a| {
            a.iter().enumerate().fold(0, |acc: Nat, (i, &v)| acc.saturating_add(v.saturating_mul(i as Nat + 1)))
        }));
    }
    r
}

/// A random well-formed system with `n_inputs` inputs and at most
/// `max_nodes` (≤ 8) equations, one of them the hole `f`. The last equation
/// consumes every value not used elsewhere.
pub fn random_system(rng: &mut impl Rng, n_inputs: usize, max_nodes: usize) -> EquationSystem {
    let max_nodes = max_nodes.clamp(1, MAX_MIX);
    let inputs: Vec<String> = (1..=n_inputs.max(1)).map(|i| format!("x{i}")).collect();
    let total = rng.gen_range(1..=max_nodes);
    let hole_at = rng.gen_range(0..total);
    let mut avail = inputs.clone();
    let mut unused: Vec<String> = Vec::new();
    let mut equations = Vec::with_capacity(total);

    for j in 0..total {
        let last = j + 1 == total;
        let (func, arity) = if last {
            let extra = usize::from(unused.is_empty() || rng.gen_bool(0.3));
            let k = (unused.len() + extra).min(MAX_MIX);
            (if j == hole_at { "f".to_string() } else { format!("mix{k}") }, k)
        } else if j == hole_at {
            ("f".to_string(), rng.gen_range(1..=3))
        } else {
            let (name, a) = BASIC[rng.gen_range(0..BASIC.len())];
            (name.to_string(), a)
        };
        let mut args = Vec::with_capacity(arity);
        if last {
            args.append(&mut unused);
            args.shuffle(rng);
        }
        while args.len() < arity {
            let pick = if !unused.is_empty() && rng.gen_bool(0.5) {
                unused.swap_remove(rng.gen_range(0..unused.len()))
            } else {
                let v = avail[rng.gen_range(0..avail.len())].clone();
                unused.retain(|u| *u != v);
                v
            };
            args.push(pick);
        }
        let var = format!("v{}", j + 1);
        avail.push(var.clone());
        unused.push(var.clone());
        equations.push(Equation { lhs: var, func, args });
    }
    EquationSystem { inputs, hole: "f".into(), decls: Default::default(), equations }
}

/// Five fixed hole functions of the given arity.
pub fn hole_panel(arity: usize) -> Vec<FnHandle> {
    vec![
        FnHandle::scalar("zero", arity, |_| 0),
        FnHandle::scalar("sum", arity, |a| a.iter().fold(0, |s: Nat, &v| s.saturating_add(v))),
        FnHandle::scalar("first", arity, |a| a[0]),
        FnHandle::scalar("weighted_mod5", arity, |a| {
            a.iter().enumerate().fold(0, |s, (i, &v)| (s + (v % 5) * (i as Nat + 1)) % 5)
        }),
        FnHandle::scalar("max_succ", arity, |a| a.iter().max().map_or(1, |m| m.saturating_add(1))),
    ]
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::super::*;
    use super::*;

    #[test]
    fn random_systems_build_and_normalize_faithfully() {
        let reg = random_registry();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..=3);
            let sys = random_system(&mut rng, n, 8);
            let d = build_dag(&sys, &reg).unwrap_or_else(|e| panic!("{e}\n{}", print_dag(&sys)));
            let nf = normalize(&d);
            for hole in hole_panel(d.hole_arity()) {
                for _ in 0..10 {
                    let x: Vec<Nat> = (0..n).map(|_| rng.gen_range(0..=12)).collect();
                    assert_eq!(
                        eval_normal_form(&nf, &hole, &x).unwrap(),
                        eval_dag(&d, &hole, &x).unwrap(),
                        "{}\n{nf}",
                        print_dag(&sys)
                    );
                }
            }
        }
    }
}
