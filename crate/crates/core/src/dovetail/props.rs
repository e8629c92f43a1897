//! Exhaustive property evaluators over windows `[0, n]` of unary handles.

use std::collections::{BTreeSet, HashMap};

use crate::pr_algebra::FnHandle;
use crate::Nat;

/// `f(0), …, f(n)`.
pub fn values_within(f: &FnHandle, n: Nat) -> Vec<Nat> {
    (0..=n).map(|x| f.at(x)).collect()
}

pub fn zeros_within(f: &FnHandle, n: Nat) -> Vec<Nat> {
    (0..=n).filter(|&x| f.at(x) == 0).collect()
}

pub fn bounded_count_zeros(f: &FnHandle, n: Nat) -> Nat {
    (0..=n).filter(|&x| f.at(x) == 0).count() as Nat
}

pub fn has_zero_within(f: &FnHandle, n: Nat) -> bool {
    (0..=n).any(|x| f.at(x) == 0)
}

pub fn exactly_k_zeros_within(f: &FnHandle, n: Nat, k: Nat) -> bool {
    bounded_count_zeros(f, n) == k
}

pub fn at_least_k_zeros_within(f: &FnHandle, n: Nat, k: Nat) -> bool {
    bounded_count_zeros(f, n) >= k
}

/// True iff `f(x) = 0` for every `x ≤ n`.
pub fn zero_function_within(f: &FnHandle, n: Nat) -> bool {
    (0..=n).all(|x| f.at(x) == 0)
}

/// The first colliding pair `x < y ≤ n` with `f(x) = f(y)`.
pub fn collision_within(f: &FnHandle, n: Nat) -> Option<(Nat, Nat)> {
    let mut seen = HashMap::new();
    for y in 0..=n {
        if let Some(&x) = seen.get(&f.at(y)) {
            return Some((x, y));
        }
        seen.insert(f.at(y), y);
    }
    None
}

pub fn injective_within(f: &FnHandle, n: Nat) -> bool {
    collision_within(f, n).is_none()
}

/// `{f(x) : x ≤ n}`.
pub fn codomain_within(f: &FnHandle, n: Nat) -> BTreeSet<Nat> {
    (0..=n).map(|x| f.at(x)).collect()
}

/// True iff every `y ≤ m` is some `f(x)` with `x ≤ n`.
pub fn onto_within(f: &FnHandle, n: Nat, m: Nat) -> bool {
    let img = codomain_within(f, n);
    (0..=m).all(|y| img.contains(&y))
}

/// The least `x ≤ n` with `f(x) = f(x+1)`.
pub fn equal_next_within(f: &FnHandle, n: Nat) -> Option<Nat> {
    (0..=n).find(|&x| f.at(x) == f.at(x + 1))
}

/// The least `x ≤ n` where `f` and `g` differ.
pub fn disagreement_within(f: &FnHandle, g: &FnHandle, n: Nat) -> Option<Nat> {
    (0..=n).find(|&x| f.at(x) != g.at(x))
}

pub fn equivalent_within(f: &FnHandle, g: &FnHandle, n: Nat) -> bool {
    disagreement_within(f, g, n).is_none()
}
