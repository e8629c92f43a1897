#![allow(dead_code)]

use proptest::prelude::*;
use prlab::loop_lang::{Stmt, Var};

fn var(regs: u32) -> impl Strategy<Value = Var> {
    (0..regs).prop_map(Var)
}

/// Random statement lists over `x0..x{regs-1}`; `while` appears only when asked.
pub fn body(regs: u32, depth: u32, allow_while: bool) -> BoxedStrategy<Vec<Stmt>> {
    let leaf = prop_oneof![
        var(regs).prop_map(Stmt::Clear),
        (var(regs), var(regs)).prop_map(|(v, w)| Stmt::Copy(v, w)),
        var(regs).prop_map(Stmt::Inc),
    ];
    let stmt = leaf.prop_recursive(depth, 16, 3, move |inner| {
        let block = prop::collection::vec(inner, 0..3);
        if allow_while {
            prop_oneof![
                3 => (var(regs), block.clone()).prop_map(|(v, b)| Stmt::Loop(v, b)),
                1 => (var(regs), block).prop_map(|(v, b)| Stmt::While(v, b)),
            ]
            .boxed()
        } else {
            (var(regs), block).prop_map(|(v, b)| Stmt::Loop(v, b)).boxed()
        }
    });
    prop::collection::vec(stmt, 0..5).boxed()
}
