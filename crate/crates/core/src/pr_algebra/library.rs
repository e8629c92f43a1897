//! Small Loop programs shipped with the crate, plus a compiler from finite
//! value tables to Loop programs.

use super::builder::LoopBuilder;
use super::FnHandle;
use crate::loop_lang::{parse_loop, LoopProgram};
use crate::Nat;

const SOURCES: &[(&str, &str)] = &[
    ("zero", include_str!("../../programs/zero.loop")),
    ("id", include_str!("../../programs/id.loop")),
    ("succ", include_str!("../../programs/succ.loop")),
    ("add", include_str!("../../programs/add.loop")),
    ("mul", include_str!("../../programs/mul.loop")),
    ("pred", include_str!("../../programs/pred.loop")),
    ("monus", include_str!("../../programs/monus.loop")),
    ("eq", include_str!("../../programs/eq.loop")),
    ("is_zero", include_str!("../../programs/is_zero.loop")),
    ("sign", include_str!("../../programs/sign.loop")),
    ("parity", include_str!("../../programs/parity.loop")),
    ("double", include_str!("../../programs/double.loop")),
    ("half", include_str!("../../programs/half.loop")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    SOURCES.iter().map(|(n, _)| *n)
}

pub fn source_text(name: &str) -> Option<&'static str> {
    SOURCES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn program(name: &str) -> Option<LoopProgram> {
    source_text(name).map(|s| parse_loop(s).expect("bundled program parses"))
}

pub fn handle(name: &str) -> Option<FnHandle> {
    program(name).map(FnHandle::from_loop)
}

/// A unary Loop program with `f(x) = table[x]` for `x < table.len()` and
/// `f(x) = tail` beyond.
pub fn table_program(name: &str, table: &[Nat], tail: Nat) -> LoopProgram {
    let mut b = LoopBuilder::new(1);
    let x = b.input(1);
    let out = b.fresh();
    // s = x + 1, decremented once per table entry; s > 0 means x ≥ z.
    let s = b.dup(x);
    b.inc(s);
    b.set_const(out, table.first().copied().unwrap_or(tail));
    for z in 1..=table.len() {
        let p = b.pred(s);
        b.copy(s, p);
        let reached = b.is_pos(s);
        let value = table.get(z).copied().unwrap_or(tail);
        b.when(reached, |b| b.set_const(out, value));
    }
    b.finish(name, out).expect("table program is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loop_lang::{eval_loop, print_loop, validate_loop};
    use crate::pr_algebra::{eq_indicator, monus};

    #[test]
    fn bundled_programs_are_canonical_and_valid() {
        for name in names() {
            let p = program(name).unwrap();
            assert_eq!(p.name(), name);
            assert!(validate_loop(&p).is_ok(), "{name}");
            assert_eq!(parse_loop(&print_loop(&p)).unwrap(), p);
        }
    }

    #[test]
    fn arithmetic_tables() {
        type Two = fn(Nat, Nat) -> Nat;
        let two: [(&str, Two); 4] =
            [("add", |a, b| a + b), ("mul", |a, b| a * b), ("monus", monus), ("eq", eq_indicator)];
        for (name, f) in two {
            let p = program(name).unwrap();
            for a in 0..=20 {
                for b in 0..=20 {
                    assert_eq!(eval_loop(&p, &[a, b]).unwrap().0, f(a, b), "{name}({a},{b})");
                }
            }
        }
        type One = fn(Nat) -> Nat;
        let one: [(&str, One); 9] = [
            ("zero", |_| 0),
            ("id", |x| x),
            ("succ", |x| x + 1),
            ("pred", |x| x.saturating_sub(1)),
            ("is_zero", |x| (x == 0) as Nat),
            ("sign", |x| (x > 0) as Nat),
            ("parity", |x| x % 2),
            ("double", |x| 2 * x),
            ("half", |x| x / 2),
        ];
        for (name, f) in one {
            let p = program(name).unwrap();
            for x in 0..=40 {
                assert_eq!(eval_loop(&p, &[x]).unwrap().0, f(x), "{name}({x})");
            }
        }
    }

    #[test]
    fn monus_examples() {
        let p = program("monus").unwrap();
        assert_eq!(eval_loop(&p, &[5, 3]).unwrap().0, 2);
        assert_eq!(eval_loop(&p, &[3, 5]).unwrap().0, 0);
        let eq = program("eq").unwrap();
        assert_eq!(eval_loop(&eq, &[7, 7]).unwrap().0, 0);
        assert_ne!(eval_loop(&eq, &[7, 8]).unwrap().0, 0);
    }

    #[test]
    fn tables_compile() {
        let table = [4, 0, 0, 9, 1];
        let p = table_program("t", &table, 7);
        for x in 0..12u64 {
            let want = table.get(x as usize).copied().unwrap_or(7);
            assert_eq!(eval_loop(&p, &[x]).unwrap().0, want, "x={x}");
        }
        let empty = table_program("e", &[], 3);
        assert_eq!(eval_loop(&empty, &[0]).unwrap().0, 3);
    }
}
