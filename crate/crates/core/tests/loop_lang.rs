mod common;

use proptest::prelude::*;
use prlab::loop_lang::{eval_loop, eval_loop_bounded, parse_loop, print_loop, validate_loop, LoopProgram};

fn program() -> impl Strategy<Value = LoopProgram> {
    common::body(5, 2, false).prop_map(|b| LoopProgram::new("p", 2, b).unwrap())
}

#[test]
fn latching_on_a_range() {
    let p = parse_loop("fn latch(1) { loop x1 { inc x1 inc x0 } }").unwrap();
    for n in 0..200 {
        assert_eq!(eval_loop(&p, &[n]).unwrap().0, n);
    }
}

#[test]
fn library_programs_parse_from_disk() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/programs");
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let p = parse_loop(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert!(validate_loop(&p).is_ok(), "{}", path.display());
    }
}

proptest! {
    #[test]
    fn programs_terminate_and_are_deterministic(p in program(), a in 0u64..6, b in 0u64..6) {
        prop_assert!(validate_loop(&p).is_ok());
        let first = eval_loop_bounded(&p, &[a, b], 10_000_000).unwrap();
        prop_assert!(first.is_some());
        prop_assert_eq!(first, eval_loop_bounded(&p, &[a, b], 10_000_000).unwrap());
    }

    #[test]
    fn print_parse_round_trip(p in program()) {
        let text = print_loop(&p);
        let q = parse_loop(&text).unwrap();
        prop_assert_eq!(&q, &p);
        prop_assert_eq!(print_loop(&q), text);
    }
}
