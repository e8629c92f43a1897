mod common;

use proptest::prelude::*;
use prlab::fuel_vm::{decode_program, encode_program, run_program, t_predicate, u_extract, TMode, WhileProgram};

fn program() -> impl Strategy<Value = WhileProgram> {
    common::body(4, 2, true).prop_map(|b| WhileProgram::new("w", 1, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn fuel_monotonicity(p in program(), x in 0u64..5, t in 0u64..300, extra in 1u64..500) {
        if let Some(h) = run_program(&p, &[x], t).halted() {
            prop_assert_eq!(run_program(&p, &[x], t + extra).halted(), Some(h));
            prop_assert_eq!(run_program(&p, &[x], h.1).halted(), Some(h));
        }
    }

    #[test]
    fn exactly_implies_at_most_later(p in program(), x in 0u64..5, t in 0u64..200, later in 0u64..200) {
        let e = encode_program(&p);
        if t_predicate(&e, &[x], t, TMode::Exactly) == 0 {
            prop_assert_eq!(t_predicate(&e, &[x], t + later, TMode::AtMost), 0);
            prop_assert_eq!(u_extract(&e, &[x], t + later), run_program(&p, &[x], t).halted().unwrap().0);
        }
    }

    #[test]
    fn decode_inverts_encode(p in program()) {
        prop_assert_eq!(decode_program(&encode_program(&p)), Some(p));
    }
}
