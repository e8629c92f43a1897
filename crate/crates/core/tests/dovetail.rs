use std::collections::BTreeMap;

use proptest::prelude::*;
use prlab::dovetail::{dovetail_schedule, semidecide_halt_family, semidecide_haszeros, SearchBudget};
use prlab::fuel_vm::{decode_program, encode_program, run_program};
use prlab::oracle::WhileFamily;
use prlab::pr_algebra::FnHandle;

#[test]
fn schedule_is_fair() {
    let mut first: BTreeMap<(u64, u64), u64> = BTreeMap::new();
    for k in 1..=100 * 100 {
        first.entry(dovetail_schedule(k).unwrap()).or_insert(k);
    }
    for m in 1..=50 {
        for s in 1..=50 {
            let k = first[&(m, s)];
            assert!(k <= (m + s) * (m + s), "({m},{s}) first at {k}");
        }
    }
    assert!(dovetail_schedule(0).is_err());
}

fn table(zeros: Vec<u64>, len: u64) -> FnHandle {
    FnHandle::unary("t", move |x| u64::from(x >= len || !zeros.contains(&x)))
}

proptest! {
    #[test]
    fn zero_search_is_sound_and_monotone(zeros in prop::collection::vec(0u64..80, 0..4), b in 1u64..100, more in 0u64..100) {
        let f = table(zeros.clone(), 80);
        let small = semidecide_haszeros(&f, SearchBudget::new(b).unwrap());
        if let Some(&w) = small.witness() {
            prop_assert_eq!(f.at(w), 0);
            prop_assert_eq!(Some(w), zeros.iter().min().copied());
            let big = semidecide_haszeros(&f, SearchBudget::new(b + more).unwrap());
            prop_assert_eq!(big.witness(), Some(&w));
        } else {
            prop_assert!(zeros.iter().all(|&z| z + 1 > b));
        }
    }

    #[test]
    fn halt_family_emissions_reverify(steps in prop::collection::vec(0u64..60, 1..5), b in 1u64..2000, more in 0u64..2000) {
        let indices: Vec<_> = steps
            .iter()
            .enumerate()
            .map(|(i, &s)| {
                let fam = if i % 3 == 2 { WhileFamily::Diverger } else { WhileFamily::Const { steps: s, out: 0 } };
                encode_program(&fam.program())
            })
            .collect();
        let small = semidecide_halt_family(&indices, &[1], SearchBudget::new(b).unwrap());
        for e in &small {
            let p = decode_program(&e.index).unwrap();
            prop_assert_eq!(run_program(&p, &[1], e.at_step).halted(), Some((e.output, e.at_step)));
        }
        let big = semidecide_halt_family(&indices, &[1], SearchBudget::new(b + more).unwrap());
        prop_assert_eq!(&big[..small.len()], &small[..]);
    }
}
