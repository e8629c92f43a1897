use proptest::prelude::*;
use prlab::loop_lang::eval_loop;
use prlab::pr_algebra::{compose, eq_indicator, library, pair, smn_specialize, unpair};

#[test]
fn pairing_windows() {
    for x in 0..=500 {
        for y in 0..=500 {
            assert_eq!(unpair(pair(x, y)), (x, y));
        }
    }
    for z in 0..=125_000 {
        let (x, y) = unpair(z);
        assert_eq!(pair(x, y), z);
    }
}

#[test]
fn eq_indicator_window() {
    for a in 0..=300 {
        for b in 0..=300 {
            assert_eq!(eq_indicator(a, b) == 0, a == b);
        }
    }
}

const BINARY: [&str; 4] = ["add", "mul", "monus", "eq"];

proptest! {
    #[test]
    fn fused_composition_matches_pointwise(o in 0..4usize, l in 0..4usize, r in 0..4usize, a in 0u64..12, b in 0u64..12) {
        let h = |n: &str| library::handle(n).unwrap();
        let (outer, left, right) = (h(BINARY[o]), h(BINARY[l]), h(BINARY[r]));
        let c = compose(&outer, &[left.clone(), right.clone()]).unwrap();
        let want = outer.apply(&[left.apply(&[a, b]), right.apply(&[a, b])]);
        prop_assert_eq!(c.apply(&[a, b]), want);
        let src = c.source().expect("Loop parts fuse");
        prop_assert_eq!(eval_loop(src, &[a, b]).unwrap().0, want);
    }

    #[test]
    fn smn_fidelity(f in 0..4usize, c in 0u64..20, y in 0u64..20) {
        let f = library::handle(BINARY[f]).unwrap();
        let s = smn_specialize(&f, &[c]).unwrap();
        prop_assert_eq!(s.at(y), f.apply(&[c, y]));
        if let Some(src) = s.source() {
            prop_assert_eq!(eval_loop(src, &[y]).unwrap().0, f.apply(&[c, y]));
        }
    }
}
