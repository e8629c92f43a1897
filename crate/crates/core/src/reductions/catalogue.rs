use std::fmt;

use serde::{Deserialize, Serialize};

use crate::fuel_vm::TMode;

/// What a reduction takes as its source instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceKind {
    /// A unary total function.
    Pr,
    /// A program index, read as a unary partial function.
    ParRec,
    /// Two program indices.
    ParRecPair,
    /// A program index and an argument tuple.
    Halting,
}

impl fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InstanceKind::Pr => "pr",
            InstanceKind::ParRec => "parrec",
            InstanceKind::ParRecPair => "parrec pair",
            InstanceKind::Halting => "halting",
        })
    }
}

/// One catalogue row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionSpec {
    pub id: &'static str,
    pub source_problem: &'static str,
    pub target_problem: &'static str,
    pub kind: InstanceKind,
    pub params: &'static [&'static str],
    /// The `T` convention the construction depends on, if any.
    pub mode: Option<TMode>,
    /// One-line description of the target construction.
    pub construction: &'static str,
    /// True where the construction is filled in by analogy with a sibling row.
    pub reconstruction: bool,
    /// Whether the target is a total function.
    pub total_target: bool,
}

const fn row(
    id: &'static str,
    source_problem: &'static str,
    target_problem: &'static str,
    kind: InstanceKind,
    params: &'static [&'static str],
    mode: Option<TMode>,
    construction: &'static str,
) -> ReductionSpec {
    ReductionSpec {
        id,
        source_problem,
        target_problem,
        kind,
        params,
        mode,
        construction,
        reconstruction: false,
        total_target: true,
    }
}

const fn partial(mut s: ReductionSpec) -> ReductionSpec {
    s.total_target = false;
    s
}

const fn rebuilt(mut s: ReductionSpec) -> ReductionSpec {
    s.reconstruction = true;
    s
}

use InstanceKind::{Halting, ParRec, ParRecPair, Pr};
use TMode::{AtMost, Exactly};

static CATALOGUE: [ReductionSpec; 34] = [
    row("hz_to_exactly_one_zero", "HAS-ZEROS", "EXACTLY-ONE-ZERO", Pr, &[], None,
        "g(x) = 0 iff x is the least zero of f"),
    row("no_zeros_to_exactly_one_zero", "NO-ZEROS", "EXACTLY-ONE-ZERO", Pr, &[], None,
        "g(0) = 0, g(x+1) = 0 iff f(x) = 0, else 1"),
    row("hz_to_at_least_k", "HAS-ZEROS", "AT-LEAST-k-ZEROS", Pr, &["k"], None,
        "g(kx+i) = f(x) for i < k"),
    rebuilt(row("at_least_k_to_exactly_k", "AT-LEAST-k-ZEROS", "EXACTLY-k-ZEROS", Pr, &["k"], None,
        "g(x) = 0 iff x is among the first k zeros of f")),
    rebuilt(row("no_zeros_to_exactly_k", "NO-ZEROS", "EXACTLY-k-ZEROS", Pr, &["k"], None,
        "g(x) = 0 for x < k, g(x) = 0 iff f(x-k) = 0 otherwise")),
    row("hz_to_equal_next", "HAS-ZEROS", "EQUAL-NEXT", Pr, &[], None,
        "g(x) = sum of f(i) for i < x"),
    row("hz_to_nonzero_function", "HAS-ZEROS", "not ZERO-FUNCTION", Pr, &[], None,
        "g(x) = 1 if f(x) = 0, else 0"),
    row("hz_to_equal_at_one_point", "HAS-ZEROS", "EQUAL-AT-ONE-POINT", Pr, &[], None,
        "the pair (f, zero function)"),
    row("zero_fn_to_cod_k", "ZERO-FUNCTION", "|CODOMAIN|=k", Pr, &["k"], None,
        "k = 1: g(0) = 0, g(x) = f(x-1); k >= 2: g(x) = x for x < k, k*f(x-k) after"),
    row("not_zero_fn_to_cod_k", "not ZERO-FUNCTION", "|CODOMAIN|=k", Pr, &["k"], None,
        "g(kx+i) = 0 if f(x) = 0, else i"),
    row("fin_zeros_to_fin_cod", "FINITE-ZEROS", "FINITE-CODOMAIN", Pr, &[], None,
        "g(n) = number of zeros of f in [0, n]"),
    row("hz_to_not_injective", "HAS-ZEROS", "not INJECTIVE", Pr, &[], None,
        "g(0) = 0, g(n) = n if f(n-1) != 0, else 0"),
    row("onto_to_bijective", "ONTO", "BIJECTIVE", Pr, &[], None,
        "h(n) = 2g(n) for new values of g(n) = f(n div 2), else the next unused odd number"),
    row("hz_to_zero_more", "HAS-ZEROS", "ZERO-MORE", Pr, &[], None,
        "g(0) = 1, g(x) = 0 if f(x-1) = 0, else 1"),
    row("ff_z2", "HAS-ZEROS", "ffZ2", Pr, &[], None,
        "g(0) = 0, g(n) = f(n-1)"),
    row("ff_graph", "HAS-ZEROS", "ff", Pr, &[], None,
        "g(2i) = 2i+1, g(2i+1) = 2f(i)"),
    rebuilt(row("fn_iter_graph", "HAS-ZEROS", "f^(n)", Pr, &["k"], None,
        "chains of k nodes: g(ki+j) = ki+j+1 for j < k-1, g(ki+k-1) = k*f(i)")),
    row("hz_to_hz_hf", "HAS-ZEROS", "HAS-ZEROS-h.f", Pr, &["h", "a", "b"], None,
        "f'(x) = a if f(x) = 0, else b, with h(a) = 0 and h(b) != 0"),
    row("shp_to_has_zeros", "SHP", "HAS-ZEROS", ParRec, &[], Some(AtMost),
        "t -> T(e, e, t)"),
    row("fin_dom_to_fin_zeros", "FINITE-DOMAIN", "FINITE-ZEROS", ParRec, &[], Some(Exactly),
        "<x, t> -> T(e, x, t)"),
    row("fin_dom_to_almost_all_zeros", "FINITE-DOMAIN", "ALMOST-ALL-ZEROS", ParRec, &[], Some(Exactly),
        "<x, t> -> 1 - T(e, x, t)"),
    row("inf_dom_to_onto", "not FINITE-DOMAIN", "ONTO", ParRec, &[], Some(Exactly),
        "f(n) = number of m < n with T(e, unpair(m)) = 0"),
    partial(row("total_to_zero_equivalence", "TOTAL", "EQUIVALENCE", ParRec, &[], None,
        "g runs e on x and outputs 0 when it halts; compared with the zero function")),
    partial(row("zero_fn_parrec", "TOTAL", "ZERO-FUNCTION", ParRec, &[], None,
        "g runs e on x and outputs 0 when it halts")),
    partial(row("cod1_shp", "SHP", "|CODOMAIN|=1", ParRec, &[], Some(AtMost),
        "f(t) = 0 if e(e) halts within t steps, undefined otherwise")),
    row("cod1_not_shp", "not SHP", "|CODOMAIN|=1", ParRec, &[], Some(AtMost),
        "f(0) = 0, f(t) = 0 if e(e) has not halted within t steps, else 1"),
    row("cod2_shp", "SHP", "|CODOMAIN|=2", ParRec, &[], Some(AtMost),
        "f(0) = 0, f(t) = 1 if e(e) halts within t-1 steps, else 0"),
    row("cod2_not_shp", "not SHP", "|CODOMAIN|=2", ParRec, &[], Some(AtMost),
        "f(0) = 0, f(1) = 1, f(t) = 2 if e(e) halts within t-2 steps, else 0"),
    partial(row("inj_parrec", "HAS-ZEROS", "not INJECTIVE", ParRec, &[], None,
        "g(0) = 0, g(n) = 0 if e(n-1) halts with 0, undefined otherwise")),
    partial(row("f0_eq_0", "SHP", "f(0)=0", ParRec, &[], Some(AtMost),
        "f(x) = 0 once e(e) halts, undefined otherwise")),
    row("eoz_parrec", "EQUIVALENCE", "EXACTLY-ONE-ZERO", ParRecPair, &[], Some(AtMost),
        "h(0) = 0, h(n) = 0 if e and e' disagree on some x <= n within n steps, else 1"),
    row("not_hp_to_equivalence", "not HP", "EQUIVALENCE", Halting, &[], Some(Exactly),
        "the pair (t -> [T(e, x, t) = 0], zero function)"),
    row("hp_to_hz_fg", "HP", "HAS-ZEROS-f.g", Halting, &["g"], Some(AtMost),
        "t -> T(e, x, t), searched along g"),
    row("hp_to_hz_hfg", "HP", "HAS-ZEROS-h.f.g", Halting, &["g", "h", "a", "b"], Some(AtMost),
        "t -> a if e(x) halts within t steps, else b; searched along g, read through h"),
];

pub fn catalogue() -> &'static [ReductionSpec] {
    &CATALOGUE
}

pub fn spec(id: &str) -> Option<&'static ReductionSpec> {
    CATALOGUE.iter().find(|s| s.id == id)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<_> = catalogue().iter().map(|s| s.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), catalogue().len());
        assert!(spec("hz_to_not_injective").is_some());
        assert!(spec("nope").is_none());
    }
}
