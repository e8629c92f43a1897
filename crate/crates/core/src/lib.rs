//! Executable computability constructions over the naturals.
//!
//! The crate is organised bottom-up:
//!
//! * [`loop_lang`]: the Loop language (total register programs).
//! * [`fuel_vm`]: the While extension, program indices and step-bounded
//!   universal evaluation (`T` and `U`).
//! * [`pr_algebra`]: pairing, monus, function handles and Loop-program fusion.
//! * [`reductions`]: the many-one reduction catalogue with finite-window laws.
//! * [`pr_graph`]: acyclic expressions with one hole and their normal form.
//! * [`dovetail`]: interleaved search and bounded property evaluators.
//! * [`oracle`]: planted-truth corpora and brute-force law checking.

pub mod dovetail;
pub mod fuel_vm;
pub mod loop_lang;
pub mod oracle;
pub mod pr_algebra;
pub mod pr_graph;
pub mod reductions;

/// Natural numbers as manipulated by every program and handle in the crate.
pub type Nat = u64;
