//! Pairing and tupling, monus, function handles, and Loop-program fusion.

pub mod builder;
mod handle;
pub mod library;
mod pairing;

pub use builder::LoopBuilder;
pub use handle::{compose, iterate, juxtapose, prefix_sum, smn_specialize, FnHandle, HandleError, Provenance};
pub use pairing::{
    checked_pair, eq_indicator, monus, pair, tuple_decode, tuple_encode, unpair, TupleError,
};

use std::sync::Arc;

use crate::fuel_vm::{TMode, Universal};

/// `(x̄, t) ↦ T(e, x̄, t)` as a total handle over a shared universal machine.
pub fn kleene_t(u: Arc<Universal>, arity: usize, mode: TMode) -> FnHandle {
    FnHandle::scalar(format!("T_{mode}"), arity + 1, move |a| {
        let (x, t) = a.split_at(arity);
        u.t(x, t[0], mode)
    })
    .with_provenance(Provenance::WhileFuel)
}

/// `(x̄, t) ↦ U(e, x̄, t)`.
pub fn kleene_u(u: Arc<Universal>, arity: usize) -> FnHandle {
    FnHandle::scalar("U", arity + 1, move |a| {
        let (x, t) = a.split_at(arity);
        u.u(x, t[0])
    })
    .with_provenance(Provenance::WhileFuel)
}
