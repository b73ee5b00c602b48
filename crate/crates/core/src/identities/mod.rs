//! The identity catalog and the derivation engine for higher-order identities.

mod checks;
mod derive;
mod partial_fractions;
mod registry;
mod report;

pub use checks::*;
pub use derive::{
    brute_force_oracle, coefficient_polynomial, derive_identity, pair_closed_form, render_key,
    DerivedIdentity, EIndexKey,
};
pub use partial_fractions::{determinant, partial_fractions, PartialFractionDecomp};
pub use registry::{
    expand_grid, run_grid, GridPlan, Identity, IdentityRegistry, ParamRanges, MAX_N,
};
pub use report::{
    timed, IdentityInstance, IdentityReport, ParamName, Params, Side, Verdict,
};
