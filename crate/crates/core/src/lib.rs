//! Exact construction of elementary symmetric functions, verification of
//! identities among them, and mechanical derivation of higher-order ones.

pub mod error;
pub mod identities;
pub mod polycore;
pub mod qcomb;
pub mod symfn;

pub use error::{Error, Result};
