//! Exact symbolic verification of truncated q-hypergeometric
//! supercongruences.

pub mod congruence;
pub mod dsl;
pub mod exact;
pub mod padic;
pub mod qseries;
