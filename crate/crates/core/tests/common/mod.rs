//! Shared checks for the integration tests and the acceptance harness.
#![allow(dead_code, clippy::needless_range_loop)]

pub mod criteria;
pub mod identities;
