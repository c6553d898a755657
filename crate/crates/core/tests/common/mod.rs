//! Standalone oracles shared by the integration tests. Nothing here calls
//! into the library.

#![allow(dead_code)]

pub mod hh_oracle;
