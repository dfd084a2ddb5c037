#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod amplitude;
pub mod atomic;
pub mod cli;
pub mod config;
pub mod cosmology;
pub mod error;
pub mod exchange;
pub mod halfint;
pub mod oracle;
pub mod prescriptions;
pub mod serde_complex;
pub mod spin;
pub mod sweep;
pub mod tolerances;
