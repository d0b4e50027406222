//! Exact computations in parabolic category O for the periplectic Lie
//! superalgebra `pe(n)`: blocks, strong linkage, Verma multiplicities,
//! tilting characters and the rank-3 tables.

pub mod cli;
pub mod error;
pub mod formal_char;
pub mod gl_mult;
pub mod linkage;
pub mod pe3_tables;
pub mod pe_tilting;
pub mod report;
pub mod root_data;
pub mod weyl_hecke;

pub use error::{Error, Result};
pub use formal_char::{Basis, FormalChar};
pub use report::Report;
pub use root_data::{Parabolic, Weight};
