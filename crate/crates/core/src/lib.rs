// SPDX-License-Identifier: Apache-2.0

//! Exact arithmetic in `Z[ζ8]`, residue symbols, class numbers of `Q(√−p)`,
//! and the 16-rank sequence built from them.

pub mod arith;
pub mod class_oracle;
pub mod cyclotomic;
pub mod domain;
mod error;
pub mod lw;
pub mod report;
pub mod sampling;
pub mod sieve_lab;
pub mod symbols;
pub mod value;

pub use cyclotomic::{CycInt, PrincipalIdeal};
pub use error::{Error, Result};
pub use value::{QuarterGauss, SymbolValue};
