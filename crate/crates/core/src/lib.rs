//! Construction, girth certification and simulation of quantum
//! quasi-cyclic LDPC codes with column weight 2.

pub mod alist;
pub mod cli;
pub mod construct;
pub mod error;
pub mod gf;
pub mod girth;
pub mod nb;
pub mod perm;
pub mod qc;
pub mod quantum;
pub mod sim;
pub mod sparse;

pub use error::{Error, Result};
