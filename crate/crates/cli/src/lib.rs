//! Command-line front end for `sparsemoo`: instance files, dataset loading,
//! front and metric tables, and the experiment pipeline.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dataset;
pub mod error;
pub mod evaluate;
pub mod front_io;
pub mod instance;
pub mod manifest;
pub mod pipeline;

pub use error::{CliError, CliResult};
