//! Sparse front steepest descent.
//!
//! Phase one ([`initialize`]) runs a single-point solver from many starts
//! and ties every result to a super support. Phase two ([`sfsd_run`])
//! spans each support's archive with common descent steps and partial
//! descent explorations; archives under different supports never interact.

mod archive;
mod crowding;
mod init;
mod run;

pub use archive::{ArchiveEntry, ParetoArchive, DUPLICATE_TOL};
pub use crowding::{crowding_distance, CrowdingFilter};
pub use init::{archive_from_runs, assign_super_support, initialize, sample_starts, InitOutcome, InitStrategy};
pub use run::{sfsd_run, SfsdConfig, SfsdOutcome, SfsdStop};
