//! File formats, reports and the command-line front end for
//! [`weyl_equidist_core`].

pub mod cli;
pub mod error;
pub mod output;
pub mod parallel;
pub mod report;
pub mod scenario;
pub mod verify;

pub use error::{CliError, CliResult};
pub use scenario::{LatticeSpec, Scenario};
pub use weyl_equidist_core as core;
