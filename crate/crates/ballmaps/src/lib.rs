//! IO, floating-point checks and the command line on top of `ballmaps-core`.

pub mod cli;
pub mod io;
pub mod numeric;
pub mod report;
