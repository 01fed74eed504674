//! Standard-library companion to `polyadic-core`: the `.alg` file format,
//! JSON-lines catalogs, wall-clock timeouts, threaded search and the
//! command implementations behind the `alg` binary.

pub mod catalog;
pub mod clock;
pub mod commands;
pub mod format;
pub mod parallel;
pub mod pipeline;
pub mod report;
