//! Command implementations and file formats behind the `classnum`
//! binary. Kept as a library so integration tests can drive the same
//! code paths the binary uses.

pub mod commands;
pub mod tabulate;
