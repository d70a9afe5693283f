//! File formats, catalogs and command implementations behind the `lazard` binary.

pub mod catalog;
pub mod commands;
pub mod format;
