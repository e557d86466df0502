//! Command implementations behind the `bnsr` binary.
//!
//! Each `cmd_*` function returns the JSON report printed on stdout. Keys are
//! kept in sorted order by `serde_json`'s default map, so identical inputs
//! give byte-identical output.

pub mod commands;
pub mod selftest;

pub use commands::{cmd_bb, cmd_fpn, cmd_poly, cmd_raag, cmd_wreath, error_report, Options};
pub use selftest::{cmd_selftest, Scale, SelftestOptions};
