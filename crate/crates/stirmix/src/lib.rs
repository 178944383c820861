//! Verification harness, report rendering and table output for
//! `stirmix-core`.

pub mod harness;
pub mod report;
pub mod table;
