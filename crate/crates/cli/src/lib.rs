//! Command-line layer: manifest and complex formats, certificate documents,
//! and the command implementations behind the `trienv` binary.

pub mod commands;
pub mod config;
pub mod document;
pub mod manifest;
pub mod serialize;

pub use commands::{CommandOutput, Inputs};
pub use config::RunConfig;
pub use manifest::{parse_category_manifest, Category};

pub const EXIT_MEMBER: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_INCONSISTENT: i32 = 4;
pub const EXIT_UNDETERMINED: i32 = 10;
