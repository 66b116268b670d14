//! Library side of the `toric` command: the JSON input schema, report
//! rendering and the command drivers.

pub mod commands;
pub mod input;
pub mod report;

pub use commands::{CmdError, Source};
pub use input::{InputDocument, InputError};
