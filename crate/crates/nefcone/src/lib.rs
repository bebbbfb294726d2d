//! Command-line front end for `nefcone-core`: argument parsing, text and JSON
//! rendering, and the bundled verification suite.

pub mod cli;
pub mod render;
pub mod verify;

pub use cli::run;
