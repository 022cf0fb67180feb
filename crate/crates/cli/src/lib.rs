//! Command-line front end: polynomial text parsing, JSON pair/word
//! documents, Newton-polygon reports and SVG drawings, and the subcommands
//! for decomposing, verifying, inverting, composing and generating words.

mod app;
pub mod docs;
pub mod parse;
pub mod svg;

pub use app::run;
