//! File formats, SVG rendering and the command line for `graspspan-core`.

pub mod cli;
pub mod document;
pub mod render;
