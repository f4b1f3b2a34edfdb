//! JSON documents, command-line operations and SVG rendering.

pub mod commands;
pub mod convert;
pub mod document;
pub mod error;
pub mod render;
