//! Interchange formats, model rendering, HTTP service and command line for
//! the object-centric process cube engine in [`ocpc_core`].

pub mod bench;
pub mod cli;
mod error;
pub mod formats;
pub mod parallel;
pub mod render;
pub mod selectors;
pub mod service;
pub mod synth;
pub mod time;

pub use error::Error;
pub use formats::{export, export_jsonocel, export_xmlocel, parse, parse_jsonocel, parse_xmlocel, Format, Parsed};
