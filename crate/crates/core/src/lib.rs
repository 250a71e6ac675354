//! Object-centric process cube engine.
//!
//! This crate holds the pure, allocation-only part of the engine: the
//! in-memory object-centric event log ([`Ocel`]), its validation and
//! restriction to sub-logs, the multidimensional [`ProcessCube`] with its
//! two materialization modes, and discovery of object-centric
//! directly-follows graphs and Petri nets together with side-by-side model
//! comparison.
//!
//! Parsing and serialization of interchange formats, the HTTP service and
//! the command line live in the `ocpc` companion crate.

#![cfg_attr(not(test), no_std)]
#![warn(missing_docs)]

extern crate alloc;

pub mod cube;
pub mod discovery;
mod error;
mod ids;
mod ocel;
pub mod validate;
mod value;

pub use cube::{list_dimensions, Coordinate, CountGrid, DimValue, Dimension, GridAxis, Materialization, ProcessCube};
pub use discovery::{compare_models, discover_ocdfg, discover_ocpn, flatten, ModelDiff, Ocdfg, Ocpn, TypedTrace};
pub use error::{CubeError, OcelError};
pub use ids::{Activity, AttributeName, EventId, ObjectId, ObjectType};
pub use ocel::{Event, ObjectInstance, Ocel};
pub use validate::{validate, Issue, IssueCode, ValidationReport};
pub use value::{AttrValue, Timestamp};
