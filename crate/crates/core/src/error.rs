use alloc::string::String;
use thiserror::Error;

use crate::ids::{EventId, ObjectId, ObjectType};
use crate::validate::ValidationReport;

/// Failures while parsing, constructing, or restricting a log.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OcelError {
    /// Not a well-formed document, or a required field is missing.
    #[error("malformed input: {0}")]
    MalformedInput(String),
    /// An event references an object that is not part of the log.
    #[error("event {event} references unknown object {object}")]
    DanglingObjectRef {
        /// Referencing event.
        event: EventId,
        /// Missing object.
        object: ObjectId,
    },
    /// A timestamp could not be parsed as an instant.
    #[error("bad timestamp {value:?} at {location}")]
    BadTimestamp {
        /// The offending text.
        value: String,
        /// Where it was found, e.g. `event e1`.
        location: String,
    },
    /// The log violates one or more invariants.
    #[error("log failed validation ({} error(s))", .0.errors.len())]
    Invalid(ValidationReport),
    /// `sublog` was asked to keep an event the log does not contain.
    #[error("unknown event id {0}")]
    UnknownEventId(EventId),
    /// The object type is not declared in the log.
    #[error("unknown object type {0}")]
    UnknownObjectType(ObjectType),
}

/// Failures of cube construction and queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubeError {
    /// The dimension does not occur in the log, or is not part of the cube.
    #[error("unknown dimension {0}")]
    UnknownDimension(String),
    /// A cube needs at least one dimension.
    #[error("dimension list is empty")]
    EmptyDimensionList,
    /// The same dimension was requested twice.
    #[error("dimension {0} listed more than once")]
    DuplicateDimension(String),
    /// A coordinate must assign a value to exactly the cube's dimensions.
    #[error("coordinate dimensions do not match the cube's dimensions")]
    CoordinateDimensionMismatch,
    /// The value is not in the dimension's domain.
    #[error("value {value} is not in the domain of {dimension}")]
    ValueNotInDomain {
        /// Dimension label.
        dimension: String,
        /// Rendered value.
        value: String,
    },
    /// A dice selection listed a dimension with no values.
    #[error("empty value selection for {0}")]
    EmptySelection(String),
    /// A grid needs two different axes.
    #[error("dimension {0} used for both rows and columns")]
    SameDimensionTwice(String),
}
