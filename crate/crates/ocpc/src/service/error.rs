use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use serde_json::json;

use ocpc_core::{CubeError, OcelError};

use crate::render::json::{issues, to_bytes};
use crate::Error;

/// An error response: status plus a JSON body with `error`, `message` and,
/// for invalid logs, the validation `report`.
#[derive(Debug)]
pub struct ApiError {
    pub status: StatusCode,
    pub body: serde_json::Value,
}

impl ApiError {
    pub fn new(status: StatusCode, error: &str, message: impl Into<String>) -> Self {
        Self {
            status,
            body: json!({ "error": error, "message": message.into() }),
        }
    }

    pub fn not_found(what: &str, handle: &str) -> Self {
        Self::new(
            StatusCode::NOT_FOUND,
            "NotFound",
            format!("unknown {what} handle {handle:?}"),
        )
    }

    pub fn bad_request(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, "BadRequest", message)
    }
}

fn cube_code(e: &CubeError) -> &'static str {
    match e {
        CubeError::UnknownDimension(_) => "UnknownDimension",
        CubeError::EmptyDimensionList => "EmptyDimensionList",
        CubeError::DuplicateDimension(_) => "DuplicateDimension",
        CubeError::CoordinateDimensionMismatch => "CoordinateDimensionMismatch",
        CubeError::ValueNotInDomain { .. } => "ValueNotInDomain",
        CubeError::EmptySelection(_) => "EmptySelection",
        CubeError::SameDimensionTwice(_) => "SameDimensionTwice",
    }
}

impl From<CubeError> for ApiError {
    fn from(e: CubeError) -> Self {
        Self::new(StatusCode::UNPROCESSABLE_ENTITY, cube_code(&e), e.to_string())
    }
}

impl From<OcelError> for ApiError {
    fn from(e: OcelError) -> Self {
        let code = match &e {
            OcelError::MalformedInput(_) => "MalformedInput",
            OcelError::DanglingObjectRef { .. } => "DanglingObjectRef",
            OcelError::BadTimestamp { .. } => "BadTimestamp",
            OcelError::Invalid(_) => "Invalid",
            OcelError::UnknownEventId(_) => "UnknownEventId",
            OcelError::UnknownObjectType(_) => "UnknownObjectType",
        };
        let mut err = Self::new(StatusCode::BAD_REQUEST, code, e.to_string());
        if let OcelError::Invalid(report) = &e {
            err.body["report"] = json!({
                "errors": issues(&report.errors),
                "warnings": issues(&report.warnings),
            });
        }
        err
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        match e {
            Error::Ocel(e) => e.into(),
            Error::Cube(e) => e.into(),
            Error::Timeout(_) => Self::new(StatusCode::SERVICE_UNAVAILABLE, "Timeout", e.to_string()),
            Error::Usage(m) => Self::bad_request(m),
            Error::Io { .. } => Self::new(StatusCode::INTERNAL_SERVER_ERROR, "Io", e.to_string()),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (
            self.status,
            [(header::CONTENT_TYPE, "application/json")],
            to_bytes(&self.body),
        )
            .into_response()
    }
}
