use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::{header, HeaderMap, StatusCode};
use axum::response::{IntoResponse, Response};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use ocpc_core::cube::GridAxis;
use ocpc_core::{compare_models, discover_ocdfg, discover_ocpn, Coordinate, Materialization, Ocel, ProcessCube};

use super::error::ApiError;
use super::store::StoredCube;
use super::AppState;
use crate::formats::{export, parse, Format};
use crate::render::{dot, json as rj};
use crate::{selectors, Error};

type Query_ = Query<HashMap<String, String>>;

fn json_response<T: Serialize>(status: StatusCode, body: &T) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], rj::to_bytes(body)).into_response()
}

fn body_json<T: DeserializeOwned>(body: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::bad_request(format!("invalid request body: {e}")))
}

/// Runs CPU-bound work off the async workers, bounded by the configured timeout.
async fn blocking<T, F>(state: &AppState, f: F) -> Result<T, ApiError>
where
    T: Send + 'static,
    F: FnOnce() -> Result<T, ApiError> + Send + 'static,
{
    let limit = state.config.timeout;
    match tokio::time::timeout(limit, tokio::task::spawn_blocking(f)).await {
        Ok(Ok(r)) => r,
        Ok(Err(e)) => Err(ApiError::new(
            StatusCode::INTERNAL_SERVER_ERROR,
            "Internal",
            e.to_string(),
        )),
        Err(_) => Err(Error::Timeout(limit).into()),
    }
}

fn log_of(state: &AppState, handle: &str) -> Result<Arc<Ocel>, ApiError> {
    state
        .store
        .log(handle)
        .ok_or_else(|| ApiError::not_found("log", handle))
}

fn cube_of(state: &AppState, handle: &str) -> Result<StoredCube, ApiError> {
    state
        .store
        .cube(handle)
        .ok_or_else(|| ApiError::not_found("cube", handle))
}

fn format_param(q: &HashMap<String, String>, key: &str) -> Result<Option<String>, ApiError> {
    Ok(q.get(key).map(|s| s.to_ascii_lowercase()))
}

fn upload_format(q: &HashMap<String, String>, headers: &HeaderMap, body: &[u8]) -> Result<Format, ApiError> {
    if let Some(f) = format_param(q, "format")? {
        return f
            .parse()
            .map_err(|_| ApiError::bad_request(format!("unknown format {f:?}")));
    }
    let ctype = headers
        .get(header::CONTENT_TYPE)
        .and_then(|v| v.to_str().ok())
        .unwrap_or("");
    Ok(if ctype.contains("xml") {
        Format::Xml
    } else if ctype.contains("json") {
        Format::Json
    } else {
        Format::sniff(body)
    })
}

fn cube_body(handle: &str, stored: &StoredCube) -> Value {
    json!({ "handle": handle, "log": stored.log, "cube": rj::cube(&stored.cube) })
}

pub async fn upload_log(
    State(state): State<AppState>,
    Query(q): Query_,
    headers: HeaderMap,
    body: Bytes,
) -> Result<Response, ApiError> {
    let format = upload_format(&q, &headers, &body)?;
    let st = state.clone();
    let parsed = blocking(&st, move || parse(&body, format).map_err(ApiError::from)).await?;
    let log = Arc::new(parsed.log);
    let handle = state.store.insert_log(log.clone());
    if let Some(dir) = &state.config.snapshot_dir {
        let path = dir.join(format!("{handle}.jsonocel"));
        if let Err(e) = std::fs::write(&path, crate::export_jsonocel(&log)) {
            tracing::warn!(path = %path.display(), error = %e, "snapshot failed");
        }
    }
    Ok(json_response(
        StatusCode::CREATED,
        &json!({
            "handle": handle,
            "summary": rj::log_summary(&log),
            "warnings": rj::issues(&parsed.warnings),
        }),
    ))
}

pub async fn get_log(
    State(state): State<AppState>,
    Path(h): Path<String>,
    Query(q): Query_,
) -> Result<Response, ApiError> {
    let log = log_of(&state, &h)?;
    let num = |k: &str, d: usize| -> Result<usize, ApiError> {
        q.get(k).map_or(Ok(d), |v| {
            v.parse()
                .map_err(|_| ApiError::bad_request(format!("{k} must be a number")))
        })
    };
    let offset = num("offset", 0)?;
    let limit = num("limit", 100)?;
    Ok(json_response(
        StatusCode::OK,
        &json!({
            "handle": h,
            "summary": rj::log_summary(&log),
            "tables": rj::log_tables(&log, offset, limit),
        }),
    ))
}

pub async fn log_dimensions(State(state): State<AppState>, Path(h): Path<String>) -> Result<Response, ApiError> {
    let log = log_of(&state, &h)?;
    let dims = ocpc_core::list_dimensions(&log);
    Ok(json_response(
        StatusCode::OK,
        &json!({ "dimensions": rj::dimensions(&dims) }),
    ))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuildRequest {
    dims: Vec<String>,
    #[serde(default)]
    mode: Option<String>,
}

pub async fn build_cube(
    State(state): State<AppState>,
    Path(h): Path<String>,
    body: Bytes,
) -> Result<Response, ApiError> {
    let log = log_of(&state, &h)?;
    let req: BuildRequest = body_json(&body)?;
    let mode: Materialization = match req.mode.as_deref() {
        None => Materialization::Existence,
        Some(m) => m.parse().map_err(|_| {
            ApiError::new(
                StatusCode::UNPROCESSABLE_ENTITY,
                "UnknownMode",
                format!("unknown mode {m:?}"),
            )
        })?,
    };
    let dims = selectors::dimension_list(&req.dims, &ocpc_core::list_dimensions(&log))?;
    let threads = state.config.threads;
    let cube = blocking(&state, move || {
        crate::parallel::build_cube(log, dims, mode, threads).map_err(ApiError::from)
    })
    .await?;
    let stored = StoredCube {
        log: h,
        cube: Arc::new(cube),
    };
    let handle = state.store.insert_cube(stored.log.clone(), stored.cube.clone());
    Ok(json_response(StatusCode::CREATED, &cube_body(&handle, &stored)))
}

pub async fn get_cube(State(state): State<AppState>, Path(h): Path<String>) -> Result<Response, ApiError> {
    let stored = cube_of(&state, &h)?;
    Ok(json_response(StatusCode::OK, &cube_body(&h, &stored)))
}

fn axis(cube: &ProcessCube, text: Option<&String>) -> Result<GridAxis, ApiError> {
    match text.map(String::as_str) {
        None | Some("") | Some("ALL") => Ok(GridAxis::All),
        Some(t) => Ok(GridAxis::Dim(selectors::resolve_dimension(t, cube.dims())?)),
    }
}

pub async fn grid(
    State(state): State<AppState>,
    Path(h): Path<String>,
    Query(q): Query_,
) -> Result<Response, ApiError> {
    let stored = cube_of(&state, &h)?;
    let cube = &stored.cube;
    let rows = match q.get("rows") {
        None => cube.dims().first().cloned().map_or(GridAxis::All, GridAxis::Dim),
        r => axis(cube, r)?,
    };
    let cols = axis(cube, q.get("cols"))?;
    let g = cube.grid_view(&rows, &cols)?;
    Ok(json_response(StatusCode::OK, &rj::grid(&g)))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SliceRequest {
    dim: String,
    value: String,
}

pub async fn slice(State(state): State<AppState>, Path(h): Path<String>, body: Bytes) -> Result<Response, ApiError> {
    let stored = cube_of(&state, &h)?;
    let req: SliceRequest = body_json(&body)?;
    let cube = stored.cube.clone();
    let dim = selectors::resolve_dimension(&req.dim, cube.dims())?;
    let value = selectors::resolve_value(&cube, &dim, &req.value)?;
    let derived = blocking(&state, move || cube.slice(&dim, &value).map_err(ApiError::from)).await?;
    derived_response(&state, stored.log, derived)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiceRequest {
    selection: BTreeMap<String, Vec<String>>,
}

pub async fn dice(State(state): State<AppState>, Path(h): Path<String>, body: Bytes) -> Result<Response, ApiError> {
    let stored = cube_of(&state, &h)?;
    let req: DiceRequest = body_json(&body)?;
    let cube = stored.cube.clone();
    let mut sel = selectors::selection(
        &cube,
        req.selection
            .iter()
            .flat_map(|(d, vs)| vs.iter().map(move |v| (d.as_str(), v.as_str()))),
    )?;
    for (d, vs) in &req.selection {
        if vs.is_empty() {
            let dim = selectors::resolve_dimension(d, cube.dims())?;
            sel.insert(dim, Default::default());
        }
    }
    let derived = blocking(&state, move || cube.dice(&sel).map_err(ApiError::from)).await?;
    derived_response(&state, stored.log, derived)
}

fn derived_response(state: &AppState, log: String, cube: ProcessCube) -> Result<Response, ApiError> {
    let stored = StoredCube {
        log,
        cube: Arc::new(cube),
    };
    let handle = state.store.insert_cube(stored.log.clone(), stored.cube.clone());
    Ok(json_response(StatusCode::CREATED, &cube_body(&handle, &stored)))
}

fn coordinate_json(coord: &Coordinate) -> Value {
    Value::Object(
        coord
            .iter()
            .map(|(d, v)| (d.label(), Value::String(v.to_string())))
            .collect::<Map<_, _>>(),
    )
}

fn cell(state: &AppState, h: &str, coord: &str) -> Result<(Arc<ProcessCube>, Coordinate), ApiError> {
    let stored = cube_of(state, h)?;
    let c = selectors::coordinate_from_query(&stored.cube, coord)?;
    Ok((stored.cube, c))
}

pub async fn cell_count(
    State(state): State<AppState>,
    Path((h, coord)): Path<(String, String)>,
) -> Result<Response, ApiError> {
    let (cube, c) = cell(&state, &h, &coord)?;
    let events = cube.cell_events(&c)?;
    Ok(json_response(
        StatusCode::OK,
        &json!({
            "coordinate": coordinate_json(&c),
            "count": events.len(),
            "events": events.iter().map(|e| e.as_str()).collect::<Vec<_>>(),
        }),
    ))
}

fn output_format<'a>(q: &'a HashMap<String, String>, allowed: &[&str], default: &'a str) -> Result<String, ApiError> {
    let f = q.get("format").map_or(default, String::as_str).to_ascii_lowercase();
    if allowed.contains(&f.as_str()) {
        Ok(f)
    } else {
        Err(ApiError::bad_request(format!(
            "format must be one of {}",
            allowed.join(", ")
        )))
    }
}

fn min_frequency(q: &HashMap<String, String>) -> Result<u64, ApiError> {
    q.get("min_frequency").map_or(Ok(0), |v| {
        v.parse()
            .map_err(|_| ApiError::bad_request("min_frequency must be a number"))
    })
}

pub async fn cell_log(
    State(state): State<AppState>,
    Path((h, coord)): Path<(String, String)>,
    Query(q): Query_,
) -> Result<Response, ApiError> {
    let (cube, c) = cell(&state, &h, &coord)?;
    let format: Format = output_format(&q, &["json", "xml"], "json")?
        .parse()
        .expect("checked format");
    let bytes = blocking(&state, move || {
        let log = cube.materialize_cell(&c)?;
        Ok(export(&log, format)?)
    })
    .await?;
    let (ctype, name) = match format {
        Format::Json => ("application/json", "cell.jsonocel"),
        Format::Xml => ("application/xml", "cell.xmlocel"),
    };
    Ok((
        StatusCode::OK,
        [
            (header::CONTENT_TYPE, ctype.to_owned()),
            (header::CONTENT_DISPOSITION, format!("attachment; filename=\"{name}\"")),
        ],
        bytes,
    )
        .into_response())
}

fn text_or_json(format: &str, dot_text: impl FnOnce() -> String, json_body: impl FnOnce() -> Vec<u8>) -> Response {
    if format == "dot" {
        (
            StatusCode::OK,
            [(header::CONTENT_TYPE, "text/vnd.graphviz")],
            dot_text(),
        )
            .into_response()
    } else {
        (
            StatusCode::OK,
            [(header::CONTENT_TYPE, "application/json")],
            json_body(),
        )
            .into_response()
    }
}

pub async fn cell_ocdfg(
    State(state): State<AppState>,
    Path((h, coord)): Path<(String, String)>,
    Query(q): Query_,
) -> Result<Response, ApiError> {
    let (cube, c) = cell(&state, &h, &coord)?;
    let format = output_format(&q, &["json", "dot"], "json")?;
    let min = min_frequency(&q)?;
    let model = blocking(&state, move || Ok(discover_ocdfg(&cube.materialize_cell(&c)?))).await?;
    Ok(text_or_json(
        &format,
        || dot::ocdfg(&model, min),
        || rj::to_bytes(&rj::ocdfg(&model, min)),
    ))
}

pub async fn cell_ocpn(
    State(state): State<AppState>,
    Path((h, coord)): Path<(String, String)>,
    Query(q): Query_,
) -> Result<Response, ApiError> {
    let (cube, c) = cell(&state, &h, &coord)?;
    let format = output_format(&q, &["json", "dot"], "json")?;
    let net = blocking(&state, move || Ok(discover_ocpn(&cube.materialize_cell(&c)?))).await?;
    Ok(text_or_json(
        &format,
        || dot::ocpn(&net),
        || rj::to_bytes(&rj::ocpn(&net)),
    ))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellRef {
    cube: String,
    #[serde(default)]
    coord: CoordSpec,
}

/// A coordinate as a `{dimension: value}` object or a URL-style string.
#[derive(Deserialize)]
#[serde(untagged)]
pub enum CoordSpec {
    Map(BTreeMap<String, String>),
    Query(String),
}

impl Default for CoordSpec {
    fn default() -> Self {
        CoordSpec::Map(BTreeMap::new())
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompareRequest {
    left: CellRef,
    right: CellRef,
}

fn resolve_ref(state: &AppState, r: &CellRef) -> Result<(Arc<ProcessCube>, Coordinate), ApiError> {
    let stored = cube_of(state, &r.cube)?;
    let coord = match &r.coord {
        CoordSpec::Map(m) => selectors::coordinate(&stored.cube, m.iter().map(|(d, v)| (d.as_str(), v.as_str())))?,
        CoordSpec::Query(s) => selectors::coordinate_from_query(&stored.cube, s)?,
    };
    Ok((stored.cube, coord))
}

pub async fn compare(State(state): State<AppState>, body: Bytes) -> Result<Response, ApiError> {
    let req: CompareRequest = body_json(&body)?;
    let (lc, lk) = resolve_ref(&state, &req.left)?;
    let (rc, rk) = resolve_ref(&state, &req.right)?;
    let diff = blocking(&state, move || {
        let left = discover_ocdfg(&lc.materialize_cell(&lk)?);
        let right = discover_ocdfg(&rc.materialize_cell(&rk)?);
        Ok(compare_models(&left, &right))
    })
    .await?;
    Ok(json_response(StatusCode::OK, &rj::diff(&diff)))
}
