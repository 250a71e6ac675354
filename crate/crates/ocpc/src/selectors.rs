//! Textual selection of dimensions, values and coordinates, shared by the
//! CLI and the service.

use std::collections::{BTreeMap, BTreeSet};

use ocpc_core::cube::NULL_TOKEN;
use ocpc_core::{Coordinate, CubeError, DimValue, Dimension, ProcessCube};

/// Finds a dimension by spec (`event:channel`, `object:item.product`) or by
/// label (`channel`, `item.product`) among `candidates`.
pub fn resolve_dimension(text: &str, candidates: &[Dimension]) -> Result<Dimension, CubeError> {
    if let Some(d) = Dimension::parse_spec(text) {
        return candidates
            .iter()
            .find(|c| **c == d)
            .cloned()
            .ok_or_else(|| CubeError::UnknownDimension(text.to_owned()));
    }
    let mut hits = candidates.iter().filter(|c| c.label() == text);
    match (hits.next(), hits.next()) {
        (Some(d), None) => Ok(d.clone()),
        _ => Err(CubeError::UnknownDimension(text.to_owned())),
    }
}

/// Finds the domain value of `dim` whose display form is `text`.
/// `__null__` always names the missing-value bucket.
pub fn resolve_value(cube: &ProcessCube, dim: &Dimension, text: &str) -> Result<DimValue, CubeError> {
    if text == NULL_TOKEN {
        return Ok(DimValue::Null);
    }
    let domain = cube
        .domain(dim)
        .ok_or_else(|| CubeError::UnknownDimension(dim.label()))?;
    let mut hits = domain.iter().filter(|v| v.to_string() == text);
    match (hits.next(), hits.next()) {
        (Some(v), None) => Ok(v.clone()),
        _ => Err(CubeError::ValueNotInDomain {
            dimension: dim.label(),
            value: text.to_owned(),
        }),
    }
}

/// Splits `dim=value` at the first `=`.
pub fn split_assignment(text: &str) -> Option<(&str, &str)> {
    text.split_once('=')
}

/// Resolves `(dimension, value)` text pairs into a full coordinate of `cube`.
pub fn coordinate<'a>(
    cube: &ProcessCube,
    pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
) -> Result<Coordinate, CubeError> {
    let mut coord = BTreeMap::new();
    for (d, v) in pairs {
        let dim = resolve_dimension(d, cube.dims())?;
        let value = resolve_value(cube, &dim, v)?;
        if coord.insert(dim.clone(), value).is_some() {
            return Err(CubeError::SameDimensionTwice(dim.label()));
        }
    }
    if coord.len() != cube.dims().len() {
        return Err(CubeError::CoordinateDimensionMismatch);
    }
    Ok(coord.into_iter().collect())
}

/// Parses a URL coordinate: `_` for the root cell of a zero-dimension cube,
/// otherwise form-encoded `dim=value&dim=value`.
pub fn coordinate_from_query(cube: &ProcessCube, query: &str) -> Result<Coordinate, CubeError> {
    let pairs: Vec<(String, String)> = if query == "_" || query.is_empty() {
        Vec::new()
    } else {
        form_urlencoded::parse(query.as_bytes()).into_owned().collect()
    };
    coordinate(cube, pairs.iter().map(|(d, v)| (d.as_str(), v.as_str())))
}

/// Encodes a coordinate for URLs, inverse of [`coordinate_from_query`].
pub fn coordinate_to_query(coord: &Coordinate) -> String {
    if coord.is_empty() {
        return "_".into();
    }
    let mut s = form_urlencoded::Serializer::new(String::new());
    for (d, v) in coord.iter() {
        s.append_pair(&d.spec(), &v.to_string());
    }
    s.finish()
}

/// Groups `(dimension, value)` text pairs into a dice selection.
pub fn selection<'a>(
    cube: &ProcessCube,
    pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
) -> Result<BTreeMap<Dimension, BTreeSet<DimValue>>, CubeError> {
    let mut sel: BTreeMap<Dimension, BTreeSet<DimValue>> = BTreeMap::new();
    for (d, v) in pairs {
        let dim = resolve_dimension(d, cube.dims())?;
        let value = resolve_value(cube, &dim, v)?;
        sel.entry(dim).or_default().insert(value);
    }
    Ok(sel)
}

/// Parses a comma-separated list of dimension specs or labels against the
/// log's available dimensions.
pub fn dimension_list(text: &[String], available: &[Dimension]) -> Result<Vec<Dimension>, CubeError> {
    text.iter()
        .flat_map(|t| t.split(','))
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| resolve_dimension(t, available))
        .collect()
}
