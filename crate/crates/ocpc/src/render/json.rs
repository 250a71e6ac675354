//! JSON shapes of logs, cubes, grids, models and diffs.

use serde::Serialize;
use serde_json::{Map, Value};

use ocpc_core::cube::{AxisLabel, CountGrid, GridAxis};
use ocpc_core::discovery::{EdgeSide, NetNode, PlaceKind, TypeNet};
use ocpc_core::{Dimension, Issue, ModelDiff, Ocdfg, Ocel, Ocpn, ProcessCube};

use crate::formats::json::value_to_json;

#[derive(Debug, Serialize)]
pub struct IssueJson<'a> {
    pub code: &'static str,
    pub message: &'a str,
    pub location: &'a str,
}

pub fn issues(list: &[Issue]) -> Vec<IssueJson<'_>> {
    list.iter()
        .map(|i| IssueJson {
            code: i.code.as_str(),
            message: &i.message,
            location: &i.location,
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct LogSummary {
    pub events: usize,
    pub objects: usize,
    pub types: usize,
    pub object_types: Vec<String>,
    pub attribute_names: Vec<String>,
    pub activities: Vec<String>,
}

pub fn log_summary(log: &Ocel) -> LogSummary {
    let activities: std::collections::BTreeSet<&str> = log.events().iter().map(|e| e.activity.as_str()).collect();
    LogSummary {
        events: log.len(),
        objects: log.objects().len(),
        types: log.object_types().len(),
        object_types: log.object_types().iter().map(ToString::to_string).collect(),
        attribute_names: log.attribute_names().iter().map(ToString::to_string).collect(),
        activities: activities.into_iter().map(str::to_owned).collect(),
    }
}

fn attr_map<'a>(m: impl Iterator<Item = (&'a ocpc_core::AttributeName, &'a ocpc_core::AttrValue)>) -> Value {
    Value::Object(m.map(|(k, v)| (k.to_string(), value_to_json(v))).collect::<Map<_, _>>())
}

/// Event table (paged) and one object table per type.
pub fn log_tables(log: &Ocel, offset: usize, limit: usize) -> Value {
    let events: Vec<Value> = log
        .events()
        .iter()
        .skip(offset)
        .take(limit)
        .map(|e| {
            serde_json::json!({
                "id": e.id.as_str(),
                "activity": e.activity.as_str(),
                "timestamp": e.timestamp.to_string(),
                "attributes": attr_map(e.vmap.iter()),
                "objects": e.omap.iter().map(|o| o.as_str()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut objects = Map::new();
    for t in log.object_types() {
        let rows: Vec<Value> = log
            .objects()
            .values()
            .filter(|o| &o.otype == t)
            .map(|o| serde_json::json!({ "id": o.id.as_str(), "attributes": attr_map(o.ovmap.iter()) }))
            .collect();
        objects.insert(t.to_string(), Value::Array(rows));
    }
    serde_json::json!({ "offset": offset, "limit": limit, "events": events, "objects": objects })
}

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct DimensionJson {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub object_type: Option<String>,
    pub name: String,
    pub label: String,
    pub spec: String,
}

pub fn dimension(d: &Dimension) -> DimensionJson {
    match d {
        Dimension::EventAttr(n) => DimensionJson {
            kind: "event",
            object_type: None,
            name: n.to_string(),
            label: d.label(),
            spec: d.spec(),
        },
        Dimension::ObjectAttr { otype, name } => DimensionJson {
            kind: "object",
            object_type: Some(otype.to_string()),
            name: name.to_string(),
            label: d.label(),
            spec: d.spec(),
        },
    }
}

pub fn dimensions(dims: &[Dimension]) -> Vec<DimensionJson> {
    dims.iter().map(dimension).collect()
}

#[derive(Debug, Serialize)]
pub struct CubeJson {
    pub mode: &'static str,
    pub dims: Vec<DimensionJson>,
    pub domains: Map<String, Value>,
    pub cells: usize,
    pub events: usize,
}

pub fn cube(c: &ProcessCube) -> CubeJson {
    let domains = c
        .dims()
        .iter()
        .map(|d| {
            let vals = c
                .domain(d)
                .unwrap_or_default()
                .iter()
                .map(|v| Value::String(v.to_string()))
                .collect();
            (d.label(), Value::Array(vals))
        })
        .collect();
    CubeJson {
        mode: c.mode().as_str(),
        dims: dimensions(c.dims()),
        domains,
        cells: c.cell_count(),
        events: c.event_count(),
    }
}

fn axis_name(a: &GridAxis) -> String {
    match a {
        GridAxis::All => "ALL".into(),
        GridAxis::Dim(d) => d.label(),
    }
}

fn labels(l: &[AxisLabel]) -> Vec<String> {
    l.iter().map(ToString::to_string).collect()
}

#[derive(Debug, Serialize)]
pub struct GridJson {
    pub rows_dim: String,
    pub cols_dim: String,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub counts: Vec<Vec<u64>>,
}

pub fn grid(g: &CountGrid) -> GridJson {
    GridJson {
        rows_dim: axis_name(&g.row_axis),
        cols_dim: axis_name(&g.col_axis),
        rows: labels(&g.rows),
        cols: labels(&g.cols),
        counts: g.counts.clone(),
    }
}

#[derive(Debug, Serialize)]
pub struct DurationJson {
    pub mean: f64,
    pub median: f64,
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Serialize)]
pub struct NodeJson {
    pub activity: String,
    pub frequency: u64,
    pub incidences: u64,
    pub mean_incoming_duration: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct EdgeJson {
    pub source: String,
    pub target: String,
    pub frequency: u64,
    pub duration: DurationJson,
}

#[derive(Debug, Serialize)]
pub struct CountJson {
    pub activity: String,
    pub frequency: u64,
}

#[derive(Debug, Serialize)]
pub struct TypeDfgJson {
    pub object_type: String,
    pub trace_count: u64,
    pub nodes: Vec<NodeJson>,
    pub edges: Vec<EdgeJson>,
    pub start: Vec<CountJson>,
    pub end: Vec<CountJson>,
}

#[derive(Debug, Serialize)]
pub struct OcdfgJson {
    pub min_frequency: u64,
    pub types: Vec<TypeDfgJson>,
}

/// Nodes and edges below `min_frequency` are left out.
pub fn ocdfg(m: &Ocdfg, min_frequency: u64) -> OcdfgJson {
    let counts = |map: &std::collections::BTreeMap<ocpc_core::Activity, u64>| {
        map.iter()
            .map(|(a, &f)| CountJson {
                activity: a.to_string(),
                frequency: f,
            })
            .collect()
    };
    OcdfgJson {
        min_frequency,
        types: m
            .types
            .iter()
            .map(|(t, g)| TypeDfgJson {
                object_type: t.to_string(),
                trace_count: g.trace_count,
                nodes: g
                    .nodes
                    .iter()
                    .filter(|(_, n)| n.frequency >= min_frequency)
                    .map(|(a, n)| NodeJson {
                        activity: a.to_string(),
                        frequency: n.frequency,
                        incidences: n.incidences,
                        mean_incoming_duration: n.mean_incoming_duration,
                    })
                    .collect(),
                edges: g
                    .edges
                    .iter()
                    .filter(|(_, s)| s.frequency >= min_frequency)
                    .map(|((a, b), s)| EdgeJson {
                        source: a.to_string(),
                        target: b.to_string(),
                        frequency: s.frequency,
                        duration: DurationJson {
                            mean: s.mean,
                            median: s.median,
                            min: s.min,
                            max: s.max,
                        },
                    })
                    .collect(),
                start: counts(&g.start),
                end: counts(&g.end),
            })
            .collect(),
    }
}

/// Stable place id such as `item::source` or `item::place->pick`.
pub fn place_id(net: &TypeNet, index: usize) -> String {
    let p = &net.places[index];
    match &p.kind {
        PlaceKind::Source => format!("{}::source", p.otype),
        PlaceKind::Sink => format!("{}::sink", p.otype),
        PlaceKind::Between(a, b) => format!("{}::{a}->{b}", p.otype),
    }
}

#[derive(Debug, Serialize)]
pub struct PlaceJson {
    pub id: String,
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct ArcJson {
    pub from: String,
    pub to: String,
    pub direction: &'static str,
    pub variable: bool,
}

#[derive(Debug, Serialize)]
pub struct TypeNetJson {
    pub object_type: String,
    pub places: Vec<PlaceJson>,
    pub arcs: Vec<ArcJson>,
}

#[derive(Debug, Serialize)]
pub struct OcpnJson {
    pub transitions: Vec<String>,
    pub nets: Vec<TypeNetJson>,
}

pub fn ocpn(net: &Ocpn) -> OcpnJson {
    OcpnJson {
        transitions: net.transitions.iter().map(ToString::to_string).collect(),
        nets: net
            .nets
            .iter()
            .map(|(t, n)| {
                let node = |x: &NetNode| match x {
                    NetNode::Place(i) => place_id(n, *i),
                    NetNode::Transition(a) => a.to_string(),
                };
                TypeNetJson {
                    object_type: t.to_string(),
                    places: (0..n.places.len())
                        .map(|i| {
                            let (kind, source, target) = match &n.places[i].kind {
                                PlaceKind::Source => ("source", None, None),
                                PlaceKind::Sink => ("sink", None, None),
                                PlaceKind::Between(a, b) => ("between", Some(a.to_string()), Some(b.to_string())),
                            };
                            PlaceJson {
                                id: place_id(n, i),
                                kind,
                                source,
                                target,
                            }
                        })
                        .collect(),
                    arcs: n
                        .arcs
                        .iter()
                        .map(|a| ArcJson {
                            from: node(&a.from),
                            to: node(&a.to),
                            direction: match a.from {
                                NetNode::Place(_) => "place-to-transition",
                                NetNode::Transition(_) => "transition-to-place",
                            },
                            variable: a.variable,
                        })
                        .collect(),
                }
            })
            .collect(),
    }
}

#[derive(Debug, Serialize)]
pub struct ActivityDiffJson {
    pub object_type: String,
    pub activity: String,
    pub left: Option<u64>,
    pub right: Option<u64>,
    pub presence: &'static str,
    pub frequency_delta: i64,
}

#[derive(Debug, Serialize)]
pub struct EdgeSideJson {
    pub frequency: u64,
    pub mean_duration: f64,
    pub median_duration: f64,
}

#[derive(Debug, Serialize)]
pub struct EdgeDiffJson {
    pub object_type: String,
    pub source: String,
    pub target: String,
    pub left: Option<EdgeSideJson>,
    pub right: Option<EdgeSideJson>,
    pub presence: &'static str,
    pub frequency_delta: i64,
    pub mean_duration_delta: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct DiffJson {
    pub entries: usize,
    pub activities: Vec<ActivityDiffJson>,
    pub edges: Vec<EdgeDiffJson>,
}

fn side(s: &Option<EdgeSide>) -> Option<EdgeSideJson> {
    s.as_ref().map(|s| EdgeSideJson {
        frequency: s.frequency,
        mean_duration: s.mean_duration,
        median_duration: s.median_duration,
    })
}

pub fn diff(d: &ModelDiff) -> DiffJson {
    DiffJson {
        entries: d.len(),
        activities: d
            .activities
            .iter()
            .map(|a| ActivityDiffJson {
                object_type: a.otype.to_string(),
                activity: a.activity.to_string(),
                left: a.left,
                right: a.right,
                presence: a.presence.as_str(),
                frequency_delta: a.frequency_delta(),
            })
            .collect(),
        edges: d
            .edges
            .iter()
            .map(|e| EdgeDiffJson {
                object_type: e.otype.to_string(),
                source: e.source.to_string(),
                target: e.target.to_string(),
                left: side(&e.left),
                right: side(&e.right),
                presence: e.presence.as_str(),
                frequency_delta: e.frequency_delta(),
                mean_duration_delta: e.mean_duration_delta(),
            })
            .collect(),
    }
}

/// Pretty JSON with a trailing newline, as written by the CLI and served by the API.
pub fn to_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("payloads always serialize");
    out.push(b'\n');
    out
}
