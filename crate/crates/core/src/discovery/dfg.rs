use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::flatten::object_positions;
use crate::ids::{Activity, ObjectType};
use crate::ocel::Ocel;

/// Frequency and duration statistics of one directly-follows edge.
/// Durations are in seconds.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeStats {
    /// Number of times the pair occurs directly in sequence.
    pub frequency: u64,
    /// Mean duration.
    pub mean: f64,
    /// Median duration; the midpoint of the two central values for even counts.
    pub median: f64,
    /// Shortest duration.
    pub min: f64,
    /// Longest duration.
    pub max: f64,
}

impl EdgeStats {
    /// Statistics over a non-empty list of durations.
    pub fn from_durations(mut durations: Vec<f64>) -> Option<Self> {
        if durations.is_empty() {
            return None;
        }
        durations.sort_by(f64::total_cmp);
        let n = durations.len();
        let min = durations[0];
        let max = durations[n - 1];
        let median = if n % 2 == 1 {
            durations[n / 2]
        } else {
            (durations[n / 2 - 1] + durations[n / 2]) / 2.0
        };
        let mean = (durations.iter().sum::<f64>() / n as f64).clamp(min, max);
        Some(Self {
            frequency: n as u64,
            mean,
            median,
            min,
            max,
        })
    }
}

/// Per-activity annotations of one type's graph.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeStats {
    /// Distinct events of the activity involving at least one object of the type.
    pub frequency: u64,
    /// Object-event incidences: an event with two objects of the type counts twice.
    pub incidences: u64,
    /// Frequency-weighted mean duration of the incoming edges, if any.
    pub mean_incoming_duration: Option<f64>,
}

/// The directly-follows graph of one object type.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TypeDfg {
    /// Activities.
    pub nodes: BTreeMap<Activity, NodeStats>,
    /// Directly-follows edges.
    pub edges: BTreeMap<(Activity, Activity), EdgeStats>,
    /// How many traces start with each activity.
    pub start: BTreeMap<Activity, u64>,
    /// How many traces end with each activity.
    pub end: BTreeMap<Activity, u64>,
    /// Number of traces (objects of the type that occur in the log).
    pub trace_count: u64,
}

/// An object-centric directly-follows graph: one [`TypeDfg`] per object type
/// that has at least one trace.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Ocdfg {
    /// Graphs keyed by object type.
    pub types: BTreeMap<ObjectType, TypeDfg>,
}

impl Ocdfg {
    /// True when no type has a trace.
    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }
}

/// Discovers the frequency- and performance-annotated OC-DFG of a log.
pub fn discover_ocdfg(log: &Ocel) -> Ocdfg {
    let events = log.events();
    let mut types: BTreeMap<ObjectType, TypeDfg> = BTreeMap::new();
    let mut durations: BTreeMap<(&ObjectType, (&Activity, &Activity)), Vec<f64>> = BTreeMap::new();

    for e in events {
        let mut per_type: BTreeMap<&ObjectType, u64> = BTreeMap::new();
        for oid in &e.omap {
            if let Some(o) = log.object(oid) {
                *per_type.entry(&o.otype).or_default() += 1;
            }
        }
        for (t, n) in per_type {
            let node = types
                .entry(t.clone())
                .or_default()
                .nodes
                .entry(e.activity.clone())
                .or_insert(NodeStats {
                    frequency: 0,
                    incidences: 0,
                    mean_incoming_duration: None,
                });
            node.frequency += 1;
            node.incidences += n;
        }
    }

    for (oid, positions) in object_positions(log) {
        let Some(obj) = log.object(oid) else { continue };
        let dfg = types.entry(obj.otype.clone()).or_default();
        dfg.trace_count += 1;
        let first = &events[positions[0]].activity;
        let last = &events[positions[positions.len() - 1]].activity;
        *dfg.start.entry(first.clone()).or_default() += 1;
        *dfg.end.entry(last.clone()).or_default() += 1;
        for pair in positions.windows(2) {
            let (a, b) = (&events[pair[0]], &events[pair[1]]);
            durations
                .entry((&obj.otype, (&a.activity, &b.activity)))
                .or_default()
                .push(b.timestamp.seconds_since(a.timestamp));
        }
    }

    for ((t, (a, b)), ds) in durations {
        let stats = EdgeStats::from_durations(ds).expect("edge has at least one duration");
        types
            .get_mut(t)
            .expect("type registered with its trace")
            .edges
            .insert((a.clone(), b.clone()), stats);
    }

    for dfg in types.values_mut() {
        let mut incoming: BTreeMap<&Activity, (f64, u64)> = BTreeMap::new();
        for ((_, b), s) in &dfg.edges {
            let acc = incoming.entry(b).or_default();
            acc.0 += s.mean * s.frequency as f64;
            acc.1 += s.frequency;
        }
        let means: BTreeMap<Activity, f64> = incoming
            .into_iter()
            .map(|(a, (sum, n))| (a.clone(), sum / n as f64))
            .collect();
        for (a, node) in dfg.nodes.iter_mut() {
            node.mean_incoming_duration = means.get(a).copied();
        }
    }
    Ocdfg { types }
}

/// `(activity, type)` pairs whose events carry a number of objects of the
/// type other than exactly one. Events with no object of the type are not
/// counted.
pub(crate) fn variable_pairs(log: &Ocel) -> BTreeSet<(Activity, ObjectType)> {
    let mut out = BTreeSet::new();
    for e in log.events() {
        let mut per_type: BTreeMap<&ObjectType, u64> = BTreeMap::new();
        for oid in &e.omap {
            if let Some(o) = log.object(oid) {
                *per_type.entry(&o.otype).or_default() += 1;
            }
        }
        for (t, n) in per_type {
            if n != 1 {
                out.insert((e.activity.clone(), t.clone()));
            }
        }
    }
    out
}
