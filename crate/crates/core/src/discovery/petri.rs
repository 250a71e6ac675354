use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::dfg::{discover_ocdfg, variable_pairs, Ocdfg};
use crate::ids::{Activity, ObjectType};
use crate::ocel::Ocel;

/// Role of a place in a per-type subnet.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum PlaceKind {
    /// Initial place; feeds the start activities.
    Source,
    /// Final place; fed by the end activities.
    Sink,
    /// Sits between two activities, one per directly-follows edge.
    Between(Activity, Activity),
}

/// A place of one object type's subnet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Place {
    /// Object type of the tokens.
    pub otype: ObjectType,
    /// Role of the place.
    pub kind: PlaceKind,
}

/// Arc endpoint.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum NetNode {
    /// Index into the subnet's `places`.
    Place(usize),
    /// Transition labelled with an activity.
    Transition(Activity),
}

/// A directed arc of a subnet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetArc {
    /// Tail.
    pub from: NetNode,
    /// Head.
    pub to: NetNode,
    /// The transition moves a varying (or more than one) number of objects of the type.
    pub variable: bool,
}

/// Workflow net of one object type. `places[0]` is the source and
/// `places[1]` the sink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeNet {
    /// Places, source and sink first, then one per edge in edge order.
    pub places: Vec<Place>,
    /// Arcs in a deterministic order.
    pub arcs: Vec<NetArc>,
}

impl TypeNet {
    /// The source place index.
    pub const SOURCE: usize = 0;
    /// The sink place index.
    pub const SINK: usize = 1;
}

/// Object-centric Petri net: per-type workflow nets sharing transitions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Ocpn {
    /// All transitions (activities).
    pub transitions: BTreeSet<Activity>,
    /// Subnets keyed by object type.
    pub nets: BTreeMap<ObjectType, TypeNet>,
}

impl Ocpn {
    /// Synthesizes a net from a graph. `variable` lists the
    /// `(activity, type)` pairs whose arcs are variable.
    pub fn from_ocdfg(dfg: &Ocdfg, variable: &BTreeSet<(Activity, ObjectType)>) -> Self {
        let mut transitions = BTreeSet::new();
        let mut nets = BTreeMap::new();
        for (t, g) in &dfg.types {
            transitions.extend(g.nodes.keys().cloned());
            let is_var = |a: &Activity| variable.contains(&(a.clone(), t.clone()));
            let mut places = Vec::with_capacity(g.edges.len() + 2);
            places.push(Place {
                otype: t.clone(),
                kind: PlaceKind::Source,
            });
            places.push(Place {
                otype: t.clone(),
                kind: PlaceKind::Sink,
            });
            let mut arcs = Vec::new();
            for a in g.start.keys() {
                arcs.push(NetArc {
                    from: NetNode::Place(TypeNet::SOURCE),
                    to: NetNode::Transition(a.clone()),
                    variable: is_var(a),
                });
            }
            for (a, b) in g.edges.keys() {
                let p = places.len();
                places.push(Place {
                    otype: t.clone(),
                    kind: PlaceKind::Between(a.clone(), b.clone()),
                });
                arcs.push(NetArc {
                    from: NetNode::Transition(a.clone()),
                    to: NetNode::Place(p),
                    variable: is_var(a),
                });
                arcs.push(NetArc {
                    from: NetNode::Place(p),
                    to: NetNode::Transition(b.clone()),
                    variable: is_var(b),
                });
            }
            for a in g.end.keys() {
                arcs.push(NetArc {
                    from: NetNode::Transition(a.clone()),
                    to: NetNode::Place(TypeNet::SINK),
                    variable: is_var(a),
                });
            }
            nets.insert(t.clone(), TypeNet { places, arcs });
        }
        Self { transitions, nets }
    }

    /// Object types whose subnet contains transition `a`.
    pub fn types_of(&self, a: &Activity) -> Vec<&ObjectType> {
        self.nets
            .iter()
            .filter(|(_, n)| {
                n.arcs
                    .iter()
                    .any(|arc| arc.from == NetNode::Transition(a.clone()) || arc.to == NetNode::Transition(a.clone()))
            })
            .map(|(t, _)| t)
            .collect()
    }
}

/// Discovers a simplified object-centric Petri net: the OC-DFG of each type
/// becomes a workflow net with a place per edge, and the subnets share
/// transitions by activity name.
pub fn discover_ocpn(log: &Ocel) -> Ocpn {
    Ocpn::from_ocdfg(&discover_ocdfg(log), &variable_pairs(log))
}
