//! Object-centric process discovery.
//!
//! Logs are flattened per object type into one trace per object; the
//! directly-follows relation of those traces gives the per-type graphs of an
//! [`Ocdfg`], annotated with frequencies and inter-event durations. An
//! [`Ocpn`] is synthesized from the same graphs, and [`compare_models`] lines
//! two graphs up entry by entry.

mod dfg;
mod diff;
mod flatten;
mod petri;

pub use dfg::{discover_ocdfg, EdgeStats, NodeStats, Ocdfg, TypeDfg};
pub use diff::{compare_models, ActivityDiff, EdgeDiff, EdgeSide, ModelDiff, Presence};
pub use flatten::{flatten, TraceStep, TypedTrace};
pub use petri::{discover_ocpn, NetArc, NetNode, Ocpn, Place, PlaceKind, TypeNet};
