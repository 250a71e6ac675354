use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::OcelError;
use crate::ids::{Activity, EventId, ObjectId, ObjectType};
use crate::ocel::Ocel;
use crate::value::Timestamp;

/// One event in an object's trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    /// Event id.
    pub event: EventId,
    /// Activity of the event.
    pub activity: Activity,
    /// Time of the event.
    pub timestamp: Timestamp,
}

/// The events of one object, in log order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedTrace {
    /// The object.
    pub object: ObjectId,
    /// Its type.
    pub otype: ObjectType,
    /// Steps in canonical event order.
    pub steps: Vec<TraceStep>,
}

/// Positions of each object's events, keyed by object id.
pub(crate) fn object_positions(log: &Ocel) -> BTreeMap<&ObjectId, Vec<usize>> {
    let mut traces: BTreeMap<&ObjectId, Vec<usize>> = BTreeMap::new();
    for (pos, e) in log.events().iter().enumerate() {
        for oid in &e.omap {
            traces.entry(oid).or_default().push(pos);
        }
    }
    traces
}

/// One trace per object of `otype` that occurs in at least one event,
/// ordered by object id.
pub fn flatten(log: &Ocel, otype: &ObjectType) -> Result<Vec<TypedTrace>, OcelError> {
    if !log.object_types().contains(otype) {
        return Err(OcelError::UnknownObjectType(otype.clone()));
    }
    let events = log.events();
    Ok(object_positions(log)
        .into_iter()
        .filter_map(|(oid, positions)| {
            let obj = log.object(oid)?;
            (obj.otype == *otype).then(|| TypedTrace {
                object: oid.clone(),
                otype: otype.clone(),
                steps: positions
                    .into_iter()
                    .map(|p| TraceStep {
                        event: events[p].id.clone(),
                        activity: events[p].activity.clone(),
                        timestamp: events[p].timestamp,
                    })
                    .collect(),
            })
        })
        .collect())
}
