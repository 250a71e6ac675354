use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::error::OcelError;
use crate::ids::{Activity, AttributeName, EventId, ObjectId, ObjectType};
use crate::validate::validate;
use crate::value::{AttrValue, Timestamp};

/// One event: an activity at an instant, with attributes and related objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    /// Event identifier.
    pub id: EventId,
    /// Activity label.
    pub activity: Activity,
    /// UTC instant.
    pub timestamp: Timestamp,
    /// Event attributes.
    pub vmap: BTreeMap<AttributeName, AttrValue>,
    /// Related objects.
    pub omap: BTreeSet<ObjectId>,
}

impl Event {
    /// Event without attributes or objects.
    pub fn new(id: impl Into<EventId>, activity: impl Into<Activity>, timestamp: Timestamp) -> Self {
        Self {
            id: id.into(),
            activity: activity.into(),
            timestamp,
            vmap: BTreeMap::new(),
            omap: BTreeSet::new(),
        }
    }

    /// Adds an attribute.
    pub fn with_attr(mut self, name: impl Into<AttributeName>, value: impl Into<AttrValue>) -> Self {
        self.vmap.insert(name.into(), value.into());
        self
    }

    /// Adds related objects.
    pub fn with_objects<I, S>(mut self, objects: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<ObjectId>,
    {
        self.omap.extend(objects.into_iter().map(Into::into));
        self
    }
}

/// An object with its type and attributes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectInstance {
    /// Object identifier.
    pub id: ObjectId,
    /// Object type.
    pub otype: ObjectType,
    /// Object attributes.
    pub ovmap: BTreeMap<AttributeName, AttrValue>,
}

impl ObjectInstance {
    /// Object without attributes.
    pub fn new(id: impl Into<ObjectId>, otype: impl Into<ObjectType>) -> Self {
        Self {
            id: id.into(),
            otype: otype.into(),
            ovmap: BTreeMap::new(),
        }
    }

    /// Adds an attribute.
    pub fn with_attr(mut self, name: impl Into<AttributeName>, value: impl Into<AttrValue>) -> Self {
        self.ovmap.insert(name.into(), value.into());
        self
    }
}

/// An immutable object-centric event log.
///
/// Events are kept sorted by `(timestamp, id)`, which gives a total order
/// even when timestamps tie.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Ocel {
    events: Vec<Event>,
    objects: BTreeMap<ObjectId, ObjectInstance>,
    attribute_names: BTreeSet<AttributeName>,
    object_types: BTreeSet<ObjectType>,
}

pub(crate) fn canonical_sort(events: &mut [Event]) {
    events.sort_by(|a, b| (a.timestamp, &a.id).cmp(&(b.timestamp, &b.id)));
}

impl Ocel {
    /// Builds a log, sorting events canonically, and rejects it with
    /// [`OcelError::Invalid`] if validation reports any error.
    pub fn new(
        events: Vec<Event>,
        objects: impl IntoIterator<Item = ObjectInstance>,
        attribute_names: BTreeSet<AttributeName>,
        object_types: BTreeSet<ObjectType>,
    ) -> Result<Self, OcelError> {
        let log = Self::from_parts_unchecked(events, objects, attribute_names, object_types);
        let report = validate(&log);
        if report.is_valid() {
            Ok(log)
        } else {
            Err(OcelError::Invalid(report))
        }
    }

    /// Like [`Ocel::new`] but declares exactly the attribute names and
    /// object types that occur in the events and objects.
    pub fn from_observed(
        events: Vec<Event>,
        objects: impl IntoIterator<Item = ObjectInstance>,
    ) -> Result<Self, OcelError> {
        let objects: Vec<ObjectInstance> = objects.into_iter().collect();
        let (names, types) = observed_declarations(events.iter(), objects.iter());
        Self::new(events, objects, names, types)
    }

    /// Builds a log without validating it. Events are still sorted.
    pub fn from_parts_unchecked(
        mut events: Vec<Event>,
        objects: impl IntoIterator<Item = ObjectInstance>,
        attribute_names: BTreeSet<AttributeName>,
        object_types: BTreeSet<ObjectType>,
    ) -> Self {
        canonical_sort(&mut events);
        Self {
            events,
            objects: objects.into_iter().map(|o| (o.id.clone(), o)).collect(),
            attribute_names,
            object_types,
        }
    }

    /// Events in canonical order.
    pub fn events(&self) -> &[Event] {
        &self.events
    }

    /// Objects keyed by id.
    pub fn objects(&self) -> &BTreeMap<ObjectId, ObjectInstance> {
        &self.objects
    }

    /// Looks up an object.
    pub fn object(&self, id: &ObjectId) -> Option<&ObjectInstance> {
        self.objects.get(id)
    }

    /// Declared attribute names (event and object attributes share one namespace).
    pub fn attribute_names(&self) -> &BTreeSet<AttributeName> {
        &self.attribute_names
    }

    /// Declared object types.
    pub fn object_types(&self) -> &BTreeSet<ObjectType> {
        &self.object_types
    }

    /// Number of events.
    pub fn len(&self) -> usize {
        self.events.len()
    }

    /// True if the log has no events.
    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Decomposes the log into events, objects, attribute names and object types.
    pub fn into_parts(
        self,
    ) -> (
        Vec<Event>,
        BTreeMap<ObjectId, ObjectInstance>,
        BTreeSet<AttributeName>,
        BTreeSet<ObjectType>,
    ) {
        (self.events, self.objects, self.attribute_names, self.object_types)
    }

    /// Restricts the log to the events in `keep`.
    ///
    /// Only objects referenced by a kept event survive, and the declared
    /// attribute names and object types are recomputed from what is left.
    pub fn sublog(&self, keep: &BTreeSet<EventId>) -> Result<Ocel, OcelError> {
        let mut indices = Vec::with_capacity(keep.len());
        for (i, e) in self.events.iter().enumerate() {
            if keep.contains(&e.id) {
                indices.push(i);
            }
        }
        if indices.len() != keep.len() {
            let present: BTreeSet<&EventId> = indices.iter().map(|&i| &self.events[i].id).collect();
            let missing = keep.iter().find(|id| !present.contains(id));
            if let Some(id) = missing {
                return Err(OcelError::UnknownEventId(id.clone()));
            }
        }
        Ok(self.sublog_by_index(indices))
    }

    /// Restriction by ascending event positions. Out-of-range positions are ignored.
    pub fn sublog_by_index(&self, indices: impl IntoIterator<Item = usize>) -> Ocel {
        let events: Vec<Event> = indices
            .into_iter()
            .filter_map(|i| self.events.get(i).cloned())
            .collect();
        let referenced: BTreeSet<&ObjectId> = events.iter().flat_map(|e| e.omap.iter()).collect();
        let objects: BTreeMap<ObjectId, ObjectInstance> = referenced
            .into_iter()
            .filter_map(|id| self.objects.get(id).map(|o| (id.clone(), o.clone())))
            .collect();
        let (attribute_names, object_types) = observed_declarations(events.iter(), objects.values());
        // Order is inherited from the parent, which is already canonical.
        Ocel {
            events,
            objects,
            attribute_names,
            object_types,
        }
    }
}

fn observed_declarations<'a>(
    events: impl Iterator<Item = &'a Event>,
    objects: impl Iterator<Item = &'a ObjectInstance>,
) -> (BTreeSet<AttributeName>, BTreeSet<ObjectType>) {
    let mut names = BTreeSet::new();
    let mut types = BTreeSet::new();
    for e in events {
        names.extend(e.vmap.keys().cloned());
    }
    for o in objects {
        names.extend(o.ovmap.keys().cloned());
        types.insert(o.otype.clone());
    }
    (names, types)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    fn at(min: u32) -> Timestamp {
        Timestamp::from_utc(2024, 1, 1, 10, min, 0).unwrap()
    }

    /// The four-event order/item log used throughout the tests.
    pub fn fix1() -> Ocel {
        let objects = [
            ObjectInstance::new("o1", "item").with_attr("product", "X"),
            ObjectInstance::new("o2", "item").with_attr("product", "Y"),
            ObjectInstance::new("c1", "order"),
        ];
        let events = alloc::vec![
            Event::new("e1", "place", at(0))
                .with_objects(["c1", "o1", "o2"])
                .with_attr("channel", "web"),
            Event::new("e2", "pick", at(5))
                .with_objects(["o1"])
                .with_attr("channel", "web"),
            Event::new("e3", "pick", at(10))
                .with_objects(["o2"])
                .with_attr("channel", "phone"),
            Event::new("e4", "ship", at(20))
                .with_objects(["c1", "o1", "o2"])
                .with_attr("channel", "web"),
        ];
        Ocel::from_observed(events, objects).unwrap()
    }
}
