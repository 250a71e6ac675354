//! Process cubes over object-centric event logs.
//!
//! A cube partitions the events of a base log along a list of
//! [`Dimension`]s. A dimension is either an event attribute or an attribute
//! of one object type. For object-attribute dimensions the
//! [`Materialization`] decides membership:
//!
//! * [`Materialization::Existence`]: the event lands in cell `v` if at least
//!   one related object of the scoped type has value `v`. An event can land in
//!   several cells.
//! * [`Materialization::All`]: the event lands in cell `v` only if it has at
//!   least one related object of the type and every such object has value
//!   `v`. Events with mixed values land nowhere.
//!
//! Missing values go to the [`DimValue::Null`] bucket: a missing event
//! attribute; under `Existence`, no scoped object carrying the attribute;
//! under `All`, no scoped objects at all or all of them lacking it.
//!
//! The index is built eagerly. Cubes are immutable; [`ProcessCube::slice`]
//! and [`ProcessCube::dice`] return new cubes over the same base log.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::error::CubeError;
use crate::ids::{AttributeName, EventId, ObjectType};
use crate::ocel::{Event, Ocel};
use crate::value::AttrValue;

mod ops;

pub use ops::{AxisLabel, CountGrid, GridAxis};

/// A cube axis.
///
/// Ordered with event attributes first, then object attributes by type and
/// name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dimension {
    /// An event attribute.
    EventAttr(AttributeName),
    /// An attribute of objects of one type.
    ObjectAttr {
        /// Object type the attribute is scoped to.
        otype: ObjectType,
        /// Attribute name.
        name: AttributeName,
    },
}

impl Dimension {
    /// Event-attribute dimension.
    pub fn event(name: impl Into<AttributeName>) -> Self {
        Dimension::EventAttr(name.into())
    }

    /// Object-attribute dimension scoped to `otype`.
    pub fn object(otype: impl Into<ObjectType>, name: impl Into<AttributeName>) -> Self {
        Dimension::ObjectAttr {
            otype: otype.into(),
            name: name.into(),
        }
    }

    /// Short label: `channel` or `item.product`.
    pub fn label(&self) -> String {
        self.to_string()
    }

    /// Unambiguous spec form: `event:channel` or `object:item.product`.
    pub fn spec(&self) -> String {
        match self {
            Dimension::EventAttr(n) => alloc::format!("event:{n}"),
            Dimension::ObjectAttr { otype, name } => alloc::format!("object:{otype}.{name}"),
        }
    }

    /// Parses the spec form produced by [`Dimension::spec`]. The object type
    /// ends at the first `.`.
    pub fn parse_spec(s: &str) -> Option<Self> {
        if let Some(name) = s.strip_prefix("event:") {
            (!name.is_empty()).then(|| Dimension::event(name))
        } else if let Some(rest) = s.strip_prefix("object:") {
            let (otype, name) = rest.split_once('.')?;
            (!otype.is_empty() && !name.is_empty()).then(|| Dimension::object(otype, name))
        } else {
            None
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::EventAttr(n) => write!(f, "{n}"),
            Dimension::ObjectAttr { otype, name } => write!(f, "{otype}.{name}"),
        }
    }
}

/// Cell membership rule for object-attribute dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Materialization {
    /// Some scoped object has the value.
    Existence,
    /// Every scoped object has the value, and there is at least one.
    All,
}

impl Materialization {
    /// Lower-case name.
    pub fn as_str(self) -> &'static str {
        match self {
            Materialization::Existence => "existence",
            Materialization::All => "all",
        }
    }
}

impl fmt::Display for Materialization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for Materialization {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "existence" | "exists" => Ok(Materialization::Existence),
            "all" => Ok(Materialization::All),
            other => Err(alloc::format!(
                "unknown materialization {other:?} (expected existence|all)"
            )),
        }
    }
}

/// A coordinate value: an attribute value or the missing-value bucket.
///
/// `Null` sorts after every value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum DimValue {
    /// An observed attribute value.
    Value(AttrValue),
    /// No value.
    Null,
}

/// Wire token for [`DimValue::Null`].
pub const NULL_TOKEN: &str = "__null__";

impl fmt::Display for DimValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimValue::Value(v) => write!(f, "{v}"),
            DimValue::Null => f.write_str(NULL_TOKEN),
        }
    }
}

impl<T: Into<AttrValue>> From<T> for DimValue {
    fn from(v: T) -> Self {
        DimValue::Value(v.into())
    }
}

/// A point in a cube: one value per dimension.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Coordinate(BTreeMap<Dimension, DimValue>);

impl Coordinate {
    /// The empty coordinate, addressing the root cell of a zero-dimensional cube.
    pub fn root() -> Self {
        Self::default()
    }

    /// Adds or replaces the value for `dim`.
    pub fn with(mut self, dim: Dimension, value: impl Into<DimValue>) -> Self {
        self.0.insert(dim, value.into());
        self
    }

    /// Value assigned to `dim`.
    pub fn get(&self, dim: &Dimension) -> Option<&DimValue> {
        self.0.get(dim)
    }

    /// Iterates over `(dimension, value)` pairs in dimension order.
    pub fn iter(&self) -> impl Iterator<Item = (&Dimension, &DimValue)> {
        self.0.iter()
    }

    /// Number of dimensions assigned.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// True for the root coordinate.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<(Dimension, DimValue)> for Coordinate {
    fn from_iter<I: IntoIterator<Item = (Dimension, DimValue)>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

/// Every dimension a cube over `log` can use: all event attribute names seen
/// on events, then every `(object type, attribute)` pair seen on objects.
pub fn list_dimensions(log: &Ocel) -> Vec<Dimension> {
    let mut dims = BTreeSet::new();
    for e in log.events() {
        dims.extend(e.vmap.keys().map(|k| Dimension::EventAttr(k.clone())));
    }
    for o in log.objects().values() {
        dims.extend(o.ovmap.keys().map(|k| Dimension::ObjectAttr {
            otype: o.otype.clone(),
            name: k.clone(),
        }));
    }
    dims.into_iter().collect()
}

/// Values an event takes on one dimension. Empty means the event is in no
/// cell of the cube.
pub fn member_values(log: &Ocel, event: &Event, dim: &Dimension, mode: Materialization) -> Vec<DimValue> {
    match dim {
        Dimension::EventAttr(name) => vec![event.vmap.get(name).cloned().map_or(DimValue::Null, DimValue::Value)],
        Dimension::ObjectAttr { otype, name } => {
            let scoped = event
                .omap
                .iter()
                .filter_map(|id| log.object(id))
                .filter(|o| o.otype == *otype);
            match mode {
                Materialization::Existence => {
                    let present: BTreeSet<&AttrValue> = scoped.filter_map(|o| o.ovmap.get(name)).collect();
                    if present.is_empty() {
                        vec![DimValue::Null]
                    } else {
                        present.into_iter().cloned().map(DimValue::Value).collect()
                    }
                }
                Materialization::All => {
                    let mut values = scoped.map(|o| o.ovmap.get(name));
                    let Some(first) = values.next() else {
                        return vec![DimValue::Null];
                    };
                    if values.all(|v| v == first) {
                        vec![first.cloned().map_or(DimValue::Null, DimValue::Value)]
                    } else {
                        Vec::new()
                    }
                }
            }
        }
    }
}

/// Cell keys are per-dimension positions into the domain lists; cell values
/// are ascending event positions in the base log.
pub(crate) type CellIndex = BTreeMap<Vec<u32>, Vec<u32>>;

/// A multidimensional index from cell coordinates to event sets.
#[derive(Debug, Clone)]
pub struct ProcessCube {
    base: Arc<Ocel>,
    dims: Vec<Dimension>,
    mode: Materialization,
    domains: Vec<Vec<DimValue>>,
    cells: CellIndex,
}

impl PartialEq for ProcessCube {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.base, &other.base) || self.base == other.base)
            && self.dims == other.dims
            && self.mode == other.mode
            && self.domains == other.domains
            && self.cells == other.cells
    }
}

impl ProcessCube {
    /// Builds the cube eagerly.
    pub fn build(base: Arc<Ocel>, dims: Vec<Dimension>, mode: Materialization) -> Result<Self, CubeError> {
        let builder = CubeBuilder::new(base, dims, mode)?;
        let part = builder.partial(0..builder.base.len());
        Ok(builder.finish(vec![part]))
    }

    /// The base log.
    pub fn base(&self) -> &Arc<Ocel> {
        &self.base
    }

    /// Dimensions, in cube order.
    pub fn dims(&self) -> &[Dimension] {
        &self.dims
    }

    /// Materialization mode.
    pub fn mode(&self) -> Materialization {
        self.mode
    }

    /// Ordered domain of a dimension: observed values ascending, then `Null`
    /// if some event fell into the missing-value bucket.
    pub fn domain(&self, dim: &Dimension) -> Option<&[DimValue]> {
        self.position(dim).map(|p| self.domains[p].as_slice())
    }

    /// Number of populated cells.
    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    /// Populated cells in coordinate order, with ascending event positions.
    pub fn cells(&self) -> impl Iterator<Item = (Vec<&DimValue>, &[u32])> + '_ {
        self.cells.iter().map(move |(key, evs)| {
            let values = key
                .iter()
                .enumerate()
                .map(|(d, &v)| &self.domains[d][v as usize])
                .collect();
            (values, evs.as_slice())
        })
    }

    /// Populated cells keyed by their values, holding event ids.
    pub fn cell_map(&self) -> BTreeMap<Vec<DimValue>, BTreeSet<EventId>> {
        self.cells()
            .map(|(values, evs)| {
                (
                    values.into_iter().cloned().collect(),
                    evs.iter().map(|&i| self.base.events()[i as usize].id.clone()).collect(),
                )
            })
            .collect()
    }

    /// Ascending positions of every event present in at least one cell.
    pub fn event_positions(&self) -> Vec<u32> {
        let all: BTreeSet<u32> = self.cells.values().flatten().copied().collect();
        all.into_iter().collect()
    }

    /// Number of distinct events in the cube.
    pub fn event_count(&self) -> usize {
        self.event_positions().len()
    }

    /// Event positions of one cell. In-domain coordinates that are not
    /// populated give an empty slice; `Null` is accepted for every
    /// dimension.
    pub fn cell_positions(&self, coord: &Coordinate) -> Result<&[u32], CubeError> {
        let key = self.key_of(coord)?;
        Ok(key.and_then(|k| self.cells.get(&k)).map_or(&[][..], |v| v.as_slice()))
    }

    /// Event ids of one cell, in log order.
    pub fn cell_events(&self, coord: &Coordinate) -> Result<Vec<EventId>, CubeError> {
        let positions = self.cell_positions(coord)?;
        Ok(positions
            .iter()
            .map(|&i| self.base.events()[i as usize].id.clone())
            .collect())
    }

    /// The cell's sub-log of the base log.
    pub fn materialize_cell(&self, coord: &Coordinate) -> Result<Ocel, CubeError> {
        let positions = self.cell_positions(coord)?;
        Ok(self.base.sublog_by_index(positions.iter().map(|&i| i as usize)))
    }

    /// Sub-log of every event present in the cube.
    pub fn materialize_all(&self) -> Ocel {
        self.base
            .sublog_by_index(self.event_positions().into_iter().map(|i| i as usize))
    }

    pub(crate) fn position(&self, dim: &Dimension) -> Option<usize> {
        self.dims.iter().position(|d| d == dim)
    }

    fn require_position(&self, dim: &Dimension) -> Result<usize, CubeError> {
        self.position(dim)
            .ok_or_else(|| CubeError::UnknownDimension(dim.label()))
    }

    /// Domain position of `value` on dimension `p`. `Ok(None)` is an
    /// unpopulated `Null`.
    pub(crate) fn value_id(&self, p: usize, value: &DimValue) -> Result<Option<u32>, CubeError> {
        match self.domains[p].binary_search(value) {
            Ok(i) => Ok(Some(i as u32)),
            Err(_) if *value == DimValue::Null => Ok(None),
            Err(_) => Err(CubeError::ValueNotInDomain {
                dimension: self.dims[p].label(),
                value: value.to_string(),
            }),
        }
    }

    /// Translates a coordinate into a cell key. `Ok(None)` means the
    /// coordinate is valid but can never be populated.
    fn key_of(&self, coord: &Coordinate) -> Result<Option<Vec<u32>>, CubeError> {
        if coord.len() != self.dims.len() {
            return Err(CubeError::CoordinateDimensionMismatch);
        }
        let mut key = Vec::with_capacity(self.dims.len());
        for (p, dim) in self.dims.iter().enumerate() {
            let value = coord.get(dim).ok_or(CubeError::CoordinateDimensionMismatch)?;
            match self.value_id(p, value)? {
                Some(id) => key.push(id),
                None => return Ok(None),
            }
        }
        Ok(Some(key))
    }
}

/// Index over a contiguous range of events, with its own value numbering.
#[derive(Debug, Clone, Default)]
pub struct PartialIndex {
    start: usize,
    domains: Vec<Vec<DimValue>>,
    cells: CellIndex,
}

/// Two-phase cube construction. [`CubeBuilder::partial`] may run on
/// disjoint event ranges concurrently; [`CubeBuilder::finish`] merges the
/// parts deterministically regardless of how the events were split.
#[derive(Debug, Clone)]
pub struct CubeBuilder {
    base: Arc<Ocel>,
    dims: Vec<Dimension>,
    mode: Materialization,
}

impl CubeBuilder {
    /// Checks the dimensions against the log.
    pub fn new(base: Arc<Ocel>, dims: Vec<Dimension>, mode: Materialization) -> Result<Self, CubeError> {
        if dims.is_empty() {
            return Err(CubeError::EmptyDimensionList);
        }
        let available: BTreeSet<Dimension> = list_dimensions(&base).into_iter().collect();
        let mut seen = BTreeSet::new();
        for d in &dims {
            if !available.contains(d) {
                return Err(CubeError::UnknownDimension(d.label()));
            }
            if !seen.insert(d) {
                return Err(CubeError::DuplicateDimension(d.label()));
            }
        }
        Ok(Self { base, dims, mode })
    }

    /// The log being indexed.
    pub fn base(&self) -> &Arc<Ocel> {
        &self.base
    }

    /// Indexes the events at positions `range`.
    pub fn partial(&self, range: Range<usize>) -> PartialIndex {
        let n = self.dims.len();
        let mut interners: Vec<BTreeMap<DimValue, u32>> = vec![BTreeMap::new(); n];
        let mut cells = CellIndex::new();
        let mut per_dim: Vec<Vec<u32>> = vec![Vec::new(); n];
        let start = range.start;
        for pos in range {
            let event = &self.base.events()[pos];
            let mut empty = false;
            for (d, dim) in self.dims.iter().enumerate() {
                per_dim[d].clear();
                for v in member_values(&self.base, event, dim, self.mode) {
                    let next = interners[d].len() as u32;
                    per_dim[d].push(*interners[d].entry(v).or_insert(next));
                }
                if per_dim[d].is_empty() {
                    empty = true;
                    break;
                }
            }
            if empty {
                continue;
            }
            for_each_product(&per_dim, |key| {
                cells.entry(key.to_vec()).or_default().push(pos as u32);
            });
        }
        let domains = interners
            .into_iter()
            .map(|m| {
                let mut vals = vec![DimValue::Null; m.len()];
                for (v, id) in m {
                    vals[id as usize] = v;
                }
                vals
            })
            .collect();
        PartialIndex { start, domains, cells }
    }

    /// Merges partial indexes into the final cube.
    pub fn finish(self, mut parts: Vec<PartialIndex>) -> ProcessCube {
        parts.sort_by_key(|p| p.start);
        let n = self.dims.len();
        let domains: Vec<Vec<DimValue>> = (0..n)
            .map(|d| {
                let all: BTreeSet<&DimValue> = parts.iter().flat_map(|p| p.domains[d].iter()).collect();
                all.into_iter().cloned().collect()
            })
            .collect();
        let mut cells = CellIndex::new();
        for part in parts {
            let remap: Vec<Vec<u32>> = (0..n)
                .map(|d| {
                    part.domains[d]
                        .iter()
                        .map(|v| {
                            domains[d]
                                .binary_search(v)
                                .expect("merged domain holds every part value") as u32
                        })
                        .collect()
                })
                .collect();
            for (key, evs) in part.cells {
                let key: Vec<u32> = key.iter().enumerate().map(|(d, &v)| remap[d][v as usize]).collect();
                // Parts cover ascending disjoint ranges, so appending keeps order.
                cells.entry(key).or_default().extend(evs);
            }
        }
        ProcessCube {
            base: self.base,
            dims: self.dims,
            mode: self.mode,
            domains,
            cells,
        }
    }
}

/// Calls `f` for every element of the cartesian product of `sets`.
fn for_each_product(sets: &[Vec<u32>], mut f: impl FnMut(&[u32])) {
    if sets.iter().any(|s| s.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; sets.len()];
    let mut key: Vec<u32> = sets.iter().map(|s| s[0]).collect();
    loop {
        f(&key);
        let mut d = sets.len();
        loop {
            if d == 0 {
                return;
            }
            d -= 1;
            idx[d] += 1;
            if idx[d] < sets[d].len() {
                key[d] = sets[d][idx[d]];
                break;
            }
            idx[d] = 0;
            key[d] = sets[d][0];
        }
    }
}
