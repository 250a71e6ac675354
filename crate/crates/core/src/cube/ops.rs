use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{CellIndex, DimValue, Dimension, ProcessCube};
use crate::error::CubeError;

/// One axis of a count grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GridAxis {
    /// A cube dimension.
    Dim(Dimension),
    /// A single synthetic "ALL" bucket.
    All,
}

/// Row or column header of a [`CountGrid`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum AxisLabel {
    /// The synthetic "ALL" bucket.
    All,
    /// A domain value.
    Value(DimValue),
}

impl fmt::Display for AxisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxisLabel::All => f.write_str("ALL"),
            AxisLabel::Value(v) => write!(f, "{v}"),
        }
    }
}

/// Event counts for every (row, column) value pair of two axes,
/// marginalized over the cube's remaining dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountGrid {
    /// Row axis.
    pub row_axis: GridAxis,
    /// Column axis.
    pub col_axis: GridAxis,
    /// Row headers in domain order.
    pub rows: Vec<AxisLabel>,
    /// Column headers in domain order.
    pub cols: Vec<AxisLabel>,
    /// `counts[i][j]` distinct events with row value `rows[i]` and column value `cols[j]`.
    pub counts: Vec<Vec<u64>>,
}

impl CountGrid {
    /// Count at the given headers, if both exist.
    pub fn get(&self, row: &AxisLabel, col: &AxisLabel) -> Option<u64> {
        let i = self.rows.iter().position(|r| r == row)?;
        let j = self.cols.iter().position(|c| c == col)?;
        Some(self.counts[i][j])
    }
}

fn merge_sorted(into: &mut Vec<u32>, other: &[u32]) {
    if into.is_empty() {
        into.extend_from_slice(other);
        return;
    }
    let mut out = Vec::with_capacity(into.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < into.len() && j < other.len() {
        match into[i].cmp(&other[j]) {
            core::cmp::Ordering::Less => {
                out.push(into[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(other[j]);
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                out.push(into[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&into[i..]);
    out.extend_from_slice(&other[j..]);
    *into = out;
}

impl ProcessCube {
    /// Fixes `dim` to `value` and removes the dimension.
    ///
    /// An event is kept if it was in some cell with `dim = value`; its cells
    /// in the remaining dimensions are unchanged. Slicing the last dimension
    /// leaves a zero-dimensional cube whose root cell (the empty
    /// [`super::Coordinate`]) holds the retained events.
    pub fn slice(&self, dim: &Dimension, value: &DimValue) -> Result<ProcessCube, CubeError> {
        let p = self.require_position(dim)?;
        let vid = self.value_id(p, value)?;
        let mut cells = CellIndex::new();
        if let Some(vid) = vid {
            for (key, evs) in &self.cells {
                if key[p] != vid {
                    continue;
                }
                let mut rest = key.clone();
                rest.remove(p);
                merge_sorted(cells.entry(rest).or_default(), evs);
            }
        }
        let mut dims = self.dims.clone();
        dims.remove(p);
        let mut domains = self.domains.clone();
        domains.remove(p);
        Ok(ProcessCube {
            base: self.base.clone(),
            dims,
            mode: self.mode,
            domains,
            cells,
        })
    }

    /// Restricts selected dimensions to value subsets, keeping every
    /// dimension. Dimensions absent from `selection` are unrestricted, and
    /// the domains of selected ones shrink to the selected values.
    pub fn dice(&self, selection: &BTreeMap<Dimension, BTreeSet<DimValue>>) -> Result<ProcessCube, CubeError> {
        let mut allowed: Vec<Option<Vec<Option<u32>>>> = vec![None; self.dims.len()];
        for (dim, values) in selection {
            let p = self.require_position(dim)?;
            if values.is_empty() {
                return Err(CubeError::EmptySelection(dim.label()));
            }
            let mut keep = vec![false; self.domains[p].len()];
            for v in values {
                if let Some(id) = self.value_id(p, v)? {
                    keep[id as usize] = true;
                }
            }
            // old id -> new id
            let mut next = 0u32;
            let remap = keep
                .iter()
                .map(|&k| {
                    k.then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect();
            allowed[p] = Some(remap);
        }

        let domains = self
            .domains
            .iter()
            .zip(&allowed)
            .map(|(dom, remap)| match remap {
                None => dom.clone(),
                Some(r) => dom
                    .iter()
                    .zip(r)
                    .filter(|(_, id)| id.is_some())
                    .map(|(v, _)| v.clone())
                    .collect(),
            })
            .collect();

        let cells = self
            .cells
            .iter()
            .filter_map(|(key, evs)| {
                let mut new_key = Vec::with_capacity(key.len());
                for (d, &v) in key.iter().enumerate() {
                    match &allowed[d] {
                        None => new_key.push(v),
                        Some(r) => new_key.push(r[v as usize]?),
                    }
                }
                Some((new_key, evs.clone()))
            })
            .collect();

        Ok(ProcessCube {
            base: self.base.clone(),
            dims: self.dims.clone(),
            mode: self.mode,
            domains,
            cells,
        })
    }

    /// Event counts for `rows` × `cols`, marginalizing other dimensions.
    /// An event that sits in several cells counts once per (row, column) pair.
    pub fn grid_view(&self, rows: &GridAxis, cols: &GridAxis) -> Result<CountGrid, CubeError> {
        if let (GridAxis::Dim(r), GridAxis::Dim(c)) = (rows, cols) {
            if r == c {
                return Err(CubeError::SameDimensionTwice(r.label()));
            }
        }
        let axis = |a: &GridAxis| -> Result<(Option<usize>, Vec<AxisLabel>), CubeError> {
            match a {
                GridAxis::All => Ok((None, vec![AxisLabel::All])),
                GridAxis::Dim(d) => {
                    let p = self.require_position(d)?;
                    let labels = self.domains[p].iter().cloned().map(AxisLabel::Value).collect();
                    Ok((Some(p), labels))
                }
            }
        };
        let (rp, row_labels) = axis(rows)?;
        let (cp, col_labels) = axis(cols)?;

        let mut buckets: BTreeMap<(u32, u32), BTreeSet<u32>> = BTreeMap::new();
        for (key, evs) in &self.cells {
            let i = rp.map_or(0, |p| key[p]);
            let j = cp.map_or(0, |p| key[p]);
            buckets.entry((i, j)).or_default().extend(evs.iter().copied());
        }
        let mut counts = vec![vec![0u64; col_labels.len()]; row_labels.len()];
        for ((i, j), evs) in buckets {
            counts[i as usize][j as usize] = evs.len() as u64;
        }
        Ok(CountGrid {
            row_axis: rows.clone(),
            col_axis: cols.clone(),
            rows: row_labels,
            cols: col_labels,
            counts,
        })
    }
}
