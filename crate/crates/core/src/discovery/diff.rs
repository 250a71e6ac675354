use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::dfg::{EdgeStats, Ocdfg};
use crate::ids::{Activity, ObjectType};

/// Which sides of a comparison contain an entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Presence {
    /// Only the left model.
    LeftOnly,
    /// Only the right model.
    RightOnly,
    /// Both models.
    Both,
}

impl Presence {
    fn of<T>(left: &Option<T>, right: &Option<T>) -> Self {
        match (left.is_some(), right.is_some()) {
            (true, true) => Presence::Both,
            (true, false) => Presence::LeftOnly,
            (false, true) => Presence::RightOnly,
            (false, false) => unreachable!("diff entries come from the union of both sides"),
        }
    }

    fn swapped(self) -> Self {
        match self {
            Presence::LeftOnly => Presence::RightOnly,
            Presence::RightOnly => Presence::LeftOnly,
            Presence::Both => Presence::Both,
        }
    }

    /// Lower-case name.
    pub fn as_str(self) -> &'static str {
        match self {
            Presence::LeftOnly => "left-only",
            Presence::RightOnly => "right-only",
            Presence::Both => "both",
        }
    }
}

/// Node frequencies of one activity on both sides. `None` means absent,
/// which is different from `Some(0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ActivityDiff {
    /// Object type.
    pub otype: ObjectType,
    /// Activity.
    pub activity: Activity,
    /// Left frequency.
    pub left: Option<u64>,
    /// Right frequency.
    pub right: Option<u64>,
    /// Presence marker.
    pub presence: Presence,
}

impl ActivityDiff {
    /// `right - left`, reading an absent side as zero.
    pub fn frequency_delta(&self) -> i64 {
        self.right.unwrap_or(0) as i64 - self.left.unwrap_or(0) as i64
    }
}

/// One side of an edge comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeSide {
    /// Edge frequency.
    pub frequency: u64,
    /// Mean duration in seconds.
    pub mean_duration: f64,
    /// Median duration in seconds.
    pub median_duration: f64,
}

impl From<&EdgeStats> for EdgeSide {
    fn from(s: &EdgeStats) -> Self {
        Self {
            frequency: s.frequency,
            mean_duration: s.mean,
            median_duration: s.median,
        }
    }
}

/// An edge on both sides.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeDiff {
    /// Object type.
    pub otype: ObjectType,
    /// Predecessor activity.
    pub source: Activity,
    /// Successor activity.
    pub target: Activity,
    /// Left statistics.
    pub left: Option<EdgeSide>,
    /// Right statistics.
    pub right: Option<EdgeSide>,
    /// Presence marker.
    pub presence: Presence,
}

impl EdgeDiff {
    /// `right - left` frequency, reading an absent side as zero.
    pub fn frequency_delta(&self) -> i64 {
        let f = |s: &Option<EdgeSide>| s.as_ref().map_or(0, |s| s.frequency) as i64;
        f(&self.right) - f(&self.left)
    }

    /// `right - left` mean duration when both sides have the edge.
    pub fn mean_duration_delta(&self) -> Option<f64> {
        Some(self.right.as_ref()?.mean_duration - self.left.as_ref()?.mean_duration)
    }
}

/// Side-by-side comparison of two OC-DFGs.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ModelDiff {
    /// One entry per `(type, activity)` in either model, ordered by type then activity.
    pub activities: Vec<ActivityDiff>,
    /// One entry per `(type, edge)` in either model, ordered by type then edge.
    pub edges: Vec<EdgeDiff>,
}

impl ModelDiff {
    /// Total number of entries.
    pub fn len(&self) -> usize {
        self.activities.len() + self.edges.len()
    }

    /// True when both models were empty.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The same diff with left and right exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            activities: self
                .activities
                .iter()
                .map(|a| ActivityDiff {
                    left: a.right,
                    right: a.left,
                    presence: a.presence.swapped(),
                    ..a.clone()
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDiff {
                    left: e.right.clone(),
                    right: e.left.clone(),
                    presence: e.presence.swapped(),
                    ..e.clone()
                })
                .collect(),
        }
    }
}

/// Lines up the nodes and edges of two models.
pub fn compare_models(left: &Ocdfg, right: &Ocdfg) -> ModelDiff {
    let types: BTreeSet<&ObjectType> = left.types.keys().chain(right.types.keys()).collect();
    let mut diff = ModelDiff::default();
    for t in types {
        let l = left.types.get(t);
        let r = right.types.get(t);
        let acts: BTreeSet<&Activity> = l
            .into_iter()
            .flat_map(|g| g.nodes.keys())
            .chain(r.into_iter().flat_map(|g| g.nodes.keys()))
            .collect();
        for a in acts {
            let lf = l.and_then(|g| g.nodes.get(a)).map(|n| n.frequency);
            let rf = r.and_then(|g| g.nodes.get(a)).map(|n| n.frequency);
            diff.activities.push(ActivityDiff {
                otype: t.clone(),
                activity: a.clone(),
                presence: Presence::of(&lf, &rf),
                left: lf,
                right: rf,
            });
        }
        let edges: BTreeSet<&(Activity, Activity)> = l
            .into_iter()
            .flat_map(|g| g.edges.keys())
            .chain(r.into_iter().flat_map(|g| g.edges.keys()))
            .collect();
        for key in edges {
            let ls = l.and_then(|g| g.edges.get(key)).map(EdgeSide::from);
            let rs = r.and_then(|g| g.edges.get(key)).map(EdgeSide::from);
            diff.edges.push(EdgeDiff {
                otype: t.clone(),
                source: key.0.clone(),
                target: key.1.clone(),
                presence: Presence::of(&ls, &rs),
                left: ls,
                right: rs,
            });
        }
    }
    diff
}
