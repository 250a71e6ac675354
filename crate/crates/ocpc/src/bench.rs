//! Cube build timing on synthetic workloads.

use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use ocpc_core::{Dimension, Materialization};

use crate::parallel::build_cube;
use crate::synth::{generate, SynthConfig};

/// One timed configuration.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Sample {
    pub events: usize,
    pub event_attrs: usize,
    pub object_attrs: usize,
    pub dims: usize,
    pub cells: usize,
    /// Fastest of the repetitions, in seconds.
    pub seconds: f64,
}

/// Builds the cube over every event attribute and every item attribute of
/// the workload `reps` times and keeps the fastest run.
pub fn measure(cfg: &SynthConfig, mode: Materialization, reps: usize, threads: usize) -> Sample {
    let log = Arc::new(generate(cfg));
    let dims: Vec<Dimension> = (0..cfg.event_attrs)
        .map(|a| Dimension::event(format!("ea{a}")))
        .chain((0..cfg.object_attrs).map(|a| Dimension::object("item", format!("oa{a}"))))
        .collect();
    let mut best = f64::INFINITY;
    let mut cells = 0;
    for _ in 0..reps.max(1) {
        let t = Instant::now();
        let cube = build_cube(log.clone(), dims.clone(), mode, threads).expect("workload dimensions exist");
        best = best.min(t.elapsed().as_secs_f64());
        cells = cube.cell_count();
    }
    Sample {
        events: cfg.events,
        event_attrs: cfg.event_attrs,
        object_attrs: cfg.object_attrs,
        dims: dims.len(),
        cells,
        seconds: best,
    }
}

/// Least-squares line through the points.
#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn linear_fit(points: &[(f64, f64)]) -> Option<LinearFit> {
    let n = points.len() as f64;
    if points.len() < 2 {
        return None;
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Some(LinearFit {
        slope,
        intercept: my - slope * mx,
        r_squared,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let f = linear_fit(&[(1.0, 3.0), (2.0, 5.0), (4.0, 9.0)]).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12);
        assert!((f.intercept - 1.0).abs() < 1e-12);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
        assert!(linear_fit(&[(1.0, 1.0)]).is_none());
    }

    #[test]
    fn sample_counts_dims() {
        let cfg = SynthConfig {
            events: 200,
            event_attrs: 2,
            object_attrs: 3,
            seed: 3,
        };
        let s = measure(&cfg, Materialization::Existence, 1, 1);
        assert_eq!((s.events, s.dims), (200, 5));
        assert!(s.cells > 0);
    }
}
