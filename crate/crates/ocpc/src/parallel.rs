//! Multi-threaded cube construction over disjoint event ranges.

use std::sync::Arc;
use std::thread;

use ocpc_core::cube::CubeBuilder;
use ocpc_core::{CubeError, Dimension, Materialization, Ocel, ProcessCube};

/// Events per chunk below which extra threads are not worth spawning.
const MIN_CHUNK: usize = 2048;

/// Worker count from the machine's available parallelism.
pub fn default_threads() -> usize {
    thread::available_parallelism().map_or(1, |n| n.get())
}

/// Builds a cube using up to `threads` workers. The result is identical to
/// [`ProcessCube::build`] whatever the thread count.
pub fn build_cube(
    base: Arc<Ocel>,
    dims: Vec<Dimension>,
    mode: Materialization,
    threads: usize,
) -> Result<ProcessCube, CubeError> {
    let builder = CubeBuilder::new(base, dims, mode)?;
    let n = builder.base().len();
    let workers = threads.max(1).min(n.div_ceil(MIN_CHUNK)).max(1);
    let chunk = n.div_ceil(workers).max(1);
    let parts = if workers == 1 {
        vec![builder.partial(0..n)]
    } else {
        thread::scope(|s| {
            let handles: Vec<_> = (0..n)
                .step_by(chunk)
                .map(|start| {
                    let b = &builder;
                    s.spawn(move || b.partial(start..(start + chunk).min(n)))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("cube worker panicked"))
                .collect()
        })
    };
    Ok(builder.finish(parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::{generate, SynthConfig};

    #[test]
    fn thread_count_does_not_change_the_cube() {
        let log = Arc::new(generate(&SynthConfig {
            events: 9000,
            event_attrs: 2,
            object_attrs: 2,
            seed: 7,
        }));
        let dims = ocpc_core::list_dimensions(&log);
        for mode in [Materialization::Existence, Materialization::All] {
            let serial = ProcessCube::build(log.clone(), dims.clone(), mode).unwrap();
            for t in [2, 3, 8] {
                assert_eq!(build_cube(log.clone(), dims.clone(), mode, t).unwrap(), serial);
            }
        }
    }
}
