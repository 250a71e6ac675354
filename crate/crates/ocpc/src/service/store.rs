use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use ocpc_core::{Ocel, ProcessCube};

/// A stored cube and the handle of the log it was built on.
#[derive(Debug, Clone)]
pub struct StoredCube {
    pub log: String,
    pub cube: Arc<ProcessCube>,
}

/// Session state: logs and cubes by handle.
#[derive(Debug, Default)]
pub struct Store {
    next: AtomicU64,
    logs: Mutex<HashMap<String, Arc<Ocel>>>,
    cubes: Mutex<HashMap<String, StoredCube>>,
}

impl Store {
    fn mint(&self, prefix: &str) -> String {
        format!("{prefix}-{}", self.next.fetch_add(1, Ordering::Relaxed) + 1)
    }

    pub fn insert_log(&self, log: Arc<Ocel>) -> String {
        let h = self.mint("log");
        self.logs.lock().expect("store lock").insert(h.clone(), log);
        h
    }

    pub fn log(&self, handle: &str) -> Option<Arc<Ocel>> {
        self.logs.lock().expect("store lock").get(handle).cloned()
    }

    pub fn insert_cube(&self, log: String, cube: Arc<ProcessCube>) -> String {
        let h = self.mint("cube");
        self.cubes
            .lock()
            .expect("store lock")
            .insert(h.clone(), StoredCube { log, cube });
        h
    }

    pub fn cube(&self, handle: &str) -> Option<StoredCube> {
        self.cubes.lock().expect("store lock").get(handle).cloned()
    }
}
