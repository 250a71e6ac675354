#![allow(dead_code)]

use std::path::PathBuf;

use ocpc_core::{Event, ObjectInstance, Ocel, Timestamp};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn fixture_bytes(name: &str) -> Vec<u8> {
    std::fs::read(fixture(name)).unwrap()
}

fn at(h: u32, mi: u32) -> Timestamp {
    Timestamp::from_utc(2024, 1, 1, h, mi, 0).unwrap()
}

/// The four-event order/item log, built directly.
pub fn fix1() -> Ocel {
    Ocel::new(
        vec![
            Event::new("e1", "place", at(10, 0))
                .with_attr("channel", "web")
                .with_objects(["c1", "o1", "o2"]),
            Event::new("e2", "pick", at(10, 5))
                .with_attr("channel", "web")
                .with_objects(["o1"]),
            Event::new("e3", "pick", at(10, 10))
                .with_attr("channel", "phone")
                .with_objects(["o2"]),
            Event::new("e4", "ship", at(10, 20))
                .with_attr("channel", "web")
                .with_objects(["c1", "o1", "o2"]),
        ],
        vec![
            ObjectInstance::new("o1", "item").with_attr("product", "X"),
            ObjectInstance::new("o2", "item").with_attr("product", "Y"),
            ObjectInstance::new("c1", "order"),
        ],
        ["channel".into(), "product".into()].into_iter().collect(),
        ["item".into(), "order".into()].into_iter().collect(),
    )
    .unwrap()
}

pub fn ids(log: &Ocel) -> Vec<&str> {
    log.events().iter().map(|e| e.id.as_str()).collect()
}

pub fn object_ids(log: &Ocel) -> Vec<&str> {
    log.objects().keys().map(|o| o.as_str()).collect()
}
