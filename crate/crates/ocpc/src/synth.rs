//! Synthetic logs: an order/item workload with controllable size for
//! timing, and small irregular logs for property and round-trip checks.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use ocpc_core::{AttrValue, Event, ObjectInstance, Ocel, Timestamp};

/// Shape of an order/item workload.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SynthConfig {
    pub events: usize,
    /// Attributes on every event, named `ea0`, `ea1`, ...
    pub event_attrs: usize,
    /// Attributes on every item, named `oa0`, `oa1`, ...
    pub object_attrs: usize,
    pub seed: u64,
}

const ACTIVITIES: [&str; 6] = [
    "place order",
    "confirm order",
    "pick item",
    "pack items",
    "ship",
    "deliver",
];
const EVENT_CARDINALITY: u32 = 4;
const OBJECT_CARDINALITY: u32 = 5;
const EVENTS_PER_ORDER: usize = 6;

/// Generates an order/item log: every event touches one order and one to
/// three of that order's items.
pub fn generate(cfg: &SynthConfig) -> Ocel {
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let orders = cfg.events.div_ceil(EVENTS_PER_ORDER).max(1);
    let mut objects = Vec::with_capacity(orders * 4);
    let mut items_of: Vec<Vec<String>> = Vec::with_capacity(orders);
    for o in 0..orders {
        objects.push(ObjectInstance::new(format!("order{o}"), "order"));
        let n = rng.gen_range(1..=3);
        let mut ids = Vec::with_capacity(n);
        for i in 0..n {
            let id = format!("item{o}_{i}");
            let mut obj = ObjectInstance::new(id.as_str(), "item");
            for a in 0..cfg.object_attrs {
                obj = obj.with_attr(format!("oa{a}"), format!("v{}", rng.gen_range(0..OBJECT_CARDINALITY)));
            }
            objects.push(obj);
            ids.push(id);
        }
        items_of.push(ids);
    }
    let mut events = Vec::with_capacity(cfg.events);
    let mut t = 1_700_000_000i64;
    for e in 0..cfg.events {
        t += rng.gen_range(1..600);
        let o = rng.gen_range(0..orders);
        let k = rng.gen_range(1..=items_of[o].len());
        let items: Vec<&String> = items_of[o].choose_multiple(&mut rng, k).collect();
        let activity = ACTIVITIES[rng.gen_range(0..ACTIVITIES.len())];
        let mut ev = Event::new(format!("e{e}"), activity, Timestamp::from_unix_seconds(t))
            .with_objects(std::iter::once(format!("order{o}")).chain(items.into_iter().cloned()));
        for a in 0..cfg.event_attrs {
            ev = ev.with_attr(format!("ea{a}"), format!("v{}", rng.gen_range(0..EVENT_CARDINALITY)));
        }
        events.push(ev);
    }
    Ocel::from_observed(events, objects).expect("generated logs are valid")
}

/// Bounds for [`random_log`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomLogConfig {
    pub max_events: usize,
    pub max_types: usize,
    pub max_objects: usize,
}

impl Default for RandomLogConfig {
    fn default() -> Self {
        Self {
            max_events: 60,
            max_types: 3,
            max_objects: 12,
        }
    }
}

fn random_value(rng: &mut StdRng) -> AttrValue {
    match rng.gen_range(0..6) {
        0 => AttrValue::Int(rng.gen_range(-3..4)),
        1 => AttrValue::Float(f64::from(rng.gen_range(-8i32..8)) / 4.0),
        2 => AttrValue::Bool(rng.gen()),
        3 => AttrValue::Timestamp(Timestamp::from_unix_nanos(
            1_600_000_000_000_000_000 + rng.gen_range(0..4i64) * 1_500_000_000,
        )),
        _ => {
            let words = ["a", "b", "c d", "x&y", "<q>", "é", "\"z\""];
            AttrValue::String((*words.choose(rng).unwrap()).to_owned())
        }
    }
}

/// Small irregular log: mixed value types, missing attributes, shared and
/// unreferenced objects, events without objects and timestamp ties.
pub fn random_log(seed: u64, cfg: &RandomLogConfig) -> Ocel {
    let mut rng = StdRng::seed_from_u64(seed);
    let types: Vec<String> = (0..rng.gen_range(1..=cfg.max_types.max(1)))
        .map(|t| format!("t{t}"))
        .collect();
    let names = ["p", "q", "r"];
    let objects: Vec<ObjectInstance> = (0..rng.gen_range(0..=cfg.max_objects))
        .map(|i| {
            let mut o = ObjectInstance::new(format!("o{i}"), types.choose(&mut rng).unwrap().as_str());
            for n in names {
                if rng.gen_bool(0.6) {
                    o = o.with_attr(n, random_value(&mut rng));
                }
            }
            o
        })
        .collect();
    let activities = ["a", "b", "c", "d"];
    let mut t = 1_600_000_000i64;
    let events = (0..rng.gen_range(0..=cfg.max_events))
        .map(|i| {
            if rng.gen_bool(0.8) {
                t += rng.gen_range(0..90);
            }
            let mut e = Event::new(
                format!("e{i}"),
                *activities.choose(&mut rng).unwrap(),
                Timestamp::from_unix_nanos(t * 1_000_000_000 + rng.gen_range(0..3) * 250_000_000),
            );
            for n in ["channel", "region"] {
                if rng.gen_bool(0.7) {
                    e = e.with_attr(n, random_value(&mut rng));
                }
            }
            if !objects.is_empty() {
                let k = rng.gen_range(0..=3.min(objects.len()));
                e = e.with_objects(objects.choose_multiple(&mut rng, k).map(|o| o.id.clone()));
            }
            e
        })
        .collect();
    Ocel::from_observed(events, objects).expect("generated logs are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn workload_shape() {
        let log = generate(&SynthConfig {
            events: 100,
            event_attrs: 4,
            object_attrs: 4,
            seed: 1,
        });
        assert_eq!(log.len(), 100);
        assert_eq!(ocpc_core::list_dimensions(&log).len(), 8);
        assert!(ocpc_core::validate(&log).is_valid());
        assert_eq!(
            log,
            generate(&SynthConfig {
                events: 100,
                event_attrs: 4,
                object_attrs: 4,
                seed: 1
            })
        );
    }

    #[test]
    fn random_logs_are_valid() {
        for seed in 0..50 {
            assert!(ocpc_core::validate(&random_log(seed, &RandomLogConfig::default())).is_valid());
        }
    }
}
