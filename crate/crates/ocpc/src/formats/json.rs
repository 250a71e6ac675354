use serde_json::{Map, Number, Value};

use ocpc_core::{AttrValue, AttributeName, Event, IssueCode, ObjectInstance, Ocel, OcelError};

use super::{Parsed, RawLog};
use crate::time::{parse_rfc3339, parse_timestamp};

const EVENT_KEYS: [&str; 4] = ["ocel:activity", "ocel:timestamp", "ocel:omap", "ocel:vmap"];
const OBJECT_KEYS: [&str; 2] = ["ocel:type", "ocel:ovmap"];

fn malformed(msg: impl Into<String>) -> OcelError {
    OcelError::MalformedInput(msg.into())
}

fn value_from_json(v: &Value) -> Option<AttrValue> {
    match v {
        Value::Null => None,
        Value::Bool(b) => Some(AttrValue::Bool(*b)),
        Value::Number(n) => Some(match n.as_i64() {
            Some(i) => AttrValue::Int(i),
            None => AttrValue::Float(n.as_f64().unwrap_or(f64::NAN)),
        }),
        Value::String(s) => Some(match parse_rfc3339(s) {
            Some(t) => AttrValue::Timestamp(t),
            None => AttrValue::String(s.clone()),
        }),
        other => Some(AttrValue::String(other.to_string())),
    }
}

pub(crate) fn value_to_json(v: &AttrValue) -> Value {
    match v {
        AttrValue::String(s) => Value::String(s.clone()),
        AttrValue::Int(i) => Value::Number((*i).into()),
        AttrValue::Float(x) => Number::from_f64(*x).map_or(Value::Null, Value::Number),
        AttrValue::Bool(b) => Value::Bool(*b),
        AttrValue::Timestamp(t) => Value::String(t.to_string()),
    }
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>, OcelError> {
    v.as_object()
        .ok_or_else(|| malformed(format!("{what} must be a JSON object")))
}

fn string_list(v: Option<&Value>, what: &str) -> Result<Vec<String>, OcelError> {
    let Some(v) = v else { return Ok(Vec::new()) };
    let arr = v
        .as_array()
        .ok_or_else(|| malformed(format!("{what} must be an array")))?;
    arr.iter()
        .map(|x| {
            x.as_str()
                .map(str::to_owned)
                .ok_or_else(|| malformed(format!("{what} entries must be strings")))
        })
        .collect()
}

fn read_attr_map(
    raw: &mut RawLog,
    map: Option<&Value>,
    location: &str,
    what: &str,
) -> Result<std::collections::BTreeMap<AttributeName, AttrValue>, OcelError> {
    let mut out = std::collections::BTreeMap::new();
    let Some(map) = map else { return Ok(out) };
    for (k, v) in as_object(map, what)? {
        if matches!(v, Value::Array(_) | Value::Object(_)) {
            raw.warn(
                IssueCode::CoercedKey,
                format!("{what} value of {k} is structured; kept as JSON text"),
                location,
            );
        }
        match value_from_json(v) {
            Some(val) => {
                out.insert(AttributeName::from(k.as_str()), val);
            }
            None => raw.warn(IssueCode::CoercedKey, format!("null value of {k} dropped"), location),
        }
    }
    Ok(out)
}

fn coerce_extra(
    raw: &mut RawLog,
    entry: &Map<String, Value>,
    known: &[&str],
    attrs: &mut std::collections::BTreeMap<AttributeName, AttrValue>,
    location: &str,
) {
    for (k, v) in entry {
        if known.contains(&k.as_str()) {
            continue;
        }
        let text = match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        if attrs.contains_key(k.as_str()) {
            raw.warn(
                IssueCode::CoercedKey,
                format!("extra key {k} shadowed by an attribute of the same name"),
                location,
            );
        } else {
            raw.warn(
                IssueCode::CoercedKey,
                format!("extra key {k} kept as a string attribute"),
                location,
            );
            attrs.insert(k.as_str().into(), AttrValue::String(text));
        }
    }
}

/// Parses JSON-OCEL, returning warnings for lossy coercions and
/// completed declarations.
pub fn parse_jsonocel_with_warnings(bytes: &[u8]) -> Result<Parsed, OcelError> {
    let doc: Value = serde_json::from_slice(bytes).map_err(|e| malformed(format!("not JSON: {e}")))?;
    let top = as_object(&doc, "document")?;
    let get = |k: &str| {
        top.get(k)
            .ok_or_else(|| malformed(format!("missing top-level key {k:?}")))
    };
    let global = as_object(get("ocel:global-log")?, "ocel:global-log")?;
    let events = as_object(get("ocel:events")?, "ocel:events")?;
    let objects = as_object(get("ocel:objects")?, "ocel:objects")?;

    let mut raw = RawLog {
        attribute_names: string_list(global.get("ocel:attribute-names"), "ocel:attribute-names")?
            .into_iter()
            .map(Into::into)
            .collect(),
        object_types: string_list(global.get("ocel:object-types"), "ocel:object-types")?
            .into_iter()
            .map(Into::into)
            .collect(),
        ..RawLog::default()
    };

    for (id, entry) in objects {
        let loc = format!("object {id}");
        let entry = as_object(entry, &loc)?;
        let otype = entry
            .get("ocel:type")
            .and_then(Value::as_str)
            .ok_or_else(|| malformed(format!("{loc}: missing string ocel:type")))?;
        let mut ovmap = read_attr_map(&mut raw, entry.get("ocel:ovmap"), &loc, "ocel:ovmap")?;
        coerce_extra(&mut raw, entry, &OBJECT_KEYS, &mut ovmap, &loc);
        raw.objects.push(ObjectInstance {
            id: id.as_str().into(),
            otype: otype.into(),
            ovmap,
        });
    }

    for (id, entry) in events {
        let loc = format!("event {id}");
        let entry = as_object(entry, &loc)?;
        let activity = entry
            .get("ocel:activity")
            .and_then(Value::as_str)
            .ok_or_else(|| malformed(format!("{loc}: missing string ocel:activity")))?;
        let ts_text = entry
            .get("ocel:timestamp")
            .and_then(Value::as_str)
            .ok_or_else(|| malformed(format!("{loc}: missing string ocel:timestamp")))?;
        let timestamp = parse_timestamp(ts_text).ok_or_else(|| OcelError::BadTimestamp {
            value: ts_text.to_owned(),
            location: loc.clone(),
        })?;
        let omap_list = string_list(entry.get("ocel:omap"), &format!("{loc}: ocel:omap"))?;
        let mut vmap = read_attr_map(&mut raw, entry.get("ocel:vmap"), &loc, "ocel:vmap")?;
        coerce_extra(&mut raw, entry, &EVENT_KEYS, &mut vmap, &loc);
        let mut event = Event::new(id.as_str(), activity, timestamp);
        for o in omap_list {
            if !event.omap.insert(o.as_str().into()) {
                raw.warn(
                    IssueCode::DuplicateObjectRef,
                    format!("object {o} listed twice"),
                    loc.clone(),
                );
            }
        }
        event.vmap = vmap;
        raw.events.push(event);
    }
    raw.finish()
}

/// Canonical JSON-OCEL: events in log order, objects by id, fixed key
/// order, two-space indentation.
pub fn export_jsonocel(log: &Ocel) -> Vec<u8> {
    let mut global_event = Map::new();
    global_event.insert("ocel:activity".into(), "__INVALID__".into());
    let mut global_object = Map::new();
    global_object.insert("ocel:type".into(), "__INVALID__".into());
    let mut global = Map::new();
    global.insert(
        "ocel:attribute-names".into(),
        log.attribute_names().iter().map(|n| Value::from(n.as_str())).collect(),
    );
    global.insert(
        "ocel:object-types".into(),
        log.object_types().iter().map(|t| Value::from(t.as_str())).collect(),
    );
    global.insert("ocel:version".into(), "1.0".into());
    global.insert("ocel:ordering".into(), "timestamp".into());

    let mut events = Map::new();
    for e in log.events() {
        let mut entry = Map::new();
        entry.insert("ocel:activity".into(), e.activity.as_str().into());
        entry.insert("ocel:timestamp".into(), e.timestamp.to_string().into());
        entry.insert(
            "ocel:omap".into(),
            e.omap.iter().map(|o| Value::from(o.as_str())).collect(),
        );
        entry.insert(
            "ocel:vmap".into(),
            Value::Object(e.vmap.iter().map(|(k, v)| (k.to_string(), value_to_json(v))).collect()),
        );
        events.insert(e.id.to_string(), Value::Object(entry));
    }
    let mut objects = Map::new();
    for o in log.objects().values() {
        let mut entry = Map::new();
        entry.insert("ocel:type".into(), o.otype.as_str().into());
        entry.insert(
            "ocel:ovmap".into(),
            Value::Object(o.ovmap.iter().map(|(k, v)| (k.to_string(), value_to_json(v))).collect()),
        );
        objects.insert(o.id.to_string(), Value::Object(entry));
    }

    let mut doc = Map::new();
    doc.insert("ocel:global-event".into(), Value::Object(global_event));
    doc.insert("ocel:global-object".into(), Value::Object(global_object));
    doc.insert("ocel:global-log".into(), Value::Object(global));
    doc.insert("ocel:events".into(), Value::Object(events));
    doc.insert("ocel:objects".into(), Value::Object(objects));
    let mut out = serde_json::to_vec_pretty(&Value::Object(doc)).expect("JSON values always serialize");
    out.push(b'\n');
    out
}
