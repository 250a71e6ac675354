use std::collections::BTreeMap;
use std::fmt::Write as _;

use roxmltree::{Document, Node};

use ocpc_core::{AttrValue, AttributeName, Event, IssueCode, ObjectInstance, Ocel, OcelError};

use super::{Parsed, RawLog};
use crate::time::parse_timestamp;

fn malformed(msg: impl Into<String>) -> OcelError {
    OcelError::MalformedInput(msg.into())
}

fn elements<'a, 'i>(node: Node<'a, 'i>) -> impl Iterator<Item = Node<'a, 'i>> {
    node.children().filter(|n| n.is_element())
}

fn key<'a>(node: &Node<'a, '_>) -> Option<&'a str> {
    node.attribute("key")
}

fn typed_value(node: &Node<'_, '_>, location: &str) -> Result<AttrValue, OcelError> {
    let tag = node.tag_name().name();
    let text = node
        .attribute("value")
        .ok_or_else(|| malformed(format!("{location}: <{tag}> without value attribute")))?;
    let bad = || malformed(format!("{location}: {text:?} is not a valid {tag}"));
    Ok(match tag {
        "string" => AttrValue::String(text.to_owned()),
        "int" => AttrValue::Int(text.trim().parse().map_err(|_| bad())?),
        "float" => AttrValue::Float(text.trim().parse().map_err(|_| bad())?),
        "boolean" => match text.trim().to_ascii_lowercase().as_str() {
            "true" => AttrValue::Bool(true),
            "false" => AttrValue::Bool(false),
            _ => return Err(bad()),
        },
        "date" => AttrValue::Timestamp(parse_timestamp(text).ok_or_else(|| OcelError::BadTimestamp {
            value: text.to_owned(),
            location: location.to_owned(),
        })?),
        other => return Err(malformed(format!("{location}: unknown value element <{other}>"))),
    })
}

fn read_attr_list(node: &Node<'_, '_>, location: &str) -> Result<BTreeMap<AttributeName, AttrValue>, OcelError> {
    let mut out = BTreeMap::new();
    for child in elements(*node) {
        let k = key(&child).ok_or_else(|| malformed(format!("{location}: attribute without key")))?;
        out.insert(AttributeName::from(k), typed_value(&child, location)?);
    }
    Ok(out)
}

fn read_globals(raw: &mut RawLog, global: &Node<'_, '_>) {
    for list in elements(*global).filter(|n| n.has_tag_name("list")) {
        let values = elements(list).filter_map(|n| n.attribute("value"));
        match key(&list) {
            Some("attribute-names") => raw.attribute_names.extend(values.map(Into::into)),
            Some("object-types") => raw.object_types.extend(values.map(Into::into)),
            _ => {}
        }
    }
}

fn coerce_extra(
    raw: &mut RawLog,
    k: &str,
    node: &Node<'_, '_>,
    attrs: &mut BTreeMap<AttributeName, AttrValue>,
    loc: &str,
) {
    let text = node.attribute("value").unwrap_or_default().to_owned();
    if attrs.contains_key(k) {
        raw.warn(
            IssueCode::CoercedKey,
            format!("extra key {k} shadowed by an attribute of the same name"),
            loc,
        );
    } else {
        raw.warn(
            IssueCode::CoercedKey,
            format!("extra key {k} kept as a string attribute"),
            loc,
        );
        attrs.insert(k.into(), AttrValue::String(text));
    }
}

fn read_event(raw: &mut RawLog, node: &Node<'_, '_>, index: usize) -> Result<(), OcelError> {
    let mut id = None;
    let mut activity = None;
    let mut timestamp = None;
    let mut omap = Vec::new();
    let mut vmap = BTreeMap::new();
    let mut extra = Vec::new();
    let pos = format!("event #{index}");
    for child in elements(*node) {
        match key(&child) {
            Some("id") => id = child.attribute("value"),
            Some("activity") => activity = child.attribute("value"),
            Some("timestamp") => timestamp = child.attribute("value"),
            Some("omap") => omap.extend(elements(child).filter_map(|n| n.attribute("value"))),
            Some("vmap") => vmap = read_attr_list(&child, &pos)?,
            Some(k) => extra.push((k, child)),
            None => return Err(malformed(format!("{pos}: child element without key"))),
        }
    }
    let id = id.ok_or_else(|| malformed(format!("{pos}: missing id")))?;
    let loc = format!("event {id}");
    let activity = activity.ok_or_else(|| malformed(format!("{loc}: missing activity")))?;
    let ts_text = timestamp.ok_or_else(|| malformed(format!("{loc}: missing timestamp")))?;
    let ts = parse_timestamp(ts_text).ok_or_else(|| OcelError::BadTimestamp {
        value: ts_text.to_owned(),
        location: loc.clone(),
    })?;
    for (k, child) in extra {
        coerce_extra(raw, k, &child, &mut vmap, &loc);
    }
    let mut event = Event::new(id, activity, ts);
    for o in omap {
        if !event.omap.insert(o.into()) {
            raw.warn(
                IssueCode::DuplicateObjectRef,
                format!("object {o} listed twice"),
                loc.clone(),
            );
        }
    }
    event.vmap = vmap;
    raw.events.push(event);
    Ok(())
}

fn read_object(raw: &mut RawLog, node: &Node<'_, '_>, index: usize) -> Result<(), OcelError> {
    let mut id = None;
    let mut otype = None;
    let mut ovmap = BTreeMap::new();
    let mut extra = Vec::new();
    let pos = format!("object #{index}");
    for child in elements(*node) {
        match key(&child) {
            Some("id") => id = child.attribute("value"),
            Some("type") => otype = child.attribute("value"),
            Some("ovmap") => ovmap = read_attr_list(&child, &pos)?,
            Some(k) => extra.push((k, child)),
            None => return Err(malformed(format!("{pos}: child element without key"))),
        }
    }
    let id = id.ok_or_else(|| malformed(format!("{pos}: missing id")))?;
    let loc = format!("object {id}");
    let otype = otype.ok_or_else(|| malformed(format!("{loc}: missing type")))?;
    for (k, child) in extra {
        coerce_extra(raw, k, &child, &mut ovmap, &loc);
    }
    raw.objects.push(ObjectInstance {
        id: id.into(),
        otype: otype.into(),
        ovmap,
    });
    Ok(())
}

/// Parses XML-OCEL (`<log>` with `<global>`, `<events>` and `<objects>`).
pub fn parse_xmlocel_with_warnings(bytes: &[u8]) -> Result<Parsed, OcelError> {
    let text = std::str::from_utf8(bytes).map_err(|e| malformed(format!("not UTF-8: {e}")))?;
    let doc = Document::parse(text).map_err(|e| malformed(format!("not XML: {e}")))?;
    let root = doc.root_element();
    if !root.has_tag_name("log") {
        return Err(malformed(format!(
            "root element is <{}>, expected <log>",
            root.tag_name().name()
        )));
    }
    let mut raw = RawLog::default();
    for global in elements(root).filter(|n| n.has_tag_name("global")) {
        read_globals(&mut raw, &global);
    }
    let section = |name: &str| elements(root).find(|n| n.has_tag_name(name));
    let events = section("events").ok_or_else(|| malformed("missing <events>"))?;
    let objects = section("objects").ok_or_else(|| malformed("missing <objects>"))?;
    for (i, o) in elements(objects).enumerate() {
        read_object(&mut raw, &o, i)?;
    }
    for (i, e) in elements(events).enumerate() {
        read_event(&mut raw, &e, i)?;
    }
    raw.finish()
}

fn escape_into(out: &mut String, s: &str) -> Result<(), OcelError> {
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            // Literal whitespace in attribute values is normalized by XML readers.
            '\t' | '\n' | '\r' => {
                let _ = write!(out, "&#{};", c as u32);
            }
            c if (c as u32) < 0x20 || c == '\u{FFFE}' || c == '\u{FFFF}' => {
                return Err(malformed(format!(
                    "character U+{:04X} cannot be written to XML",
                    c as u32
                )));
            }
            c => out.push(c),
        }
    }
    Ok(())
}

fn element(out: &mut String, indent: usize, tag: &str, key: &str, value: &str) -> Result<(), OcelError> {
    out.push_str(&"  ".repeat(indent));
    let _ = write!(out, "<{tag} key=\"");
    escape_into(out, key)?;
    out.push_str("\" value=\"");
    escape_into(out, value)?;
    out.push_str("\"/>\n");
    Ok(())
}

fn attr_element(out: &mut String, indent: usize, k: &str, v: &AttrValue) -> Result<(), OcelError> {
    element(out, indent, v.kind(), k, &v.to_string())
}

/// Canonical XML-OCEL. Fails only for strings holding characters XML 1.0
/// cannot represent.
pub fn export_xmlocel(log: &Ocel) -> Result<Vec<u8>, OcelError> {
    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<log>\n");
    out.push_str("  <global scope=\"event\">\n");
    element(&mut out, 2, "string", "activity", "__INVALID__")?;
    out.push_str("  </global>\n  <global scope=\"object\">\n");
    element(&mut out, 2, "string", "type", "__INVALID__")?;
    out.push_str("  </global>\n  <global scope=\"log\">\n    <list key=\"attribute-names\">\n");
    for n in log.attribute_names() {
        element(&mut out, 3, "string", "attribute-name", n.as_str())?;
    }
    out.push_str("    </list>\n    <list key=\"object-types\">\n");
    for t in log.object_types() {
        element(&mut out, 3, "string", "object-type", t.as_str())?;
    }
    out.push_str("    </list>\n");
    element(&mut out, 2, "string", "version", "1.0")?;
    element(&mut out, 2, "string", "ordering", "timestamp")?;
    out.push_str("  </global>\n  <events>\n");
    for e in log.events() {
        out.push_str("    <event>\n");
        element(&mut out, 3, "string", "id", e.id.as_str())?;
        element(&mut out, 3, "string", "activity", e.activity.as_str())?;
        element(&mut out, 3, "date", "timestamp", &e.timestamp.to_string())?;
        out.push_str("      <list key=\"omap\">\n");
        for o in &e.omap {
            element(&mut out, 4, "string", "object-id", o.as_str())?;
        }
        out.push_str("      </list>\n      <list key=\"vmap\">\n");
        for (k, v) in &e.vmap {
            attr_element(&mut out, 4, k.as_str(), v)?;
        }
        out.push_str("      </list>\n    </event>\n");
    }
    out.push_str("  </events>\n  <objects>\n");
    for o in log.objects().values() {
        out.push_str("    <object>\n");
        element(&mut out, 3, "string", "id", o.id.as_str())?;
        element(&mut out, 3, "string", "type", o.otype.as_str())?;
        out.push_str("      <list key=\"ovmap\">\n");
        for (k, v) in &o.ovmap {
            attr_element(&mut out, 4, k.as_str(), v)?;
        }
        out.push_str("      </list>\n    </object>\n");
    }
    out.push_str("  </objects>\n</log>\n");
    Ok(out.into_bytes())
}
