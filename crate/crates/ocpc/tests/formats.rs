mod common;

use std::collections::BTreeSet;

use common::{fix1, fixture_bytes, ids, object_ids};
use ocpc::synth::{random_log, RandomLogConfig};
use ocpc::{export, export_jsonocel, export_xmlocel, parse, parse_jsonocel, parse_xmlocel, Format};
use ocpc_core::{AttrValue, IssueCode, ObjectType, OcelError};
use proptest::prelude::*;

#[test]
fn json_fixture_parses_to_the_reference_log() {
    let log = parse_jsonocel(&fixture_bytes("fix1.jsonocel")).unwrap();
    assert_eq!(log, fix1());
    assert_eq!(log.len(), 4);
    assert_eq!(log.objects().len(), 3);
    let types: BTreeSet<ObjectType> = ["item".into(), "order".into()].into_iter().collect();
    assert_eq!(log.object_types(), &types);
    assert_eq!(ids(&log), ["e1", "e2", "e3", "e4"]);
}

#[test]
fn xml_fixture_equals_json_fixture() {
    let xml = parse_xmlocel(&fixture_bytes("fix1.xmlocel")).unwrap();
    let json = parse_jsonocel(&fixture_bytes("fix1.jsonocel")).unwrap();
    assert_eq!(xml, json);
}

#[test]
fn fixture_is_valid() {
    assert!(ocpc_core::validate(&fix1()).errors.is_empty());
}

#[test]
fn empty_events_keep_objects() {
    let doc = br#"{"ocel:global-log": {"ocel:attribute-names": [], "ocel:object-types": ["item"]},
        "ocel:events": {},
        "ocel:objects": {"o1": {"ocel:type": "item", "ocel:ovmap": {}}}}"#;
    let log = parse_jsonocel(doc).unwrap();
    assert_eq!(log.len(), 0);
    assert_eq!(object_ids(&log), ["o1"]);

    let xml = br#"<log><global scope="log"/><events/><objects>
        <object><string key="id" value="o1"/><string key="type" value="item"/></object></objects></log>"#;
    let log = parse_xmlocel(xml).unwrap();
    assert_eq!((log.len(), log.objects().len()), (0, 1));
}

#[test]
fn dangling_reference_names_the_event() {
    let text = String::from_utf8(fixture_bytes("fix1.jsonocel")).unwrap();
    let text = text.replace(r#""ocel:omap": ["o1"]"#, r#""ocel:omap": ["o1", "zz"]"#);
    match parse_jsonocel(text.as_bytes()) {
        Err(OcelError::DanglingObjectRef { event, object }) => {
            assert_eq!((event.as_str(), object.as_str()), ("e2", "zz"));
        }
        other => panic!("expected a dangling reference, got {other:?}"),
    }
    let xml = String::from_utf8(fixture_bytes("fix1.xmlocel")).unwrap();
    let needle = "<string key=\"id\" value=\"e2\"/>";
    let at = xml.find(needle).unwrap();
    let omap = at + xml[at..].find("<list key=\"omap\">").unwrap() + "<list key=\"omap\">".len();
    let xml = format!(
        "{}<string key=\"object-id\" value=\"zz\"/>{}",
        &xml[..omap],
        &xml[omap..]
    );
    assert!(
        matches!(parse_xmlocel(xml.as_bytes()), Err(OcelError::DanglingObjectRef { ref event, .. }) if event.as_str() == "e2")
    );
}

#[test]
fn malformed_inputs() {
    assert!(matches!(parse_jsonocel(b"not json"), Err(OcelError::MalformedInput(_))));
    assert!(matches!(
        parse_jsonocel(br#"{"ocel:events": {}}"#),
        Err(OcelError::MalformedInput(_))
    ));
    assert!(matches!(
        parse_xmlocel(b"<log><events>"),
        Err(OcelError::MalformedInput(_))
    ));
    let xml = String::from_utf8(fixture_bytes("fix1.xmlocel")).unwrap();
    let xml = xml.replace("<date key=\"timestamp\" value=\"2024-01-01T10:05:00Z\"/>", "");
    assert!(matches!(
        parse_xmlocel(xml.as_bytes()),
        Err(OcelError::MalformedInput(_))
    ));
}

#[test]
fn bad_timestamp() {
    let text = String::from_utf8(fixture_bytes("fix1.jsonocel")).unwrap();
    let text = text.replace("2024-01-01T10:05:00Z", "yesterday");
    assert!(matches!(
        parse_jsonocel(text.as_bytes()),
        Err(OcelError::BadTimestamp { .. })
    ));
}

#[test]
fn extra_keys_become_string_attributes_with_warnings() {
    let doc = br#"{"ocel:global-log": {"ocel:attribute-names": [], "ocel:object-types": ["item"]},
        "ocel:events": {"e1": {"ocel:activity": "a", "ocel:timestamp": "2024-01-01T00:00:00Z",
            "ocel:omap": ["o1"], "ocel:vmap": {}, "source": 7}},
        "ocel:objects": {"o1": {"ocel:type": "item", "ocel:ovmap": {}, "color": "red"}}}"#;
    let parsed = parse(doc, Format::Json).unwrap();
    let e = &parsed.log.events()[0];
    assert_eq!(e.vmap.get("source"), Some(&AttrValue::String("7".into())));
    let o = parsed.log.objects().values().next().unwrap();
    assert_eq!(o.ovmap.get("color"), Some(&AttrValue::String("red".into())));
    assert!(parsed.warnings.iter().any(|w| w.code == IssueCode::CoercedKey));
    assert!(ocpc_core::validate(&parsed.log).is_valid());
}

#[test]
fn invalid_logs_carry_the_report() {
    let doc = br#"{"ocel:global-log": {"ocel:attribute-names": [], "ocel:object-types": []},
        "ocel:events": {"": {"ocel:activity": "a", "ocel:timestamp": "2024-01-01T00:00:00Z", "ocel:omap": [], "ocel:vmap": {}}},
        "ocel:objects": {}}"#;
    match parse_jsonocel(doc) {
        Err(OcelError::Invalid(report)) => assert!(report.has_error(IssueCode::EmptyId)),
        other => panic!("expected an invalid log, got {other:?}"),
    }
}

#[test]
fn fixture_round_trips_in_both_formats() {
    let log = fix1();
    assert_eq!(parse_jsonocel(&export_jsonocel(&log)).unwrap(), log);
    assert_eq!(parse_xmlocel(&export_xmlocel(&log).unwrap()).unwrap(), log);
}

#[test]
fn export_is_byte_stable() {
    let log = fix1();
    let once = export_jsonocel(&log);
    assert_eq!(export_jsonocel(&parse_jsonocel(&once).unwrap()), once);
    let x = export_xmlocel(&log).unwrap();
    assert_eq!(export_xmlocel(&parse_xmlocel(&x).unwrap()).unwrap(), x);
}

#[test]
fn empty_log_exports_empty_maps() {
    let empty = fix1().sublog(&BTreeSet::new()).unwrap();
    let v: serde_json::Value = serde_json::from_slice(&export_jsonocel(&empty)).unwrap();
    assert_eq!(v["ocel:events"], serde_json::json!({}));
    assert_eq!(v["ocel:objects"], serde_json::json!({}));
}

#[test]
fn single_event_sublog_export() {
    let keep = ["e3".into()].into_iter().collect();
    let sub = fix1().sublog(&keep).unwrap();
    let v: serde_json::Value = serde_json::from_slice(&export_jsonocel(&sub)).unwrap();
    assert_eq!(v["ocel:events"].as_object().unwrap().len(), 1);
    assert_eq!(
        v["ocel:objects"].as_object().unwrap().keys().collect::<Vec<_>>(),
        ["o2"]
    );
}

#[test]
fn xml_export_rejects_unrepresentable_characters() {
    let log = ocpc_core::Ocel::from_observed(
        vec![ocpc_core::Event::new("e", "a", ocpc_core::Timestamp::default()).with_attr("k", "bell\u{7}")],
        [],
    )
    .unwrap();
    assert!(export(&log, Format::Xml).is_err());
    assert!(export(&log, Format::Json).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_logs_round_trip(seed in any::<u64>()) {
        let log = random_log(seed, &RandomLogConfig::default());
        prop_assert_eq!(&parse_jsonocel(&export_jsonocel(&log)).unwrap(), &log);
        prop_assert_eq!(&parse_xmlocel(&export_xmlocel(&log).unwrap()).unwrap(), &log);
    }
}
