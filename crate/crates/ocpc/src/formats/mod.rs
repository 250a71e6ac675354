//! JSON-OCEL and XML-OCEL reading and writing.
//!
//! Both readers fill a [`RawLog`] and share one finalization step, so the
//! same log in either format parses to equal values.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::str::FromStr;

use ocpc_core::{validate, AttributeName, Event, Issue, IssueCode, ObjectInstance, ObjectType, Ocel, OcelError};

pub(crate) mod json;
mod xml;

pub use json::{export_jsonocel, parse_jsonocel_with_warnings};
pub use xml::{export_xmlocel, parse_xmlocel_with_warnings};

/// Interchange format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Xml,
}

impl Format {
    /// Guesses the format from a file extension; anything not XML-like is JSON.
    pub fn from_path(path: &Path) -> Self {
        match path
            .extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase)
            .as_deref()
        {
            Some("xml" | "xmlocel") => Format::Xml,
            _ => Format::Json,
        }
    }

    /// Guesses the format from the first non-blank byte.
    pub fn sniff(bytes: &[u8]) -> Self {
        let first = bytes
            .iter()
            .find(|b| !b.is_ascii_whitespace() && **b != 0xEF && **b != 0xBB && **b != 0xBF);
        if first == Some(&b'<') {
            Format::Xml
        } else {
            Format::Json
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "jsonocel",
            Format::Xml => "xmlocel",
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "json" | "jsonocel" => Ok(Format::Json),
            "xml" | "xmlocel" => Ok(Format::Xml),
            other => Err(format!("unknown format {other:?} (expected json|xml)")),
        }
    }
}

/// A parsed log with the non-fatal findings of parsing and validation.
#[derive(Debug, Clone, PartialEq)]
pub struct Parsed {
    pub log: Ocel,
    pub warnings: Vec<Issue>,
}

/// Parses JSON-OCEL.
pub fn parse_jsonocel(bytes: &[u8]) -> Result<Ocel, OcelError> {
    parse_jsonocel_with_warnings(bytes).map(|p| p.log)
}

/// Parses XML-OCEL.
pub fn parse_xmlocel(bytes: &[u8]) -> Result<Ocel, OcelError> {
    parse_xmlocel_with_warnings(bytes).map(|p| p.log)
}

/// Parses either format.
pub fn parse(bytes: &[u8], format: Format) -> Result<Parsed, OcelError> {
    match format {
        Format::Json => parse_jsonocel_with_warnings(bytes),
        Format::Xml => parse_xmlocel_with_warnings(bytes),
    }
}

/// Serializes in either format.
pub fn export(log: &Ocel, format: Format) -> Result<Vec<u8>, OcelError> {
    match format {
        Format::Json => Ok(export_jsonocel(log)),
        Format::Xml => export_xmlocel(log),
    }
}

/// Log contents as read, before integrity checks.
#[derive(Debug, Default)]
pub(crate) struct RawLog {
    pub events: Vec<Event>,
    pub objects: Vec<ObjectInstance>,
    pub attribute_names: BTreeSet<AttributeName>,
    pub object_types: BTreeSet<ObjectType>,
    pub warnings: Vec<Issue>,
}

impl RawLog {
    pub fn warn(&mut self, code: IssueCode, message: impl Into<String>, location: impl Into<String>) {
        self.warnings.push(Issue::new(code, message, location));
    }

    /// Checks references, completes the declarations from the data, and
    /// validates.
    pub fn finish(mut self) -> Result<Parsed, OcelError> {
        let mut objects: BTreeMap<_, ObjectInstance> = BTreeMap::new();
        for o in std::mem::take(&mut self.objects) {
            if objects.contains_key(&o.id) {
                return Err(OcelError::MalformedInput(format!("duplicate object id {}", o.id)));
            }
            objects.insert(o.id.clone(), o);
        }

        let mut order: Vec<&Event> = self.events.iter().collect();
        order.sort_by(|a, b| (a.timestamp, &a.id).cmp(&(b.timestamp, &b.id)));
        for e in order {
            if let Some(missing) = e.omap.iter().find(|o| !objects.contains_key(*o)) {
                return Err(OcelError::DanglingObjectRef {
                    event: e.id.clone(),
                    object: missing.clone(),
                });
            }
        }

        let mut warnings = std::mem::take(&mut self.warnings);
        let used_names = self
            .events
            .iter()
            .flat_map(|e| e.vmap.keys())
            .chain(objects.values().flat_map(|o| o.ovmap.keys()));
        let mut added: BTreeSet<AttributeName> = BTreeSet::new();
        for n in used_names {
            if !self.attribute_names.contains(n) {
                added.insert(n.clone());
            }
        }
        for n in added {
            warnings.push(Issue::new(
                IssueCode::UndeclaredAdded,
                format!("attribute {n} was not declared"),
                "global-log",
            ));
            self.attribute_names.insert(n);
        }
        let added: BTreeSet<ObjectType> = objects
            .values()
            .map(|o| &o.otype)
            .filter(|t| !self.object_types.contains(*t))
            .cloned()
            .collect();
        for t in added {
            warnings.push(Issue::new(
                IssueCode::UndeclaredAdded,
                format!("object type {t} was not declared"),
                "global-log",
            ));
            self.object_types.insert(t);
        }

        let log = Ocel::from_parts_unchecked(
            self.events,
            objects.into_values(),
            self.attribute_names,
            self.object_types,
        );
        let report = validate(&log);
        if !report.is_valid() {
            let mut report = report;
            warnings.append(&mut report.warnings);
            report.warnings = warnings;
            return Err(OcelError::Invalid(report));
        }
        warnings.extend(report.warnings);
        Ok(Parsed { log, warnings })
    }
}
