//! Invariant checks over a log. Violations are returned as data.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::ocel::Ocel;
use crate::value::AttrValue;

/// Machine-readable issue code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IssueCode {
    /// Two events share an id.
    DupEventId,
    /// An identifier, activity, type or attribute name is empty.
    EmptyId,
    /// An event references an object missing from the log.
    DanglingObjectRef,
    /// An object's type is not declared.
    UnknownOtype,
    /// An attribute key is not declared.
    UndeclaredAttribute,
    /// The object map key differs from the object's own id.
    ObjectIdMismatch,
    /// Events are not in `(timestamp, id)` order.
    UnsortedEvents,
    /// A float attribute is NaN or infinite.
    NonFiniteValue,
    /// Warning: an object is not referenced by any event.
    UnreferencedObject,
    /// Warning: an unexpected key was kept as a string attribute.
    CoercedKey,
    /// Warning: a name or type used by the data was missing from the declarations and was added.
    UndeclaredAdded,
    /// Warning: an object id was listed twice in one event.
    DuplicateObjectRef,
}

impl IssueCode {
    /// Stable upper-case code string.
    pub fn as_str(self) -> &'static str {
        match self {
            IssueCode::DupEventId => "DUP_EVENT_ID",
            IssueCode::EmptyId => "EMPTY_ID",
            IssueCode::DanglingObjectRef => "DANGLING_OBJECT_REF",
            IssueCode::UnknownOtype => "UNKNOWN_OTYPE",
            IssueCode::UndeclaredAttribute => "UNDECLARED_ATTRIBUTE",
            IssueCode::ObjectIdMismatch => "OBJECT_ID_MISMATCH",
            IssueCode::UnsortedEvents => "UNSORTED_EVENTS",
            IssueCode::NonFiniteValue => "NON_FINITE_VALUE",
            IssueCode::UnreferencedObject => "UNREFERENCED_OBJECT",
            IssueCode::CoercedKey => "COERCED_KEY",
            IssueCode::UndeclaredAdded => "UNDECLARED_ADDED",
            IssueCode::DuplicateObjectRef => "DUPLICATE_OBJECT_REF",
        }
    }
}

impl fmt::Display for IssueCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One finding, with a human-readable message and a location such as `event e2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Issue {
    /// Issue code.
    pub code: IssueCode,
    /// Description.
    pub message: String,
    /// Where the issue was found.
    pub location: String,
}

impl Issue {
    /// Creates an issue.
    pub fn new(code: IssueCode, message: impl Into<String>, location: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
            location: location.into(),
        }
    }
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.code, self.location, self.message)
    }
}

/// Errors and warnings found in a log.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    /// Invariant violations.
    pub errors: Vec<Issue>,
    /// Non-fatal findings.
    pub warnings: Vec<Issue>,
}

impl ValidationReport {
    /// True when there are no errors.
    pub fn is_valid(&self) -> bool {
        self.errors.is_empty()
    }

    /// True if some error carries `code`.
    pub fn has_error(&self, code: IssueCode) -> bool {
        self.errors.iter().any(|i| i.code == code)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.errors {
            writeln!(f, "error: {e}")?;
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}

fn non_finite(v: &AttrValue) -> bool {
    matches!(v, AttrValue::Float(x) if !x.is_finite())
}

/// Checks every log invariant and reports all violations.
pub fn validate(log: &Ocel) -> ValidationReport {
    let mut report = ValidationReport::default();
    let names = log.attribute_names();
    let types = log.object_types();

    for name in names.iter().filter(|n| n.as_str().is_empty()) {
        report.errors.push(Issue::new(
            IssueCode::EmptyId,
            format!("empty attribute name {name:?}"),
            "global-log",
        ));
    }
    for t in types.iter().filter(|t| t.as_str().is_empty()) {
        report.errors.push(Issue::new(
            IssueCode::EmptyId,
            format!("empty object type {t:?}"),
            "global-log",
        ));
    }

    let mut seen = BTreeSet::new();
    let mut referenced = BTreeSet::new();
    let mut prev = None;
    for e in log.events() {
        let loc = format!("event {}", e.id);
        if e.id.as_str().is_empty() {
            report
                .errors
                .push(Issue::new(IssueCode::EmptyId, "empty event id", loc.clone()));
        }
        if e.activity.as_str().is_empty() {
            report
                .errors
                .push(Issue::new(IssueCode::EmptyId, "empty activity", loc.clone()));
        }
        if !seen.insert(&e.id) {
            report.errors.push(Issue::new(
                IssueCode::DupEventId,
                format!("duplicate event id {}", e.id),
                loc.clone(),
            ));
        }
        let key = (e.timestamp, &e.id);
        if let Some(p) = prev {
            if key < p {
                report.errors.push(Issue::new(
                    IssueCode::UnsortedEvents,
                    "event out of (timestamp, id) order",
                    loc.clone(),
                ));
            }
        }
        prev = Some(key);
        for oid in &e.omap {
            referenced.insert(oid);
            if log.object(oid).is_none() {
                report.errors.push(Issue::new(
                    IssueCode::DanglingObjectRef,
                    format!("unknown object {oid}"),
                    loc.clone(),
                ));
            }
        }
        for (k, v) in &e.vmap {
            if !names.contains(k) {
                report.errors.push(Issue::new(
                    IssueCode::UndeclaredAttribute,
                    format!("attribute {k} is not declared"),
                    loc.clone(),
                ));
            }
            if non_finite(v) {
                report.errors.push(Issue::new(
                    IssueCode::NonFiniteValue,
                    format!("attribute {k} is {v}"),
                    loc.clone(),
                ));
            }
        }
    }

    for (key, o) in log.objects() {
        let loc = format!("object {key}");
        if key.as_str().is_empty() {
            report
                .errors
                .push(Issue::new(IssueCode::EmptyId, "empty object id", loc.clone()));
        }
        if *key != o.id {
            report.errors.push(Issue::new(
                IssueCode::ObjectIdMismatch,
                format!("stored under {key} but id is {}", o.id),
                loc.clone(),
            ));
        }
        if !types.contains(&o.otype) {
            report.errors.push(Issue::new(
                IssueCode::UnknownOtype,
                format!("object type {} is not declared", o.otype),
                loc.clone(),
            ));
        }
        for (k, v) in &o.ovmap {
            if !names.contains(k) {
                report.errors.push(Issue::new(
                    IssueCode::UndeclaredAttribute,
                    format!("attribute {k} is not declared"),
                    loc.clone(),
                ));
            }
            if non_finite(v) {
                report.errors.push(Issue::new(
                    IssueCode::NonFiniteValue,
                    format!("attribute {k} is {v}"),
                    loc.clone(),
                ));
            }
        }
        if !referenced.contains(key) {
            report.warnings.push(Issue::new(
                IssueCode::UnreferencedObject,
                "object is not referenced by any event",
                loc,
            ));
        }
    }
    report
}
