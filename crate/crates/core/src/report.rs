//! Structured outcome of one verification.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

/// A failing report always carries a witness; the constructors enforce it.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    check_name: String,
    parameters: BTreeMap<String, String>,
    status: Status,
    witness: Option<Value>,
    #[serde(serialize_with = "seconds")]
    elapsed: Duration,
    notes: Vec<String>,
}

fn seconds<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl VerificationReport {
    pub fn pass(check_name: impl Into<String>, parameters: BTreeMap<String, String>) -> Self {
        VerificationReport {
            check_name: check_name.into(),
            parameters,
            status: Status::Pass,
            witness: None,
            elapsed: Duration::ZERO,
            notes: Vec::new(),
        }
    }

    pub fn fail(check_name: impl Into<String>, parameters: BTreeMap<String, String>, witness: Value) -> Self {
        VerificationReport {
            check_name: check_name.into(),
            parameters,
            status: Status::Fail,
            witness: Some(witness),
            elapsed: Duration::ZERO,
            notes: Vec::new(),
        }
    }

    pub fn with_notes(mut self, notes: impl IntoIterator<Item = String>) -> Self {
        self.notes.extend(notes);
        self
    }

    pub fn with_elapsed(mut self, elapsed: Duration) -> Self {
        self.elapsed = elapsed;
        self
    }

    pub fn check_name(&self) -> &str {
        &self.check_name
    }

    pub fn parameters(&self) -> &BTreeMap<String, String> {
        &self.parameters
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn witness(&self) -> Option<&Value> {
        self.witness.as_ref()
    }

    pub fn elapsed(&self) -> Duration {
        self.elapsed
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    /// Equality of everything except the elapsed time.
    pub fn same_content(&self, other: &Self) -> bool {
        self.check_name == other.check_name
            && self.parameters == other.parameters
            && self.status == other.status
            && self.witness == other.witness
            && self.notes == other.notes
    }

    fn parameter_text(&self) -> String {
        self.parameters
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} [{}] ({:.2}s)",
            self.status,
            self.check_name,
            self.parameter_text(),
            self.elapsed.as_secs_f64()
        )?;
        if let Some(w) = &self.witness {
            write!(f, "\n  witness: {w}")?;
        }
        for note in &self.notes {
            write!(f, "\n  note: {note}")?;
        }
        Ok(())
    }
}

pub fn to_json(reports: &[VerificationReport]) -> serde_json::Result<String> {
    serde_json::to_string_pretty(reports)
}

pub fn to_csv(reports: &[VerificationReport]) -> csv::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "check_name",
        "status",
        "parameters",
        "witness",
        "elapsed_seconds",
        "notes",
    ])?;
    for r in reports {
        w.write_record([
            r.check_name.clone(),
            r.status.to_string().to_lowercase(),
            r.parameter_text(),
            r.witness.as_ref().map(Value::to_string).unwrap_or_default(),
            format!("{:.3}", r.elapsed.as_secs_f64()),
            r.notes.join("; "),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn params() -> BTreeMap<String, String> {
        BTreeMap::from([("n".to_string(), "3".to_string())])
    }

    #[test]
    fn failing_report_has_witness() {
        let r = VerificationReport::fail("x", params(), json!({"class": "(3)"}));
        assert!(!r.passed());
        assert!(r.witness().is_some());
        assert!(r.to_string().starts_with("FAIL x [n=3]"));
    }

    #[test]
    fn content_ignores_elapsed() {
        let a = VerificationReport::pass("x", params()).with_elapsed(Duration::from_millis(5));
        let b = VerificationReport::pass("x", params()).with_elapsed(Duration::from_millis(9));
        assert!(a.same_content(&b));
        assert!(!a.same_content(&b.clone().with_notes(["extra".to_string()])));
    }

    #[test]
    fn serializations() {
        let r = VerificationReport::pass("x", params()).with_notes(["a, b".to_string()]);
        let js = to_json(std::slice::from_ref(&r)).unwrap();
        let v: Value = serde_json::from_str(&js).unwrap();
        assert_eq!(v[0]["status"], "pass");
        assert_eq!(v[0]["parameters"]["n"], "3");
        let csv = to_csv(&[r]).unwrap();
        assert!(csv.lines().nth(1).unwrap().contains("\"a, b\""));
    }
}
