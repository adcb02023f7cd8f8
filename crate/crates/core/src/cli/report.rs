use serde::Serialize;

/// One numerical check: passes iff |computed − expected| ≤ tolerance, the
/// tolerance scaled by |expected| when `relative`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// The identity or property being tested, in words.
    pub anchor: String,
    pub computed: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub relative: bool,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>, computed: f64, expected: f64, tolerance: f64, relative: bool) -> Self {
        let bound = if relative { tolerance * expected.abs() } else { tolerance };
        let pass = (computed - expected).abs() <= bound;
        Self { name: name.into(), anchor: anchor.into(), computed, expected, tolerance, relative, pass, note: None }
    }

    pub fn abs(name: impl Into<String>, anchor: impl Into<String>, computed: f64, expected: f64, tolerance: f64) -> Self {
        Self::new(name, anchor, computed, expected, tolerance, false)
    }

    pub fn rel(name: impl Into<String>, anchor: impl Into<String>, computed: f64, expected: f64, tolerance: f64) -> Self {
        Self::new(name, anchor, computed, expected, tolerance, true)
    }

    /// An error bound: passes iff 0 ≤ error ≤ bound.
    pub fn bound(name: impl Into<String>, anchor: impl Into<String>, error: f64, bound: f64) -> Self {
        Self::abs(name, anchor, error, 0.0, bound)
    }

    /// A yes/no property, recorded as 1 (holds) or 0.
    pub fn flag(name: impl Into<String>, anchor: impl Into<String>, holds: bool) -> Self {
        Self::abs(name, anchor, if holds { 1.0 } else { 0.0 }, 1.0, 0.0)
    }

    /// A check that could not be computed.
    pub fn failed(name: impl Into<String>, anchor: impl Into<String>, err: impl std::fmt::Display) -> Self {
        let mut r = Self::abs(name, anchor, f64::NAN, 0.0, 0.0);
        r.pass = false;
        r.note = Some(err.to_string());
        r
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub campaign: String,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub const SCHEMA: u32 = 1;

    /// Sorts the checks by name so the report does not depend on the order
    /// in which concurrent checks finished.
    pub fn new(campaign: impl Into<String>, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let passed = checks.iter().filter(|c| c.pass).count();
        let summary = Summary { total: checks.len(), passed, failed: checks.len() - passed };
        Self { schema: Self::SCHEMA, campaign: campaign.into(), checks, summary }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}
