use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    /// Evaluation raised an error.
    #[serde(rename = "ERROR")]
    Error,
    /// The file could not be parsed or validated.
    #[serde(rename = "PARSE-ERROR")]
    ParseError,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
            Status::ParseError => "PARSE-ERROR",
        }
    }
}

/// Exact values are rendered as `p/q` text.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Entry {
    pub file: String,
    pub name: String,
    pub kind: String,
    pub status: Status,
    pub computed: Option<String>,
    pub expected: Option<String>,
    pub error: Option<String>,
    pub trail: Vec<String>,
    pub chart: Vec<String>,
    pub millis: u128,
}

impl Entry {
    pub(crate) fn crashed(file: &str) -> Self {
        Entry {
            file: file.to_string(),
            name: String::new(),
            kind: String::new(),
            status: Status::Error,
            computed: None,
            expected: None,
            error: Some("evaluation panicked".into()),
            trail: vec![],
            chart: vec![],
            millis: 0,
        }
    }

    fn headline(&self) -> String {
        let title = if self.name.is_empty() { self.file.as_str() } else { self.name.as_str() };
        let mut s = format!("{:<11} {title}", self.status.label());
        if !self.kind.is_empty() {
            let _ = write!(s, " [{}]", self.kind);
        }
        if let Some(c) = &self.computed {
            let _ = write!(s, ": computed {c}");
        }
        if let Some(e) = &self.expected {
            let _ = write!(s, ", expected {e}");
        }
        let _ = write!(s, " ({} ms)", self.millis);
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn count(&self, status: Status) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }

    /// 2 if any file failed to parse, else 1 if anything failed or errored, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.count(Status::ParseError) > 0 {
            2
        } else if self.count(Status::Fail) + self.count(Status::Error) > 0 {
            1
        } else {
            0
        }
    }

    fn render(&self, charts: bool) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let _ = writeln!(out, "{}", e.headline());
            let _ = writeln!(out, "    file: {}", e.file);
            if let Some(err) = &e.error {
                let _ = writeln!(out, "    error: {err}");
            }
            for t in &e.trail {
                let _ = writeln!(out, "    {t}");
            }
            if charts && !e.chart.is_empty() {
                let _ = writeln!(out, "    chart:");
                for c in &e.chart {
                    let _ = writeln!(out, "      {c}");
                }
            }
        }
        let _ = writeln!(
            out,
            "{} scenarios: {} passed, {} failed, {} errors, {} parse errors",
            self.entries.len(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Error),
            self.count(Status::ParseError)
        );
        out
    }

    /// Headlines and verification trails.
    pub fn summary(&self) -> String {
        self.render(false)
    }

    /// Everything, including the chamber charts.
    pub fn full(&self) -> String {
        self.render(true)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
