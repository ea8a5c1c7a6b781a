//! Tab-separated report emission with a stable column order, shared by the
//! experiment suites and the CLI.

use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Pass,
    Fail,
    Info,
    Skipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::Info => "info",
            Verdict::Skipped => "skipped",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug)]
pub struct CheckRow {
    pub id: String,
    pub params: String,
    pub verdict: Verdict,
    pub detail: String,
}

impl CheckRow {
    pub fn new(
        id: impl Into<String>,
        params: impl Into<String>,
        verdict: Verdict,
        detail: impl Into<String>,
    ) -> Self {
        CheckRow {
            id: id.into(),
            params: params.into(),
            verdict,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub rows: Vec<CheckRow>,
}

impl Report {
    pub fn new() -> Self {
        Report { rows: vec![] }
    }

    pub fn push(&mut self, row: CheckRow) {
        self.rows.push(row);
    }

    pub fn extend(&mut self, other: Report) {
        self.rows.extend(other.rows);
    }

    pub fn all_passed(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.verdict != Verdict::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| r.verdict == Verdict::Fail)
    }

    /// Render as TSV: header row then one row per check, stable order.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("check\tparams\tverdict\tdetail\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                r.id, r.params, r.verdict, r.detail
            ));
        }
        out
    }
}
