//! Canonical report rendering.

use std::ops::RangeInclusive;

use serde_json::{json, Value};

use crate::registry::{ClaimResult, Status};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub undecided: usize,
    /// FAIL cells belonging to claims marked as known discrepancies.
    pub fail_known: usize,
}

impl Summary {
    pub fn of(results: &[ClaimResult]) -> Self {
        let mut s = Summary::default();
        for r in results {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Undecided => s.undecided += 1,
                Status::Fail => {
                    s.fail += 1;
                    if r.known_discrepancy {
                        s.fail_known += 1;
                    }
                }
            }
        }
        s
    }

    /// FAIL cells that count against the exit status.
    pub fn blocking(&self, strict: bool) -> usize {
        if strict {
            self.fail
        } else {
            self.fail - self.fail_known
        }
    }
}

/// Results plus the grid they were computed on.
#[derive(Debug, Clone)]
pub struct ReportDocument {
    pub t_range: RangeInclusive<i64>,
    pub r_range: RangeInclusive<i64>,
    pub claims: Vec<String>,
    pub results: Vec<ClaimResult>,
}

impl ReportDocument {
    pub fn summary(&self) -> Summary {
        Summary::of(&self.results)
    }

    /// JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let s = self.summary();
        let results: Vec<Value> = self
            .results
            .iter()
            .map(|r| {
                json!({
                    "claim_id": r.claim_id,
                    "t": r.t,
                    "r": r.r,
                    "expected": r.expected,
                    "computed": r.computed,
                    "status": r.status,
                    "known_discrepancy": r.known_discrepancy,
                })
            })
            .collect();
        let doc = json!({
            "engine_version": ENGINE_VERSION,
            "grid": {
                "t_range": [self.t_range.start(), self.t_range.end()],
                "r_range": [self.r_range.start(), self.r_range.end()],
                "claims": self.claims,
            },
            "results": results,
            "summary": {
                "pass": s.pass,
                "fail": s.fail,
                "undecided": s.undecided,
                "fail_known_discrepancy": s.fail_known,
            },
        });
        let mut out = serde_json::to_string_pretty(&doc).expect("json values serialize");
        out.push('\n');
        out
    }

    /// Tab-separated table: `claim_id t r expected computed status`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("claim_id\tt\tr\texpected\tcomputed\tstatus\n");
        for r in &self.results {
            let rr = r.r.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                r.claim_id, r.t, rr, r.expected, r.computed, r.status
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn res(id: &str, status: Status, known: bool) -> ClaimResult {
        ClaimResult {
            claim_id: id.into(),
            t: 1,
            r: None,
            expected: "1".into(),
            computed: "1".into(),
            status,
            known_discrepancy: known,
        }
    }

    #[test]
    fn summary_and_blocking() {
        let rs = vec![
            res("A", Status::Pass, false),
            res("B", Status::Fail, true),
            res("C", Status::Undecided, false),
        ];
        let s = Summary::of(&rs);
        assert_eq!((s.pass, s.fail, s.undecided, s.fail_known), (1, 1, 1, 1));
        assert_eq!(s.blocking(false), 0);
        assert_eq!(s.blocking(true), 1);
    }

    #[test]
    fn json_keys_are_sorted() {
        let doc = ReportDocument {
            t_range: 1..=1,
            r_range: 1..=1,
            claims: vec!["A".into()],
            results: vec![res("A", Status::Pass, false)],
        };
        let j = doc.to_json();
        let e = j.find("\"engine_version\"").unwrap();
        let g = j.find("\"grid\"").unwrap();
        let r = j.find("\"results\"").unwrap();
        let s = j.find("\"summary\"").unwrap();
        assert!(e < g && g < r && r < s);
        assert!(doc
            .to_tsv()
            .starts_with("claim_id\tt\tr\texpected\tcomputed\tstatus\nA\t1\t-\t1\t1\tPASS\n"));
    }
}
