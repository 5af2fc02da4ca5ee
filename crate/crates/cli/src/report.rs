//! Report entries and their JSON and markdown forms.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Entry {
    pub target: String,
    pub n: i64,
    pub m_mode: String,
    pub sample: BTreeMap<String, String>,
    pub modulus: String,
    pub status: String,
    pub elapsed_ms: u64,
    pub witness_digest: String,
    pub diagnostics: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunInfo {
    pub seed: u64,
    pub timestamp: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub schema_version: u32,
    pub run: RunInfo,
    pub entries: Vec<Entry>,
    pub summary: Summary,
}

impl Report {
    pub fn new(seed: u64, timestamp: String, entries: Vec<Entry>) -> Self {
        let mut summary = Summary::default();
        for e in &entries {
            match e.status.as_str() {
                "PASS" => summary.pass += 1,
                "SKIPPED" => summary.skipped += 1,
                _ => summary.fail += 1,
            }
        }
        Report { schema_version: 1, run: RunInfo { seed, timestamp }, entries, summary }
    }

    pub fn any_fail(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("# Verification report\n\nseed {}, {}\n", self.run.seed, self.run.timestamp);
        let mut order: Vec<&str> = Vec::new();
        for e in &self.entries {
            if !order.contains(&e.target.as_str()) {
                order.push(&e.target);
            }
        }
        for t in order {
            out.push_str(&format!(
                "\n## {t}\n\n| n | M | sample | modulus | status | ms | digest |\n|---|---|---|---|---|---|---|\n"
            ));
            for e in self.entries.iter().filter(|e| e.target == t) {
                let sample: Vec<String> = e.sample.iter().map(|(k, v)| format!("{k}={v}")).collect();
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} | {} | {} |\n",
                    e.n,
                    e.m_mode,
                    sample.join(", "),
                    e.modulus,
                    e.status,
                    e.elapsed_ms,
                    &e.witness_digest[..12.min(e.witness_digest.len())]
                ));
            }
        }
        out.push_str(&format!(
            "\n**{} pass, {} fail, {} skipped**\n",
            self.summary.pass, self.summary.fail, self.summary.skipped
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(status: &str) -> Entry {
        Entry {
            target: "THM11".into(),
            n: 3,
            m_mode: "n-1".into(),
            sample: BTreeMap::new(),
            modulus: "Phi(n)".into(),
            status: status.into(),
            elapsed_ms: 0,
            witness_digest: "00".into(),
            diagnostics: String::new(),
        }
    }

    #[test]
    fn summaries() {
        assert_eq!(Report::new(0, "t".into(), vec![]).summary, Summary::default());
        let r = Report::new(0, "t".into(), vec![entry("PASS")]);
        assert_eq!(r.summary.pass, 1);
        assert!(!r.any_fail());
        assert!(Report::new(0, "t".into(), vec![entry("FAIL")]).any_fail());
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["schemaVersion"], 1);
        assert_eq!(json["entries"][0]["mMode"], "n-1");
        assert!(r.to_markdown().contains("## THM11"));
    }
}
