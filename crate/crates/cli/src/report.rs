//! Deterministic tabular reports rendered as aligned text, JSON or CSV.

use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// Verdict strings that make a command exit nonzero.
const FAILING: [&str; 3] = ["FAILS", "INCONCLUSIVE", "FAIL"];

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub version: String,
    pub parameters: BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub items: Vec<Vec<String>>,
    pub summary: Vec<String>,
    /// SHA-256 of the graph6 lines of the input corpus, when there is one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corpus_checksum: Option<String>,
    /// SHA-256 of everything above, so reruns can be compared.
    pub checksum: String,
    pub elapsed_ms: u128,
    /// Purely generative commands never fail on item verdicts.
    #[serde(skip)]
    pub generative: bool,
    /// A report-level check failed, independent of item verdicts.
    #[serde(skip)]
    pub failed: bool,
    /// Table output omits the header line.
    #[serde(skip)]
    pub headerless: bool,
}

impl Report {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Report {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            parameters: BTreeMap::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            items: Vec::new(),
            summary: Vec::new(),
            corpus_checksum: None,
            checksum: String::new(),
            elapsed_ms: 0,
            generative: false,
            failed: false,
            headerless: false,
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.items.push(row);
    }

    pub fn set_corpus(&mut self, graph6_lines: &[String]) {
        let mut h = Sha256::new();
        for line in graph6_lines {
            h.update(line.as_bytes());
            h.update(b"\n");
        }
        self.corpus_checksum = Some(hex::encode(h.finalize()));
    }

    /// Column index by name.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn failures(&self) -> usize {
        match self.column("verdict") {
            Some(i) => self.items.iter().filter(|r| FAILING.contains(&r[i].as_str())).count(),
            None => 0,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if !self.failed && (self.generative || self.failures() == 0) {
            0
        } else {
            1
        }
    }

    /// Fill in the checksum over everything except timing.
    pub fn seal(&mut self) {
        let payload = serde_json::json!({
            "command": self.command,
            "version": self.version,
            "parameters": self.parameters,
            "columns": self.columns,
            "items": self.items,
            "summary": self.summary,
            "corpus_checksum": self.corpus_checksum,
        });
        let bytes = serde_json::to_vec(&payload).expect("report serializes");
        self.checksum = hex::encode(Sha256::digest(&bytes));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.render_table(),
            Format::Json => self.to_json(),
            Format::Csv => self.render_csv(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    fn render_table(&self) -> String {
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for row in &self.items {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            padded.join("  ").trim_end().to_string()
        };
        let mut out = String::new();
        if !self.headerless {
            out.push_str(&line(&self.columns));
            out.push('\n');
        }
        for row in &self.items {
            out.push_str(&line(row));
            out.push('\n');
        }
        for s in &self.summary {
            out.push_str(s);
            out.push('\n');
        }
        out
    }

    fn render_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.items {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("demo", &["key", "verdict"]);
        r.param("d", 3);
        r.push(vec!["a".into(), "HOLDS".into()]);
        r.push(vec!["b,c".into(), "FAILS".into()]);
        r.seal();
        r
    }

    #[test]
    fn checksum_ignores_timing() {
        let a = sample();
        let mut b = sample();
        b.elapsed_ms = 99;
        b.seal();
        assert_eq!(a.checksum, b.checksum);
        assert_eq!(a.failures(), 1);
        assert_eq!(a.exit_code(), 1);
    }

    #[test]
    fn renderings() {
        let r = sample();
        assert_eq!(r.render(Format::Table), "key  verdict\na    HOLDS\nb,c  FAILS\n");
        assert_eq!(r.render(Format::Csv), "key,verdict\na,HOLDS\n\"b,c\",FAILS\n");
        let v: serde_json::Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(v["items"][1][0], "b,c");
    }
}
