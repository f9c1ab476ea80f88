//! Flat `key: value` documents for codes, weights and bound checks.
//!
//! Every document ends with `manifest.*` lines describing how it was
//! produced. Values never contain newlines; equal manifests give
//! byte-identical documents.

use crate::bounds::FeasibilityReport;
use crate::construct::{ratio_str, SubsystemCode};
use crate::distance::{DistanceOptions, WeightReport};
use crate::error::{Error, Result};

/// Ordered key/value lines.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Document {
    entries: Vec<(String, String)>,
}

impl Document {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        let value = value.to_string().replace('\n', " ");
        self.entries.push((key.into(), value));
        self
    }

    pub fn extend_prefixed(&mut self, prefix: &str, pairs: &[(String, String)]) -> &mut Self {
        for (k, v) in pairs {
            self.push(format!("{prefix}.{k}"), v);
        }
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            out.push_str(k);
            out.push_str(": ");
            out.push_str(v);
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Document> {
        let mut doc = Document::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (k, v) = line.split_once(": ").or_else(|| line.strip_suffix(':').map(|k| (k, ""))).ok_or(
                Error::Parse {
                    line: i + 1,
                    message: "expected `key: value`".into(),
                },
            )?;
            if k.is_empty() || k.contains(char::is_whitespace) {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("bad key {k:?}"),
                });
            }
            doc.entries.push((k.to_string(), v.to_string()));
        }
        Ok(doc)
    }
}

/// Describes a run: command, parameters, field data, search choices, seed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Manifest {
    pub entries: Vec<(String, String)>,
}

impl Manifest {
    pub fn new(command: &str) -> Self {
        let mut m = Manifest::default();
        m.set("command", command);
        m.set("version", env!("CARGO_PKG_VERSION"));
        m
    }

    pub fn set(&mut self, key: &str, value: impl ToString) -> &mut Self {
        let value = value.to_string();
        match self.entries.iter_mut().find(|(k, _)| k == key) {
            Some(e) => e.1 = value,
            None => self.entries.push((key.to_string(), value)),
        }
        self
    }

    pub fn with_options(mut self, opts: &DistanceOptions) -> Self {
        let cap = |c: Option<usize>| c.map_or("none".to_string(), |c| c.to_string());
        self.set("strategy", opts.strategy.name());
        self.set("cap", cap(opts.cap));
        self.set("purity_cap", cap(opts.purity_cap));
        self
    }
}

fn witness_str(w: &Option<Vec<u16>>) -> String {
    match w {
        Some(v) => v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
        None => "none".into(),
    }
}

fn push_weight(doc: &mut Document, prefix: &str, w: &WeightReport) {
    doc.push(prefix, w.value);
    doc.push(format!("{prefix}_state"), w.value.state());
    doc.push(format!("{prefix}_metric"), w.metric.name());
    doc.push(format!("{prefix}_strategy"), w.strategy.name());
    doc.push(format!("{prefix}_work"), w.work);
    doc.push(format!("{prefix}_witness"), witness_str(&w.witness));
}

pub fn subsystem_document(code: &SubsystemCode, manifest: &Manifest) -> Document {
    let mut doc = Document::new();
    doc.push("label", code.label());
    doc.push("n", code.n());
    doc.push("q", code.q());
    doc.push("k", ratio_str(code.k()));
    doc.push("r", ratio_str(code.r()));
    doc.push("K", code.big_k());
    doc.push("R", code.big_r());
    push_weight(&mut doc, "d", code.distance());
    push_weight(&mut doc, "d_prime", code.purity());
    doc.push(
        "pure",
        match code.pure() {
            Some(true) => "true",
            Some(false) => "false",
            None => "unknown",
        },
    );
    doc.push("stabilizer", code.is_stabilizer());
    doc.push("degenerate", code.is_degenerate());
    doc.push("origin", code.origin().name());
    doc.push("log_p_x", code.x().log_p_size());
    doc.push("log_p_y", code.y().log_p_size());
    doc.extend_prefixed("provenance", code.provenance());
    doc.extend_prefixed("manifest", &manifest.entries);
    doc
}

pub fn weight_document(w: &WeightReport, manifest: &Manifest) -> Document {
    let mut doc = Document::new();
    push_weight(&mut doc, "weight", w);
    doc.extend_prefixed("manifest", &manifest.entries);
    doc
}

pub fn feasibility_document(rep: &FeasibilityReport, manifest: &Manifest) -> Document {
    let mut doc = Document::new();
    let qy = &rep.query;
    doc.push("check", rep.check);
    doc.push("query", qy.label());
    doc.push("n", qy.n);
    doc.push("q", qy.q());
    doc.push("log_p_k", qy.log_p_k);
    doc.push("log_p_r", qy.log_p_r);
    doc.push("d", qy.d);
    doc.push("verdict", rep.verdict);
    doc.extend_prefixed("certificate", &rep.certificate);
    doc.extend_prefixed("manifest", &manifest.entries);
    doc
}
