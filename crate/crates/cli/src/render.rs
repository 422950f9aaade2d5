use std::fmt::Write;

use clap::ValueEnum;
use heckoid_core::verify::{Report, Verdict};
use serde_json::Value;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Text,
}

/// Render a sweep or audit report.
///
/// JSON keeps the field order of [`Report`]; CSV has one row per verdict
/// under a fixed header; text is a summary plus the failures, without timing.
pub fn emit_report<V: Verdict>(report: &Report<V>, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Text => {
            let mut out = String::new();
            let n = report.n.map(|n| format!(" n={n}")).unwrap_or_default();
            let _ = writeln!(
                out,
                "{} r={}{} max_den={}",
                report.lemma, report.r, n, report.max_den
            );
            let _ = writeln!(
                out,
                "checked {}, failures {}, {}",
                report.checked,
                report.failures.len(),
                report.conclusion
            );
            for (k, v) in &report.summary {
                let _ = writeln!(out, "  {k} = {v}");
            }
            for f in &report.failures {
                let _ = write!(out, "FAIL s={}", f.s);
                if let Some(t) = f.t {
                    let _ = write!(out, " t={t}");
                }
                if let Some(cs) = &f.cs {
                    let _ = write!(out, " CS={cs}");
                }
                if let Some(p) = &f.pattern {
                    let _ = write!(out, " pattern={p}");
                }
                if let Some(i) = f.position {
                    let _ = write!(out, " at {i}");
                }
                let _ = writeln!(out, ": {}", f.reason);
            }
            out
        }
    }
}

/// Render a single query result.
pub(crate) fn value(format: Format, json: &Value, text: String) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(json).expect("serializable"),
        Format::Text => text,
        Format::Csv => match json {
            Value::Object(map) => {
                let mut out = String::from("field,value\n");
                for (k, v) in map {
                    let cell = match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    let _ = writeln!(out, "{},{}", csv(k), csv(&cell));
                }
                out
            }
            other => other.to_string(),
        },
    }
}

fn csv(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
