//! Line-oriented record serialization for claim and classification reports.
//!
//! One record per line, `key=value` fields separated by single spaces, field
//! order fixed per kind. Values containing spaces, quotes, backslashes or
//! `=` are double-quoted with backslash escapes. Timing fields come last and
//! are the only fields expected to vary across runs.

use super::{ClaimResult, ClassificationRow};

pub fn quote(value: &str) -> String {
    let needs_quoting = value.is_empty()
        || value
            .chars()
            .any(|c| c.is_whitespace() || c == '"' || c == '\\' || c == '=');
    if !needs_quoting {
        return value.to_string();
    }
    let mut out = String::with_capacity(value.len() + 2);
    out.push('"');
    for c in value.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

pub fn claim_record(claim: &ClaimResult) -> String {
    format!(
        "kind=claim id={} expect={} observed={} pass={} elapsed_ms={}",
        quote(&claim.claim_id),
        quote(&claim.expectation),
        quote(&claim.observed),
        claim.pass,
        claim.elapsed.as_millis()
    )
}

pub fn row_record(row: &ClassificationRow) -> String {
    format!(
        "kind=row code={} neutral={} inverses={} answer={} observed={} ok={} elapsed_ms={}",
        row.code,
        row.config.neutral,
        row.config.inverses,
        row.answer,
        quote(&row.observed.to_string()),
        row.ok(),
        row.elapsed.as_millis()
    )
}
