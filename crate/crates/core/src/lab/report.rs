//! Line-delimited report records shared by every command.

use std::collections::BTreeMap;

use serde::Serialize;

use super::check::TheoremVerdict;
use super::rows::Mode;

/// One report line. The key set is fixed; `verified` carries a boolean for
/// checks and the computed value for other commands.
#[derive(Clone, Debug, Serialize)]
pub struct Record<V: Serialize> {
    pub check_id: String,
    pub theorem: String,
    pub ring: String,
    pub modules: BTreeMap<String, String>,
    pub j: Option<usize>,
    pub window_lo: Option<i64>,
    pub window_hi: Option<i64>,
    pub hypotheses: BTreeMap<String, bool>,
    pub vanished: Option<bool>,
    pub mode: String,
    pub predicted: String,
    pub verified: V,
    pub consistent: bool,
    pub seed: u64,
    pub char: u32,
    pub elapsed_ms: u64,
}

pub const RECORD_KEYS: [&str; 16] = [
    "check_id",
    "theorem",
    "ring",
    "modules",
    "j",
    "window_lo",
    "window_hi",
    "hypotheses",
    "vanished",
    "mode",
    "predicted",
    "verified",
    "consistent",
    "seed",
    "char",
    "elapsed_ms",
];

impl Record<Option<bool>> {
    /// Several windows collapse to their overall span.
    pub fn from_verdict(v: &TheoremVerdict) -> Self {
        let span = v.window_span();
        Record {
            check_id: v.check_id.clone(),
            theorem: v.theorem.clone(),
            ring: v.ring.clone(),
            modules: v.modules.clone(),
            j: Some(v.j),
            window_lo: span.map(|s| s.0),
            window_hi: span.map(|s| s.1),
            hypotheses: v.hypotheses.clone(),
            vanished: v.vanished,
            mode: match v.mode {
                Mode::Certificate => "certificate",
                Mode::Evidence => "evidence",
            }
            .into(),
            predicted: v.predicted.clone(),
            verified: v.verified,
            consistent: v.consistent,
            seed: v.seed,
            char: v.char,
            elapsed_ms: v.elapsed_ms,
        }
    }
}

impl<V: Serialize> Record<V> {
    /// A plain computation: no hypotheses, no window, nothing to contradict.
    pub fn computation(
        check_id: impl Into<String>,
        what: impl Into<String>,
        ring: impl Into<String>,
        modules: BTreeMap<String, String>,
        value: V,
        seed: u64,
        char: u32,
        elapsed_ms: u64,
    ) -> Self {
        Record {
            check_id: check_id.into(),
            theorem: what.into(),
            ring: ring.into(),
            modules,
            j: None,
            window_lo: None,
            window_hi: None,
            hypotheses: BTreeMap::new(),
            vanished: None,
            mode: "computation".into(),
            predicted: String::new(),
            verified: value,
            consistent: true,
            seed,
            char,
            elapsed_ms,
        }
    }
}
