//! Structured extraction log. One event per step procedure invocation, with
//! the counters the step's bookkeeping is checked against. Serialized as JSON
//! lines with a stable field layout so traces diff byte-for-byte.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Serialize)]
pub struct TraceEvent {
    pub lemma: &'static str,
    #[serde(rename = "in")]
    pub input: Value,
    pub out: &'static str,
    pub counters: Value,
}

#[derive(Debug, Clone, Default)]
pub struct ExtractionTrace {
    events: Vec<TraceEvent>,
}

impl ExtractionTrace {
    pub fn push(&mut self, lemma: &'static str, input: Value, out: &'static str, counters: Value) {
        self.events.push(TraceEvent { lemma, input, out, counters });
    }

    pub fn events(&self) -> &[TraceEvent] {
        &self.events
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for e in &self.events {
            out.push_str(&serde_json::to_string(e).expect("trace events serialize"));
            out.push('\n');
        }
        out
    }
}
