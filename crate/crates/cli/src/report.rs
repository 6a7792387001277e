//! Report assembly. Every invocation prints exactly one JSON document on
//! standard output; diagnostics and a short human summary go to standard
//! error. All maps serialize with sorted keys, exact rationals serialize as
//! [numerator, denominator] decimal strings, and group-ring elements as
//! sorted (index, numerator, denominator) triples with their modulus, so
//! output is stable under re-parsing and re-emission.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use equichar_core::galois::GaloisRingElement;
use equichar_core::modular::Verdict;
use equichar_core::resolvent::ResolventDivisor;

pub fn rational_json(r: &BigRational) -> Value {
    json!([r.numer().to_string(), r.denom().to_string()])
}

pub fn bigint_json(i: &BigInt) -> Value {
    Value::String(i.to_string())
}

pub fn ring_json(x: &GaloisRingElement) -> Value {
    let coeffs: Vec<Value> = x
        .triples()
        .into_iter()
        .map(|(u, num, den)| json!([u, num.to_string(), den.to_string()]))
        .collect();
    json!({ "modulus": x.modulus(), "coeffs": coeffs })
}

pub fn divisor_json(d: &ResolventDivisor) -> Value {
    let entries: Vec<Value> = d
        .iter()
        .map(|(id, v)| json!([id, v.numer().to_string(), v.denom().to_string()]))
        .collect();
    Value::Array(entries)
}

pub fn verdict_json(v: Verdict) -> Value {
    Value::String(
        match v {
            Verdict::Trivial => "trivial",
            Verdict::NonTrivial => "non-trivial",
            Verdict::Inconclusive => "inconclusive",
        }
        .to_string(),
    )
}

/// One invocation's machine-readable document.
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub verdicts: Option<Value>,
    pub timing_ms: u128,
}

impl Report {
    pub fn to_value(&self) -> Value {
        let mut map = Map::new();
        map.insert("command".into(), Value::String(self.command.clone()));
        map.insert("inputs".into(), self.inputs.clone());
        map.insert("results".into(), self.results.clone());
        if let Some(v) = &self.verdicts {
            map.insert("verdicts".into(), v.clone());
        }
        map.insert("timing_ms".into(), json!(self.timing_ms));
        Value::Object(map)
    }

    /// Prints the document on stdout, terminated by a newline.
    pub fn emit(&self) {
        println!(
            "{}",
            serde_json::to_string_pretty(&self.to_value()).expect("report serializes")
        );
    }
}
