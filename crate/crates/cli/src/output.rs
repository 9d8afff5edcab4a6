use serde_json::{json, Map, Value};

use sclosure::monomial::{format_ideal, format_monomial};
use sclosure::{ExponentVector, MonomialIdeal, VarNames};

/// A command result in both output formats.
pub struct Rendered {
    pub plain: String,
    pub json: Value,
}

pub fn generators(ideal: &MonomialIdeal) -> Value {
    Value::Array(ideal.generators().iter().map(|g| json!(g.coords())).collect())
}

/// `{"nvars", "generators", "meta"}`.
pub fn ideal_json(ideal: &MonomialIdeal, vars: &VarNames, meta: Map<String, Value>) -> Value {
    let mut meta = meta;
    meta.insert("text".into(), json!(format_ideal(ideal, vars)));
    json!({ "nvars": ideal.nvars(), "generators": generators(ideal), "meta": meta })
}

pub fn monomials(ms: &[ExponentVector], vars: &VarNames) -> String {
    ms.iter().map(|m| format_monomial(m, vars)).collect::<Vec<_>>().join(", ")
}

pub fn meta(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

pub fn verdict(holds: bool) -> &'static str {
    if holds {
        "holds"
    } else {
        "fails"
    }
}
