//! JSON report building. Object keys are emitted in sorted order and every
//! float is rounded to 12 significant digits, so reports diff cleanly.

use netgood_core::matrix_analysis::Citation;
use netgood_core::{ClassificationReport, ExistenceVerdict, UniquenessVerdict};
use serde_json::{json, Value};

pub const SIGNIFICANT_DIGITS: usize = 12;

pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// A float as JSON; non-finite values become strings.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(round_sig(x))
    } else {
        json!(x.to_string())
    }
}

pub fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

pub fn opt_num(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

pub fn uniqueness(v: UniquenessVerdict) -> &'static str {
    match v {
        UniquenessVerdict::Unique => "unique",
        UniquenessVerdict::NotUnique => "not_unique",
    }
}

pub fn existence(v: ExistenceVerdict) -> &'static str {
    match v {
        ExistenceVerdict::Always => "always",
        ExistenceVerdict::IffSpectralRadiusLtOne => "iff_spectral_radius_lt_one",
        ExistenceVerdict::Inconclusive => "inconclusive",
    }
}

pub fn classification(r: &ClassificationReport) -> Value {
    json!({
        "p_matrix": r.is_p,
        "z_matrix": r.is_z,
        "l_matrix": r.is_l,
        "s_matrix": r.is_s,
        "strictly_diagonally_dominant": r.is_sdd,
        "nonnegative": r.is_nonnegative,
        "symmetric": r.is_symmetric,
        "spectral_radius": num(r.spectral_radius),
        "min_real_eigenvalue": opt_num(r.min_real_eigenvalue),
        "uniqueness": uniqueness(r.uniqueness_verdict),
        "existence": existence(r.existence_verdict),
        "exists_for_all_targets": r.exists_for_all_targets(),
        "citations": r.citations.iter().map(|c: &Citation| c.tag()).collect::<Vec<_>>(),
    })
}

pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}
