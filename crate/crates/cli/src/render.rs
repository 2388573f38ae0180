use num_traits::ToPrimitive;
use nwalk_series::{q_to_string, Q};
use serde_json::Value;

/// Integers as JSON numbers of any size, other rationals as `"p/q"` strings.
pub fn q_json(q: &Q) -> Value {
    if q.is_integer() {
        Value::Number(serde_json::from_str(&q.to_integer().to_string()).expect("integer literal"))
    } else {
        Value::String(q_to_string(q))
    }
}

pub fn q_list(qs: &[Q]) -> Value {
    Value::Array(qs.iter().map(q_json).collect())
}

/// `1 + 7*t^2 + ...` with zero terms dropped.
pub fn series_text(coeffs: &[Q]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.numer().to_i64() != Some(0))
        .map(|(n, c)| {
            let c = q_to_string(c);
            match n {
                0 => c,
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{n}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
