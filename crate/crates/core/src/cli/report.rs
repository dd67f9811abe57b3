//! Deterministic report values: sorted keys, floats at 12 significant digits.

use serde::Serialize;
use serde_json::Value;

/// `x` rounded to 12 significant digits; `-0.0` becomes `0.0`.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Round every float in place. Object keys are already sorted because
/// `serde_json::Map` is ordered.
pub fn normalize(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().expect("f64 number"));
            *v = serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(normalize),
        Value::Object(map) => map.values_mut().for_each(normalize),
        _ => {}
    }
}

/// Serialize and normalize.
pub fn to_value<T: Serialize>(x: &T) -> Value {
    let mut v = serde_json::to_value(x).expect("report types serialize");
    normalize(&mut v);
    v
}

pub fn render(v: &Value) -> String {
    let mut v = v.clone();
    normalize(&mut v);
    let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn rounding() {
        assert_eq!(round_sig(1.0 / 3.0), 0.333333333333);
        assert_eq!(round_sig(-0.0), 0.0);
        assert_eq!(round_sig(5.000000000000001), 5.0);
        assert_eq!(round_sig(123456789012345.0), 123456789012000.0);
        assert_eq!(round_sig(round_sig(2.0f64.sqrt())), round_sig(2.0f64.sqrt()));
    }

    #[test]
    fn keys_sorted_and_floats_rounded() {
        let v = json!({"zeta": 1, "alpha": [0.1 + 0.2, -0.0], "mid": {"b": 1e-17, "a": true}});
        assert_eq!(
            render(&v),
            "{\n  \"alpha\": [\n    0.3,\n    0.0\n  ],\n  \"mid\": {\n    \"a\": true,\n    \"b\": 1e-17\n  },\n  \"zeta\": 1\n}\n"
        );
    }
}
