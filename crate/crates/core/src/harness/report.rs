use serde_json::{Map, Value};

use crate::rational::{to_decimal_string, to_ratio_string, Rational};
use crate::simple_function::VectorValue;

/// Significant digits of every `_decimal` companion field.
pub const DECIMAL_DIGITS: usize = 12;

/// A flat JSON object whose keys keep insertion order. Every rational is
/// written as an exact `"p/q"` string followed by a `<key>_decimal` field.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    fields: Map<String, Value>,
}

impl Report {
    pub fn new(task: &str) -> Self {
        let mut r = Report::default();
        r.text("task", task);
        r
    }

    pub fn text(&mut self, key: &str, value: impl Into<String>) -> &mut Self {
        self.fields.insert(key.into(), Value::String(value.into()));
        self
    }

    pub fn integer(&mut self, key: &str, value: u64) -> &mut Self {
        self.fields.insert(key.into(), Value::from(value));
        self
    }

    pub fn flag(&mut self, key: &str, value: bool) -> &mut Self {
        self.fields.insert(key.into(), Value::Bool(value));
        self
    }

    pub fn rational(&mut self, key: &str, value: &Rational) -> &mut Self {
        self.fields.insert(key.into(), Value::String(to_ratio_string(value)));
        self.fields
            .insert(format!("{key}_decimal"), Value::String(to_decimal_string(value, DECIMAL_DIGITS)));
        self
    }

    pub fn vector(&mut self, key: &str, value: &VectorValue) -> &mut Self {
        let exact = value.0.iter().map(|c| Value::String(to_ratio_string(c))).collect();
        let decimal = value
            .0
            .iter()
            .map(|c| Value::String(to_decimal_string(c, DECIMAL_DIGITS)))
            .collect();
        self.fields.insert(key.into(), Value::Array(exact));
        self.fields.insert(format!("{key}_decimal"), Value::Array(decimal));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.get(key)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.fields.keys().map(String::as_str)
    }

    /// Pretty JSON with a trailing newline.
    pub fn render(&self) -> String {
        let mut out = serde_json::to_string_pretty(&self.fields).expect("string keys serialize");
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, parse_rational, rat};

    #[test]
    fn fixed_order_and_decimal_companions() {
        let mut r = Report::new("compare");
        r.rational("mi", &rat(1, 2)).flag("ok", true).integer("depth", 20);
        r.vector("value", &VectorValue::new(vec![rat(1, 3), int(1)]));
        let keys: Vec<_> = r.keys().collect();
        assert_eq!(keys, ["task", "mi", "mi_decimal", "ok", "depth", "value", "value_decimal"]);
        assert_eq!(r.get("mi_decimal").unwrap(), "0.5");
        assert_eq!(r.get("value_decimal").unwrap()[0], "0.333333333333");
        assert!(r.render().ends_with("}\n"));
    }

    #[test]
    fn exact_fields_round_trip() {
        let x = rat(-7, 524288);
        let mut r = Report::new("t");
        r.rational("x", &x);
        assert_eq!(parse_rational(r.get("x").unwrap().as_str().unwrap()).unwrap(), x);
    }
}
