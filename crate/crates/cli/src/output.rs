use clap::ValueEnum;
use num_rational::BigRational;
use serde_json::{json, Value};
use vasskit::poly::fmt_rational;
use vasskit::Poly;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// A command result in both renderings.
pub struct Report {
    pub text: String,
    pub json: Value,
}

impl Report {
    pub fn new(text: impl Into<String>, json: Value) -> Self {
        Report { text: text.into(), json }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut t = self.text.clone();
                if !t.ends_with('\n') {
                    t.push('\n');
                }
                t
            }
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&self.json).expect("values serialize")),
        }
    }

    pub fn error_json(message: &str) -> String {
        format!("{}\n", serde_json::to_string_pretty(&json!({ "error": message })).expect("values serialize"))
    }
}

pub fn rational(r: &BigRational) -> Value {
    Value::String(fmt_rational(r))
}

/// A float rounded to 12 significant digits.
pub fn float(x: f64) -> Value {
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    json!(rounded)
}

pub fn float_text(x: f64) -> String {
    format!("{x:.12}")
}

pub fn poly(p: &Poly, var: &str) -> Value {
    json!({
        "polynomial": p.display_with(var),
        "coefficients": p.coeffs().iter().map(rational).collect::<Vec<_>>(),
    })
}
