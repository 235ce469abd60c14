//! Canonical JSON: object keys sorted (serde_json's default map is a
//! BTreeMap), floats rendered at 17 significant digits, no insignificant
//! whitespace. Identical values serialize to identical bytes, which is what
//! golden-file tests and reproducibility checks compare.

use serde_json::ser::Formatter;
use serde_json::Value;

/// 17 significant digits: enough to round-trip every `f64` exactly.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

struct CanonicalFormatter;

impl Formatter for CanonicalFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        writer.write_all(fmt_f64(value).as_bytes())
    }
}

/// Serializes a JSON value canonically.
pub fn to_canonical_string(value: &Value) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, CanonicalFormatter);
    serde::Serialize::serialize(value, &mut ser).expect("in-memory serialization");
    String::from_utf8(out).expect("canonical JSON is UTF-8")
}

/// Human-readable rounding used in the table output next to the canonical
/// column.
pub fn fmt_rounded(v: f64) -> String {
    format!("{v:.6}")
}
