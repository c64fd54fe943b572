//! Check reports and deterministic JSON/CSV serialization.
//!
//! Every verification suite produces [`CheckReport`] records, and a CLI run
//! wraps them in a [`RunDocument`]. Serialization is byte-deterministic: keys
//! are written in insertion order and floating-point numbers are printed with
//! 17 significant digits (`{:.16e}`), which round-trips every finite `f64`
//! exactly. Non-finite floats, which JSON cannot represent as numbers, are
//! written as the strings `"inf"`, `"-inf"`, `"nan"`.

use std::fmt::Write as _;

/// Minimal JSON value with deterministic, order-preserving serialization.
#[derive(Debug, Clone, PartialEq)]
pub enum JsonValue {
    /// JSON null.
    Null,
    /// JSON boolean.
    Bool(bool),
    /// Integer (serialized without a decimal point).
    Int(i64),
    /// Unsigned integer (seeds and sample counts).
    UInt(u64),
    /// Floating-point number, printed with 17 significant digits.
    Float(f64),
    /// String.
    Str(String),
    /// Array.
    Array(Vec<JsonValue>),
    /// Object with keys in insertion order.
    Object(Vec<(String, JsonValue)>),
}

impl JsonValue {
    /// Serializes into `out` (compact form, no whitespace).
    pub fn write(&self, out: &mut String) {
        match self {
            JsonValue::Null => out.push_str("null"),
            JsonValue::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            JsonValue::Int(i) => {
                let _ = write!(out, "{i}");
            }
            JsonValue::UInt(u) => {
                let _ = write!(out, "{u}");
            }
            JsonValue::Float(x) => write_f64(out, *x),
            JsonValue::Str(s) => write_json_string(out, s),
            JsonValue::Array(items) => {
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    item.write(out);
                }
                out.push(']');
            }
            JsonValue::Object(fields) => {
                out.push('{');
                for (i, (k, v)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    write_json_string(out, k);
                    out.push(':');
                    v.write(out);
                }
                out.push('}');
            }
        }
    }

    /// Serializes to a fresh string.
    pub fn to_json_string(&self) -> String {
        let mut s = String::new();
        self.write(&mut s);
        s
    }
}

impl From<&str> for JsonValue {
    fn from(s: &str) -> Self {
        JsonValue::Str(s.to_string())
    }
}

impl From<f64> for JsonValue {
    fn from(x: f64) -> Self {
        JsonValue::Float(x)
    }
}

impl From<u64> for JsonValue {
    fn from(x: u64) -> Self {
        JsonValue::UInt(x)
    }
}

/// Writes a float with 17 significant digits (exact f64 round-trip), or as a
/// quoted string when not finite.
fn write_f64(out: &mut String, x: f64) {
    if x.is_finite() {
        let _ = write!(out, "{x:.16e}");
    } else if x.is_nan() {
        out.push_str("\"nan\"");
    } else if x > 0.0 {
        out.push_str("\"inf\"");
    } else {
        out.push_str("\"-inf\"");
    }
}

fn write_json_string(out: &mut String, s: &str) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

/// Outcome of one verification suite run.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    /// Suite identifier (e.g. `"diastasis_bound"`).
    pub suite: String,
    /// Parameters the suite ran with, in insertion order.
    pub params: Vec<(String, JsonValue)>,
    /// Worst observed statistic (suite-specific; compared against `bound`).
    pub statistic: f64,
    /// Bound the statistic must not exceed.
    pub bound: f64,
    /// Whether the suite passed.
    pub pass: bool,
    /// Number of samples or evaluation nodes consumed.
    pub n_samples: u64,
    /// RNG seed the run was keyed on (0 for deterministic suites).
    pub seed: u64,
    /// Human-readable notes (worst point, sub-statistics, ...).
    pub details: String,
}

impl CheckReport {
    /// New report with the pass flag derived from `statistic <= bound`.
    ///
    /// A NaN statistic never passes.
    pub fn from_statistic(
        suite: impl Into<String>,
        params: Vec<(String, JsonValue)>,
        statistic: f64,
        bound: f64,
        n_samples: u64,
        seed: u64,
        details: impl Into<String>,
    ) -> Self {
        CheckReport {
            suite: suite.into(),
            params,
            statistic,
            bound,
            pass: statistic <= bound,
            n_samples,
            seed,
            details: details.into(),
        }
    }

    /// JSON form with a fixed field order.
    pub fn to_json(&self) -> JsonValue {
        JsonValue::Object(vec![
            ("suite".into(), JsonValue::Str(self.suite.clone())),
            ("params".into(), JsonValue::Object(self.params.clone())),
            ("statistic".into(), JsonValue::Float(self.statistic)),
            ("bound".into(), JsonValue::Float(self.bound)),
            ("pass".into(), JsonValue::Bool(self.pass)),
            ("n_samples".into(), JsonValue::UInt(self.n_samples)),
            ("seed".into(), JsonValue::UInt(self.seed)),
            ("details".into(), JsonValue::Str(self.details.clone())),
        ])
    }

    /// One-line human-readable summary.
    pub fn summary_line(&self) -> String {
        format!(
            "[{}] {:<24} statistic {:.6e} vs bound {:.6e} ({} samples)",
            if self.pass { "PASS" } else { "FAIL" },
            self.suite,
            self.statistic,
            self.bound,
            self.n_samples
        )
    }
}

/// Top-level document produced by a CLI invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunDocument {
    /// Subcommand name.
    pub command: String,
    /// Invocation parameters, in insertion order.
    pub params: Vec<(String, JsonValue)>,
    /// Reports from each suite that ran.
    pub results: Vec<CheckReport>,
    /// Conjunction of all `results[i].pass`.
    pub pass: bool,
}

impl RunDocument {
    /// Wraps reports, deriving the global pass flag.
    pub fn new(
        command: impl Into<String>,
        params: Vec<(String, JsonValue)>,
        results: Vec<CheckReport>,
    ) -> Self {
        let pass = results.iter().all(|r| r.pass);
        RunDocument {
            command: command.into(),
            params,
            results,
            pass,
        }
    }

    /// Byte-deterministic JSON (single line, trailing newline).
    pub fn to_json_string(&self) -> String {
        let doc = JsonValue::Object(vec![
            ("command".into(), JsonValue::Str(self.command.clone())),
            ("params".into(), JsonValue::Object(self.params.clone())),
            (
                "results".into(),
                JsonValue::Array(self.results.iter().map(CheckReport::to_json).collect()),
            ),
            ("pass".into(), JsonValue::Bool(self.pass)),
        ]);
        let mut s = doc.to_json_string();
        s.push('\n');
        s
    }
}

/// Writes sampled rows as CSV with 17-digit floats (for `--dump-samples`).
pub fn write_samples_csv<W: std::io::Write>(
    out: &mut W,
    header: &[&str],
    rows: &[Vec<f64>],
) -> std::io::Result<()> {
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        let mut line = String::new();
        for (i, x) in row.iter().enumerate() {
            if i > 0 {
                line.push(',');
            }
            let _ = write!(line, "{x:.16e}");
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}
