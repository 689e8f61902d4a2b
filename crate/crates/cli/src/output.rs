//! CSV and JSON writers for every report type.
//!
//! All numbers are formatted with 17 significant digits so downstream
//! byte comparisons are never quantized by the serialization. JSON is
//! written by hand for the same reason: the schema is small, flat, and
//! must be byte-stable across runs. Nothing here emits timestamps.

use qfisher_core::{
    EstimatorReport, FisherResult, Grid1D, KLScanResult, MomentumIdentity, UncertaintyReport,
};

pub const SCHEMA_VERSION: &str = "1";

/// 17 significant digits; round-trips any finite f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn json_escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    for c in text.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// Minimal RFC-4180 quoting: only fields containing separators or quotes
/// are wrapped.
fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

#[derive(Debug, Clone)]
pub enum JsonValue {
    Str(String),
    Num(f64),
    Int(i64),
    Bool(bool),
    Array(Vec<JsonValue>),
    Object(Vec<(String, JsonValue)>),
}

impl JsonValue {
    fn write(&self, out: &mut String) {
        match self {
            JsonValue::Str(s) => {
                out.push('"');
                out.push_str(&json_escape(s));
                out.push('"');
            }
            JsonValue::Num(x) => out.push_str(&fmt_f64(*x)),
            JsonValue::Int(i) => out.push_str(&i.to_string()),
            JsonValue::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
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
                for (i, (key, value)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('"');
                    out.push_str(&json_escape(key));
                    out.push_str("\":");
                    value.write(out);
                }
                out.push('}');
            }
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out);
        out.push('\n');
        out
    }
}

fn obj(fields: Vec<(&str, JsonValue)>) -> JsonValue {
    JsonValue::Object(
        fields
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
    )
}

fn grid_json(grid: Grid1D) -> JsonValue {
    obj(vec![
        ("x_min", JsonValue::Num(grid.x_min())),
        ("x_max", JsonValue::Num(grid.x_max())),
        ("n_points", JsonValue::Int(grid.n_points() as i64)),
        ("spacing", JsonValue::Num(grid.spacing())),
    ])
}

fn header(command: &str, grid: Grid1D, state: &str, hbar: f64) -> Vec<(&'static str, JsonValue)> {
    vec![
        ("schema_version", JsonValue::Str(SCHEMA_VERSION.to_string())),
        ("command", JsonValue::Str(command.to_string())),
        ("grid", grid_json(grid)),
        ("state", JsonValue::Str(state.to_string())),
        ("hbar", JsonValue::Num(hbar)),
    ]
}

fn fisher_json(result: &FisherResult) -> JsonValue {
    obj(vec![
        ("method", JsonValue::Str(result.method.label().to_string())),
        ("value", JsonValue::Num(result.value)),
        ("excluded_mass", JsonValue::Num(result.excluded_mass)),
    ])
}

pub fn fisher_report_json(
    grid: Grid1D,
    state: &str,
    hbar: f64,
    location: &FisherResult,
    amplitude: &FisherResult,
    identity: &MomentumIdentity,
) -> String {
    let mut fields = header("fisher", grid, state, hbar);
    fields.push(("location", fisher_json(location)));
    fields.push(("amplitude", fisher_json(amplitude)));
    fields.push((
        "momentum_identity",
        obj(vec![
            ("lhs", JsonValue::Num(identity.lhs)),
            ("rhs", JsonValue::Num(identity.rhs)),
            ("relative_gap", JsonValue::Num(identity.relative_gap)),
        ]),
    ));
    JsonValue::Object(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect()).render()
}

pub fn fisher_report_csv(
    location: &FisherResult,
    amplitude: &FisherResult,
    identity: &MomentumIdentity,
) -> String {
    let mut out = String::from("metric,value\n");
    let rows = [
        ("location_method", location.method.label().to_string()),
        ("location_value", fmt_f64(location.value)),
        ("location_excluded_mass", fmt_f64(location.excluded_mass)),
        ("amplitude_method", amplitude.method.label().to_string()),
        ("amplitude_value", fmt_f64(amplitude.value)),
        ("amplitude_excluded_mass", fmt_f64(amplitude.excluded_mass)),
        ("identity_lhs", fmt_f64(identity.lhs)),
        ("identity_rhs", fmt_f64(identity.rhs)),
        ("identity_relative_gap", fmt_f64(identity.relative_gap)),
    ];
    for (metric, value) in rows {
        out.push_str(&format!("{},{}\n", csv_field(metric), csv_field(&value)));
    }
    out
}

pub fn scan_csv(scan: &KLScanResult) -> String {
    let mut out = String::from("delta,kl,quadratic,residual\n");
    for i in 0..scan.shifts.len() {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_f64(scan.shifts[i]),
            fmt_f64(scan.kl_values[i]),
            fmt_f64(scan.quadratic_values[i]),
            fmt_f64(scan.residuals[i]),
        ));
    }
    out
}

pub fn scan_json(grid: Grid1D, state: &str, hbar: f64, fisher: f64, scan: &KLScanResult) -> String {
    let mut fields = header("kl-scan", grid, state, hbar);
    fields.push(("fisher_value", JsonValue::Num(fisher)));
    let rows: Vec<JsonValue> = (0..scan.shifts.len())
        .map(|i| {
            obj(vec![
                ("delta", JsonValue::Num(scan.shifts[i])),
                ("kl", JsonValue::Num(scan.kl_values[i])),
                ("quadratic", JsonValue::Num(scan.quadratic_values[i])),
                ("residual", JsonValue::Num(scan.residuals[i])),
            ])
        })
        .collect();
    fields.push(("rows", JsonValue::Array(rows)));
    JsonValue::Object(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect()).render()
}

pub fn uncertainty_csv(report: &UncertaintyReport) -> String {
    let mut out = String::from("metric,value\n");
    let rows = [
        ("delta_x", fmt_f64(report.delta_x)),
        ("delta_p", fmt_f64(report.delta_p)),
        ("product", fmt_f64(report.product)),
        ("bound", fmt_f64(report.bound)),
        ("fisher_value", fmt_f64(report.fisher_value)),
        ("hbar", fmt_f64(report.hbar)),
        ("saturates_bound", report.saturates_bound.to_string()),
    ];
    for (metric, value) in rows {
        out.push_str(&format!("{},{}\n", csv_field(metric), csv_field(&value)));
    }
    out
}

pub fn uncertainty_json(grid: Grid1D, state: &str, report: &UncertaintyReport) -> String {
    let mut fields = header("uncertainty", grid, state, report.hbar);
    fields.push(("delta_x", JsonValue::Num(report.delta_x)));
    fields.push(("delta_p", JsonValue::Num(report.delta_p)));
    fields.push(("product", JsonValue::Num(report.product)));
    fields.push(("bound", JsonValue::Num(report.bound)));
    fields.push(("fisher_value", JsonValue::Num(report.fisher_value)));
    fields.push(("saturates_bound", JsonValue::Bool(report.saturates_bound)));
    JsonValue::Object(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect()).render()
}

pub fn probe_csv(rows: &[(f64, f64)]) -> String {
    let mut out = String::from("amplitude,product\n");
    for (amplitude, product) in rows {
        out.push_str(&format!("{},{}\n", fmt_f64(*amplitude), fmt_f64(*product)));
    }
    out
}

pub fn probe_json(grid: Grid1D, state: &str, hbar: f64, rows: &[(f64, f64)]) -> String {
    let mut fields = header("gaussian-min", grid, state, hbar);
    let items: Vec<JsonValue> = rows
        .iter()
        .map(|(a, p)| {
            obj(vec![
                ("amplitude", JsonValue::Num(*a)),
                ("product", JsonValue::Num(*p)),
            ])
        })
        .collect();
    fields.push(("rows", JsonValue::Array(items)));
    JsonValue::Object(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect()).render()
}

pub fn estimator_report_json(
    grid: Grid1D,
    state: &str,
    hbar: f64,
    estimator: &str,
    seed: u64,
    report: &EstimatorReport,
) -> String {
    let mut fields = header("cr-sim", grid, state, hbar);
    fields.push(("estimator", JsonValue::Str(estimator.to_string())));
    fields.push(("seed", JsonValue::Int(seed as i64)));
    fields.push(("n_samples", JsonValue::Int(report.n_samples as i64)));
    fields.push(("n_trials", JsonValue::Int(report.n_trials as i64)));
    fields.push(("theta", JsonValue::Num(report.theta)));
    fields.push(("empirical_mean", JsonValue::Num(report.empirical_mean)));
    fields.push((
        "empirical_variance",
        JsonValue::Num(report.empirical_variance),
    ));
    fields.push((
        "variance_std_error",
        JsonValue::Num(report.variance_std_error),
    ));
    fields.push(("bias_slope", JsonValue::Num(report.bias_slope)));
    fields.push(("cr_bound", JsonValue::Num(report.cr_bound)));
    fields.push(("bound_satisfied", JsonValue::Bool(report.bound_satisfied)));
    JsonValue::Object(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect()).render()
}

pub fn trials_csv(estimates: &[f64]) -> String {
    let mut out = String::from("trial,estimate\n");
    for (i, value) in estimates.iter().enumerate() {
        out.push_str(&format!("{},{}\n", i, fmt_f64(*value)));
    }
    out
}
