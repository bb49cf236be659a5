//! Report writers. The machine format is JSON with every floating-point
//! value printed as a fixed 17-significant-digit decimal (`{:.16e}`), so
//! reports round-trip exactly and identical runs are byte-identical.

use std::str::FromStr;

use serde_json::{Map, Number, Value};

use curvlab_core::{CheckReport64, Verdict};

use crate::runner::{OracleReport, Report};

/// A float as a JSON number with a fixed decimal representation.
fn fnum(x: f64) -> Value {
    assert!(x.is_finite(), "reports never contain non-finite numbers");
    let x = if x == 0.0 { 0.0 } else { x }; // normalize -0.0
    Value::Number(Number::from_str(&format!("{x:.16e}")).expect("fixed format is a JSON number"))
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Equality => "equality",
    }
}

fn check_value(check: &CheckReport64) -> Value {
    let mut m = Map::new();
    m.insert("name".into(), Value::String(check.name.clone()));
    m.insert("lhs".into(), fnum(check.lhs));
    m.insert("rhs".into(), fnum(check.rhs));
    m.insert("margin".into(), fnum(check.margin));
    m.insert(
        "verdict".into(),
        Value::String(verdict_str(check.verdict).into()),
    );
    m.insert("notes".into(), Value::String(check.notes.clone()));
    Value::Object(m)
}

pub fn report_value(report: &Report) -> Value {
    let mut m = Map::new();
    m.insert("report".into(), Value::String("scenario".into()));
    m.insert("name".into(), Value::String(report.name.clone()));
    m.insert("kind".into(), Value::String(report.kind.clone()));
    m.insert("seed".into(), Value::from(report.seed));
    m.insert("samples".into(), Value::from(report.samples as u64));
    m.insert("tol".into(), fnum(report.tol));
    m.insert(
        "checks".into(),
        Value::Array(report.checks.iter().map(check_value).collect()),
    );
    if !report.verdicts.is_empty() {
        let mut v = Map::new();
        for (key, value) in &report.verdicts {
            v.insert(key.clone(), Value::String(value.clone()));
        }
        m.insert("verdicts".into(), Value::Object(v));
    }
    m.insert(
        "notes".into(),
        Value::Array(
            report
                .notes
                .iter()
                .map(|n| Value::String(n.clone()))
                .collect(),
        ),
    );
    m.insert("all_passed".into(), Value::Bool(report.all_passed()));
    Value::Object(m)
}

pub fn machine_report(report: &Report) -> String {
    let mut text = serde_json::to_string_pretty(&report_value(report))
        .expect("report serializes");
    text.push('\n');
    text
}

pub fn oracle_value(report: &OracleReport) -> Value {
    let case = |c: &crate::runner::OracleCase| {
        let mut m = Map::new();
        m.insert("label".into(), Value::String(c.label.clone()));
        m.insert("closed_form".into(), fnum(c.closed_form));
        m.insert("bruteforce".into(), fnum(c.bruteforce));
        m.insert("deviation".into(), fnum(c.deviation));
        Value::Object(m)
    };
    let mut m = Map::new();
    m.insert("report".into(), Value::String("oracle".into()));
    m.insert("count".into(), Value::from(report.count as u64));
    m.insert("samples".into(), Value::from(report.samples as u64));
    m.insert("seed".into(), Value::from(report.seed));
    m.insert("tolerance".into(), fnum(report.tolerance));
    m.insert("max_deviation".into(), fnum(report.max_deviation));
    m.insert(
        "models".into(),
        Value::Array(report.models.iter().map(case).collect()),
    );
    m.insert(
        "random".into(),
        Value::Array(report.random.iter().map(case).collect()),
    );
    m.insert("all_passed".into(), Value::Bool(report.all_passed()));
    Value::Object(m)
}

pub fn machine_oracle(report: &OracleReport) -> String {
    let mut text = serde_json::to_string_pretty(&oracle_value(report))
        .expect("oracle report serializes");
    text.push('\n');
    text
}

pub fn table_report(report: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "scenario {} ({})  seed={} samples={} tol={:e}\n\n",
        report.name, report.kind, report.seed, report.samples, report.tol
    ));
    let name_width = report
        .checks
        .iter()
        .map(|c| c.name.len())
        .max()
        .unwrap_or(4)
        .max(5);
    out.push_str(&format!(
        "{:<name_width$}  {:>24}  {:>24}  {:>24}  {:<8}\n",
        "check", "lhs", "rhs", "margin", "verdict"
    ));
    for c in &report.checks {
        out.push_str(&format!(
            "{:<name_width$}  {:>24.16e}  {:>24.16e}  {:>24.16e}  {:<8}\n",
            c.name,
            c.lhs,
            c.rhs,
            c.margin,
            verdict_str(c.verdict)
        ));
        if !c.notes.is_empty() {
            out.push_str(&format!("{:<name_width$}    {}\n", "", c.notes));
        }
    }
    for (key, value) in &report.verdicts {
        out.push_str(&format!("\nverdict {key}: {value}\n"));
    }
    for note in &report.notes {
        out.push_str(&format!("\nnote: {note}\n"));
    }
    out.push_str(&format!(
        "\n{}\n",
        if report.all_passed() {
            "all checks passed"
        } else {
            "CHECK FAILURES PRESENT"
        }
    ));
    out
}

pub fn table_oracle(report: &OracleReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "oracle campaign  count={} samples={} seed={} tolerance={:e}\n\n",
        report.count, report.samples, report.seed, report.tolerance
    ));
    out.push_str(&format!(
        "{:<12}  {:>24}  {:>24}  {:>12}\n",
        "case", "closed form", "brute force", "deviation"
    ));
    for c in report.models.iter().chain(report.random.iter()) {
        out.push_str(&format!(
            "{:<12}  {:>24.16e}  {:>24.16e}  {:>12.3e}\n",
            c.label, c.closed_form, c.bruteforce, c.deviation
        ));
    }
    out.push_str(&format!(
        "\nmax deviation {:.3e} ({})\n",
        report.max_deviation,
        if report.all_passed() {
            "within tolerance"
        } else {
            "EXCEEDS TOLERANCE"
        }
    ));
    out
}
