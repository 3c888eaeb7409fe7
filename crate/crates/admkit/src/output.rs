use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::{Config, Format};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub passed: bool,
}

/// Everything a command prints. Wall time is reported on stderr only, so the
/// payload is byte-identical across runs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Vec<String>,
    pub config: Config,
    pub results: Value,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Csv => {
                let (headers, rows) = tabulate(&self.results);
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&headers).expect("in-memory write");
                for r in rows {
                    w.write_record(&r).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
            }
            Format::Table => {
                let (headers, rows) = tabulate(&self.results);
                let mut out = text_table(&headers, &rows);
                if !self.checks.is_empty() {
                    let rows: Vec<Vec<String>> = self
                        .checks
                        .iter()
                        .map(|c| vec![c.id.clone(), if c.passed { "pass" } else { "FAIL" }.into()])
                        .collect();
                    out.push('\n');
                    out.push_str(&text_table(&["check".into(), "result".into()], &rows));
                }
                out
            }
        }
    }
}

/// Plain-text form of a cell: rationals as `n/d`, doubled grades as halves.
pub fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(cell).collect::<Vec<_>>().join(" "),
        Value::Object(o) => {
            if let (Some(Value::String(n)), Some(Value::String(d)), 2) = (o.get("num"), o.get("den"), o.len()) {
                return if d == "1" { n.clone() } else { format!("{n}/{d}") };
            }
            if let (Some(Value::Number(x)), 1) = (o.get("x2"), o.len()) {
                let x = x.as_i64().unwrap_or(0);
                return if x % 2 == 0 { (x / 2).to_string() } else { format!("{x}/2") };
            }
            if let (Some(a), Some(d), 2) = (o.get("alpha"), o.get("delta"), o.len()) {
                return format!("{}α+{}δ", cell(a), cell(d));
            }
            if let (Some(r), 1..=2) = (o.get("r"), o.len()) {
                return match o.get("xi") {
                    Some(x) => format!("{}+({})ξ", cell(r), cell(x)),
                    None => cell(r),
                };
            }
            if let (Some(Value::Array(vars)), Some(Value::Array(terms)), 2) = (o.get("vars"), o.get("terms"), o.len()) {
                return poly_cell(vars, terms);
            }
            if let Some(Value::Bool(h)) = o.get("holds") {
                return h.to_string();
            }
            serde_json::to_string(v).expect("values serialize")
        }
    }
}

fn poly_cell(vars: &[Value], terms: &[Value]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let names: Vec<String> = vars.iter().map(cell).collect();
    let term = |t: &Value| {
        let coeff = cell(&serde_json::json!({"num": t["num"], "den": t["den"]}));
        let mut factors = vec![coeff];
        if let Some(exp) = t["exp"].as_array() {
            for (name, e) in names.iter().zip(exp) {
                match e.as_u64() {
                    Some(0) | None => {}
                    Some(1) => factors.push(name.clone()),
                    Some(e) => factors.push(format!("{name}^{e}")),
                }
            }
        }
        factors.join("*")
    };
    terms.iter().map(term).collect::<Vec<_>>().join(" + ").replace("+ -", "- ")
}

/// Rows of a payload: arrays of objects become one row each; objects with a
/// `rows` array use that array; other objects become key/value pairs.
pub fn tabulate(v: &Value) -> (Vec<String>, Vec<Vec<String>>) {
    let rows_of = |a: &Vec<Value>| -> Option<(Vec<String>, Vec<Vec<String>>)> {
        let first = a.first()?.as_object()?;
        let headers: Vec<String> = first.keys().cloned().collect();
        let rows = a
            .iter()
            .map(|r| headers.iter().map(|h| r.get(h).map(cell).unwrap_or_default()).collect())
            .collect();
        Some((headers, rows))
    };
    match v {
        Value::Array(a) => rows_of(a).unwrap_or_else(|| (vec!["value".into()], a.iter().map(|x| vec![cell(x)]).collect())),
        Value::Object(o) => {
            if let Some(Value::Array(a)) = o.get("rows") {
                if let Some(t) = rows_of(a) {
                    return t;
                }
            }
            let rows = o.iter().map(|(k, x)| vec![k.clone(), cell(x)]).collect();
            (vec!["key".into(), "value".into()], rows)
        }
        other => (vec!["value".into()], vec![vec![cell(other)]]),
    }
}

pub fn text_table(headers: &[String], rows: &[Vec<String>]) -> String {
    let ncols = headers.len().max(rows.iter().map(Vec::len).max().unwrap_or(0));
    let mut width = vec![0usize; ncols];
    for r in std::iter::once(headers).chain(rows.iter().map(Vec::as_slice)) {
        for (i, c) in r.iter().enumerate() {
            width[i] = width[i].max(c.chars().count());
        }
    }
    let line = |r: &[String]| {
        let cells: Vec<String> = (0..ncols)
            .map(|i| {
                let c = r.get(i).map(String::as_str).unwrap_or("");
                format!("{c}{}", " ".repeat(width[i] - c.chars().count()))
            })
            .collect();
        let mut s = cells.join("  ").trim_end().to_string();
        s.push('\n');
        s
    };
    let mut out = line(headers);
    out.push_str(&line(&width.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>()));
    for r in rows {
        out.push_str(&line(r));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn cells() {
        assert_eq!(cell(&json!({"num": "-1", "den": "3"})), "-1/3");
        assert_eq!(cell(&json!({"num": "4", "den": "1"})), "4");
        assert_eq!(cell(&json!({"x2": 7})), "7/2");
        assert_eq!(cell(&json!({"alpha": 1, "delta": 2})), "1α+2δ");
        assert_eq!(cell(&json!([1, 2])), "1 2");
        assert_eq!(cell(&Value::Null), "-");
        let p = json!({"vars": ["h", "c"], "terms": [
            {"exp": [2, 0], "num": "1", "den": "1"},
            {"exp": [0, 1], "num": "-1", "den": "2"},
        ]});
        assert_eq!(cell(&p), "1*h^2 - 1/2*c");
    }

    #[test]
    fn tables() {
        let v = json!({"p": 4, "rows": [{"r": 1, "h": {"num": "1", "den": "2"}}, {"r": 2, "h": {"num": "0", "den": "1"}}]});
        let (h, rows) = tabulate(&v);
        assert_eq!(h, ["r", "h"]);
        assert_eq!(rows, [["1", "1/2"], ["2", "0"]]);
        let t = text_table(&h, &rows);
        assert_eq!(t, "r  h\n-  ---\n1  1/2\n2  0\n");
    }
}
