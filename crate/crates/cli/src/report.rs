//! The report document and its two renderings.

use serde_json::{json, Value};
use tropbasis::trop::TropMatrix;

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub certificates: Value,
    pub error: Option<String>,
}

impl Report {
    pub fn new(command: &str, inputs: Value) -> Self {
        Report {
            command: command.to_string(),
            inputs,
            result: Value::Null,
            certificates: Value::Null,
            error: None,
        }
    }

    pub fn to_json(&self) -> Value {
        let status = match &self.error {
            None => json!("ok"),
            Some(m) => json!({ "error": m }),
        };
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "certificates": self.certificates,
            "status": status,
        })
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string(&self.to_json()).expect("plain values serialize");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        if let Some(v) = self.result.get("verdict").and_then(Value::as_str) {
            out.push_str(v);
            out.push('\n');
        }
        match &self.error {
            Some(m) => out.push_str(&format!("error: {m}\n")),
            None => {
                write_fields(&mut out, &self.result, "verdict");
                if let Value::Object(c) = &self.certificates {
                    if !c.is_empty() {
                        out.push_str("certificates:\n");
                        write_fields(&mut out, &self.certificates, "");
                    }
                }
            }
        }
        out
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

fn write_fields(out: &mut String, v: &Value, skip: &str) {
    let Value::Object(map) = v else {
        return;
    };
    for (k, v) in map {
        if k == skip {
            continue;
        }
        match v {
            Value::Array(items)
                if items
                    .iter()
                    .any(|x| x.is_array() || x.is_object() || x.as_str().is_some_and(|s| s.contains(' '))) =>
            {
                out.push_str(&format!("{k}:\n"));
                for x in items {
                    match x {
                        Value::Array(row) => {
                            let row: Vec<String> = row.iter().map(scalar).collect();
                            out.push_str(&format!("  {}\n", row.join(" ")));
                        }
                        other => out.push_str(&format!("  {}\n", scalar(other))),
                    }
                }
            }
            Value::Array(items) => {
                let items: Vec<String> = items.iter().map(scalar).collect();
                out.push_str(&format!("{k}: {}\n", items.join(" ")));
            }
            Value::Object(_) => out.push_str(&format!("{k}: {v}\n")),
            other => out.push_str(&format!("{k}: {}\n", scalar(other))),
        }
    }
}

pub fn matrix_json(m: &TropMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}
