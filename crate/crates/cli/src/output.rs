use serde_json::Value;

/// A command result: a JSON document, an optional plain-text rendering used
/// by `--table`, and the exit code.
pub struct Document {
    value: Value,
    text: Option<String>,
    code: u8,
}

impl Document {
    pub fn new(value: Value) -> Self {
        Document { value, text: None, code: 0 }
    }

    pub fn with_text(mut self, mut text: String) -> Self {
        if !text.ends_with('\n') {
            text.push('\n');
        }
        self.text = Some(text);
        self
    }

    /// Marks a checked-false result.
    pub fn fail(mut self) -> Self {
        self.code = 1;
        self
    }

    pub fn check(self, ok: bool) -> Self {
        if ok { self } else { self.fail() }
    }

    pub fn code(&self) -> u8 {
        self.code
    }

    pub fn render(&self, table: bool) -> String {
        if !table {
            let mut s = serde_json::to_string_pretty(&self.value).expect("serializable");
            s.push('\n');
            return s;
        }
        if let Some(text) = &self.text {
            return text.clone();
        }
        let Value::Object(map) = &self.value else {
            return format!("{}\n", cell(&self.value));
        };
        let width = map.keys().map(String::len).max().unwrap_or(0);
        let mut out = String::new();
        for (key, value) in map {
            match value {
                Value::Array(items) if items.iter().any(|v| v.is_object() || v.is_array()) => {
                    out.push_str(&format!("{key}\n"));
                    for item in items {
                        out.push_str(&format!("  {}\n", cell(item)));
                    }
                }
                _ => out.push_str(&format!("{key:<width$}  {}\n", cell(value))),
            }
        }
        out
    }
}

fn cell(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}
