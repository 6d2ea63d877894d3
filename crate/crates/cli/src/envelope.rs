use serde::Serialize;
use serde_json::{Map, Value};

/// Bumped whenever the shape of a payload changes.
pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Serialize)]
pub struct Envelope {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub inputs: Map<String, Value>,
    pub result: Value,
    pub warnings: Vec<Value>,
}

impl Envelope {
    pub fn new(command: &'static str, inputs: Map<String, Value>, result: Value) -> Self {
        Envelope {
            schema_version: SCHEMA_VERSION,
            command,
            inputs,
            result,
            warnings: Vec::new(),
        }
    }

    pub fn with_warnings<W: Serialize>(mut self, warnings: &[W]) -> Self {
        self.warnings = warnings.iter().map(to_value).collect();
        self
    }

    pub fn render(&self) -> String {
        render_json(self)
    }
}

pub fn to_value<T: Serialize + ?Sized>(v: &T) -> Value {
    serde_json::to_value(v).expect("payloads serialize to JSON")
}

/// Pretty JSON with a trailing newline.
pub fn render_json<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("payloads serialize to JSON");
    s.push('\n');
    s
}

/// Echo of the command-line inputs. Every number is a decimal string.
#[derive(Default)]
pub struct Inputs(Map<String, Value>);

impl Inputs {
    pub fn num(mut self, key: &str, v: &impl ToString) -> Self {
        self.0.insert(key.into(), Value::String(v.to_string()));
        self
    }

    pub fn opt_num(mut self, key: &str, v: Option<&impl ToString>) -> Self {
        let v = v.map_or(Value::Null, |v| Value::String(v.to_string()));
        self.0.insert(key.into(), v);
        self
    }

    pub fn list<T: ToString>(mut self, key: &str, v: Option<&[T]>) -> Self {
        let v = v.map_or(Value::Null, |v| {
            Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
        });
        self.0.insert(key.into(), v);
        self
    }

    pub fn flag(mut self, key: &str, v: bool) -> Self {
        self.0.insert(key.into(), Value::Bool(v));
        self
    }

    pub fn text(mut self, key: &str, v: Option<&str>) -> Self {
        let v = v.map_or(Value::Null, |v| Value::String(v.to_string()));
        self.0.insert(key.into(), v);
        self
    }

    pub fn finish(self) -> Map<String, Value> {
        self.0
    }
}
