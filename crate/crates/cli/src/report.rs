use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    /// `key: value` lines; complex-producing commands print the complex.
    Plain,
    /// One JSON object with the command, input digest, results and log.
    Structured,
}

pub fn digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

/// Result of one command. Fields keep insertion order in plain output;
/// structured output sorts keys, so both are byte-stable.
#[derive(Debug)]
pub struct Report {
    command: String,
    input_digest: Option<String>,
    seed: Option<u64>,
    fields: Vec<(String, Value)>,
    log: Vec<String>,
    /// Canonical text of a produced complex or graph.
    artifact: Option<String>,
    pub passed: bool,
}

impl Report {
    pub fn new(command: &str, input_digest: Option<String>, seed: Option<u64>) -> Self {
        Report {
            command: command.to_string(),
            input_digest,
            seed,
            fields: Vec::new(),
            log: Vec::new(),
            artifact: None,
            passed: true,
        }
    }

    pub fn field(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    pub fn log(&mut self, line: impl Into<String>) -> &mut Self {
        self.log.push(line.into());
        self
    }

    pub fn artifact(&mut self, text: String) -> &mut Self {
        self.artifact = Some(text);
        self
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Plain => self.render_plain(),
            OutputFormat::Structured => self.render_structured(),
        }
    }

    fn render_plain(&self) -> String {
        if let Some(text) = &self.artifact {
            return text.clone();
        }
        let mut out = String::new();
        for (key, value) in &self.fields {
            out.push_str(&format!("{key}: {}\n", plain_value(value)));
        }
        for line in &self.log {
            out.push_str(&format!("step: {line}\n"));
        }
        out
    }

    fn render_structured(&self) -> String {
        let mut results = Map::new();
        for (key, value) in &self.fields {
            results.insert(key.clone(), value.clone());
        }
        let mut doc = Map::new();
        doc.insert("command".into(), Value::from(self.command.clone()));
        doc.insert("input_digest".into(), self.input_digest.clone().map_or(Value::Null, Value::from));
        doc.insert("passed".into(), Value::from(self.passed));
        doc.insert("results".into(), Value::Object(results));
        doc.insert("log".into(), Value::from(self.log.clone()));
        if let Some(seed) = self.seed {
            doc.insert("seed".into(), Value::from(seed));
        }
        if let Some(text) = &self.artifact {
            let parsed: Value = serde_json::from_str(text).expect("artifacts are canonical JSON");
            doc.insert("artifact".into(), parsed);
        }
        let mut text = serde_json::to_string_pretty(&Value::Object(doc)).expect("report is serialisable");
        text.push('\n');
        text
    }
}

fn plain_value(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|v| !v.is_array() && !v.is_object()) => {
            let parts: Vec<String> = items.iter().map(plain_value).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}
