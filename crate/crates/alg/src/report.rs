use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Undecided,
    /// Bad input or usage.
    Error,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Error => 2,
            Outcome::Undecided => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Undecided => "undecided",
            Outcome::Error => "error",
        }
    }
}

/// What a command prints: human text, a `---` line, then one JSON object
/// carrying `command`, `verdict`, `exit_code` and the command's data.
#[derive(Debug, Clone)]
pub struct CommandReport {
    pub command: String,
    pub outcome: Outcome,
    pub lines: Vec<String>,
    pub data: Map<String, Value>,
}

impl CommandReport {
    pub fn new(command: &str, outcome: Outcome) -> Self {
        CommandReport {
            command: command.to_string(),
            outcome,
            lines: Vec::new(),
            data: Map::new(),
        }
    }

    pub fn error(command: &str, message: impl std::fmt::Display) -> Self {
        let mut r = CommandReport::new(command, Outcome::Error);
        r.line(format!("error: {}", message));
        r.set("error", json!(message.to_string()));
        r
    }

    pub fn line(&mut self, text: impl Into<String>) -> &mut Self {
        self.lines.push(text.into());
        self
    }

    pub fn set(&mut self, key: &str, value: Value) -> &mut Self {
        self.data.insert(key.to_string(), value);
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.outcome.exit_code()
    }

    pub fn json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("command".into(), json!(self.command));
        obj.insert("verdict".into(), json!(self.outcome.as_str()));
        obj.insert("exit_code".into(), json!(self.exit_code()));
        for (k, v) in &self.data {
            obj.insert(k.clone(), v.clone());
        }
        Value::Object(obj)
    }

    pub fn render(&self) -> String {
        let mut out = format!("{}: {}\n", self.command, self.outcome.as_str().to_uppercase());
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out.push_str("---\n");
        out.push_str(&serde_json::to_string_pretty(&self.json()).expect("json"));
        out.push('\n');
        out
    }
}

/// The JSON block of rendered output.
pub fn json_block(rendered: &str) -> Option<Value> {
    let (_, tail) = rendered.split_once("\n---\n")?;
    serde_json::from_str(tail).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_and_reparse() {
        let mut r = CommandReport::new("neutrals", Outcome::Pass);
        r.line("neutral elements: 0").set("neutrals", json!([0]));
        let text = r.render();
        let v = json_block(&text).unwrap();
        assert_eq!(v["verdict"], "pass");
        assert_eq!(v["neutrals"], json!([0]));
        assert_eq!(v["exit_code"], 0);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Outcome::Pass.exit_code(), 0);
        assert_eq!(Outcome::Fail.exit_code(), 1);
        assert_eq!(Outcome::Error.exit_code(), 2);
        assert_eq!(Outcome::Undecided.exit_code(), 3);
    }
}
