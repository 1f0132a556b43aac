//! Result records and their three output formats.

use clap::ValueEnum;
use qloop::linalg::Mat;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Latex,
    Text,
}

/// What one command produced.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub command: String,
    pub pass: bool,
    /// Command-specific JSON fields, merged into the top-level object.
    pub body: Map<String, Value>,
    /// One line each for the text and LaTeX summaries.
    pub lines: Vec<String>,
    pub matrices: Vec<(String, Mat)>,
}

impl Outcome {
    pub fn new(command: &str, pass: bool) -> Outcome {
        Outcome {
            command: command.to_string(),
            pass,
            body: Map::new(),
            lines: Vec::new(),
            matrices: Vec::new(),
        }
    }

    pub fn failure(command: &str, error: &str) -> Outcome {
        let mut o = Outcome::new(command, false);
        o.set("error", error);
        o.line(format!("error: {error}"));
        o
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.body.insert(key.to_string(), v.into());
        self
    }

    pub fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.lines.push(s.into());
        self
    }

    pub fn matrix(&mut self, name: &str, m: &Mat) -> &mut Self {
        self.matrices.push((name.to_string(), m.clone()));
        self
    }

    pub fn to_json(&self) -> Value {
        let mut m = self.body.clone();
        m.insert("command".into(), Value::from(self.command.clone()));
        m.insert("pass".into(), Value::from(self.pass));
        Value::Object(m)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("plain JSON values");
                s.push('\n');
                s
            }
            Format::Text => self.text(),
            Format::Latex => self.latex(),
        }
    }

    fn verdict(&self) -> &'static str {
        if self.pass {
            "pass"
        } else {
            "fail"
        }
    }

    fn text(&self) -> String {
        let mut s = format!("{}: {}\n", self.command, self.verdict());
        for l in &self.lines {
            s.push_str(&format!("  {l}\n"));
        }
        for (name, m) in &self.matrices {
            s.push_str(&format!("  {name} =\n"));
            for row in m.to_strings() {
                s.push_str(&format!("    [{}]\n", row.join(", ")));
            }
        }
        s
    }

    fn latex(&self) -> String {
        let mut s = format!("% qloop {}: {}\n", self.command, self.verdict());
        if !self.lines.is_empty() {
            s.push_str("\\begin{itemize}\n");
            for l in &self.lines {
                s.push_str(&format!("  \\item \\verb|{}|\n", l.replace('|', "/")));
            }
            s.push_str("\\end{itemize}\n");
        }
        for (name, m) in &self.matrices {
            s.push_str(&format!("\\[\n{name} = {}\n\\]\n", m.to_latex()));
        }
        s
    }
}
