//! Deterministic structured reports.
//!
//! A report is an ordered tree of `key: value` lines; rendering is
//! byte-stable across runs for identical inputs. The text format indents
//! nested sections, the structured format flattens them into dotted paths.

pub enum Value {
    Leaf(String),
    Section(Report),
}

#[derive(Default)]
pub struct Report {
    items: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn put(&mut self, key: &str, value: impl Into<String>) {
        self.items.push((key.to_string(), Value::Leaf(value.into())));
    }

    pub fn child(&mut self, key: &str) -> &mut Report {
        self.items.push((key.to_string(), Value::Section(Report::new())));
        match &mut self.items.last_mut().unwrap().1 {
            Value::Section(r) => r,
            Value::Leaf(_) => unreachable!(),
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        self.render_text_into(&mut out, 0);
        out
    }

    fn render_text_into(&self, out: &mut String, depth: usize) {
        for (key, value) in &self.items {
            for _ in 0..depth {
                out.push_str("  ");
            }
            match value {
                Value::Leaf(v) => {
                    out.push_str(key);
                    out.push_str(": ");
                    out.push_str(v);
                    out.push('\n');
                }
                Value::Section(r) => {
                    out.push_str(key);
                    out.push_str(":\n");
                    r.render_text_into(out, depth + 1);
                }
            }
        }
    }

    pub fn render_structured(&self) -> String {
        let mut out = String::new();
        self.render_structured_into(&mut out, "");
        out
    }

    fn render_structured_into(&self, out: &mut String, prefix: &str) {
        for (key, value) in &self.items {
            let path = if prefix.is_empty() { key.clone() } else { format!("{prefix}.{key}") };
            match value {
                Value::Leaf(v) => {
                    out.push_str(&path);
                    out.push_str(": ");
                    out.push_str(v);
                    out.push('\n');
                }
                Value::Section(r) => r.render_structured_into(out, &path),
            }
        }
    }
}
