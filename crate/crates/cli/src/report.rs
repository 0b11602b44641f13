use serde_json::Value;

use crate::args::Format;

/// Buffered output: text lines or one JSON object per line.
pub struct Out {
    pub format: Format,
    buf: String,
}

impl Out {
    pub fn new(format: Format) -> Self {
        Out {
            format,
            buf: String::new(),
        }
    }

    pub fn is_json(&self) -> bool {
        self.format == Format::Json
    }

    pub fn text(&mut self, line: impl AsRef<str>) {
        if !self.is_json() {
            self.buf.push_str(line.as_ref());
            self.buf.push('\n');
        }
    }

    pub fn json(&mut self, record: Value) {
        if self.is_json() {
            self.buf.push_str(&record.to_string());
            self.buf.push('\n');
        }
    }

    pub fn finish(self) -> String {
        self.buf
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
