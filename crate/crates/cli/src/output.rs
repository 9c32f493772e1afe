use std::fmt::Write;

use crate::settings::Settings;

/// Fixed 17-significant-digit scientific notation; `-0` prints as `0`.
pub fn num(x: f64) -> String {
    format!("{:.16e}", x + 0.0)
}

/// Comment block recording the tool version and the effective settings.
pub fn header(command: &str, settings: &Settings) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# fluxhoop {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(s, "# command={command}");
    for (k, v) in settings.iter() {
        let _ = writeln!(s, "# {k}={v}");
    }
    s
}

pub struct Csv {
    text: String,
}

impl Csv {
    pub fn new(header: String, columns: &[&str]) -> Self {
        let mut text = header;
        text.push_str(&columns.join(","));
        text.push('\n');
        Self { text }
    }

    pub fn row(&mut self, cells: &[String]) {
        self.text.push_str(&cells.join(","));
        self.text.push('\n');
    }

    pub fn comment(&mut self, line: &str) {
        self.text.push_str("# ");
        self.text.push_str(line);
        self.text.push('\n');
    }

    pub fn finish(self) -> String {
        self.text
    }
}
