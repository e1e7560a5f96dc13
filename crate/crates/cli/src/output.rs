use std::io::{self, Write};

use serde_json::{Map, Value};

use crate::config::Format;

pub type Record = Map<String, Value>;

/// Streams records as JSON lines, or as CSV with a header taken from the
/// first record.
pub struct Emitter<W: Write> {
    out: W,
    format: Format,
    header_written: bool,
}

impl<W: Write> Emitter<W> {
    pub fn new(out: W, format: Format) -> Emitter<W> {
        Emitter {
            out,
            format,
            header_written: false,
        }
    }

    pub fn emit(&mut self, rec: &Record) -> io::Result<()> {
        match self.format {
            Format::Json => writeln!(self.out, "{}", Value::Object(rec.clone())),
            Format::Csv => {
                if !self.header_written {
                    let keys: Vec<String> = rec.keys().map(|k| csv_field(k)).collect();
                    writeln!(self.out, "{}", keys.join(","))?;
                    self.header_written = true;
                }
                let vals: Vec<String> = rec
                    .values()
                    .map(|v| match v {
                        Value::String(s) => csv_field(s),
                        Value::Null => String::new(),
                        other => csv_field(&other.to_string()),
                    })
                    .collect();
                writeln!(self.out, "{}", vals.join(","))
            }
        }
    }

    pub fn flush(&mut self) -> io::Result<()> {
        self.out.flush()
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Builds a record from `key => value` pairs, keeping their order.
#[macro_export]
macro_rules! record {
    ($($k:expr => $v:expr),* $(,)?) => {{
        let mut r = $crate::output::Record::new();
        $(r.insert($k.to_string(), serde_json::Value::from($v));)*
        r
    }};
}
