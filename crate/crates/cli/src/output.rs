//! Artifact serialisation.
//!
//! CSV files open with a `#` comment naming the column contract and its
//! version, then a column line, then rows. Floats are written with 17
//! significant digits so they parse back to the same bits.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use num_complex::Complex64;
use serde_json::Value;

pub const CSV_VERSION: u32 = 1;

/// Columns of equal length sharing one coordinate axis.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub contract: &'static str,
    pub columns: Vec<(&'static str, Vec<f64>)>,
}

impl Table {
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "# supersep {} v{CSV_VERSION}", self.contract)?;
        let names: Vec<&str> = self.columns.iter().map(|(n, _)| *n).collect();
        writeln!(w, "{}", names.join(","))?;
        let rows = self.columns.first().map_or(0, |(_, c)| c.len());
        for r in 0..rows {
            let cells: Vec<String> = self.columns.iter().map(|(_, c)| float(c[r])).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let mut map = serde_json::Map::new();
        map.insert(
            "contract".into(),
            Value::from(format!("{} v{CSV_VERSION}", self.contract)),
        );
        for (name, col) in &self.columns {
            map.insert((*name).into(), Value::from(col.clone()));
        }
        Value::Object(map)
    }
}

/// Flat key/value report; keys come out sorted.
pub type Record = BTreeMap<String, Value>;

pub fn float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Shortest round-tripping decimal, switching to exponent form for very
/// small or large magnitudes. `-0` prints as `0`.
pub fn number(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 {
        "0".into()
    } else if (1e-4..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// `a+bi`, e.g. `-1+0i`.
pub fn complex(z: Complex64) -> String {
    if z.im < 0.0 {
        format!("{}-{}i", number(z.re), number(-z.im))
    } else {
        format!("{}+{}i", number(z.re), number(z.im))
    }
}

pub fn record_to_json(record: &Record) -> String {
    let mut s = serde_json::to_string_pretty(record).expect("record values are plain JSON");
    s.push('\n');
    s
}

/// `key=value` lines for reading, with floats rounded to 15 significant
/// digits. Use JSON for exact values.
pub fn record_to_text(record: &Record) -> String {
    record
        .iter()
        .map(|(k, v)| match v {
            Value::String(s) => format!("{k}={s}\n"),
            Value::Number(n) if n.is_f64() => {
                let rounded: f64 = format!("{:.14e}", n.as_f64().unwrap()).parse().unwrap();
                format!("{k}={}\n", number(rounded))
            }
            other => format!("{k}={other}\n"),
        })
        .collect()
}

/// Writes through `f` to `path`, or to stdout when there is none.
pub fn emit(
    path: Option<&Path>,
    f: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> io::Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            f(&mut w)?;
            w.flush()
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            match f(&mut w).and_then(|_| w.flush()) {
                // a closed pipe (`| head`) is the reader's choice, not a failure
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
                other => other,
            }
        }
    }
}
