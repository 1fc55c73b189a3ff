use std::fs::{self, File};
use std::io::{self, Write};
use std::path::Path;

use crate::{BenchError, Format};

/// Rows ready to be written, preceded by `#` comment lines.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub comments: Vec<String>,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn to_string(&self, format: Format) -> Result<String, BenchError> {
        let mut buf = Vec::new();
        self.write(&mut buf, format)?;
        Ok(String::from_utf8(buf).expect("table output is UTF-8"))
    }

    pub fn write<W: Write>(&self, mut out: W, format: Format) -> Result<(), BenchError> {
        for comment in &self.comments {
            writeln!(out, "# {comment}")?;
        }
        let mut writer = csv::WriterBuilder::new().delimiter(format.delimiter()).from_writer(out);
        writer.write_record(&self.header)?;
        for row in &self.rows {
            writer.write_record(row)?;
        }
        writer.flush()?;
        Ok(())
    }
}

/// Writes `table` to `path`, or to standard output when `path` is `None`.
/// A file left half-written by a failure is removed.
pub fn write_table(table: &Table, format: Format, path: Option<&Path>) -> Result<(), BenchError> {
    let Some(path) = path else {
        return table.write(io::stdout().lock(), format);
    };
    let result = File::create(path)
        .map_err(BenchError::from)
        .and_then(|file| table.write(io::BufWriter::new(file), format));
    if result.is_err() && path.exists() {
        let _ = fs::remove_file(path);
    }
    result
}
