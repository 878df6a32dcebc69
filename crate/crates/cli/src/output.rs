use std::fs::{File, OpenOptions};
use std::io::{self, Write};

use anyhow::{Context, Result};
use serde::Serialize;

use crate::Global;

/// Where reports go: stdout or `--out`.
pub struct Sink {
    json: bool,
    writer: Box<dyn Write>,
}

impl Sink {
    pub fn new(global: &Global, append: bool) -> Result<Self> {
        let writer: Box<dyn Write> = match &global.out {
            None => Box::new(io::stdout().lock()),
            Some(path) => {
                let file = if append {
                    OpenOptions::new().create(true).append(true).open(path)
                } else {
                    File::create(path)
                };
                Box::new(file.with_context(|| format!("cannot open {}", path.display()))?)
            }
        };
        Ok(Sink { json: global.json, writer })
    }

    /// Pretty JSON in `--json` mode, the given text otherwise.
    pub fn report<T: Serialize>(&mut self, value: &T, text: impl FnOnce() -> String) -> Result<()> {
        if self.json {
            serde_json::to_writer_pretty(&mut self.writer, value)?;
            writeln!(self.writer)?;
        } else {
            self.writer.write_all(text().as_bytes())?;
        }
        self.writer.flush()?;
        Ok(())
    }

    /// One compact JSON object per line, or the given text line.
    pub fn line<T: Serialize>(&mut self, value: &T, text: impl FnOnce() -> String) -> Result<()> {
        if self.json {
            serde_json::to_writer(&mut self.writer, value)?;
        } else {
            self.writer.write_all(text().as_bytes())?;
        }
        writeln!(self.writer)?;
        Ok(())
    }

    pub fn flush(&mut self) -> Result<()> {
        self.writer.flush()?;
        Ok(())
    }
}
