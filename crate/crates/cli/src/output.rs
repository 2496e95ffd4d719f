//! Record sinks: JSON Lines, CSV, or a single summary object.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub struct Sink {
    format: Format,
    summary: bool,
    json: Box<dyn Write>,
    csv: Option<csv::Writer<Box<dyn Write>>>,
}

fn writer(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

impl Sink {
    pub fn open(path: Option<&Path>, format: Format, summary: bool) -> Result<Self> {
        let out = writer(path)?;
        if format == Format::Csv && !summary {
            Ok(Sink {
                format,
                summary,
                json: Box::new(io::sink()),
                csv: Some(csv::Writer::from_writer(out)),
            })
        } else {
            Ok(Sink {
                format,
                summary,
                json: out,
                csv: None,
            })
        }
    }

    pub fn is_summary(&self) -> bool {
        self.summary
    }

    pub fn format(&self) -> Format {
        self.format
    }

    pub fn header(&mut self, cols: &[&str]) -> Result<()> {
        if let Some(w) = &mut self.csv {
            w.write_record(cols)?;
        }
        Ok(())
    }

    pub fn row(&mut self, cells: Vec<String>) -> Result<()> {
        if let Some(w) = &mut self.csv {
            w.write_record(&cells)?;
        }
        Ok(())
    }

    /// One data record; `cells` is only evaluated in CSV mode.
    pub fn record<T: Serialize>(
        &mut self,
        rec: &T,
        cells: impl FnOnce() -> Vec<String>,
    ) -> Result<()> {
        match &mut self.csv {
            Some(w) => w.write_record(cells())?,
            None => {
                serde_json::to_writer(&mut self.json, rec)?;
                self.json.write_all(b"\n")?;
            }
        }
        Ok(())
    }

    /// Trailing JSON record; dropped in CSV mode to keep the table rectangular.
    pub fn footer<T: Serialize>(&mut self, rec: &T) -> Result<()> {
        if self.csv.is_none() {
            self.record(rec, Vec::new)?;
        }
        Ok(())
    }

    pub fn summary<T: Serialize>(&mut self, rec: &T) -> Result<()> {
        serde_json::to_writer(&mut self.json, rec)?;
        self.json.write_all(b"\n")?;
        Ok(())
    }

    pub fn finish(mut self) -> Result<()> {
        if let Some(w) = &mut self.csv {
            w.flush()?;
        }
        self.json.flush()?;
        Ok(())
    }
}

pub fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}
