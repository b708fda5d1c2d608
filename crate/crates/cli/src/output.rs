use serde::Serialize;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::args::Format;
use crate::failure::{CmdResult, Failure};

pub const OUT_ENV: &str = "PHONON_SOBOL_OUT";

/// Destination directory plus the list of files written so far.
pub struct Output {
    dir: PathBuf,
    pub format: Format,
    written: Vec<PathBuf>,
}

impl Output {
    pub fn new(dir: Option<PathBuf>, format: Format) -> CmdResult<Self> {
        let dir = dir
            .or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("."));
        fs::create_dir_all(&dir)
            .map_err(|e| Failure::config(format!("cannot create output directory {}: {e}", dir.display())))?;
        Ok(Self {
            dir,
            format,
            written: Vec::new(),
        })
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }

    fn write_with(&mut self, name: &str, body: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> CmdResult<()> {
        let path = self.dir.join(name);
        let io_err = |e: std::io::Error| Failure::config(format!("cannot write {}: {e}", path.display()));
        let mut w = BufWriter::new(File::create(&path).map_err(io_err)?);
        body(&mut w).map_err(io_err)?;
        w.flush().map_err(io_err)?;
        self.written.push(path);
        Ok(())
    }

    pub fn json<T: Serialize>(&mut self, stem: &str, value: &T) -> CmdResult<()> {
        self.write_with(&format!("{stem}.json"), |w| phonon_sobol::report::write_json(w, value))
    }

    /// Tabular output: `csv` through the given writer, or `json` via serde.
    pub fn table<T: Serialize>(
        &mut self,
        stem: &str,
        value: &T,
        csv: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
    ) -> CmdResult<()> {
        match self.format {
            Format::Csv => self.write_with(&format!("{stem}.csv"), csv),
            Format::Json => self.json(stem, value),
        }
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> CmdResult<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::config(format!("cannot read {what} {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::config(format!("malformed {what} {}: {e}", path.display())))
}
