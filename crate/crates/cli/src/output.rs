//! Writing report files.

use std::fs;
use std::path::PathBuf;

use serde::Serialize;

use crate::args::{Format, OutputArgs};
use crate::StageError;

/// Where and in which formats a command writes its results.
pub(crate) struct Sink {
    out: Option<PathBuf>,
    formats: Vec<Format>,
}

impl Sink {
    pub fn new(args: &OutputArgs) -> Result<Self, StageError> {
        if let Some(dir) = &args.out {
            fs::create_dir_all(dir)
                .map_err(|e| StageError::new("output", anyhow::anyhow!("cannot create {}: {e}", dir.display())))?;
        }
        Ok(Self {
            out: args.out.clone(),
            formats: args.format.clone(),
        })
    }

    pub fn wants(&self, format: Format) -> bool {
        self.formats.contains(&format)
    }

    /// Writes `name` under the output directory; with no directory, text goes
    /// to stdout and other formats are dropped.
    pub fn write(&self, format: Format, name: &str, contents: &str) -> Result<(), StageError> {
        if !self.wants(format) {
            return Ok(());
        }
        match &self.out {
            Some(dir) => {
                let path = dir.join(name);
                if let Some(parent) = path.parent() {
                    fs::create_dir_all(parent).map_err(|e| StageError::new("output", e))?;
                }
                fs::write(&path, contents)
                    .map_err(|e| StageError::new("output", anyhow::anyhow!("cannot write {}: {e}", path.display())))
            }
            None => {
                if format == Format::Text {
                    print!("{contents}");
                }
                Ok(())
            }
        }
    }

    pub fn write_json<T: Serialize>(&self, name: &str, value: &T) -> Result<(), StageError> {
        if !self.wants(Format::Json) {
            return Ok(());
        }
        self.write(Format::Json, name, &to_json(value)?)
    }
}

pub(crate) fn to_json<T: Serialize>(value: &T) -> Result<String, StageError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| StageError::new("output", e))?;
    text.push('\n');
    Ok(text)
}
