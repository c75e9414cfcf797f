//! Deterministic result files: CSV with `#` comment headers and LF endings,
//! or JSON documents with the resolved config as the first field. Floats in
//! CSV cells are scientific notation with 17 significant digits so files
//! round-trip exactly.

use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use crate::config::{ExperimentConfig, OutputFormat};
use crate::CliError;

/// `-0.0` prints as `0.0`; everything else keeps full precision.
pub fn fmt_float(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

/// One cell of a CSV row.
#[derive(Debug, Clone)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(x) => fmt_float(*x),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Float(x) => Value::from(*x),
            Cell::Text(s) => Value::from(s.clone()),
            Cell::Empty => Value::Null,
        }
    }
}

/// A tabular result destined for one output file.
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: impl Into<String>, columns: Vec<String>) -> Self {
        Self { name: name.into(), columns, rows: Vec::new() }
    }

    pub fn with_static_columns(name: impl Into<String>, columns: &[&str]) -> Self {
        Self::new(name, columns.iter().map(|c| c.to_string()).collect())
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn render_csv(&self, config_json: &str) -> String {
        let mut out = String::new();
        out.push_str("# config: ");
        out.push_str(config_json);
        out.push('\n');
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn render_json(&self, config: &ExperimentConfig) -> Result<String, CliError> {
        #[derive(Serialize)]
        struct Doc<'a> {
            config: &'a ExperimentConfig,
            columns: &'a [String],
            rows: Vec<Value>,
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                Value::from(row.iter().map(Cell::to_json).collect::<Vec<Value>>())
            })
            .collect();
        let doc = Doc { config, columns: &self.columns, rows };
        serde_json::to_string_pretty(&doc)
            .map(|mut s| {
                s.push('\n');
                s
            })
            .map_err(|e| CliError::Io(format!("serializing {}: {e}", self.name)))
    }
}

/// Where and how results are written.
pub struct OutputTarget {
    pub dir: PathBuf,
    pub format: OutputFormat,
}

impl OutputTarget {
    pub fn resolve(
        config: &ExperimentConfig,
        out_flag: Option<&Path>,
        format_flag: Option<OutputFormat>,
    ) -> Self {
        let dir = out_flag
            .map(Path::to_path_buf)
            .or_else(|| config.output.path.as_ref().map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("."));
        let format = format_flag.unwrap_or(config.output.format);
        Self { dir, format }
    }

    /// Write a table as `<name>.csv` or `<name>.json`; returns the path.
    pub fn write_table(
        &self,
        table: &Table,
        config: &ExperimentConfig,
    ) -> Result<PathBuf, CliError> {
        std::fs::create_dir_all(&self.dir)
            .map_err(|e| CliError::Io(format!("creating {}: {e}", self.dir.display())))?;
        let (content, ext) = match self.format {
            OutputFormat::Csv => {
                let config_json = serde_json::to_string(config)
                    .map_err(|e| CliError::Io(format!("serializing config: {e}")))?;
                (table.render_csv(&config_json), "csv")
            }
            OutputFormat::Json => (table.render_json(config)?, "json"),
        };
        let path = self.dir.join(format!("{}.{ext}", table.name));
        std::fs::write(&path, content)
            .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))?;
        Ok(path)
    }

    /// Write an arbitrary JSON-serializable document as `<name>.json`.
    pub fn write_json<T: Serialize>(&self, name: &str, doc: &T) -> Result<PathBuf, CliError> {
        std::fs::create_dir_all(&self.dir)
            .map_err(|e| CliError::Io(format!("creating {}: {e}", self.dir.display())))?;
        let mut content = serde_json::to_string_pretty(doc)
            .map_err(|e| CliError::Io(format!("serializing {name}: {e}")))?;
        content.push('\n');
        let path = self.dir.join(format!("{name}.json"));
        std::fs::write(&path, content)
            .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))?;
        Ok(path)
    }
}
