//! Column-oriented numeric tables and their CSV rendering.

use std::io::Write;

use crate::error::{Error, Result};

/// Significant digits written when no precision is requested; enough to
/// round-trip any `f64`.
pub const DEFAULT_PRECISION: usize = 17;

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    header: Vec<String>,
    columns: Vec<Vec<f64>>,
}

impl Table {
    pub fn new() -> Self {
        Table { header: Vec::new(), columns: Vec::new() }
    }

    pub fn push_column(&mut self, name: impl Into<String>, values: Vec<f64>) -> Result<()> {
        if let Some(first) = self.columns.first() {
            if first.len() != values.len() {
                return Err(Error::param(
                    "column",
                    format!("expected {} rows, got {}", first.len(), values.len()),
                ));
            }
        }
        self.header.push(name.into());
        self.columns.push(values);
        Ok(())
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        let i = self.header.iter().position(|h| h == name)?;
        Some(&self.columns[i])
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }

    /// Write as CSV with `precision` significant digits (scientific notation).
    pub fn write_csv<W: Write>(&self, mut w: W, precision: usize) -> Result<()> {
        if precision == 0 {
            return Err(Error::param("precision", "must be at least 1"));
        }
        writeln!(w, "{}", self.header.join(","))?;
        let mut line = String::new();
        for i in 0..self.rows() {
            line.clear();
            for (j, col) in self.columns.iter().enumerate() {
                if j > 0 {
                    line.push(',');
                }
                line.push_str(&format_number(col[i], precision));
            }
            writeln!(w, "{line}")?;
        }
        Ok(())
    }
}

impl Default for Table {
    fn default() -> Self {
        Self::new()
    }
}

/// `precision` significant digits; exact zeros are written as `0`. From 17
/// digits on, the shortest representation that parses back to `v`.
pub fn format_number(v: f64, precision: usize) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if precision >= 17 {
        return format!("{v:e}");
    }
    format!("{:.*e}", precision.saturating_sub(1), v)
}
