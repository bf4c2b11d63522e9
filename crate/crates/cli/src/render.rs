//! Output rendering. Every command produces one serializable payload plus
//! a flat table projection; the format flag only selects how that payload
//! is written. Nothing here depends on wall-clock time or thread count, so
//! identical runs produce identical bytes.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

pub struct Table {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

fn markdown_cell(s: &str) -> String {
    s.replace('|', "\\|")
}

fn to_markdown(table: &Table, pass: Option<bool>) -> String {
    let mut out = String::new();
    out.push_str(&format!("## {}\n\n", table.title));
    out.push('|');
    for h in &table.headers {
        out.push_str(&format!(" {} |", markdown_cell(h)));
    }
    out.push_str("\n|");
    for _ in &table.headers {
        out.push_str(" --- |");
    }
    out.push('\n');
    for row in &table.rows {
        out.push('|');
        for cell in row {
            out.push_str(&format!(" {} |", markdown_cell(cell)));
        }
        out.push('\n');
    }
    if let Some(p) = pass {
        out.push_str(&format!("\npass: {p}\n"));
    }
    out
}

fn to_csv(table: &Table) -> io::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.headers)
        .map_err(|e| io::Error::other(e.to_string()))?;
    for row in &table.rows {
        w.write_record(row)
            .map_err(|e| io::Error::other(e.to_string()))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| io::Error::other(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| io::Error::other(e.to_string()))
}

/// Writes the payload in the chosen format to the path, or to stdout when
/// no path is given. `pass` feeds the markdown footer; JSON payloads carry
/// their own verdict fields.
pub fn emit<T: Serialize>(
    payload: &T,
    table: &Table,
    pass: Option<bool>,
    format: Format,
    out: Option<&Path>,
) -> io::Result<()> {
    let text = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(payload)?;
            s.push('\n');
            s
        }
        Format::Csv => to_csv(table)?,
        Format::Markdown => to_markdown(table, pass),
    };
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}
