//! Count tables: `label,count` with a header, or a bare column of counts.

use std::collections::HashSet;
use std::path::Path;

use seneca_core::SampleCounts;

use crate::error::{CliError, CliResult};

/// Reads a count table from `path`.
pub fn read_counts(path: &Path) -> CliResult<SampleCounts> {
    let file =
        std::fs::File::open(path).map_err(|e| CliError::InputFile { path: path.into(), message: e.to_string() })?;
    parse_counts(file, path)
}

/// Parses a count table; `path` is only used in error messages.
pub fn parse_counts<R: std::io::Read>(reader: R, path: &Path) -> CliResult<SampleCounts> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);

    let err = |line: u64, column: usize, message: String| CliError::Input { path: path.into(), line, column, message };

    let mut width = None;
    let mut counts = Vec::new();
    let mut seen = HashSet::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            err(line, 1, e.to_string())
        })?;
        let line = rec.position().map_or(i as u64 + 1, |p| p.line());
        if rec.iter().all(str::is_empty) {
            continue;
        }
        let w = rec.len();
        match width {
            None => {
                if w != 1 && w != 2 {
                    return Err(err(line, 1, format!("expected 1 or 2 columns, found {w}")));
                }
                width = Some(w);
                if is_header(&rec, w) {
                    continue;
                }
                if w == 2 {
                    return Err(err(line, 1, "two-column tables need a `label,count` header".into()));
                }
            }
            Some(expected) if expected != w => {
                return Err(err(line, w.min(expected) + 1, format!("expected {expected} columns, found {w}")));
            }
            Some(_) => {}
        }
        let column = w;
        let field = &rec[column - 1];
        let count: usize =
            field.parse().map_err(|_| err(line, column, format!("`{field}` is not a non-negative integer count")))?;
        if count == 0 {
            return Err(err(line, column, "counts must be positive".into()));
        }
        if w == 2 && !seen.insert(rec[0].to_string()) {
            return Err(err(line, 1, format!("duplicate label `{}`", &rec[0])));
        }
        counts.push(count);
    }
    if counts.is_empty() {
        return Err(CliError::InputFile { path: path.into(), message: "no counts found".into() });
    }
    Ok(SampleCounts::new(counts)?)
}

fn is_header(rec: &csv::StringRecord, width: usize) -> bool {
    let lower: Vec<String> = rec.iter().map(str::to_ascii_lowercase).collect();
    match width {
        1 => lower[0] == "count",
        _ => lower[0] == "label" && lower[1] == "count",
    }
}
