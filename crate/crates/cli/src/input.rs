use std::fs::File;
use std::path::Path;

use crate::error::CliError;

/// Values of one CSV column with the 1-based line each came from.
#[derive(Debug)]
pub struct Column {
    pub values: Vec<f64>,
    pub lines: Vec<u64>,
}

/// Read `column` (a header name or a 0-based index) from a comma-separated
/// file. A first row whose selected field is not numeric is taken as a
/// header; any later non-numeric field is an error.
pub fn read_column(path: &Path, column: &str) -> Result<Column, CliError> {
    let file = File::open(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(file);
    let by_index: Option<usize> = column.parse().ok();
    let mut index = by_index;
    let mut out = Column {
        values: Vec::new(),
        lines: Vec::new(),
    };
    for (k, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
        let line = record.position().map_or(k as u64 + 1, |p| p.line());
        if k == 0 {
            let idx = match by_index {
                Some(i) => i,
                None => record.iter().position(|h| h == column).ok_or_else(|| {
                    CliError::Data(format!("no column named '{column}' in the header"))
                })?,
            };
            index = Some(idx);
            let field = record.get(idx).unwrap_or("");
            if by_index.is_none() || field.parse::<f64>().is_err() {
                continue;
            }
        }
        let idx = index.expect("set on the first record");
        let field = record
            .get(idx)
            .ok_or_else(|| CliError::Data(format!("{}:{line}: no column {idx}", path.display())))?;
        let v: f64 = field.parse().map_err(|_| {
            CliError::Data(format!(
                "{}:{line}: '{field}' is not a number",
                path.display()
            ))
        })?;
        out.values.push(v);
        out.lines.push(line);
    }
    if out.values.is_empty() {
        return Err(CliError::Data(format!("{}: no data rows", path.display())));
    }
    Ok(out)
}
