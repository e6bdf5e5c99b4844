//! Signal file ingestion: plain text or simple CSV, first numeric column.

use std::path::Path;

use crate::error::CliError;

/// Read a signal from a text/CSV file. The first numeric column is used;
/// leading lines without any numeric field are treated as headers.
pub fn read_signal_values(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_signal_text(&text)
}

pub fn parse_signal_text(text: &str) -> Result<Vec<f64>, CliError> {
    let mut column: Option<usize> = None;
    let mut values = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line
            .split([',', ';', '\t', ' '])
            .filter(|f| !f.is_empty())
            .collect();
        match column {
            None => {
                // Locate the first numeric column on the first data line.
                if let Some((i, value)) = fields
                    .iter()
                    .enumerate()
                    .find_map(|(i, f)| f.parse::<f64>().ok().map(|v| (i, v)))
                {
                    column = Some(i);
                    values.push(finite(value, index)?);
                }
            }
            Some(i) => {
                let field = fields.get(i).ok_or_else(|| {
                    CliError::Input(format!("line {}: missing column {}", index + 1, i + 1))
                })?;
                let value = field.parse::<f64>().map_err(|_| {
                    CliError::Input(format!("line {}: non-numeric value '{field}'", index + 1))
                })?;
                values.push(finite(value, index)?);
            }
        }
    }
    if values.is_empty() {
        return Err(CliError::Input("no numeric data found".to_string()));
    }
    Ok(values)
}

fn finite(value: f64, line_index: usize) -> Result<f64, CliError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(CliError::Input(format!(
            "line {}: non-finite value {value}",
            line_index + 1
        )))
    }
}

/// Enforce a power-of-two length: error under `strict`, otherwise truncate
/// to the largest power of two with a warning on stderr.
pub fn to_power_of_two(mut values: Vec<f64>, strict: bool) -> Result<(Vec<f64>, bool), CliError> {
    let n = values.len();
    if n < 2 {
        return Err(CliError::Input(format!(
            "signal needs at least 2 samples, got {n}"
        )));
    }
    if n.is_power_of_two() {
        return Ok((values, false));
    }
    if strict {
        return Err(CliError::Input(format!(
            "signal length {n} is not a power of two (strict mode)"
        )));
    }
    let target = 1usize << (usize::BITS - 1 - n.leading_zeros());
    eprintln!("warning: truncating input from {n} to {target} samples (power-of-two length required)");
    values.truncate(target);
    Ok((values, true))
}
