//! Amplitude-vector files: one complex number per line as `re im`,
//! whitespace separated. Blank lines and `#` comments are ignored.

use std::path::Path;

use ampcoh_core::C64;

use crate::error::CliError;

pub fn read_amplitudes(path: &Path) -> Result<Vec<C64>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::Io(format!("cannot read {}: {e}", path.display()))
    })?;
    let mut amps = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let re = parse_part(parts.next(), path, lineno + 1)?;
        let im = parse_part(parts.next(), path, lineno + 1)?;
        if parts.next().is_some() {
            return Err(CliError::Usage(format!(
                "{}:{}: expected exactly two numbers (re im)",
                path.display(),
                lineno + 1
            )));
        }
        amps.push(C64::new(re, im));
    }
    if amps.is_empty() {
        return Err(CliError::Usage(format!(
            "{}: no amplitudes found",
            path.display()
        )));
    }
    Ok(amps)
}

fn parse_part(
    part: Option<&str>,
    path: &Path,
    lineno: usize,
) -> Result<f64, CliError> {
    let token = part.ok_or_else(|| {
        CliError::Usage(format!(
            "{}:{}: expected two numbers (re im)",
            path.display(),
            lineno
        ))
    })?;
    token.parse::<f64>().map_err(|_| {
        CliError::Usage(format!(
            "{}:{}: `{token}` is not a number",
            path.display(),
            lineno
        ))
    })
}
