//! Plain-text generating vectors: the first line is `n`, then one component per line.

use std::path::Path;

use crate::error::{config_err, io_err, Result};

/// Parses `(n, z)`; blank lines and `#` comments are skipped.
pub fn parse_generator(text: &str) -> Result<(usize, Vec<u64>)> {
    let mut values = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .enumerate()
        .map(|(i, l)| {
            l.parse::<u64>()
                .map_err(|_| config_err(format!("generating vector line {}: {l:?} is not an integer", i + 1)))
        });
    let n = values.next().ok_or_else(|| config_err("generating vector file is empty"))?? as usize;
    let z = values.collect::<Result<Vec<_>>>()?;
    if n < 2 {
        return Err(config_err("generating vector needs n ≥ 2"));
    }
    if z.is_empty() {
        return Err(config_err("generating vector has no components"));
    }
    if let Some(bad) = z.iter().find(|&&c| c == 0 || c >= n as u64) {
        return Err(config_err(format!("component {bad} outside [1, {}]", n - 1)));
    }
    Ok((n, z))
}

pub fn read_generator(path: &Path) -> Result<(usize, Vec<u64>)> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    parse_generator(&text)
}
