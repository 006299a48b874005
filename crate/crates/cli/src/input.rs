use std::path::Path;

use gsparc::{Error, Result};
use num_complex::Complex64;

/// Reads `arg` as inline JSON if it looks like an object, else as a path.
pub fn json_text(arg: &str) -> Result<String> {
    if arg.trim_start().starts_with('{') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg).map_err(|e| Error::io(arg, e))
}

/// An observation as a JSON array of numbers or `[re, im]` pairs, or as
/// text with one `re [im]` pair per line.
pub fn observation(path: &Path) -> Result<Vec<Complex64>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    if text.trim_start().starts_with('[') {
        let v: Vec<serde_json::Value> = serde_json::from_str(&text)
            .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
        return v.iter().map(json_sample).collect();
    }
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let nums: Vec<f64> = l
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().map_err(|_| Error::Format(format!("'{s}' is not a number"))))
                .collect::<Result<_>>()?;
            match nums[..] {
                [re] => Ok(Complex64::new(re, 0.0)),
                [re, im] => Ok(Complex64::new(re, im)),
                _ => Err(Error::Format(format!("expected 're' or 're im', got '{l}'"))),
            }
        })
        .collect()
}

fn json_sample(v: &serde_json::Value) -> Result<Complex64> {
    let bad = || Error::Format(format!("{v} is not a number or [re, im] pair"));
    if let Some(re) = v.as_f64() {
        return Ok(Complex64::new(re, 0.0));
    }
    match v.as_array().map(Vec::as_slice) {
        Some([re, im]) => Ok(Complex64::new(re.as_f64().ok_or_else(bad)?, im.as_f64().ok_or_else(bad)?)),
        _ => Err(bad()),
    }
}

/// Comma-separated unsigned integers.
pub fn index_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Error::invalid(format!("'{t}' is not an index"))))
        .collect()
}
