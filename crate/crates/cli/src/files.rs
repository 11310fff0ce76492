//! Text formats: distance fields and source lists.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::CliError;

/// One line per vertex, `index<TAB>distance`, 17 significant digits;
/// unreachable vertices are written as `inf`.
pub fn write_distances(mut w: impl Write, values: &[f64]) -> io::Result<()> {
    for (i, &d) in values.iter().enumerate() {
        if d.is_finite() {
            writeln!(w, "{i}\t{d:.16e}")?;
        } else {
            writeln!(w, "{i}\tinf")?;
        }
    }
    w.flush()
}

/// Parses a distance file. Lines must list every vertex once, in order.
pub fn read_distances(r: impl BufRead) -> Result<Vec<f64>, CliError> {
    let mut values = Vec::new();
    for (n, line) in r.lines().enumerate() {
        let line = line.map_err(|e| CliError::io("reading distance file", e))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |what: &str| CliError::Parse(format!("distance file line {}: {what}", n + 1));
        let mut parts = line.split_whitespace();
        let index: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad("expected a vertex index"))?;
        let d: f64 = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad("expected a distance"))?;
        if parts.next().is_some() {
            return Err(bad("trailing fields"));
        }
        if index != values.len() {
            return Err(bad(&format!("expected vertex {}, found {index}", values.len())));
        }
        values.push(d);
    }
    Ok(values)
}

pub fn load_distances(path: &Path) -> Result<Vec<f64>, CliError> {
    let f = File::open(path).map_err(|e| CliError::io(format!("opening {}", path.display()), e))?;
    read_distances(BufReader::new(f))
}

/// Writes to `path`, or to standard output when `path` is `-`.
pub fn with_output<F>(path: &Path, body: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    let context = || format!("writing {}", path.display());
    if path == Path::new("-") {
        let stdout = io::stdout();
        let mut lock = stdout.lock();
        body(&mut lock).map_err(|e| CliError::io(context(), e))
    } else {
        let f = File::create(path).map_err(|e| CliError::io(context(), e))?;
        let mut w = BufWriter::new(f);
        body(&mut w).and_then(|_| w.flush()).map_err(|e| CliError::io(context(), e))
    }
}

/// Whitespace-separated vertex indices; `#` starts a comment.
pub fn parse_sources(text: &str) -> Result<Vec<usize>, CliError> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split_whitespace() {
            let v = tok
                .parse()
                .map_err(|_| CliError::Parse(format!("sources line {}: `{tok}` is not a vertex index", n + 1)))?;
            out.push(v);
        }
    }
    Ok(out)
}

pub fn load_sources(path: &Path) -> Result<Vec<usize>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(format!("reading {}", path.display()), e))?;
    parse_sources(&text)
}
