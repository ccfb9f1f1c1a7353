//! CSV/JSON emission and atomic file writes.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use szego_core::C64;

use crate::CliError;

/// 17 significant digits, enough to round-trip any binary64.
pub fn fmt17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

/// Writes `bytes` to a sibling temporary file, then renames it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// Sends output to `path`, or to stdout when there is none.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => write_atomic(p, bytes),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes).and_then(|_| out.flush()).map_err(|e| CliError::Io(format!("stdout: {e}")))
        }
    }
}

pub enum Cell {
    Num(f64),
    Int(i64),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => fmt17(*x),
            Cell::Int(k) => k.to_string(),
        }
    }
}

pub fn csv_bytes(header: &[&str], rows: impl IntoIterator<Item = Vec<Cell>>) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| CliError::Io(format!("csv: {e}"));
    w.write_record(header).map_err(err)?;
    for row in rows {
        w.write_record(row.iter().map(Cell::render)).map_err(err)?;
    }
    w.into_inner().map_err(|e| CliError::Io(format!("csv: {e}")))
}

pub fn json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut v = serde_json::to_vec_pretty(value).map_err(|e| CliError::Io(format!("json: {e}")))?;
    v.push(b'\n');
    Ok(v)
}

/// Points from a CSV whose first two columns are `re, im`; a header row is
/// skipped when it does not parse as numbers. A third integer column, if
/// present, is returned as the cluster size.
pub fn read_points(path: &Path) -> Result<Vec<(C64, usize)>, CliError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_path(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let num = |j: usize| rec.get(j).and_then(|s| s.parse::<f64>().ok());
        match (num(0), num(1)) {
            (Some(re), Some(im)) => {
                let mult = rec.get(2).and_then(|s| s.parse::<usize>().ok()).unwrap_or(1);
                out.push((C64::new(re, im), mult));
            }
            _ if i == 0 => continue,
            _ => {
                return Err(CliError::Config(format!("{}: row {} is not a point", path.display(), i + 1)));
            }
        }
    }
    Ok(out)
}

/// `{re, im}` for JSON output.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct JsonC {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for JsonC {
    fn from(z: C64) -> Self {
        JsonC { re: z.re, im: z.im }
    }
}
