use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use dmt_core::solvers::DmtCurve;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Serialize)]
struct CurveRow<'a> {
    r: f64,
    d: f64,
    variant: &'a str,
    m: usize,
    k: usize,
    n: usize,
}

pub fn json_bytes<T: Serialize>(value: &T) -> io::Result<Vec<u8>> {
    let mut out = serde_json::to_vec_pretty(value).map_err(io::Error::other)?;
    out.push(b'\n');
    Ok(out)
}

pub fn csv_bytes<T: Serialize>(rows: impl IntoIterator<Item = T>) -> io::Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(io::Error::other)?;
    }
    w.into_inner().map_err(|e| io::Error::other(e.to_string()))
}

/// Long-format CSV with columns `r,d,variant,m,k,n`.
pub fn curves_csv(curves: &[DmtCurve]) -> io::Result<Vec<u8>> {
    csv_bytes(curves.iter().flat_map(|c| {
        c.points.iter().map(move |p| CurveRow {
            r: p.r,
            d: p.d,
            variant: c.variant.name(),
            m: c.config.m(),
            k: c.config.k(),
            n: c.config.n(),
        })
    }))
}

/// Writes to `path` through a temporary file in the same directory, or to stdout.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> io::Result<()> {
    match path {
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(p) if !p.as_os_str().is_empty() => p,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(bytes)?;
            tmp.as_file().sync_all()?;
            tmp.persist(path).map_err(|e| e.error)?;
            Ok(())
        }
    }
}
