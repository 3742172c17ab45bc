//! Shape file I/O.
//!
//! A shape file is UTF-8 CSV with LF line endings: one metadata comment line,
//! the header `x,y,gamma,kappa`, then one row per vertex at 17 significant
//! digits. A structured-text sidecar `<path>.meta` carries the same metadata
//! as `key = value` lines for machine ingestion.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use ooid_core::{Point, SteadyShape};

use crate::fmtnum::file17;

/// Metadata recorded with every shape file.
#[derive(Debug, Clone, Copy)]
pub struct ShapeMeta {
    pub c1: f64,
    pub c2: f64,
    pub c1_hat: f64,
    pub q: f64,
    pub area: f64,
    pub samples: usize,
}

impl ShapeMeta {
    pub fn for_shape(shape: &SteadyShape, samples: usize) -> Self {
        let lp = shape.local_params;
        let (c1, c2) = match shape.nonlocal_params {
            Some(np) => (np.c1(), np.c2()),
            None => (lp.c1_hat() / shape.area, lp.c2_hat() / shape.area),
        };
        Self {
            c1,
            c2,
            c1_hat: lp.c1_hat(),
            q: lp.q(),
            area: shape.area,
            samples,
        }
    }
}

pub fn render_shape_csv(shape: &SteadyShape, meta: &ShapeMeta) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# c1={} c2={} c1_hat={} q={} area={}",
        file17(meta.c1),
        file17(meta.c2),
        file17(meta.c1_hat),
        file17(meta.q),
        file17(meta.area)
    );
    out.push_str("x,y,gamma,kappa\n");
    for p in &shape.points {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            file17(p.x),
            file17(p.y),
            file17(p.gamma),
            file17(p.kappa)
        );
    }
    out
}

pub fn render_sidecar(meta: &ShapeMeta) -> String {
    format!(
        "c1 = {}\nc2 = {}\nc1_hat = {}\nq = {}\narea = {}\nsamples = {}\n",
        file17(meta.c1),
        file17(meta.c2),
        file17(meta.c1_hat),
        file17(meta.q),
        file17(meta.area),
        meta.samples
    )
}

/// Write the shape CSV and its `.meta` sidecar.
pub fn write_shape(path: &Path, shape: &SteadyShape, meta: &ShapeMeta) -> io::Result<()> {
    fs::write(path, render_shape_csv(shape, meta))?;
    let mut sidecar = path.as_os_str().to_owned();
    sidecar.push(".meta");
    fs::write(sidecar, render_sidecar(meta))
}

/// Read the vertex coordinates of a shape file (comment lines and the header
/// are skipped; only the first two columns are used).
pub fn read_points(path: &Path) -> io::Result<Vec<Point>> {
    let text = fs::read_to_string(path)?;
    let mut pts = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut cols = line.split(',');
        let x = cols.next().map(str::trim);
        let y = cols.next().map(str::trim);
        match (x, y) {
            (Some(x), Some(y)) => match (x.parse::<f64>(), y.parse::<f64>()) {
                (Ok(x), Ok(y)) => pts.push([x, y]),
                _ if pts.is_empty() => continue, // header row
                _ => {
                    return Err(io::Error::new(
                        io::ErrorKind::InvalidData,
                        format!("unparsable row at line {}", lineno + 1),
                    ))
                }
            },
            _ => {
                return Err(io::Error::new(
                    io::ErrorKind::InvalidData,
                    format!("row with fewer than two columns at line {}", lineno + 1),
                ))
            }
        }
    }
    if pts.is_empty() {
        return Err(io::Error::new(
            io::ErrorKind::InvalidData,
            "no vertex rows found",
        ));
    }
    Ok(pts)
}
