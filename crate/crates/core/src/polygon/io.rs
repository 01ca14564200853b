use std::fmt::Write as _;
use std::path::Path;

use super::{Polygon, PolygonError};
use crate::geom::{Point3, Tolerance};

/// Parses whitespace-separated vertex lines. Blank lines and lines starting
/// with `#` are ignored.
pub fn parse_polygon(text: &str, tol: Tolerance) -> Result<Polygon, PolygonError> {
    let mut vertices = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(PolygonError::Parse {
                line: idx + 1,
                message: format!("expected 3 numbers, found {}", fields.len()),
            });
        }
        let mut c = [0.0; 3];
        for (slot, f) in c.iter_mut().zip(&fields) {
            *slot = f.parse::<f64>().map_err(|e| PolygonError::Parse {
                line: idx + 1,
                message: format!("{f:?}: {e}"),
            })?;
        }
        vertices.push(Point3::from(c));
    }
    Polygon::new(vertices, tol)
}

/// One vertex per line, 17 significant digits.
pub fn format_polygon(k: &Polygon) -> String {
    let mut out = String::new();
    for v in k.vertices() {
        writeln!(out, "{:.16e} {:.16e} {:.16e}", v.x, v.y, v.z).unwrap();
    }
    out
}

pub fn read_polygon(path: impl AsRef<Path>, tol: Tolerance) -> Result<Polygon, PolygonError> {
    parse_polygon(&std::fs::read_to_string(path)?, tol)
}

pub fn write_polygon(k: &Polygon, path: impl AsRef<Path>) -> Result<(), PolygonError> {
    std::fs::write(path, format_polygon(k))?;
    Ok(())
}
