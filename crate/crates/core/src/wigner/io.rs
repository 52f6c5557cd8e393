//! Grid output: a JSON manifest plus CSV rows `x,y,re,im` or a raw
//! little-endian `f64` stream of `(re, im)` pairs in row-major order.

use std::io::{Read, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::{AxisKind, Grid2D, GridFunction2D};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridManifest {
    #[serde(rename = "L", serialize_with = "compact_f64")]
    pub l: f64,
    #[serde(rename = "N")]
    pub n: usize,
    pub axis_y: AxisKind,
}

/// Integral values are written without a fractional part.
fn compact_f64<S: serde::Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.fract() == 0.0 && v.abs() < 9.0e15 {
        s.serialize_i64(*v as i64)
    } else {
        s.serialize_f64(*v)
    }
}

impl GridManifest {
    pub fn of(f: &GridFunction2D) -> Self {
        Self { l: f.grid.half_width(), n: f.grid.len(), axis_y: f.axis_y }
    }

    pub fn grid(&self) -> Result<Grid2D> {
        Grid2D::new(self.l, self.n)
    }
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::Malformed(e.to_string())
}

#[derive(Serialize, Deserialize)]
struct Row {
    x: f64,
    y: f64,
    re: f64,
    im: f64,
}

pub fn write_csv<W: Write>(f: &GridFunction2D, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let xs = f.x_axis().coords;
    let ys = f.y_axis().coords;
    for (i, &x) in xs.iter().enumerate() {
        for (k, &y) in ys.iter().enumerate() {
            let z = f.at(i, k);
            w.serialize(Row { x, y, re: z.re, im: z.im }).map_err(io_err)?;
        }
    }
    w.flush().map_err(io_err)
}

/// Reads rows written by [`write_csv`]; coordinates must follow the
/// manifest's grid order.
pub fn read_csv<R: Read>(manifest: &GridManifest, input: R) -> Result<GridFunction2D> {
    let grid = manifest.grid()?;
    let mut r = csv::Reader::from_reader(input);
    let data = r
        .deserialize::<Row>()
        .map(|row| row.map(|r| Complex64::new(r.re, r.im)).map_err(io_err))
        .collect::<Result<Vec<_>>>()?;
    GridFunction2D::from_data(grid, manifest.axis_y, data)
}

pub fn write_raw<W: Write>(f: &GridFunction2D, mut out: W) -> Result<()> {
    for z in &f.data {
        out.write_all(&z.re.to_le_bytes()).map_err(io_err)?;
        out.write_all(&z.im.to_le_bytes()).map_err(io_err)?;
    }
    out.flush().map_err(io_err)
}

pub fn read_raw<R: Read>(manifest: &GridManifest, mut input: R) -> Result<GridFunction2D> {
    let grid = manifest.grid()?;
    let mut bytes = Vec::new();
    input.read_to_end(&mut bytes).map_err(io_err)?;
    if bytes.len() % 16 != 0 {
        return Err(Error::Malformed("raw stream length is not a multiple of 16 bytes".into()));
    }
    let data = bytes
        .chunks_exact(16)
        .map(|c| {
            let re = f64::from_le_bytes(c[..8].try_into().expect("8 bytes"));
            let im = f64::from_le_bytes(c[8..].try_into().expect("8 bytes"));
            Complex64::new(re, im)
        })
        .collect();
    GridFunction2D::from_data(grid, manifest.axis_y, data)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> GridFunction2D {
        let g = Grid2D::new(3.0, 8).unwrap();
        GridFunction2D::from_fn(g, AxisKind::Dual, |x, y| Complex64::new(x * 0.1 + y, -x / 3.0))
    }

    #[test]
    fn manifest_shape() {
        let m = GridManifest { l: 12.0, n: 256, axis_y: AxisKind::Dual };
        assert_eq!(serde_json::to_string(&m).unwrap(), r#"{"L":12,"N":256,"axis_y":"dual"}"#);
        let back: GridManifest = serde_json::from_str(r#"{"L":12,"N":256,"axis_y":"dual"}"#).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn csv_round_trip() {
        let f = sample();
        let mut buf = Vec::new();
        write_csv(&f, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("x,y,re,im\n"));
        assert_eq!(read_csv(&GridManifest::of(&f), buf.as_slice()).unwrap(), f);
    }

    #[test]
    fn raw_round_trip() {
        let f = sample();
        let mut buf = Vec::new();
        write_raw(&f, &mut buf).unwrap();
        assert_eq!(buf.len(), 64 * 16);
        assert_eq!(read_raw(&GridManifest::of(&f), buf.as_slice()).unwrap(), f);
        assert!(read_raw(&GridManifest::of(&f), &buf[..17]).is_err());
    }
}
