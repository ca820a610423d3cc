//! Binary field snapshots.
//!
//! Layout, all little-endian: `b"ISTF"`, `u32` version (1), `u32` dimension count,
//! one `u32` point count per axis, one `f64` half width per axis, then the samples as
//! interleaved `(re, im)` `f64` pairs in row-major order.

use std::io::{Read, Write};

use num_complex::Complex;

use super::field::{ComplexField1D, ComplexField2D};
use super::grid::{Grid1D, Grid2D};
use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};

const MAGIC: &[u8; 4] = b"ISTF";
const VERSION: u32 = 1;

/// A decoded snapshot of either dimension.
#[derive(Clone, Debug, PartialEq)]
pub enum Snapshot<T> {
    One(ComplexField1D<T>),
    Two(ComplexField2D<T>),
}

fn write_header<W: Write>(w: &mut W, counts: &[usize], widths: &[f64]) -> Result<()> {
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&(counts.len() as u32).to_le_bytes())?;
    for &n in counts {
        let n = u32::try_from(n).map_err(|_| Error::Format("axis too long".into()))?;
        w.write_all(&n.to_le_bytes())?;
    }
    for &l in widths {
        w.write_all(&l.to_le_bytes())?;
    }
    Ok(())
}

fn write_samples<W: Write, T: Real>(w: &mut W, samples: &[Complex<T>]) -> Result<()> {
    let mut bytes = Vec::with_capacity(samples.len() * 16);
    for z in samples {
        bytes.extend_from_slice(&to_f64(z.re).to_le_bytes());
        bytes.extend_from_slice(&to_f64(z.im).to_le_bytes());
    }
    w.write_all(&bytes)?;
    Ok(())
}

pub fn write_field_1d<W: Write, T: Real>(w: &mut W, f: &ComplexField1D<T>) -> Result<()> {
    write_header(w, &[f.grid().len()], &[to_f64(f.grid().half_width())])?;
    write_samples(w, f.samples())
}

pub fn write_field_2d<W: Write, T: Real>(w: &mut W, f: &ComplexField2D<T>) -> Result<()> {
    let (n1, n2) = f.grid().shape();
    let (l1, l2) = f.grid().half_widths();
    write_header(w, &[n1, n2], &[to_f64(l1), to_f64(l2)])?;
    write_samples(w, f.samples())
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_f64<R: Read>(r: &mut R) -> Result<f64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(f64::from_le_bytes(b))
}

pub fn read_snapshot<R: Read, T: Real>(r: &mut R) -> Result<Snapshot<T>> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Format("bad magic".into()));
    }
    let version = read_u32(r)?;
    if version != VERSION {
        return Err(Error::Format(format!("unsupported version {version}")));
    }
    let dims = read_u32(r)? as usize;
    if !(1..=2).contains(&dims) {
        return Err(Error::Format(format!("unsupported dimension count {dims}")));
    }
    let counts: Vec<usize> = (0..dims).map(|_| read_u32(r).map(|n| n as usize)).collect::<Result<_>>()?;
    let widths: Vec<T> = (0..dims).map(|_| read_f64(r).map(lit::<T>)).collect::<Result<_>>()?;
    let total: usize = counts.iter().product();
    let mut samples = Vec::with_capacity(total);
    for _ in 0..total {
        let re = read_f64(r)?;
        let im = read_f64(r)?;
        samples.push(Complex::new(lit::<T>(re), lit::<T>(im)));
    }
    if dims == 1 {
        Ok(Snapshot::One(ComplexField1D::new(Grid1D::new(counts[0], widths[0])?, samples)?))
    } else {
        let grid = Grid2D::new(counts[0], counts[1], widths[0], widths[1])?;
        Ok(Snapshot::Two(ComplexField2D::new(grid, samples)?))
    }
}
