//! Voxel volumes and the `MSEPVOL` file format.
//!
//! A file is one ASCII header line `MSEPVOL <gray|bin> <nx> <ny> <nz>`
//! followed by the voxels with x fastest: little-endian `f64` for gray
//! volumes, one byte (0 or 1) for binary volumes.

use std::io::{BufRead, Write};

use msep_core::{Grid3, Separator};

use crate::error::{domain, VolumeError};

pub type Dims = (usize, usize, usize);

fn voxel_count(dims: Dims) -> Result<usize, VolumeError> {
    let (nx, ny, nz) = dims;
    if nx == 0 || ny == 0 || nz == 0 {
        return Err(domain("volume dimensions must be positive"));
    }
    nx.checked_mul(ny)
        .and_then(|p| p.checked_mul(nz))
        .ok_or_else(|| domain("volume too large"))
}

/// Truth volume: 1 marks void or membrane (the true separator), 0 marks
/// filament or cell interior.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryVolume {
    dims: Dims,
    labels: Vec<u8>,
}

impl BinaryVolume {
    pub fn new(dims: Dims, labels: Vec<u8>) -> Result<Self, VolumeError> {
        if labels.len() != voxel_count(dims)? {
            return Err(domain("label count does not match dimensions"));
        }
        if labels.iter().any(|&l| l > 1) {
            return Err(domain("binary labels must be 0 or 1"));
        }
        Ok(BinaryVolume { dims, labels })
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn grid(&self) -> Grid3 {
        Grid3::new(self.dims.0, self.dims.1, self.dims.2).expect("dimensions validated")
    }

    /// The voxels labeled 1.
    pub fn separator(&self) -> Separator {
        Separator::from_mask(self.labels.iter().map(|&l| l == 1).collect())
    }

    pub fn from_separator(dims: Dims, s: &Separator) -> Result<Self, VolumeError> {
        BinaryVolume::new(dims, s.mask().iter().map(|&b| b as u8).collect())
    }
}

/// Gray values in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GrayVolume {
    dims: Dims,
    values: Vec<f64>,
}

impl GrayVolume {
    pub fn new(dims: Dims, values: Vec<f64>) -> Result<Self, VolumeError> {
        if values.len() != voxel_count(dims)? {
            return Err(domain("value count does not match dimensions"));
        }
        if let Some(g) = values.iter().find(|g| !(0.0..=1.0).contains(*g)) {
            return Err(domain(format!("gray value {g} outside [0, 1]")));
        }
        Ok(GrayVolume { dims, values })
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn grid(&self) -> Grid3 {
        Grid3::new(self.dims.0, self.dims.1, self.dims.2).expect("dimensions validated")
    }
}

/// Stand-in for an infinite distance when there is nothing to measure from.
pub const FAR: f64 = f64::MAX;

/// Per-voxel distance to the structure a volume was drawn from, in the same
/// unit as `radius`.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceField {
    pub dims: Dims,
    pub values: Vec<f64>,
    /// Structure radius `r`; the gray weight is `1/2` at this distance.
    pub radius: f64,
}

/// Either kind of volume, as stored on disk.
#[derive(Clone, Debug, PartialEq)]
pub enum Volume {
    Gray(GrayVolume),
    Binary(BinaryVolume),
}

impl Volume {
    pub fn dims(&self) -> Dims {
        match self {
            Volume::Gray(g) => g.dims,
            Volume::Binary(b) => b.dims,
        }
    }

    pub fn write<W: Write>(&self, mut out: W) -> Result<(), VolumeError> {
        let (kind, (nx, ny, nz)) = match self {
            Volume::Gray(g) => ("gray", g.dims),
            Volume::Binary(b) => ("bin", b.dims),
        };
        writeln!(out, "MSEPVOL {kind} {nx} {ny} {nz}")?;
        match self {
            Volume::Gray(g) => {
                let mut buf = Vec::with_capacity(8 * g.values.len());
                for v in &g.values {
                    buf.extend_from_slice(&v.to_le_bytes());
                }
                out.write_all(&buf)?;
            }
            Volume::Binary(b) => out.write_all(&b.labels)?,
        }
        out.flush()?;
        Ok(())
    }

    pub fn read<R: BufRead>(mut input: R) -> Result<Self, VolumeError> {
        let mut header = Vec::new();
        input.read_until(b'\n', &mut header)?;
        let header = std::str::from_utf8(&header)
            .map_err(|_| VolumeError::Format("header is not ASCII".into()))?;
        let fields: Vec<&str> = header.trim_end_matches('\n').split(' ').collect();
        if fields.len() != 5 || fields[0] != "MSEPVOL" {
            return Err(VolumeError::Format(format!(
                "bad header {:?}",
                header.trim_end()
            )));
        }
        let dim = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| VolumeError::Format(format!("bad dimension {s:?}")))
        };
        let dims = (dim(fields[2])?, dim(fields[3])?, dim(fields[4])?);
        let n = voxel_count(dims).map_err(|e| VolumeError::Format(e.to_string()))?;
        let mut payload = Vec::new();
        input.read_to_end(&mut payload)?;
        let volume = match fields[1] {
            "gray" => {
                if payload.len() != 8 * n {
                    return Err(VolumeError::Format(format!(
                        "expected {} payload bytes, got {}",
                        8 * n,
                        payload.len()
                    )));
                }
                let values = payload
                    .chunks_exact(8)
                    .map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8")))
                    .collect();
                Volume::Gray(
                    GrayVolume::new(dims, values)
                        .map_err(|e| VolumeError::Format(e.to_string()))?,
                )
            }
            "bin" => {
                if payload.len() != n {
                    return Err(VolumeError::Format(format!(
                        "expected {n} payload bytes, got {}",
                        payload.len()
                    )));
                }
                Volume::Binary(
                    BinaryVolume::new(dims, payload)
                        .map_err(|e| VolumeError::Format(e.to_string()))?,
                )
            }
            other => {
                return Err(VolumeError::Format(format!(
                    "unknown volume kind {other:?}"
                )))
            }
        };
        Ok(volume)
    }
}
