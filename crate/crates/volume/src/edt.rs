//! Exact Euclidean distance transform on a voxel grid, by separable lower
//! envelopes of parabolas along x, then y, then z.

use crate::volume::{Dims, FAR};

/// Squared distance transform of a sampled function along one line.
fn transform_line(f: &[f64], out: &mut [f64], v: &mut [usize], z: &mut [f64]) {
    let n = f.len();
    let mut k = 0usize;
    let mut started = false;
    for q in 0..n {
        if f[q] == f64::INFINITY {
            continue;
        }
        if !started {
            v[0] = q;
            z[0] = f64::NEG_INFINITY;
            z[1] = f64::INFINITY;
            started = true;
            continue;
        }
        loop {
            let p = v[k];
            let s =
                ((f[q] + (q * q) as f64) - (f[p] + (p * p) as f64)) / (2.0 * (q as f64 - p as f64));
            // z[0] is -inf, so this never pops the last parabola.
            if s <= z[k] {
                k -= 1;
                continue;
            }
            k += 1;
            v[k] = q;
            z[k] = s;
            z[k + 1] = f64::INFINITY;
            break;
        }
    }
    if !started {
        out.iter_mut().for_each(|o| *o = f64::INFINITY);
        return;
    }
    let mut j = 0;
    for (q, o) in out.iter_mut().enumerate() {
        while z[j + 1] < q as f64 {
            j += 1;
        }
        let d = q as f64 - v[j] as f64;
        *o = d * d + f[v[j]];
    }
}

/// Euclidean distance, in voxels, from every voxel to the nearest voxel with
/// `feature` set. [`FAR`] everywhere if there is no feature voxel.
pub fn distance_transform(dims: Dims, feature: &[bool]) -> Vec<f64> {
    let (nx, ny, nz) = dims;
    assert_eq!(feature.len(), nx * ny * nz);
    let mut d: Vec<f64> = feature
        .iter()
        .map(|&b| if b { 0.0 } else { f64::INFINITY })
        .collect();
    let longest = nx.max(ny).max(nz);
    let mut line = vec![0.0; longest];
    let mut out = vec![0.0; longest];
    let mut v = vec![0usize; longest];
    let mut z = vec![0.0; longest + 1];
    let strides = [(nx, 1usize), (ny, nx), (nz, nx * ny)];
    for (axis, &(len, stride)) in strides.iter().enumerate() {
        for start in 0..nx * ny * nz {
            // Visit each line once, from its first voxel along this axis.
            let (x, y, zc) = (start % nx, (start / nx) % ny, start / (nx * ny));
            let first = match axis {
                0 => x == 0,
                1 => y == 0,
                _ => zc == 0,
            };
            if !first {
                continue;
            }
            for i in 0..len {
                line[i] = d[start + i * stride];
            }
            transform_line(&line[..len], &mut out[..len], &mut v, &mut z);
            for i in 0..len {
                d[start + i * stride] = out[i];
            }
        }
    }
    d.into_iter()
        .map(|s| if s.is_finite() { s.sqrt() } else { FAR })
        .collect()
}
