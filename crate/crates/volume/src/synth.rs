//! Synthetic truth volumes of filaments and foam cells, and noisy gray
//! volumes derived from their distance fields.

use msep_core::Grid3;
use rand::Rng;

use crate::edt::distance_transform;
use crate::error::{domain, VolumeError};
use crate::rng::{self, normal_pair};
use crate::volume::{BinaryVolume, DistanceField, GrayVolume, FAR};

/// Gray weight of the structure distribution at distance `d`:
/// `1 / (1 + (w_max / (1 - w_max))^(d/r - 1))`. Equals `w_max` at 0 and
/// `1/2` at `r`, and decreases to 0.
pub fn weight(d: f64, r: f64, w_max: f64) -> Result<f64, VolumeError> {
    if !(d >= 0.0) {
        return Err(domain(format!("distance {d} must be nonnegative")));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(domain(format!("radius {r} must be positive")));
    }
    if !(w_max > 0.5 && w_max < 1.0) {
        return Err(domain(format!("w_max {w_max} must lie in (1/2, 1)")));
    }
    Ok(weight_unchecked(d, r, w_max))
}

#[inline]
fn weight_unchecked(d: f64, r: f64, w_max: f64) -> f64 {
    1.0 / (1.0 + (w_max / (1.0 - w_max)).powf(d / r - 1.0))
}

/// Noise level `t` and the endpoints between which the two normal
/// distributions are interpolated. Distribution 1 dominates near the
/// structure, distribution 2 far from it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseParams {
    pub t: f64,
    /// `[start, end]` pairs.
    pub mu1: [f64; 2],
    pub sigma1: [f64; 2],
    pub mu2: [f64; 2],
    pub sigma2: [f64; 2],
    pub w_max: f64,
}

/// Means and deviations at a fixed noise level.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mixture {
    pub mu1: f64,
    pub sigma1: f64,
    pub mu2: f64,
    pub sigma2: f64,
}

impl NoiseParams {
    /// Dark filaments on bright void.
    pub fn filaments(t: f64) -> Self {
        NoiseParams {
            t,
            mu1: [0.3, 0.38],
            sigma1: [0.05, 0.1],
            mu2: [0.7, 0.62],
            sigma2: [0.05, 0.1],
            w_max: 0.9,
        }
    }

    /// Bright membranes around dark cells.
    pub fn cells(t: f64) -> Self {
        NoiseParams {
            t,
            mu1: [0.7, 0.55],
            sigma1: [0.05, 0.1],
            mu2: [0.3, 0.45],
            sigma2: [0.05, 0.1],
            w_max: 0.9,
        }
    }

    pub fn validate(&self) -> Result<(), VolumeError> {
        if !(0.0..=1.0).contains(&self.t) {
            return Err(domain(format!("noise level {} outside [0, 1]", self.t)));
        }
        if !(self.w_max > 0.5 && self.w_max < 1.0) {
            return Err(domain(format!("w_max {} must lie in (1/2, 1)", self.w_max)));
        }
        if self.sigma1.iter().chain(&self.sigma2).any(|s| !(*s >= 0.0)) {
            return Err(domain("standard deviations must be nonnegative"));
        }
        Ok(())
    }

    pub fn mixture(&self) -> Mixture {
        let at = |p: [f64; 2]| (1.0 - self.t) * p[0] + self.t * p[1];
        Mixture {
            mu1: at(self.mu1),
            sigma1: at(self.sigma1),
            mu2: at(self.mu2),
            sigma2: at(self.sigma2),
        }
    }
}

/// Per voxel `g = w(d) g1 + (1 - w(d)) g2` with `g1 ~ N(μ1, σ1)` and
/// `g2 ~ N(μ2, σ2)` drawn independently, clipped to `[0, 1]`.
pub fn gray_from_distance(
    df: &DistanceField,
    params: &NoiseParams,
    seed: u64,
) -> Result<GrayVolume, VolumeError> {
    params.validate()?;
    if !(df.radius > 0.0) {
        return Err(domain("distance field radius must be positive"));
    }
    let Mixture {
        mu1,
        sigma1,
        mu2,
        sigma2,
    } = params.mixture();
    let (nx, ny, nz) = df.dims;
    let slice = nx * ny;
    let mut values = Vec::with_capacity(df.values.len());
    for z in 0..nz {
        let mut r = rng::stream(seed, rng::NOISE + z as u64);
        for &d in &df.values[z * slice..(z + 1) * slice] {
            let (a, b) = normal_pair(&mut r);
            let w = weight_unchecked(d, df.radius, params.w_max);
            let g = w * (mu1 + sigma1 * a) + (1.0 - w) * (mu2 + sigma2 * b);
            values.push(g.clamp(0.0, 1.0));
        }
    }
    GrayVolume::new(df.dims, values)
}

type P3 = [f64; 3];

fn sub(a: P3, b: P3) -> P3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: P3, b: P3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn dist(a: P3, b: P3) -> f64 {
    let d = sub(a, b);
    dot(d, d).sqrt()
}

fn segment_distance(p: P3, a: P3, b: P3) -> f64 {
    let ab = sub(b, a);
    let len2 = dot(ab, ab);
    let t = if len2 > 0.0 {
        (dot(sub(p, a), ab) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    dist(p, [a[0] + t * ab[0], a[1] + t * ab[1], a[2] + t * ab[2]])
}

/// Catmull-Rom spline through four control points, extended past both ends
/// by reflection so that it passes through all four.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spline {
    pub control: [P3; 4],
}

impl Spline {
    /// Endpoints on opposite faces of `[-0.2, 1.2]^3`, interior points uniform
    /// in the unit cube and ordered along the crossing axis.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let axis = rng.gen_range(0..3);
        let mut face = |level: f64| {
            let mut p: P3 = [0.0; 3];
            for (i, c) in p.iter_mut().enumerate() {
                *c = if i == axis {
                    level
                } else {
                    rng.gen_range(-0.2..1.2)
                };
            }
            p
        };
        let (start, end) = (face(-0.2), face(1.2));
        let mut inner: [P3; 2] = [[0.0; 3]; 2];
        for p in inner.iter_mut() {
            for c in p.iter_mut() {
                *c = rng.gen::<f64>();
            }
        }
        if inner[0][axis] > inner[1][axis] {
            inner.swap(0, 1);
        }
        Spline {
            control: [start, inner[0], inner[1], end],
        }
    }

    /// Point at parameter `t ∈ [0, 3]`; integer `t` hits the control points.
    pub fn point(&self, t: f64) -> P3 {
        let c = &self.control;
        let reflect = |a: P3, b: P3| [2.0 * a[0] - b[0], 2.0 * a[1] - b[1], 2.0 * a[2] - b[2]];
        let ext = [
            reflect(c[0], c[1]),
            c[0],
            c[1],
            c[2],
            c[3],
            reflect(c[3], c[2]),
        ];
        let seg = (t.floor() as usize).min(2);
        let u = t - seg as f64;
        let [p0, p1, p2, p3] = [ext[seg], ext[seg + 1], ext[seg + 2], ext[seg + 3]];
        let mut out = [0.0; 3];
        for i in 0..3 {
            out[i] = 0.5
                * (2.0 * p1[i]
                    + (p2[i] - p0[i]) * u
                    + (2.0 * p0[i] - 5.0 * p1[i] + 4.0 * p2[i] - p3[i]) * u * u
                    + (3.0 * p1[i] - p0[i] - 3.0 * p2[i] + p3[i]) * u * u * u);
        }
        out
    }

    /// Samples no farther apart than about `step`, including both ends.
    pub fn polyline(&self, step: f64) -> Vec<P3> {
        let mut points = Vec::new();
        for seg in 0..3 {
            let coarse: Vec<P3> = (0..=32)
                .map(|i| self.point(seg as f64 + i as f64 / 32.0))
                .collect();
            let fastest = coarse
                .windows(2)
                .map(|w| dist(w[0], w[1]))
                .fold(0.0, f64::max);
            let n = ((32.0 * fastest / step).ceil() as usize).max(1);
            points.extend((0..n).map(|i| self.point(seg as f64 + i as f64 / n as f64)));
        }
        points.push(self.point(3.0));
        points
    }
}

/// Uniform bucket grid over points or segments, for nearest-distance queries.
struct Buckets {
    origin: P3,
    h: f64,
    dims: [i64; 3],
    cells: Vec<Vec<u32>>,
}

impl Buckets {
    fn new(lo: P3, hi: P3, h: f64) -> Self {
        let dims = [0, 1, 2].map(|i| (((hi[i] - lo[i]) / h).floor() as i64 + 1).max(1));
        let count = (dims[0] * dims[1] * dims[2]) as usize;
        Buckets {
            origin: lo,
            h,
            dims,
            cells: vec![Vec::new(); count],
        }
    }

    fn cell(&self, p: P3) -> [i64; 3] {
        [0, 1, 2]
            .map(|i| (((p[i] - self.origin[i]) / self.h).floor() as i64).clamp(0, self.dims[i] - 1))
    }

    fn slot(&self, c: [i64; 3]) -> usize {
        (c[0] + self.dims[0] * (c[1] + self.dims[1] * c[2])) as usize
    }

    fn insert_box(&mut self, lo: P3, hi: P3, id: u32) {
        let (a, b) = (self.cell(lo), self.cell(hi));
        for z in a[2]..=b[2] {
            for y in a[1]..=b[1] {
                for x in a[0]..=b[0] {
                    let s = self.slot([x, y, z]);
                    self.cells[s].push(id);
                }
            }
        }
    }

    /// Calls `visit` on every id in cells at Chebyshev distance `k` from `c`.
    fn ring(&self, c: [i64; 3], k: i64, mut visit: impl FnMut(u32)) {
        for dz in -k..=k {
            for dy in -k..=k {
                for dx in -k..=k {
                    if dx.abs().max(dy.abs()).max(dz.abs()) != k {
                        continue;
                    }
                    let q = [c[0] + dx, c[1] + dy, c[2] + dz];
                    if (0..3).any(|i| q[i] < 0 || q[i] >= self.dims[i]) {
                        continue;
                    }
                    for &id in &self.cells[self.slot(q)] {
                        visit(id);
                    }
                }
            }
        }
    }

    /// Smallest `metric(id)` over all ids, scanning rings outward until no
    /// unvisited cell can hold anything closer.
    fn nearest(&self, p: P3, mut metric: impl FnMut(u32) -> f64) -> f64 {
        let c = self.cell(p);
        let reach = (0..3)
            .map(|i| c[i].max(self.dims[i] - 1 - c[i]))
            .max()
            .unwrap_or(0);
        let mut best = FAR;
        for k in 0..=reach {
            if k > 0 && best <= (k - 1) as f64 * self.h {
                break;
            }
            self.ring(c, k, |id| best = best.min(metric(id)));
        }
        best
    }
}

fn bounds(points: impl Iterator<Item = P3>) -> (P3, P3) {
    let mut lo = [0.0f64; 3];
    let mut hi = [1.0f64; 3];
    for p in points {
        for i in 0..3 {
            lo[i] = lo[i].min(p[i]);
            hi[i] = hi[i].max(p[i]);
        }
    }
    (lo, hi)
}

fn voxel_center(m: usize, id: usize) -> P3 {
    let (x, y, z) = (id % m, (id / m) % m, id / (m * m));
    [
        (x as f64 + 0.5) / m as f64,
        (y as f64 + 0.5) / m as f64,
        (z as f64 + 0.5) / m as f64,
    ]
}

/// Filament synthesis parameters. Lengths are in unit-cube coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FilamentParams {
    pub m: usize,
    pub n_splines: usize,
    /// Minimum distance between any two splines inside the unit cube.
    pub d_min: f64,
    /// Filament radius.
    pub r: f64,
    /// Spline draws allowed before giving up.
    pub max_draws: usize,
}

/// Spline count giving the same line density across sizes: 12 at `m = 64`.
pub fn default_spline_count(m: usize) -> usize {
    ((12.0 * (m as f64 / 64.0).powi(2)).round() as usize).max(1)
}

impl FilamentParams {
    pub fn new(m: usize) -> Self {
        FilamentParams {
            m,
            n_splines: default_spline_count(m),
            d_min: 10.0 / m as f64,
            r: 0.75 / m as f64,
            max_draws: 20_000,
        }
    }
}

/// A synthesized filament volume.
#[derive(Clone, Debug)]
pub struct Filaments {
    pub truth: BinaryVolume,
    pub distance: DistanceField,
    pub splines: Vec<Spline>,
}

fn inside_unit_cube(p: &P3) -> bool {
    p.iter().all(|c| (0.0..=1.0).contains(c))
}

/// Rejection-samples splines until `n_splines` are pairwise at least `d_min`
/// apart, then labels each voxel 0 iff its center lies within `r` of a spline.
pub fn synth_filaments(params: &FilamentParams, seed: u64) -> Result<Filaments, VolumeError> {
    if params.m == 0 {
        return Err(domain("m must be positive"));
    }
    if !(params.r > 0.0) || !(params.d_min >= 0.0) {
        return Err(domain("r must be positive and d_min nonnegative"));
    }
    let step = params.r / 4.0;
    let mut rng = rng::stream(seed, rng::SPLINES);
    let mut accepted = Vec::new();
    let h = params.d_min.max(1.0 / 64.0);
    let mut samples: Vec<P3> = Vec::new();
    let mut index = Buckets::new([0.0; 3], [1.0; 3], h);
    let mut draws = 0;
    while accepted.len() < params.n_splines {
        if draws == params.max_draws {
            return Err(VolumeError::RejectionBudget {
                accepted: accepted.len(),
                requested: params.n_splines,
                attempts: draws,
            });
        }
        draws += 1;
        let spline = Spline::random(&mut rng);
        let inside: Vec<P3> = spline
            .polyline(step)
            .into_iter()
            .filter(inside_unit_cube)
            .collect();
        let clear = inside.iter().all(|&p| {
            let c = index.cell(p);
            let mut ok = true;
            for k in 0..=1 {
                index.ring(c, k, |id| {
                    ok &= dist(p, samples[id as usize]) >= params.d_min
                });
            }
            ok
        });
        if !clear {
            continue;
        }
        for p in inside {
            index.insert_box(p, p, samples.len() as u32);
            samples.push(p);
        }
        accepted.push(spline);
    }
    let (truth, distance) = rasterize_splines(params.m, &accepted, params.r);
    Ok(Filaments {
        truth,
        distance,
        splines: accepted,
    })
}

/// Exact distance from each voxel center to the sampled splines, and the
/// truth volume with label 0 where that distance is at most `r`.
pub fn rasterize_splines(m: usize, splines: &[Spline], r: f64) -> (BinaryVolume, DistanceField) {
    let n = m * m * m;
    let dims = (m, m, m);
    let step = r / 4.0;
    let lines: Vec<Vec<P3>> = splines.iter().map(|s| s.polyline(step)).collect();
    let segments: Vec<(P3, P3)> = lines
        .iter()
        .flat_map(|l| l.windows(2).map(|w| (w[0], w[1])))
        .collect();
    let values: Vec<f64> = if segments.is_empty() {
        vec![FAR; n]
    } else {
        let (lo, hi) = bounds(lines.iter().flatten().copied());
        let mut index = Buckets::new(lo, hi, 6.0 / m as f64);
        for (i, &(a, b)) in segments.iter().enumerate() {
            let smin = [0, 1, 2].map(|k| a[k].min(b[k]));
            let smax = [0, 1, 2].map(|k| a[k].max(b[k]));
            index.insert_box(smin, smax, i as u32);
        }
        (0..n)
            .map(|id| {
                let p = voxel_center(m, id);
                index.nearest(p, |s| {
                    segment_distance(p, segments[s as usize].0, segments[s as usize].1)
                })
            })
            .collect()
    };
    let labels = values.iter().map(|&d| u8::from(d > r)).collect();
    (
        BinaryVolume::new(dims, labels).expect("shape is consistent"),
        DistanceField {
            dims,
            values,
            radius: r,
        },
    )
}

/// Foam-cell synthesis parameters. Lengths are in voxels.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CellParams {
    pub m: usize,
    pub n_seeds: usize,
    /// Erosion uses a ball of radius `d_min / 2 + r`.
    pub d_min: f64,
    /// Membrane dilation radius.
    pub r: f64,
    /// Seed draws allowed before giving up.
    pub max_draws: usize,
}

/// Seed count giving the same cell density across sizes: 64 at `m = 64`.
pub fn default_cell_count(m: usize) -> usize {
    ((64.0 * (m as f64 / 64.0).powi(3)).round() as usize).max(2)
}

impl CellParams {
    pub fn new(m: usize) -> Self {
        CellParams {
            m,
            n_seeds: default_cell_count(m),
            d_min: 8.0,
            r: 0.75,
            max_draws: 0,
        }
    }
}

/// A synthesized foam-cell volume. `cells` holds the final integer labels,
/// 0 on membranes.
#[derive(Clone, Debug)]
pub struct Cells {
    pub truth: BinaryVolume,
    pub distance: DistanceField,
    pub cells: Vec<u32>,
}

/// Runs the whole pipeline: seeds, random growth, erosion, one piece per
/// label, breadth-first regrowth, membrane dilation, binarization.
pub fn synth_cells(params: &CellParams, seed: u64) -> Result<Cells, VolumeError> {
    let m = params.m;
    if m == 0 {
        return Err(domain("m must be positive"));
    }
    if !(params.r >= 0.0) || !(params.d_min >= 0.0) {
        return Err(domain("r and d_min must be nonnegative"));
    }
    let grid = Grid3::new(m, m, m)?;
    let budget = if params.max_draws == 0 {
        100 * params.n_seeds + 10_000
    } else {
        params.max_draws
    };
    let mut labels = place_seeds(&grid, params.n_seeds, budget, seed)?;
    grow_randomly(&grid, &mut labels, seed);
    let mut labels = erode(&grid, &labels, params.d_min / 2.0 + params.r);
    keep_largest_pieces(&grid, &mut labels);
    regrow(&grid, &mut labels);
    let membrane: Vec<bool> = labels.iter().map(|&l| l == 0).collect();
    let values = distance_transform(grid.dims, &membrane);
    for (l, &d) in labels.iter_mut().zip(&values) {
        if d <= params.r {
            *l = 0;
        }
    }
    let truth = BinaryVolume::new(
        grid.dims,
        labels.iter().map(|&l| u8::from(l == 0)).collect(),
    )?;
    Ok(Cells {
        truth,
        distance: DistanceField {
            dims: grid.dims,
            values,
            radius: params.r,
        },
        cells: labels,
    })
}

/// `n` pairwise non-adjacent voxels drawn uniformly, labeled `1..=n`.
pub fn place_seeds(
    grid: &Grid3,
    n: usize,
    max_draws: usize,
    seed: u64,
) -> Result<Vec<u32>, VolumeError> {
    let count = grid.node_count();
    let mut labels = vec![0u32; count];
    let mut rng = rng::stream(seed, rng::CELL_SEEDS);
    let mut placed = 0;
    let mut draws = 0;
    while placed < n {
        if draws == max_draws {
            return Err(VolumeError::SeedCapacity {
                placed,
                requested: n,
            });
        }
        draws += 1;
        let v = rng.gen_range(0..count);
        if labels[v] != 0
            || grid
                .graph
                .neighbors(v)
                .iter()
                .any(|&w| labels[w as usize] != 0)
        {
            continue;
        }
        placed += 1;
        labels[v] = placed as u32;
    }
    Ok(labels)
}

/// The single nonzero label among the neighbors of `v`, if there is exactly one.
fn unique_neighbor_label(grid: &Grid3, labels: &[u32], v: usize) -> Option<u32> {
    let mut found = 0;
    for &w in grid.graph.neighbors(v) {
        let l = labels[w as usize];
        if l != 0 {
            if found != 0 && found != l {
                return None;
            }
            found = l;
        }
    }
    (found != 0).then_some(found)
}

/// Repeatedly labels a uniformly drawn unlabeled voxel whose labeled
/// neighbors all carry the same label, until no such voxel is left.
pub fn grow_randomly(grid: &Grid3, labels: &mut [u32], seed: u64) {
    const ABSENT: u32 = u32::MAX;
    let mut rng = rng::stream(seed, rng::CELL_GROWTH);
    let mut pos = vec![ABSENT; labels.len()];
    let mut open: Vec<u32> = Vec::new();
    for v in 0..labels.len() {
        if labels[v] == 0 && unique_neighbor_label(grid, labels, v).is_some() {
            pos[v] = open.len() as u32;
            open.push(v as u32);
        }
    }
    while !open.is_empty() {
        let v = open[rng.gen_range(0..open.len())] as usize;
        let remove = |open: &mut Vec<u32>, pos: &mut [u32], v: usize| {
            let i = pos[v] as usize;
            open.swap_remove(i);
            if i < open.len() {
                pos[open[i] as usize] = i as u32;
            }
            pos[v] = ABSENT;
        };
        remove(&mut open, &mut pos, v);
        labels[v] =
            unique_neighbor_label(grid, labels, v).expect("open voxels have a unique label");
        for &w in grid.graph.neighbors(v) {
            let w = w as usize;
            if labels[w] != 0 {
                continue;
            }
            let eligible = unique_neighbor_label(grid, labels, w).is_some();
            if eligible && pos[w] == ABSENT {
                pos[w] = open.len() as u32;
                open.push(w as u32);
            } else if !eligible && pos[w] != ABSENT {
                remove(&mut open, &mut pos, w);
            }
        }
    }
}

/// Integer offsets of Euclidean length at most `radius`.
pub fn ball(radius: f64) -> Vec<[i64; 3]> {
    let k = radius.floor() as i64;
    let mut out = Vec::new();
    for dz in -k..=k {
        for dy in -k..=k {
            for dx in -k..=k {
                if ((dx * dx + dy * dy + dz * dz) as f64) <= radius * radius {
                    out.push([dx, dy, dz]);
                }
            }
        }
    }
    out
}

/// Keeps a nonzero label only where every in-bounds voxel within `radius`
/// carries the same label. Voxels outside the volume do not erode.
pub fn erode(grid: &Grid3, labels: &[u32], radius: f64) -> Vec<u32> {
    let offsets = ball(radius);
    let (nx, ny, nz) = grid.dims;
    let dims = [nx as i64, ny as i64, nz as i64];
    let mut out = labels.to_vec();
    for (v, o) in out.iter_mut().enumerate() {
        let l = labels[v];
        if l == 0 {
            continue;
        }
        let (x, y, z) = grid.coords(v);
        let c = [x as i64, y as i64, z as i64];
        let worn = offsets.iter().any(|d| {
            let q = [c[0] + d[0], c[1] + d[1], c[2] + d[2]];
            (0..3).all(|i| q[i] >= 0 && q[i] < dims[i])
                && labels[grid.index(q[0] as usize, q[1] as usize, q[2] as usize)] != l
        });
        if worn {
            *o = 0;
        }
    }
    out
}

/// Within each label keeps the largest connected piece (the first found on
/// ties) and clears the rest.
pub fn keep_largest_pieces(grid: &Grid3, labels: &mut [u32]) {
    let n = labels.len();
    let mut piece = vec![u32::MAX; n];
    let top = labels.iter().copied().max().unwrap_or(0) as usize;
    let mut best = vec![(0usize, u32::MAX); top + 1];
    let mut stack = Vec::new();
    let mut next = 0u32;
    for s in 0..n {
        if labels[s] == 0 || piece[s] != u32::MAX {
            continue;
        }
        let l = labels[s];
        let mut size = 0;
        piece[s] = next;
        stack.push(s);
        while let Some(v) = stack.pop() {
            size += 1;
            for &w in grid.graph.neighbors(v) {
                let w = w as usize;
                if labels[w] == l && piece[w] == u32::MAX {
                    piece[w] = next;
                    stack.push(w);
                }
            }
        }
        if size > best[l as usize].0 {
            best[l as usize] = (size, next);
        }
        next += 1;
    }
    for v in 0..n {
        if labels[v] != 0 && best[labels[v] as usize].1 != piece[v] {
            labels[v] = 0;
        }
    }
}

/// Breadth-first growth from all labeled voxels in id order: an unlabeled
/// voxel joins the label of its neighbors while they carry only one label.
pub fn regrow(grid: &Grid3, labels: &mut [u32]) {
    let mut queue: std::collections::VecDeque<usize> =
        (0..labels.len()).filter(|&v| labels[v] != 0).collect();
    while let Some(v) = queue.pop_front() {
        for &w in grid.graph.neighbors(v) {
            let w = w as usize;
            if labels[w] == 0 && unique_neighbor_label(grid, labels, w) == Some(labels[v]) {
                labels[w] = labels[v];
                queue.push_back(w);
            }
        }
    }
}
