//! Multi-separator instances on the voxel grid of a gray volume.
//!
//! Node costs are log-odds of the gray value. Interaction costs summarize
//! the node costs along the digital straight line between the two voxels:
//! the median for filaments, the minimum for cells.

use msep_core::{Grid3, MspInstance};

use crate::error::{domain, VolumeError};
use crate::volume::GrayVolume;

/// Gray values are clamped to `[CLAMP, 1 - CLAMP]` before taking log-odds.
pub const CLAMP: f64 = 1e-6;

/// `ln((1 - g) / g)`: positive for dark voxels, negative for bright ones.
pub fn node_cost(g: f64) -> f64 {
    let g = g.clamp(CLAMP, 1.0 - CLAMP);
    ((1.0 - g) / g).ln()
}

pub fn node_costs(gray: &GrayVolume) -> Vec<f64> {
    gray.values().iter().map(|&g| node_cost(g)).collect()
}

/// Voxels on the digital straight line from `u` to `v`, both included.
///
/// Steps one unit along the axis of largest extent and rounds the other two
/// coordinates half away from zero. The walk always starts at the
/// lexicographically smaller endpoint, so `digital_line(v, u)` is the exact
/// reverse of `digital_line(u, v)`.
pub fn digital_line(u: [i64; 3], v: [i64; 3]) -> Vec<[i64; 3]> {
    if v < u {
        let mut line = digital_line(v, u);
        line.reverse();
        return line;
    }
    let d = [v[0] - u[0], v[1] - u[1], v[2] - u[2]];
    let steps = d.iter().map(|c| c.abs()).max().unwrap_or(0);
    if steps == 0 {
        return vec![u];
    }
    (0..=steps)
        .map(|k| {
            let at = |i: usize| u[i] + (d[i] as f64 * k as f64 / steps as f64).round() as i64;
            [at(0), at(1), at(2)]
        })
        .collect()
}

/// Interaction offsets, each with its first nonzero coordinate positive so
/// that no voxel pair is listed twice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OffsetSet(Vec<[i64; 3]>);

fn canonical(d: &[i64; 3]) -> bool {
    d.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
}

impl OffsetSet {
    pub fn new(offsets: Vec<[i64; 3]>) -> Result<Self, VolumeError> {
        for (i, d) in offsets.iter().enumerate() {
            if !canonical(d) {
                return Err(domain(format!(
                    "offset {d:?} is zero or not in canonical form"
                )));
            }
            if offsets[..i].contains(d) {
                return Err(domain(format!("offset {d:?} listed twice")));
            }
        }
        Ok(OffsetSet(offsets))
    }

    /// The sixteen offsets used for foam cells: the three unit steps, the
    /// three axis steps of 5, six face diagonals of (4, 4) and four space
    /// diagonals of (3, 3, 3).
    pub fn cells() -> Self {
        OffsetSet(vec![
            [1, 0, 0],
            [0, 1, 0],
            [0, 0, 1],
            [5, 0, 0],
            [0, 5, 0],
            [0, 0, 5],
            [0, 4, 4],
            [0, 4, -4],
            [4, 4, 0],
            [4, -4, 0],
            [4, 0, 4],
            [4, 0, -4],
            [3, 3, 3],
            [3, 3, -3],
            [3, -3, 3],
            [3, -3, -3],
        ])
    }

    /// All canonical offsets whose Euclidean length rounds to `distance`.
    pub fn rounded_length(distance: u32) -> Self {
        let k = distance as i64 + 1;
        let lo = (distance as f64 - 0.5).max(0.0);
        let hi = distance as f64 + 0.5;
        let mut out = Vec::new();
        for x in -k..=k {
            for y in -k..=k {
                for z in -k..=k {
                    let d = [x, y, z];
                    let len = ((x * x + y * y + z * z) as f64).sqrt();
                    if canonical(&d) && len >= lo && len < hi {
                        out.push(d);
                    }
                }
            }
        }
        OffsetSet(out)
    }

    pub fn offsets(&self) -> &[[i64; 3]] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// How interaction costs are read off the line between two voxels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LineOptions {
    /// Whether the two endpoints count. Lines without interior voxels always
    /// use their endpoints.
    pub include_endpoints: bool,
}

impl Default for LineOptions {
    fn default() -> Self {
        LineOptions {
            include_endpoints: true,
        }
    }
}

/// A line shape relative to its start voxel, as id offsets.
struct LineShape {
    delta: [i64; 3],
    ids: Vec<i64>,
}

impl LineShape {
    fn new(grid: &Grid3, delta: [i64; 3], opts: LineOptions) -> Self {
        let (nx, ny, _) = grid.dims;
        let mut points = digital_line([0, 0, 0], delta);
        if !opts.include_endpoints && points.len() > 2 {
            points = points[1..points.len() - 1].to_vec();
        }
        let ids = points
            .iter()
            .map(|p| p[0] + nx as i64 * (p[1] + ny as i64 * p[2]))
            .collect();
        LineShape { delta, ids }
    }

    /// Calls `visit(u, w)` for every voxel `u` whose partner `w = u + delta`
    /// lies inside the grid, in increasing `u`.
    fn for_each_pair(&self, grid: &Grid3, mut visit: impl FnMut(usize, usize)) {
        let (nx, ny, nz) = grid.dims;
        let range = |d: i64, n: usize| {
            (
                d.min(0).unsigned_abs() as usize,
                (n as i64 - d.max(0)).max(0) as usize,
            )
        };
        let (x0, x1) = range(self.delta[0], nx);
        let (y0, y1) = range(self.delta[1], ny);
        let (z0, z1) = range(self.delta[2], nz);
        let step = self.delta[0] + nx as i64 * (self.delta[1] + ny as i64 * self.delta[2]);
        for z in z0..z1 {
            for y in y0..y1 {
                let row = nx * (y + ny * z);
                for x in x0..x1 {
                    let u = row + x;
                    visit(u, (u as i64 + step) as usize);
                }
            }
        }
    }
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_unstable_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Grid edges with the mean of their endpoint costs, plus every pair at
/// rounded distance `long_range` whose line median is strictly positive.
pub fn build_filament_instance(
    gray: &GrayVolume,
    long_range: u32,
    opts: LineOptions,
) -> Result<MspInstance, VolumeError> {
    let grid = gray.grid();
    let costs = node_costs(gray);
    let mut interactions = Vec::with_capacity(3 * costs.len());
    for (u, w) in grid.graph.edges() {
        interactions.push((u, w, 0.5 * (costs[u] + costs[w])));
    }
    let shapes: Vec<LineShape> = OffsetSet::rounded_length(long_range)
        .offsets()
        .iter()
        .filter(|d| d.iter().map(|c| c.abs()).sum::<i64>() > 1)
        .map(|&d| LineShape::new(&grid, d, opts))
        .collect();
    let mut buf = Vec::with_capacity(2 * long_range as usize + 2);
    for shape in &shapes {
        let half = shape.ids.len() / 2;
        shape.for_each_pair(&grid, |u, w| {
            buf.clear();
            buf.extend(shape.ids.iter().map(|&o| costs[(u as i64 + o) as usize]));
            // Fewer than half positive values cannot give a positive median.
            if buf.iter().filter(|&&c| c > 0.0).count() < half {
                return;
            }
            let c = median(&mut buf);
            if c > 0.0 {
                interactions.push((u, w, c));
            }
        });
    }
    Ok(MspInstance::new(grid.graph, costs, interactions)?)
}

/// One interaction per in-bounds voxel and offset, with the minimum cost on
/// the line between them.
pub fn build_cell_instance(
    gray: &GrayVolume,
    offsets: &OffsetSet,
    opts: LineOptions,
) -> Result<MspInstance, VolumeError> {
    let grid = gray.grid();
    let costs = node_costs(gray);
    let shapes: Vec<LineShape> = offsets
        .offsets()
        .iter()
        .map(|&d| LineShape::new(&grid, d, opts))
        .collect();
    let mut interactions = Vec::with_capacity(shapes.len() * costs.len());
    for shape in &shapes {
        shape.for_each_pair(&grid, |u, w| {
            let c = shape
                .ids
                .iter()
                .map(|&o| costs[(u as i64 + o) as usize])
                .fold(f64::INFINITY, f64::min);
            interactions.push((u, w, c));
        });
    }
    Ok(MspInstance::new(grid.graph, costs, interactions)?)
}

/// Adds `b` to every node cost and, unless `nodes_only`, to every
/// interaction cost. A positive bias discourages separator nodes.
pub fn apply_bias(
    instance: &MspInstance,
    b: f64,
    nodes_only: bool,
) -> Result<MspInstance, VolumeError> {
    let nodes = instance.node_costs().iter().map(|c| c + b).collect();
    let shift = if nodes_only { 0.0 } else { b };
    let interactions: Vec<f64> = instance
        .interactions()
        .iter()
        .map(|f| f.cost + shift)
        .collect();
    Ok(instance.with_costs(nodes, &interactions)?)
}

/// `count` values equally spaced from `lo` to `hi`, both included.
pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..count)
            .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
            .collect(),
    }
}
