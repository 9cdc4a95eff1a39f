//! Seeded flooding baseline.
//!
//! Seeds are the 6-connected components of voxels darker than `theta_start`.
//! Unlabeled voxels are then flooded in order of increasing gray value (ties
//! by voxel id). A voxel joins a region when all its labeled neighbors carry
//! that region's label and its gray value is below `theta_end`. A voxel
//! touching two regions becomes a line voxel. Line voxels and voxels never
//! reached form the separator, so distinct regions never touch.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use msep_core::{Grid3, Separator};

use crate::error::{domain, VolumeError};
use crate::volume::GrayVolume;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WatershedParams {
    theta_start: f64,
    theta_end: f64,
}

impl WatershedParams {
    pub fn new(theta_start: f64, theta_end: f64) -> Result<Self, VolumeError> {
        if !(0.0..=1.0).contains(&theta_start) || !(0.0..=1.0).contains(&theta_end) {
            return Err(domain("watershed thresholds must lie in [0, 1]"));
        }
        if theta_start > theta_end {
            return Err(domain(format!(
                "theta_start {theta_start} exceeds theta_end {theta_end}"
            )));
        }
        Ok(WatershedParams {
            theta_start,
            theta_end,
        })
    }

    pub fn theta_start(&self) -> f64 {
        self.theta_start
    }

    pub fn theta_end(&self) -> f64 {
        self.theta_end
    }
}

/// Voxels sorted by flooding key, shared by every threshold pair run on the
/// same volume.
pub struct Flooder<'a> {
    gray: &'a GrayVolume,
    grid: Grid3,
    order: Vec<u32>,
}

impl<'a> Flooder<'a> {
    pub fn new(gray: &'a GrayVolume) -> Self {
        let g = gray.values();
        let mut order: Vec<u32> = (0..g.len() as u32).collect();
        // Gray values are nonnegative, so their bit patterns sort like the values.
        order.sort_unstable_by_key(|&v| (g[v as usize].to_bits(), v));
        Flooder {
            gray,
            grid: gray.grid(),
            order,
        }
    }

    /// Region label per voxel, 0 for separator voxels. Seeds are numbered
    /// `1..` in order of their smallest voxel id.
    pub fn labels(&self, params: &WatershedParams) -> Vec<u32> {
        let graph = &self.grid.graph;
        let g = self.gray.values();
        let n = g.len();
        let mut labels = vec![0u32; n];
        let mut next = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if labels[s] != 0 || !(g[s] < params.theta_start) {
                continue;
            }
            next += 1;
            labels[s] = next;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &w in graph.neighbors(v) {
                    let w = w as usize;
                    if labels[w] == 0 && g[w] < params.theta_start {
                        labels[w] = next;
                        stack.push(w);
                    }
                }
            }
        }

        // Walking the sorted order replaces a global priority queue: a voxel
        // touching a region at its turn is decided at once. One that touches
        // none waits as pending, and when a neighbor joins a region later it
        // is smaller than every voxel still ahead, so the pending voxels are
        // drained through a small heap before the walk moves on.
        let lo = self
            .order
            .partition_point(|&v| g[v as usize] < params.theta_start);
        let hi = self
            .order
            .partition_point(|&v| g[v as usize] < params.theta_end);
        let mut pending = vec![false; n];
        let mut heap: BinaryHeap<Reverse<(u64, u32)>> = BinaryHeap::new();
        for &v in &self.order[lo..hi.max(lo)] {
            let v = v as usize;
            if !graph.neighbors(v).iter().any(|&w| labels[w as usize] != 0) {
                pending[v] = true;
                continue;
            }
            heap.push(Reverse((g[v].to_bits(), v as u32)));
            while let Some(Reverse((_, u))) = heap.pop() {
                let u = u as usize;
                let mut region = 0;
                let mut line = false;
                for &w in graph.neighbors(u) {
                    let l = labels[w as usize];
                    if l != 0 {
                        if region != 0 && region != l {
                            line = true;
                        }
                        region = l;
                    }
                }
                if line {
                    continue;
                }
                labels[u] = region;
                for &w in graph.neighbors(u) {
                    let w = w as usize;
                    if pending[w] {
                        pending[w] = false;
                        heap.push(Reverse((g[w].to_bits(), w as u32)));
                    }
                }
            }
        }
        labels
    }

    pub fn separator(&self, params: &WatershedParams) -> Separator {
        Separator::from_mask(self.labels(params).iter().map(|&l| l == 0).collect())
    }
}

/// Region labels of a single run; see [`Flooder::labels`].
pub fn watershed_labels(gray: &GrayVolume, params: &WatershedParams) -> Vec<u32> {
    Flooder::new(gray).labels(params)
}

/// The separator of [`watershed_labels`].
pub fn watershed(gray: &GrayVolume, params: &WatershedParams) -> Separator {
    Flooder::new(gray).separator(params)
}
