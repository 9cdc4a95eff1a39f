//! Undirected simple graphs, 3-D voxel grids and connectivity under node removal.
//!
//! Adjacency is stored in compressed form with every neighbor list sorted, so
//! edge queries are a binary search and iteration order is deterministic.

use std::collections::VecDeque;

use crate::error::GraphError;

/// Label given to removed nodes by [`components`].
pub const NO_LABEL: u32 = u32::MAX;

/// An undirected simple graph over the nodes `0..node_count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Graph {
    /// Builds a graph from an edge list. Self-loops, out-of-range endpoints and
    /// repeated pairs are rejected.
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if node_count > u32::MAX as usize - 1 {
            return Err(GraphError::TooManyNodes(node_count));
        }
        let mut pairs = Vec::new();
        for (u, v) in edges {
            if u >= node_count || v >= node_count {
                return Err(GraphError::NodeOutOfRange {
                    node: u.max(v),
                    node_count,
                });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            pairs.push((u.min(v) as u32, u.max(v) as u32));
        }
        pairs.sort_unstable();
        if let Some(w) = pairs.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0 as usize, w[0].1 as usize));
        }
        let mut degree = vec![0usize; node_count];
        for &(u, v) in &pairs {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(node_count + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..node_count].to_vec();
        let mut targets = vec![0u32; offsets[node_count]];
        for &(u, v) in &pairs {
            targets[fill[u as usize]] = v;
            fill[u as usize] += 1;
            targets[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        for v in 0..node_count {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Ok(Graph { offsets, targets })
    }

    /// A graph with `n` nodes and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    /// Sorted neighbors of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.node_count())
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.node_count()
            && v < self.node_count()
            && self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    /// Every edge once as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| (v as usize) > u)
                .map(move |&v| (u, v as usize))
        })
    }

    pub fn is_connected(&self) -> bool {
        components(self, &vec![false; self.node_count()]).count <= 1
    }
}

/// Component labeling of the nodes that survive a removal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    /// Per-node label, [`NO_LABEL`] for removed nodes.
    pub labels: Vec<u32>,
    pub count: usize,
}

impl Components {
    pub fn label(&self, v: usize) -> Option<usize> {
        match self.labels[v] {
            NO_LABEL => None,
            l => Some(l as usize),
        }
    }

    /// Whether `u` and `v` both survive and lie in the same component.
    pub fn same(&self, u: usize, v: usize) -> bool {
        self.labels[u] != NO_LABEL && self.labels[u] == self.labels[v]
    }
}

/// Labels the components of the subgraph induced by the nodes with
/// `removed[v] == false`. Labels are dense from 0 and assigned by breadth-first
/// search started from the lowest unvisited id.
pub fn components(graph: &Graph, removed: &[bool]) -> Components {
    let n = graph.node_count();
    assert_eq!(removed.len(), n, "removal mask has wrong length");
    let mut labels = vec![NO_LABEL; n];
    let mut queue = VecDeque::new();
    let mut count = 0u32;
    for s in 0..n {
        if removed[s] || labels[s] != NO_LABEL {
            continue;
        }
        labels[s] = count;
        queue.push_back(s as u32);
        while let Some(u) = queue.pop_front() {
            for &w in graph.neighbors(u as usize) {
                if !removed[w as usize] && labels[w as usize] == NO_LABEL {
                    labels[w as usize] = count;
                    queue.push_back(w);
                }
            }
        }
        count += 1;
    }
    Components {
        labels,
        count: count as usize,
    }
}

/// True iff `u` or `v` is removed or every `u`-`v` path meets a removed node.
pub fn is_separated(graph: &Graph, removed: &[bool], u: usize, v: usize) -> bool {
    if removed[u] || removed[v] {
        return true;
    }
    !components(graph, removed).same(u, v)
}

/// A 3-D voxel grid graph with 6-connectivity; node id is `x + nx * (y + ny * z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid3 {
    pub dims: (usize, usize, usize),
    pub graph: Graph,
}

impl Grid3 {
    pub fn new(nx: usize, ny: usize, nz: usize) -> Result<Self, GraphError> {
        if nx == 0 || ny == 0 || nz == 0 {
            return Err(GraphError::ZeroDimension);
        }
        let n = nx
            .checked_mul(ny)
            .and_then(|p| p.checked_mul(nz))
            .ok_or(GraphError::TooManyNodes(usize::MAX))?;
        if n > u32::MAX as usize - 1 {
            return Err(GraphError::TooManyNodes(n));
        }
        // Neighbors of each voxel in ascending id order: -z, -y, -x, +x, +y, +z.
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::with_capacity(6 * n);
        offsets.push(0);
        for z in 0..nz {
            for y in 0..ny {
                for x in 0..nx {
                    let id = x + nx * (y + ny * z);
                    if z > 0 {
                        targets.push((id - nx * ny) as u32);
                    }
                    if y > 0 {
                        targets.push((id - nx) as u32);
                    }
                    if x > 0 {
                        targets.push((id - 1) as u32);
                    }
                    if x + 1 < nx {
                        targets.push((id + 1) as u32);
                    }
                    if y + 1 < ny {
                        targets.push((id + nx) as u32);
                    }
                    if z + 1 < nz {
                        targets.push((id + nx * ny) as u32);
                    }
                    offsets.push(targets.len());
                }
            }
        }
        Ok(Grid3 {
            dims: (nx, ny, nz),
            graph: Graph { offsets, targets },
        })
    }

    pub fn node_count(&self) -> usize {
        self.dims.0 * self.dims.1 * self.dims.2
    }

    #[inline]
    pub fn index(&self, x: usize, y: usize, z: usize) -> usize {
        x + self.dims.0 * (y + self.dims.1 * z)
    }

    #[inline]
    pub fn coords(&self, id: usize) -> (usize, usize, usize) {
        let (nx, ny, _) = self.dims;
        (id % nx, (id / nx) % ny, id / (nx * ny))
    }

    /// Id of `(x, y, z) + delta` if it lies inside the grid.
    #[inline]
    pub fn offset(&self, id: usize, delta: [i64; 3]) -> Option<usize> {
        let (x, y, z) = self.coords(id);
        let (nx, ny, nz) = self.dims;
        let tx = x as i64 + delta[0];
        let ty = y as i64 + delta[1];
        let tz = z as i64 + delta[2];
        if tx < 0 || ty < 0 || tz < 0 || tx >= nx as i64 || ty >= ny as i64 || tz >= nz as i64 {
            return None;
        }
        Some(self.index(tx as usize, ty as usize, tz as usize))
    }
}

/// Convenience constructor matching [`Grid3::new`].
pub fn grid3(nx: usize, ny: usize, nz: usize) -> Result<Grid3, GraphError> {
    Grid3::new(nx, ny, nz)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn middle_node_cuts_path() {
        let g = path(3);
        let c = components(&g, &[false, true, false]);
        assert_eq!(c.label(0), Some(0));
        assert_eq!(c.label(1), None);
        assert_eq!(c.label(2), Some(1));
        assert_eq!(c.count, 2);
    }

    #[test]
    fn connected_graph_is_one_component() {
        let g = path(5);
        let c = components(&g, &[false; 5]);
        assert!(c.labels.iter().all(|&l| l == 0));
    }

    #[test]
    fn grid_center_column_splits_in_two() {
        let grid = grid3(3, 3, 1).unwrap();
        let mut removed = vec![false; 9];
        for y in 0..3 {
            removed[grid.index(1, y, 0)] = true;
        }
        let c = components(&grid.graph, &removed);
        assert_eq!(c.count, 2);
        let sizes: Vec<usize> = (0..2)
            .map(|l| c.labels.iter().filter(|&&x| x == l as u32).count())
            .collect();
        assert_eq!(sizes, vec![3, 3]);
    }

    #[test]
    fn separation_queries() {
        let g = path(3);
        assert!(is_separated(&g, &[false, true, false], 0, 2));
        assert!(!is_separated(&g, &[false; 3], 0, 1));
        assert!(is_separated(&g, &[true, false, false], 0, 1));
    }

    #[test]
    fn grid_sizes() {
        for &(dims, nodes, edges) in &[
            ((2, 1, 1), 2, 1),
            ((2, 2, 2), 8, 12),
            ((64, 64, 64), 262_144, 774_144),
        ] {
            let (x, y, z) = dims;
            let g = grid3(x, y, z).unwrap();
            assert_eq!(g.graph.node_count(), nodes);
            assert_eq!(g.graph.edge_count(), edges);
            assert_eq!(edges, 3 * x * y * z - y * z - x * z - x * y);
        }
        assert_eq!(grid3(0, 3, 3), Err(GraphError::ZeroDimension));
    }

    #[test]
    fn grid_adjacency_matches_l1_distance() {
        let g = grid3(3, 4, 2).unwrap();
        for a in 0..g.node_count() {
            for b in 0..g.node_count() {
                let (ax, ay, az) = g.coords(a);
                let (bx, by, bz) = g.coords(b);
                let l1 = ax.abs_diff(bx) + ay.abs_diff(by) + az.abs_diff(bz);
                assert_eq!(g.graph.has_edge(a, b), l1 == 1);
            }
            assert!(g.graph.neighbors(a).windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(2, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Graph::from_edges(2, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::NodeOutOfRange { .. })
        ));
    }
}
