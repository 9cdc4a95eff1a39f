//! Exhaustive reference solvers for tiny instances.
//!
//! These exist to check the real solvers and reductions. Each one enforces a
//! hard size guard so a test can never wander into an exponential blow-up.

use crate::error::{MspError, OracleError};
use crate::graph::{components, Graph};
use crate::msp::{
    characteristic_vector, objective, Label, MspInstance, PartialAssignment, Separator,
};
use crate::reductions::Qubo;

pub const MSP_LIMIT: usize = 20;
pub const LMP_LIMIT: usize = 12;
pub const SUBSET_LIMIT: usize = 20;
pub const CONSISTENCY_LIMIT: usize = 15;
pub const QUBO_LIMIT: usize = 20;

/// A lifted multicut instance: base graph with edge costs plus long-range
/// pairs that are not edges.
#[derive(Clone, Debug, PartialEq)]
pub struct LmpInstance {
    graph: Graph,
    edge_costs: Vec<f64>,
    lifted: Vec<(u32, u32, f64)>,
}

impl LmpInstance {
    /// `edge_costs` follows the order of [`Graph::edges`].
    pub fn new(
        graph: Graph,
        edge_costs: Vec<f64>,
        lifted: Vec<(usize, usize, f64)>,
    ) -> Result<Self, MspError> {
        if edge_costs.len() != graph.edge_count() {
            return Err(MspError::EdgeCostCount {
                expected: graph.edge_count(),
                got: edge_costs.len(),
            });
        }
        let n = graph.node_count();
        let mut pairs = Vec::with_capacity(lifted.len());
        for (u, v, c) in lifted {
            if u >= n || v >= n {
                return Err(MspError::InteractionOutOfRange { node: u.max(v) });
            }
            if u == v {
                return Err(MspError::InteractionSelfPair(u));
            }
            if graph.has_edge(u, v) {
                return Err(MspError::LiftedIsEdge(u.min(v), u.max(v)));
            }
            if !c.is_finite() {
                return Err(MspError::NonFiniteCost(c));
            }
            pairs.push((u.min(v) as u32, u.max(v) as u32, c));
        }
        let mut keys: Vec<(u32, u32)> = pairs.iter().map(|&(u, v, _)| (u, v)).collect();
        keys.sort_unstable();
        if let Some(w) = keys.windows(2).find(|w| w[0] == w[1]) {
            return Err(MspError::DuplicateInteraction(
                w[0].0 as usize,
                w[0].1 as usize,
            ));
        }
        if let Some(&c) = edge_costs.iter().find(|c| !c.is_finite()) {
            return Err(MspError::NonFiniteCost(c));
        }
        Ok(LmpInstance {
            graph,
            edge_costs,
            lifted: pairs,
        })
    }

    /// Builds the graph from weighted edges.
    pub fn from_weighted_edges(
        node_count: usize,
        edges: &[(usize, usize, f64)],
        lifted: Vec<(usize, usize, f64)>,
    ) -> Result<Self, MspError> {
        let graph = Graph::from_edges(node_count, edges.iter().map(|&(u, v, _)| (u, v)))?;
        let mut costs = vec![0.0; graph.edge_count()];
        let order: Vec<(usize, usize)> = graph.edges().collect();
        for &(u, v, c) in edges {
            let key = (u.min(v), u.max(v));
            costs[order.binary_search(&key).unwrap()] = c;
        }
        LmpInstance::new(graph, costs, lifted)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// `(u, v, cost)` for every edge, in [`Graph::edges`] order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.graph
            .edges()
            .zip(&self.edge_costs)
            .map(|((u, v), &c)| (u, v, c))
    }

    pub fn edge_costs(&self) -> &[f64] {
        &self.edge_costs
    }

    pub fn lifted(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.lifted
            .iter()
            .map(|&(u, v, c)| (u as usize, v as usize, c))
    }

    pub fn lifted_count(&self) -> usize {
        self.lifted.len()
    }

    /// Cost of the lifted multicut induced by a node labeling into blocks.
    pub fn cut_cost(&self, block: &[usize]) -> f64 {
        let edges: f64 = self
            .edges()
            .filter(|&(u, v, _)| block[u] != block[v])
            .map(|(_, _, c)| c)
            .sum();
        let lifted: f64 = self
            .lifted()
            .filter(|&(u, v, _)| block[u] != block[v])
            .map(|(_, _, c)| c)
            .sum();
        edges + lifted
    }
}

fn guard(size: usize, limit: usize) -> Result<(), OracleError> {
    if size > limit {
        Err(OracleError::TooLarge { size, limit })
    } else {
        Ok(())
    }
}

/// Node membership for enumeration index `m`: node 0 is the most significant
/// bit, so increasing `m` walks characteristic vectors in lexicographic order.
fn mask_to_members(m: u64, n: usize) -> Vec<bool> {
    (0..n).map(|v| (m >> (n - 1 - v)) & 1 == 1).collect()
}

/// Minimum objective over all `2^|V|` separators. Ties go to the
/// lexicographically smallest characteristic vector `(x_0, x_1, ...)`.
pub fn brute_force_msp(instance: &MspInstance) -> Result<(Separator, f64), OracleError> {
    let n = instance.node_count();
    guard(n, MSP_LIMIT)?;
    let mut best = (Separator::empty(n), f64::INFINITY);
    for m in 0..(1u64 << n) {
        let s = Separator::from_mask(mask_to_members(m, n));
        let value = objective(instance, &s).expect("shape matches");
        if value < best.1 {
            best = (s, value);
        }
    }
    Ok(best)
}

/// Calls `visit` with every partition of `0..n` as a restricted growth string.
pub fn for_each_partition<F: FnMut(&[usize], usize)>(n: usize, mut visit: F) {
    if n == 0 {
        visit(&[], 0);
        return;
    }
    let mut a = vec![0usize; n];
    let mut max = vec![0usize; n];
    loop {
        visit(&a, max[n - 1] + 1);
        // Find the rightmost position that can still be incremented.
        let mut i = n - 1;
        loop {
            if i == 0 {
                return;
            }
            if a[i] <= max[i - 1] {
                break;
            }
            i -= 1;
        }
        a[i] += 1;
        max[i] = max[i - 1].max(a[i]);
        for j in i + 1..n {
            a[j] = 0;
            max[j] = max[i];
        }
    }
}

/// Minimum cost over all lifted multicuts, i.e. over partitions of `V` whose
/// blocks each induce a connected subgraph.
pub fn brute_force_lmp(instance: &LmpInstance) -> Result<f64, OracleError> {
    let g = instance.graph();
    let n = g.node_count();
    guard(n, LMP_LIMIT)?;
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut best = f64::INFINITY;
    let mut parent = vec![0usize; n];
    for_each_partition(n, |blocks, k| {
        // Blocks are connected iff joining same-block edges leaves k trees.
        for (v, p) in parent.iter_mut().enumerate() {
            *p = v;
        }
        let mut trees = n;
        for &(u, v) in &edges {
            if blocks[u] == blocks[v] {
                let (ru, rv) = (root(&mut parent, u), root(&mut parent, v));
                if ru != rv {
                    parent[ru] = rv;
                    trees -= 1;
                }
            }
        }
        if trees == k {
            best = best.min(instance.cut_cost(blocks));
        }
    });
    Ok(best)
}

fn root(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Minimum weight of a node set containing all terminals in one component
/// of its induced subgraph.
pub fn brute_force_steiner(
    graph: &Graph,
    terminals: &[usize],
    weights: &[f64],
) -> Result<f64, OracleError> {
    let n = graph.node_count();
    guard(n, SUBSET_LIMIT)?;
    let mut best = f64::INFINITY;
    let mut removed = vec![false; n];
    for m in 0..(1u64 << n) {
        for (v, r) in removed.iter_mut().enumerate() {
            *r = (m >> v) & 1 == 0;
        }
        if terminals.iter().any(|&u| removed[u]) {
            continue;
        }
        let comps = components(graph, &removed);
        if terminals.iter().all(|&u| comps.same(u, terminals[0])) {
            let cost: f64 = (0..n).filter(|&v| !removed[v]).map(|v| weights[v]).sum();
            best = best.min(cost);
        }
    }
    Ok(best)
}

/// Minimum weight of a non-terminal node set whose removal separates every
/// pair of terminals.
pub fn brute_force_mtvs(
    graph: &Graph,
    terminals: &[usize],
    weights: &[f64],
) -> Result<f64, OracleError> {
    let n = graph.node_count();
    guard(n, SUBSET_LIMIT)?;
    let mut best = f64::INFINITY;
    let mut removed = vec![false; n];
    for m in 0..(1u64 << n) {
        for (v, r) in removed.iter_mut().enumerate() {
            *r = (m >> v) & 1 == 1;
        }
        if terminals.iter().any(|&u| removed[u]) {
            continue;
        }
        let comps = components(graph, &removed);
        let apart = terminals
            .iter()
            .enumerate()
            .all(|(i, &u)| terminals[i + 1..].iter().all(|&w| !comps.same(u, w)));
        if apart {
            let cost: f64 = (0..n).filter(|&v| removed[v]).map(|v| weights[v]).sum();
            best = best.min(cost);
        }
    }
    Ok(best)
}

/// Whether some separator's characteristic vector agrees with every fixed
/// label. Enumerates subsets of the free nodes on top of the nodes labeled 1.
pub fn brute_force_consistency(
    instance: &MspInstance,
    x: &PartialAssignment,
) -> Result<bool, OracleError> {
    let n = instance.node_count();
    guard(n, CONSISTENCY_LIMIT)?;
    if !x.fits(instance) {
        return Err(OracleError::AssignmentShape);
    }
    let free: Vec<usize> = (0..n).filter(|&v| x.nodes[v] == Label::Free).collect();
    let base: Vec<bool> = x.nodes.iter().map(|&l| l == Label::One).collect();
    for m in 0..(1u64 << free.len()) {
        let mut members = base.clone();
        for (k, &v) in free.iter().enumerate() {
            if (m >> k) & 1 == 1 {
                members[v] = true;
            }
        }
        let y =
            characteristic_vector(instance, &Separator::from_mask(members)).expect("shape matches");
        if x.matches(&y) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Maximum of `Σ_{i≤j} q_ij x_i x_j` over `x ∈ {0,1}^n`. Ties go to the
/// lexicographically smallest `x`.
pub fn brute_force_qubo(q: &Qubo) -> Result<(f64, Vec<bool>), OracleError> {
    let n = q.n();
    guard(n, QUBO_LIMIT)?;
    let mut best = (f64::NEG_INFINITY, vec![false; n]);
    for m in 0..(1u64 << n) {
        let x = mask_to_members(m, n);
        let value = q.evaluate(&x);
        if value > best.0 {
            best = (value, x);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four_path() -> MspInstance {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        MspInstance::new(
            g,
            vec![6.0, 4.0, 3.0, 2.0],
            vec![(0, 1, 1.0), (1, 2, 1.0), (2, 3, 7.0), (0, 3, -8.0)],
        )
        .unwrap()
    }

    #[test]
    fn msp_examples() {
        let (s, v) = brute_force_msp(&four_path()).unwrap();
        assert_eq!(v, -2.0);
        assert_eq!(s.nodes(), vec![1]);

        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let pos = MspInstance::new(g, vec![1.0, 2.0, 3.0], vec![(0, 2, 1.0)]).unwrap();
        let (s, v) = brute_force_msp(&pos).unwrap();
        assert_eq!((s.len(), v), (0, 0.0));

        let single = MspInstance::new(Graph::empty(1), vec![-3.0], vec![]).unwrap();
        let (s, v) = brute_force_msp(&single).unwrap();
        assert_eq!((s.nodes(), v), (vec![0], -3.0));

        let big = MspInstance::new(Graph::empty(21), vec![0.0; 21], vec![]).unwrap();
        assert!(matches!(
            brute_force_msp(&big),
            Err(OracleError::TooLarge { .. })
        ));
    }

    #[test]
    fn partitions_are_counted_by_bell_numbers() {
        let bell = [1, 1, 2, 5, 15, 52, 203, 877];
        for (n, &b) in bell.iter().enumerate() {
            let mut count = 0;
            for_each_partition(n, |_, _| count += 1);
            assert_eq!(count, b, "n = {n}");
        }
    }

    #[test]
    fn lmp_examples() {
        let cut = LmpInstance::from_weighted_edges(2, &[(0, 1, -1.0)], vec![]).unwrap();
        assert_eq!(brute_force_lmp(&cut).unwrap(), -1.0);
        let join = LmpInstance::from_weighted_edges(2, &[(0, 1, 1.0)], vec![]).unwrap();
        assert_eq!(brute_force_lmp(&join).unwrap(), 0.0);
        let tri = LmpInstance::from_weighted_edges(
            3,
            &[(0, 1, -1.0), (1, 2, -1.0), (0, 2, -1.0)],
            vec![],
        )
        .unwrap();
        assert_eq!(brute_force_lmp(&tri).unwrap(), -3.0);
        // A repulsive lifted pair on a path cannot be cut without cutting an edge.
        let path =
            LmpInstance::from_weighted_edges(3, &[(0, 1, 2.0), (1, 2, 3.0)], vec![(0, 2, -10.0)])
                .unwrap();
        assert_eq!(brute_force_lmp(&path).unwrap(), -8.0);
        assert!(LmpInstance::from_weighted_edges(2, &[(0, 1, 1.0)], vec![(0, 1, 1.0)]).is_err());
    }

    #[test]
    fn consistency_examples() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let inst = MspInstance::new(g, vec![0.0; 2], vec![(0, 1, 1.0)]).unwrap();
        assert!(brute_force_consistency(&inst, &PartialAssignment::free(&inst)).unwrap());
        let x = PartialAssignment {
            nodes: vec![Label::Zero; 2],
            interactions: vec![Label::One],
        };
        assert!(!brute_force_consistency(&inst, &x).unwrap());
    }

    #[test]
    fn qubo_examples() {
        assert_eq!(
            brute_force_qubo(&Qubo::new(1, &[(0, 0, 5.0)])).unwrap(),
            (5.0, vec![true])
        );
        assert_eq!(
            brute_force_qubo(&Qubo::new(1, &[(0, 0, -5.0)])).unwrap(),
            (0.0, vec![false])
        );
        let q = Qubo::new(2, &[(0, 0, 1.0), (1, 1, 1.0), (0, 1, -3.0)]);
        assert_eq!(brute_force_qubo(&q).unwrap(), (1.0, vec![false, true]));
    }
}
