//! Constructive reductions between the multi-separator problem and related
//! problems.
//!
//! Every reduction reports how optimal values relate:
//! `source value = value_sign · (target value − value_offset)`.

use std::collections::BTreeMap;

use crate::error::ReductionError;
use crate::graph::{components, Graph};
use crate::msp::{Label, MspInstance, PartialAssignment, Separator};
use crate::oracle::LmpInstance;

/// Largest magnitude that doubles still represent exactly as integers.
const EXACT_LIMIT: f64 = 4_503_599_627_370_496.0; // 2^52

/// A reduced instance plus the data needed to relate solutions.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionResult<T> {
    pub instance: T,
    pub value_offset: f64,
    pub value_sign: f64,
    pub witness: Witness,
}

impl<T> ReductionResult<T> {
    /// Source optimum implied by a target optimum.
    pub fn source_value(&self, target_value: f64) -> f64 {
        self.value_sign * (target_value - self.value_offset)
    }
}

/// How target solutions map back to source solutions.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// Target nodes are `v` (`0..n`), `v̄` (`n..2n`) and one node per edge.
    /// `v` is in the separator iff `v` and `v̄` share a block.
    NodeCopies { source_nodes: usize },
    /// Target nodes are the base nodes followed by one node per edge; an edge
    /// is cut iff its node is in the separator.
    EdgeNodes {
        base_nodes: usize,
        edges: Vec<(usize, usize)>,
    },
    /// `x = 1 − (separator indicator)`.
    Complement,
    /// The Steiner node set is the complement of the separator.
    SeparatorComplement,
    /// The separator itself is the source solution.
    Identity,
}

impl Witness {
    /// Separator of the source instance from a block labeling of the target
    /// nodes of [`msp_to_lmp`].
    pub fn separator_from_partition(&self, blocks: &[usize]) -> Option<Separator> {
        match self {
            Witness::NodeCopies { source_nodes: n } => Some(Separator::from_mask(
                (0..*n).map(|v| blocks[v] == blocks[n + v]).collect(),
            )),
            _ => None,
        }
    }

    /// Block labeling of the base nodes from a separator of the target of
    /// [`lmp_to_msp`].
    pub fn partition_from_separator(&self, s: &Separator) -> Option<Vec<usize>> {
        match self {
            Witness::EdgeNodes { base_nodes, edges } => {
                let kept = edges
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| !s.contains(base_nodes + k))
                    .map(|(_, &e)| e);
                let g = Graph::from_edges(*base_nodes, kept).ok()?;
                let comps = components(&g, &vec![false; *base_nodes]);
                Some(comps.labels.iter().map(|&l| l as usize).collect())
            }
            _ => None,
        }
    }

    /// QUBO assignment from a separator of the target of [`qubo_to_msp`].
    pub fn assignment_from_separator(&self, s: &Separator) -> Option<Vec<bool>> {
        match self {
            Witness::Complement => Some(s.mask().iter().map(|&b| !b).collect()),
            _ => None,
        }
    }

    /// Node set of the source solution for the Steiner and vertex separator
    /// reductions.
    pub fn nodes_from_separator(&self, s: &Separator) -> Option<Vec<usize>> {
        match self {
            Witness::SeparatorComplement => {
                Some((0..s.node_count()).filter(|&v| !s.contains(v)).collect())
            }
            Witness::Identity => Some(s.nodes()),
            _ => None,
        }
    }
}

/// Lifted multicut instance whose optimum is the multi-separator optimum
/// plus `−2C|E|(|V|−1)`, `C = 1 + Σ|c_g|`.
pub fn msp_to_lmp(instance: &MspInstance) -> Result<ReductionResult<LmpInstance>, ReductionError> {
    let g = instance.graph();
    let n = g.node_count();
    if n < 2 {
        return Err(ReductionError::TooFewNodes);
    }
    if !g.is_connected() {
        return Err(ReductionError::Disconnected);
    }
    let c = 1.0
        + instance.node_costs().iter().map(|c| c.abs()).sum::<f64>()
        + instance
            .interactions()
            .iter()
            .map(|f| f.cost.abs())
            .sum::<f64>();
    if c * n as f64 * g.max_degree() as f64 > EXACT_LIMIT {
        return Err(ReductionError::Overflow);
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let m = edges.len();
    let bar = |v: usize| n + v;
    let edge_node = |k: usize| 2 * n + k;

    let mut weighted = Vec::with_capacity(n + 2 * m);
    for v in 0..n {
        weighted.push((v, bar(v), c * g.degree(v) as f64));
    }
    for (k, &(v, w)) in edges.iter().enumerate() {
        weighted.push((
            v,
            edge_node(k),
            c + instance.node_costs()[v] / g.degree(v) as f64,
        ));
        weighted.push((
            w,
            edge_node(k),
            c + instance.node_costs()[w] / g.degree(w) as f64,
        ));
    }
    let mut lifted: Vec<(usize, usize, f64)> = instance
        .interactions()
        .iter()
        .map(|f| (f.u as usize, f.v as usize, f.cost))
        .collect();
    for (k, &(v, w)) in edges.iter().enumerate() {
        lifted.push((bar(v), edge_node(k), -c * n as f64));
        lifted.push((bar(w), edge_node(k), -c * n as f64));
    }
    let target = LmpInstance::from_weighted_edges(2 * n + m, &weighted, lifted)?;
    Ok(ReductionResult {
        instance: target,
        value_offset: -2.0 * c * m as f64 * (n as f64 - 1.0),
        value_sign: 1.0,
        witness: Witness::NodeCopies { source_nodes: n },
    })
}

/// Multi-separator instance with the same optimum as a lifted multicut
/// instance; each edge is subdivided by a node that enters the separator
/// exactly when the edge is cut.
pub fn lmp_to_msp(instance: &LmpInstance) -> Result<ReductionResult<MspInstance>, ReductionError> {
    let g = instance.graph();
    if !g.is_connected() {
        return Err(ReductionError::Disconnected);
    }
    let n = g.node_count();
    let edges: Vec<(usize, usize, f64)> = instance.edges().collect();
    let m = edges.len();
    let c = 1.0
        + edges.iter().map(|e| e.2.abs()).sum::<f64>()
        + instance.lifted().map(|f| f.2.abs()).sum::<f64>();
    if c * m as f64 > EXACT_LIMIT {
        return Err(ReductionError::Overflow);
    }
    let mut node_costs = vec![c * m as f64; n];
    node_costs.extend(std::iter::repeat_n(c, m));
    let graph = Graph::from_edges(
        n + m,
        edges
            .iter()
            .enumerate()
            .flat_map(|(k, &(u, v, _))| [(u, n + k), (v, n + k)]),
    )?;
    let mut interactions: Vec<(usize, usize, f64)> =
        edges.iter().map(|&(u, v, ce)| (u, v, ce - c)).collect();
    interactions.extend(instance.lifted());
    let target = MspInstance::new(graph, node_costs, interactions)?;
    Ok(ReductionResult {
        instance: target,
        value_offset: 0.0,
        value_sign: 1.0,
        witness: Witness::EdgeNodes {
            base_nodes: n,
            edges: edges.iter().map(|&(u, v, _)| (u, v)).collect(),
        },
    })
}

/// Coefficients of `max Σ_{i≤j} q_ij x_i x_j`, keyed by `(i, j)` with `i ≤ j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Qubo {
    n: usize,
    terms: BTreeMap<(usize, usize), f64>,
}

impl Qubo {
    /// Entries `(i, j, q)` are symmetrized onto `i ≤ j`; repeated keys add up.
    pub fn new(n: usize, entries: &[(usize, usize, f64)]) -> Self {
        let mut terms = BTreeMap::new();
        for &(i, j, q) in entries {
            assert!(i < n && j < n, "coefficient index out of range");
            *terms.entry((i.min(j), i.max(j))).or_insert(0.0) += q;
        }
        Qubo { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.terms
            .get(&(i.min(j), i.max(j)))
            .copied()
            .unwrap_or(0.0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.terms.iter().map(|(&(i, j), &q)| (i, j, q))
    }

    pub fn evaluate(&self, x: &[bool]) -> f64 {
        self.terms()
            .filter(|&(i, j, _)| x[i] && x[j])
            .map(|(_, _, q)| q)
            .sum()
    }
}

/// Multi-separator instance with `E = F` equal to the support of `q`.
pub fn qubo_to_msp(q: &Qubo) -> Result<ReductionResult<MspInstance>, ReductionError> {
    let n = q.n();
    let pairs: Vec<(usize, usize, f64)> =
        q.terms().filter(|&(i, j, c)| i != j && c != 0.0).collect();
    let graph = Graph::from_edges(n, pairs.iter().map(|&(i, j, _)| (i, j)))?;
    if n > 0 && !graph.is_connected() {
        return Err(ReductionError::Disconnected);
    }
    let node_costs = (0..n).map(|i| q.get(i, i)).collect();
    let target = MspInstance::new(graph, node_costs, pairs)?;
    Ok(ReductionResult {
        instance: target,
        value_offset: q.terms().map(|t| t.2).sum(),
        value_sign: -1.0,
        witness: Witness::Complement,
    })
}

fn check_weights(
    graph: &Graph,
    weights: &[f64],
    terminals: &[usize],
) -> Result<f64, ReductionError> {
    if weights.len() != graph.node_count() {
        return Err(ReductionError::WeightShape);
    }
    if let Some(&w) = weights.iter().find(|&&w| !(w >= 0.0) || !w.is_finite()) {
        return Err(ReductionError::NegativeWeight(w));
    }
    if let Some(&u) = terminals.iter().find(|&&u| u >= graph.node_count()) {
        return Err(ReductionError::TerminalOutOfRange(u));
    }
    Ok(weights.iter().sum())
}

fn dedup_keep_order(terminals: &[usize]) -> Vec<usize> {
    let mut seen = std::collections::HashSet::new();
    terminals
        .iter()
        .copied()
        .filter(|u| seen.insert(*u))
        .collect()
}

/// Node-weighted Steiner tree as a multi-separator instance: the tree is the
/// complement of the separator.
///
/// With a single terminal there are no interactions to keep it out of the
/// separator, so its node cost is raised to `W + 1` instead of `−w`; the
/// optimum still satisfies `Steiner = MSP + W`.
pub fn steiner_to_msp(
    graph: &Graph,
    terminals: &[usize],
    weights: &[f64],
) -> Result<ReductionResult<MspInstance>, ReductionError> {
    let w_total = check_weights(graph, weights, terminals)?;
    let terminals = dedup_keep_order(terminals);
    if terminals.is_empty() {
        return Err(ReductionError::NoTerminals);
    }
    if !graph.is_connected() {
        return Err(ReductionError::Disconnected);
    }
    let mut node_costs: Vec<f64> = weights.iter().map(|w| -w).collect();
    if terminals.len() == 1 {
        node_costs[terminals[0]] = w_total + 1.0;
    }
    let u1 = terminals[0];
    let interactions = terminals[1..]
        .iter()
        .map(|&u| (u1, u, w_total + 1.0))
        .collect();
    let target = MspInstance::new(graph.clone(), node_costs, interactions)?;
    Ok(ReductionResult {
        instance: target,
        value_offset: -w_total,
        value_sign: 1.0,
        witness: Witness::SeparatorComplement,
    })
}

/// Multi-terminal vertex separator as a multi-separator instance.
pub fn mtvs_to_msp(
    graph: &Graph,
    terminals: &[usize],
    weights: &[f64],
) -> Result<ReductionResult<MspInstance>, ReductionError> {
    let w_total = check_weights(graph, weights, terminals)?;
    let terminals = dedup_keep_order(terminals);
    for (a, &u) in terminals.iter().enumerate() {
        for &v in &terminals[a + 1..] {
            if graph.has_edge(u, v) {
                return Err(ReductionError::AdjacentTerminals(u.min(v), u.max(v)));
            }
        }
    }
    let big = w_total + 1.0;
    let mut node_costs = weights.to_vec();
    for &u in &terminals {
        node_costs[u] = big;
    }
    let mut interactions = Vec::new();
    for (a, &u) in terminals.iter().enumerate() {
        for &v in &terminals[a + 1..] {
            interactions.push((u, v, -big));
        }
    }
    let f = interactions.len() as f64;
    let target = MspInstance::new(graph.clone(), node_costs, interactions)?;
    Ok(ReductionResult {
        instance: target,
        value_offset: -f * big,
        value_sign: 1.0,
        witness: Witness::Identity,
    })
}

/// A possibly negated propositional variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal {
            var,
            negated: false,
        }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, negated: true }
    }

    pub fn contradicts(&self, other: &Literal) -> bool {
        self.var == other.var && self.negated != other.negated
    }
}

/// Layout of the gadget built by [`sat3_to_consistency`].
#[derive(Clone, Debug, PartialEq)]
pub struct SatGadget {
    pub instance: MspInstance,
    pub assignment: PartialAssignment,
    pub source: usize,
    pub sink: usize,
}

impl SatGadget {
    /// Node of literal `j` in clause `k`.
    pub fn literal_node(k: usize, j: usize) -> usize {
        2 + 3 * k + j
    }
}

/// Consistency gadget for a 3-CNF formula: the formula is satisfiable iff
/// the returned partial assignment is consistent.
///
/// Source `s` and sink `t` are joined through one column of three literal
/// nodes per clause, consecutive columns completely joined. `{s, t}` must
/// stay connected and every pair of contradictory literal nodes must be
/// separated.
pub fn sat3_to_consistency(formula: &[Vec<Literal>]) -> Result<SatGadget, ReductionError> {
    if formula.is_empty() {
        return Err(ReductionError::EmptyFormula);
    }
    if let Some(k) = formula.iter().position(|c| c.len() != 3) {
        return Err(ReductionError::MalformedClause(k));
    }
    let (s, t) = (0, 1);
    let k = formula.len();
    let node = SatGadget::literal_node;
    let mut edges = Vec::new();
    for j in 0..3 {
        edges.push((s, node(0, j)));
        edges.push((node(k - 1, j), t));
    }
    for col in 0..k - 1 {
        for a in 0..3 {
            for b in 0..3 {
                edges.push((node(col, a), node(col + 1, b)));
            }
        }
    }
    let graph = Graph::from_edges(2 + 3 * k, edges)?;
    let mut interactions = vec![(s, t, 0.0)];
    let literals: Vec<(usize, Literal)> = formula
        .iter()
        .enumerate()
        .flat_map(|(c, clause)| {
            clause
                .iter()
                .enumerate()
                .map(move |(j, &l)| (node(c, j), l))
        })
        .collect();
    for (a, &(na, la)) in literals.iter().enumerate() {
        for &(nb, lb) in &literals[a + 1..] {
            if la.contradicts(&lb) {
                interactions.push((na, nb, 0.0));
            }
        }
    }
    let instance = MspInstance::new(graph, vec![0.0; 2 + 3 * k], interactions)?;
    let mut assignment = PartialAssignment::free(&instance);
    assignment.nodes[s] = Label::Zero;
    assignment.nodes[t] = Label::Zero;
    assignment.interactions[0] = Label::Zero;
    for l in &mut assignment.interactions[1..] {
        *l = Label::One;
    }
    Ok(SatGadget {
        instance,
        assignment,
        source: s,
        sink: t,
    })
}

/// Truth-table satisfiability check.
pub fn is_satisfiable(formula: &[Vec<Literal>]) -> bool {
    let vars = formula
        .iter()
        .flatten()
        .map(|l| l.var + 1)
        .max()
        .unwrap_or(0);
    assert!(vars <= 24, "truth table too large");
    (0..1u32 << vars).any(|bits| {
        formula.iter().all(|clause| {
            clause
                .iter()
                .any(|l| ((bits >> l.var) & 1 == 1) != l.negated)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{
        brute_force_consistency, brute_force_lmp, brute_force_msp, brute_force_qubo,
    };

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    /// The six-node graph with seven edges used to illustrate both reductions.
    fn hexagon() -> Graph {
        // a b c / d e f with edges a-b, b-c, c-f, f-e, e-d, d-a, b-e
        Graph::from_edges(6, [(0, 1), (1, 2), (2, 5), (5, 4), (4, 3), (3, 0), (1, 4)]).unwrap()
    }

    #[test]
    fn msp_to_lmp_sizes() {
        let two = MspInstance::new(path(2), vec![0.0, 0.0], vec![]).unwrap();
        let r = msp_to_lmp(&two).unwrap();
        assert_eq!(r.instance.graph().node_count(), 5);
        assert_eq!(r.instance.graph().edge_count(), 4);
        assert_eq!(r.instance.lifted_count(), 2);
        assert_eq!(r.value_offset, -2.0);

        let f = vec![
            (0, 2, 1.0),
            (0, 4, 1.0),
            (2, 4, 1.0),
            (2, 5, 1.0),
            (3, 4, 1.0),
        ];
        let fig = MspInstance::new(hexagon(), vec![0.0; 6], f).unwrap();
        let r = msp_to_lmp(&fig).unwrap();
        assert_eq!(r.instance.graph().node_count(), 19);
        assert!(
            msp_to_lmp(&MspInstance::new(Graph::empty(1), vec![0.0], vec![]).unwrap()).is_err()
        );
    }

    #[test]
    fn msp_to_lmp_values_on_two_nodes() {
        let inst = MspInstance::new(path(2), vec![-1.0, 2.0], vec![]).unwrap();
        let r = msp_to_lmp(&inst).unwrap();
        let lmp = brute_force_lmp(&r.instance).unwrap();
        assert_eq!(r.source_value(lmp), brute_force_msp(&inst).unwrap().1);
    }

    #[test]
    fn lmp_to_msp_examples() {
        let cut = LmpInstance::from_weighted_edges(2, &[(0, 1, -1.0)], vec![]).unwrap();
        let r = lmp_to_msp(&cut).unwrap();
        assert_eq!(r.instance.node_count(), 3);
        assert_eq!(r.instance.interactions()[0].cost, -3.0);
        let (s, v) = brute_force_msp(&r.instance).unwrap();
        assert_eq!(v, -1.0);
        assert_eq!(s.nodes(), vec![2]);
        assert_eq!(r.witness.partition_from_separator(&s).unwrap(), vec![0, 1]);

        let join = LmpInstance::from_weighted_edges(2, &[(0, 1, 1.0)], vec![]).unwrap();
        assert_eq!(
            brute_force_msp(&lmp_to_msp(&join).unwrap().instance)
                .unwrap()
                .1,
            0.0
        );

        let edges: Vec<(usize, usize, f64)> = hexagon().edges().map(|(u, v)| (u, v, 1.0)).collect();
        let fig = LmpInstance::from_weighted_edges(
            6,
            &edges,
            vec![(0, 2, 1.0), (0, 4, 1.0), (2, 4, 1.0)],
        )
        .unwrap();
        let r = lmp_to_msp(&fig).unwrap();
        assert_eq!(r.instance.node_count(), 13);
        assert_eq!(r.instance.interactions().len(), 10);
    }

    #[test]
    fn qubo_examples() {
        for q in [
            Qubo::new(1, &[(0, 0, 5.0)]),
            Qubo::new(2, &[(0, 1, -1.0)]),
            Qubo::new(2, &[(0, 1, 0.0)]),
        ] {
            let Ok(r) = qubo_to_msp(&q) else {
                // all-zero coupling leaves two isolated nodes
                assert_eq!(q.get(0, 1), 0.0);
                continue;
            };
            assert_eq!(
                r.instance.graph().edge_count(),
                r.instance.interactions().len()
            );
            let (x, best) = (
                brute_force_qubo(&q).unwrap().1,
                brute_force_qubo(&q).unwrap().0,
            );
            let (s, msp) = brute_force_msp(&r.instance).unwrap();
            assert_eq!(r.source_value(msp), best);
            assert_eq!(
                q.evaluate(&r.witness.assignment_from_separator(&s).unwrap()),
                best
            );
            let _ = x;
        }
        assert_eq!(qubo_to_msp(&Qubo::new(1, &[])).unwrap().value_offset, 0.0);
    }

    #[test]
    fn steiner_examples() {
        let r = steiner_to_msp(&path(3), &[0, 2], &[0.0, 1.0, 0.0]).unwrap();
        let (s, v) = brute_force_msp(&r.instance).unwrap();
        assert_eq!(v, 0.0);
        assert_eq!(r.source_value(v), 1.0);
        assert_eq!(r.witness.nodes_from_separator(&s).unwrap(), vec![0, 1, 2]);

        let r = steiner_to_msp(&path(3), &[0, 2], &[0.0; 3]).unwrap();
        assert_eq!(brute_force_msp(&r.instance).unwrap().1, 0.0);

        let r = steiner_to_msp(&path(4), &[1], &[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(brute_force_msp(&r.instance).unwrap().1, -10.0 + 2.0);
        assert!(steiner_to_msp(&path(3), &[0], &[-1.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn mtvs_examples() {
        let r = mtvs_to_msp(&path(3), &[0, 2], &[0.0, 1.0, 0.0]).unwrap();
        let (s, v) = brute_force_msp(&r.instance).unwrap();
        assert_eq!(v, -1.0);
        assert_eq!(s.nodes(), vec![1]);

        let star = Graph::from_edges(3, [(0, 1), (0, 2)]).unwrap();
        let r = mtvs_to_msp(&star, &[1, 2], &[0.0; 3]).unwrap();
        let (s, v) = brute_force_msp(&r.instance).unwrap();
        assert_eq!((s.nodes(), v), (vec![0], -1.0));

        // terminals 0 and 5 joined by 0-1-2-5 and 0-3-4-5
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)]).unwrap();
        let w = [0.0, 1.0, 5.0, 2.0, 5.0, 0.0];
        let r = mtvs_to_msp(&g, &[0, 5], &w).unwrap();
        let (s, v) = brute_force_msp(&r.instance).unwrap();
        assert_eq!(s.nodes(), vec![1, 3]);
        assert_eq!(v, -(13.0 + 1.0) + 3.0);
        assert_eq!(
            mtvs_to_msp(&path(2), &[0, 1], &[0.0; 2]),
            Err(ReductionError::AdjacentTerminals(0, 1))
        );
    }

    #[test]
    fn sat_gadget_examples() {
        let (a, b, c, d) = (0, 1, 2, 3);
        use Literal as L;
        let formula = vec![
            vec![L::pos(a), L::neg(b), L::pos(c)],
            vec![L::neg(a), L::pos(c), L::neg(d)],
            vec![L::neg(a), L::pos(b), L::pos(d)],
            vec![L::neg(b), L::neg(c), L::pos(d)],
        ];
        let g = sat3_to_consistency(&formula).unwrap();
        assert!(is_satisfiable(&formula));
        assert!(brute_force_consistency(&g.instance, &g.assignment).unwrap());

        let unsat = vec![vec![L::pos(0); 3], vec![L::neg(0); 3]];
        assert!(!is_satisfiable(&unsat));
        let g = sat3_to_consistency(&unsat).unwrap();
        assert!(!brute_force_consistency(&g.instance, &g.assignment).unwrap());

        let single = vec![vec![L::pos(0), L::pos(1), L::pos(2)]];
        let g = sat3_to_consistency(&single).unwrap();
        assert!(brute_force_consistency(&g.instance, &g.assignment).unwrap());

        assert_eq!(
            sat3_to_consistency(&[vec![L::pos(0)]]),
            Err(ReductionError::MalformedClause(0))
        );
    }
}
