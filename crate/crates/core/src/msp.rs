//! The multi-separator problem: instances, objective, characteristic vectors
//! and the two linear-time consistency deciders for partial assignments.
//!
//! A pair `{u, v}` is separated by `S` when `u ∈ S`, `v ∈ S`, or every
//! `u`-`v` path meets `S`. The objective of `S` is the cost of its nodes plus
//! the cost of every interaction it separates.

use crate::error::MspError;
use crate::graph::{components, Components, Graph, NO_LABEL};

/// A node pair carrying a cost that is paid when the pair is separated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interaction {
    pub u: u32,
    pub v: u32,
    pub cost: f64,
}

impl Interaction {
    #[inline]
    pub fn endpoints(&self) -> (usize, usize) {
        (self.u as usize, self.v as usize)
    }
}

/// Graph, node costs and interactions with costs.
#[derive(Clone, Debug, PartialEq)]
pub struct MspInstance {
    graph: Graph,
    node_costs: Vec<f64>,
    interactions: Vec<Interaction>,
    is_edge: Vec<bool>,
}

impl MspInstance {
    /// Validates and builds an instance. Interaction pairs are stored with the
    /// smaller endpoint first, in the given order.
    pub fn new(
        graph: Graph,
        node_costs: Vec<f64>,
        interactions: Vec<(usize, usize, f64)>,
    ) -> Result<Self, MspError> {
        let n = graph.node_count();
        if node_costs.len() != n {
            return Err(MspError::NodeCostCount {
                expected: n,
                got: node_costs.len(),
            });
        }
        if let Some(&c) = node_costs.iter().find(|c| !c.is_finite()) {
            return Err(MspError::NonFiniteCost(c));
        }
        let mut list = Vec::with_capacity(interactions.len());
        for (u, v, cost) in interactions {
            if u >= n || v >= n {
                return Err(MspError::InteractionOutOfRange { node: u.max(v) });
            }
            if u == v {
                return Err(MspError::InteractionSelfPair(u));
            }
            if !cost.is_finite() {
                return Err(MspError::NonFiniteCost(cost));
            }
            list.push(Interaction {
                u: u.min(v) as u32,
                v: u.max(v) as u32,
                cost,
            });
        }
        let mut keys: Vec<(u32, u32)> = list.iter().map(|f| (f.u, f.v)).collect();
        keys.sort_unstable();
        if let Some(w) = keys.windows(2).find(|w| w[0] == w[1]) {
            return Err(MspError::DuplicateInteraction(
                w[0].0 as usize,
                w[0].1 as usize,
            ));
        }
        let is_edge = list
            .iter()
            .map(|f| graph.has_edge(f.u as usize, f.v as usize))
            .collect();
        Ok(MspInstance {
            graph,
            node_costs,
            interactions: list,
            is_edge,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn node_costs(&self) -> &[f64] {
        &self.node_costs
    }

    pub fn interactions(&self) -> &[Interaction] {
        &self.interactions
    }

    pub fn interaction_costs(&self) -> Vec<f64> {
        self.interactions.iter().map(|f| f.cost).collect()
    }

    /// Whether interaction `i` coincides with an edge of the graph.
    pub fn is_edge_interaction(&self, i: usize) -> bool {
        self.is_edge[i]
    }

    /// Same structure with new costs.
    pub fn with_costs(
        &self,
        node_costs: Vec<f64>,
        interaction_costs: &[f64],
    ) -> Result<Self, MspError> {
        if node_costs.len() != self.node_count() {
            return Err(MspError::NodeCostCount {
                expected: self.node_count(),
                got: node_costs.len(),
            });
        }
        if interaction_costs.len() != self.interactions.len() {
            return Err(MspError::InteractionCostCount {
                expected: self.interactions.len(),
                got: interaction_costs.len(),
            });
        }
        if let Some(&c) = node_costs
            .iter()
            .chain(interaction_costs)
            .find(|c| !c.is_finite())
        {
            return Err(MspError::NonFiniteCost(c));
        }
        let interactions = self
            .interactions
            .iter()
            .zip(interaction_costs)
            .map(|(f, &cost)| Interaction { cost, ..*f })
            .collect();
        Ok(MspInstance {
            graph: self.graph.clone(),
            node_costs,
            interactions,
            is_edge: self.is_edge.clone(),
        })
    }

    /// Per-node lists of `(other endpoint, interaction index)`, sorted by endpoint.
    pub fn interaction_adjacency(&self) -> InteractionAdjacency {
        InteractionAdjacency::new(self)
    }
}

/// Interaction graph in compressed form.
#[derive(Clone, Debug)]
pub struct InteractionAdjacency {
    offsets: Vec<usize>,
    entries: Vec<(u32, u32)>,
}

impl InteractionAdjacency {
    fn new(instance: &MspInstance) -> Self {
        let n = instance.node_count();
        let mut degree = vec![0usize; n];
        for f in instance.interactions() {
            degree[f.u as usize] += 1;
            degree[f.v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut entries = vec![(0u32, 0u32); offsets[n]];
        for (i, f) in instance.interactions().iter().enumerate() {
            entries[fill[f.u as usize]] = (f.v, i as u32);
            fill[f.u as usize] += 1;
            entries[fill[f.v as usize]] = (f.u, i as u32);
            fill[f.v as usize] += 1;
        }
        for v in 0..n {
            entries[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        InteractionAdjacency { offsets, entries }
    }

    #[inline]
    pub fn of(&self, v: usize) -> &[(u32, u32)] {
        &self.entries[self.offsets[v]..self.offsets[v + 1]]
    }
}

/// A node subset `S ⊆ V`, stored as a membership mask.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Separator {
    members: Vec<bool>,
}

impl Separator {
    pub fn empty(n: usize) -> Self {
        Separator {
            members: vec![false; n],
        }
    }

    pub fn full(n: usize) -> Self {
        Separator {
            members: vec![true; n],
        }
    }

    pub fn from_mask(members: Vec<bool>) -> Self {
        Separator { members }
    }

    pub fn from_nodes<I: IntoIterator<Item = usize>>(n: usize, nodes: I) -> Self {
        let mut s = Separator::empty(n);
        for v in nodes {
            s.members[v] = true;
        }
        s
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.members[v]
    }

    pub fn insert(&mut self, v: usize) {
        self.members[v] = true;
    }

    pub fn remove(&mut self, v: usize) {
        self.members[v] = false;
    }

    pub fn mask(&self) -> &[bool] {
        &self.members
    }

    pub fn node_count(&self) -> usize {
        self.members.len()
    }

    /// Number of nodes in the separator.
    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Members in ascending order.
    pub fn nodes(&self) -> Vec<usize> {
        (0..self.members.len())
            .filter(|&v| self.members[v])
            .collect()
    }

    pub fn is_subset_of(&self, other: &Separator) -> bool {
        self.members
            .iter()
            .zip(&other.members)
            .all(|(&a, &b)| !a || b)
    }
}

fn check_shape(instance: &MspInstance, s: &Separator) -> Result<(), MspError> {
    if s.node_count() != instance.node_count() {
        return Err(MspError::SeparatorShape {
            expected: instance.node_count(),
            got: s.node_count(),
        });
    }
    Ok(())
}

#[inline]
fn separated_by(comps: &Components, f: &Interaction) -> bool {
    !comps.same(f.u as usize, f.v as usize)
}

/// Indices of the interactions separated by `s`, ascending.
pub fn separated_interactions(
    instance: &MspInstance,
    s: &Separator,
) -> Result<Vec<usize>, MspError> {
    check_shape(instance, s)?;
    let comps = components(instance.graph(), s.mask());
    Ok((0..instance.interactions().len())
        .filter(|&i| separated_by(&comps, &instance.interactions()[i]))
        .collect())
}

/// `Σ_{v∈S} c_v + Σ_{f∈F(S)} c_f`.
pub fn objective(instance: &MspInstance, s: &Separator) -> Result<f64, MspError> {
    check_shape(instance, s)?;
    let comps = components(instance.graph(), s.mask());
    let mut total = 0.0;
    for v in 0..instance.node_count() {
        if s.contains(v) {
            total += instance.node_costs()[v];
        }
    }
    for f in instance.interactions() {
        if separated_by(&comps, f) {
            total += f.cost;
        }
    }
    Ok(total)
}

/// Indicator vectors of a separator over nodes and interactions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionVector {
    pub node_bits: Vec<bool>,
    pub interaction_bits: Vec<bool>,
}

impl SolutionVector {
    /// `⟨x, c⟩` over nodes and interactions.
    pub fn inner_product(&self, instance: &MspInstance) -> f64 {
        let nodes: f64 = self
            .node_bits
            .iter()
            .zip(instance.node_costs())
            .filter(|(&b, _)| b)
            .map(|(_, &c)| c)
            .sum();
        let inter: f64 = self
            .interaction_bits
            .iter()
            .zip(instance.interactions())
            .filter(|(&b, _)| b)
            .map(|(_, f)| f.cost)
            .sum();
        nodes + inter
    }
}

pub fn characteristic_vector(
    instance: &MspInstance,
    s: &Separator,
) -> Result<SolutionVector, MspError> {
    check_shape(instance, s)?;
    let comps = components(instance.graph(), s.mask());
    Ok(SolutionVector {
        node_bits: s.mask().to_vec(),
        interaction_bits: instance
            .interactions()
            .iter()
            .map(|f| separated_by(&comps, f))
            .collect(),
    })
}

/// Value of one variable in a partial assignment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Zero,
    One,
    Free,
}

/// Labels over `V ∪ F`; `Free` leaves a variable unassigned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialAssignment {
    pub nodes: Vec<Label>,
    pub interactions: Vec<Label>,
}

impl PartialAssignment {
    pub fn free(instance: &MspInstance) -> Self {
        PartialAssignment {
            nodes: vec![Label::Free; instance.node_count()],
            interactions: vec![Label::Free; instance.interactions().len()],
        }
    }

    pub fn fits(&self, instance: &MspInstance) -> bool {
        self.nodes.len() == instance.node_count()
            && self.interactions.len() == instance.interactions().len()
    }

    /// Whether a full characteristic vector agrees with every fixed label.
    pub fn matches(&self, x: &SolutionVector) -> bool {
        let agree = |l: &Label, b: &bool| match l {
            Label::Free => true,
            Label::Zero => !b,
            Label::One => *b,
        };
        self.nodes
            .iter()
            .zip(&x.node_bits)
            .all(|(l, b)| agree(l, b))
            && self
                .interactions
                .iter()
                .zip(&x.interaction_bits)
                .all(|(l, b)| agree(l, b))
    }
}

/// Work performed by a decider: nodes visited plus adjacency entries scanned
/// plus interactions inspected.
pub type OpCount = u64;

fn counted_components(graph: &Graph, removed: &[bool], ops: &mut OpCount) -> Components {
    let comps = components(graph, removed);
    *ops += graph.node_count() as u64;
    for v in 0..graph.node_count() {
        if comps.labels[v] != NO_LABEL {
            *ops += graph.degree(v) as u64;
        }
    }
    comps
}

/// Decides consistency when no interaction is labeled 1.
pub fn consistency_zero_star(
    instance: &MspInstance,
    x: &PartialAssignment,
) -> Result<bool, MspError> {
    consistency_zero_star_counted(instance, x).map(|(b, _)| b)
}

/// [`consistency_zero_star`] together with its operation count.
pub fn consistency_zero_star_counted(
    instance: &MspInstance,
    x: &PartialAssignment,
) -> Result<(bool, OpCount), MspError> {
    if !x.fits(instance) {
        return Err(MspError::AssignmentShape);
    }
    if x.interactions.contains(&Label::One) {
        return Err(MspError::Precondition("an interaction is labeled 1"));
    }
    let mut ops = 0;
    let removed: Vec<bool> = x.nodes.iter().map(|&l| l == Label::One).collect();
    let comps = counted_components(instance.graph(), &removed, &mut ops);
    let mut ok = true;
    for (f, &l) in instance.interactions().iter().zip(&x.interactions) {
        ops += 1;
        if l == Label::Zero && separated_by(&comps, f) {
            ok = false;
            break;
        }
    }
    Ok((ok, ops))
}

/// Decides consistency when every interaction that is not an edge is labeled
/// 1 or left free.
pub fn consistency_one_star(
    instance: &MspInstance,
    x: &PartialAssignment,
) -> Result<bool, MspError> {
    consistency_one_star_counted(instance, x).map(|(b, _)| b)
}

/// [`consistency_one_star`] together with its operation count.
pub fn consistency_one_star_counted(
    instance: &MspInstance,
    x: &PartialAssignment,
) -> Result<(bool, OpCount), MspError> {
    if !x.fits(instance) {
        return Err(MspError::AssignmentShape);
    }
    for (i, &l) in x.interactions.iter().enumerate() {
        if l == Label::Zero && !instance.is_edge_interaction(i) {
            return Err(MspError::Precondition(
                "a non-edge interaction is labeled 0",
            ));
        }
    }
    let mut ops = 0;
    // Largest candidate separator: every node that may be 1, except the
    // endpoints of edge interactions that must stay joined.
    let mut removed: Vec<bool> = x.nodes.iter().map(|&l| l != Label::Zero).collect();
    for (f, &l) in instance.interactions().iter().zip(&x.interactions) {
        ops += 1;
        if l != Label::Zero {
            continue;
        }
        let (u, v) = f.endpoints();
        if x.nodes[u] == Label::One || x.nodes[v] == Label::One {
            return Ok((false, ops));
        }
        removed[u] = false;
        removed[v] = false;
    }
    let comps = counted_components(instance.graph(), &removed, &mut ops);
    for (f, &l) in instance.interactions().iter().zip(&x.interactions) {
        ops += 1;
        if l == Label::One && !separated_by(&comps, f) {
            return Ok((false, ops));
        }
    }
    Ok((true, ops))
}
