//! Seeded random instances for differential testing against the exhaustive
//! oracles.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::dominant::{costs_from_preference, PreferenceSpec, Regime, Variable};
use crate::graph::Graph;
use crate::metrics::Partition;
use crate::msp::{characteristic_vector, Label, MspInstance, PartialAssignment, Separator};
use crate::oracle::LmpInstance;
use crate::reductions::{Literal, Qubo};

/// How random costs are drawn.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Costs {
    /// Uniform integers in `-k..=k`.
    Integer(i64),
    /// Uniform reals in `[-a, a)`; ties have probability zero.
    Uniform(f64),
}

impl Costs {
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            Costs::Integer(k) => rng.gen_range(-k..=k) as f64,
            Costs::Uniform(a) => rng.gen_range(-a..a),
        }
    }
}

/// A random spanning tree on `n` nodes plus each other pair with probability
/// `extra`.
pub fn connected_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, extra: f64) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.push((order[i].min(order[j]), order[i].max(order[j])));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(extra) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("generated edges are valid")
}

/// `count` distinct node pairs, or all pairs if there are fewer.
pub fn random_pairs<R: Rng + ?Sized>(rng: &mut R, n: usize, count: usize) -> Vec<(usize, usize)> {
    let mut all: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    all.shuffle(rng);
    all.truncate(count);
    all
}

/// Connected graph on `n` nodes with `interactions` random pairs.
pub fn instance<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    interactions: usize,
    costs: Costs,
) -> MspInstance {
    let g = connected_graph(rng, n, 0.25);
    let node_costs = (0..n).map(|_| costs.draw(rng)).collect();
    let pairs = random_pairs(rng, n, interactions)
        .into_iter()
        .map(|(u, v)| (u, v, costs.draw(rng)))
        .collect();
    MspInstance::new(g, node_costs, pairs).expect("generated instance is valid")
}

/// Instance with absolute dominant costs from a random preference order whose
/// signs fit `regime`.
pub fn preference_instance<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    interactions: usize,
    regime: Regime,
) -> MspInstance {
    let g = connected_graph(rng, n, 0.25);
    let pairs = random_pairs(rng, n, interactions);
    let shape = MspInstance::new(
        g.clone(),
        vec![0.0; n],
        pairs.iter().map(|&(u, v)| (u, v, 0.0)).collect(),
    )
    .expect("generated instance is valid");
    let mut order: Vec<Variable> = (0..n)
        .map(Variable::Node)
        .chain((0..pairs.len()).map(Variable::Interaction))
        .collect();
    order.shuffle(rng);
    let attractive = order
        .iter()
        .copied()
        .filter(|g| match *g {
            Variable::Node(_) => rng.gen_bool(0.5),
            Variable::Interaction(i) => match regime {
                Regime::Attractive => true,
                Regime::Repulsive => shape.is_edge_interaction(i) && rng.gen_bool(0.5),
            },
        })
        .collect();
    let spec = PreferenceSpec {
        node_count: n,
        interaction_count: pairs.len(),
        order,
        attractive,
    };
    let costs = costs_from_preference(&spec).expect("at most 52 variables");
    shape
        .with_costs(costs.node_costs, &costs.interaction_costs)
        .expect("shapes agree")
}

/// Which linear-time decider a partial assignment is meant for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decider {
    /// Interactions labeled 0 or free.
    ZeroStar,
    /// Non-edge interactions labeled 1 or free; edge interactions unrestricted.
    OneStar,
}

/// A partial assignment satisfying the decider's precondition. Half of them
/// are restrictions of a random separator's characteristic vector (hence
/// consistent); the rest carry random labels.
pub fn partial_assignment<R: Rng + ?Sized>(
    rng: &mut R,
    instance: &MspInstance,
    decider: Decider,
) -> PartialAssignment {
    let n = instance.node_count();
    let fs = instance.interactions();
    let from_separator = rng.gen_bool(0.5);
    let s = Separator::from_mask((0..n).map(|_| rng.gen_bool(0.3)).collect());
    let y = characteristic_vector(instance, &s).expect("shape matches");
    let to_label = |b: bool| if b { Label::One } else { Label::Zero };
    let mut x = PartialAssignment::free(instance);
    for v in 0..n {
        if rng.gen_bool(0.5) {
            x.nodes[v] = if from_separator {
                to_label(y.node_bits[v])
            } else {
                to_label(rng.gen_bool(0.3))
            };
        }
    }
    for i in 0..fs.len() {
        if !rng.gen_bool(0.6) {
            continue;
        }
        let label = if from_separator {
            to_label(y.interaction_bits[i])
        } else {
            to_label(rng.gen_bool(0.5))
        };
        let allowed = match decider {
            Decider::ZeroStar => label == Label::Zero,
            Decider::OneStar => label == Label::One || instance.is_edge_interaction(i),
        };
        if allowed {
            x.interactions[i] = label;
        }
    }
    x
}

/// Lifted multicut instance on a connected graph.
pub fn lmp_instance<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    lifted: usize,
    costs: Costs,
) -> LmpInstance {
    let g = connected_graph(rng, n, 0.3);
    let edge_costs = (0..g.edge_count()).map(|_| costs.draw(rng)).collect();
    let candidates: Vec<(usize, usize)> = random_pairs(rng, n, n * n)
        .into_iter()
        .filter(|&(u, v)| !g.has_edge(u, v))
        .take(lifted)
        .collect();
    let lifted = candidates
        .into_iter()
        .map(|(u, v)| (u, v, costs.draw(rng)))
        .collect();
    LmpInstance::new(g, edge_costs, lifted).expect("generated instance is valid")
}

/// QUBO whose off-diagonal support is a connected graph.
pub fn qubo<R: Rng + ?Sized>(rng: &mut R, n: usize, costs: Costs) -> Qubo {
    let g = connected_graph(rng, n, 0.3);
    let mut entries: Vec<(usize, usize, f64)> = (0..n).map(|i| (i, i, costs.draw(rng))).collect();
    for (u, v) in g.edges() {
        let mut q = costs.draw(rng);
        while q == 0.0 {
            q = costs.draw(rng);
        }
        entries.push((u, v, q));
    }
    Qubo::new(n, &entries)
}

/// Random 3-CNF formula.
pub fn formula<R: Rng + ?Sized>(rng: &mut R, vars: usize, clauses: usize) -> Vec<Vec<Literal>> {
    (0..clauses)
        .map(|_| {
            (0..3)
                .map(|_| Literal {
                    var: rng.gen_range(0..vars),
                    negated: rng.gen_bool(0.5),
                })
                .collect()
        })
        .collect()
}

/// Random partition of `0..n` into at most `max_blocks` blocks.
pub fn partition<R: Rng + ?Sized>(rng: &mut R, n: usize, max_blocks: usize) -> Partition {
    let labels: Vec<usize> = (0..n)
        .map(|_| rng.gen_range(0..max_blocks.max(1)))
        .collect();
    Partition::from_labels(&labels)
}
