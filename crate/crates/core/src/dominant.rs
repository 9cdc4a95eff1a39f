//! Exact solver for absolute dominant costs.
//!
//! Costs are absolute dominant when every `|c_g|` exceeds the sum of all
//! strictly smaller magnitudes. Such costs encode a lexicographic preference
//! over the variables, and in two sign regimes the preferred separator can be
//! found greedily with one linear-time consistency check per variable.

use crate::error::DominantError;
use crate::msp::{
    characteristic_vector, consistency_one_star_counted, consistency_zero_star_counted, Label,
    MspInstance, OpCount, PartialAssignment, Separator,
};

/// A variable of the problem: a node or an interaction (by index).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variable {
    Node(usize),
    Interaction(usize),
}

/// Strict priority order over `V ∪ F` (most important first) and the set of
/// attractive variables; all others are repulsive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreferenceSpec {
    pub node_count: usize,
    pub interaction_count: usize,
    pub order: Vec<Variable>,
    pub attractive: Vec<Variable>,
}

/// Costs generated from a preference order.
#[derive(Clone, Debug, PartialEq)]
pub struct PreferenceCosts {
    pub node_costs: Vec<f64>,
    pub interaction_costs: Vec<f64>,
}

fn all_costs(instance: &MspInstance) -> impl Iterator<Item = f64> + '_ {
    instance
        .node_costs()
        .iter()
        .copied()
        .chain(instance.interactions().iter().map(|f| f.cost))
}

/// Whether `|c_g| > Σ{|c_g'| : |c_g'| < |c_g|}` holds for every variable.
pub fn is_absolute_dominant(instance: &MspInstance) -> bool {
    costs_are_absolute_dominant(all_costs(instance))
}

/// [`is_absolute_dominant`] on a bare list of costs.
pub fn costs_are_absolute_dominant<I: IntoIterator<Item = f64>>(costs: I) -> bool {
    let mut mags: Vec<f64> = costs.into_iter().map(f64::abs).collect();
    mags.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // Walk ascending; `below` is the sum of magnitudes strictly smaller than
    // the current run of equal values.
    let mut below = 0.0;
    let mut i = 0;
    while i < mags.len() {
        let m = mags[i];
        if !(m > below) {
            return false;
        }
        let mut j = i;
        while j < mags.len() && mags[j] == m {
            j += 1;
        }
        below += m * (j - i) as f64;
        i = j;
    }
    true
}

/// `c_{g_i} = ±2^{n-i}`, positive for attractive variables.
pub fn costs_from_preference(spec: &PreferenceSpec) -> Result<PreferenceCosts, DominantError> {
    let n = spec.order.len();
    if n > 52 {
        return Err(DominantError::TooManyVariables(n));
    }
    if n != spec.node_count + spec.interaction_count {
        return Err(DominantError::NotAPermutation);
    }
    let mut node_costs = vec![f64::NAN; spec.node_count];
    let mut interaction_costs = vec![f64::NAN; spec.interaction_count];
    for (i, g) in spec.order.iter().enumerate() {
        let magnitude = (1u64 << (n - 1 - i)) as f64;
        let sign = if spec.attractive.contains(g) {
            1.0
        } else {
            -1.0
        };
        let slot = match *g {
            Variable::Node(v) if v < spec.node_count => &mut node_costs[v],
            Variable::Interaction(f) if f < spec.interaction_count => &mut interaction_costs[f],
            _ => return Err(DominantError::NotAPermutation),
        };
        if !slot.is_nan() {
            return Err(DominantError::NotAPermutation);
        }
        *slot = sign * magnitude;
    }
    Ok(PreferenceCosts {
        node_costs,
        interaction_costs,
    })
}

/// Which linear-time decider applies, fixed by the interaction signs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// Every interaction cost is non-negative: interactions are only ever labeled 0.
    Attractive,
    /// Every non-edge interaction cost is non-positive: those are only ever labeled 1.
    Repulsive,
}

/// Result of [`solve_dominant_counted`].
#[derive(Clone, Debug, PartialEq)]
pub struct DominantRun {
    pub separator: Separator,
    pub regime: Regime,
    pub consistency_checks: usize,
    pub operations: OpCount,
}

pub fn regime(instance: &MspInstance) -> Result<Regime, DominantError> {
    let fs = instance.interactions();
    if fs.iter().all(|f| f.cost >= 0.0) {
        Ok(Regime::Attractive)
    } else if (0..fs.len()).all(|i| instance.is_edge_interaction(i) || fs[i].cost <= 0.0) {
        Ok(Regime::Repulsive)
    } else {
        Err(DominantError::MixedRegime)
    }
}

/// The unique optimal separator for absolute dominant costs in either
/// tractable regime.
pub fn solve_dominant(instance: &MspInstance) -> Result<Separator, DominantError> {
    solve_dominant_counted(instance).map(|r| r.separator)
}

/// [`solve_dominant`] together with its check and operation counts.
pub fn solve_dominant_counted(instance: &MspInstance) -> Result<DominantRun, DominantError> {
    if !is_absolute_dominant(instance) {
        return Err(DominantError::NotDominant);
    }
    let regime = regime(instance)?;
    let n = instance.node_count();
    let mut vars: Vec<(f64, Variable)> = (0..n)
        .map(|v| (instance.node_costs()[v], Variable::Node(v)))
        .chain(
            instance
                .interactions()
                .iter()
                .enumerate()
                .map(|(i, f)| (f.cost, Variable::Interaction(i))),
        )
        .collect();
    vars.sort_by(|a, b| {
        b.0.abs()
            .partial_cmp(&a.0.abs())
            .unwrap()
            .then(a.1.cmp(&b.1))
    });
    if let Some(w) = vars.windows(2).find(|w| w[0].0.abs() == w[1].0.abs()) {
        return Err(DominantError::TiedMagnitudes(w[0].0.abs()));
    }

    let mut x = PartialAssignment::free(instance);
    // A node whose preferred label was revoked takes the other value in every
    // extension; record the forced value.
    let mut node_value = vec![false; n];
    let mut checks = 0;
    let mut operations = 0;
    for &(cost, g) in &vars {
        let preferred = if cost > 0.0 { Label::Zero } else { Label::One };
        let slot = match g {
            Variable::Node(v) => &mut x.nodes[v],
            Variable::Interaction(i) => &mut x.interactions[i],
        };
        *slot = preferred;
        let (consistent, ops) = match regime {
            Regime::Attractive => consistency_zero_star_counted(instance, &x)?,
            Regime::Repulsive => consistency_one_star_counted(instance, &x)?,
        };
        checks += 1;
        operations += ops;
        let kept = consistent;
        if !kept {
            match g {
                Variable::Node(v) => x.nodes[v] = Label::Free,
                Variable::Interaction(i) => x.interactions[i] = Label::Free,
            }
        }
        if let Variable::Node(v) = g {
            node_value[v] = (preferred == Label::One) == kept;
        }
    }
    let separator = Separator::from_mask(node_value);
    debug_assert!(x.matches(&characteristic_vector(instance, &separator).unwrap()));
    Ok(DominantRun {
        separator,
        regime,
        consistency_checks: checks,
        operations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::msp::objective;
    use crate::oracle::brute_force_msp;

    fn with_costs(
        nodes: Vec<f64>,
        inter: Vec<(usize, usize, f64)>,
        edges: &[(usize, usize)],
    ) -> MspInstance {
        let g = Graph::from_edges(nodes.len(), edges.iter().copied()).unwrap();
        MspInstance::new(g, nodes, inter).unwrap()
    }

    #[test]
    fn dominance_examples() {
        assert!(costs_are_absolute_dominant([8.0, -4.0, 2.0, -1.0]));
        assert!(!costs_are_absolute_dominant([3.0, 2.0, 1.0]));
        assert!(costs_are_absolute_dominant([1.0]));
        assert!(!costs_are_absolute_dominant([0.0]));
        // Equal magnitudes only compete with strictly smaller ones.
        assert!(costs_are_absolute_dominant([1.0, -1.0]));
    }

    #[test]
    fn preference_examples() {
        let order = |n: usize| (0..n).map(Variable::Node).collect::<Vec<_>>();
        let spec = PreferenceSpec {
            node_count: 3,
            interaction_count: 0,
            order: order(3),
            attractive: order(3),
        };
        assert_eq!(
            costs_from_preference(&spec).unwrap().node_costs,
            vec![4.0, 2.0, 1.0]
        );
        let spec = PreferenceSpec {
            attractive: vec![],
            ..spec
        };
        assert_eq!(
            costs_from_preference(&spec).unwrap().node_costs,
            vec![-4.0, -2.0, -1.0]
        );
        let spec = PreferenceSpec {
            node_count: 4,
            interaction_count: 0,
            order: order(4),
            attractive: vec![Variable::Node(0), Variable::Node(2)],
        };
        assert_eq!(
            costs_from_preference(&spec).unwrap().node_costs,
            vec![8.0, -4.0, 2.0, -1.0]
        );
        let too_many = PreferenceSpec {
            node_count: 53,
            interaction_count: 0,
            order: order(53),
            attractive: vec![],
        };
        assert_eq!(
            costs_from_preference(&too_many),
            Err(DominantError::TooManyVariables(53))
        );
    }

    #[test]
    fn unconstrained_nodes_follow_signs() {
        let inst = with_costs(
            vec![8.0, -4.0, 2.0, -1.0],
            vec![],
            &[(0, 1), (1, 2), (2, 3)],
        );
        assert_eq!(solve_dominant(&inst).unwrap().nodes(), vec![1, 3]);
    }

    #[test]
    fn attractive_pair_is_revoked_when_already_separated() {
        // Path a-b-c with c_c = -8, c_ac = +4, c_a = +2, c_b = -1.
        let inst = with_costs(vec![2.0, -1.0, -8.0], vec![(0, 2, 4.0)], &[(0, 1), (1, 2)]);
        let s = solve_dominant(&inst).unwrap();
        assert_eq!(s.nodes(), vec![1, 2]);
        assert_eq!(
            objective(&inst, &s).unwrap(),
            brute_force_msp(&inst).unwrap().1
        );
    }

    #[test]
    fn positive_costs_give_empty_separator() {
        let inst = with_costs(vec![8.0, 4.0, 2.0], vec![(0, 2, 1.0)], &[(0, 1), (1, 2)]);
        assert!(solve_dominant(&inst).unwrap().is_empty());
    }

    #[test]
    fn preconditions() {
        let not_dom = with_costs(vec![3.0, 2.0, 1.0], vec![], &[(0, 1), (1, 2)]);
        assert_eq!(solve_dominant(&not_dom), Err(DominantError::NotDominant));
        let repulsive = with_costs(
            vec![16.0, 8.0, 4.0],
            vec![(0, 2, -2.0), (0, 1, 1.0)],
            &[(0, 1), (1, 2)],
        );
        assert_eq!(regime(&repulsive), Ok(Regime::Repulsive));
        assert!(solve_dominant(&repulsive).is_ok());
        let mixed = with_costs(
            vec![16.0, 8.0, 4.0],
            vec![(0, 2, 2.0), (0, 1, -1.0)],
            &[(0, 1), (1, 2)],
        );
        assert_eq!(solve_dominant(&mixed), Err(DominantError::MixedRegime));
        let tied = with_costs(vec![1.0, -1.0], vec![], &[(0, 1)]);
        assert_eq!(
            solve_dominant(&tied),
            Err(DominantError::TiedMagnitudes(1.0))
        );
    }
}
