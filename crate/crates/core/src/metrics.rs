//! Partitions induced by separators and the variation of information between
//! them.

use rustc_hash::FxHashMap;

use crate::error::MetricError;
use crate::graph::{components, Graph, NO_LABEL};
use crate::msp::Separator;

/// A partition of the ground set `0..len` given as block labels.
///
/// Labels are dense: blocks are numbered `0..block_count` in order of first
/// appearance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    labels: Vec<u32>,
    block_count: usize,
}

impl Partition {
    /// Relabels arbitrary block ids densely.
    pub fn from_labels<L: Copy + Eq + std::hash::Hash>(labels: &[L]) -> Self {
        let mut ids = FxHashMap::default();
        let dense = labels
            .iter()
            .map(|l| {
                let next = ids.len() as u32;
                *ids.entry(*l).or_insert(next)
            })
            .collect();
        Partition {
            labels: dense,
            block_count: ids.len(),
        }
    }

    /// Blocks must be nonempty, disjoint and cover `0..n`.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self, MetricError> {
        let mut labels = vec![u32::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(MetricError::NotAPartition);
            }
            for &v in block {
                if v >= n || labels[v] != u32::MAX {
                    return Err(MetricError::NotAPartition);
                }
                labels[v] = b as u32;
            }
        }
        if labels.contains(&u32::MAX) {
            return Err(MetricError::NotAPartition);
        }
        Ok(Partition::from_labels(&labels))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.block_count
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Blocks as sorted element lists, in label order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count];
        for (v, &l) in self.labels.iter().enumerate() {
            blocks[l as usize].push(v);
        }
        blocks
    }

    /// The partition restricted to `elements`, renumbered `0..elements.len()`.
    pub fn restrict(&self, elements: &[usize]) -> Partition {
        let picked: Vec<u32> = elements.iter().map(|&v| self.labels[v]).collect();
        Partition::from_labels(&picked)
    }
}

/// Components of `V ∖ S` plus one singleton per separator node.
pub fn induced_partition(graph: &Graph, s: &Separator) -> Partition {
    let comps = components(graph, s.mask());
    let mut next = comps.count as u64;
    let labels: Vec<u64> = comps
        .labels
        .iter()
        .map(|&l| {
            if l == NO_LABEL {
                next += 1;
                next - 1
            } else {
                l as u64
            }
        })
        .collect();
    Partition::from_labels(&labels)
}

/// Distance report. `false_cut = H(A|B)` and `false_join = H(B|A)` for
/// prediction `A` and truth `B`; all in bits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ViReport {
    pub vi: f64,
    pub false_cut: f64,
    pub false_join: f64,
}

impl ViReport {
    pub const ZERO: ViReport = ViReport {
        vi: 0.0,
        false_cut: 0.0,
        false_join: 0.0,
    };
}

fn plogp(p: f64) -> f64 {
    if p > 0.0 {
        -p * p.log2()
    } else {
        0.0
    }
}

fn check_mass(mass: &[f64], n: usize) -> Result<(), MetricError> {
    if mass.len() != n || mass.iter().any(|&p| !(p >= 0.0)) {
        return Err(MetricError::MassShape);
    }
    let total = neumaier_sum(mass.iter().copied());
    if n > 0 && (total - 1.0).abs() > 1e-12 {
        return Err(MetricError::MassShape);
    }
    Ok(())
}

fn neumaier_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for x in values {
        let t = sum + x;
        comp += if sum.abs() >= x.abs() {
            (sum - t) + x
        } else {
            (x - t) + sum
        };
        sum = t;
    }
    sum + comp
}

struct Masses {
    a: Vec<f64>,
    b: Vec<f64>,
    joint: FxHashMap<(u32, u32), f64>,
}

fn masses(a: &Partition, b: &Partition, mass: &[f64]) -> Masses {
    let mut ma = vec![0.0; a.block_count];
    let mut mb = vec![0.0; b.block_count];
    let mut joint = FxHashMap::default();
    for (v, &p) in mass.iter().enumerate() {
        let (la, lb) = (a.labels[v], b.labels[v]);
        ma[la as usize] += p;
        mb[lb as usize] += p;
        *joint.entry((la, lb)).or_insert(0.0) += p;
    }
    Masses {
        a: ma,
        b: mb,
        joint,
    }
}

/// `H(A)` with respect to `mass`.
pub fn entropy(a: &Partition, mass: &[f64]) -> f64 {
    let mut m = vec![0.0; a.block_count];
    for (v, &p) in mass.iter().enumerate() {
        m[a.labels[v] as usize] += p;
    }
    m.into_iter().map(plogp).sum()
}

/// `VI = 2H(A,B) − H(A) − H(B)`, with the two conditional entropies computed
/// directly as `−Σ p(A∩B) log₂(p(A∩B)/p(B))` and its mirror.
pub fn vi(a: &Partition, b: &Partition, mass: &[f64]) -> Result<ViReport, MetricError> {
    if a.len() != b.len() {
        return Err(MetricError::GroundSetMismatch);
    }
    check_mass(mass, a.len())?;
    let m = masses(a, b, mass);
    let h_a: f64 = m.a.iter().copied().map(plogp).sum();
    let h_b: f64 = m.b.iter().copied().map(plogp).sum();
    let h_ab: f64 = m.joint.values().copied().map(plogp).sum();
    let mut a_given_b = 0.0;
    let mut b_given_a = 0.0;
    for (&(la, lb), &p) in &m.joint {
        if p > 0.0 {
            a_given_b -= p * (p / m.b[lb as usize]).log2();
            b_given_a -= p * (p / m.a[la as usize]).log2();
        }
    }
    Ok(ViReport {
        vi: (2.0 * h_ab - h_a - h_b).max(0.0),
        false_cut: a_given_b.max(0.0),
        false_join: b_given_a.max(0.0),
    })
}

pub fn uniform_mass(n: usize) -> Vec<f64> {
    vec![1.0 / n as f64; n]
}

/// Half the mass spread evenly over `truth`, half over its complement.
pub fn balanced_mass(truth: &Separator) -> Result<Vec<f64>, MetricError> {
    let n = truth.node_count();
    let t = truth.len();
    if t == 0 || t == n {
        return Err(MetricError::DegenerateTruth);
    }
    let (inside, outside) = (0.5 / t as f64, 0.5 / (n - t) as f64);
    Ok(truth
        .mask()
        .iter()
        .map(|&b| if b { inside } else { outside })
        .collect())
}

/// VI between induced partitions over all nodes with class-balanced mass.
pub fn viws(
    graph: &Graph,
    predicted: &Separator,
    truth: &Separator,
) -> Result<ViReport, MetricError> {
    if predicted.node_count() != graph.node_count() || truth.node_count() != graph.node_count() {
        return Err(MetricError::GroundSetMismatch);
    }
    let mass = balanced_mass(truth)?;
    vi(
        &induced_partition(graph, predicted),
        &induced_partition(graph, truth),
        &mass,
    )
}

/// [`viws`] against one fixed truth, for scoring many predictions.
///
/// Separator nodes are singleton blocks, so every joint cell that holds one
/// is a single node and its terms are written out directly. Only cells
/// between two components go through a map.
#[derive(Clone, Debug)]
pub struct ViwsScorer<'g> {
    graph: &'g Graph,
    truth: Vec<u32>,
    mass: [f64; 2],
    truth_block_mass: Vec<f64>,
    h_truth: f64,
}

impl<'g> ViwsScorer<'g> {
    pub fn new(graph: &'g Graph, truth: &Separator) -> Result<Self, MetricError> {
        if truth.node_count() != graph.node_count() {
            return Err(MetricError::GroundSetMismatch);
        }
        let n = graph.node_count();
        let t = truth.len();
        if t == 0 || t == n {
            return Err(MetricError::DegenerateTruth);
        }
        // Index 0: outside the truth separator, 1: inside.
        let mass = [0.5 / (n - t) as f64, 0.5 / t as f64];
        let comps = components(graph, truth.mask());
        let mut truth_block_mass = vec![0.0; comps.count];
        for &l in &comps.labels {
            if l != NO_LABEL {
                truth_block_mass[l as usize] += mass[0];
            }
        }
        let h_truth =
            truth_block_mass.iter().copied().map(plogp).sum::<f64>() + t as f64 * plogp(mass[1]);
        Ok(ViwsScorer {
            graph,
            truth: comps.labels,
            mass,
            truth_block_mass,
            h_truth,
        })
    }

    pub fn score(&self, predicted: &Separator) -> Result<ViReport, MetricError> {
        if predicted.node_count() != self.graph.node_count() {
            return Err(MetricError::GroundSetMismatch);
        }
        let pred = components(self.graph, predicted.mask());
        let mut pred_mass = vec![0.0; pred.count];
        let mut joint: FxHashMap<(u32, u32), f64> = FxHashMap::default();
        for (v, (&la, &lb)) in pred.labels.iter().zip(&self.truth).enumerate() {
            let p = self.mass[usize::from(lb == NO_LABEL)];
            if la != NO_LABEL {
                pred_mass[la as usize] += p;
                if lb != NO_LABEL {
                    *joint.entry((la, lb)).or_insert(0.0) += p;
                }
            }
            debug_assert_eq!(la == NO_LABEL, predicted.contains(v));
        }
        let (mut h_pred, mut h_joint, mut a_given_b, mut b_given_a) = (0.0, 0.0, 0.0, 0.0);
        h_pred += pred_mass.iter().copied().map(plogp).sum::<f64>();
        for (&(la, lb), &p) in &joint {
            h_joint += plogp(p);
            a_given_b -= p * (p / self.truth_block_mass[lb as usize]).log2();
            b_given_a -= p * (p / pred_mass[la as usize]).log2();
        }
        for (&la, &lb) in pred.labels.iter().zip(&self.truth) {
            if la != NO_LABEL && lb != NO_LABEL {
                continue;
            }
            let p = self.mass[usize::from(lb == NO_LABEL)];
            h_joint += plogp(p);
            if la == NO_LABEL {
                h_pred += plogp(p);
                if lb != NO_LABEL {
                    a_given_b -= p * (p / self.truth_block_mass[lb as usize]).log2();
                }
            } else {
                b_given_a -= p * (p / pred_mass[la as usize]).log2();
            }
        }
        Ok(ViReport {
            vi: (2.0 * h_joint - h_pred - self.h_truth).max(0.0),
            false_cut: a_given_b.max(0.0),
            false_join: b_given_a.max(0.0),
        })
    }
}

/// VI with uniform mass over the nodes in neither separator. Zero when that
/// set is empty.
pub fn vins(
    graph: &Graph,
    predicted: &Separator,
    truth: &Separator,
) -> Result<ViReport, MetricError> {
    if predicted.node_count() != graph.node_count() || truth.node_count() != graph.node_count() {
        return Err(MetricError::GroundSetMismatch);
    }
    let rest: Vec<usize> = (0..graph.node_count())
        .filter(|&v| !predicted.contains(v) && !truth.contains(v))
        .collect();
    if rest.is_empty() {
        return Ok(ViReport::ZERO);
    }
    let a = induced_partition(graph, predicted).restrict(&rest);
    let b = induced_partition(graph, truth).restrict(&rest);
    vi(&a, &b, &uniform_mass(rest.len()))
}
