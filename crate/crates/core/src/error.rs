use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("grid dimensions must all be at least 1")]
    ZeroDimension,
    #[error("graph with {0} nodes exceeds the supported size")]
    TooManyNodes(usize),
    #[error("node {node} out of range for a graph with {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MspError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("expected {expected} node costs, got {got}")]
    NodeCostCount { expected: usize, got: usize },
    #[error("expected {expected} interaction costs, got {got}")]
    InteractionCostCount { expected: usize, got: usize },
    #[error("interaction endpoint {node} out of range")]
    InteractionOutOfRange { node: usize },
    #[error("interaction {{{0}, {0}}} joins a node to itself")]
    InteractionSelfPair(usize),
    #[error("duplicate interaction {{{0}, {1}}}")]
    DuplicateInteraction(usize, usize),
    #[error("non-finite cost {0}")]
    NonFiniteCost(f64),
    #[error("partial assignment does not match the instance shape")]
    AssignmentShape,
    #[error("separator size {got} does not match node count {expected}")]
    SeparatorShape { expected: usize, got: usize },
    #[error("lifted pair {{{0}, {1}}} is an edge of the base graph")]
    LiftedIsEdge(usize, usize),
    #[error("expected {expected} edge costs, got {got}")]
    EdgeCostCount { expected: usize, got: usize },
    #[error("decider precondition violated: {0}")]
    Precondition(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance has {size} elements, exhaustive search is limited to {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("partial assignment does not match the instance shape")]
    AssignmentShape,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DominantError {
    #[error("costs are not absolute dominant")]
    NotDominant,
    #[error("costs contain tied magnitude {0}; a strict order is required")]
    TiedMagnitudes(f64),
    #[error("interaction signs fit neither tractable regime")]
    MixedRegime,
    #[error("preference order has {0} variables, exact representation allows at most 52")]
    TooManyVariables(usize),
    #[error("preference order is not a permutation of the variables")]
    NotAPermutation,
    #[error(transparent)]
    Msp(#[from] MspError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReductionError {
    #[error("graph must be connected")]
    Disconnected,
    #[error("graph must have at least two nodes")]
    TooFewNodes,
    #[error("negative node weight {0}")]
    NegativeWeight(f64),
    #[error("terminal set is empty")]
    NoTerminals,
    #[error("terminals {0} and {1} are adjacent")]
    AdjacentTerminals(usize, usize),
    #[error("terminal {0} out of range")]
    TerminalOutOfRange(usize),
    #[error("weight vector has wrong length")]
    WeightShape,
    #[error("clause {0} does not have exactly three literals")]
    MalformedClause(usize),
    #[error("formula has no clauses")]
    EmptyFormula,
    #[error("reduced costs would exceed exact double precision")]
    Overflow,
    #[error(transparent)]
    Msp(#[from] MspError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("partitions cover different ground sets")]
    GroundSetMismatch,
    #[error("blocks are not a partition of the ground set")]
    NotAPartition,
    #[error("mass vector has wrong length")]
    MassShape,
    #[error("truth separator is empty or covers every node; class-balanced mass is undefined, use uniform mass")]
    DegenerateTruth,
}
