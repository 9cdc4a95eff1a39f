//! The synthetic benchmark pipeline: volumes, instances, solver runs,
//! parameter sweeps and scores.

use std::time::{Duration, Instant};

use clap::ValueEnum;
use msep_core::dominant::solve_dominant;
use msep_core::local_search::{gsg_with, gss_with, Correction, Move, SearchOptions};
use msep_core::metrics::{vins, viws, ViReport, ViwsScorer};
use msep_core::oracle::brute_force_msp;
use msep_core::{objective, Graph, MspInstance, Separator};
use msep_volume::builder::{
    apply_bias, build_cell_instance, build_filament_instance, linspace, LineOptions, OffsetSet,
};
use msep_volume::synth::{
    gray_from_distance, synth_cells, synth_filaments, CellParams, FilamentParams, NoiseParams,
};
use msep_volume::watershed::{Flooder, WatershedParams};
use msep_volume::{BinaryVolume, GrayVolume};
use rayon::prelude::*;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Filaments,
    Cells,
}

impl Kind {
    /// The solver used for this kind of volume: growing for thin filaments in
    /// a large void, shrinking for cells behind thin membranes.
    pub fn default_algo(self) -> Algo {
        match self {
            Kind::Filaments => Algo::Gsg,
            Kind::Cells => Algo::Gss,
        }
    }

    /// Bias minimizing the average viws at the noise levels where it was
    /// tuned.
    pub fn tuned_bias(self, t: f64) -> Option<f64> {
        let table: [(f64, f64); 3] = match self {
            Kind::Filaments => [(0.0, 0.06), (0.25, 0.09), (0.5, 0.08)],
            Kind::Cells => [(0.0, -0.10), (0.25, -0.08), (0.5, -0.03)],
        };
        table
            .iter()
            .find(|(at, _)| (at - t).abs() < 1e-12)
            .map(|&(_, b)| b)
    }

    /// Watershed start and end thresholds searched for this kind.
    pub fn threshold_grid(self) -> (Vec<f64>, Vec<f64>) {
        match self {
            Kind::Filaments => (linspace(0.45, 0.65, 41), linspace(0.5, 0.7, 41)),
            Kind::Cells => (linspace(0.0, 0.5, 51), linspace(0.4, 0.6, 21)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    /// Greedy separator shrinking, starting from every node.
    Gss,
    /// Greedy separator growing, starting from no node.
    Gsg,
    /// Exact solver for absolute dominant costs.
    Dominant,
    /// Exhaustive search over all separators.
    Brute,
}

pub fn default_bias_grid() -> Vec<f64> {
    linspace(-0.25, 0.25, 51)
}

/// A truth volume with the gray image drawn from it.
#[derive(Clone, Debug)]
pub struct Synthesized {
    pub truth: BinaryVolume,
    pub gray: GrayVolume,
}

pub fn synthesize(kind: Kind, m: usize, t: f64, seed: u64) -> Result<Synthesized, CliError> {
    if !(0.0..=1.0).contains(&t) {
        return Err(CliError::usage(format!(
            "noise level t = {t} must lie in [0, 1]"
        )));
    }
    if m == 0 {
        return Err(CliError::usage("m must be positive"));
    }
    let (truth, distance, noise) = match kind {
        Kind::Filaments => {
            let f = synth_filaments(&FilamentParams::new(m), seed)?;
            (f.truth, f.distance, NoiseParams::filaments(t))
        }
        Kind::Cells => {
            let c = synth_cells(&CellParams::new(m), seed)?;
            (c.truth, c.distance, NoiseParams::cells(t))
        }
    };
    let gray = gray_from_distance(&distance, &noise, seed)?;
    Ok(Synthesized { truth, gray })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BuildOptions {
    pub bias: f64,
    pub bias_nodes_only: bool,
    pub line: LineOptions,
    /// Rounded length of the long-range filament pairs.
    pub long_range: u32,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            bias: 0.0,
            bias_nodes_only: false,
            line: LineOptions::default(),
            long_range: 8,
        }
    }
}

pub fn build(kind: Kind, gray: &GrayVolume, opts: &BuildOptions) -> Result<MspInstance, CliError> {
    let inst = match kind {
        Kind::Filaments => build_filament_instance(gray, opts.long_range, opts.line)?,
        Kind::Cells => build_cell_instance(gray, &OffsetSet::cells(), opts.line)?,
    };
    if opts.bias == 0.0 {
        return Ok(inst);
    }
    Ok(apply_bias(&inst, opts.bias, opts.bias_nodes_only)?)
}

pub fn biased(inst: &MspInstance, bias: f64, nodes_only: bool) -> Result<MspInstance, CliError> {
    Ok(apply_bias(inst, bias, nodes_only)?)
}

#[derive(Clone, Debug)]
pub struct Solved {
    pub separator: Separator,
    pub objective: f64,
    /// Objective before the first move and after each move; just the final
    /// value for the exact solvers.
    pub trace: Vec<f64>,
    pub moves: Vec<Move>,
    pub corrections: Vec<Correction>,
    pub wall: Duration,
}

pub fn solve(inst: &MspInstance, algo: Algo, init: Option<&Separator>) -> Result<Solved, CliError> {
    if init.is_some() && algo != Algo::Gss {
        return Err(CliError::usage(
            "an initial separator is only accepted by gss",
        ));
    }
    if let Some(s) = init {
        if s.node_count() != inst.node_count() {
            return Err(CliError::precondition(format!(
                "initial separator has {} nodes, the instance {}",
                s.node_count(),
                inst.node_count()
            )));
        }
    }
    let start = Instant::now();
    let solved = match algo {
        Algo::Gss | Algo::Gsg => {
            let opts = SearchOptions::default();
            let run = if algo == Algo::Gss {
                gss_with(inst, init, &opts)
            } else {
                gsg_with(inst, &opts)
            };
            Solved {
                objective: run.objective(),
                separator: run.separator,
                trace: run.trace,
                moves: run.moves,
                corrections: run.corrections,
                wall: start.elapsed(),
            }
        }
        Algo::Dominant | Algo::Brute => {
            let (separator, value) = if algo == Algo::Dominant {
                let s = solve_dominant(inst)?;
                let v = objective(inst, &s).expect("separator matches the instance");
                (s, v)
            } else {
                brute_force_msp(inst)?
            };
            Solved {
                separator,
                objective: value,
                trace: vec![value],
                moves: Vec::new(),
                corrections: Vec::new(),
                wall: start.elapsed(),
            }
        }
    };
    Ok(solved)
}

pub fn summary_line(s: &Solved) -> String {
    format!(
        "objective={} nodes_in_separator={} moves={} wall_ms={:.3}",
        s.objective,
        s.separator.len(),
        s.moves.len(),
        s.wall.as_secs_f64() * 1e3
    )
}

/// Both scores of a predicted separator against the truth.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation {
    pub viws: ViReport,
    pub vins: ViReport,
}

pub fn evaluate(
    graph: &Graph,
    predicted: &Separator,
    truth: &Separator,
) -> Result<Evaluation, CliError> {
    Ok(Evaluation {
        viws: viws(graph, predicted, truth)?,
        vins: vins(graph, predicted, truth)?,
    })
}

pub fn evaluation_report(e: &Evaluation) -> String {
    format!(
        "viws vi={:.6} fc={:.6} fj={:.6}\nvins vi={:.6} fcns={:.6} fjns={:.6}\n",
        e.viws.vi,
        e.viws.false_cut,
        e.viws.false_join,
        e.vins.vi,
        e.vins.false_cut,
        e.vins.false_join
    )
}

/// Rayon pool for sweeps, capped by `MSEP_THREADS` when it is set. Each run
/// inside a sweep stays single-threaded.
pub fn sweep_pool() -> Result<rayon::ThreadPool, CliError> {
    let threads = match std::env::var("MSEP_THREADS") {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(k) if k > 0 => k,
            _ => {
                return Err(CliError::usage(format!(
                    "MSEP_THREADS must be a positive integer, got {s:?}"
                )))
            }
        },
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::precondition(format!("cannot start the sweep thread pool: {e}")))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThresholdScore {
    pub theta_start: f64,
    pub theta_end: f64,
    pub separator_size: usize,
    pub viws: ViReport,
}

/// Scores every valid pair of the kind's threshold grid, in grid order
/// (start thresholds outer). Pairs with start above end are skipped.
pub fn watershed_sweep(
    pool: &rayon::ThreadPool,
    gray: &GrayVolume,
    truth: &Separator,
    starts: &[f64],
    ends: &[f64],
) -> Result<Vec<ThresholdScore>, CliError> {
    let grid = gray.grid();
    let scorer = ViwsScorer::new(&grid.graph, truth)?;
    let flooder = Flooder::new(gray);
    let pairs: Vec<(f64, f64)> = starts
        .iter()
        .flat_map(|&s| ends.iter().filter(move |&&e| s <= e).map(move |&e| (s, e)))
        .collect();
    pool.install(|| {
        pairs
            .par_iter()
            .map(|&(s, e)| {
                let params = WatershedParams::new(s, e)?;
                let sep = flooder.separator(&params);
                Ok(ThresholdScore {
                    theta_start: s,
                    theta_end: e,
                    separator_size: sep.len(),
                    viws: scorer.score(&sep)?,
                })
            })
            .collect()
    })
}

/// The first row with the smallest value.
pub fn best_by<T>(rows: &[T], value: impl Fn(&T) -> f64) -> Option<&T> {
    rows.iter().fold(None, |best: Option<&T>, r| match best {
        Some(b) if value(b) <= value(r) => Some(b),
        _ => Some(r),
    })
}

#[derive(Clone, Debug)]
pub struct BiasRun {
    pub bias: f64,
    pub objective: f64,
    pub separator_size: usize,
    pub moves: usize,
    pub wall: Duration,
    pub viws: Option<ViReport>,
}

/// One local search per bias value, in parallel across values.
pub fn bias_sweep(
    pool: &rayon::ThreadPool,
    inst: &MspInstance,
    algo: Algo,
    biases: &[f64],
    nodes_only: bool,
    truth: Option<&Separator>,
) -> Result<Vec<BiasRun>, CliError> {
    if !matches!(algo, Algo::Gss | Algo::Gsg) {
        return Err(CliError::usage("bias sweeps run gss or gsg"));
    }
    let scorer = truth
        .map(|t| ViwsScorer::new(inst.graph(), t))
        .transpose()?;
    pool.install(|| {
        biases
            .par_iter()
            .map(|&b| {
                let shifted = biased(inst, b, nodes_only)?;
                let s = solve(&shifted, algo, None)?;
                let viws = scorer
                    .as_ref()
                    .map(|sc| sc.score(&s.separator))
                    .transpose()?;
                Ok(BiasRun {
                    bias: b,
                    objective: s.objective,
                    separator_size: s.separator.len(),
                    moves: s.moves.len(),
                    wall: s.wall,
                    viws,
                })
            })
            .collect()
    })
}

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub m: usize,
    pub voxels: usize,
    pub synth: Duration,
    pub build: Duration,
    pub solve: Duration,
    pub moves: usize,
    pub separator_size: usize,
}

impl BenchRow {
    /// Solver wall time divided by the voxel count.
    pub fn ns_per_voxel(&self) -> f64 {
        self.solve.as_nanos() as f64 / self.voxels as f64
    }
}

/// Synthesizes, builds and solves one volume per size, sequentially so the
/// timings do not compete for cores.
pub fn bench(
    kind: Kind,
    sizes: &[usize],
    t: f64,
    algo: Algo,
    bias: f64,
    seed: u64,
) -> Result<Vec<BenchRow>, CliError> {
    let mut rows = Vec::with_capacity(sizes.len());
    for &m in sizes {
        let clock = Instant::now();
        let vol = synthesize(kind, m, t, seed)?;
        let synth = clock.elapsed();
        let clock = Instant::now();
        let inst = build(
            kind,
            &vol.gray,
            &BuildOptions {
                bias,
                ..Default::default()
            },
        )?;
        let build_time = clock.elapsed();
        let s = solve(&inst, algo, None)?;
        rows.push(BenchRow {
            m,
            voxels: m * m * m,
            synth,
            build: build_time,
            solve: s.wall,
            moves: s.moves.len(),
            separator_size: s.separator.len(),
        });
    }
    Ok(rows)
}
