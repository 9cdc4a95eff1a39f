use std::fs;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use msep_core::oracle::{
    brute_force_consistency, brute_force_lmp, brute_force_msp, brute_force_mtvs, brute_force_qubo,
    brute_force_steiner,
};
use msep_core::reductions::{
    is_satisfiable, lmp_to_msp, msp_to_lmp, mtvs_to_msp, qubo_to_msp, sat3_to_consistency,
    steiner_to_msp,
};
use msep_core::{MspInstance, Separator};
use msep_volume::builder::LineOptions;
use msep_volume::watershed::{watershed_labels, WatershedParams};
use msep_volume::{BinaryVolume, GrayVolume, Volume, VolumeError};

use crate::error::{CliError, FormatError};
use crate::experiment::{self as ex, Algo, Kind};
use crate::formats;

#[derive(Debug, Parser)]
#[command(
    name = "msep",
    version,
    about = "Multi-separator solvers and the synthetic volume benchmark"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw a synthetic volume; writes <out>.truth.vol and <out>.gray.vol.
    Synth(SynthArgs),
    /// Turn a gray volume into a multi-separator instance.
    Build(BuildArgs),
    /// Solve an instance, or sweep the bias with --bias-grid.
    Solve(SolveArgs),
    /// Seeded watershed for one threshold pair, or a sweep over the grid.
    Watershed(WatershedArgs),
    /// Score a predicted separator against a truth volume.
    Evaluate(EvaluateArgs),
    /// Reduce a problem instance to or from the multi-separator problem.
    Reduce(ReduceArgs),
    /// Exhaustive optimum of a small instance.
    Oracle(OracleArgs),
    /// Time the pipeline across volume sizes.
    Bench(BenchArgs),
    /// Print every move of a local search run.
    Trace(TraceArgs),
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, default_value_t = 64)]
    m: usize,
    /// Noise level in [0, 1].
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    t: f64,
    #[arg(long)]
    seed: u64,
    /// Output path prefix.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    gray: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    bias: f64,
    /// Add the bias to node costs only.
    #[arg(long)]
    bias_nodes_only: bool,
    /// Leave the two end voxels out of every line.
    #[arg(long)]
    exclude_endpoints: bool,
    /// Rounded length of the long-range filament pairs.
    #[arg(long, default_value_t = 8)]
    long_range: u32,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum, default_value_t = Algo::Gss)]
    algo: Algo,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    bias: f64,
    #[arg(long)]
    bias_nodes_only: bool,
    /// Print the objective before and after every move, one per line.
    #[arg(long)]
    trace: bool,
    /// Where to write the separator.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Initial separator for gss instead of every node.
    #[arg(long)]
    init: Option<PathBuf>,
    /// Sweep the bias over `lo:hi:count` values instead of a single solve.
    #[arg(long, num_args = 0..=1, default_missing_value = "-0.25:0.25:51", allow_negative_numbers = true)]
    bias_grid: Option<String>,
    /// Truth volume; adds scores to the output.
    #[arg(long)]
    truth: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct WatershedArgs {
    #[arg(long)]
    gray: PathBuf,
    #[arg(long)]
    start: Option<f64>,
    #[arg(long)]
    end: Option<f64>,
    /// Where to write the separator of a single run.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Truth volume; required for sweeps.
    #[arg(long)]
    truth: Option<PathBuf>,
    /// Selects the threshold grid of a sweep.
    #[arg(long, value_enum)]
    kind: Option<Kind>,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// A separator file or a binary volume.
    #[arg(long)]
    pred: PathBuf,
    /// Binary truth volume.
    #[arg(long)]
    truth: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Source {
    /// Multi-separator instance, reduced to a lifted multicut instance.
    Msp,
    Lmp,
    Qubo,
    Steiner,
    Mtvs,
    /// DIMACS CNF with three literals per clause.
    #[value(name = "3sat")]
    Sat3,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    #[arg(long, value_enum)]
    from: Source,
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Where the 3sat reduction writes its partial assignment.
    #[arg(long)]
    assignment: Option<PathBuf>,
    /// Also solve source and target exhaustively and print both optima.
    #[arg(long)]
    brute: bool,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Decide consistency of this partial assignment as well.
    #[arg(long)]
    assignment: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, value_delimiter = ',', default_values_t = [20, 32, 48, 64])]
    m: Vec<usize>,
    #[arg(long, default_value_t = 0.5)]
    t: f64,
    /// Defaults to gsg for filaments and gss for cells.
    #[arg(long, value_enum)]
    algo: Option<Algo>,
    /// Defaults to the tuned bias for the noise level, else 0.
    #[arg(long, allow_negative_numbers = true)]
    bias: Option<f64>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Debug, Args)]
pub struct TraceArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum, default_value_t = Algo::Gss)]
    algo: Algo,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    bias: f64,
}

fn show(p: &Path) -> String {
    p.display().to_string()
}

fn read_text(p: &Path) -> Result<String, CliError> {
    fs::read_to_string(p).map_err(|e| CliError::io(&show(p), e))
}

fn write_file(p: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(p, bytes).map_err(|e| CliError::io(&show(p), e))
}

fn parsed<T>(p: &Path, r: Result<T, FormatError>) -> Result<T, CliError> {
    r.map_err(|e| CliError::format(&show(p), e))
}

fn read_volume(p: &Path) -> Result<Volume, CliError> {
    let f = fs::File::open(p).map_err(|e| CliError::io(&show(p), e))?;
    Volume::read(BufReader::new(f)).map_err(|e| match e {
        VolumeError::Io(error) => CliError::io(&show(p), error),
        other => CliError::format(&show(p), FormatError::whole(other.to_string())),
    })
}

fn write_volume(p: &Path, v: &Volume) -> Result<(), CliError> {
    let f = fs::File::create(p).map_err(|e| CliError::io(&show(p), e))?;
    v.write(std::io::BufWriter::new(f)).map_err(|e| match e {
        VolumeError::Io(error) => CliError::io(&show(p), error),
        other => CliError::precondition(other),
    })
}

fn read_gray(p: &Path) -> Result<GrayVolume, CliError> {
    match read_volume(p)? {
        Volume::Gray(g) => Ok(g),
        Volume::Binary(_) => Err(CliError::format(
            &show(p),
            FormatError::at(1, "expected a gray volume"),
        )),
    }
}

fn read_binary(p: &Path) -> Result<BinaryVolume, CliError> {
    match read_volume(p)? {
        Volume::Binary(b) => Ok(b),
        Volume::Gray(_) => Err(CliError::format(
            &show(p),
            FormatError::at(1, "expected a binary volume"),
        )),
    }
}

fn read_instance(p: &Path) -> Result<MspInstance, CliError> {
    parsed(p, formats::read_instance(&read_text(p)?))
}

fn read_separator(p: &Path) -> Result<Separator, CliError> {
    parsed(p, formats::read_separator(&read_text(p)?))
}

/// Truth separator that must cover the instance's nodes.
fn read_truth(p: &Path, nodes: usize) -> Result<Separator, CliError> {
    let t = read_binary(p)?.separator();
    if t.node_count() != nodes {
        return Err(CliError::precondition(format!(
            "truth volume has {} voxels, expected {nodes}",
            t.node_count()
        )));
    }
    Ok(t)
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::io("<stdout>", e))
}

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        emit($out, &format!("{}\n", format_args!($($arg)*)))
    };
}

pub fn execute(cmd: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Synth(a) => synth(a, out),
        Command::Build(a) => build(a, out),
        Command::Solve(a) => solve(a, out),
        Command::Watershed(a) => watershed(a, out),
        Command::Evaluate(a) => evaluate(a, out),
        Command::Reduce(a) => reduce(a, out),
        Command::Oracle(a) => oracle(a, out),
        Command::Bench(a) => bench(a, out),
        Command::Trace(a) => trace(a, out),
    }
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn synth(a: SynthArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let vol = ex::synthesize(a.kind, a.m, a.t, a.seed)?;
    let truth_path = with_suffix(&a.out, ".truth.vol");
    let gray_path = with_suffix(&a.out, ".gray.vol");
    write_volume(&truth_path, &Volume::Binary(vol.truth))?;
    write_volume(&gray_path, &Volume::Gray(vol.gray))?;
    say!(out, "truth={}", show(&truth_path))?;
    say!(out, "gray={}", show(&gray_path))
}

fn build(a: BuildArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let gray = read_gray(&a.gray)?;
    let opts = ex::BuildOptions {
        bias: a.bias,
        bias_nodes_only: a.bias_nodes_only,
        line: LineOptions {
            include_endpoints: !a.exclude_endpoints,
        },
        long_range: a.long_range,
    };
    let inst = ex::build(a.kind, &gray, &opts)?;
    write_file(&a.out, formats::write_instance(&inst).as_bytes())?;
    say!(
        out,
        "nodes={} edges={} interactions={}",
        inst.node_count(),
        inst.graph().edge_count(),
        inst.interactions().len()
    )
}

fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = || {
        CliError::usage(format!(
            "bias grid must look like lo:hi:count, got {spec:?}"
        ))
    };
    let f: Vec<&str> = spec.split(':').collect();
    if f.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = f[0].parse().map_err(|_| bad())?;
    let hi: f64 = f[1].parse().map_err(|_| bad())?;
    let count: usize = f[2].parse().map_err(|_| bad())?;
    if count == 0 || !lo.is_finite() || !hi.is_finite() || lo > hi {
        return Err(bad());
    }
    Ok(msep_volume::builder::linspace(lo, hi, count))
}

fn solve(a: SolveArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let inst = read_instance(&a.instance)?;
    let truth = a
        .truth
        .as_deref()
        .map(|p| read_truth(p, inst.node_count()))
        .transpose()?;
    if let Some(spec) = &a.bias_grid {
        if a.trace || a.out.is_some() || a.init.is_some() {
            return Err(CliError::usage(
                "--bias-grid cannot be combined with --trace, --out or --init",
            ));
        }
        let grid = parse_grid(spec)?;
        let pool = ex::sweep_pool()?;
        let shifted = ex::biased(&inst, a.bias, a.bias_nodes_only)?;
        let rows = ex::bias_sweep(
            &pool,
            &shifted,
            a.algo,
            &grid,
            a.bias_nodes_only,
            truth.as_ref(),
        )?;
        say!(out, "bias objective nodes_in_separator moves wall_ms viws")?;
        for r in &rows {
            let v = r.viws.map_or("-".to_string(), |v| format!("{:.6}", v.vi));
            say!(
                out,
                "{:.4} {} {} {} {:.3} {v}",
                r.bias,
                r.objective,
                r.separator_size,
                r.moves,
                r.wall.as_secs_f64() * 1e3
            )?;
        }
        if truth.is_some() {
            let best = ex::best_by(&rows, |r| r.viws.map_or(f64::INFINITY, |v| v.vi))
                .expect("grid is nonempty");
            say!(
                out,
                "best bias={:.4} viws={:.6}",
                best.bias,
                best.viws.expect("scored").vi
            )?;
        }
        return Ok(());
    }
    let inst = if a.bias != 0.0 {
        ex::biased(&inst, a.bias, a.bias_nodes_only)?
    } else {
        inst
    };
    let init = a.init.as_deref().map(read_separator).transpose()?;
    let s = ex::solve(&inst, a.algo, init.as_ref())?;
    if a.trace {
        for v in &s.trace {
            say!(out, "{v}")?;
        }
    }
    if let Some(p) = &a.out {
        write_file(p, formats::write_separator(&s.separator).as_bytes())?;
    }
    say!(out, "{}", ex::summary_line(&s))?;
    if let Some(t) = &truth {
        emit(
            out,
            &ex::evaluation_report(&ex::evaluate(inst.graph(), &s.separator, t)?),
        )?;
    }
    Ok(())
}

fn watershed(a: WatershedArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let gray = read_gray(&a.gray)?;
    let truth = a
        .truth
        .as_deref()
        .map(|p| read_truth(p, gray.values().len()))
        .transpose()?;
    match (a.start, a.end) {
        (Some(start), Some(end)) => {
            let params =
                WatershedParams::new(start, end).map_err(|e| CliError::usage(e.to_string()))?;
            let labels = watershed_labels(&gray, &params);
            let sep = Separator::from_mask(labels.iter().map(|&l| l == 0).collect());
            if let Some(p) = &a.out {
                write_file(p, formats::write_separator(&sep).as_bytes())?;
            }
            let regions = labels.iter().copied().max().unwrap_or(0);
            say!(out, "regions={regions} nodes_in_separator={}", sep.len())?;
            if let Some(t) = &truth {
                emit(
                    out,
                    &ex::evaluation_report(&ex::evaluate(&gray.grid().graph, &sep, t)?),
                )?;
            }
            Ok(())
        }
        (None, None) => {
            let (Some(truth), Some(kind)) = (truth, a.kind) else {
                return Err(CliError::usage(
                    "give --start and --end, or --truth and --kind for a sweep",
                ));
            };
            if a.out.is_some() {
                return Err(CliError::usage("--out applies to single runs only"));
            }
            let (starts, ends) = kind.threshold_grid();
            let rows = ex::watershed_sweep(&ex::sweep_pool()?, &gray, &truth, &starts, &ends)?;
            say!(out, "theta_start theta_end nodes_in_separator viws")?;
            for r in &rows {
                say!(
                    out,
                    "{:.3} {:.3} {} {:.6}",
                    r.theta_start,
                    r.theta_end,
                    r.separator_size,
                    r.viws.vi
                )?;
            }
            let best = ex::best_by(&rows, |r| r.viws.vi).expect("grid is nonempty");
            say!(
                out,
                "best theta_start={:.3} theta_end={:.3} viws={:.6}",
                best.theta_start,
                best.theta_end,
                best.viws.vi
            )
        }
        _ => Err(CliError::usage("--start and --end go together")),
    }
}

fn evaluate(a: EvaluateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let truth = read_binary(&a.truth)?;
    let head = {
        let mut buf = [0u8; 7];
        let f = fs::File::open(&a.pred).map_err(|e| CliError::io(&show(&a.pred), e))?;
        let n =
            std::io::Read::read(&mut &f, &mut buf).map_err(|e| CliError::io(&show(&a.pred), e))?;
        buf[..n].to_vec()
    };
    let pred = if head == b"MSEPVOL" {
        let p = read_binary(&a.pred)?;
        if p.dims() != truth.dims() {
            return Err(CliError::precondition(format!(
                "predicted volume is {:?}, truth is {:?}",
                p.dims(),
                truth.dims()
            )));
        }
        p.separator()
    } else {
        let s = read_separator(&a.pred)?;
        if s.node_count() != truth.labels().len() {
            return Err(CliError::precondition(format!(
                "separator covers {} nodes, truth volume has {}",
                s.node_count(),
                truth.labels().len()
            )));
        }
        s
    };
    let e = ex::evaluate(&truth.grid().graph, &pred, &truth.separator())?;
    emit(out, &ex::evaluation_report(&e))
}

fn print_sign_offset(out: &mut dyn Write, sign: f64, offset: f64) -> Result<(), CliError> {
    say!(out, "value_sign={sign} value_offset={offset}")
}

fn reduce(a: ReduceArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if a.assignment.is_some() != (a.from == Source::Sat3) {
        return Err(CliError::usage(
            "--assignment is required for 3sat and accepted only there",
        ));
    }
    let text = read_text(&a.input)?;
    let p = a.input.as_path();
    // Optimum of the source by its own oracle, and of the reduced instance.
    let (source_opt, target): (Option<f64>, Option<MspInstance>);
    let sign_offset: (f64, f64);
    match a.from {
        Source::Msp => {
            let inst = parsed(p, formats::read_instance(&text))?;
            let r = msp_to_lmp(&inst)?;
            write_file(&a.out, formats::write_lmp(&r.instance).as_bytes())?;
            print_sign_offset(out, r.value_sign, r.value_offset)?;
            if a.brute {
                let src = brute_force_msp(&inst)?.1;
                let tgt = brute_force_lmp(&r.instance)?;
                say!(
                    out,
                    "source_optimum={src} target_optimum={tgt} implied_source_optimum={}",
                    r.source_value(tgt)
                )?;
            }
            return Ok(());
        }
        Source::Sat3 => {
            let (_, formula) = parsed(p, formats::read_dimacs(&text))?;
            let g = sat3_to_consistency(&formula)?;
            write_file(&a.out, formats::write_instance(&g.instance).as_bytes())?;
            let ap = a.assignment.as_deref().expect("checked above");
            write_file(ap, formats::write_assignment(&g.assignment).as_bytes())?;
            say!(out, "source={} sink={}", g.source, g.sink)?;
            if a.brute {
                let consistent = brute_force_consistency(&g.instance, &g.assignment)?;
                say!(
                    out,
                    "satisfiable={} consistent={consistent}",
                    is_satisfiable(&formula)
                )?;
            }
            return Ok(());
        }
        Source::Lmp => {
            let lmp = parsed(p, formats::read_lmp(&text))?;
            let r = lmp_to_msp(&lmp)?;
            source_opt = a.brute.then(|| brute_force_lmp(&lmp)).transpose()?;
            sign_offset = (r.value_sign, r.value_offset);
            target = Some(r.instance);
        }
        Source::Qubo => {
            let q = parsed(p, formats::read_qubo(&text))?;
            let r = qubo_to_msp(&q)?;
            source_opt = a
                .brute
                .then(|| brute_force_qubo(&q).map(|(v, _)| v))
                .transpose()?;
            sign_offset = (r.value_sign, r.value_offset);
            target = Some(r.instance);
        }
        Source::Steiner | Source::Mtvs => {
            let tp = parsed(p, formats::read_terminal_problem(&text))?;
            let (r, opt) = if a.from == Source::Steiner {
                let r = steiner_to_msp(&tp.graph, &tp.terminals, &tp.weights)?;
                (
                    r,
                    a.brute
                        .then(|| brute_force_steiner(&tp.graph, &tp.terminals, &tp.weights)),
                )
            } else {
                let r = mtvs_to_msp(&tp.graph, &tp.terminals, &tp.weights)?;
                (
                    r,
                    a.brute
                        .then(|| brute_force_mtvs(&tp.graph, &tp.terminals, &tp.weights)),
                )
            };
            source_opt = opt.transpose()?;
            sign_offset = (r.value_sign, r.value_offset);
            target = Some(r.instance);
        }
    }
    let target = target.expect("set by every remaining source");
    write_file(&a.out, formats::write_instance(&target).as_bytes())?;
    print_sign_offset(out, sign_offset.0, sign_offset.1)?;
    if let Some(src) = source_opt {
        let tgt = brute_force_msp(&target)?.1;
        let implied = sign_offset.0 * (tgt - sign_offset.1);
        say!(
            out,
            "source_optimum={src} target_optimum={tgt} implied_source_optimum={implied}"
        )?;
    }
    Ok(())
}

fn oracle(a: OracleArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let inst = read_instance(&a.instance)?;
    let (s, value) = brute_force_msp(&inst)?;
    if let Some(p) = &a.out {
        write_file(p, formats::write_separator(&s).as_bytes())?;
    }
    say!(out, "objective={value} nodes_in_separator={}", s.len())?;
    if let Some(p) = &a.assignment {
        let x = parsed(p, formats::read_assignment(&read_text(p)?))?;
        say!(out, "consistent={}", brute_force_consistency(&inst, &x)?)?;
    }
    Ok(())
}

fn bench(a: BenchArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if a.m.is_empty() {
        return Err(CliError::usage("give at least one size with --m"));
    }
    let algo = a.algo.unwrap_or(a.kind.default_algo());
    let bias = a.bias.or(a.kind.tuned_bias(a.t)).unwrap_or(0.0);
    let rows = ex::bench(a.kind, &a.m, a.t, algo, bias, a.seed)?;
    say!(
        out,
        "m voxels synth_ms build_ms solve_ms moves nodes_in_separator ns_per_voxel"
    )?;
    for r in &rows {
        say!(
            out,
            "{} {} {:.1} {:.1} {:.1} {} {} {:.1}",
            r.m,
            r.voxels,
            r.synth.as_secs_f64() * 1e3,
            r.build.as_secs_f64() * 1e3,
            r.solve.as_secs_f64() * 1e3,
            r.moves,
            r.separator_size,
            r.ns_per_voxel()
        )?;
    }
    Ok(())
}

fn trace(a: TraceArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if !matches!(a.algo, Algo::Gss | Algo::Gsg) {
        return Err(CliError::usage("trace runs gss or gsg"));
    }
    let inst = read_instance(&a.instance)?;
    let inst = if a.bias != 0.0 {
        ex::biased(&inst, a.bias, false)?
    } else {
        inst
    };
    let s = ex::solve(&inst, a.algo, None)?;
    say!(out, "start objective={}", s.trace[0])?;
    let mut corrections = s.corrections.iter().peekable();
    for (k, m) in s.moves.iter().enumerate() {
        while let Some(c) = corrections.next_if(|c| c.after_moves == k) {
            say!(
                out,
                "correction node={} cached={} recomputed={} committed={}",
                c.node,
                c.cached,
                c.recomputed,
                c.committed
            )?;
        }
        say!(
            out,
            "move step={} node={} potential={} objective={}",
            k + 1,
            m.node,
            m.potential,
            s.trace[k + 1]
        )?;
    }
    for c in corrections {
        say!(
            out,
            "correction node={} cached={} recomputed={} committed={}",
            c.node,
            c.cached,
            c.recomputed,
            c.committed
        )?;
    }
    say!(out, "{}", ex::summary_line(&s))
}
