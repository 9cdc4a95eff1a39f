use std::collections::HashMap;
use std::fs;
use std::path::Path;
use std::process::Command;

use msep_cli::formats::{self, TerminalProblem};
use msep_cli::{run, CliError};
use msep_core::generate::{self, Costs};
use msep_core::{Graph, Label, MspInstance, PartialAssignment, Separator};
use msep_volume::{BinaryVolume, Volume};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

fn msep(args: &[&str]) -> Result<String, CliError> {
    let mut out = Vec::new();
    run(
        std::iter::once("msep").chain(args.iter().copied()),
        &mut out,
    )?;
    Ok(String::from_utf8(out).unwrap())
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn path_example() -> MspInstance {
    let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
    MspInstance::new(
        g,
        vec![6.0, 4.0, 3.0, 2.0],
        vec![(0, 1, 1.0), (1, 2, 1.0), (2, 3, 7.0), (0, 3, -8.0)],
    )
    .unwrap()
}

fn grid3x3() -> Graph {
    let mut edges = Vec::new();
    for v in 0..9 {
        if v % 3 < 2 {
            edges.push((v, v + 1));
        }
        if v < 6 {
            edges.push((v, v + 3));
        }
    }
    Graph::from_edges(9, edges).unwrap()
}

fn save_instance(dir: &TempDir, name: &str, inst: &MspInstance) -> String {
    let p = path(dir, name);
    fs::write(&p, formats::write_instance(inst)).unwrap();
    p
}

#[test]
fn synth_writes_two_volumes_deterministically() {
    let dir = TempDir::new().unwrap();
    let a = path(&dir, "a");
    let b = path(&dir, "b");
    for prefix in [&a, &b] {
        msep(&[
            "synth",
            "--kind",
            "filaments",
            "--m",
            "16",
            "--t",
            "0",
            "--seed",
            "1",
            "--out",
            prefix,
        ])
        .unwrap();
    }
    for suffix in [".truth.vol", ".gray.vol"] {
        let x = fs::read(format!("{a}{suffix}")).unwrap();
        assert!(x.starts_with(b"MSEPVOL "));
        assert_eq!(x, fs::read(format!("{b}{suffix}")).unwrap());
    }
    assert!(fs::read(format!("{a}.truth.vol"))
        .unwrap()
        .starts_with(b"MSEPVOL bin 16 16 16\n"));
    assert!(fs::read(format!("{a}.gray.vol"))
        .unwrap()
        .starts_with(b"MSEPVOL gray 16 16 16\n"));
}

#[test]
fn synth_rejects_noise_outside_the_unit_interval() {
    let dir = TempDir::new().unwrap();
    for t in ["1.5", "-0.1"] {
        let e = msep(&[
            "synth",
            "--kind",
            "cells",
            "--m",
            "8",
            "--t",
            t,
            "--seed",
            "1",
            "--out",
            &path(&dir, "x"),
        ])
        .unwrap_err();
        assert_eq!(e.exit_code(), 2, "{e}");
    }
    let e = msep(&[
        "synth",
        "--kind",
        "cells",
        "--m",
        "8",
        "--out",
        &path(&dir, "x"),
    ])
    .unwrap_err();
    assert_eq!(e.exit_code(), 2, "the seed is required");
}

#[test]
fn instance_files_round_trip_byte_for_byte() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for k in 0..50 {
        let n = rng.gen_range(1..12);
        let costs = if k % 2 == 0 {
            Costs::Uniform(10.0)
        } else {
            Costs::Integer(5)
        };
        let count = rng.gen_range(0..n * n);
        let inst = generate::instance(&mut rng, n, count, costs);
        let text = formats::write_instance(&inst);
        let back = formats::read_instance(&text).unwrap();
        assert_eq!(back, inst);
        assert_eq!(formats::write_instance(&back), text);
    }
    // Records in any edge order and orientation read the same.
    let shuffled = "MSEPINST 3 2 1\ne 2 1\ne 1 0\nn 2 3\nn 0 1\nn 1 2\ni 2 0 -1\n";
    let inst = formats::read_instance(shuffled).unwrap();
    assert_eq!(inst.node_costs(), &[1.0, 2.0, 3.0]);
    assert_eq!(
        formats::read_instance(&formats::write_instance(&inst)).unwrap(),
        inst
    );
}

#[test]
fn other_formats_round_trip_byte_for_byte() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..30 {
        let n = rng.gen_range(2..9);
        let lmp = generate::lmp_instance(&mut rng, n, 3, Costs::Uniform(4.0));
        let text = formats::write_lmp(&lmp);
        assert_eq!(formats::write_lmp(&formats::read_lmp(&text).unwrap()), text);

        let q = generate::qubo(&mut rng, n, Costs::Uniform(4.0));
        let text = formats::write_qubo(&q);
        assert_eq!(formats::read_qubo(&text).unwrap(), q);
        assert_eq!(
            formats::write_qubo(&formats::read_qubo(&text).unwrap()),
            text
        );

        let graph = generate::connected_graph(&mut rng, n, 0.3);
        let tp = TerminalProblem {
            weights: (0..n).map(|_| rng.gen_range(0.0..5.0)).collect(),
            terminals: vec![0, n - 1],
            graph,
        };
        let text = formats::write_terminal_problem(&tp);
        assert_eq!(formats::read_terminal_problem(&text).unwrap(), tp);
        assert_eq!(
            formats::write_terminal_problem(&formats::read_terminal_problem(&text).unwrap()),
            text
        );

        let s = Separator::from_mask((0..n).map(|_| rng.gen_bool(0.5)).collect());
        let text = formats::write_separator(&s);
        assert_eq!(formats::read_separator(&text).unwrap(), s);
        assert_eq!(
            formats::write_separator(&formats::read_separator(&text).unwrap()),
            text
        );

        let pick = |r: &mut ChaCha8Rng| [Label::Zero, Label::One, Label::Free][r.gen_range(0..3)];
        let x = PartialAssignment {
            nodes: (0..n).map(|_| pick(&mut rng)).collect(),
            interactions: (0..3).map(|_| pick(&mut rng)).collect(),
        };
        let text = formats::write_assignment(&x);
        assert_eq!(formats::read_assignment(&text).unwrap(), x);
        assert_eq!(
            formats::write_assignment(&formats::read_assignment(&text).unwrap()),
            text
        );
    }
}

#[test]
fn built_instances_round_trip() {
    let dir = TempDir::new().unwrap();
    let prefix = path(&dir, "v");
    msep(&[
        "synth",
        "--kind",
        "filaments",
        "--m",
        "12",
        "--t",
        "0.5",
        "--seed",
        "2",
        "--out",
        &prefix,
    ])
    .unwrap();
    let inst = path(&dir, "v.inst");
    let gray = format!("{prefix}.gray.vol");
    let report = msep(&[
        "build",
        "--kind",
        "filaments",
        "--gray",
        &gray,
        "--out",
        &inst,
        "--bias",
        "0.06",
    ])
    .unwrap();
    assert!(report.starts_with("nodes=1728 edges=4752 "), "{report}");
    let text = fs::read_to_string(&inst).unwrap();
    assert_eq!(
        formats::write_instance(&formats::read_instance(&text).unwrap()),
        text
    );
}

#[test]
fn solve_prints_the_trace_and_summary() {
    let dir = TempDir::new().unwrap();
    let inst = save_instance(&dir, "path.inst", &path_example());
    let sep = path(&dir, "path.sep");
    let out = msep(&[
        "solve",
        "--instance",
        &inst,
        "--algo",
        "gss",
        "--trace",
        "--out",
        &sep,
    ])
    .unwrap();
    let lines: Vec<&str> = out.lines().collect();
    // Shrinking from every node: a, b, c, d leave at -6, -5, -4, -1.
    assert_eq!(&lines[..5], &["16", "10", "5", "1", "0"]);
    assert!(
        lines[5].starts_with("objective=0 nodes_in_separator=0 moves=4 wall_ms="),
        "{}",
        lines[5]
    );
    assert_eq!(fs::read_to_string(&sep).unwrap(), "MSEPSEP 4 0\n");
    // The exhaustive optimum keeps b.
    let out = msep(&["oracle", "--instance", &inst, "--out", &sep]).unwrap();
    assert_eq!(out, "objective=-2 nodes_in_separator=1\n");
    assert_eq!(fs::read_to_string(&sep).unwrap(), "MSEPSEP 4 1\n1\n");
    // Starting from {b} nothing improves.
    let out = msep(&["solve", "--instance", &inst, "--init", &sep, "--trace"]).unwrap();
    assert!(
        out.starts_with("-2\nobjective=-2 nodes_in_separator=1 moves=0 "),
        "{out}"
    );
}

#[test]
fn dominant_rejects_other_costs() {
    let dir = TempDir::new().unwrap();
    let inst = save_instance(&dir, "path.inst", &path_example());
    let e = msep(&["solve", "--instance", &inst, "--algo", "dominant"]).unwrap_err();
    assert_eq!(e.exit_code(), 4, "{e}");
    let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
    let dom = MspInstance::new(g, vec![-1.0, 8.0, 2.0], vec![(0, 2, -4.0)]).unwrap();
    let inst = save_instance(&dir, "dom.inst", &dom);
    let out = msep(&["solve", "--instance", &inst, "--algo", "dominant"]).unwrap();
    // Removing node 0 cuts the interaction too: -1 - 4.
    assert!(
        out.starts_with("objective=-5 nodes_in_separator=1 moves=0 "),
        "{out}"
    );
}

#[test]
fn empty_interaction_set_keeps_the_negative_nodes() {
    let dir = TempDir::new().unwrap();
    let costs = vec![3.0, -1.0, 0.0, -2.5, 4.0, -0.5, 1.0, 0.0, -3.0];
    let inst = save_instance(
        &dir,
        "nof.inst",
        &MspInstance::new(grid3x3(), costs.clone(), vec![]).unwrap(),
    );
    let sep = path(&dir, "nof.sep");
    msep(&["solve", "--instance", &inst, "--out", &sep]).unwrap();
    let want = Separator::from_mask(costs.iter().map(|&c| c < 0.0).collect());
    assert_eq!(
        formats::read_separator(&fs::read_to_string(&sep).unwrap()).unwrap(),
        want
    );
}

#[test]
fn malformed_files_report_their_line() {
    let dir = TempDir::new().unwrap();
    let p = path(&dir, "bad.inst");
    fs::write(&p, "MSEPINST 2 1 1\ne 0 1\nn 0 1\nn 1 2\ni 0 7 1\n").unwrap();
    let e = msep(&["solve", "--instance", &p]).unwrap_err();
    assert_eq!(e.exit_code(), 3);
    assert!(e.to_string().contains("line 5"), "{e}");
    fs::write(&p, "MSEPINST 2 1 0\ne 0 1\nn 0 1\nn 1 nope\n").unwrap();
    let e = msep(&["oracle", "--instance", &p]).unwrap_err();
    assert_eq!(e.exit_code(), 3);
    assert!(e.to_string().contains("line 4"), "{e}");
    let e = msep(&["solve", "--instance", &path(&dir, "missing.inst")]).unwrap_err();
    assert_eq!(e.exit_code(), 1);
}

#[test]
fn trace_shows_the_cut_node_correction() {
    let dir = TempDir::new().unwrap();
    let inst = MspInstance::new(
        grid3x3(),
        vec![4.0, -2.0, 3.0, 1.0, 1.0, -4.0, -1.0, 5.0, -1.0],
        vec![
            (0, 2, 1.0),
            (0, 3, 1.0),
            (2, 3, 3.0),
            (4, 5, 1.0),
            (4, 7, -4.0),
            (7, 8, 2.0),
        ],
    )
    .unwrap();
    let p = save_instance(&dir, "grow.inst", &inst);
    let out = msep(&["trace", "--instance", &p, "--algo", "gsg"]).unwrap();
    let moves: Vec<&str> = out.lines().filter(|l| l.starts_with("move ")).collect();
    assert_eq!(moves.len(), 3);
    assert!(moves[0].starts_with("move step=1 node=5 "));
    assert!(moves[1].starts_with("move step=2 node=4 "));
    assert!(moves[2].starts_with("move step=3 node=6 "));
    assert!(
        out.contains("correction node=1 cached=-2 recomputed=2 committed=false"),
        "{out}"
    );
    assert!(out.lines().last().unwrap().contains("moves=3"));
}

/// Partition entropies with a plain nested-map count, independent of the
/// library's metric code.
fn slow_vi(graph: &Graph, pred: &Separator, truth: &Separator, mass: &[f64]) -> (f64, f64, f64) {
    let label = |s: &Separator| {
        let n = graph.node_count();
        let mut l = vec![usize::MAX; n];
        let mut next = 0;
        for v in 0..n {
            if l[v] != usize::MAX {
                continue;
            }
            l[v] = next;
            if !s.contains(v) {
                let mut stack = vec![v];
                while let Some(u) = stack.pop() {
                    for &w in graph.neighbors(u) {
                        let w = w as usize;
                        if !s.contains(w) && l[w] == usize::MAX {
                            l[w] = next;
                            stack.push(w);
                        }
                    }
                }
            }
            next += 1;
        }
        l
    };
    let (a, b) = (label(pred), label(truth));
    let total: f64 = mass.iter().sum();
    let mut joint: HashMap<(usize, usize), f64> = HashMap::new();
    let mut pa: HashMap<usize, f64> = HashMap::new();
    let mut pb: HashMap<usize, f64> = HashMap::new();
    for v in 0..mass.len() {
        *joint.entry((a[v], b[v])).or_default() += mass[v] / total;
        *pa.entry(a[v]).or_default() += mass[v] / total;
        *pb.entry(b[v]).or_default() += mass[v] / total;
    }
    fn h<K>(m: &HashMap<K, f64>) -> f64 {
        m.values()
            .filter(|&&p| p > 0.0)
            .map(|&p| -p * p.log2())
            .sum()
    }
    let (hj, ha, hb) = (h(&joint), h(&pa), h(&pb));
    (2.0 * hj - ha - hb, hj - hb, hj - ha)
}

fn numbers(line: &str) -> Vec<f64> {
    line.split_whitespace()
        .skip(1)
        .map(|kv| kv.split('=').nth(1).unwrap().parse().unwrap())
        .collect()
}

#[test]
fn evaluate_matches_a_slow_entropy_reference() {
    let dir = TempDir::new().unwrap();
    let dims = (6, 5, 4);
    let n = 120;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let truth =
        BinaryVolume::new(dims, (0..n).map(|_| u8::from(rng.gen_bool(0.4))).collect()).unwrap();
    let tp = path(&dir, "truth.vol");
    Volume::Binary(truth.clone())
        .write(fs::File::create(&tp).unwrap())
        .unwrap();
    let graph = truth.grid().graph;
    let ts = truth.separator();

    // Prediction equal to the truth, as a volume.
    let out = msep(&["evaluate", "--pred", &tp, "--truth", &tp]).unwrap();
    assert_eq!(
        out,
        "viws vi=0.000000 fc=0.000000 fj=0.000000\nvins vi=0.000000 fcns=0.000000 fjns=0.000000\n"
    );
    // Everything predicted as separator.
    let sp = path(&dir, "pred.sep");
    fs::write(&sp, formats::write_separator(&Separator::full(n))).unwrap();
    let out = msep(&["evaluate", "--pred", &sp, "--truth", &tp]).unwrap();
    let lines: Vec<&str> = out.lines().collect();
    assert!(numbers(lines[0])[0] > 0.0);
    assert_eq!(lines[1], "vins vi=0.000000 fcns=0.000000 fjns=0.000000");

    for _ in 0..20 {
        let pred = Separator::from_mask((0..n).map(|_| rng.gen_bool(0.3)).collect());
        fs::write(&sp, formats::write_separator(&pred)).unwrap();
        let out = msep(&["evaluate", "--pred", &sp, "--truth", &tp]).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        let k = ts.len() as f64;
        let balanced: Vec<f64> = (0..n)
            .map(|v| {
                if ts.contains(v) {
                    0.5 / k
                } else {
                    0.5 / (n as f64 - k)
                }
            })
            .collect();
        let (vi, fc, fj) = slow_vi(&graph, &pred, &ts, &balanced);
        let got = numbers(lines[0]);
        for (g, w) in got.iter().zip([vi, fc, fj]) {
            assert!((g - w).abs() <= 5e-7, "viws {got:?} vs {vi} {fc} {fj}");
        }
        // Uniform mass on the nodes in neither separator.
        let uniform: Vec<f64> = (0..n)
            .map(|v| {
                if pred.contains(v) || ts.contains(v) {
                    0.0
                } else {
                    1.0
                }
            })
            .collect();
        let got = numbers(lines[1]);
        if uniform.iter().all(|&m| m == 0.0) {
            continue;
        }
        let (vi, fc, fj) = slow_vi(&graph, &pred, &ts, &uniform);
        for (g, w) in got.iter().zip([vi, fc, fj]) {
            assert!((g - w).abs() <= 5e-7, "vins {got:?} vs {vi} {fc} {fj}");
        }
    }
}

#[test]
fn evaluate_rejects_mismatched_shapes() {
    let dir = TempDir::new().unwrap();
    let tp = path(&dir, "t.vol");
    Volume::Binary(BinaryVolume::new((2, 2, 1), vec![0, 1, 1, 0]).unwrap())
        .write(fs::File::create(&tp).unwrap())
        .unwrap();
    let sp = path(&dir, "p.sep");
    fs::write(&sp, formats::write_separator(&Separator::empty(5))).unwrap();
    assert_eq!(
        msep(&["evaluate", "--pred", &sp, "--truth", &tp])
            .unwrap_err()
            .exit_code(),
        4
    );
    fs::write(&sp, "MSEPVOL bin 2 2 1\n\x00\x00").unwrap();
    assert_eq!(
        msep(&["evaluate", "--pred", &sp, "--truth", &tp])
            .unwrap_err()
            .exit_code(),
        3
    );
}

fn value(out: &str, key: &str) -> f64 {
    out.split_whitespace()
        .find_map(|kv| kv.strip_prefix(&format!("{key}=")))
        .unwrap()
        .parse()
        .unwrap()
}

fn check_reduction(dir: &TempDir, from: &str, text: String) {
    let input = path(dir, &format!("{from}.in"));
    let output = path(dir, &format!("{from}.out"));
    fs::write(&input, text).unwrap();
    let out = msep(&[
        "reduce", "--from", from, "--input", &input, "--out", &output, "--brute",
    ])
    .unwrap();
    let (src, implied) = (
        value(&out, "source_optimum"),
        value(&out, "implied_source_optimum"),
    );
    assert!((src - implied).abs() <= 1e-9, "{from}: {out}");
    let written = fs::read_to_string(&output).unwrap();
    let again = if from == "msp" {
        formats::write_lmp(&formats::read_lmp(&written).unwrap())
    } else {
        formats::write_instance(&formats::read_instance(&written).unwrap())
    };
    assert_eq!(again, written);
}

#[test]
fn reductions_preserve_optimal_values() {
    let dir = TempDir::new().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..8 {
        let n = rng.gen_range(2..6);
        let msp = generate::instance(&mut rng, n, 3, Costs::Integer(4));
        // The lifted instance has two nodes per node plus one per edge.
        if 2 * n + msp.graph().edge_count() <= 12 {
            check_reduction(&dir, "msp", formats::write_instance(&msp));
        }
        check_reduction(
            &dir,
            "lmp",
            formats::write_lmp(&generate::lmp_instance(&mut rng, n, 2, Costs::Uniform(3.0))),
        );
        check_reduction(
            &dir,
            "qubo",
            formats::write_qubo(&generate::qubo(&mut rng, n, Costs::Uniform(3.0))),
        );
        let graph = generate::connected_graph(&mut rng, n + 1, 0.2);
        let weights: Vec<f64> = (0..=n).map(|_| rng.gen_range(0.0..4.0)).collect();
        let steiner = TerminalProblem {
            graph: graph.clone(),
            weights: weights.clone(),
            terminals: vec![0, n],
        };
        check_reduction(&dir, "steiner", formats::write_terminal_problem(&steiner));
        // Terminals must not be adjacent for the separator problem.
        let far: Vec<usize> = (1..=n).filter(|&v| !graph.has_edge(0, v)).take(1).collect();
        if let Some(&t) = far.first() {
            let mtvs = TerminalProblem {
                graph,
                weights,
                terminals: vec![0, t],
            };
            check_reduction(&dir, "mtvs", formats::write_terminal_problem(&mtvs));
        }
    }
}

#[test]
fn sat_reduction_writes_the_gadget() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n", true),
        // Every sign pattern over two variables, padded to three literals.
        (
            "p cnf 2 4\n1 2 2 0\n1 -2 -2 0\n-1 2 2 0\n-1 -2 -2 0\n",
            false,
        ),
    ];
    for (k, (cnf, sat)) in cases.iter().enumerate() {
        let input = path(&dir, &format!("f{k}.cnf"));
        let (inst, part) = (
            path(&dir, &format!("f{k}.inst")),
            path(&dir, &format!("f{k}.part")),
        );
        fs::write(&input, cnf).unwrap();
        let out = msep(&[
            "reduce",
            "--from",
            "3sat",
            "--input",
            &input,
            "--out",
            &inst,
            "--assignment",
            &part,
            "--brute",
        ])
        .unwrap();
        assert!(
            out.contains(&format!("satisfiable={sat} consistent={sat}")),
            "{out}"
        );
        let check = msep(&["oracle", "--instance", &inst, "--assignment", &part]).unwrap();
        assert!(check.contains(&format!("consistent={sat}")));
    }
    let input = path(&dir, "f0.cnf");
    let e = msep(&[
        "reduce",
        "--from",
        "3sat",
        "--input",
        &input,
        "--out",
        &path(&dir, "x"),
    ])
    .unwrap_err();
    assert_eq!(e.exit_code(), 2);
}

#[test]
fn watershed_single_run_and_sweep() {
    let dir = TempDir::new().unwrap();
    let prefix = path(&dir, "c");
    msep(&[
        "synth", "--kind", "cells", "--m", "14", "--t", "0.25", "--seed", "3", "--out", &prefix,
    ])
    .unwrap();
    let (gray, truth) = (format!("{prefix}.gray.vol"), format!("{prefix}.truth.vol"));
    let sep = path(&dir, "ws.sep");
    let out = msep(&[
        "watershed",
        "--gray",
        &gray,
        "--start",
        "0.3",
        "--end",
        "0.5",
        "--out",
        &sep,
    ])
    .unwrap();
    let s = formats::read_separator(&fs::read_to_string(&sep).unwrap()).unwrap();
    assert_eq!(value(&out, "nodes_in_separator") as usize, s.len());
    let out = msep(&[
        "watershed",
        "--gray",
        &gray,
        "--truth",
        &truth,
        "--kind",
        "cells",
    ])
    .unwrap();
    let lines: Vec<&str> = out.lines().collect();
    // Start thresholds above the end threshold are skipped.
    let valid: usize = (0..51)
        .map(|i| {
            (0..21)
                .filter(|&j| 0.01 * i as f64 <= 0.4 + 0.01 * j as f64 + 1e-12)
                .count()
        })
        .sum();
    assert_eq!(lines.len(), valid + 2);
    let best = value(lines.last().unwrap(), "viws");
    let min = lines[1..lines.len() - 1]
        .iter()
        .map(|l| l.split_whitespace().nth(3).unwrap().parse::<f64>().unwrap())
        .fold(f64::INFINITY, f64::min);
    assert_eq!(format!("{best:.6}"), format!("{min:.6}"));
    let e = msep(&["watershed", "--gray", &gray, "--start", "0.3"]).unwrap_err();
    assert_eq!(e.exit_code(), 2);
    let e = msep(&[
        "watershed",
        "--gray",
        &gray,
        "--start",
        "0.6",
        "--end",
        "0.5",
    ])
    .unwrap_err();
    assert_eq!(e.exit_code(), 2);
}

#[test]
fn bias_grid_runs_every_value() {
    let dir = TempDir::new().unwrap();
    let prefix = path(&dir, "c");
    msep(&[
        "synth",
        "--kind",
        "filaments",
        "--m",
        "12",
        "--t",
        "0",
        "--seed",
        "1",
        "--out",
        &prefix,
    ])
    .unwrap();
    let inst = path(&dir, "c.inst");
    msep(&[
        "build",
        "--kind",
        "filaments",
        "--gray",
        &format!("{prefix}.gray.vol"),
        "--out",
        &inst,
    ])
    .unwrap();
    let truth = format!("{prefix}.truth.vol");
    let out = msep(&[
        "solve",
        "--instance",
        &inst,
        "--bias-grid=-0.1:0.1:5",
        "--truth",
        &truth,
    ])
    .unwrap();
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[1].split_whitespace().next(), Some("-0.1000"));
    assert!(lines[6].starts_with("best bias="));
    // Each row is the single solve at that bias.
    let single = msep(&["solve", "--instance", &inst, "--bias", "0.05"]).unwrap();
    let row: Vec<&str> = lines[4].split_whitespace().collect();
    assert_eq!(row[0], "0.0500");
    assert_eq!(value(&single, "objective").to_string(), row[1]);
    assert_eq!(value(&single, "nodes_in_separator").to_string(), row[2]);
    let out = msep(&["solve", "--instance", &inst, "--bias-grid"]).unwrap();
    assert_eq!(out.lines().count(), 52);
}

#[test]
fn bench_reports_runtime_per_voxel() {
    let out = msep(&["bench", "--kind", "cells", "--m", "8,12", "--seed", "2"]).unwrap();
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines[0],
        "m voxels synth_ms build_ms solve_ms moves nodes_in_separator ns_per_voxel"
    );
    assert_eq!(lines.len(), 3);
    for (line, m) in lines[1..].iter().zip([8usize, 12]) {
        let f: Vec<f64> = line
            .split_whitespace()
            .map(|x| x.parse().unwrap())
            .collect();
        assert_eq!(f[0] as usize, m);
        assert_eq!(f[1] as usize, m * m * m);
        // Both columns are rounded to 0.1 in their own unit.
        let want = f[4] * 1e6 / f[1];
        assert!((f[7] - want).abs() <= 0.05 + 0.05e6 / f[1], "{line}");
    }
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_msep"))
}

#[test]
fn binary_exit_codes() {
    let dir = TempDir::new().unwrap();
    let status = |c: &mut Command| c.output().unwrap().status.code();
    assert_eq!(status(binary().arg("frobnicate")), Some(2));
    assert_eq!(status(binary().args(["--help"])), Some(0));
    let inst = save_instance(&dir, "path.inst", &path_example());
    assert_eq!(
        status(binary().args(["solve", "--instance", &inst])),
        Some(0)
    );
    assert_eq!(
        status(binary().args(["solve", "--instance", &inst, "--algo", "dominant"])),
        Some(4)
    );
    let bad = path(&dir, "bad.inst");
    fs::write(&bad, "MSEPINST 1 0 0\nx\n").unwrap();
    let out = binary()
        .args(["solve", "--instance", &bad])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(
        status(
            binary()
                .args(["solve", "--instance", &inst, "--bias-grid"])
                .env("MSEP_THREADS", "0")
        ),
        Some(2)
    );
    let out = binary()
        .args(["solve", "--instance", &inst, "--bias-grid=0:0:1"])
        .env("MSEP_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(Path::new(&inst).exists());
}
