use msep_core::graph::Grid3;
use msep_core::metrics::induced_partition;
use msep_volume::watershed::{watershed, watershed_labels, WatershedParams};
use msep_volume::GrayVolume;
use proptest::prelude::*;

/// Flooding by rescanning: each step picks the darkest (then lowest id)
/// unfinished voxel below `theta_end` that touches a region.
fn slow_flood(grid: &Grid3, g: &[f64], ts: f64, te: f64) -> Vec<u32> {
    let n = g.len();
    let mut labels = vec![0u32; n];
    let mut next = 0;
    for s in 0..n {
        if labels[s] != 0 || g[s] >= ts {
            continue;
        }
        next += 1;
        let mut frontier = vec![s];
        labels[s] = next;
        while let Some(v) = frontier.pop() {
            for &w in grid.graph.neighbors(v) {
                if labels[w as usize] == 0 && g[w as usize] < ts {
                    labels[w as usize] = next;
                    frontier.push(w as usize);
                }
            }
        }
    }
    let mut done = vec![false; n];
    loop {
        let pick = (0..n)
            .filter(|&v| labels[v] == 0 && !done[v] && g[v] < te)
            .filter(|&v| {
                grid.graph
                    .neighbors(v)
                    .iter()
                    .any(|&w| labels[w as usize] != 0)
            })
            .min_by(|&a, &b| g[a].total_cmp(&g[b]).then(a.cmp(&b)));
        let Some(v) = pick else { break };
        done[v] = true;
        let mut around: Vec<u32> = grid
            .graph
            .neighbors(v)
            .iter()
            .map(|&w| labels[w as usize])
            .filter(|&l| l != 0)
            .collect();
        around.sort_unstable();
        around.dedup();
        if around.len() == 1 {
            labels[v] = around[0];
        }
    }
    labels
}

fn gray(dims: (usize, usize, usize), values: Vec<f64>) -> GrayVolume {
    GrayVolume::new(dims, values).unwrap()
}

fn volume() -> impl Strategy<Value = GrayVolume> {
    (1usize..6, 1usize..6, 1usize..5).prop_flat_map(|(x, y, z)| {
        // Coarse levels make ties common.
        prop::collection::vec(0u8..10, x * y * z)
            .prop_map(move |v| gray((x, y, z), v.iter().map(|&k| k as f64 / 9.0).collect()))
    })
}

fn thresholds() -> impl Strategy<Value = (f64, f64)> {
    (0.0f64..=1.0, 0.0f64..=1.0).prop_map(|(a, b)| (a.min(b), a.max(b)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn matches_rescanning_flood(g in volume(), (ts, te) in thresholds()) {
        let p = WatershedParams::new(ts, te).unwrap();
        prop_assert_eq!(watershed_labels(&g, &p), slow_flood(&g.grid(), g.values(), ts, te));
    }

    #[test]
    fn regions_are_connected_and_apart(g in volume(), (ts, te) in thresholds()) {
        let p = WatershedParams::new(ts, te).unwrap();
        let labels = watershed_labels(&g, &p);
        let grid = g.grid();
        for (u, w) in grid.graph.edges() {
            prop_assert!(labels[u] == 0 || labels[w] == 0 || labels[u] == labels[w]);
        }
        let regions = labels.iter().copied().max().unwrap_or(0) as usize;
        let separator = labels.iter().filter(|&&l| l == 0).count();
        prop_assert_eq!(induced_partition(&grid.graph, &watershed(&g, &p)).block_count(), regions + separator);
    }

    #[test]
    fn raising_the_end_threshold_never_shrinks_regions(g in volume(), (ts, te) in thresholds(), up in 0.0f64..1.0) {
        let lo = WatershedParams::new(ts, te).unwrap();
        let hi = WatershedParams::new(ts, (te + up).min(1.0)).unwrap();
        prop_assert!(watershed(&g, &hi).len() <= watershed(&g, &lo).len());
    }
}

#[test]
fn everything_is_separator_without_seeds() {
    let g = gray((3, 3, 3), (0..27).map(|i| i as f64 / 26.0).collect());
    assert_eq!(
        watershed(&g, &WatershedParams::new(0.0, 0.0).unwrap()).len(),
        27
    );
}

#[test]
fn plateau_ties_go_to_the_lower_id() {
    // Two seeds at the ends of a row and a flat middle of three voxels. Voxel
    // 1 goes first, then voxel 2 beats voxel 3 on id and joins region 1, so
    // the line lands on voxel 3.
    let g = gray((5, 1, 1), vec![0.0, 0.4, 0.4, 0.4, 0.0]);
    let p = WatershedParams::new(0.1, 0.5).unwrap();
    assert_eq!(watershed_labels(&g, &p), vec![1, 1, 1, 0, 2]);
}
