//! Greedy local search: separator shrinking (GSS) and separator growing (GSG).
//!
//! Both solvers move one node per iteration, always the node of smallest
//! greedy potential, and stop once every potential is positive.

use std::cmp::{Ordering, Reverse};

use rustc_hash::FxHashMap;

use crate::error::MspError;
use crate::graph::{components, NO_LABEL};
use crate::msp::{objective, MspInstance, OpCount, Separator};

#[derive(Clone, Copy, Debug)]
struct Entry {
    priority: f64,
    node: u32,
    version: u32,
}

impl Entry {
    fn before(&self, other: &Entry) -> bool {
        self.priority
            .total_cmp(&other.priority)
            .then(self.node.cmp(&other.node))
            .then(self.version.cmp(&other.version))
            == Ordering::Less
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct Slot {
    version: u32,
    live: bool,
}

/// Min-priority queue over node ids with lazy invalidation.
///
/// Every update bumps the node's version and pushes a fresh entry; stale
/// entries are skipped when they reach the top. Ties go to the lower id.
/// The heap is 4-ary, which halves the levels a pop walks through.
#[derive(Clone, Debug)]
pub struct VersionedQueue {
    heap: Vec<Entry>,
    slots: Vec<Slot>,
}

const ARITY: usize = 4;

impl VersionedQueue {
    pub fn new(n: usize) -> Self {
        VersionedQueue {
            heap: Vec::new(),
            slots: vec![Slot::default(); n],
        }
    }

    /// Insert `node` or change its priority.
    pub fn push(&mut self, node: usize, priority: f64) {
        let slot = &mut self.slots[node];
        slot.version = slot.version.wrapping_add(1);
        slot.live = true;
        let entry = Entry {
            priority,
            node: node as u32,
            version: slot.version,
        };
        let mut i = self.heap.len();
        self.heap.push(entry);
        while i > 0 {
            let parent = (i - 1) / ARITY;
            if !entry.before(&self.heap[parent]) {
                break;
            }
            self.heap[i] = self.heap[parent];
            i = parent;
        }
        self.heap[i] = entry;
    }

    pub fn remove(&mut self, node: usize) {
        let slot = &mut self.slots[node];
        slot.version = slot.version.wrapping_add(1);
        slot.live = false;
    }

    pub fn contains(&self, node: usize) -> bool {
        self.slots[node].live
    }

    fn pop_top(&mut self) -> Option<Entry> {
        let last = self.heap.pop()?;
        let Some(&top) = self.heap.first() else {
            return Some(last);
        };
        let len = self.heap.len();
        let mut i = 0;
        loop {
            let first = ARITY * i + 1;
            if first >= len {
                break;
            }
            let mut best = first;
            for c in first + 1..(first + ARITY).min(len) {
                if self.heap[c].before(&self.heap[best]) {
                    best = c;
                }
            }
            if !self.heap[best].before(&last) {
                break;
            }
            self.heap[i] = self.heap[best];
            i = best;
        }
        self.heap[i] = last;
        Some(top)
    }

    fn discard_stale(&mut self) {
        while let Some(top) = self.heap.first() {
            let slot = self.slots[top.node as usize];
            if slot.live && slot.version == top.version {
                break;
            }
            self.pop_top();
        }
    }

    pub fn peek(&mut self) -> Option<(usize, f64)> {
        self.discard_stale();
        self.heap.first().map(|e| (e.node as usize, e.priority))
    }

    pub fn pop(&mut self) -> Option<(usize, f64)> {
        self.discard_stale();
        let e = self.pop_top()?;
        self.slots[e.node as usize].live = false;
        Some((e.node as usize, e.priority))
    }

    /// Heap entries including stale ones.
    pub fn raw_len(&self) -> usize {
        self.heap.len()
    }
}

/// `objective(S ∪ {v}) − objective(S)`, from one components pass over
/// `V ∖ (S ∪ {v})`.
pub fn insertion_delta(instance: &MspInstance, s: &Separator, v: usize) -> Result<f64, MspError> {
    let n = instance.node_count();
    if s.node_count() != n {
        return Err(MspError::SeparatorShape {
            expected: n,
            got: s.node_count(),
        });
    }
    if s.contains(v) {
        return Err(MspError::Precondition(
            "inserted node is already in the separator",
        ));
    }
    let mut removed = s.mask().to_vec();
    removed[v] = true;
    let comps = components(instance.graph(), &removed);
    // Components of V ∖ (S ∪ {v}) that merge through v when v is present.
    let mut through_v = vec![false; comps.count];
    for &w in instance.graph().neighbors(v) {
        if let Some(l) = comps.label(w as usize) {
            through_v[l] = true;
        }
    }
    let mut delta = instance.node_costs()[v];
    for f in instance.interactions() {
        let (a, b) = f.endpoints();
        if s.contains(a) || s.contains(b) {
            continue;
        }
        let newly = if a == v || b == v {
            let other = if a == v { b } else { a };
            through_v[comps.label(other).unwrap()]
        } else {
            let (la, lb) = (comps.label(a).unwrap(), comps.label(b).unwrap());
            la != lb && through_v[la] && through_v[lb]
        };
        if newly {
            delta += f.cost;
        }
    }
    Ok(delta)
}

/// Signed objective change of toggling `v`: insertion delta outside the
/// separator, negated removal delta inside it.
pub fn greedy_potential(instance: &MspInstance, s: &Separator, v: usize) -> Result<f64, MspError> {
    if s.contains(v) {
        let mut without = s.clone();
        without.remove(v);
        Ok(-insertion_delta(instance, &without, v)?)
    } else {
        insertion_delta(instance, s, v)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchOptions {
    /// Commit moves of potential exactly 0 (the loop only stops on `p > 0`).
    pub take_zero_moves: bool,
    /// Recheck the tracked objective against a full evaluation after every
    /// move. Quadratic; meant for tests.
    pub check_state: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            take_zero_moves: true,
            check_state: false,
        }
    }
}

impl SearchOptions {
    fn stops_at(&self, p: f64) -> bool {
        if self.take_zero_moves {
            p > 0.0
        } else {
            p >= 0.0
        }
    }
}

/// A committed move and the objective change it caused.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Move {
    pub node: usize,
    pub potential: f64,
}

/// A GSG potential recomputed at selection time.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Correction {
    pub node: usize,
    pub cached: f64,
    pub recomputed: f64,
    /// Whether the node was deleted right after the correction.
    pub committed: bool,
    /// Moves committed before this correction.
    pub after_moves: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchRun {
    pub separator: Separator,
    /// Objective before the first move and after every committed move.
    pub trace: Vec<f64>,
    pub moves: Vec<Move>,
    pub corrections: Vec<Correction>,
    /// False for GSG on instances with a negative non-edge interaction, where
    /// cached potentials can overestimate and a step may not be the best one.
    pub greedy_exact: bool,
    pub operations: OpCount,
}

impl SearchRun {
    pub fn objective(&self) -> f64 {
        *self.trace.last().unwrap()
    }
}

fn check_tracked(instance: &MspInstance, sep: &[bool], tracked: f64) {
    let exact = objective(instance, &Separator::from_mask(sep.to_vec())).unwrap();
    let scale = 1.0 + exact.abs().max(tracked.abs());
    assert!(
        (exact - tracked).abs() <= 1e-9 * scale,
        "tracked objective {tracked} differs from {exact}"
    );
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let p = parent[x as usize];
        parent[x as usize] = parent[p as usize];
        x = p;
    }
    x
}

/// State of GSS: separator nodes are singleton super-nodes, every component
/// of `V ∖ S` is one super-node named by its union-find root.
struct Contraction<'a> {
    instance: &'a MspInstance,
    in_sep: Vec<bool>,
    parent: Vec<u32>,
    /// Summed interaction costs between super-nodes, keyed by root.
    links: Vec<FxHashMap<u32, f64>>,
    /// Separator nodes adjacent to each component, with stale entries and
    /// duplicates until the list is compacted.
    boundary: Vec<Vec<u32>>,
    /// List length after the last compaction.
    compacted: Vec<usize>,
    potential: Vec<f64>,
    /// Scratch for the roots around one node.
    roots: Vec<u32>,
    stamp: Vec<u32>,
    epoch: u32,
    ops: OpCount,
}

impl<'a> Contraction<'a> {
    fn new(instance: &'a MspInstance, initial: &Separator) -> Self {
        let n = instance.node_count();
        let g = instance.graph();
        let mut parent: Vec<u32> = (0..n as u32).collect();
        let in_sep = initial.mask().to_vec();
        for (u, v) in g.edges() {
            if !in_sep[u] && !in_sep[v] {
                let (ru, rv) = (find(&mut parent, u as u32), find(&mut parent, v as u32));
                if ru != rv {
                    parent[ru.max(rv) as usize] = ru.min(rv);
                }
            }
        }
        let mut links: Vec<FxHashMap<u32, f64>> = vec![FxHashMap::default(); n];
        for f in instance.interactions() {
            let (ra, rb) = (find(&mut parent, f.u), find(&mut parent, f.v));
            if ra != rb {
                *links[ra as usize].entry(rb).or_insert(0.0) += f.cost;
                *links[rb as usize].entry(ra).or_insert(0.0) += f.cost;
            }
        }
        let mut boundary = vec![Vec::new(); n];
        for u in (0..n).filter(|&u| in_sep[u]) {
            for &w in g.neighbors(u) {
                if !in_sep[w as usize] {
                    let r = find(&mut parent, w);
                    boundary[r as usize].push(u as u32);
                }
            }
        }
        let mut state = Contraction {
            instance,
            in_sep,
            parent,
            links,
            compacted: boundary.iter().map(Vec::len).collect(),
            boundary,
            potential: vec![0.0; n],
            roots: Vec::new(),
            stamp: vec![0; n],
            epoch: 0,
            ops: 0,
        };
        for u in 0..n {
            if state.in_sep[u] {
                state.potential[u] = state.removal_potential(u);
            }
        }
        state
    }

    fn next_epoch(&mut self) -> u32 {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        self.epoch
    }

    fn link(&self, a: u32, b: u32) -> f64 {
        let (small, other) = if self.links[a as usize].len() <= self.links[b as usize].len() {
            (a, b)
        } else {
            (b, a)
        };
        self.links[small as usize]
            .get(&other)
            .copied()
            .unwrap_or(0.0)
    }

    /// `−c_u − Σ{c_f : f ⊆ N}` with `N` = `u` plus its adjacent components.
    fn removal_potential(&mut self, u: usize) -> f64 {
        let mut roots = std::mem::take(&mut self.roots);
        roots.clear();
        for &w in self.instance.graph().neighbors(u) {
            if !self.in_sep[w as usize] {
                let r = find(&mut self.parent, w);
                if !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
        let u = u as u32;
        let mut sum = 0.0;
        for (i, &a) in roots.iter().enumerate() {
            sum += self.link(u, a);
            for &b in &roots[i + 1..] {
                sum += self.link(a, b);
            }
        }
        self.ops += (1 + roots.len() * (roots.len() + 1) / 2) as OpCount;
        self.roots = roots;
        -self.instance.node_costs()[u as usize] - sum
    }

    /// Take `v` out of the separator and contract it with its adjacent
    /// components. Returns the separator nodes whose potential may have
    /// changed, a superset of the exact set.
    ///
    /// Call the merged component `R`, its largest-map part `K` and the other
    /// parts `Q` (which include `v`). A separator node `u` keeps its
    /// potential unless it touches a part in `Q`, has an interaction with
    /// one, or touches both `K` and a component `X` linked to one.
    fn remove(&mut self, v: usize) -> Vec<u32> {
        self.in_sep[v] = false;
        let g = self.instance.graph();
        let mut parts: Vec<u32> = vec![v as u32];
        for &w in g.neighbors(v) {
            if !self.in_sep[w as usize] {
                let r = find(&mut self.parent, w);
                if !parts.contains(&r) {
                    parts.push(r);
                }
            }
        }
        let root = *parts
            .iter()
            .max_by_key(|&&q| (self.links[q as usize].len(), Reverse(q)))
            .unwrap();
        for &q in &parts {
            self.parent[q as usize] = root;
        }
        let epoch = self.next_epoch();
        let mut affected = Vec::new();
        let mark = |stamp: &mut [u32], in_sep: &[bool], u: u32, affected: &mut Vec<u32>| {
            if in_sep[u as usize] && stamp[u as usize] != epoch {
                stamp[u as usize] = epoch;
                affected.push(u);
            }
        };
        // Fold interaction maps into the root's map and re-key neighbors.
        let mut linked: Vec<u32> = Vec::new();
        let mut merged = std::mem::take(&mut self.links[root as usize]);
        for &q in &parts {
            merged.remove(&q);
        }
        for &q in parts.iter().filter(|&&q| q != root) {
            let map = std::mem::take(&mut self.links[q as usize]);
            self.ops += map.len() as OpCount;
            for (w, c) in map {
                if parts.contains(&w) {
                    continue;
                }
                if self.in_sep[w as usize] {
                    mark(&mut self.stamp, &self.in_sep, w, &mut affected);
                } else if root != v as u32 {
                    linked.push(w);
                }
                *merged.entry(w).or_insert(0.0) += c;
                let theirs = &mut self.links[w as usize];
                theirs.remove(&q);
                *theirs.entry(root).or_insert(0.0) += c;
            }
        }
        self.links[root as usize] = merged;

        for &w in g.neighbors(v) {
            mark(&mut self.stamp, &self.in_sep, w, &mut affected);
        }
        let mut bnd = std::mem::take(&mut self.boundary[root as usize]);
        for &q in parts.iter().filter(|&&q| q != root && q != v as u32) {
            let list = std::mem::take(&mut self.boundary[q as usize]);
            self.ops += list.len() as OpCount;
            for &u in &list {
                mark(&mut self.stamp, &self.in_sep, u, &mut affected);
            }
            bnd.extend(list);
        }
        bnd.extend(
            g.neighbors(v)
                .iter()
                .copied()
                .filter(|&w| self.in_sep[w as usize]),
        );
        // Nodes touching both K and X, read from the shorter list. Nodes of
        // K's list that only touch Q parts are already marked.
        linked.sort_unstable();
        linked.dedup();
        for x in linked {
            let theirs = &self.boundary[x as usize];
            let list = if theirs.len() < bnd.len() {
                theirs
            } else {
                &bnd
            };
            self.ops += list.len() as OpCount;
            for &u in list {
                mark(&mut self.stamp, &self.in_sep, u, &mut affected);
            }
        }
        if bnd.len() > 2 * self.compacted[root as usize] + 16 {
            let epoch = self.next_epoch();
            bnd.retain(|&u| {
                let keep = self.in_sep[u as usize] && self.stamp[u as usize] != epoch;
                self.stamp[u as usize] = epoch;
                keep
            });
            self.ops += bnd.len() as OpCount;
            self.compacted[root as usize] = bnd.len();
        }
        self.boundary[root as usize] = bnd;
        affected
    }

    fn state_objective(&self) -> f64 {
        let nodes: f64 = (0..self.in_sep.len())
            .filter(|&v| self.in_sep[v])
            .map(|v| self.instance.node_costs()[v])
            .sum();
        let links: f64 = self.links.iter().flat_map(|m| m.values()).sum();
        nodes + links / 2.0
    }
}

/// Greedy separator shrinking from `S = V`.
pub fn gss(instance: &MspInstance) -> Separator {
    gss_with(instance, None, &SearchOptions::default()).separator
}

/// Greedy separator shrinking from `initial` (default `V`).
pub fn gss_with(
    instance: &MspInstance,
    initial: Option<&Separator>,
    options: &SearchOptions,
) -> SearchRun {
    let n = instance.node_count();
    let full = Separator::full(n);
    let initial = initial.unwrap_or(&full);
    assert_eq!(initial.node_count(), n, "initial separator has wrong size");
    let mut state = Contraction::new(instance, initial);
    let mut queue = VersionedQueue::new(n);
    for u in 0..n {
        if state.in_sep[u] {
            queue.push(u, state.potential[u]);
        }
    }
    let mut value = objective(instance, initial).unwrap();
    let mut trace = vec![value];
    let mut moves = Vec::new();
    while let Some((v, p)) = queue.pop() {
        state.ops += 1;
        if options.stops_at(p) {
            break;
        }
        let affected = state.remove(v);
        value += p;
        trace.push(value);
        moves.push(Move {
            node: v,
            potential: p,
        });
        for u in affected {
            let u = u as usize;
            let fresh = state.removal_potential(u);
            if fresh != state.potential[u] {
                state.potential[u] = fresh;
                queue.push(u, fresh);
            }
        }
        if options.check_state {
            check_tracked(instance, &state.in_sep, value);
            let from_state = state.state_objective();
            assert!(
                (from_state - value).abs() <= 1e-9 * (1.0 + value.abs()),
                "contraction state out of sync"
            );
            for u in 0..n {
                if !state.in_sep[u] {
                    continue;
                }
                let fresh = state.removal_potential(u);
                assert!(
                    (fresh - state.potential[u]).abs() <= 1e-9 * (1.0 + fresh.abs()),
                    "stale potential at {u}"
                );
            }
        }
    }
    SearchRun {
        separator: Separator::from_mask(state.in_sep),
        trace,
        moves,
        corrections: Vec::new(),
        greedy_exact: true,
        operations: state.ops,
    }
}

/// Search marks of one node: the epoch of the last search that reached it and
/// the start it was reached from. Deleted nodes carry the `DEAD` epoch.
#[derive(Clone, Copy)]
struct Mark {
    epoch: u32,
    owner: u32,
}

const DEAD: u32 = u32::MAX;

/// State of GSG: surviving nodes, unseparated interactions, cached
/// potentials and the cut-nodes found so far.
struct Growth<'a> {
    instance: &'a MspInstance,
    adjacency: crate::msp::InteractionAdjacency,
    marks: Vec<Mark>,
    live_interaction: Vec<bool>,
    /// Cut-nodes of an interaction other than its endpoints.
    extra_cut_nodes: FxHashMap<u32, Vec<u32>>,
    epoch: u32,
    scratch: Lockstep,
    ops: OpCount,
}

/// Buffers of the lockstep searches, reused across calls.
#[derive(Default)]
struct Lockstep {
    starts: Vec<u32>,
    group: Vec<usize>,
    head: Vec<usize>,
    open: Vec<bool>,
    piece: Vec<usize>,
    visited: Vec<Vec<u32>>,
}

fn group_of(group: &mut [usize], mut i: usize) -> usize {
    while group[i] != i {
        group[i] = group[group[i]];
        i = group[i];
    }
    i
}

/// Marks the root of every group that still has nodes to expand.
fn expanding(group: &mut [usize], head: &[usize], visited: &[Vec<u32>], open: &mut Vec<bool>) {
    open.clear();
    open.resize(head.len(), false);
    for i in 0..head.len() {
        if head[i] < visited[i].len() {
            open[group_of(group, i)] = true;
        }
    }
}

impl<'a> Growth<'a> {
    fn alive(&self, v: usize) -> bool {
        self.marks[v].epoch != DEAD
    }

    fn delete(&mut self, v: usize) {
        self.marks[v].epoch = DEAD;
    }

    fn next_epoch(&mut self) -> u32 {
        self.epoch += 1;
        if self.epoch == DEAD {
            for m in self.marks.iter_mut().filter(|m| m.epoch != DEAD) {
                m.epoch = 0;
            }
            self.epoch = 1;
        }
        self.epoch
    }

    /// Interactions separated by deleting `v` from the surviving graph.
    ///
    /// Runs one breadth-first search per surviving neighbor of `v`, in
    /// lockstep, merging searches that meet. Once at most one group is still
    /// expanding, every finished group is a complete component of the graph
    /// without `v` and the expanding group holds the rest.
    fn separated_by(&mut self, v: usize, out: &mut Vec<u32>) {
        out.clear();
        for &(_, f) in self.adjacency.of(v) {
            if self.live_interaction[f as usize] {
                out.push(f);
            }
        }
        self.ops += self.adjacency.of(v).len() as OpCount;
        let g = self.instance.graph();
        let mut sc = std::mem::take(&mut self.scratch);
        sc.starts.clear();
        sc.starts.extend(
            g.neighbors(v)
                .iter()
                .copied()
                .filter(|&w| self.alive(w as usize)),
        );
        let k = sc.starts.len();
        if k > 1 {
            self.search(v, &mut sc, out);
        }
        self.scratch = sc;
    }

    fn search(&mut self, v: usize, sc: &mut Lockstep, out: &mut Vec<u32>) {
        let g = self.instance.graph();
        let k = sc.starts.len();
        let epoch = self.next_epoch();
        self.marks[v] = Mark {
            epoch,
            owner: u32::MAX,
        };
        sc.group.clear();
        sc.group.extend(0..k);
        sc.head.clear();
        sc.head.resize(k, 0);
        if sc.visited.len() < k {
            sc.visited.resize_with(k, Vec::new);
        }
        for (i, &s) in sc.starts.iter().enumerate() {
            sc.visited[i].clear();
            let m = &mut self.marks[s as usize];
            if m.epoch == epoch {
                let (a, b) = (
                    group_of(&mut sc.group, i),
                    group_of(&mut sc.group, m.owner as usize),
                );
                sc.group[a.max(b)] = a.min(b);
            } else {
                *m = Mark {
                    epoch,
                    owner: i as u32,
                };
                sc.visited[i].push(s);
            }
        }
        let visited = &mut sc.visited[..k];
        loop {
            expanding(&mut sc.group, &sc.head, visited, &mut sc.open);
            let open_groups = sc.open.iter().filter(|&&o| o).count();
            let groups = (0..k).filter(|&i| group_of(&mut sc.group, i) == i).count();
            if groups == 1 {
                return;
            }
            if open_groups <= 1 {
                break;
            }
            for i in 0..k {
                if sc.head[i] >= visited[i].len() {
                    continue;
                }
                let x = visited[i][sc.head[i]];
                sc.head[i] += 1;
                for &w in g.neighbors(x as usize) {
                    self.ops += 1;
                    let wi = w as usize;
                    let m = &mut self.marks[wi];
                    if m.epoch == DEAD || wi == v {
                        continue;
                    }
                    if m.epoch != epoch {
                        *m = Mark {
                            epoch,
                            owner: i as u32,
                        };
                        visited[i].push(w);
                    } else {
                        let (a, b) = (
                            group_of(&mut sc.group, i),
                            group_of(&mut sc.group, m.owner as usize),
                        );
                        if a != b {
                            sc.group[a.max(b)] = a.min(b);
                        }
                    }
                }
            }
        }
        // Finished groups are complete pieces; everything else is the rest.
        expanding(&mut sc.group, &sc.head, visited, &mut sc.open);
        const REST: usize = usize::MAX;
        sc.piece.clear();
        for i in 0..k {
            let r = group_of(&mut sc.group, i);
            sc.piece.push(if sc.open[r] { REST } else { r });
        }
        let (marks, piece) = (&self.marks, &sc.piece);
        let piece_of = |y: usize| {
            let m = marks[y];
            if m.epoch != epoch || y == v {
                REST
            } else {
                piece[m.owner as usize]
            }
        };
        let mut ops = 0;
        for i in (0..k).filter(|&i| piece[i] != REST) {
            let gx = piece[i];
            for &x in &visited[i] {
                for &(y, f) in self.adjacency.of(x as usize) {
                    ops += 1;
                    if !self.live_interaction[f as usize] || y as usize == v {
                        continue;
                    }
                    let gy = piece_of(y as usize);
                    if gy != gx && (gy == REST || gy > gx) {
                        out.push(f);
                    }
                }
            }
        }
        self.ops += ops;
    }

    fn cut_nodes(&self, f: u32) -> impl Iterator<Item = u32> + '_ {
        let inter = &self.instance.interactions()[f as usize];
        [inter.u, inter.v]
            .into_iter()
            .chain(self.extra_cut_nodes.get(&f).into_iter().flatten().copied())
    }
}

/// Greedy separator growing from `S = ∅`.
pub fn gsg(instance: &MspInstance) -> Separator {
    gsg_with(instance, &SearchOptions::default()).separator
}

pub fn gsg_with(instance: &MspInstance, options: &SearchOptions) -> SearchRun {
    let n = instance.node_count();
    let fs = instance.interactions();
    let comps = components(instance.graph(), &vec![false; n]);
    debug_assert!(comps.labels.iter().all(|&l| l != NO_LABEL));
    let live_interaction: Vec<bool> = fs
        .iter()
        .map(|f| comps.same(f.u as usize, f.v as usize))
        .collect();
    let greedy_exact = (0..fs.len()).all(|i| instance.is_edge_interaction(i) || fs[i].cost >= 0.0);

    let mut potential = instance.node_costs().to_vec();
    for (f, inter) in fs.iter().enumerate() {
        if live_interaction[f] {
            potential[inter.u as usize] += inter.cost;
            potential[inter.v as usize] += inter.cost;
        }
    }
    let mut state = Growth {
        instance,
        adjacency: instance.interaction_adjacency(),
        marks: vec![Mark { epoch: 0, owner: 0 }; n],
        live_interaction,
        extra_cut_nodes: FxHashMap::default(),
        epoch: 0,
        scratch: Lockstep::default(),
        ops: 0,
    };
    let mut queue = VersionedQueue::new(n);
    for (v, &p) in potential.iter().enumerate() {
        queue.push(v, p);
    }
    let mut value = objective(instance, &Separator::empty(n)).unwrap();
    let mut trace = vec![value];
    let mut moves = Vec::new();
    let mut corrections = Vec::new();
    let (mut separated, mut cut) = (Vec::new(), Vec::new());

    while let Some((v, cached)) = queue.pop() {
        state.ops += 1;
        if options.stops_at(cached) {
            break;
        }
        state.separated_by(v, &mut separated);
        let fresh =
            instance.node_costs()[v] + separated.iter().map(|&f| fs[f as usize].cost).sum::<f64>();
        for &f in &separated {
            let inter = &fs[f as usize];
            if inter.u as usize != v && inter.v as usize != v {
                let list = state.extra_cut_nodes.entry(f).or_default();
                if !list.contains(&(v as u32)) {
                    list.push(v as u32);
                }
            }
        }
        potential[v] = fresh;
        let others_min = queue.peek().map(|(_, p)| p);
        let commit = !options.stops_at(fresh) && others_min.is_none_or(|m| fresh <= m);
        if fresh != cached {
            corrections.push(Correction {
                node: v,
                cached,
                recomputed: fresh,
                committed: commit,
                after_moves: moves.len(),
            });
        }
        if !commit {
            queue.push(v, fresh);
            continue;
        }
        state.delete(v);
        value += fresh;
        trace.push(value);
        moves.push(Move {
            node: v,
            potential: fresh,
        });
        for &f in &separated {
            state.live_interaction[f as usize] = false;
            let cost = fs[f as usize].cost;
            cut.clear();
            cut.extend(state.cut_nodes(f));
            state.ops += cut.len() as OpCount;
            for &u in &cut {
                let u = u as usize;
                if state.alive(u) {
                    potential[u] -= cost;
                    queue.push(u, potential[u]);
                }
            }
            state.extra_cut_nodes.remove(&f);
        }
        if options.check_state {
            let sep: Vec<bool> = (0..n).map(|u| !state.alive(u)).collect();
            check_tracked(instance, &sep, value);
        }
    }
    SearchRun {
        separator: Separator::from_mask((0..n).map(|u| !state.alive(u)).collect()),
        trace,
        moves,
        corrections,
        greedy_exact,
        operations: state.ops,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::oracle::brute_force_msp;

    fn path_instance() -> MspInstance {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        MspInstance::new(
            g,
            vec![6.0, 4.0, 3.0, 2.0],
            vec![(0, 1, 1.0), (1, 2, 1.0), (2, 3, 7.0), (0, 3, -8.0)],
        )
        .unwrap()
    }

    #[test]
    fn queue_skips_stale_entries_and_breaks_ties_by_id() {
        let mut q = VersionedQueue::new(4);
        q.push(2, 1.0);
        q.push(1, 1.0);
        q.push(3, -5.0);
        q.push(3, 4.0);
        q.remove(1);
        assert_eq!(q.pop(), Some((2, 1.0)));
        assert_eq!(q.pop(), Some((3, 4.0)));
        assert_eq!(q.pop(), None);
        assert!(q.raw_len() <= 4);
    }

    #[test]
    fn insertion_delta_examples() {
        let inst = path_instance();
        let empty = Separator::empty(4);
        assert_eq!(
            insertion_delta(&inst, &empty, 1).unwrap(),
            4.0 + 1.0 + 1.0 - 8.0
        );
        let lone = MspInstance::new(Graph::empty(2), vec![7.0, 0.0], vec![]).unwrap();
        assert_eq!(
            insertion_delta(&lone, &Separator::empty(2), 0).unwrap(),
            7.0
        );
        assert!(insertion_delta(&inst, &Separator::full(4), 0).is_err());
    }

    #[test]
    fn greedy_potential_on_the_path() {
        let inst = path_instance();
        let full = Separator::full(4);
        let p: Vec<f64> = (0..4)
            .map(|v| greedy_potential(&inst, &full, v).unwrap())
            .collect();
        assert_eq!(p, vec![-6.0, -4.0, -3.0, -2.0]);
        let mut s = full.clone();
        s.remove(0);
        assert_eq!(greedy_potential(&inst, &s, 1).unwrap(), -5.0);
    }

    #[test]
    fn gss_potentials_match_definition_after_each_move() {
        let inst = path_instance();
        let run = gss_with(
            &inst,
            None,
            &SearchOptions {
                check_state: true,
                ..Default::default()
            },
        );
        assert_eq!(run.trace, vec![16.0, 10.0, 5.0, 1.0, 0.0]);
        assert_eq!(
            run.moves.iter().map(|m| m.node).collect::<Vec<_>>(),
            vec![0, 1, 2, 3]
        );
    }

    #[test]
    fn gss_keeps_negative_nodes_without_interactions() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let inst = MspInstance::new(g, vec![-1.0, -2.0, -3.0], vec![]).unwrap();
        assert_eq!(gss(&inst), Separator::full(3));
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let inst = MspInstance::new(g, vec![1.0, 0.0, -3.0], vec![]).unwrap();
        assert_eq!(gss(&inst).nodes(), vec![2]);
        let strict = SearchOptions {
            take_zero_moves: false,
            ..Default::default()
        };
        assert_eq!(gss_with(&inst, None, &strict).separator.nodes(), vec![1, 2]);
    }

    #[test]
    fn gsg_misses_a_cut_node_with_positive_cached_potential() {
        // The middle node would separate (0, 2) for a total of -4, but its
        // cached potential is +1 and it is never selected.
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let inst = MspInstance::new(g, vec![5.0, 1.0, 5.0], vec![(0, 2, -5.0)]).unwrap();
        let run = gsg_with(
            &inst,
            &SearchOptions {
                check_state: true,
                ..Default::default()
            },
        );
        assert_eq!(run.separator.nodes(), vec![0]);
        assert_eq!(run.trace, vec![0.0, 0.0]);
        assert!(!run.greedy_exact);
        assert_eq!(brute_force_msp(&inst).unwrap().1, -4.0);
        let strict = gsg_with(
            &inst,
            &SearchOptions {
                take_zero_moves: false,
                ..Default::default()
            },
        );
        assert!(strict.separator.is_empty());
    }

    #[test]
    fn gsg_stops_immediately_on_positive_costs() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let inst = MspInstance::new(g, vec![1.0, 2.0, 3.0], vec![(0, 2, 1.0)]).unwrap();
        let run = gsg_with(&inst, &SearchOptions::default());
        assert!(run.separator.is_empty());
        assert_eq!(run.trace, vec![0.0]);
        assert!(run.greedy_exact);
    }

    #[test]
    fn gsg_cut_node_search_matches_components() {
        // Two triangles joined through node 0; deleting 0 separates (1, 4).
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).unwrap();
        let inst = MspInstance::new(
            g,
            vec![-1.0, 0.5, 0.5, 0.5, 0.5],
            vec![(1, 4, 3.0), (2, 1, 1.0)],
        )
        .unwrap();
        let run = gsg_with(
            &inst,
            &SearchOptions {
                check_state: true,
                ..Default::default()
            },
        );
        assert_eq!(run.corrections.len(), 1);
        assert_eq!(run.corrections[0].recomputed, 2.0);
        assert!(run.separator.is_empty());
    }
}
