//! Plain-text file formats.
//!
//! Every format starts with a header line naming the format and its counts,
//! followed by one record per line with a one-letter tag. Blank lines and
//! lines starting with `#` are skipped on input. Writers emit costs with 17
//! significant digits, so reading and writing again reproduces a file byte
//! for byte.
//!
//! ```text
//! MSEPINST <nodes> <edges> <interactions>      MSEPSEP <nodes> <size>
//! e <u> <v>                                    <v>
//! n <v> <cost>
//! i <u> <v> <cost>                             MSEPQUBO <n> <terms>
//!                                              q <i> <j> <coefficient>
//! MSEPLMP <nodes> <edges> <lifted>
//! e <u> <v> <cost>                             MSEPTERM <nodes> <edges> <terminals>
//! l <u> <v> <cost>                             e <u> <v>
//!                                              w <v> <weight>
//! MSEPPART <nodes> <interactions>              t <v>
//! n <v> <0|1|*>
//! i <k> <0|1|*>
//! ```
//!
//! Formulas use DIMACS CNF.

use std::fmt::Write as _;
use std::str::FromStr;

use msep_core::oracle::LmpInstance;
use msep_core::reductions::{Literal, Qubo};
use msep_core::{Graph, Label, MspInstance, PartialAssignment, Separator};

use crate::error::FormatError;

type Result<T> = std::result::Result<T, FormatError>;

/// Writes a cost so that parsing it back gives the same double.
pub fn cost(c: f64) -> String {
    format!("{c:.16e}")
}

struct Records<'a> {
    lines: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Records<'a> {
    fn new(text: &'a str) -> Self {
        Records {
            lines: text.lines().enumerate(),
            last: 0,
        }
    }

    fn next(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (i, line) in self.lines.by_ref() {
            self.last = i + 1;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            return Some((i + 1, t.split_whitespace().collect()));
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        self.next().ok_or_else(|| {
            FormatError::at(
                self.last + 1,
                format!("unexpected end of file, expected {what}"),
            )
        })
    }

    /// A record with the given tag and field count (tag included).
    fn tagged(&mut self, tag: &str, fields: usize, what: &str) -> Result<(usize, Vec<&'a str>)> {
        let (line, f) = self.expect(what)?;
        if f[0] != tag || f.len() != fields {
            return Err(FormatError::at(
                line,
                format!(
                    "expected {what} as `{tag}` with {} fields, got {:?}",
                    fields - 1,
                    f.join(" ")
                ),
            ));
        }
        Ok((line, f))
    }

    fn header(&mut self, magic: &str, counts: usize) -> Result<Vec<usize>> {
        let (line, f) = self.tagged(magic, counts + 1, &format!("a {magic} header"))?;
        f[1..].iter().map(|s| parse(s, line, "count")).collect()
    }

    fn finish(&mut self) -> Result<()> {
        match self.next() {
            Some((line, f)) => Err(FormatError::at(
                line,
                format!("unexpected trailing record {:?}", f.join(" ")),
            )),
            None => Ok(()),
        }
    }
}

fn parse<T: FromStr>(s: &str, line: usize, what: &str) -> Result<T> {
    s.parse()
        .map_err(|_| FormatError::at(line, format!("invalid {what} {s:?}")))
}

fn parse_cost(s: &str, line: usize) -> Result<f64> {
    let c: f64 = parse(s, line, "cost")?;
    if !c.is_finite() {
        return Err(FormatError::at(line, format!("cost {s:?} is not finite")));
    }
    Ok(c)
}

fn node(s: &str, line: usize, n: usize) -> Result<usize> {
    let v: usize = parse(s, line, "node id")?;
    if v >= n {
        return Err(FormatError::at(
            line,
            format!("node {v} out of range for {n} nodes"),
        ));
    }
    Ok(v)
}

fn read_edges(r: &mut Records, n: usize, m: usize) -> Result<Graph> {
    let mut edges = Vec::with_capacity(m);
    let mut first = 0;
    for k in 0..m {
        let (line, f) = r.tagged("e", 3, "an edge")?;
        if k == 0 {
            first = line;
        }
        edges.push((node(f[1], line, n)?, node(f[2], line, n)?));
    }
    Graph::from_edges(n, edges).map_err(|e| FormatError::at(first, format!("edge list: {e}")))
}

/// Costs indexed by node from `n`-style records, each node exactly once.
fn read_node_values<T: Clone>(
    r: &mut Records,
    tag: &str,
    n: usize,
    what: &str,
    mut value: impl FnMut(&str, usize) -> Result<T>,
) -> Result<Vec<T>> {
    let mut out: Vec<Option<T>> = vec![None; n];
    for _ in 0..n {
        let (line, f) = r.tagged(tag, 3, what)?;
        let v = node(f[1], line, n)?;
        if out[v].is_some() {
            return Err(FormatError::at(line, format!("node {v} listed twice")));
        }
        out[v] = Some(value(f[2], line)?);
    }
    Ok(out
        .into_iter()
        .map(|c| c.expect("every node seen once"))
        .collect())
}

pub fn write_instance(inst: &MspInstance) -> String {
    let g = inst.graph();
    let mut s = String::new();
    writeln!(
        s,
        "MSEPINST {} {} {}",
        inst.node_count(),
        g.edge_count(),
        inst.interactions().len()
    )
    .unwrap();
    for (u, v) in g.edges() {
        writeln!(s, "e {u} {v}").unwrap();
    }
    for (v, &c) in inst.node_costs().iter().enumerate() {
        writeln!(s, "n {v} {}", cost(c)).unwrap();
    }
    for f in inst.interactions() {
        writeln!(s, "i {} {} {}", f.u, f.v, cost(f.cost)).unwrap();
    }
    s
}

pub fn read_instance(text: &str) -> Result<MspInstance> {
    let mut r = Records::new(text);
    let h = r.header("MSEPINST", 3)?;
    let (n, m, k) = (h[0], h[1], h[2]);
    let graph = read_edges(&mut r, n, m)?;
    let costs = read_node_values(&mut r, "n", n, "a node cost", parse_cost)?;
    let mut interactions = Vec::with_capacity(k);
    let mut first = r.last + 1;
    for j in 0..k {
        let (line, f) = r.tagged("i", 4, "an interaction")?;
        if j == 0 {
            first = line;
        }
        interactions.push((
            node(f[1], line, n)?,
            node(f[2], line, n)?,
            parse_cost(f[3], line)?,
        ));
    }
    r.finish()?;
    MspInstance::new(graph, costs, interactions)
        .map_err(|e| FormatError::at(first, format!("interactions: {e}")))
}

pub fn write_separator(s: &Separator) -> String {
    let mut out = String::new();
    writeln!(out, "MSEPSEP {} {}", s.node_count(), s.len()).unwrap();
    for v in s.nodes() {
        writeln!(out, "{v}").unwrap();
    }
    out
}

pub fn read_separator(text: &str) -> Result<Separator> {
    let mut r = Records::new(text);
    let h = r.header("MSEPSEP", 2)?;
    let (n, k) = (h[0], h[1]);
    let mut mask = vec![false; n];
    for _ in 0..k {
        let (line, f) = r.expect("a separator node")?;
        if f.len() != 1 {
            return Err(FormatError::at(line, "expected one node id per line"));
        }
        let v = node(f[0], line, n)?;
        if mask[v] {
            return Err(FormatError::at(line, format!("node {v} listed twice")));
        }
        mask[v] = true;
    }
    r.finish()?;
    Ok(Separator::from_mask(mask))
}

pub fn write_lmp(lmp: &LmpInstance) -> String {
    let mut s = String::new();
    let g = lmp.graph();
    writeln!(
        s,
        "MSEPLMP {} {} {}",
        g.node_count(),
        g.edge_count(),
        lmp.lifted_count()
    )
    .unwrap();
    for (u, v, c) in lmp.edges() {
        writeln!(s, "e {u} {v} {}", cost(c)).unwrap();
    }
    for (u, v, c) in lmp.lifted() {
        writeln!(s, "l {u} {v} {}", cost(c)).unwrap();
    }
    s
}

pub fn read_lmp(text: &str) -> Result<LmpInstance> {
    let mut r = Records::new(text);
    let h = r.header("MSEPLMP", 3)?;
    let (n, m, l) = (h[0], h[1], h[2]);
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, f) = r.tagged("e", 4, "a weighted edge")?;
        edges.push((
            node(f[1], line, n)?,
            node(f[2], line, n)?,
            parse_cost(f[3], line)?,
        ));
    }
    let mut lifted = Vec::with_capacity(l);
    for _ in 0..l {
        let (line, f) = r.tagged("l", 4, "a lifted pair")?;
        lifted.push((
            node(f[1], line, n)?,
            node(f[2], line, n)?,
            parse_cost(f[3], line)?,
        ));
    }
    r.finish()?;
    LmpInstance::from_weighted_edges(n, &edges, lifted)
        .map_err(|e| FormatError::whole(e.to_string()))
}

pub fn write_qubo(q: &Qubo) -> String {
    let terms: Vec<(usize, usize, f64)> = q.terms().collect();
    let mut s = String::new();
    writeln!(s, "MSEPQUBO {} {}", q.n(), terms.len()).unwrap();
    for (i, j, c) in terms {
        writeln!(s, "q {i} {j} {}", cost(c)).unwrap();
    }
    s
}

pub fn read_qubo(text: &str) -> Result<Qubo> {
    let mut r = Records::new(text);
    let h = r.header("MSEPQUBO", 2)?;
    let (n, k) = (h[0], h[1]);
    let mut seen = std::collections::HashSet::new();
    let mut entries = Vec::with_capacity(k);
    for _ in 0..k {
        let (line, f) = r.tagged("q", 4, "a coefficient")?;
        let (i, j) = (node(f[1], line, n)?, node(f[2], line, n)?);
        if !seen.insert((i.min(j), i.max(j))) {
            return Err(FormatError::at(
                line,
                format!("coefficient ({i}, {j}) listed twice"),
            ));
        }
        entries.push((i, j, parse_cost(f[3], line)?));
    }
    r.finish()?;
    Ok(Qubo::new(n, &entries))
}

/// A node-weighted graph with terminals, the input of the Steiner tree and
/// multi-terminal vertex separator reductions.
#[derive(Clone, Debug, PartialEq)]
pub struct TerminalProblem {
    pub graph: Graph,
    pub weights: Vec<f64>,
    pub terminals: Vec<usize>,
}

pub fn write_terminal_problem(p: &TerminalProblem) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "MSEPTERM {} {} {}",
        p.graph.node_count(),
        p.graph.edge_count(),
        p.terminals.len()
    )
    .unwrap();
    for (u, v) in p.graph.edges() {
        writeln!(s, "e {u} {v}").unwrap();
    }
    for (v, &w) in p.weights.iter().enumerate() {
        writeln!(s, "w {v} {}", cost(w)).unwrap();
    }
    for t in &p.terminals {
        writeln!(s, "t {t}").unwrap();
    }
    s
}

pub fn read_terminal_problem(text: &str) -> Result<TerminalProblem> {
    let mut r = Records::new(text);
    let h = r.header("MSEPTERM", 3)?;
    let (n, m, k) = (h[0], h[1], h[2]);
    let graph = read_edges(&mut r, n, m)?;
    let weights = read_node_values(&mut r, "w", n, "a node weight", parse_cost)?;
    let mut terminals = Vec::with_capacity(k);
    for _ in 0..k {
        let (line, f) = r.tagged("t", 2, "a terminal")?;
        terminals.push(node(f[1], line, n)?);
    }
    r.finish()?;
    Ok(TerminalProblem {
        graph,
        weights,
        terminals,
    })
}

fn label_char(l: Label) -> char {
    match l {
        Label::Zero => '0',
        Label::One => '1',
        Label::Free => '*',
    }
}

fn parse_label(s: &str, line: usize) -> Result<Label> {
    match s {
        "0" => Ok(Label::Zero),
        "1" => Ok(Label::One),
        "*" => Ok(Label::Free),
        _ => Err(FormatError::at(
            line,
            format!("label must be 0, 1 or *, got {s:?}"),
        )),
    }
}

pub fn write_assignment(x: &PartialAssignment) -> String {
    let mut s = String::new();
    writeln!(s, "MSEPPART {} {}", x.nodes.len(), x.interactions.len()).unwrap();
    for (v, &l) in x.nodes.iter().enumerate() {
        writeln!(s, "n {v} {}", label_char(l)).unwrap();
    }
    for (k, &l) in x.interactions.iter().enumerate() {
        writeln!(s, "i {k} {}", label_char(l)).unwrap();
    }
    s
}

pub fn read_assignment(text: &str) -> Result<PartialAssignment> {
    let mut r = Records::new(text);
    let h = r.header("MSEPPART", 2)?;
    let (n, k) = (h[0], h[1]);
    let nodes = read_node_values(&mut r, "n", n, "a node label", parse_label)?;
    let interactions = read_node_values(&mut r, "i", k, "an interaction label", parse_label)?;
    r.finish()?;
    Ok(PartialAssignment {
        nodes,
        interactions,
    })
}

/// DIMACS CNF: `p cnf <vars> <clauses>`, then clauses as nonzero literals
/// each terminated by `0`. Variable `k` (1-based) maps to index `k - 1`.
pub fn read_dimacs(text: &str) -> Result<(usize, Vec<Vec<Literal>>)> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    let mut last = 0;
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('c') || t.starts_with('%') {
            continue;
        }
        last = ln;
        if t.starts_with('p') {
            let f: Vec<&str> = t.split_whitespace().collect();
            if header.is_some() || f.len() != 4 || f[1] != "cnf" {
                return Err(FormatError::at(
                    ln,
                    "expected a single `p cnf <vars> <clauses>` line",
                ));
            }
            header = Some((
                parse(f[2], ln, "variable count")?,
                parse(f[3], ln, "clause count")?,
            ));
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(FormatError::at(ln, "clause before the `p cnf` line"));
        };
        for tok in t.split_whitespace() {
            let x: i64 = parse(tok, ln, "literal")?;
            if x == 0 {
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            let var = x.unsigned_abs() as usize;
            if var > vars {
                return Err(FormatError::at(
                    ln,
                    format!("variable {var} exceeds the declared {vars}"),
                ));
            }
            current.push(if x > 0 {
                Literal::pos(var - 1)
            } else {
                Literal::neg(var - 1)
            });
        }
    }
    let Some((vars, count)) = header else {
        return Err(FormatError::whole("missing `p cnf` line"));
    };
    if !current.is_empty() {
        return Err(FormatError::at(last, "last clause is not terminated by 0"));
    }
    if clauses.len() != count {
        return Err(FormatError::whole(format!(
            "declared {count} clauses, found {}",
            clauses.len()
        )));
    }
    Ok((vars, clauses))
}

pub fn write_dimacs(vars: usize, formula: &[Vec<Literal>]) -> String {
    let mut s = String::new();
    writeln!(s, "p cnf {vars} {}", formula.len()).unwrap();
    for clause in formula {
        for l in clause {
            let k = l.var as i64 + 1;
            write!(s, "{} ", if l.negated { -k } else { k }).unwrap();
        }
        writeln!(s, "0").unwrap();
    }
    s
}
