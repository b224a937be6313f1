//! Pointed labeled graph presentations of the path sets `X(1, M_1, …, M_n)`.
//!
//! A single multiplier `M ≡ 1 (mod 3)` is handled by the carry automaton: the
//! state is the carry `N` of `M·x` above the digits already fixed, a digit
//! `a ∈ {0, 1}` may be appended iff `(a + N) mod 3 ∈ {0, 1}`, and the next
//! carry is `⌊(N + M·a)/3⌋`. Several multipliers are combined with the label
//! product, or directly by running the carry automaton on carry vectors.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::ternary::{ternary_string, Multiplier};

/// Default refusal cap on the number of constructed states.
pub const DEFAULT_MAX_VERTICES: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub max_vertices: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_vertices: DEFAULT_MAX_VERTICES,
        }
    }
}

/// Carry state of a vertex, one entry per multiplier.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexLabel {
    pub carries: Vec<u64>,
}

impl VertexLabel {
    pub fn new(carries: Vec<u64>) -> Self {
        VertexLabel { carries }
    }

    /// Carries in ternary joined by `-`, e.g. `10-22`.
    pub fn ternary(&self) -> String {
        self.carries
            .iter()
            .map(|&c| ternary_string(c))
            .collect::<Vec<_>>()
            .join("-")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: u8,
}

/// A directed multigraph with edge labels in `{0, 1, 2}`, carry labels on the
/// vertices and a marked start vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedLabeledGraph {
    vertices: Vec<VertexLabel>,
    edges: Vec<Edge>,
    /// Out-edges per vertex as `(label, target)`, sorted.
    out: Vec<Vec<(u8, usize)>>,
    start: usize,
    provenance: String,
}

impl PointedLabeledGraph {
    pub fn new(
        vertices: Vec<VertexLabel>,
        edges: Vec<Edge>,
        start: usize,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        let n = vertices.len();
        if start >= n {
            return Err(Error::InvalidGraph(format!(
                "start vertex {start} out of range for {n} vertices"
            )));
        }
        let mut out = vec![Vec::new(); n];
        for e in &edges {
            if e.from >= n || e.to >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {} -> {} out of range for {n} vertices",
                    e.from, e.to
                )));
            }
            if e.label > 2 {
                return Err(Error::InvalidDigit(e.label));
            }
            out[e.from].push((e.label, e.to));
        }
        for list in &mut out {
            list.sort_unstable();
        }
        Ok(PointedLabeledGraph {
            vertices,
            edges,
            out,
            start,
            provenance: provenance.into(),
        })
    }

    /// One vertex with a single 0-labeled self-loop: the presentation of `{0}`.
    pub fn trivial(components: usize) -> Self {
        Self::new(
            vec![VertexLabel::new(vec![0; components.max(1)])],
            vec![Edge {
                from: 0,
                to: 0,
                label: 0,
            }],
            0,
            "trivial {0}",
        )
        .expect("well-formed")
    }

    /// One vertex with self-loops 0 and 1: the full shift on `{0, 1}`.
    pub fn full_shift() -> Self {
        Self::new(
            vec![VertexLabel::new(vec![0])],
            vec![
                Edge {
                    from: 0,
                    to: 0,
                    label: 0,
                },
                Edge {
                    from: 0,
                    to: 0,
                    label: 1,
                },
            ],
            0,
            "full shift on {0,1}",
        )
        .expect("well-formed")
    }

    pub fn vertices(&self) -> &[VertexLabel] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = provenance.into();
        self
    }

    pub fn out_edges(&self, v: usize) -> &[(u8, usize)] {
        &self.out[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    /// Target of the first out-edge of `v` labeled `label`.
    pub fn successor(&self, v: usize, label: u8) -> Option<usize> {
        self.out[v]
            .iter()
            .find(|&&(l, _)| l == label)
            .map(|&(_, t)| t)
    }

    /// Vertex index of a carry label, by linear scan.
    pub fn find_vertex(&self, carries: &[u64]) -> Option<usize> {
        self.vertices.iter().position(|v| v.carries == carries)
    }

    pub fn check_right_resolving(&self) -> Result<()> {
        for (v, list) in self.out.iter().enumerate() {
            if let Some(w) = list.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(Error::NotRightResolving {
                    vertex: v,
                    label: w[0].0,
                });
            }
        }
        Ok(())
    }

    pub fn is_right_resolving(&self) -> bool {
        self.check_right_resolving().is_ok()
    }

    pub fn check_essential(&self) -> Result<()> {
        match self.out.iter().position(|l| l.is_empty()) {
            Some(v) => Err(Error::NotEssential(v)),
            None => Ok(()),
        }
    }

    pub fn is_essential(&self) -> bool {
        self.check_essential().is_ok()
    }

    /// Reachability from the start vertex.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![self.start];
        seen[self.start] = true;
        while let Some(v) = stack.pop() {
            for &(_, t) in &self.out[v] {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    pub fn is_reachable(&self) -> bool {
        self.reachable().into_iter().all(|r| r)
    }

    /// Keeps the vertices with `keep[v]`, renumbered in their original order.
    fn restrict(&self, keep: &[bool]) -> Self {
        let mut index = vec![usize::MAX; self.vertex_count()];
        let mut vertices = Vec::new();
        for (v, label) in self.vertices.iter().enumerate() {
            if keep[v] {
                index[v] = vertices.len();
                vertices.push(label.clone());
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| keep[e.from] && keep[e.to])
            .map(|e| Edge {
                from: index[e.from],
                to: index[e.to],
                label: e.label,
            })
            .collect();
        Self::new(vertices, edges, index[self.start], self.provenance.clone())
            .expect("restriction of a valid graph")
    }
}

/// Carry automaton for a single multiplier.
pub fn build_single(m: &Multiplier) -> Result<PointedLabeledGraph> {
    build_single_with(m, &BuildOptions::default())
}

pub fn build_single_with(m: &Multiplier, opts: &BuildOptions) -> Result<PointedLabeledGraph> {
    if m.residue() == 2 {
        return Ok(
            PointedLabeledGraph::trivial(1).with_provenance(format!("C(1,{m}) = {{0}}: residue 2"))
        );
    }
    let graph = carry_closure(&[m.to_u64()?], opts)?;
    Ok(graph.with_provenance(format!("C(1,{m}) carry automaton")))
}

/// Breadth-first closure of the carry-vector automaton from the zero vector.
/// Every multiplier must be `≡ 1 (mod 3)`. Labels are explored in order 0, 1.
fn carry_closure(ms: &[u64], opts: &BuildOptions) -> Result<PointedLabeledGraph> {
    let start = vec![0u64; ms.len()];
    let mut index: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut vertices = vec![start.clone()];
    index.insert(start, 0);
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        'labels: for a in 0u8..=1 {
            let mut next = Vec::with_capacity(ms.len());
            for (&n, &m) in vertices[v].iter().zip(ms) {
                if (u64::from(a) + n % 3) % 3 == 2 {
                    continue 'labels;
                }
                let carry = (u128::from(n) + u128::from(m) * u128::from(a)) / 3;
                next.push(carry as u64);
            }
            let to = match index.get(&next) {
                Some(&id) => id,
                None => {
                    if vertices.len() >= opts.max_vertices {
                        return Err(Error::LimitExceeded {
                            what: "carry automaton state count".into(),
                            limit: opts.max_vertices,
                        });
                    }
                    let id = vertices.len();
                    index.insert(next.clone(), id);
                    vertices.push(next);
                    queue.push_back(id);
                    id
                }
            };
            edges.push(Edge {
                from: v,
                to,
                label: a,
            });
        }
    }
    let vertices = vertices.into_iter().map(VertexLabel::new).collect();
    PointedLabeledGraph::new(vertices, edges, 0, "")
}

/// Reachable part of the label product, without trimming sinks.
pub fn label_product_reachable(
    g1: &PointedLabeledGraph,
    g2: &PointedLabeledGraph,
    opts: &BuildOptions,
) -> Result<PointedLabeledGraph> {
    let start = (g1.start(), g2.start());
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut pairs = vec![start];
    index.insert(start, 0);
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        let (u1, u2) = pairs[v];
        for &(label, t1) in g1.out_edges(u1) {
            for &(_, t2) in g2.out_edges(u2).iter().filter(|&&(l, _)| l == label) {
                let key = (t1, t2);
                let to = match index.get(&key) {
                    Some(&id) => id,
                    None => {
                        if pairs.len() >= opts.max_vertices {
                            return Err(Error::LimitExceeded {
                                what: "label product state count".into(),
                                limit: opts.max_vertices,
                            });
                        }
                        let id = pairs.len();
                        index.insert(key, id);
                        pairs.push(key);
                        queue.push_back(id);
                        id
                    }
                };
                edges.push(Edge { from: v, to, label });
            }
        }
    }
    let vertices = pairs
        .iter()
        .map(|&(a, b)| {
            let mut carries = g1.vertices()[a].carries.clone();
            carries.extend_from_slice(&g2.vertices()[b].carries);
            VertexLabel::new(carries)
        })
        .collect();
    PointedLabeledGraph::new(
        vertices,
        edges,
        0,
        format!("({}) * ({})", g1.provenance(), g2.provenance()),
    )
}

/// Label product restricted to pairs reachable from the start pair, trimmed.
pub fn label_product(
    g1: &PointedLabeledGraph,
    g2: &PointedLabeledGraph,
) -> Result<PointedLabeledGraph> {
    label_product_with(g1, g2, &BuildOptions::default())
}

pub fn label_product_with(
    g1: &PointedLabeledGraph,
    g2: &PointedLabeledGraph,
    opts: &BuildOptions,
) -> Result<PointedLabeledGraph> {
    Ok(trim_essential(&label_product_reachable(g1, g2, opts)?))
}

/// The effective multiplier set: sorted, duplicates and 1 removed.
enum Prepared {
    /// Every multiplier was 1.
    FullShift,
    /// Some multiplier has residue 2; the count is the number of effective multipliers.
    Trivial(usize),
    Multipliers(Vec<Multiplier>),
}

fn prepare(ms: &[Multiplier]) -> Result<Prepared> {
    if ms.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut sorted: Vec<Multiplier> = ms.iter().filter(|m| !m.is_one()).cloned().collect();
    sorted.sort_by(|a, b| a.value().cmp(b.value()));
    sorted.dedup_by(|a, b| a.value() == b.value());
    if sorted.is_empty() {
        return Ok(Prepared::FullShift);
    }
    if sorted.iter().any(|m| m.residue() == 2) {
        return Ok(Prepared::Trivial(sorted.len()));
    }
    Ok(Prepared::Multipliers(sorted))
}

fn set_name(ms: &[Multiplier]) -> String {
    let mut s = String::from("C(1");
    for m in ms {
        s.push(',');
        s.push_str(&m.to_string());
    }
    s.push(')');
    s
}

/// Left fold of the label product over the single-multiplier automata.
pub fn build_multi(ms: &[Multiplier]) -> Result<PointedLabeledGraph> {
    build_multi_with(ms, &BuildOptions::default())
}

pub fn build_multi_with(ms: &[Multiplier], opts: &BuildOptions) -> Result<PointedLabeledGraph> {
    fold_products(ms, opts, true)
}

/// Like [`build_multi`] but keeps every reachable product state, sinks included.
pub fn build_multi_untrimmed(
    ms: &[Multiplier],
    opts: &BuildOptions,
) -> Result<PointedLabeledGraph> {
    fold_products(ms, opts, false)
}

fn fold_products(
    ms: &[Multiplier],
    opts: &BuildOptions,
    trim: bool,
) -> Result<PointedLabeledGraph> {
    let ms = match prepare(ms)? {
        Prepared::FullShift => {
            return Ok(PointedLabeledGraph::full_shift().with_provenance("C(1) full shift"))
        }
        Prepared::Trivial(n) => {
            return Ok(PointedLabeledGraph::trivial(n)
                .with_provenance(format!("{} = {{0}}: residue 2", set_name(ms))))
        }
        Prepared::Multipliers(ms) => ms,
    };
    let mut acc = build_single_with(&ms[0], opts)?;
    for m in &ms[1..] {
        let g = build_single_with(m, opts)?;
        acc = label_product_reachable(&acc, &g, opts)?;
        if trim {
            acc = trim_essential(&acc);
        }
    }
    let how = if ms.len() == 1 {
        "carry automaton"
    } else {
        "label product"
    };
    Ok(acc.with_provenance(format!("{} {how}", set_name(&ms))))
}

/// Carry-vector automaton on all multipliers at once, trimmed.
pub fn build_multi_direct(ms: &[Multiplier]) -> Result<PointedLabeledGraph> {
    build_multi_direct_with(ms, &BuildOptions::default())
}

pub fn build_multi_direct_with(
    ms: &[Multiplier],
    opts: &BuildOptions,
) -> Result<PointedLabeledGraph> {
    let ms = match prepare(ms)? {
        Prepared::FullShift => {
            return Ok(PointedLabeledGraph::full_shift().with_provenance("C(1) full shift"))
        }
        Prepared::Trivial(n) => {
            return Ok(PointedLabeledGraph::trivial(n)
                .with_provenance(format!("{} = {{0}}: residue 2", set_name(ms))))
        }
        Prepared::Multipliers(ms) => ms,
    };
    let values = ms
        .iter()
        .map(Multiplier::to_u64)
        .collect::<Result<Vec<_>>>()?;
    let graph = trim_essential(&carry_closure(&values, opts)?);
    Ok(graph.with_provenance(format!("{} carry-vector automaton", set_name(&ms))))
}

/// Repeatedly deletes sinks (never the start vertex), then drops vertices no
/// longer reachable from the start.
pub fn trim_essential(g: &PointedLabeledGraph) -> PointedLabeledGraph {
    let n = g.vertex_count();
    let mut out_degree: Vec<usize> = (0..n).map(|v| g.out_degree(v)).collect();
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in g.edges() {
        preds[e.to].push(e.from);
    }
    let mut keep = vec![true; n];
    let mut stack: Vec<usize> = (0..n)
        .filter(|&v| out_degree[v] == 0 && v != g.start())
        .collect();
    while let Some(v) = stack.pop() {
        if !keep[v] {
            continue;
        }
        keep[v] = false;
        for &p in &preds[v] {
            if keep[p] {
                out_degree[p] -= 1;
                if out_degree[p] == 0 && p != g.start() {
                    stack.push(p);
                }
            }
        }
    }
    if keep.iter().all(|&k| k) && g.is_reachable() {
        return g.clone();
    }
    let pruned = g.restrict(&keep);
    let reach = pruned.reachable();
    if reach.iter().all(|&r| r) {
        pruned
    } else {
        pruned.restrict(&reach)
    }
}

/// Number of paths of length `n` from the start vertex; for a right-resolving
/// graph this is the number of distinct length-`n` words of the path set.
pub fn count_paths(g: &PointedLabeledGraph, n: usize) -> Result<BigUint> {
    g.check_right_resolving()?;
    let mut counts = vec![BigUint::default(); g.vertex_count()];
    counts[g.start()] = BigUint::one();
    for _ in 0..n {
        let mut next = vec![BigUint::default(); g.vertex_count()];
        for e in g.edges() {
            if counts[e.from].bits() > 0 {
                next[e.to] += &counts[e.from];
            }
        }
        counts = next;
    }
    Ok(counts.into_iter().sum())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub right_resolving: bool,
    pub reachable: bool,
    pub essential: bool,
    pub vertex_count: usize,
    pub edge_count: usize,
    /// `vertex_count ≤ Π (1 + ⌊M_i/2⌋)`.
    pub vertex_bound_ok: bool,
}

impl ValidationReport {
    pub fn all_ok(&self) -> bool {
        self.right_resolving && self.reachable && self.essential && self.vertex_bound_ok
    }
}

pub fn vertex_bound(ms: &[Multiplier]) -> BigUint {
    ms.iter()
        .map(|m| m.carry_bound() + 1u8)
        .fold(BigUint::one(), |acc, f| acc * f)
}

pub fn validate(g: &PointedLabeledGraph, ms: &[Multiplier]) -> ValidationReport {
    ValidationReport {
        right_resolving: g.is_right_resolving(),
        reachable: g.is_reachable(),
        essential: g.is_essential(),
        vertex_count: g.vertex_count(),
        edge_count: g.edge_count(),
        vertex_bound_ok: BigUint::from(g.vertex_count()) <= vertex_bound(ms),
    }
}
