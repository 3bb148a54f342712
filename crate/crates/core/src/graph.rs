//! Labeled simple graphs on vertices `1..=n`, generators, induced subgraphs,
//! independent-set enumeration, and the edge-list / graph6 text formats.
//!
//! Every public interface speaks 1-based vertex labels.

use std::fmt;

use log::warn;

use crate::error::{Error, Result};

/// A simple undirected graph on the vertices `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    /// Row-major `n * n` adjacency matrix, 0-based.
    adj: Vec<bool>,
}

/// A sorted set of 1-based vertex labels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        VertexSet(vertices)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        VertexSet::new(v)
    }
}

impl Graph {
    /// Graph with `n` vertices and no edges. `n = 0` is allowed here (parsers
    /// may produce it); the `make_*` generators require `n >= 1`.
    pub fn with_vertices(n: usize) -> Self {
        Graph {
            n,
            adj: vec![false; n * n],
        }
    }

    /// Builds a graph from 1-based edges. Rejects loops and out-of-range
    /// endpoints; repeated edges are collapsed silently.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::with_vertices(n);
        for &(u, v) in edges {
            g.check_edge(u, v)?;
            g.set(u, v, true);
        }
        Ok(g)
    }

    fn check_edge(&self, u: usize, v: usize) -> Result<()> {
        if u == 0 || v == 0 || u > self.n || v > self.n {
            return Err(Error::invalid(format!("edge {{{u},{v}}} out of range 1..={}", self.n)));
        }
        if u == v {
            return Err(Error::invalid(format!("self-loop at vertex {u}")));
        }
        Ok(())
    }

    fn set(&mut self, u: usize, v: usize, on: bool) {
        let (a, b) = (u - 1, v - 1);
        self.adj[a * self.n + b] = on;
        self.adj[b * self.n + a] = on;
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_edge(u, v)?;
        self.set(u, v, true);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&b| b).count() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u >= 1 && v >= 1 && u <= self.n && v <= self.n && self.adj[(u - 1) * self.n + (v - 1)]
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (1..=self.n).filter(|&u| self.has_edge(v, u)).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        (1..=self.n).filter(|&u| self.has_edge(v, u)).count()
    }

    /// Subgraph induced by `subset`, relabeled `1..=|subset|` in increasing
    /// order of the original labels.
    pub fn induced_subgraph(&self, subset: &VertexSet) -> Result<Graph> {
        if let Some(&bad) = subset.as_slice().iter().find(|&&v| v == 0 || v > self.n) {
            return Err(Error::invalid(format!("vertex {bad} out of range 1..={}", self.n)));
        }
        let vs = subset.as_slice();
        let mut g = Graph::with_vertices(vs.len());
        for (a, &u) in vs.iter().enumerate() {
            for (b, &v) in vs.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.set(a + 1, b + 1, true);
                }
            }
        }
        Ok(g)
    }

    /// Relabels vertices: `order[k]` (1-based) becomes the new vertex `k + 1`.
    pub fn relabel(&self, order: &[usize]) -> Result<Graph> {
        check_permutation(order, self.n)?;
        let mut g = Graph::with_vertices(self.n);
        for (a, &u) in order.iter().enumerate() {
            for (b, &v) in order.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.set(a + 1, b + 1, true);
                }
            }
        }
        Ok(g)
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(a, &u)| set[a + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(a, &u)| set[a + 1..].iter().all(|&v| self.has_edge(u, v)))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

pub(crate) fn check_permutation(order: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n + 1];
    if order.len() != n {
        return Err(Error::invalid(format!(
            "ordering has {} entries, expected {n}",
            order.len()
        )));
    }
    for &v in order {
        if v == 0 || v > n || seen[v] {
            return Err(Error::invalid(format!("ordering is not a permutation of 1..={n}")));
        }
        seen[v] = true;
    }
    Ok(())
}

pub fn make_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid(format!("cycle needs n >= 3, got {n}")));
    }
    let mut g = Graph::with_vertices(n);
    for i in 1..=n {
        g.set(i, i % n + 1, true);
    }
    Ok(g)
}

pub fn make_path(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::invalid("path needs n >= 1"));
    }
    let mut g = Graph::with_vertices(n);
    for i in 1..n {
        g.set(i, i + 1, true);
    }
    Ok(g)
}

pub fn make_complete(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::invalid("complete graph needs n >= 1"));
    }
    let mut g = Graph::with_vertices(n);
    for i in 1..=n {
        for j in i + 1..=n {
            g.set(i, j, true);
        }
    }
    Ok(g)
}

pub fn make_empty(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::invalid("empty graph needs n >= 1"));
    }
    Ok(Graph::with_vertices(n))
}

/// All independent sets (including the empty set), ordered by size and then
/// lexicographically.
pub fn enumerate_independent_sets(g: &Graph) -> Vec<VertexSet> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut current = Vec::new();
    // blocked[v] counts chosen vertices adjacent to v
    let mut blocked = vec![0usize; n + 1];
    branch(g, 1, &mut current, &mut blocked, &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn branch(g: &Graph, v: usize, current: &mut Vec<usize>, blocked: &mut [usize], out: &mut Vec<VertexSet>) {
    if v > g.vertex_count() {
        out.push(VertexSet(current.clone()));
        return;
    }
    branch(g, v + 1, current, blocked, out);
    if blocked[v] == 0 {
        let nbrs = g.neighbors(v);
        current.push(v);
        for &u in &nbrs {
            blocked[u] += 1;
        }
        branch(g, v + 1, current, blocked, out);
        for &u in &nbrs {
            blocked[u] -= 1;
        }
        current.pop();
    }
}

/// Parses the edge-list format: the vertex count, then whitespace-separated
/// pairs `u v` of 1-based labels. `#` starts a comment.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut tokens = text.lines().enumerate().flat_map(|(lineno, line)| {
        let line = line.split('#').next().unwrap_or("");
        line.split_whitespace().map(move |t| (lineno + 1, t))
    });
    let (line, tok) = tokens.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing vertex count".into(),
    })?;
    let n: usize = tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("bad vertex count {tok:?}"),
    })?;
    let mut g = Graph::with_vertices(n);
    while let Some((line, a)) = tokens.next() {
        let Some((_, b)) = tokens.next() else {
            return Err(Error::Parse {
                line,
                msg: format!("dangling endpoint {a:?}"),
            });
        };
        let parse = |t: &str| -> Result<usize> {
            t.parse().map_err(|_| Error::Parse {
                line,
                msg: format!("malformed vertex {t:?}"),
            })
        };
        let (u, v) = (parse(a)?, parse(b)?);
        if u == v {
            return Err(Error::Parse {
                line,
                msg: format!("self-loop at vertex {u}"),
            });
        }
        if u == 0 || v == 0 || u > n || v > n {
            return Err(Error::Parse {
                line,
                msg: format!("vertex out of range 1..={n} in edge {u} {v}"),
            });
        }
        if g.has_edge(u, v) {
            warn!("line {line}: duplicate edge {{{u},{v}}} ignored");
        }
        g.set(u, v, true);
    }
    Ok(g)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("{}\n", g.vertex_count());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

/// Decodes one graph6 string (an optional `>>graph6<<` header is accepted).
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let s = text.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    let perr = |msg: String| Error::Parse { line: 1, msg };
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(perr(format!("byte {b} outside the graph6 range 63..=126")));
    }
    let six = |b: u8| (b - 63) as usize;
    let (n, body) = match bytes {
        [] => return Err(perr("empty graph6 string".into())),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(perr("truncated vertex count".into()));
            }
            let n = rest[..6].iter().fold(0usize, |acc, &b| (acc << 6) | six(b));
            (n, &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(perr("truncated vertex count".into()));
            }
            let n = rest[..3].iter().fold(0usize, |acc, &b| (acc << 6) | six(b));
            (n, &rest[3..])
        }
        [b, rest @ ..] => (six(*b), rest),
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if body.len() != need {
        return Err(perr(format!(
            "expected {need} data bytes for {n} vertices, found {}",
            body.len()
        )));
    }
    let mut g = Graph::with_vertices(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = six(body[k / 6]);
            if (byte >> (5 - k % 6)) & 1 == 1 {
                g.set(i + 1, j + 1, true);
            }
            k += 1;
        }
    }
    Ok(g)
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i + 1, j + 1) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push((acc << (6 - k % 6)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Picks the format by content: a leading integer token means edge list.
pub fn parse_graph_auto(text: &str) -> Result<Graph> {
    let first = text.split_whitespace().next().unwrap_or("");
    if !first.is_empty() && first.bytes().all(|b| b.is_ascii_digit()) {
        parse_edge_list(text)
    } else {
        parse_graph6(text)
    }
}

/// All `2^(n(n-1)/2)` labeled graphs on `n` vertices, indexed by edge bitmask
/// over the pairs `(i, j)`, `i < j`, in lexicographic order.
pub fn all_labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    let total = 1u64 << pairs.len();
    (0..total).map(move |mask| {
        let mut g = Graph::with_vertices(n);
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                g.set(i, j, true);
            }
        }
        g
    })
}

/// One representative per isomorphism class of graphs on `n` vertices
/// (brute force over permutations; intended for `n <= 6`).
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    let perms = permutations(n);
    let mut seen = std::collections::BTreeSet::new();
    let mut reps = Vec::new();
    for g in all_labeled_graphs(n) {
        let canon = perms
            .iter()
            .map(|p| {
                let h = g.relabel(p).expect("valid permutation");
                to_graph6(&h)
            })
            .min()
            .unwrap_or_default();
        if seen.insert(canon) {
            reps.push(g);
        }
    }
    reps
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    heap_permute(n, &mut cur, &mut out);
    out
}

fn heap_permute(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(a.clone());
        return;
    }
    for i in 0..k - 1 {
        heap_permute(k - 1, a, out);
        if k.is_multiple_of(2) {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
    heap_permute(k - 1, a, out);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wheel5() -> Graph {
        Graph::from_edges(5, &[(1, 2), (2, 3), (3, 4), (1, 4), (1, 5), (2, 5), (3, 5), (4, 5)]).unwrap()
    }

    #[test]
    fn generators() {
        assert_eq!(make_cycle(3).unwrap().edges(), vec![(1, 2), (1, 3), (2, 3)]);
        assert_eq!(make_cycle(4).unwrap().edges(), vec![(1, 2), (1, 4), (2, 3), (3, 4)]);
        let c5 = make_cycle(5).unwrap();
        assert_eq!(c5.edge_count(), 5);
        assert!((1..=5).all(|v| c5.degree(v) == 2));
        assert!(make_cycle(2).is_err());

        assert_eq!(make_path(1).unwrap().edge_count(), 0);
        assert_eq!(make_path(2).unwrap().edges(), vec![(1, 2)]);
        assert_eq!(make_path(4).unwrap().edges(), vec![(1, 2), (2, 3), (3, 4)]);
        assert!(make_path(0).is_err());

        assert_eq!(make_complete(2).unwrap().edges(), vec![(1, 2)]);
        assert_eq!(make_complete(4).unwrap().edge_count(), 6);
        assert_eq!(make_empty(3).unwrap().edge_count(), 0);
        assert!(make_complete(0).is_err());
        assert!(make_empty(0).is_err());
    }

    #[test]
    fn induced() {
        let c4 = wheel5().induced_subgraph(&VertexSet::new(vec![1, 2, 3, 4])).unwrap();
        assert_eq!(c4, make_cycle(4).unwrap());

        let g = wheel5();
        let all = VertexSet::new((1..=5).collect());
        assert_eq!(g.induced_subgraph(&all).unwrap(), g);

        let p3 = make_cycle(5)
            .unwrap()
            .induced_subgraph(&VertexSet::new(vec![1, 2, 3]))
            .unwrap();
        assert_eq!(p3, make_path(3).unwrap());

        assert!(g.induced_subgraph(&VertexSet::new(vec![0, 1])).is_err());
        assert!(g.induced_subgraph(&VertexSet::new(vec![6])).is_err());
    }

    #[test]
    fn independent_sets() {
        let k3 = enumerate_independent_sets(&make_complete(3).unwrap());
        let want: Vec<VertexSet> = vec![vec![], vec![1], vec![2], vec![3]]
            .into_iter()
            .map(VertexSet::new)
            .collect();
        assert_eq!(k3, want);

        let l3 = enumerate_independent_sets(&make_path(3).unwrap());
        let want: Vec<VertexSet> = vec![vec![], vec![1], vec![2], vec![3], vec![1, 3]]
            .into_iter()
            .map(VertexSet::new)
            .collect();
        assert_eq!(l3, want);

        // brute force over all 16 subsets of C_4
        let c4 = make_cycle(4).unwrap();
        let brute: Vec<Vec<usize>> = (0u32..16)
            .map(|mask| (1..=4).filter(|v| mask >> (v - 1) & 1 == 1).collect())
            .filter(|s: &Vec<usize>| c4.is_independent(s))
            .collect();
        assert_eq!(brute.len(), 7);
        let sets = enumerate_independent_sets(&c4);
        assert_eq!(sets.len(), 7);
        assert!(sets.contains(&VertexSet::new(vec![1, 3])));
        assert!(sets.contains(&VertexSet::new(vec![2, 4])));
    }

    #[test]
    fn edge_list_parsing() {
        let g = parse_edge_list("4\n1 2\n2 3\n3 4\n1 4").unwrap();
        assert_eq!(g, make_cycle(4).unwrap());
        assert_eq!(parse_edge_list("2\n1 2").unwrap(), make_complete(2).unwrap());
        assert_eq!(
            parse_edge_list("3 # triangle\n1 2\n2 3\n3 1\n2 1").unwrap(),
            make_complete(3).unwrap()
        );
        assert!(matches!(parse_edge_list("3\n1 1"), Err(Error::Parse { line: 2, .. })));
        assert!(parse_edge_list("3\n1 4").is_err());
        assert!(parse_edge_list("3\n1 x").is_err());
        assert!(parse_edge_list("3\n1").is_err());
        assert!(parse_edge_list("").is_err());
    }

    #[test]
    fn graph6_parsing() {
        assert_eq!(parse_graph6("C~").unwrap(), make_complete(4).unwrap());
        assert_eq!(to_graph6(&make_complete(4).unwrap()), "C~");
        assert_eq!(parse_graph6(">>graph6<<C~\n").unwrap(), make_complete(4).unwrap());
        // C_5 = "Dhc" in the standard tables
        assert_eq!(parse_graph6("Dhc").unwrap(), make_cycle(5).unwrap());
        assert!(parse_graph6("C~~").is_err());
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("C\x01").is_err());

        let big = make_cycle(70).unwrap();
        assert_eq!(parse_graph6(&to_graph6(&big)).unwrap(), big);
    }

    #[test]
    fn isomorphism_class_counts() {
        // OEIS A000088
        let counts: Vec<usize> = (1..=5).map(|n| nonisomorphic_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34]);
    }
}
