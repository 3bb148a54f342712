//! Chordality via maximum cardinality search, perfect elimination orderings,
//! chordless-cycle witnesses, and the upper-triangular matrix of a labeled
//! graph.
//!
//! Orderings follow the "reverse" convention: in `v_1, ..., v_n` the
//! neighbors of `v_k` among `v_1..v_{k-1}` form a clique. This is exactly the
//! visit order of maximum cardinality search on a chordal graph.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{check_permutation, Graph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeoResult {
    /// A perfect elimination ordering `v_1, ..., v_n` (1-based labels).
    Ordering(Vec<usize>),
    /// Vertices of an induced chordless cycle of length >= 4, in cyclic order.
    Witness(Vec<usize>),
}

impl PeoResult {
    pub fn ordering(&self) -> Option<&[usize]> {
        match self {
            PeoResult::Ordering(o) => Some(o),
            PeoResult::Witness(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&[usize]> {
        match self {
            PeoResult::Ordering(_) => None,
            PeoResult::Witness(w) => Some(w),
        }
    }
}

/// Square integer matrix, indexed from 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::ShapeMismatch(format!(
                "matrix is not square: {n} rows but a row of length {}",
                r.len()
            )));
        }
        Ok(IntMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Whitespace-separated integers, one row per non-empty line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<i64>().map_err(|_| Error::Parse {
                        line: lineno + 1,
                        msg: format!("bad matrix entry {t:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Self::from_rows(rows)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data
            .chunks(self.n.max(1))
            .map(<[i64]>::to_vec)
            .take(self.n)
            .collect()
    }

    pub fn is_unit_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i) == 1 && (0..i).all(|j| self.get(i, j) == 0))
    }

    /// Drops the last row and column.
    pub fn leading_minor(&self) -> IntMatrix {
        let m = self.n.saturating_sub(1);
        let mut out = IntMatrix::zeros(m);
        for i in 0..m {
            for j in 0..m {
                out.set(i, j, self.get(i, j));
            }
        }
        out
    }

    /// `a_{i,j} = 1` iff `j = i` or `j = i - 1 (mod n)`.
    pub fn cyclic(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, 1);
            m.set(i, (i + n - 1) % n, 1);
        }
        m
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{:?}", self.rows())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(i64::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Maximum cardinality search; ties go to the lowest label.
pub fn maximum_cardinality_search(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut weight = vec![0usize; n + 1];
    let mut visited = vec![false; n + 1];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (1..=n)
            .filter(|&v| !visited[v])
            .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
            .expect("unvisited vertex remains");
        visited[v] = true;
        order.push(v);
        for u in g.neighbors(v) {
            if !visited[u] {
                weight[u] += 1;
            }
        }
    }
    order
}

/// First position whose earlier neighbors are not a clique, with two
/// non-adjacent earlier neighbors.
fn first_violation(g: &Graph, ordering: &[usize]) -> Option<(usize, Vec<usize>)> {
    let mut pos = vec![0usize; g.vertex_count() + 1];
    for (k, &v) in ordering.iter().enumerate() {
        pos[v] = k;
    }
    for (k, &v) in ordering.iter().enumerate() {
        let prior: Vec<usize> = g.neighbors(v).into_iter().filter(|&u| pos[u] < k).collect();
        if !g.is_clique(&prior) {
            return Some((k, prior));
        }
    }
    None
}

pub fn verify_peo(g: &Graph, ordering: &[usize]) -> Result<bool> {
    check_permutation(ordering, g.vertex_count())?;
    Ok(first_violation(g, ordering).is_none())
}

pub fn find_peo(g: &Graph) -> PeoResult {
    let order = maximum_cardinality_search(g);
    match first_violation(g, &order) {
        None => PeoResult::Ordering(order),
        Some((k, prior)) => {
            let v = order[k];
            let cycle = extract_cycle(g, v, &prior)
                .or_else(|| find_chordless_cycle(g))
                .expect("a graph without a perfect elimination ordering has a chordless cycle");
            PeoResult::Witness(normalize_cycle(cycle))
        }
    }
}

pub fn is_chordal(g: &Graph) -> bool {
    matches!(find_peo(g), PeoResult::Ordering(_))
}

/// Tries every non-adjacent pair `a, b` of earlier neighbors of `v` and looks
/// for a shortest `a`-`b` path that avoids `v` and its other neighbors.
fn extract_cycle(g: &Graph, v: usize, prior: &[usize]) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    for (i, &a) in prior.iter().enumerate() {
        for &b in &prior[i + 1..] {
            if g.has_edge(a, b) {
                continue;
            }
            let mut forbidden = vec![false; n + 1];
            forbidden[v] = true;
            for u in g.neighbors(v) {
                forbidden[u] = u != a && u != b;
            }
            if let Some(path) = shortest_path(g, a, b, &forbidden) {
                let mut cycle = vec![v];
                cycle.extend(path);
                if is_chordless_cycle(g, &cycle) {
                    return Some(cycle);
                }
            }
        }
    }
    None
}

fn shortest_path(g: &Graph, from: usize, to: usize, forbidden: &[bool]) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut parent = vec![0usize; n + 1];
    let mut seen = vec![false; n + 1];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(u) = queue.pop_front() {
        if u == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for w in g.neighbors(u) {
            if !seen[w] && !forbidden[w] {
                seen[w] = true;
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Rotates so the smallest label comes first, then walks toward its smaller
/// cycle neighbor.
fn normalize_cycle(mut cycle: Vec<usize>) -> Vec<usize> {
    let start = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap_or(0);
    cycle.rotate_left(start);
    if cycle.len() > 2 && cycle[cycle.len() - 1] < cycle[1] {
        cycle[1..].reverse();
    }
    cycle
}

/// Checks that `cycle` (in cyclic order) induces a cycle of length >= 4.
pub fn is_chordless_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 4 || VertexSet::new(cycle.to_vec()).len() != k {
        return false;
    }
    (0..k).all(|i| {
        (i + 1..k).all(|j| {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            g.has_edge(cycle[i], cycle[j]) == consecutive
        })
    })
}

/// Exhaustive search for an induced cycle of length >= 4, smallest first.
/// Exponential; the fallback when path extraction fails.
pub fn find_chordless_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    for size in 4..=n {
        let mut subset: Vec<usize> = (1..=size).collect();
        loop {
            if let Some(c) = as_cycle(g, &subset) {
                return Some(c);
            }
            // next combination
            let mut i = size;
            while i > 0 && subset[i - 1] == n - size + i {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            subset[i - 1] += 1;
            for j in i..size {
                subset[j] = subset[j - 1] + 1;
            }
        }
    }
    None
}

fn as_cycle(g: &Graph, set: &[usize]) -> Option<Vec<usize>> {
    let deg = |v: usize| set.iter().filter(|&&u| g.has_edge(u, v)).count();
    if set.iter().any(|&v| deg(v) != 2) {
        return None;
    }
    let mut cycle = vec![set[0]];
    let mut prev = 0;
    let mut cur = set[0];
    loop {
        let next = *set.iter().find(|&&u| u != prev && g.has_edge(cur, u))?;
        if next == set[0] {
            break;
        }
        cycle.push(next);
        prev = cur;
        cur = next;
    }
    (cycle.len() == set.len()).then_some(cycle)
}

/// `a_{ii} = 1`, `a_{ij} = 1` for `i < j` adjacent, else 0, in the graph's
/// current labeling.
pub fn nahm_matrix(g: &Graph) -> IntMatrix {
    let n = g.vertex_count();
    let mut a = IntMatrix::identity(n);
    for (i, j) in g.edges() {
        a.set(i - 1, j - 1, 1);
    }
    a
}

/// A perfect elimination ordering for `g`, preferring the identity when it
/// already is one. Errors if `g` is not chordal.
pub fn peo_for(g: &Graph) -> Result<Vec<usize>> {
    let identity: Vec<usize> = (1..=g.vertex_count()).collect();
    if verify_peo(g, &identity)? {
        return Ok(identity);
    }
    match find_peo(g) {
        PeoResult::Ordering(o) => Ok(o),
        PeoResult::Witness(_) => Err(Error::NotChordal),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{all_labeled_graphs, make_complete, make_cycle, make_path};

    /// Figure graph: edges 12, 13, 24, 34, 23.
    fn figure() -> Graph {
        Graph::from_edges(4, &[(1, 2), (1, 3), (2, 4), (3, 4), (2, 3)]).unwrap()
    }

    fn wheel5() -> Graph {
        Graph::from_edges(5, &[(1, 2), (2, 3), (3, 4), (1, 4), (1, 5), (2, 5), (3, 5), (4, 5)]).unwrap()
    }

    #[test]
    fn figure_ordering() {
        assert!(verify_peo(&figure(), &[1, 2, 3, 4]).unwrap());
        let r = find_peo(&figure());
        assert!(verify_peo(&figure(), r.ordering().unwrap()).unwrap());
    }

    #[test]
    fn c4_has_no_ordering() {
        let c4 = make_cycle(4).unwrap();
        assert_eq!(find_peo(&c4), PeoResult::Witness(vec![1, 2, 3, 4]));
        for p in crate::graph::permutations(4) {
            assert!(!verify_peo(&c4, &p).unwrap());
        }
    }

    #[test]
    fn verify_rejects_non_permutations() {
        let l3 = make_path(3).unwrap();
        assert!(verify_peo(&l3, &[1, 2, 3]).unwrap());
        assert!(verify_peo(&l3, &[1, 2]).is_err());
        assert!(verify_peo(&l3, &[1, 1, 3]).is_err());
        assert!(verify_peo(&l3, &[1, 2, 4]).is_err());
    }

    #[test]
    fn examples() {
        assert!(!is_chordal(&wheel5()));
        let chorded = Graph::from_edges(4, &[(1, 2), (2, 3), (3, 4), (1, 4), (1, 3)]).unwrap();
        assert!(is_chordal(&chorded));
        for n in 1..=6 {
            let k = make_complete(n).unwrap();
            assert!(verify_peo(&k, find_peo(&k).ordering().unwrap()).unwrap());
            assert!(is_chordal(&make_path(n).unwrap()));
        }
        assert!(is_chordal(&make_cycle(3).unwrap()));
        for n in 4..=10 {
            let c = make_cycle(n).unwrap();
            let w = find_peo(&c);
            assert_eq!(w.witness().unwrap().len(), n);
        }
        // a star (tree)
        let star = Graph::from_edges(5, &[(1, 2), (1, 3), (1, 4), (1, 5)]).unwrap();
        assert!(is_chordal(&star));
    }

    #[test]
    fn five_vertex_graphs_agree_with_exhaustive_search() {
        for g in all_labeled_graphs(5) {
            let r = find_peo(&g);
            assert_eq!(r.ordering().is_some(), find_chordless_cycle(&g).is_none(), "{g:?}");
            match r {
                PeoResult::Ordering(o) => assert!(verify_peo(&g, &o).unwrap()),
                PeoResult::Witness(w) => assert!(is_chordless_cycle(&g, &w)),
            }
        }
    }

    #[test]
    fn matrices() {
        let k2 = nahm_matrix(&make_complete(2).unwrap());
        assert_eq!(k2.rows(), vec![vec![1, 1], vec![0, 1]]);
        let l3 = nahm_matrix(&make_path(3).unwrap());
        assert_eq!(l3.rows(), vec![vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]]);
        let f = nahm_matrix(&figure());
        assert_eq!(
            f.rows(),
            vec![vec![1, 1, 1, 0], vec![0, 1, 1, 1], vec![0, 0, 1, 1], vec![0, 0, 0, 1]]
        );
        assert!(f.is_unit_upper_triangular());
        assert!(!IntMatrix::cyclic(3).is_unit_upper_triangular());
        assert_eq!(
            IntMatrix::cyclic(3).rows(),
            vec![vec![1, 0, 1], vec![1, 1, 0], vec![0, 1, 1]]
        );
        assert_eq!(f.leading_minor().size(), 3);
    }

    #[test]
    fn matrix_parsing() {
        let m = IntMatrix::parse("0 1\n1 0\n").unwrap();
        assert_eq!(m.rows(), vec![vec![0, 1], vec![1, 0]]);
        assert!(IntMatrix::parse("1 2 3\n4 5 6").is_err());
        assert!(IntMatrix::parse("1 x\n0 1").is_err());
    }
}
