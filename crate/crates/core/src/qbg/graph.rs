use std::collections::VecDeque;

use super::{edge_weight, QExponent, QbgEdge};
use crate::error::{Error, Result};
use crate::perm::{is_reflection_ordering, Permutation, Root};

/// Largest `n` for which the full graph is materialized (7! = 5040 vertices).
pub const MAX_GRAPH_N: usize = 7;

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct Arc {
    pub(crate) target: usize,
    pub(crate) root: Root,
    pub(crate) weight: QExponent,
}

/// `Gamma_n` with vertices indexed by lexicographic rank.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuantumBruhatGraph {
    n: usize,
    vertices: Vec<Permutation>,
    out: Vec<Vec<Arc>>,
    into: Vec<Vec<usize>>,
}

impl QuantumBruhatGraph {
    pub fn build(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_GRAPH_N {
            return Err(Error::ResourceLimit(format!(
                "graph construction supports 1 <= n <= {MAX_GRAPH_N}, got {n}"
            )));
        }
        let vertices = Permutation::all(n);
        let roots = Root::all(n);
        let mut out = Vec::with_capacity(vertices.len());
        for w in &vertices {
            let arcs = roots
                .iter()
                .filter_map(|&t| {
                    edge_weight(w, t).map(|weight| Arc {
                        target: w.apply_transposition(t).lex_rank(),
                        root: t,
                        weight,
                    })
                })
                .collect();
            out.push(arcs);
        }
        Ok(Self::from_arcs(n, vertices, out))
    }

    pub(crate) fn from_arcs(n: usize, vertices: Vec<Permutation>, out: Vec<Vec<Arc>>) -> Self {
        let mut into = vec![Vec::new(); vertices.len()];
        for (s, arcs) in out.iter().enumerate() {
            for a in arcs {
                into[a.target].push(s);
            }
        }
        QuantumBruhatGraph {
            n,
            vertices,
            out,
            into,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Permutation] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn index(&self, w: &Permutation) -> Result<usize> {
        if w.n() != self.n {
            return Err(Error::SizeMismatch(format!(
                "{w} has size {}, graph has n = {}",
                w.n(),
                self.n
            )));
        }
        Ok(w.lex_rank())
    }

    fn edge(&self, s: usize, a: &Arc) -> QbgEdge {
        QbgEdge {
            source: self.vertices[s].clone(),
            target: self.vertices[a.target].clone(),
            root: a.root,
            weight: a.weight.clone(),
        }
    }

    pub fn out_edges(&self, w: &Permutation) -> Result<Vec<QbgEdge>> {
        let s = self.index(w)?;
        Ok(self.out[s].iter().map(|a| self.edge(s, a)).collect())
    }

    /// Every edge, grouped by source in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = QbgEdge> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(move |(s, arcs)| arcs.iter().map(move |a| self.edge(s, a)))
    }

    pub fn has_edge(&self, u: &Permutation, v: &Permutation) -> bool {
        let (Ok(s), Ok(t)) = (self.index(u), self.index(v)) else {
            return false;
        };
        self.out[s].iter().any(|a| a.target == t)
    }

    /// Unweighted distances from `u` to every vertex.
    pub fn distances_from(&self, u: &Permutation) -> Result<Vec<usize>> {
        let s = self.index(u)?;
        Ok(self.bfs(s, |x| self.out[x].iter().map(|a| a.target).collect()))
    }

    /// Unweighted distances from every vertex to `v`.
    pub fn distances_to(&self, v: &Permutation) -> Result<Vec<usize>> {
        let t = self.index(v)?;
        Ok(self.bfs(t, |x| self.into[x].clone()))
    }

    fn bfs(&self, start: usize, next: impl Fn(usize) -> Vec<usize>) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertices.len()];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for y in next(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// `l(u, v)` by breadth-first search.
    pub fn distance(&self, u: &Permutation, v: &Permutation) -> Result<usize> {
        let d = self.distances_from(u)?;
        Ok(d[self.index(v)?])
    }

    /// Lexicographically least shortest path: at every step, the smallest successor (in
    /// one-line order) that is still on a geodesic.
    pub fn oracle_path(&self, u: &Permutation, v: &Permutation) -> Result<Vec<QbgEdge>> {
        let to_v = self.distances_to(v)?;
        let t = self.index(v)?;
        let mut cur = self.index(u)?;
        let mut path = Vec::with_capacity(to_v[cur]);
        while cur != t {
            let arc = self.out[cur]
                .iter()
                .filter(|a| to_v[a.target] + 1 == to_v[cur])
                .min_by_key(|a| a.target)
                .ok_or_else(|| Error::Internal(format!("{v} unreachable")))?;
            path.push(self.edge(cur, arc));
            cur = arc.target;
        }
        Ok(path)
    }

    /// `(l(u, v), weight of the representative shortest path)`.
    pub fn oracle_distance(&self, u: &Permutation, v: &Permutation) -> Result<(usize, QExponent)> {
        let path = self.oracle_path(u, v)?;
        Ok((path.len(), super::path_weight(&path, self.n)))
    }

    /// Every shortest path from `u` to `v`.
    pub fn shortest_paths(&self, u: &Permutation, v: &Permutation) -> Result<Vec<Vec<QbgEdge>>> {
        let to_v = self.distances_to(v)?;
        let t = self.index(v)?;
        let mut out = Vec::new();
        let mut stack = Vec::new();
        self.geodesics(self.index(u)?, t, &to_v, &mut stack, &mut out);
        Ok(out)
    }

    fn geodesics(
        &self,
        cur: usize,
        t: usize,
        to_v: &[usize],
        stack: &mut Vec<QbgEdge>,
        out: &mut Vec<Vec<QbgEdge>>,
    ) {
        if cur == t {
            out.push(stack.clone());
            return;
        }
        for a in &self.out[cur] {
            if to_v[a.target] + 1 == to_v[cur] {
                stack.push(self.edge(cur, a));
                self.geodesics(a.target, t, to_v, stack, out);
                stack.pop();
            }
        }
    }

    /// `(length, weight)` of every walk from `u` to `v` with at most `max_len` edges.
    pub fn walks_up_to(
        &self,
        u: &Permutation,
        v: &Permutation,
        max_len: usize,
    ) -> Result<Vec<(usize, QExponent)>> {
        let to_v = self.distances_to(v)?;
        let t = self.index(v)?;
        let mut out = Vec::new();
        let mut weight = QExponent::zero(self.n);
        self.walks(self.index(u)?, t, 0, max_len, &to_v, &mut weight, &mut out);
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn walks(
        &self,
        cur: usize,
        t: usize,
        len: usize,
        max_len: usize,
        to_v: &[usize],
        weight: &mut QExponent,
        out: &mut Vec<(usize, QExponent)>,
    ) {
        if cur == t {
            out.push((len, weight.clone()));
        }
        if len == max_len {
            return;
        }
        for a in &self.out[cur] {
            if len + 1 + to_v[a.target] <= max_len {
                weight.add_assign(&a.weight);
                self.walks(a.target, t, len + 1, max_len, to_v, weight, out);
                for (x, y) in weight.0.iter_mut().zip(&a.weight.0) {
                    *x -= y;
                }
            }
        }
    }

    /// All paths from `u` to `v` whose labels strictly increase in `ordering`.
    pub fn increasing_paths(
        &self,
        u: &Permutation,
        v: &Permutation,
        ordering: &[Root],
    ) -> Result<Vec<Vec<QbgEdge>>> {
        is_reflection_ordering(ordering, self.n)?;
        let mut rank = std::collections::HashMap::new();
        for (k, r) in ordering.iter().enumerate() {
            rank.insert(*r, k);
        }
        let t = self.index(v)?;
        let mut out = Vec::new();
        let mut stack = Vec::new();
        self.increasing(self.index(u)?, t, None, &rank, &mut stack, &mut out);
        Ok(out)
    }

    fn increasing(
        &self,
        cur: usize,
        t: usize,
        last: Option<usize>,
        rank: &std::collections::HashMap<Root, usize>,
        stack: &mut Vec<QbgEdge>,
        out: &mut Vec<Vec<QbgEdge>>,
    ) {
        if cur == t {
            out.push(stack.clone());
        }
        for a in &self.out[cur] {
            let r = rank[&a.root];
            if last.is_none_or(|l| r > l) {
                stack.push(self.edge(cur, a));
                self.increasing(a.target, t, Some(r), rank, stack, out);
                stack.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{reduced_words_of_longest, reflection_ordering};

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn small_graphs() {
        let g = QuantumBruhatGraph::build(2).unwrap();
        assert_eq!(g.edge_count(), 2);
        let e = g.out_edges(&p("21")).unwrap();
        assert_eq!(e[0].target, p("12"));
        assert_eq!(e[0].weight.0, vec![1]);
        let g = QuantumBruhatGraph::build(3).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 15);
        assert_eq!(g.edges().filter(|e| !e.weight.is_zero()).count(), 7);
        assert!(matches!(
            QuantumBruhatGraph::build(8),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn oracle_examples() {
        let g = QuantumBruhatGraph::build(3).unwrap();
        let (l, w) = g.oracle_distance(&p("321"), &p("213")).unwrap();
        assert_eq!((l, w.0), (2, vec![1, 1]));
        assert_eq!(g.shortest_paths(&p("321"), &p("213")).unwrap().len(), 2);
        let (l, w) = g.oracle_distance(&p("132"), &p("132")).unwrap();
        assert_eq!(l, 0);
        assert!(w.is_zero());
        let g = QuantumBruhatGraph::build(7).unwrap();
        let (_, w) = g.oracle_distance(&p("7364152"), &p("2513746")).unwrap();
        assert_eq!(w.0, vec![1, 1, 2, 2, 1, 1]);
    }

    #[test]
    fn increasing_paths_unique_n3() {
        let g = QuantumBruhatGraph::build(3).unwrap();
        for word in reduced_words_of_longest(3) {
            let ord = reflection_ordering(&word, 3).unwrap();
            for u in g.vertices() {
                for v in g.vertices() {
                    let paths = g.increasing_paths(u, v, &ord).unwrap();
                    assert_eq!(paths.len(), 1, "{u} -> {v} under {word:?}");
                    assert_eq!(paths[0].len(), g.distance(u, v).unwrap());
                }
            }
        }
        let bad = vec![
            Root { i: 1, j: 3 },
            Root { i: 1, j: 2 },
            Root { i: 2, j: 3 },
        ];
        assert!(g.increasing_paths(&p("123"), &p("321"), &bad).is_err());
    }
}
