//! The tilted Bruhat order `D_u` and its intervals.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::format::{dot_escape, Format};
use crate::latticepath::valid_shifts;
use crate::perm::{check_same_n, Permutation};
use crate::qbg::{edge_weight, out_edges, path_length, QExponent, QuantumBruhatGraph};

/// `w <=_base v`: `l(base, w) + l(w, v) = l(base, v)`.
pub fn tilted_leq(
    g: &QuantumBruhatGraph,
    base: &Permutation,
    w: &Permutation,
    v: &Permutation,
) -> Result<bool> {
    let from_base = g.distances_from(base)?;
    let to_v = g.distances_to(v)?;
    let (wi, vi) = (g.index(w)?, g.index(v)?);
    Ok(from_base[wi] + to_v[wi] == from_base[vi])
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CriterionMode {
    /// For every `k` some shift orders `u[k] <= w[k] <= v[k]`.
    ExistsShift,
    /// For every `k` and every valid shift of `(u[k], v[k])`, `u[k] <= w[k] <= v[k]`.
    AllShifts,
}

/// Interval membership by prefix sets only (no graph).
pub fn interval_members_criterion(
    u: &Permutation,
    v: &Permutation,
    w: &Permutation,
    mode: CriterionMode,
) -> Result<bool> {
    let n = check_same_n(&[u, v, w])?;
    for k in 1..n {
        let (uk, vk, wk) = (u.prefix_set(k), v.prefix_set(k), w.prefix_set(k));
        let ok = match mode {
            CriterionMode::ExistsShift => {
                let lower = valid_shifts(uk, wk, n)?;
                let upper = valid_shifts(wk, vk, n)?;
                lower.iter().any(|r| upper.contains(r))
            }
            CriterionMode::AllShifts => {
                let lower = valid_shifts(uk, wk, n)?;
                let upper = valid_shifts(wk, vk, n)?;
                valid_shifts(uk, vk, n)?
                    .iter()
                    .all(|r| lower.contains(r) && upper.contains(r))
            }
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `w in [u, v]` without building a graph.
pub fn in_interval(u: &Permutation, v: &Permutation, w: &Permutation) -> Result<bool> {
    interval_members_criterion(u, v, w, CriterionMode::ExistsShift)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TiltedInterval {
    pub bottom: Permutation,
    pub top: Permutation,
    /// Member to its rank `l(bottom, member)`.
    pub members: BTreeMap<Permutation, usize>,
}

impl TiltedInterval {
    pub fn contains(&self, w: &Permutation) -> bool {
        self.members.contains_key(w)
    }

    pub fn rank(&self, w: &Permutation) -> Option<usize> {
        self.members.get(w).copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members ordered by rank, then one-line word.
    pub fn by_rank(&self) -> Vec<(Permutation, usize)> {
        let mut v: Vec<_> = self.members.iter().map(|(w, &r)| (w.clone(), r)).collect();
        v.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        v
    }

    pub fn hasse(&self) -> HasseDiagram {
        HasseDiagram::from_ranks(&self.members)
    }
}

/// `[u, v]` from breadth-first distances.
pub fn interval(
    g: &QuantumBruhatGraph,
    u: &Permutation,
    v: &Permutation,
) -> Result<TiltedInterval> {
    let from_u = g.distances_from(u)?;
    let to_v = g.distances_to(v)?;
    let total = from_u[g.index(v)?];
    let members = g
        .vertices()
        .iter()
        .enumerate()
        .filter(|&(k, _)| from_u[k] + to_v[k] == total)
        .map(|(k, w)| (w.clone(), from_u[k]))
        .collect();
    Ok(TiltedInterval {
        bottom: u.clone(),
        top: v.clone(),
        members,
    })
}

/// `[u, v]` by walking geodesics upward from `u` with the prefix criterion; ranks come from
/// greedy path lengths. Works past the graph bound.
pub fn interval_graph_free(u: &Permutation, v: &Permutation) -> Result<TiltedInterval> {
    check_same_n(&[u, v])?;
    let total = path_length(u, v)?;
    let mut members = BTreeMap::new();
    members.insert(u.clone(), 0);
    let mut layer = vec![u.clone()];
    for rank in 1..=total {
        let mut next = Vec::new();
        for w in &layer {
            for e in out_edges(w) {
                if members.contains_key(&e.target) || next.contains(&e.target) {
                    continue;
                }
                if path_length(u, &e.target)? == rank && in_interval(u, v, &e.target)? {
                    next.push(e.target);
                }
            }
        }
        for w in &next {
            members.insert(w.clone(), rank);
        }
        layer = next;
    }
    Ok(TiltedInterval {
        bottom: u.clone(),
        top: v.clone(),
        members,
    })
}

/// The whole order `D_u`: every permutation ranked by `l(u, w)`.
pub fn tilted_order(g: &QuantumBruhatGraph, u: &Permutation) -> Result<HasseDiagram> {
    let from_u = g.distances_from(u)?;
    let ranks: BTreeMap<_, _> = g
        .vertices()
        .iter()
        .cloned()
        .zip(from_u.iter().copied())
        .collect();
    Ok(HasseDiagram::from_ranks(&ranks))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HasseNode {
    pub perm: Permutation,
    pub rank: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HasseEdge {
    pub source: Permutation,
    pub target: Permutation,
    pub exps: QExponent,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HasseDiagram {
    pub nodes: Vec<HasseNode>,
    pub edges: Vec<HasseEdge>,
}

impl HasseDiagram {
    /// Covers are graph edges between members of consecutive rank.
    pub fn from_ranks(ranks: &BTreeMap<Permutation, usize>) -> Self {
        let mut nodes: Vec<HasseNode> = ranks
            .iter()
            .map(|(w, &rank)| HasseNode {
                perm: w.clone(),
                rank,
            })
            .collect();
        nodes.sort_by(|a, b| a.rank.cmp(&b.rank).then_with(|| a.perm.cmp(&b.perm)));
        let mut edges = Vec::new();
        for node in &nodes {
            for e in out_edges(&node.perm) {
                if ranks.get(&e.target) == Some(&(node.rank + 1)) {
                    debug_assert!(edge_weight(&node.perm, e.root).is_some());
                    edges.push(HasseEdge {
                        source: e.source,
                        target: e.target,
                        exps: e.weight,
                    });
                }
            }
        }
        HasseDiagram { nodes, edges }
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph hasse {\n  rankdir=BT;\n");
        let max_rank = self.nodes.iter().map(|n| n.rank).max().unwrap_or(0);
        for r in 0..=max_rank {
            let names: Vec<String> = self
                .nodes
                .iter()
                .filter(|n| n.rank == r)
                .map(|n| format!("\"{}\"", dot_escape(&n.perm.to_string())))
                .collect();
            if !names.is_empty() {
                let _ = writeln!(s, "  {{ rank=same; {}; }}", names.join("; "));
            }
        }
        for e in &self.edges {
            let m = e.exps.to_string();
            let _ = writeln!(
                s,
                "  \"{}\" -> \"{}\" [weight=\"{m}\", label=\"{m}\"];",
                dot_escape(&e.source.to_string()),
                dot_escape(&e.target.to_string())
            );
        }
        s.push_str("}\n");
        s
    }

    pub fn export(&self, format: Format) -> Result<String> {
        match format {
            Format::Dot => Ok(self.to_dot()),
            Format::Json => Ok(serde_json::to_string_pretty(self)?),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn tilted_order_from_132() {
        let g = QuantumBruhatGraph::build(3).unwrap();
        let d = tilted_order(&g, &p("132")).unwrap();
        let ranks: Vec<(String, usize)> = d
            .nodes
            .iter()
            .map(|n| (n.perm.to_string(), n.rank))
            .collect();
        assert_eq!(
            ranks,
            [
                ("132", 0),
                ("123", 1),
                ("231", 1),
                ("312", 1),
                ("213", 2),
                ("321", 2)
            ]
            .map(|(a, b)| (a.to_string(), b))
        );
        let mut edges: Vec<(String, String)> = d
            .edges
            .iter()
            .map(|e| (e.source.to_string(), e.target.to_string()))
            .collect();
        edges.sort();
        let mut want: Vec<(String, String)> = [
            ("132", "123"),
            ("132", "231"),
            ("132", "312"),
            ("123", "213"),
            ("231", "213"),
            ("231", "321"),
            ("312", "321"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
        want.sort();
        assert_eq!(edges, want);
        assert!(tilted_leq(&g, &p("132"), &p("231"), &p("321")).unwrap());
        // ordinary Bruhat order: both length-one elements sit below both length-two ones
        assert!(tilted_leq(&g, &p("123"), &p("213"), &p("231")).unwrap());
        assert!(!tilted_leq(&g, &p("123"), &p("213"), &p("132")).unwrap());
        assert!(!tilted_leq(&g, &p("123"), &p("132"), &p("213")).unwrap());
    }

    #[test]
    fn small_intervals() {
        let g = QuantumBruhatGraph::build(3).unwrap();
        let iv = interval(&g, &p("132"), &p("321")).unwrap();
        let names: Vec<String> = iv.by_rank().iter().map(|(w, _)| w.to_string()).collect();
        assert_eq!(names, ["132", "231", "312", "321"]);
        assert_eq!(iv.hasse().edges.len(), 4);
        assert_eq!(interval(&g, &p("213"), &p("213")).unwrap().len(), 1);
        assert_eq!(interval(&g, &p("123"), &p("321")).unwrap().len(), 6);
        assert_eq!(interval_graph_free(&p("132"), &p("321")).unwrap(), iv);
    }

    #[test]
    fn criterion_examples() {
        use CriterionMode::*;
        let (u, v, x) = (p("263145"), p("465123"), p("265143"));
        for mode in [ExistsShift, AllShifts] {
            assert!(interval_members_criterion(&u, &v, &x, mode).unwrap());
            assert!(interval_members_criterion(&u, &v, &u, mode).unwrap());
            assert!(interval_members_criterion(&u, &v, &v, mode).unwrap());
            assert!(!interval_members_criterion(&p("132"), &p("321"), &p("123"), mode).unwrap());
        }
    }
}
