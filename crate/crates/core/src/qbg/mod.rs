//! The quantum Bruhat graph `Gamma_n`: edges, weights and minimal-weight paths.

mod export;
mod graph;

pub use export::{graph_from_json, GraphJson, JsonEdge};
pub use graph::{QuantumBruhatGraph, MAX_GRAPH_N};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::latticepath::depth;
use crate::perm::{check_same_n, shifted_less, Permutation, Root};

/// The monomial `q_1^{d_1} ... q_{n-1}^{d_{n-1}}` in additive form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QExponent(pub Vec<u32>);

impl QExponent {
    pub fn zero(n: usize) -> Self {
        QExponent(vec![0; n.saturating_sub(1)])
    }

    /// `q_i q_{i+1} ... q_{j-1}`.
    pub fn interval(i: usize, j: usize, n: usize) -> Self {
        let mut e = QExponent::zero(n);
        for k in i..j {
            e.0[k - 1] = 1;
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&d| d == 0)
    }

    /// Monomial product.
    pub fn add(&self, other: &QExponent) -> QExponent {
        QExponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn add_assign(&mut self, other: &QExponent) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
    }

    /// `other` divides `self`.
    pub fn dominates(&self, other: &QExponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    /// Parses the monomial text produced by `Display` (`1`, `q1*q3^2`, ...).
    pub fn parse_monomial(text: &str, n: usize) -> Result<QExponent> {
        let mut e = QExponent::zero(n);
        let text = text.trim();
        if text == "1" {
            return Ok(e);
        }
        for factor in text.split('*') {
            let bad = || crate::error::parse_err(factor, "expected q<i> or q<i>^<e>");
            let body = factor.trim().strip_prefix('q').ok_or_else(bad)?;
            let (idx, pow) = match body.split_once('^') {
                Some((i, p)) => (i, p.parse::<u32>().map_err(|_| bad())?),
                None => (body, 1),
            };
            let idx: usize = idx.parse().map_err(|_| bad())?;
            if idx == 0 || idx >= n {
                return Err(bad());
            }
            e.0[idx - 1] += pow;
        }
        Ok(e)
    }
}

impl fmt::Display for QExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(k, &d)| {
                if d == 1 {
                    format!("q{}", k + 1)
                } else {
                    format!("q{}^{}", k + 1, d)
                }
            })
            .collect();
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("*"))
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct QbgEdge {
    pub source: Permutation,
    pub target: Permutation,
    pub root: Root,
    pub weight: QExponent,
}

/// Total weight of a path (`n` fixes the exponent length for empty paths).
pub fn path_weight(path: &[QbgEdge], n: usize) -> QExponent {
    let mut total = QExponent::zero(n);
    for e in path {
        total.add_assign(&e.weight);
    }
    total
}

/// Weight of `w -> w t_ij` if it is an edge: zero for `l + 1`, `q_i ... q_{j-1}` for
/// `l + 1 - 2(j - i)`.
pub fn edge_weight(w: &Permutation, t: Root) -> Option<QExponent> {
    let n = w.n();
    if t.j > n || t.i == 0 || t.i >= t.j {
        return None;
    }
    // The length change of a transposition only depends on the entries between i and j.
    let (a, b) = (w.at(t.i), w.at(t.j));
    let between = (t.i + 1..t.j).filter(|&k| {
        let c = w.at(k);
        a.min(b) < c && c < a.max(b)
    });
    let m = between.count() as i64;
    let delta = if a < b { 2 * m + 1 } else { -(2 * m + 1) };
    if delta == 1 {
        Some(QExponent::zero(n))
    } else if delta == 1 - 2 * (t.j - t.i) as i64 {
        Some(QExponent::interval(t.i, t.j, n))
    } else {
        None
    }
}

/// All out-edges of `w` in `Gamma_n`, sorted by root.
pub fn out_edges(w: &Permutation) -> Vec<QbgEdge> {
    Root::all(w.n())
        .into_iter()
        .filter_map(|t| {
            edge_weight(w, t).map(|weight| QbgEdge {
                source: w.clone(),
                target: w.apply_transposition(t),
                root: t,
                weight,
            })
        })
        .collect()
}

/// `d(u, v)` from depths of prefix paths, without building the graph.
pub fn formula_weight(u: &Permutation, v: &Permutation) -> Result<QExponent> {
    let n = check_same_n(&[u, v])?;
    let mut e = QExponent::zero(n);
    for k in 1..n {
        e.0[k - 1] = depth(u.prefix_set(k), v.prefix_set(k), n)? as u32;
    }
    Ok(e)
}

/// The path whose labels increase in `e1-e2, e1-e3, ..., e1-en, e2-e3, ...`, built greedily one
/// position at a time.
pub fn bfp_greedy_path(u: &Permutation, v: &Permutation) -> Result<Vec<QbgEdge>> {
    let n = check_same_n(&[u, v])?;
    let mut cur = u.clone();
    let mut path = Vec::new();
    for s in 1..n {
        let target = v.at(s);
        // target is the largest element of [n] in the order starting at target + 1
        let r = target % n + 1;
        let mut prev = s;
        while cur.at(s) != target {
            let p = (prev + 1..=n)
                .find(|&p| shifted_less(n, r, cur.at(s), cur.at(p)))
                .ok_or_else(|| {
                    Error::Internal(format!("greedy path from {u} to {v} stuck at {cur}"))
                })?;
            let t = Root { i: s, j: p };
            let weight = edge_weight(&cur, t).ok_or_else(|| {
                Error::Internal(format!("greedy step {t} from {cur} is not an edge"))
            })?;
            let next = cur.apply_transposition(t);
            path.push(QbgEdge {
                source: cur,
                target: next.clone(),
                root: t,
                weight,
            });
            cur = next;
            prev = p;
        }
    }
    Ok(path)
}

/// `l(u, v)`, the length of the greedy path (graph-free).
pub fn path_length(u: &Permutation, v: &Permutation) -> Result<usize> {
    Ok(bfp_greedy_path(u, v)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn t(i: usize, j: usize) -> Root {
        Root::new(i, j).unwrap()
    }

    #[test]
    fn weighted_edges_of_s3() {
        assert_eq!(edge_weight(&p("321"), t(1, 3)), Some(QExponent(vec![1, 1])));
        assert_eq!(edge_weight(&p("132"), t(2, 3)), Some(QExponent(vec![0, 1])));
        assert_eq!(edge_weight(&p("231"), t(1, 3)), None);
        assert_eq!(edge_weight(&p("123"), t(1, 3)), None);
        assert_eq!(edge_weight(&p("123"), t(1, 2)), Some(QExponent::zero(3)));
    }

    #[test]
    fn edge_weight_matches_length_definition() {
        for w in Permutation::all(5) {
            for r in Root::all(5) {
                let l0 = w.length() as i64;
                let l1 = w.apply_transposition(r).length() as i64;
                let expect = if l1 == l0 + 1 {
                    Some(QExponent::zero(5))
                } else if l1 == l0 + 1 - 2 * (r.j - r.i) as i64 {
                    Some(QExponent::interval(r.i, r.j, 5))
                } else {
                    None
                };
                assert_eq!(edge_weight(&w, r), expect, "{w} {r}");
            }
        }
    }

    #[test]
    fn monomial_text() {
        assert_eq!(
            QExponent(vec![1, 1, 2, 2, 1, 1]).to_string(),
            "q1*q2*q3^2*q4^2*q5*q6"
        );
        assert_eq!(QExponent::zero(4).to_string(), "1");
        assert_eq!(
            QExponent::parse_monomial("q1*q3^2", 4).unwrap(),
            QExponent(vec![1, 0, 2])
        );
        assert!(QExponent::parse_monomial("q4", 4).is_err());
    }

    #[test]
    fn formula_examples() {
        assert_eq!(
            formula_weight(&p("7364152"), &p("2513746")).unwrap().0,
            vec![1, 1, 2, 2, 1, 1]
        );
        assert_eq!(formula_weight(&p("321"), &p("213")).unwrap().0, vec![1, 1]);
        assert!(formula_weight(&p("2413"), &p("2413")).unwrap().is_zero());
    }

    #[test]
    fn greedy_first_stage_table() {
        let u = p("657913428");
        let mut v_word: Vec<usize> = vec![4];
        v_word.extend(u.word().iter().copied().filter(|&x| x != 4));
        let v = Permutation::new(v_word).unwrap();
        let path = bfp_greedy_path(&u, &v).unwrap();
        let first: Vec<_> = path.iter().take_while(|e| e.root.i == 1).collect();
        let roots: Vec<_> = first.iter().map(|e| (e.root.i, e.root.j)).collect();
        assert_eq!(roots, vec![(1, 3), (1, 4), (1, 5), (1, 6), (1, 7)]);
        let weights: Vec<String> = first.iter().map(|e| e.weight.to_string()).collect();
        assert_eq!(weights, ["1", "1", "q1*q2*q3*q4", "1", "1"]);
        assert_eq!(first.last().unwrap().target.at(1), 4);
    }

    #[test]
    fn greedy_small() {
        assert!(bfp_greedy_path(&p("2413"), &p("2413")).unwrap().is_empty());
        let path = bfp_greedy_path(&p("321"), &p("213")).unwrap();
        assert_eq!(path.len(), 2);
        assert_eq!(path_weight(&path, 3).0, vec![1, 1]);
    }
}
