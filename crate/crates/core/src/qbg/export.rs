use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::graph::{Arc, QuantumBruhatGraph};
use super::QExponent;
use crate::error::{Error, Result};
use crate::format::{dot_escape, Format};
use crate::perm::{Permutation, Root};

/// JSON document for a whole graph: `{"n", "vertices", "edges": [{source, target, exps}]}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub vertices: Vec<Permutation>,
    pub edges: Vec<JsonEdge>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct JsonEdge {
    pub source: Permutation,
    pub target: Permutation,
    pub exps: Vec<u32>,
}

impl QuantumBruhatGraph {
    pub fn to_json_doc(&self) -> GraphJson {
        GraphJson {
            n: self.n(),
            vertices: self.vertices().to_vec(),
            edges: self
                .edges()
                .map(|e| JsonEdge {
                    source: e.source,
                    target: e.target,
                    exps: e.weight.0,
                })
                .collect(),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph qbg{} {{", self.n());
        for w in self.vertices() {
            let _ = writeln!(s, "  \"{}\";", dot_escape(&w.to_string()));
        }
        for e in self.edges() {
            let m = e.weight.to_string();
            let _ = writeln!(
                s,
                "  \"{}\" -> \"{}\" [weight=\"{m}\", label=\"{m}\"];",
                dot_escape(&e.source.to_string()),
                dot_escape(&e.target.to_string()),
            );
        }
        s.push_str("}\n");
        s
    }

    pub fn export(&self, format: Format) -> Result<String> {
        match format {
            Format::Dot => Ok(self.to_dot()),
            Format::Json => Ok(serde_json::to_string_pretty(&self.to_json_doc())?),
        }
    }
}

/// Rebuilds a graph from its JSON export, checking every edge is a single transposition.
pub fn graph_from_json(text: &str) -> Result<QuantumBruhatGraph> {
    let doc: GraphJson = serde_json::from_str(text)?;
    let n = doc.n;
    let total: usize = (1..=n).product();
    if doc.vertices.len() != total
        || doc
            .vertices
            .iter()
            .enumerate()
            .any(|(k, w)| w.n() != n || w.lex_rank() != k)
    {
        return Err(Error::Precondition(
            "vertex list is not S_n in lexicographic order".into(),
        ));
    }
    let mut out = vec![Vec::new(); total];
    for e in doc.edges {
        let diff: Vec<usize> = (1..=n)
            .filter(|&k| e.source.at(k) != e.target.at(k))
            .collect();
        if diff.len() != 2 || e.exps.len() + 1 != n {
            return Err(Error::Precondition(format!(
                "{} -> {} is not a transposition edge",
                e.source, e.target
            )));
        }
        out[e.source.lex_rank()].push(Arc {
            target: e.target.lex_rank(),
            root: Root {
                i: diff[0],
                j: diff[1],
            },
            weight: QExponent(e.exps),
        });
    }
    Ok(QuantumBruhatGraph::from_arcs(n, doc.vertices, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip() {
        for n in 1..=4 {
            let g = QuantumBruhatGraph::build(n).unwrap();
            let text = g.export(Format::Json).unwrap();
            assert_eq!(graph_from_json(&text).unwrap(), g);
        }
    }

    #[test]
    fn dot_counts() {
        let g = QuantumBruhatGraph::build(2).unwrap();
        let dot = g.to_dot();
        assert_eq!(dot.matches("->").count(), 2);
        let g = QuantumBruhatGraph::build(3).unwrap();
        let dot = g.to_dot();
        assert_eq!(dot.matches("->").count(), 15);
        assert_eq!(dot.matches("label=\"q").count(), 7);
        assert!(dot.contains("\"321\" -> \"123\" [weight=\"q1*q2\""));
        assert!(matches!(
            "svg".parse::<Format>(),
            Err(Error::UnknownFormat(_))
        ));
    }
}
