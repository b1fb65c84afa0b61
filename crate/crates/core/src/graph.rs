//! Finite simplicial graphs with named vertices.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple graph on named vertices. Vertices are kept sorted by name, so
/// vertex indices follow lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialGraph {
    names: Vec<String>,
    adj: Vec<BTreeSet<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDocument {
    vertices: Vec<String>,
    #[serde(default)]
    edges: Vec<(String, String)>,
}

impl SimplicialGraph {
    pub fn new<S: AsRef<str>>(names: &[S], edges: &[(S, S)]) -> Result<Self> {
        let mut sorted: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::GraphMismatch("duplicate vertex name".to_string()));
        }
        let mut g = SimplicialGraph {
            adj: vec![BTreeSet::new(); sorted.len()],
            names: sorted,
        };
        for (a, b) in edges {
            let i = g.index_of(a.as_ref())?;
            let j = g.index_of(b.as_ref())?;
            if i == j {
                return Err(Error::GraphMismatch(format!("loop at `{}`", a.as_ref())));
            }
            g.adj[i].insert(j);
            g.adj[j].insert(i);
        }
        Ok(g)
    }

    /// Graph on vertices `0..n` named by `name` with the given index edges.
    pub fn from_indices(names: Vec<String>, edges: &[(usize, usize)]) -> Self {
        let mut order: Vec<usize> = (0..names.len()).collect();
        order.sort_by(|a, b| names[*a].cmp(&names[*b]));
        let mut pos = vec![0; names.len()];
        for (p, &o) in order.iter().enumerate() {
            pos[o] = p;
        }
        let mut adj = vec![BTreeSet::new(); names.len()];
        for &(a, b) in edges {
            if a != b {
                adj[pos[a]].insert(pos[b]);
                adj[pos[b]].insert(pos[a]);
            }
        }
        SimplicialGraph {
            names: order.into_iter().map(|o| names[o].clone()).collect(),
            adj,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: GraphDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let edges: Vec<(&str, &str)> = doc.edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let names: Vec<&str> = doc.vertices.iter().map(|s| s.as_str()).collect();
        Self::new(&names, &edges).map_err(|e| match e {
            Error::GraphMismatch(message) => Error::Parse {
                line: 0,
                column: 0,
                message,
            },
            other => other,
        })
    }

    pub fn serialize(&self) -> String {
        let doc = GraphDocument {
            vertices: self.names.clone(),
            edges: self
                .edges()
                .into_iter()
                .map(|(a, b)| (self.names[a].clone(), self.names[b].clone()))
                .collect(),
        };
        let mut text = serde_json::to_string_pretty(&doc).expect("document is serialisable");
        text.push('\n');
        text
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .binary_search_by(|n| n.as_str().cmp(name))
            .map_err(|_| Error::GraphMismatch(format!("no vertex `{name}`")))
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(&b)
    }

    pub fn neighbours(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, nbrs) in self.adj.iter().enumerate() {
            for &b in nbrs {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        (0..self.len()).all(|v| self.degree(v) + 1 == self.len())
    }

    /// All cliques including the empty one; each sorted, listed by size
    /// then lexicographically.
    pub fn cliques(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        let mut frontier = vec![Vec::new()];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for k in &frontier {
                let start = k.last().map_or(0, |l: &usize| l + 1);
                for v in start..self.len() {
                    if k.iter().all(|u| self.adjacent(*u, v)) {
                        let mut bigger = k.clone();
                        bigger.push(v);
                        next.push(bigger);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// Connected components of the subgraph induced on `keep`, each
    /// sorted, ordered by smallest member.
    pub fn components_within(&self, keep: &BTreeSet<usize>) -> Vec<Vec<usize>> {
        let mut seen = BTreeSet::new();
        let mut comps = Vec::new();
        for &s in keep {
            if seen.contains(&s) {
                continue;
            }
            let mut comp = vec![s];
            seen.insert(s);
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if keep.contains(&w) && seen.insert(w) {
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort();
            comps.push(comp);
        }
        comps
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_within(&(0..self.len()).collect())
    }

    /// Vertices whose removal disconnects the subgraph induced on `keep`.
    pub fn cut_vertices_within(&self, keep: &BTreeSet<usize>) -> BTreeSet<usize> {
        let base = self.components_within(keep).len();
        keep.iter()
            .copied()
            .filter(|v| {
                let mut rest = keep.clone();
                rest.remove(v);
                self.components_within(&rest).len() > base
            })
            .collect()
    }
}
