//! Finite directed graphs, their incidence data and path spaces.
//!
//! An edge `e` goes from `s(e)` to `r(e)`; a path `e_1 .. e_n` needs
//! `r(e_i) = s(e_{i+1})`.

use serde::Deserialize;

use crate::abgroup::{cokernel, FgAbelianGroup};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub s: usize,
    pub r: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

/// A path given by its start vertex and edge list; length 0 is a vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub edges: Vec<usize>,
}

impl Path {
    pub fn vertex(v: usize) -> Self {
        Path { start: v, edges: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

impl Graph {
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::invalid("graph has no vertices"));
        }
        let mut names: Vec<&String> = vertices.iter().chain(edges.iter().map(|e| &e.name)).collect();
        names.sort();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("vertex and edge names must be distinct"));
        }
        if edges.iter().any(|e| e.s >= vertices.len() || e.r >= vertices.len()) {
            return Err(Error::invalid("edge endpoint out of range"));
        }
        Ok(Graph { vertices, edges })
    }

    /// One vertex with `n` loops `e1 .. en`.
    pub fn rose(n: usize) -> Self {
        let edges = (1..=n).map(|i| Edge { name: format!("e{i}"), s: 0, r: 0 }).collect();
        Graph::new(vec!["v".into()], edges).expect("rose is a graph")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn s(&self, e: usize) -> usize {
        self.edges[e].s
    }

    pub fn r(&self, e: usize) -> usize {
        self.edges[e].r
    }

    pub fn out_edges(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].s == v).collect()
    }

    /// Edges from `v` to `w`.
    pub fn edges_between(&self, v: usize, w: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].s == v && self.edges[e].r == w).collect()
    }

    /// Vertices emitting at least one edge, in vertex order.
    pub fn regular(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.edges.iter().any(|e| e.s == v)).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.edges.iter().all(|e| e.s != v)).collect()
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.edges.iter().all(|e| e.r != v)).collect()
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.edges.iter().all(|e| e.s != v)
    }

    /// `(A, I)`: `A` is `reg x E^0` with `A_{v,w} = #vE^1w`, `I` is the
    /// `E^0 x reg` inclusion.
    pub fn incidence(&self) -> (IntMatrix, IntMatrix) {
        let reg = self.regular();
        let a = IntMatrix::from_triplets(
            reg.len(),
            self.vertex_count(),
            reg.iter().enumerate().flat_map(|(i, &v)| self.out_edges(v).into_iter().map(move |e| (i, e, 1)))
                .map(|(i, e, x)| (i, self.edges[e].r, x)),
        );
        let inc = IntMatrix::from_triplets(self.vertex_count(), reg.len(), reg.iter().enumerate().map(|(i, &v)| (v, i, 1)));
        (a, inc)
    }

    /// `I - A^t : Z^reg -> Z^{E^0}`.
    pub fn i_minus_at(&self) -> IntMatrix {
        let (a, inc) = self.incidence();
        &inc - &a.transpose()
    }

    /// `BF(E) = coker(I - A^t)`.
    pub fn bowen_franks(&self) -> FgAbelianGroup {
        cokernel(&self.i_minus_at())
    }

    pub fn path_range(&self, p: &Path) -> usize {
        p.edges.last().map_or(p.start, |&e| self.edges[e].r)
    }

    /// Paths of length `n` starting at `v`, in lexicographic order of edge indices.
    pub fn paths_from(&self, v: usize, n: usize) -> Vec<Path> {
        let mut out = vec![Path::vertex(v)];
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &out {
                for e in self.out_edges(self.path_range(p)) {
                    let mut q = p.clone();
                    q.edges.push(e);
                    next.push(q);
                }
            }
            out = next;
        }
        out
    }

    /// Paths of length `n` from `v` to `w`.
    pub fn paths_between(&self, v: usize, w: usize, n: usize) -> Vec<Path> {
        self.paths_from(v, n).into_iter().filter(|p| self.path_range(p) == w).collect()
    }

    /// Closed paths of length `m` (for `m = 0`, the vertices), by start vertex
    /// and then lexicographically.
    pub fn closed_paths(&self, m: usize) -> Vec<Path> {
        (0..self.vertex_count()).flat_map(|v| self.paths_between(v, v, m)).collect()
    }

    /// Adds a sink `v'` for every regular `v` and an edge `e'` from `s(e)` to
    /// `r(e)'` for every edge with regular range.
    pub fn cohn_graph(&self) -> Graph {
        let reg = self.regular();
        let mut vertices = self.vertices.clone();
        let mut prime = vec![None; self.vertex_count()];
        for &v in &reg {
            prime[v] = Some(vertices.len());
            vertices.push(format!("{}'", self.vertices[v]));
        }
        let mut edges = self.edges.clone();
        for e in &self.edges {
            if let Some(rp) = prime[e.r] {
                edges.push(Edge { name: format!("{}'", e.name), s: e.s, r: rp });
            }
        }
        Graph::new(vertices, edges).expect("cohn graph is a graph")
    }

    pub fn show_path(&self, p: &Path) -> String {
        if p.edges.is_empty() {
            return self.vertices[p.start].clone();
        }
        p.edges.iter().map(|&e| self.edges[e].name.as_str()).collect::<Vec<_>>().join(".")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let spec: GraphSpec = serde_json::from_str(s).map_err(|e| Error::invalid(e.to_string()))?;
        spec.build()
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub name: String,
    pub s: String,
    pub r: String,
}

/// `{"vertices": [..], "edges": [{"name", "s", "r"}]}`, or a rose
/// `{"rose": n}`, or the Cohn graph of another graph `{"cohn": {..}}`.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub vertices: Option<Vec<String>>,
    pub edges: Option<Vec<EdgeSpec>>,
    pub rose: Option<usize>,
    pub cohn: Option<Box<GraphSpec>>,
}

impl GraphSpec {
    pub fn build(&self) -> Result<Graph> {
        match (&self.vertices, self.rose, &self.cohn) {
            (Some(vs), None, None) => {
                let idx = |s: &str| vs.iter().position(|v| v == s).ok_or_else(|| Error::invalid(format!("unknown vertex {s:?}")));
                let edges = self
                    .edges
                    .as_deref()
                    .unwrap_or_default()
                    .iter()
                    .map(|e| Ok(Edge { name: e.name.clone(), s: idx(&e.s)?, r: idx(&e.r)? }))
                    .collect::<Result<Vec<_>>>()?;
                Graph::new(vs.clone(), edges)
            }
            (None, Some(n), None) if self.edges.is_none() => Ok(Graph::rose(n)),
            (None, None, Some(inner)) if self.edges.is_none() => Ok(inner.build()?.cohn_graph()),
            _ => Err(Error::invalid("graph must give vertices and edges, a rose, or a cohn base graph")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rose_bowen_franks() {
        assert_eq!(Graph::rose(1).bowen_franks(), FgAbelianGroup::free(1));
        assert_eq!(Graph::rose(2).bowen_franks(), FgAbelianGroup::zero());
        assert_eq!(Graph::rose(4).bowen_franks(), FgAbelianGroup::cyclic(3));
    }

    #[test]
    fn edge_to_sink() {
        let g = Graph::from_json(r#"{"vertices":["v","w"],"edges":[{"name":"e","s":"v","r":"w"}]}"#).unwrap();
        assert_eq!(g.regular(), vec![0]);
        assert_eq!(g.sinks(), vec![1]);
        assert_eq!(g.sources(), vec![0]);
        assert_eq!(g.bowen_franks(), FgAbelianGroup::free(1));
    }

    #[test]
    fn cohn_of_one_loop() {
        let c = Graph::rose(1).cohn_graph();
        assert_eq!((c.vertex_count(), c.edge_count()), (2, 2));
        let (a, _) = c.incidence();
        assert_eq!(a, IntMatrix::from_rows(&[vec![1, 1]]));
        let cp: Vec<String> = c.closed_paths(3).iter().map(|p| c.show_path(p)).collect();
        assert_eq!(cp, ["e1.e1.e1"]);
        assert_eq!(c.closed_paths(0).len(), 2);
    }

    #[test]
    fn path_counts() {
        let g = Graph::rose(2);
        assert_eq!(g.paths_from(0, 3).len(), 8);
        let bad = r#"{"vertices":["v"],"edges":[{"name":"v","s":"v","r":"v"}]}"#;
        assert!(Graph::from_json(bad).is_err());
    }
}
