//! Simple undirected graphs and the structural queries the bounds depend on.

use std::collections::VecDeque;
use std::fmt;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Default number of rejected samples before [`random_connected`] gives up.
pub const DEFAULT_SAMPLING_BUDGET: u64 = 100_000;

/// A simple undirected graph on vertices `0..n`.
///
/// Neighbor lists are kept sorted, so two graphs with the same edge set
/// compare equal regardless of construction order. Vertex labels are display
/// metadata only and do not take part in equality.
#[derive(Clone)]
pub struct Graph {
    neighbors: Vec<Vec<usize>>,
    edge_count: usize,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph from a list of unordered pairs. Duplicate pairs (in
    /// either orientation) are collapsed.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut neighbors = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { vertex: u });
            }
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for list in &mut neighbors {
            list.sort_unstable();
            list.dedup();
        }
        let edge_count = neighbors.iter().map(Vec::len).sum::<usize>() / 2;
        Ok(Graph {
            neighbors,
            edge_count,
            labels: None,
        })
    }

    /// The graph on `n` vertices with no edges.
    pub fn edgeless(n: usize) -> Result<Self> {
        Self::from_edges(n, std::iter::empty())
    }

    /// Attaches display names, one per vertex.
    pub fn with_labels<S: Into<String>>(mut self, labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != self.n() {
            return Err(Error::InvalidInput(format!(
                "{} labels supplied for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Returns a copy with the edge `{u, v}` added.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        let mut g = Self::from_edges(self.n(), self.edges().chain([(u, v)]))?;
        g.labels = self.labels.clone();
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.neighbors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.neighbors.iter().map(Vec::len).collect()
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.neighbors[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of `v`: its label when present, otherwise its index.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(labels) => labels[v].clone(),
            None => v.to_string(),
        }
    }

    /// Dense row-major adjacency matrix.
    pub fn adjacency_matrix(&self) -> Vec<f64> {
        let n = self.n();
        let mut a = vec![0.0; n * n];
        for (u, list) in self.neighbors.iter().enumerate() {
            for &v in list {
                a[u * n + v] = 1.0;
            }
        }
        a
    }

    /// True iff every vertex is reachable from vertex 0.
    pub fn is_connected(&self) -> bool {
        self.reachable_from(0).iter().all(|&seen| seen)
    }

    fn reachable_from(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(u) = queue.pop_front() {
            for &v in &self.neighbors[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// Maximal connected vertex sets, each sorted, ordered by smallest member.
    pub fn connected_components(&self) -> ComponentPartition {
        let n = self.n();
        let mut component_of = vec![usize::MAX; n];
        let mut components = Vec::new();
        for start in 0..n {
            if component_of[start] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut members = vec![start];
            component_of[start] = id;
            let mut head = 0;
            while head < members.len() {
                let u = members[head];
                head += 1;
                for &v in &self.neighbors[u] {
                    if component_of[v] == usize::MAX {
                        component_of[v] = id;
                        members.push(v);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        ComponentPartition { components }
    }

    /// Removes `v` and its incident edges. Vertices after `v` shift down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Self> {
        let n = self.n();
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if n == 1 {
            return Err(Error::TooFewVertices { required: 2, n });
        }
        let keep: Vec<usize> = (0..n).filter(|&u| u != v).collect();
        Ok(self.induced_subgraph(&keep))
    }

    /// Subgraph induced by `vertices` (sorted ascending, distinct, in range),
    /// re-indexed by position in the slice.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        let mut new_index = vec![usize::MAX; self.n()];
        for (i, &u) in vertices.iter().enumerate() {
            new_index[u] = i;
        }
        let mut edge_twice = 0;
        let neighbors: Vec<Vec<usize>> = vertices
            .iter()
            .map(|&u| {
                let list: Vec<usize> = self.neighbors[u]
                    .iter()
                    .filter_map(|&w| (new_index[w] != usize::MAX).then_some(new_index[w]))
                    .collect();
                edge_twice += list.len();
                list
            })
            .collect();
        let labels = self
            .labels
            .as_ref()
            .map(|l| vertices.iter().map(|&u| l[u].clone()).collect());
        Graph {
            neighbors,
            edge_count: edge_twice / 2,
            labels,
        }
    }

    /// The common degree if every vertex has the same degree.
    pub fn is_regular(&self) -> Option<usize> {
        let d = self.degree(0);
        self.neighbors.iter().all(|l| l.len() == d).then_some(d)
    }

    /// True iff the graph is `K_{1,n-1}` with `n >= 2`. `K_2` counts.
    pub fn is_star(&self) -> bool {
        let n = self.n();
        if n < 2 || self.edge_count != n - 1 {
            return false;
        }
        if n == 2 {
            return true;
        }
        let centers = self.neighbors.iter().filter(|l| l.len() == n - 1).count();
        let leaves = self.neighbors.iter().filter(|l| l.len() == 1).count();
        centers == 1 && leaves == n - 1
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.neighbors == other.neighbors
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Graph", 3)?;
        s.serialize_field("n", &self.n())?;
        s.serialize_field("edges", &self.edges().collect::<Vec<_>>())?;
        s.serialize_field("labels", &self.labels)?;
        s.end()
    }
}

/// Disjoint cover of the vertex set by maximal connected pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    pub components: Vec<Vec<usize>>,
}

impl ComponentPartition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.components.iter().map(Vec::as_slice)
    }
}

/// Standard graph families used as fixtures and equality cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Complete,
    /// `K_{1,n-1}` with the center at vertex 0.
    Star,
    Path,
    Cycle,
}

pub fn named_graph(family: Family, n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    match family {
        Family::Complete => Graph::from_edges(n, (0..n).flat_map(|v| (0..v).map(move |u| (u, v)))),
        Family::Star => Graph::from_edges(n, (1..n).map(|v| (0, v))),
        Family::Path => Graph::from_edges(n, (1..n).map(|v| (v - 1, v))),
        Family::Cycle => {
            if n < 3 {
                return Err(Error::InvalidInput(format!("cycle needs at least 3 vertices, got {n}")));
            }
            Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
        }
    }
}

/// Samples a connected Erdős–Rényi graph `G(n, p)`.
///
/// The generator is ChaCha8 seeded through `seed_from_u64(seed)`. Pairs are
/// visited as `(u, v)`, `u < v`, in lexicographic order, and each is kept when
/// `(next_u64() >> 11) * 2^-53 < p`. Disconnected draws are rejected and the
/// same stream continues, so the result depends only on `(n, p, seed)`.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Result<Graph> {
    random_connected_with_budget(n, p, seed, DEFAULT_SAMPLING_BUDGET)
}

pub fn random_connected_with_budget(n: usize, p: f64, seed: u64, budget: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidInput(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if unit_f64(&mut rng) < p {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, edges)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::SamplingExhausted { attempts: budget })
}

fn unit_f64(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p4() -> Graph {
        Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn from_edges_basic() {
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(k2.edge_count(), 1);
        assert_eq!(p4().degrees(), vec![1, 2, 2, 1]);
        let dup = Graph::from_edges(3, [(0, 1), (0, 1)]).unwrap();
        assert_eq!(dup, Graph::from_edges(3, [(0, 1)]).unwrap());
        assert_eq!(dup.edge_count(), 1);
        assert_eq!(Graph::from_edges(3, [(1, 0), (0, 1)]).unwrap().edge_count(), 1);
    }

    #[test]
    fn from_edges_errors() {
        assert_eq!(
            Graph::from_edges(3, [(0, 3)]).unwrap_err(),
            Error::VertexOutOfRange { vertex: 3, n: 3 }
        );
        assert_eq!(Graph::from_edges(3, [(1, 1)]).unwrap_err(), Error::SelfLoop { vertex: 1 });
        assert_eq!(Graph::from_edges(0, []).unwrap_err(), Error::EmptyGraph);
    }

    #[test]
    fn connectivity() {
        assert!(Graph::from_edges(2, [(0, 1)]).unwrap().is_connected());
        assert!(!Graph::from_edges(3, [(0, 1)]).unwrap().is_connected());
        assert!(p4().is_connected());
        assert!(Graph::edgeless(1).unwrap().is_connected());
    }

    #[test]
    fn components() {
        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap().connected_components();
        assert_eq!(two.components, vec![vec![0, 1], vec![2, 3]]);
        let k3 = named_graph(Family::Complete, 3).unwrap().connected_components();
        assert_eq!(k3.len(), 1);
        assert_eq!(k3.components[0].len(), 3);
        let empty = Graph::edgeless(3).unwrap().connected_components();
        assert_eq!(empty.components, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn deletion() {
        let star = named_graph(Family::Star, 4).unwrap();
        assert_eq!(star.delete_vertex(0).unwrap(), Graph::edgeless(3).unwrap());

        let split = p4().delete_vertex(1).unwrap();
        assert_eq!(split, Graph::from_edges(3, [(1, 2)]).unwrap());
        assert!(!split.is_connected());

        let k4 = named_graph(Family::Complete, 4).unwrap();
        for v in 0..4 {
            assert_eq!(k4.delete_vertex(v).unwrap(), named_graph(Family::Complete, 3).unwrap());
        }
        assert_eq!(
            Graph::edgeless(1).unwrap().delete_vertex(0).unwrap_err(),
            Error::TooFewVertices { required: 2, n: 1 }
        );
        assert!(matches!(p4().delete_vertex(4), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn deletion_keeps_labels_in_order() {
        let g = p4().with_labels(["a", "b", "c", "d"]).unwrap();
        let h = g.delete_vertex(1).unwrap();
        assert_eq!(h.labels().unwrap(), ["a", "c", "d"]);
    }

    #[test]
    fn regularity() {
        assert_eq!(named_graph(Family::Cycle, 4).unwrap().is_regular(), Some(2));
        assert_eq!(Graph::edgeless(3).unwrap().is_regular(), Some(0));
        assert_eq!(named_graph(Family::Path, 3).unwrap().is_regular(), None);
    }

    #[test]
    fn stars() {
        assert!(named_graph(Family::Star, 5).unwrap().is_star());
        assert!(!p4().is_star());
        assert!(Graph::from_edges(2, [(0, 1)]).unwrap().is_star());
        assert!(!Graph::edgeless(1).unwrap().is_star());
        // center need not be vertex 0
        assert!(Graph::from_edges(4, [(2, 0), (2, 1), (2, 3)]).unwrap().is_star());
        assert!(named_graph(Family::Path, 3).unwrap().is_star());
    }

    #[test]
    fn families() {
        let k4 = named_graph(Family::Complete, 4).unwrap();
        assert_eq!(k4.edge_count(), 6);
        assert_eq!(k4.is_regular(), Some(3));
        assert_eq!(named_graph(Family::Star, 5).unwrap().degrees(), vec![4, 1, 1, 1, 1]);
        let c4 = named_graph(Family::Cycle, 4).unwrap();
        assert_eq!((c4.n(), c4.is_regular()), (4, Some(2)));
        assert!(named_graph(Family::Cycle, 2).is_err());
        assert_eq!(named_graph(Family::Path, 1).unwrap().n(), 1);
    }

    #[test]
    fn random_sampling() {
        assert_eq!(random_connected(5, 1.0, 99).unwrap(), named_graph(Family::Complete, 5).unwrap());
        assert_eq!(random_connected(2, 0.5, 7).unwrap(), Graph::from_edges(2, [(0, 1)]).unwrap());
        let a = random_connected(20, 0.2, 42).unwrap();
        let b = random_connected(20, 0.2, 42).unwrap();
        assert_eq!(a, b);
        assert!(a.is_connected());
        assert_eq!(
            random_connected_with_budget(3, 0.0, 1, 50).unwrap_err(),
            Error::SamplingExhausted { attempts: 50 }
        );
        assert!(random_connected(3, 1.5, 0).is_err());
    }

    #[test]
    fn with_edge_adds() {
        let g = p4().with_edge(0, 3).unwrap();
        assert_eq!(g, named_graph(Family::Cycle, 4).unwrap());
    }
}
