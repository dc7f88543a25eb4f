//! Positively weighted simple graphs with stable string vertex labels.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// An unordered pair of vertex indices. Endpoints are stored low, high.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    a: usize,
    b: usize,
}

impl Edge {
    /// Panics on a loop (`x == y`); callers validate loops with context first.
    pub fn new(x: usize, y: usize) -> Self {
        assert!(x != y, "loop edge ({x},{x})");
        Edge {
            a: x.min(y),
            b: x.max(y),
        }
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.a, self.b)
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// A simple graph with positive rational edge weights. Immutable after
/// construction, so values can be shared freely across threads.
#[derive(Clone)]
pub struct WeightedGraph {
    labels: Vec<String>,
    weights: BTreeMap<Edge, Rational>,
    adjacency: Vec<Vec<(usize, Rational)>>,
    index: HashMap<String, usize>,
}

impl WeightedGraph {
    /// Validates and builds a graph. Rejects duplicate or malformed labels,
    /// loops, duplicate edges, out-of-range endpoints, and weights <= 0.
    pub fn new(labels: Vec<String>, edges: Vec<(usize, usize, Rational)>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidParameter(
                "graph needs at least one vertex".into(),
            ));
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() || label.contains('\t') || label.contains('\n') {
                return Err(Error::InvalidParameter(format!(
                    "label {label:?} is empty or contains tab/newline"
                )));
            }
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::InvalidParameter(format!(
                    "duplicate label {label:?}"
                )));
            }
        }
        let n = labels.len();
        let mut weights = BTreeMap::new();
        for (x, y, w) in edges {
            if x >= n || y >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge endpoint out of range: ({x},{y}) with {n} vertices"
                )));
            }
            if x == y {
                return Err(Error::InvalidParameter(format!(
                    "loop edge at {:?}",
                    labels[x]
                )));
            }
            if !w.is_positive() {
                return Err(Error::InvalidParameter(format!(
                    "edge ({},{}) has non-positive weight {w}",
                    labels[x], labels[y]
                )));
            }
            if weights.insert(Edge::new(x, y), w).is_some() {
                return Err(Error::InvalidParameter(format!(
                    "duplicate edge ({},{})",
                    labels[x], labels[y]
                )));
            }
        }
        let mut adjacency = vec![Vec::new(); n];
        for (e, w) in &weights {
            adjacency[e.a()].push((e.b(), w.clone()));
            adjacency[e.b()].push((e.a(), w.clone()));
        }
        for list in &mut adjacency {
            list.sort_by_key(|(v, _)| *v);
        }
        Ok(WeightedGraph {
            labels,
            weights,
            adjacency,
            index,
        })
    }

    /// Convenience constructor with every weight equal to 1.
    pub fn unit(labels: Vec<String>, pairs: Vec<(usize, usize)>) -> Result<Self> {
        let edges = pairs
            .into_iter()
            .map(|(a, b)| (a, b, Rational::one()))
            .collect();
        WeightedGraph::new(labels, edges)
    }

    /// Same vertices and edges, weights replaced by `weight_of`.
    pub fn reweighted(&self, mut weight_of: impl FnMut(Edge) -> Rational) -> Result<Self> {
        let edges = self
            .weights
            .keys()
            .map(|e| (e.a(), e.b(), weight_of(*e)))
            .collect();
        WeightedGraph::new(self.labels.clone(), edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.weights.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Edges in ascending `(a,b)` order.
    pub fn edges(&self) -> impl Iterator<Item = (Edge, &Rational)> {
        self.weights.iter().map(|(e, w)| (*e, w))
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        x != y && self.weights.contains_key(&Edge::new(x, y))
    }

    pub fn weight(&self, e: Edge) -> Option<&Rational> {
        self.weights.get(&e)
    }

    /// Neighbors of `v` with edge weights, sorted by neighbor index.
    pub fn neighbors(&self, v: usize) -> &[(usize, Rational)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.vertex_count()).map(|v| self.degree(v)).collect()
    }

    /// Sorted multiset of edge weights.
    pub fn weight_multiset(&self) -> Vec<Rational> {
        let mut ws: Vec<Rational> = self.weights.values().cloned().collect();
        ws.sort();
        ws
    }

    pub fn is_connected(&self) -> bool {
        self.disconnected_witness().is_none()
    }

    /// Two vertices in different components, if any.
    pub fn disconnected_witness(&self) -> Option<(usize, usize)> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for (v, _) in self.neighbors(u) {
                if !seen[*v] {
                    seen[*v] = true;
                    queue.push_back(*v);
                }
            }
        }
        seen.iter().position(|s| !s).map(|v| (0, v))
    }

    pub fn describe_edge(&self, e: Edge) -> String {
        format!("({},{})", self.labels[e.a()], self.labels[e.b()])
    }
}

impl PartialEq for WeightedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.weights == other.weights
    }
}

impl Eq for WeightedGraph {}

impl fmt::Debug for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "WeightedGraph({} vertices, {} edges)",
            self.vertex_count(),
            self.edge_count()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn builds_a_path_and_answers_queries() {
        let g = WeightedGraph::new(
            labels(&["a", "b", "c"]),
            vec![(0, 1, Rational::new(1, 3)), (2, 1, Rational::new(1, 7))],
        )
        .unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(1, 0));
        assert!(!g.has_edge(0, 2));
        assert_eq!(g.weight(Edge::new(1, 2)), Some(&Rational::new(1, 7)));
        assert_eq!(g.index_of("c"), Some(2));
        assert_eq!(g.degree(1), 2);
        assert!(g.is_connected());
    }

    #[test]
    fn rejects_invalid_construction() {
        let base = labels(&["a", "b"]);
        assert!(WeightedGraph::new(labels(&["a", "a"]), vec![]).is_err());
        assert!(WeightedGraph::new(labels(&["a", "b\t"]), vec![]).is_err());
        assert!(WeightedGraph::new(base.clone(), vec![(0, 0, Rational::one())]).is_err());
        assert!(WeightedGraph::new(base.clone(), vec![(0, 2, Rational::one())]).is_err());
        assert!(WeightedGraph::new(base.clone(), vec![(0, 1, Rational::zero())]).is_err());
        assert!(
            WeightedGraph::new(base, vec![(0, 1, Rational::one()), (1, 0, Rational::one())])
                .is_err()
        );
    }

    #[test]
    fn detects_disconnection() {
        let g = WeightedGraph::unit(labels(&["a", "b", "c", "d"]), vec![(0, 1), (2, 3)]).unwrap();
        assert!(!g.is_connected());
        let (x, y) = g.disconnected_witness().unwrap();
        assert_eq!(x, 0);
        assert!(y == 2 || y == 3);
    }

    #[test]
    fn equality_ignores_derived_structures() {
        let a = WeightedGraph::unit(labels(&["a", "b"]), vec![(0, 1)]).unwrap();
        let b = WeightedGraph::unit(labels(&["a", "b"]), vec![(1, 0)]).unwrap();
        assert_eq!(a, b);
    }
}
