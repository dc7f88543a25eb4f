//! Shortest-cycle length, counting edges regardless of weights.

use std::collections::VecDeque;
use std::fmt;

use crate::graph::WeightedGraph;

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn is_at_least(&self, bound: usize) -> bool {
        match self {
            Girth::Finite(g) => *g >= bound,
            Girth::Infinite => true,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => write!(f, "infinite"),
        }
    }
}

/// Length of the shortest cycle, or `Infinite` for forests.
///
/// One BFS per root; every non-tree adjacency between visited vertices closes
/// a walk of `dist[u] + dist[v] + 1` edges, which is a cycle-length upper
/// bound and is tight for roots lying on a shortest cycle.
pub fn girth(g: &WeightedGraph) -> Girth {
    let n = g.vertex_count();
    let mut best: Option<usize> = None;
    for root in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::from([root]);
        dist[root] = 0;
        while let Some(u) = queue.pop_front() {
            for (v, _) in g.neighbors(u) {
                let v = *v;
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if v != parent[u] {
                    let candidate = dist[u] + dist[v] + 1;
                    if best.is_none_or(|b| candidate < b) {
                        best = Some(candidate);
                    }
                }
            }
        }
    }
    match best {
        Some(b) => Girth::Finite(b),
        None => Girth::Infinite,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{generate_generalized_petersen, generate_kneser};

    fn cycle(n: usize) -> WeightedGraph {
        let labels = (0..n).map(|i| format!("v{i}")).collect();
        let pairs = (0..n).map(|i| (i, (i + 1) % n)).collect();
        WeightedGraph::unit(labels, pairs).unwrap()
    }

    #[test]
    fn cycles_have_their_length_as_girth() {
        assert_eq!(girth(&cycle(3)), Girth::Finite(3));
        assert_eq!(girth(&cycle(4)), Girth::Finite(4));
        assert_eq!(girth(&cycle(10)), Girth::Finite(10));
    }

    #[test]
    fn forests_are_acyclic() {
        let path = WeightedGraph::unit(
            vec!["a".into(), "b".into(), "c".into()],
            vec![(0, 1), (1, 2)],
        )
        .unwrap();
        assert_eq!(girth(&path), Girth::Infinite);
    }

    #[test]
    fn family_graphs_match_known_girths() {
        assert_eq!(
            girth(&generate_generalized_petersen(5, 2).unwrap()),
            Girth::Finite(5)
        );
        assert_eq!(
            girth(&generate_generalized_petersen(5, 1).unwrap()),
            Girth::Finite(4)
        );
        assert_eq!(
            girth(&generate_generalized_petersen(6, 2).unwrap()),
            Girth::Finite(3)
        );
        assert_eq!(girth(&generate_kneser(7, 3).unwrap()), Girth::Finite(6));
        assert_eq!(girth(&generate_kneser(3, 1).unwrap()), Girth::Finite(3));
    }
}
