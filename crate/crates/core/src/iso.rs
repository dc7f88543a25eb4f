//! Graph isomorphism by backtracking with degree and adjacency-consistency
//! pruning. Intended for desk-scale graphs (up to roughly a hundred
//! vertices), which is all this crate works with.

use crate::graph::{Edge, WeightedGraph};

/// Searches for a bijection `map` with `map[v1] = v2` preserving adjacency
/// (and edge weights when `respect_weights`). Deterministic: vertices of `g1`
/// are processed in BFS order from index 0 and candidates in `g2` are tried
/// in index order, so the same inputs always yield the same bijection.
pub fn are_isomorphic(
    g1: &WeightedGraph,
    g2: &WeightedGraph,
    respect_weights: bool,
) -> Option<Vec<usize>> {
    let order = bfs_order(g1);
    let candidates: Vec<usize> = (0..g2.vertex_count()).collect();
    isomorphism_with_orders(g1, g2, respect_weights, &order, &candidates)
}

/// Backtracking search with explicit orders: `g1_order` fixes the sequence in
/// which `g1` vertices are assigned, and `g2_candidates` fixes the preference
/// order of images. The first complete match found is therefore the
/// lexicographically smallest assignment sequence with respect to
/// `g2_candidates`, which callers use to extract canonical certificates.
pub(crate) fn isomorphism_with_orders(
    g1: &WeightedGraph,
    g2: &WeightedGraph,
    respect_weights: bool,
    g1_order: &[usize],
    g2_candidates: &[usize],
) -> Option<Vec<usize>> {
    let n = g1.vertex_count();
    if n != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return None;
    }
    let mut deg1 = g1.degrees();
    let mut deg2 = g2.degrees();
    deg1.sort_unstable();
    deg2.sort_unstable();
    if deg1 != deg2 {
        return None;
    }
    if respect_weights && g1.weight_multiset() != g2.weight_multiset() {
        return None;
    }
    debug_assert_eq!(g1_order.len(), n);

    let adj1 = adjacency_matrix(g1);
    let adj2 = adjacency_matrix(g2);
    let mut state = SearchState {
        g1,
        g2,
        adj1,
        adj2,
        respect_weights,
        map: vec![usize::MAX; n],
        rmap: vec![usize::MAX; n],
        g1_order,
        g2_candidates,
    };
    if state.extend(0) {
        Some(state.map)
    } else {
        None
    }
}

struct SearchState<'a> {
    g1: &'a WeightedGraph,
    g2: &'a WeightedGraph,
    adj1: Vec<Vec<bool>>,
    adj2: Vec<Vec<bool>>,
    respect_weights: bool,
    map: Vec<usize>,
    rmap: Vec<usize>,
    g1_order: &'a [usize],
    g2_candidates: &'a [usize],
}

impl SearchState<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.map.len() {
            return true;
        }
        let v1 = self.g1_order[depth];
        for idx in 0..self.g2_candidates.len() {
            let v2 = self.g2_candidates[idx];
            if self.rmap[v2] != usize::MAX || !self.feasible(v1, v2) {
                continue;
            }
            self.map[v1] = v2;
            self.rmap[v2] = v1;
            if self.extend(depth + 1) {
                return true;
            }
            self.map[v1] = usize::MAX;
            self.rmap[v2] = usize::MAX;
        }
        false
    }

    fn feasible(&self, v1: usize, v2: usize) -> bool {
        if self.g1.degree(v1) != self.g2.degree(v2) {
            return false;
        }
        // Mapped neighbors of v1 must land on neighbors of v2, with equal
        // weights when requested.
        for (m1, w1) in self.g1.neighbors(v1) {
            let image = self.map[*m1];
            if image == usize::MAX {
                continue;
            }
            if !self.adj2[v2][image] {
                return false;
            }
            if self.respect_weights && self.g2.weight(Edge::new(v2, image)) != Some(w1) {
                return false;
            }
        }
        // Mapped neighbors of v2 must pull back to neighbors of v1.
        for (m2, _) in self.g2.neighbors(v2) {
            let pre = self.rmap[*m2];
            if pre != usize::MAX && !self.adj1[v1][pre] {
                return false;
            }
        }
        true
    }
}

fn adjacency_matrix(g: &WeightedGraph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut adj = vec![vec![false; n]; n];
    for (e, _) in g.edges() {
        adj[e.a()][e.b()] = true;
        adj[e.b()][e.a()] = true;
    }
    adj
}

/// BFS order from vertex 0, continuing into later components; keeps the
/// search frontier connected, which is what makes the pruning effective.
pub(crate) fn bfs_order(g: &WeightedGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for (v, _) in g.neighbors(u) {
                if !seen[*v] {
                    seen[*v] = true;
                    queue.push_back(*v);
                }
            }
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{generate_generalized_petersen, generate_kneser};
    use crate::graph::Edge;
    use crate::rational::Rational;

    fn check_mapping(g1: &WeightedGraph, g2: &WeightedGraph, map: &[usize], weights: bool) {
        for (e, w) in g1.edges() {
            let img = Edge::new(map[e.a()], map[e.b()]);
            assert!(g2.weight(img).is_some(), "edge image missing");
            if weights {
                assert_eq!(g2.weight(img), Some(w));
            }
        }
    }

    #[test]
    fn kneser_5_2_is_the_petersen_graph() {
        let petersen = generate_generalized_petersen(5, 2).unwrap();
        let kneser = generate_kneser(5, 2).unwrap();
        let map = are_isomorphic(&kneser, &petersen, false).expect("isomorphic");
        check_mapping(&kneser, &petersen, &map, false);
    }

    #[test]
    fn different_sizes_are_not_isomorphic() {
        let a = generate_generalized_petersen(5, 2).unwrap();
        let b = generate_generalized_petersen(7, 2).unwrap();
        assert!(are_isomorphic(&a, &b, false).is_none());
    }

    #[test]
    fn identity_is_found_and_presence_is_symmetric() {
        let g = generate_generalized_petersen(7, 2).unwrap();
        assert!(are_isomorphic(&g, &g, true).is_some());
        let h = generate_kneser(5, 2).unwrap();
        let p = generate_generalized_petersen(5, 2).unwrap();
        assert_eq!(
            are_isomorphic(&h, &p, false).is_some(),
            are_isomorphic(&p, &h, false).is_some()
        );
    }

    #[test]
    fn weight_respecting_search_sees_weight_differences() {
        let unit = generate_generalized_petersen(5, 2).unwrap();
        let mut first = true;
        let heavier = unit
            .reweighted(|_| {
                if first {
                    first = false;
                    Rational::from_integer(7)
                } else {
                    Rational::one()
                }
            })
            .unwrap();
        assert!(are_isomorphic(&heavier, &unit, true).is_none());
        assert!(are_isomorphic(&heavier, &unit, false).is_some());
    }

    #[test]
    fn prism_and_petersen_differ() {
        // Both are cubic on 10 vertices; only the girths differ.
        let petersen = generate_generalized_petersen(5, 2).unwrap();
        let prism = generate_generalized_petersen(5, 1).unwrap();
        assert!(are_isomorphic(&prism, &petersen, false).is_none());
    }
}
