//! All-pairs shortest paths by per-source Dijkstra with exact rational keys.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::metric::DistanceMatrix;
use crate::rational::Rational;

/// Shortest-path data from one source: exact distances, the predecessor
/// lists spanning every geodesic, and geodesic counts (saturating).
pub(crate) struct ShortestPathTree {
    pub dist: Vec<Option<Rational>>,
    pub preds: Vec<Vec<usize>>,
    pub counts: Vec<u128>,
}

pub(crate) fn dijkstra(g: &WeightedGraph, src: usize) -> ShortestPathTree {
    let n = g.vertex_count();
    let mut dist: Vec<Option<Rational>> = vec![None; n];
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut counts = vec![0u128; n];
    let mut settled = vec![false; n];
    let mut heap: BinaryHeap<Reverse<(Rational, usize)>> = BinaryHeap::new();

    dist[src] = Some(Rational::zero());
    counts[src] = 1;
    heap.push(Reverse((Rational::zero(), src)));

    while let Some(Reverse((du, u))) = heap.pop() {
        if settled[u] {
            continue;
        }
        settled[u] = true;
        for (v, w) in g.neighbors(u) {
            let v = *v;
            if settled[v] {
                // Weights are positive, so a settled vertex cannot improve
                // and cannot tie through a later one.
                continue;
            }
            let candidate = &du + w;
            match &dist[v] {
                Some(dv) if candidate > *dv => {}
                Some(dv) if candidate == *dv => {
                    preds[v].push(u);
                    counts[v] = counts[v].saturating_add(counts[u]);
                }
                _ => {
                    dist[v] = Some(candidate.clone());
                    preds[v] = vec![u];
                    counts[v] = counts[u];
                    heap.push(Reverse((candidate, v)));
                }
            }
        }
    }
    ShortestPathTree {
        dist,
        preds,
        counts,
    }
}

/// Dijkstra from every source. Errors with a witness pair when `g` is
/// disconnected. Sources run in parallel; assembly order is fixed, so the
/// result is identical regardless of scheduling.
pub(crate) fn shortest_path_forest(g: &WeightedGraph) -> Result<Vec<ShortestPathTree>> {
    let n = g.vertex_count();
    let trees: Vec<ShortestPathTree> = (0..n).into_par_iter().map(|s| dijkstra(g, s)).collect();
    if let Some(v) = trees[0].dist.iter().position(|d| d.is_none()) {
        return Err(Error::Disconnected {
            a: g.label(0).to_string(),
            b: g.label(v).to_string(),
        });
    }
    Ok(trees)
}

/// The exact distance matrix of a connected graph.
pub fn all_pairs_distances(g: &WeightedGraph) -> Result<DistanceMatrix> {
    let trees = shortest_path_forest(g)?;
    let entries: Vec<Vec<Rational>> = trees
        .iter()
        .map(|t| {
            t.dist
                .iter()
                .map(|d| d.clone().expect("connectivity checked"))
                .collect()
        })
        .collect();
    let d = DistanceMatrix::new(g.labels().to_vec(), entries)?;
    debug_assert!(d.validate_structure().is_ok());
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{bfs_hops, generate_generalized_petersen, generate_kneser};

    fn multiset(row: &[Rational]) -> Vec<(Rational, usize)> {
        let mut counts: std::collections::BTreeMap<Rational, usize> = Default::default();
        for v in row {
            *counts.entry(v.clone()).or_default() += 1;
        }
        counts.into_iter().collect()
    }

    #[test]
    fn single_edge_weight_is_the_distance() {
        let g = WeightedGraph::new(
            vec!["a".into(), "b".into()],
            vec![(0, 1, Rational::new(5, 2))],
        )
        .unwrap();
        let d = all_pairs_distances(&g).unwrap();
        assert_eq!(*d.entry(0, 1), Rational::new(5, 2));
    }

    #[test]
    fn fractional_path_distances_add_exactly() {
        let g = WeightedGraph::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![(0, 1, Rational::new(1, 3)), (1, 2, Rational::new(1, 7))],
        )
        .unwrap();
        let d = all_pairs_distances(&g).unwrap();
        assert_eq!(*d.entry(0, 2), Rational::new(10, 21));
    }

    #[test]
    fn petersen_rows_match_bfs() {
        let g = generate_generalized_petersen(5, 2).unwrap();
        let d = all_pairs_distances(&g).unwrap();
        let expected = vec![
            (Rational::from_integer(0), 1),
            (Rational::from_integer(1), 3),
            (Rational::from_integer(2), 6),
        ];
        for i in 0..d.dim() {
            let row: Vec<Rational> = (0..d.dim()).map(|j| d.entry(i, j).clone()).collect();
            assert_eq!(multiset(&row), expected);
            let hops = bfs_hops(&g, i);
            for j in 0..d.dim() {
                assert_eq!(
                    *d.entry(i, j),
                    Rational::from_integer(hops[j].unwrap() as i64)
                );
            }
        }
    }

    #[test]
    fn odd_graph_rows_match_bfs() {
        let g = generate_kneser(7, 3).unwrap();
        let d = all_pairs_distances(&g).unwrap();
        let expected = vec![
            (Rational::from_integer(0), 1),
            (Rational::from_integer(1), 4),
            (Rational::from_integer(2), 12),
            (Rational::from_integer(3), 18),
        ];
        let i = g.index_of("{1,2,3}").unwrap();
        let row: Vec<Rational> = (0..d.dim()).map(|j| d.entry(i, j).clone()).collect();
        assert_eq!(multiset(&row), expected);
        let hops = bfs_hops(&g, i);
        for j in 0..d.dim() {
            assert_eq!(
                *d.entry(i, j),
                Rational::from_integer(hops[j].unwrap() as i64)
            );
        }
    }

    #[test]
    fn disconnected_graphs_are_reported_with_labels() {
        let g =
            WeightedGraph::unit(vec!["a".into(), "b".into(), "c".into()], vec![(0, 1)]).unwrap();
        match all_pairs_distances(&g) {
            Err(Error::Disconnected { a, b }) => {
                assert_eq!(a, "a");
                assert_eq!(b, "c");
            }
            other => panic!("expected disconnection error, got {other:?}"),
        }
    }

    #[test]
    fn geodesic_counts_are_tracked() {
        // Unit 4-cycle: two geodesics between opposite corners.
        let g = WeightedGraph::unit(
            (0..4).map(|i| format!("c{i}")).collect(),
            vec![(0, 1), (1, 2), (2, 3), (3, 0)],
        )
        .unwrap();
        let t = dijkstra(&g, 0);
        assert_eq!(t.counts[2], 2);
        assert_eq!(t.counts[1], 1);
        assert_eq!(t.preds[2], vec![1, 3]);
    }
}
