//! Enumeration of all minimum-weight paths between a pair of vertices.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::metric::apsp::dijkstra;

/// Default bound on the number of geodesics a single query may expand.
pub const DEFAULT_GEODESIC_CAP: u64 = 1_000_000;

/// All simple paths from `i` to `j` whose total weight equals the shortest
/// distance, each as a vertex sequence starting at `i`. Paths are returned
/// sorted, so output is deterministic. Errors instead of truncating when
/// more than `cap` geodesics exist.
pub fn geodesics(g: &WeightedGraph, i: usize, j: usize, cap: u64) -> Result<Vec<Vec<usize>>> {
    let n = g.vertex_count();
    if i >= n || j >= n {
        return Err(Error::InvalidParameter(format!(
            "vertex out of range: ({i},{j}) with {n} vertices"
        )));
    }
    if i == j {
        return Err(Error::InvalidParameter(
            "geodesics need two distinct endpoints".into(),
        ));
    }
    if cap == 0 {
        return Err(Error::InvalidParameter("geodesic cap must be >= 1".into()));
    }
    let tree = dijkstra(g, i);
    if tree.dist[j].is_none() {
        return Err(Error::Disconnected {
            a: g.label(i).to_string(),
            b: g.label(j).to_string(),
        });
    }
    if tree.counts[j] > u128::from(cap) {
        return Err(Error::GeodesicCapExceeded {
            a: g.label(i).to_string(),
            b: g.label(j).to_string(),
            cap,
        });
    }

    // Walk the shortest-path DAG backward from j, expanding every
    // predecessor branch. The count check above bounds the work.
    let mut paths = Vec::with_capacity(tree.counts[j] as usize);
    let mut suffix = vec![j];
    expand(&tree.preds, i, j, &mut suffix, &mut paths);
    debug_assert_eq!(paths.len() as u128, tree.counts[j]);
    paths.sort();
    Ok(paths)
}

fn expand(
    preds: &[Vec<usize>],
    src: usize,
    current: usize,
    suffix: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if current == src {
        out.push(suffix.iter().rev().copied().collect());
        return;
    }
    for &p in &preds[current] {
        suffix.push(p);
        expand(preds, src, p, suffix, out);
        suffix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::generate_generalized_petersen;

    fn cycle(n: usize) -> WeightedGraph {
        WeightedGraph::unit(
            (0..n).map(|i| format!("c{i}")).collect(),
            (0..n).map(|i| (i, (i + 1) % n)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn adjacent_pair_on_c5_has_one_geodesic() {
        let g = cycle(5);
        let paths = geodesics(&g, 0, 1, DEFAULT_GEODESIC_CAP).unwrap();
        assert_eq!(paths, vec![vec![0, 1]]);
    }

    #[test]
    fn opposite_pair_on_c4_has_two_geodesics() {
        let g = cycle(4);
        let paths = geodesics(&g, 0, 2, DEFAULT_GEODESIC_CAP).unwrap();
        assert_eq!(paths, vec![vec![0, 1, 2], vec![0, 3, 2]]);
    }

    #[test]
    fn petersen_adjacent_pair_has_one_geodesic() {
        let g = generate_generalized_petersen(5, 2).unwrap();
        for (e, _) in g.edges() {
            let paths = geodesics(&g, e.a(), e.b(), DEFAULT_GEODESIC_CAP).unwrap();
            assert_eq!(paths.len(), 1, "edge {:?}", e);
        }
    }

    #[test]
    fn cap_overflow_is_an_error_not_a_truncation() {
        let g = cycle(4);
        match geodesics(&g, 0, 2, 1) {
            Err(Error::GeodesicCapExceeded { a, b, cap }) => {
                assert_eq!((a.as_str(), b.as_str(), cap), ("c0", "c2", 1));
            }
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_queries() {
        let g = cycle(4);
        assert!(geodesics(&g, 0, 0, 10).is_err());
        assert!(geodesics(&g, 0, 9, 10).is_err());
        assert!(geodesics(&g, 0, 2, 0).is_err());
    }
}
