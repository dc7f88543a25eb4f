//! Useful-edge classification and its consistency with indecomposability.
//!
//! An edge is useful when some vertex pair is forced through it: every
//! geodesic of that pair contains the edge. The test here is count-based.
//! An edge (a,b) lies on a geodesic of (i,j) exactly when
//! `D(i,a) + w + D(b,j) = D(i,j)` (in one of the two orientations), and the
//! number of such geodesics is the product of the endpoint geodesic counts;
//! the pair forces the edge when those products exhaust the pair's count.
//! Full path enumeration is reserved for the harness oracle.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Edge, WeightedGraph};
use crate::metric::apsp::shortest_path_forest;
use crate::metric::{all_pairs_distances, is_indecomposable, DEFAULT_GEODESIC_CAP};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeStatus {
    /// Some pair of vertices routes every one of its geodesics through the
    /// edge; `witness` is the first such pair in index order.
    Useful {
        witness: (usize, usize),
    },
    Useless,
}

impl EdgeStatus {
    pub fn is_useful(&self) -> bool {
        matches!(self, EdgeStatus::Useful { .. })
    }
}

/// Per-edge verdicts for one graph.
#[derive(Clone, Debug)]
pub struct EdgeUsefulness {
    statuses: BTreeMap<Edge, EdgeStatus>,
}

impl EdgeUsefulness {
    pub fn get(&self, e: Edge) -> Option<&EdgeStatus> {
        self.statuses.get(&e)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, &EdgeStatus)> {
        self.statuses.iter().map(|(e, s)| (*e, s))
    }

    pub fn all_useful(&self) -> bool {
        self.statuses.values().all(|s| s.is_useful())
    }

    pub fn useless_edges(&self) -> Vec<Edge> {
        self.statuses
            .iter()
            .filter(|(_, s)| !s.is_useful())
            .map(|(e, _)| *e)
            .collect()
    }
}

/// Classifies every edge of a connected graph. `cap` bounds the geodesic
/// count of any pair; exceeding it is an explicit error.
pub fn useful_edges(g: &WeightedGraph, cap: u64) -> Result<EdgeUsefulness> {
    let n = g.vertex_count();
    let forest = shortest_path_forest(g)?;
    for i in 0..n {
        for j in (i + 1)..n {
            if forest[i].counts[j] > u128::from(cap) {
                return Err(Error::GeodesicCapExceeded {
                    a: g.label(i).to_string(),
                    b: g.label(j).to_string(),
                    cap,
                });
            }
        }
    }

    let dist = |x: usize, y: usize| forest[x].dist[y].as_ref().expect("connected");
    let mut statuses = BTreeMap::new();
    for (e, w) in g.edges() {
        let (a, b) = e.endpoints();
        let mut status = EdgeStatus::Useless;
        'pairs: for i in 0..n {
            for j in (i + 1)..n {
                let total = forest[i].counts[j];
                let mut through: u128 = 0;
                if &(dist(i, a) + w) + dist(b, j) == *dist(i, j) {
                    through += forest[i].counts[a] * forest[b].counts[j];
                }
                if &(dist(i, b) + w) + dist(a, j) == *dist(i, j) {
                    through += forest[i].counts[b] * forest[a].counts[j];
                }
                if through == total {
                    status = EdgeStatus::Useful { witness: (i, j) };
                    break 'pairs;
                }
            }
        }
        statuses.insert(e, status);
    }
    Ok(EdgeUsefulness { statuses })
}

/// One edge's row in the consistency report.
#[derive(Clone, Debug)]
pub struct ConsistencyEntry {
    pub edge: Edge,
    pub labels: (String, String),
    pub useful: bool,
    pub indecomposable: bool,
    pub weight_equals_distance: bool,
    pub weight: Rational,
    pub distance: Rational,
}

impl ConsistencyEntry {
    /// The tested equivalence: useful exactly when the entry is
    /// indecomposable and the edge weight equals the matrix entry.
    pub fn agrees(&self) -> bool {
        self.useful == (self.indecomposable && self.weight_equals_distance)
    }
}

#[derive(Clone, Debug)]
pub struct ConsistencyReport {
    pub entries: Vec<ConsistencyEntry>,
}

impl ConsistencyReport {
    pub fn full_agreement(&self) -> bool {
        self.entries.iter().all(|e| e.agrees())
    }

    pub fn counterexamples(&self) -> Vec<&ConsistencyEntry> {
        self.entries.iter().filter(|e| !e.agrees()).collect()
    }

    pub fn agreement_count(&self) -> usize {
        self.entries.iter().filter(|e| e.agrees()).count()
    }
}

/// Compares, for every edge, usefulness against indecomposability of the
/// corresponding matrix entry (and whether the weight equals the entry).
/// Both sides are computed independently from the graph.
pub fn usefulness_indecomposability_consistency(g: &WeightedGraph) -> Result<ConsistencyReport> {
    let usefulness = useful_edges(g, DEFAULT_GEODESIC_CAP)?;
    let d = all_pairs_distances(g)?;
    let mut entries = Vec::new();
    for (e, w) in g.edges() {
        let (a, b) = e.endpoints();
        entries.push(ConsistencyEntry {
            edge: e,
            labels: (g.label(a).to_string(), g.label(b).to_string()),
            useful: usefulness.get(e).expect("edge classified").is_useful(),
            indecomposable: is_indecomposable(&d, a, b)?,
            weight_equals_distance: w == d.entry(a, b),
            weight: w.clone(),
            distance: d.entry(a, b).clone(),
        });
    }
    Ok(ConsistencyReport { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::generate_generalized_petersen;

    pub(crate) fn heavy_c5() -> WeightedGraph {
        let weights = [100, 1, 1, 1, 1];
        WeightedGraph::new(
            (0..5).map(|i| format!("c{i}")).collect(),
            (0..5)
                .map(|i| (i, (i + 1) % 5, Rational::from_integer(weights[i])))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn all_petersen_edges_are_useful() {
        let g = generate_generalized_petersen(5, 2).unwrap();
        let u = useful_edges(&g, DEFAULT_GEODESIC_CAP).unwrap();
        assert!(u.all_useful());
        assert_eq!(u.iter().count(), 15);
        // Every witness pair really is forced through its edge: each of its
        // geodesics contains the edge as a consecutive pair.
        for (e, status) in u.iter() {
            let EdgeStatus::Useful { witness: (i, j) } = status else {
                panic!("useless edge in Petersen");
            };
            let paths = crate::metric::geodesics(&g, *i, *j, DEFAULT_GEODESIC_CAP).unwrap();
            assert!(!paths.is_empty());
            for path in paths {
                let found = path.windows(2).any(|w| Edge::new(w[0], w[1]) == e);
                assert!(found, "geodesic {path:?} avoids edge {e:?}");
            }
        }
    }

    #[test]
    fn heavy_cycle_edge_is_useless() {
        let g = heavy_c5();
        let u = useful_edges(&g, DEFAULT_GEODESIC_CAP).unwrap();
        let heavy = Edge::new(0, 1);
        assert_eq!(u.get(heavy), Some(&EdgeStatus::Useless));
        for (e, status) in u.iter() {
            if e != heavy {
                assert!(status.is_useful(), "light edge {e:?} must be useful");
            }
        }
    }

    #[test]
    fn single_edge_graph_is_useful_with_endpoint_witness() {
        let g = WeightedGraph::unit(vec!["a".into(), "b".into()], vec![(0, 1)]).unwrap();
        let u = useful_edges(&g, DEFAULT_GEODESIC_CAP).unwrap();
        assert_eq!(
            u.get(Edge::new(0, 1)),
            Some(&EdgeStatus::Useful { witness: (0, 1) })
        );
    }

    #[test]
    fn consistency_holds_on_petersen() {
        let g = generate_generalized_petersen(5, 2).unwrap();
        let report = usefulness_indecomposability_consistency(&g).unwrap();
        assert!(report.full_agreement());
        assert_eq!(report.agreement_count(), 15);
    }

    #[test]
    fn heavy_edge_agrees_through_the_weight_clause() {
        let report = usefulness_indecomposability_consistency(&heavy_c5()).unwrap();
        assert!(report.full_agreement());
        let heavy = report
            .entries
            .iter()
            .find(|e| e.edge == Edge::new(0, 1))
            .unwrap();
        assert!(!heavy.useful);
        assert!(!heavy.indecomposable);
        assert!(!heavy.weight_equals_distance);
        assert_eq!(heavy.distance, Rational::from_integer(4));
        assert_eq!(heavy.weight, Rational::from_integer(100));
    }
}
