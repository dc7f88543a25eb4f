//! Exact distance matrices and their indecomposability structure.

use std::collections::BTreeSet;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result, StructuralIssue};
use crate::graph::Edge;
use crate::rational::Rational;

mod apsp;
mod geodesic;
mod useful;

pub use apsp::all_pairs_distances;
pub use geodesic::{geodesics, DEFAULT_GEODESIC_CAP};
pub use useful::{
    useful_edges, usefulness_indecomposability_consistency, ConsistencyEntry, ConsistencyReport,
    EdgeStatus, EdgeUsefulness,
};

/// A square symmetric matrix of exact pairwise distances over a labeled
/// index set. Construction checks shape only; [`DistanceMatrix::validate_structure`]
/// checks the distance-matrix axioms (symmetry, zero diagonal, positivity)
/// so that malformed inputs can be reported rather than rejected unseen.
#[derive(Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    labels: Vec<String>,
    entries: Vec<Vec<Rational>>,
}

impl DistanceMatrix {
    pub fn new(labels: Vec<String>, entries: Vec<Vec<Rational>>) -> Result<Self> {
        let m = labels.len();
        if m == 0 {
            return Err(Error::InvalidParameter("empty matrix".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for label in &labels {
            if label.is_empty() || label.contains('\t') || label.contains('\n') {
                return Err(Error::InvalidParameter(format!(
                    "label {label:?} is empty or contains tab/newline"
                )));
            }
            if !seen.insert(label) {
                return Err(Error::InvalidParameter(format!(
                    "duplicate label {label:?}"
                )));
            }
        }
        if entries.len() != m || entries.iter().any(|row| row.len() != m) {
            return Err(Error::InvalidParameter(format!("matrix is not {m}x{m}")));
        }
        Ok(DistanceMatrix { labels, entries })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn entries_cloned(&self) -> Vec<Vec<Rational>> {
        self.entries.clone()
    }

    /// Checks the distance-matrix axioms and reports every violation.
    pub fn validate_structure(&self) -> Result<()> {
        let mut issues = Vec::new();
        for i in 0..self.dim() {
            if !self.entries[i][i].is_zero() {
                issues.push(StructuralIssue::NonZeroDiagonal {
                    label: self.labels[i].clone(),
                    value: self.entries[i][i].to_string(),
                });
            }
            for j in (i + 1)..self.dim() {
                if self.entries[i][j] != self.entries[j][i] {
                    issues.push(StructuralIssue::NotSymmetric {
                        row: self.labels[i].clone(),
                        col: self.labels[j].clone(),
                        value: self.entries[i][j].to_string(),
                        mirror: self.entries[j][i].to_string(),
                    });
                }
                if !self.entries[i][j].is_positive() {
                    issues.push(StructuralIssue::NonPositive {
                        row: self.labels[i].clone(),
                        col: self.labels[j].clone(),
                        value: self.entries[i][j].to_string(),
                    });
                }
            }
        }
        if issues.is_empty() {
            Ok(())
        } else {
            Err(Error::Structure(issues))
        }
    }

    /// Every entry multiplied by `factor`.
    pub fn scaled(&self, factor: &Rational) -> DistanceMatrix {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e * factor).collect())
            .collect();
        DistanceMatrix {
            labels: self.labels.clone(),
            entries,
        }
    }

    /// Relabels and reorders by `perm`, where `perm[new] = old`.
    pub fn permuted(&self, perm: &[usize]) -> Result<DistanceMatrix> {
        let m = self.dim();
        let mut seen = vec![false; m];
        if perm.len() != m
            || perm
                .iter()
                .any(|&p| p >= m || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::InvalidParameter("not a permutation".into()));
        }
        let labels = perm.iter().map(|&p| self.labels[p].clone()).collect();
        let entries = perm
            .iter()
            .map(|&pi| {
                perm.iter()
                    .map(|&pj| self.entries[pi][pj].clone())
                    .collect()
            })
            .collect();
        DistanceMatrix::new(labels, entries)
    }
}

impl std::fmt::Debug for DistanceMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DistanceMatrix({}x{})", self.dim(), self.dim())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixDto {
    labels: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Serialize for DistanceMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let dto = MatrixDto {
            labels: self.labels.clone(),
            rows: self
                .entries
                .iter()
                .map(|row| row.iter().map(|e| e.to_string()).collect())
                .collect(),
        };
        dto.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DistanceMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let dto = MatrixDto::deserialize(deserializer)?;
        let mut entries = Vec::with_capacity(dto.rows.len());
        for row in &dto.rows {
            let mut parsed = Vec::with_capacity(row.len());
            for cell in row {
                parsed.push(cell.parse::<Rational>().map_err(D::Error::custom)?);
            }
            entries.push(parsed);
        }
        DistanceMatrix::new(dto.labels, entries).map_err(D::Error::custom)
    }
}

/// True when `entry(i,j)` is strictly below `entry(i,k) + entry(k,j)` for
/// every third index `k`; such entries correspond to edges of a realizing
/// graph. Exact arithmetic throughout.
pub fn is_indecomposable(d: &DistanceMatrix, i: usize, j: usize) -> Result<bool> {
    if i >= d.dim() || j >= d.dim() {
        return Err(Error::InvalidParameter(format!(
            "index out of range: ({i},{j}) in a {}x{} matrix",
            d.dim(),
            d.dim()
        )));
    }
    if i == j {
        return Err(Error::InvalidParameter(format!(
            "diagonal entry ({},{}) has no decomposition",
            d.label(i),
            d.label(i)
        )));
    }
    Ok(indecomposable_unchecked(d, i, j))
}

fn indecomposable_unchecked(d: &DistanceMatrix, i: usize, j: usize) -> bool {
    let target = d.entry(i, j);
    for k in 0..d.dim() {
        if k == i || k == j {
            continue;
        }
        if *target >= d.entry(i, k) + d.entry(k, j) {
            return false;
        }
    }
    true
}

/// The indecomposability structure of a matrix: for each index the set of
/// partners with an indecomposable entry, and the graph those pairs form.
#[derive(Clone, Debug)]
pub struct IndecomposabilityProfile {
    partners: Vec<BTreeSet<usize>>,
    edges: BTreeSet<Edge>,
}

impl IndecomposabilityProfile {
    pub fn dim(&self) -> usize {
        self.partners.len()
    }

    /// The set of indices whose entry with `x` is indecomposable.
    pub fn partners(&self, x: usize) -> &BTreeSet<usize> {
        &self.partners[x]
    }

    pub fn partner_count(&self, x: usize) -> usize {
        self.partners[x].len()
    }

    /// Edges of the indecomposability graph in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_edge(&self, i: usize, j: usize) -> bool {
        i != j && self.edges.contains(&Edge::new(i, j))
    }
}

/// Classifies every off-diagonal pair of `d`.
pub fn profile(d: &DistanceMatrix) -> IndecomposabilityProfile {
    let m = d.dim();
    let mut partners = vec![BTreeSet::new(); m];
    let mut edges = BTreeSet::new();
    for i in 0..m {
        for j in (i + 1)..m {
            if indecomposable_unchecked(d, i, j) {
                partners[i].insert(j);
                partners[j].insert(i);
                edges.insert(Edge::new(i, j));
            }
        }
    }
    IndecomposabilityProfile { partners, edges }
}
