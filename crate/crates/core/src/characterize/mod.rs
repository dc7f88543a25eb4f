//! Deciding whether a matrix is the distance matrix of a positively
//! weighted family graph in which every edge is useful, and reconstructing
//! that graph when it is.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{GraphFamily, Mode};
use crate::graph::WeightedGraph;
use crate::iso::are_isomorphic;
use crate::metric::{
    all_pairs_distances, profile, useful_edges, DistanceMatrix, IndecomposabilityProfile,
    DEFAULT_GEODESIC_CAP,
};
use crate::rational::Rational;

mod conditions;

pub use conditions::{check_condition_a, check_condition_b, check_condition_c, check_condition_d};
use conditions::{
    condition_a_from_profile, condition_b_from_profile, condition_c_from_profile,
    condition_d_from_profile, ensure_dimension,
};

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
pub enum ConditionId {
    A,
    B,
    C,
    D,
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConditionId::A => write!(f, "A"),
            ConditionId::B => write!(f, "B"),
            ConditionId::C => write!(f, "C"),
            ConditionId::D => write!(f, "D"),
        }
    }
}

/// A certificate of one violation: the labels involved and the exact values
/// that exhibit it, re-checkable from the matrix alone.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub labels: Vec<String>,
    pub values: Vec<Rational>,
    pub note: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) [{}]: {}",
            self.labels.join(","),
            self.values
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(", "),
            self.note
        )
    }
}

/// Verdict for a single condition. `holds` is false exactly when witnesses
/// exist. `enforced` records whether the condition gates realizability in
/// the current mode (the chain condition is reported but not enforced for
/// Kneser graphs outside the odd-graph regime in permissive mode).
#[derive(Clone, Debug, Serialize)]
pub struct ConditionResult {
    pub id: ConditionId,
    pub holds: bool,
    pub enforced: bool,
    pub witnesses: Vec<Witness>,
}

impl ConditionResult {
    pub(crate) fn new(id: ConditionId, witnesses: Vec<Witness>) -> Self {
        ConditionResult {
            id,
            holds: witnesses.is_empty(),
            enforced: true,
            witnesses,
        }
    }
}

/// The structural certificate extracted from a successful condition (c):
/// the image of the family's reference cycle, the unique off-cycle partner
/// of each cycle vertex when defined, and the inner shift for generalized
/// Petersen families.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrameCertificate {
    pub outer: Vec<String>,
    pub hats: BTreeMap<String, String>,
    pub inner_shift: Option<usize>,
}

/// How condition C is decided, cited in every verdict's notes so reports
/// are self-describing: the check is the structural fact the
/// reconstruction needs, not a weaker cycle-plus-partners reading.
pub const CONDITION_C_INTERPRETATION: &str = "condition C interpreted as: the graph of \
indecomposable pairs is isomorphic to the reference family graph; the certificate is the \
lexicographically smallest isomorphic image of the family's canonical cycle";

/// Outcome of classifying one matrix against one family.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub family: String,
    pub mode: Mode,
    pub realizable: bool,
    /// True when some condition was reported but not enforced, so the
    /// verdict does not rest on the full theorem.
    pub partial: bool,
    pub conditions: Vec<ConditionResult>,
    pub frame: Option<FrameCertificate>,
    pub realization: Option<WeightedGraph>,
    /// Always cites the interpretation of condition C; adds the partial
    /// disclaimer in permissive mode.
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn condition(&self, id: ConditionId) -> &ConditionResult {
        self.conditions
            .iter()
            .find(|c| c.id == id)
            .expect("all four conditions are always present")
    }
}

/// Runs the full pipeline: structural validation, theorem scope, dimension,
/// then conditions (a) through (d) with (c) gated on (a) and the enforced
/// part of (b). On success the realization is attached.
pub fn classify(d: &DistanceMatrix, f: &dyn GraphFamily, mode: Mode) -> Result<Verdict> {
    d.validate_structure()?;
    f.scope_check(mode)?;
    ensure_dimension(d, f)?;

    let p = profile(d);
    let a = condition_a_from_profile(d, f, &p);
    let mut b = condition_b_from_profile(d, &p);
    b.enforced = f.enforces_chain_condition(mode);

    let gate = a.holds && (b.holds || !b.enforced);
    let (c, frame) = if gate {
        condition_c_from_profile(d, f, &p)
    } else {
        let witness = Witness {
            labels: Vec::new(),
            values: Vec::new(),
            note: "not evaluated: conditions (a) and (b) must hold first".to_string(),
        };
        (
            ConditionResult {
                id: ConditionId::C,
                holds: false,
                enforced: true,
                witnesses: vec![witness],
            },
            None,
        )
    };
    let dd = condition_d_from_profile(d, &p);

    let realizable = a.holds && (b.holds || !b.enforced) && c.holds && dd.holds;
    let realization = if realizable {
        Some(skeleton_realization(d, &p)?)
    } else {
        None
    };
    let partial = !b.enforced;
    let mut notes = vec![CONDITION_C_INTERPRETATION.to_string()];
    if partial {
        notes.push(format!(
            "chain condition B reported but not enforced: {} is not an odd graph, \
             so the characterization is only partial",
            f.id()
        ));
    }
    Ok(Verdict {
        family: f.id(),
        mode,
        realizable,
        partial,
        conditions: vec![a, b, c, dd],
        frame,
        realization,
        notes,
    })
}

/// The graph whose edges are the indecomposable pairs, each weighted by its
/// matrix entry.
fn skeleton_realization(d: &DistanceMatrix, p: &IndecomposabilityProfile) -> Result<WeightedGraph> {
    let edges = p
        .edges()
        .map(|e| (e.a(), e.b(), d.entry(e.a(), e.b()).clone()))
        .collect();
    WeightedGraph::new(d.labels().to_vec(), edges)
}

/// Reconstructs the unique weighted family graph realizing `d`. Errors with
/// the failing conditions when the matrix does not pass [`classify`].
pub fn realize(d: &DistanceMatrix, f: &dyn GraphFamily, mode: Mode) -> Result<WeightedGraph> {
    let verdict = classify(d, f, mode)?;
    match verdict.realization {
        Some(g) => Ok(g),
        None => Err(Error::NotRealizable {
            failing: verdict
                .conditions
                .into_iter()
                .filter(|c| c.enforced && !c.holds)
                .collect(),
        }),
    }
}

/// Independent confirmation of a claimed realization: recomputes the
/// distance matrix, the usefulness of every edge, and the unweighted family
/// isomorphism, reporting each verdict with counterexamples.
#[derive(Clone, Debug, Serialize)]
pub struct RealizationReport {
    pub distances_match: bool,
    pub all_edges_useful: bool,
    pub family_isomorphic: bool,
    pub counterexamples: Vec<String>,
}

impl RealizationReport {
    pub fn all_true(&self) -> bool {
        self.distances_match && self.all_edges_useful && self.family_isomorphic
    }
}

pub fn verify_realization(
    g: &WeightedGraph,
    d: &DistanceMatrix,
    f: &dyn GraphFamily,
) -> RealizationReport {
    let mut counterexamples = Vec::new();

    let distances_match = check_distances(g, d, &mut counterexamples);

    let all_edges_useful = match useful_edges(g, DEFAULT_GEODESIC_CAP) {
        Ok(u) => {
            let useless = u.useless_edges();
            for e in &useless {
                counterexamples.push(format!("useless edge {}", g.describe_edge(*e)));
            }
            useless.is_empty()
        }
        Err(err) => {
            counterexamples.push(format!("usefulness not computable: {err}"));
            false
        }
    };

    let family_isomorphic = are_isomorphic(g, &f.unit_graph(), false).is_some();
    if !family_isomorphic {
        counterexamples.push(format!("graph is not isomorphic to {}", f.id()));
    }

    RealizationReport {
        distances_match,
        all_edges_useful,
        family_isomorphic,
        counterexamples,
    }
}

fn check_distances(g: &WeightedGraph, d: &DistanceMatrix, notes: &mut Vec<String>) -> bool {
    if g.vertex_count() != d.dim() {
        notes.push(format!(
            "dimension mismatch: graph has {} vertices, matrix {}",
            g.vertex_count(),
            d.dim()
        ));
        return false;
    }
    let mut to_graph = Vec::with_capacity(d.dim());
    for label in d.labels() {
        match g.index_of(label) {
            Some(idx) => to_graph.push(idx),
            None => {
                notes.push(format!("matrix label '{label}' missing from the graph"));
                return false;
            }
        }
    }
    let computed = match all_pairs_distances(g) {
        Ok(c) => c,
        Err(err) => {
            notes.push(format!("distances not computable: {err}"));
            return false;
        }
    };
    let mut ok = true;
    for i in 0..d.dim() {
        for j in (i + 1)..d.dim() {
            let actual = computed.entry(to_graph[i], to_graph[j]);
            if actual != d.entry(i, j) {
                notes.push(format!(
                    "distance mismatch at ({},{}): matrix {} vs graph {}",
                    d.label(i),
                    d.label(j),
                    d.entry(i, j),
                    actual
                ));
                ok = false;
            }
        }
    }
    ok
}
