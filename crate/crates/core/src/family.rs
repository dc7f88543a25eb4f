//! Graph families as interchangeable strategies.
//!
//! Each supported family (generalized Petersen, Kneser, odd graphs) sits
//! behind the [`GraphFamily`] trait and is selected at runtime by a name
//! such as `gp:5,2` through the [`FamilyRegistry`]. The characterizer only
//! talks to the trait, so adding a family means implementing it and
//! registering a parser.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// How strictly the characterization theorems are applied to families whose
/// coverage is only partial (Kneser graphs that are not odd graphs).
#[derive(Copy, Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Only families fully covered by the theorems are accepted.
    #[default]
    Strict,
    /// Kneser graphs with girth 3 or 4 are accepted; the chain condition is
    /// reported but not enforced, and the verdict is marked partial.
    Permissive,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Strict => write!(f, "strict"),
            Mode::Permissive => write!(f, "permissive"),
        }
    }
}

/// Canonical frame of the unit family graph, in unit-graph vertex indices:
/// the reference cycle whose image under an isomorphism becomes the outer
/// cycle of a frame certificate. Empty when the unit graph is acyclic.
#[derive(Clone, Debug)]
pub struct UnitFrame {
    pub outer: Vec<usize>,
    pub inner_shift: Option<usize>,
}

/// A family of graphs the characterization theorems speak about.
pub trait GraphFamily: Send + Sync {
    /// Canonical identifier, e.g. `gp:5,2` or `kneser:7,3`.
    fn id(&self) -> String;

    /// Number of vertices of every member of the family instance.
    fn vertex_count(&self) -> usize;

    /// Common vertex degree; the count condition (a) pins for every
    /// indecomposable-partner set.
    fn degree(&self) -> usize;

    /// The family graph with all weights 1 and canonical labels.
    fn unit_graph(&self) -> WeightedGraph;

    /// Errors when the instance lies outside the scope of the theorems.
    fn scope_check(&self, mode: Mode) -> Result<()>;

    /// Whether the chain condition (b) is part of the contract under `mode`.
    fn enforces_chain_condition(&self, mode: Mode) -> bool;

    /// Reference cycle used to present condition (c) certificates.
    fn canonical_frame(&self) -> UnitFrame;
}

/// Generalized Petersen graph on parameters `(n, k)`: outer cycle
/// `u0..u(n-1)`, spokes `ui - vi`, inner star `vi - v(i+k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedPetersen {
    n: usize,
    k: usize,
}

impl GeneralizedPetersen {
    /// Requires `n >= 3` and `1 <= k < n/2`. Parameters with `k >= n/2` are
    /// rejected rather than normalized, so each instance has one identity.
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < 3 || k < 1 || 2 * k >= n {
            return Err(Error::InvalidParameter(format!(
                "gp:{n},{k}: requires n >= 3 and 1 <= k < n/2"
            )));
        }
        Ok(GeneralizedPetersen { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

impl GraphFamily for GeneralizedPetersen {
    fn id(&self) -> String {
        format!("gp:{},{}", self.n, self.k)
    }

    fn vertex_count(&self) -> usize {
        2 * self.n
    }

    fn degree(&self) -> usize {
        3
    }

    fn unit_graph(&self) -> WeightedGraph {
        let n = self.n;
        let mut labels = Vec::with_capacity(2 * n);
        labels.extend((0..n).map(|i| format!("u{i}")));
        labels.extend((0..n).map(|i| format!("v{i}")));
        let mut pairs = Vec::with_capacity(3 * n);
        for i in 0..n {
            pairs.push((i, (i + 1) % n));
            pairs.push((i, n + i));
            pairs.push((n + i, n + (i + self.k) % n));
        }
        WeightedGraph::unit(labels, pairs).expect("generator emits a valid graph")
    }

    fn scope_check(&self, _mode: Mode) -> Result<()> {
        let relation = if self.k == 1 {
            Some("k = 1")
        } else if self.n == 3 * self.k {
            Some("n = 3k")
        } else if self.n == 4 * self.k {
            Some("n = 4k")
        } else {
            None
        };
        match relation {
            Some(rel) => Err(Error::OutOfScope {
                family: self.id(),
                relation: format!("{rel} (girth below 5)"),
            }),
            None => Ok(()),
        }
    }

    fn enforces_chain_condition(&self, _mode: Mode) -> bool {
        true
    }

    fn canonical_frame(&self) -> UnitFrame {
        UnitFrame {
            outer: (0..self.n).collect(),
            inner_shift: Some(self.k),
        }
    }
}

/// Kneser graph on parameters `(n, k)`: vertices are the k-subsets of
/// `{1..n}`, adjacent exactly when disjoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kneser {
    n: usize,
    k: usize,
}

/// Desk-scale guard for Kneser generation.
const MAX_KNESER_VERTICES: usize = 20_000;

impl Kneser {
    /// Requires `n >= 2k >= 2`.
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k < 1 || n < 2 * k {
            return Err(Error::InvalidParameter(format!(
                "kneser:{n},{k}: requires n >= 2k >= 2"
            )));
        }
        match binomial(n, k) {
            Some(v) if v <= MAX_KNESER_VERTICES => Ok(Kneser { n, k }),
            _ => Err(Error::InvalidParameter(format!(
                "kneser:{n},{k}: too many vertices (limit {MAX_KNESER_VERTICES})"
            ))),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Odd graphs are the Kneser graphs on `(2l-1, l-1)`.
    pub fn is_odd_graph(&self) -> bool {
        self.n == 2 * self.k + 1
    }
}

impl GraphFamily for Kneser {
    fn id(&self) -> String {
        format!("kneser:{},{}", self.n, self.k)
    }

    fn vertex_count(&self) -> usize {
        binomial(self.n, self.k).expect("validated at construction")
    }

    fn degree(&self) -> usize {
        binomial(self.n - self.k, self.k).expect("validated at construction")
    }

    fn unit_graph(&self) -> WeightedGraph {
        let subsets = k_subsets(self.n, self.k);
        let labels: Vec<String> = subsets.iter().map(|s| subset_label(s)).collect();
        let mut pairs = Vec::new();
        for i in 0..subsets.len() {
            for j in (i + 1)..subsets.len() {
                if disjoint(&subsets[i], &subsets[j]) {
                    pairs.push((i, j));
                }
            }
        }
        WeightedGraph::unit(labels, pairs).expect("generator emits a valid graph")
    }

    fn scope_check(&self, mode: Mode) -> Result<()> {
        if mode == Mode::Permissive {
            return Ok(());
        }
        if !self.is_odd_graph() {
            return Err(Error::OutOfScope {
                family: self.id(),
                relation: "not an odd graph (n != 2k+1); girth may be 3 or 4 (use permissive mode)"
                    .into(),
            });
        }
        if self.k < 2 {
            return Err(Error::OutOfScope {
                family: self.id(),
                relation: "odd graph with l = 2 is a triangle (girth 3)".into(),
            });
        }
        Ok(())
    }

    fn enforces_chain_condition(&self, mode: Mode) -> bool {
        match mode {
            Mode::Strict => true,
            Mode::Permissive => self.is_odd_graph() && self.k >= 2,
        }
    }

    fn canonical_frame(&self) -> UnitFrame {
        UnitFrame {
            outer: lexmin_girth_cycle(&self.unit_graph()),
            inner_shift: None,
        }
    }
}

fn disjoint(a: &[usize], b: &[usize]) -> bool {
    // Both sorted.
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return false,
        }
    }
    true
}

fn subset_label(subset: &[usize]) -> String {
    let inner = subset
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",");
    format!("{{{inner}}}")
}

/// All k-subsets of `{1..n}` in lexicographic order.
fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn recurse(
        n: usize,
        k: usize,
        start: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let remaining = k - current.len();
        for x in start..=(n + 1 - remaining) {
            current.push(x);
            recurse(n, k, x + 1, current, out);
            current.pop();
        }
    }
    recurse(n, k, 1, &mut current, &mut out);
    out
}

pub(crate) fn binomial(n: usize, k: usize) -> Option<usize> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)?;
        acc /= (i + 1) as u128;
    }
    usize::try_from(acc).ok()
}

/// The lexicographically smallest shortest cycle of `g`, compared as label
/// sequences: starts at the smallest-label vertex lying on any shortest
/// cycle and extends by smallest labels first. Empty when `g` is acyclic.
pub(crate) fn lexmin_girth_cycle(g: &WeightedGraph) -> Vec<usize> {
    let target = match crate::girth::girth(g) {
        crate::girth::Girth::Finite(len) => len,
        crate::girth::Girth::Infinite => return Vec::new(),
    };
    let n = g.vertex_count();
    let mut by_label: Vec<usize> = (0..n).collect();
    by_label.sort_by(|a, b| g.label(*a).cmp(g.label(*b)));
    let mut rank = vec![0usize; n];
    for (r, v) in by_label.iter().enumerate() {
        rank[*v] = r;
    }
    // Neighbor lists in ascending label rank.
    let mut nbrs: Vec<Vec<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().map(|(u, _)| *u).collect())
        .collect();
    for list in &mut nbrs {
        list.sort_by_key(|v| rank[*v]);
    }

    fn search(
        root: usize,
        current: usize,
        remaining: usize,
        rank: &[usize],
        nbrs: &[Vec<usize>],
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
    ) -> bool {
        if remaining == 0 {
            return nbrs[current].contains(&root);
        }
        for &next in &nbrs[current] {
            if on_path[next] || rank[next] <= rank[root] {
                continue;
            }
            path.push(next);
            on_path[next] = true;
            if search(root, next, remaining - 1, rank, nbrs, path, on_path) {
                return true;
            }
            on_path[next] = false;
            path.pop();
        }
        false
    }

    for &root in &by_label {
        let mut path = vec![root];
        let mut on_path = vec![false; n];
        on_path[root] = true;
        if search(
            root,
            root,
            target - 1,
            &rank,
            &nbrs,
            &mut path,
            &mut on_path,
        ) {
            return path;
        }
    }
    Vec::new()
}

/// Parses the argument part of a family string into a boxed strategy.
pub type FamilyParser = fn(&str) -> Result<Arc<dyn GraphFamily>>;

/// Name-indexed registry of family strategies. Family strings have the form
/// `<name>:<args>`, e.g. `gp:5,2`, `kneser:7,3`, `odd:4`.
pub struct FamilyRegistry {
    entries: Vec<(&'static str, FamilyParser)>,
}

impl FamilyRegistry {
    pub fn empty() -> Self {
        FamilyRegistry {
            entries: Vec::new(),
        }
    }

    /// Registry with the built-in families: `gp`, `kneser`, `odd`.
    pub fn builtin() -> Self {
        let mut reg = FamilyRegistry::empty();
        reg.register("gp", |args| {
            let (n, k) = parse_two(args, "gp")?;
            Ok(Arc::new(GeneralizedPetersen::new(n, k)?))
        });
        reg.register("kneser", |args| {
            let (n, k) = parse_two(args, "kneser")?;
            Ok(Arc::new(Kneser::new(n, k)?))
        });
        reg.register("odd", |args| {
            let l: usize = args.trim().parse().map_err(|_| {
                Error::InvalidParameter(format!("odd:{args}: expected a single integer"))
            })?;
            if l < 2 {
                return Err(Error::InvalidParameter(format!("odd:{l}: requires l >= 2")));
            }
            Ok(Arc::new(Kneser::new(2 * l - 1, l - 1)?))
        });
        reg
    }

    pub fn register(&mut self, name: &'static str, parser: FamilyParser) {
        self.entries.retain(|(n, _)| *n != name);
        self.entries.push((name, parser));
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|(n, _)| *n).collect()
    }

    pub fn parse(&self, spec: &str) -> Result<Arc<dyn GraphFamily>> {
        let (name, args) = spec.split_once(':').ok_or_else(|| {
            Error::InvalidParameter(format!(
                "family '{spec}': expected <name>:<args>, e.g. gp:5,2"
            ))
        })?;
        let parser = self
            .entries
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, p)| p)
            .ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "unknown family '{name}' (known: {})",
                    self.names().join(", ")
                ))
            })?;
        parser(args)
    }
}

impl Default for FamilyRegistry {
    fn default() -> Self {
        FamilyRegistry::builtin()
    }
}

fn parse_two(args: &str, name: &str) -> Result<(usize, usize)> {
    let err = || {
        Error::InvalidParameter(format!(
            "{name}:{args}: expected two integers as {name}:n,k"
        ))
    };
    let (a, b) = args.split_once(',').ok_or_else(err)?;
    let n = a.trim().parse().map_err(|_| err())?;
    let k = b.trim().parse().map_err(|_| err())?;
    Ok((n, k))
}

/// Unit-weight generalized Petersen graph `G(n,k)`.
pub fn generate_generalized_petersen(n: usize, k: usize) -> Result<WeightedGraph> {
    Ok(GeneralizedPetersen::new(n, k)?.unit_graph())
}

/// Unit-weight Kneser graph `KG(n,k)`.
pub fn generate_kneser(n: usize, k: usize) -> Result<WeightedGraph> {
    Ok(Kneser::new(n, k)?.unit_graph())
}

/// Unit-weight odd graph `O_l = KG(2l-1, l-1)`; requires `l >= 2`.
pub fn generate_odd_graph(l: usize) -> Result<WeightedGraph> {
    if l < 2 {
        return Err(Error::InvalidParameter(format!("odd:{l}: requires l >= 2")));
    }
    generate_kneser(2 * l - 1, l - 1)
}

/// True when `G(n,k)` avoids the degenerate relations (`n = 3k`, `n = 4k`,
/// `k = 1`) that force its girth below 5. Errors outside the GP domain.
pub fn gp_girth_precondition(n: usize, k: usize) -> Result<bool> {
    GeneralizedPetersen::new(n, k)?;
    Ok(n != 3 * k && n != 4 * k && k != 1)
}

/// Breadth-first distances from `src`, counting edges; a unit-weight
/// distance oracle for the unit tests.
#[cfg(test)]
pub(crate) fn bfs_hops(g: &WeightedGraph, src: usize) -> Vec<Option<usize>> {
    let n = g.vertex_count();
    let mut dist = vec![None; n];
    dist[src] = Some(0);
    let mut queue = std::collections::VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        for (v, _) in g.neighbors(u) {
            if dist[*v].is_none() {
                dist[*v] = Some(dist[u].unwrap() + 1);
                queue.push_back(*v);
            }
        }
    }
    dist
}
