use std::collections::BTreeSet;
use std::fmt::{self, Display};

use serde::{Deserialize, Serialize};

use super::GaussRational;
use crate::error::{check_budget, invalid, Result};
use crate::graph::{increasing_by_definition, increasing_by_lemma, iter_bits, Graph, MAX_MASK_EDGES, MAX_VERTICES};
use crate::poly::IntPolynomial;

/// An edge of a labeled multigraph: `0k` (no label) or `ij^label` with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiEdge {
    pub lo: u32,
    pub hi: u32,
    pub label: Option<GaussRational>,
}

impl MultiEdge {
    pub fn is_zero_edge(&self) -> bool {
        self.lo == 0
    }
}

impl Display for MultiEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.label {
            None => write!(f, "0{}", self.hi),
            Some(z) => write!(f, "{}{}^({z})", self.lo, self.hi),
        }
    }
}

/// Multigraph on `{0..n}`: at most one edge `0k` per `k`, and edges between
/// nonzero vertices carrying distinct nonzero Gaussian-rational labels.
///
/// Edges are kept grouped by their larger endpoint; within a group the
/// labeled edges come first, in input order, then the edge to 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledMultigraph {
    n: usize,
    edges: Vec<MultiEdge>,
}

#[derive(Serialize, Deserialize)]
struct MultigraphJson {
    n: usize,
    #[serde(default)]
    zero_edges: Vec<u32>,
    #[serde(default)]
    edges: Vec<(u32, u32, GaussRational)>,
}

impl LabeledMultigraph {
    pub fn new<Z, L>(n: usize, zero_edges: Z, labeled: L) -> Result<Self>
    where
        Z: IntoIterator<Item = u32>,
        L: IntoIterator<Item = (u32, u32, GaussRational)>,
    {
        if n == 0 {
            return Err(invalid("a labeled multigraph needs n >= 1"));
        }
        if n > MAX_VERTICES {
            return Err(invalid(format!("{n} vertices exceeds the limit of {MAX_VERTICES}")));
        }
        let mut edges = Vec::new();
        let mut seen_zero = BTreeSet::new();
        for k in zero_edges {
            if k < 1 || k as usize > n {
                return Err(invalid(format!("edge 0{k} has an endpoint outside 0..={n}")));
            }
            if !seen_zero.insert(k) {
                return Err(invalid(format!("duplicate edge 0{k}")));
            }
        }
        let mut seen = BTreeSet::new();
        for (i, j, z) in labeled {
            if i == 0 || j == 0 {
                return Err(invalid("edges at vertex 0 go in zero_edges and carry no label"));
            }
            if i >= j || j as usize > n {
                return Err(invalid(format!("labeled edge {i}{j} must satisfy 1 <= i < j <= {n}")));
            }
            if num_traits::Zero::is_zero(&z) {
                return Err(invalid(format!("edge {i}{j} has label zero")));
            }
            if !seen.insert((i, j, z.clone())) {
                return Err(invalid(format!("two edges {i}{j} share the label {z}")));
            }
            edges.push(MultiEdge {
                lo: i,
                hi: j,
                label: Some(z),
            });
        }
        edges.extend(seen_zero.into_iter().map(|k| MultiEdge {
            lo: 0,
            hi: k,
            label: None,
        }));
        edges.sort_by_key(|e| (e.hi, e.is_zero_edge()));
        Ok(Self { n, edges })
    }

    /// A simple graph with every edge labeled 1 and no edges at 0.
    pub fn from_graph(g: &Graph) -> Self {
        Self::new(
            g.n().max(1),
            [],
            g.edges().iter().map(|e| (e.lo, e.hi, GaussRational::from(1))),
        )
        .expect("simple graphs embed")
    }

    /// Reads `{"n": .., "zero_edges": [k, ..], "edges": [[i, j, {"re": .., "im": ..}], ..]}`.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: MultigraphJson = serde_json::from_value(value.clone())
            .map_err(|e| invalid(format!("multigraph JSON: {e}")))?;
        Self::new(raw.n, raw.zero_edges, raw.edges)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(MultigraphJson {
            n: self.n,
            zero_edges: self.edges.iter().filter(|e| e.is_zero_edge()).map(|e| e.hi).collect(),
            edges: self
                .edges
                .iter()
                .filter_map(|e| e.label.clone().map(|z| (e.lo, e.hi, z)))
                .collect(),
        })
        .expect("multigraph serializes")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges in block order; this is also the hyperplane and atom order.
    pub fn edges(&self) -> &[MultiEdge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_zero_edge(&self, k: u32) -> bool {
        self.edges.iter().any(|e| e.is_zero_edge() && e.hi == k)
    }

    pub fn has_labeled_edge(&self, i: u32, j: u32, z: &GaussRational) -> bool {
        self.edges
            .iter()
            .any(|e| e.lo == i && e.hi == j && e.label.as_ref() == Some(z))
    }

    /// Labels of the edges between `i < j`, in order.
    pub fn labels(&self, i: u32, j: u32) -> Vec<&GaussRational> {
        self.edges
            .iter()
            .filter(|e| e.lo == i && e.hi == j)
            .filter_map(|e| e.label.as_ref())
            .collect()
    }

    pub fn is_real(&self) -> bool {
        self.edges
            .iter()
            .all(|e| e.label.as_ref().is_none_or(GaussRational::is_real))
    }

    /// All labels are `+1` or `-1`.
    pub fn is_signed(&self) -> bool {
        self.edges
            .iter()
            .all(|e| e.label.as_ref().is_none_or(|z| z.sign_unit().is_some()))
    }

    /// `|E_k|` for `k = 1..=n`.
    pub fn block_sizes(&self) -> Vec<u64> {
        let mut sizes = vec![0u64; self.n];
        for e in &self.edges {
            sizes[e.hi as usize - 1] += 1;
        }
        sizes
    }

    /// Index of the block (`k - 1`) holding each edge.
    pub fn edge_blocks(&self) -> Vec<usize> {
        self.edges.iter().map(|e| e.hi as usize - 1).collect()
    }
}

impl Display for LabeledMultigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges.iter().map(ToString::to_string).collect();
        write!(f, "multigraph n={} [{}]", self.n, edges.join(", "))
    }
}

/// `prod_k (t + |E_k|)`
pub fn multigraph_isf_polynomial(g: &LabeledMultigraph) -> IntPolynomial {
    IntPolynomial::from_linear_factors(&g.block_sizes(), 0)
}

/// Increasing spanning forests counted by edge count, checked by both the
/// local criterion and the path definition (which must agree).
pub fn enumerate_multigraph_isf(g: &LabeledMultigraph, budget: usize) -> Result<Vec<u64>> {
    let q = g.edge_count();
    check_budget("edge count", q, budget.min(MAX_MASK_EDGES))?;
    let mut counts = vec![0u64; q + 1];
    let mut pairs = Vec::with_capacity(q);
    for mask in 0u64..(1u64 << q) {
        pairs.clear();
        pairs.extend(iter_bits(mask).map(|i| (g.edges[i].lo, g.edges[i].hi)));
        let by_def = increasing_by_definition(g.n as u32, &pairs);
        if by_def != increasing_by_lemma(pairs.iter().copied()) {
            return Err(crate::error::Error::Disagreement(format!(
                "increasing-forest tests disagree on {pairs:?} in {g}"
            )));
        }
        if by_def {
            counts[pairs.len()] += 1;
        }
    }
    while counts.len() > 1 && counts.last() == Some(&0) {
        counts.pop();
    }
    Ok(counts)
}

/// Which closure rule failed, with the edges involved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabelingViolation {
    pub condition: u8,
    pub present: Vec<String>,
    pub missing: String,
}

/// Checks the three closure rules:
/// 1. edges `ik^a`, `jk^b` (`i < j < k`) need `ij^(a/b)`;
/// 2. two edges `jk` with different labels need `0j`;
/// 3. edges `jk` and `0k` need `0j`.
///
/// Rules 2 and 3 only involve the pair `j < k`, and are checked for every
/// such pair.
pub fn perfect_labeling_violation(g: &LabeledMultigraph) -> Option<LabelingViolation> {
    let n = g.n as u32;
    for k in 1..=n {
        for i in 1..k {
            for j in i + 1..k {
                for a in g.labels(i, k) {
                    for b in g.labels(j, k) {
                        let ratio = a.clone() / b;
                        if !g.has_labeled_edge(i, j, &ratio) {
                            return Some(LabelingViolation {
                                condition: 1,
                                present: vec![edge_name(i, k, a), edge_name(j, k, b)],
                                missing: edge_name(i, j, &ratio),
                            });
                        }
                    }
                }
            }
        }
        for j in 1..k {
            let labels = g.labels(j, k);
            if labels.len() >= 2 && !g.has_zero_edge(j) {
                return Some(LabelingViolation {
                    condition: 2,
                    present: vec![edge_name(j, k, labels[0]), edge_name(j, k, labels[1])],
                    missing: format!("0{j}"),
                });
            }
            if let Some(z) = labels.first() {
                if g.has_zero_edge(k) && !g.has_zero_edge(j) {
                    return Some(LabelingViolation {
                        condition: 3,
                        present: vec![edge_name(j, k, z), format!("0{k}")],
                        missing: format!("0{j}"),
                    });
                }
            }
        }
    }
    None
}

fn edge_name(i: u32, j: u32, z: &GaussRational) -> String {
    format!("{i}{j}^({z})")
}

pub fn is_perfectly_labeled(g: &LabeledMultigraph) -> bool {
    perfect_labeling_violation(g).is_none()
}
