use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Display};

use serde_json::Value;

use super::{avoids_set, tight_checked, Pattern};
use crate::error::{check_budget, invalid, Result};
use crate::graph::{iter_bits, Graph, MAX_MASK_EDGES};
use crate::poly::IntPolynomial;

/// A forest on distinct positive labels, each tree rooted at its minimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedLabeledForest {
    parent: BTreeMap<u32, Option<u32>>,
}

impl RootedLabeledForest {
    /// Builds from a parent map (`None` marks a root).
    pub fn new(parent: BTreeMap<u32, Option<u32>>) -> Result<Self> {
        if parent.contains_key(&0) {
            return Err(invalid("labels must be positive"));
        }
        for (&v, &p) in &parent {
            if let Some(p) = p {
                if !parent.contains_key(&p) {
                    return Err(invalid(format!("parent {p} of {v} is not a label")));
                }
            }
        }
        let f = Self { parent };
        for &v in f.parent.keys() {
            // walking up must reach a root within |labels| steps
            let mut cur = v;
            let mut steps = 0;
            while let Some(p) = f.parent[&cur] {
                cur = p;
                steps += 1;
                if steps > f.parent.len() {
                    return Err(invalid(format!("parent map has a cycle through {v}")));
                }
            }
            if v < cur {
                return Err(invalid(format!("root {cur} is not the minimum of its tree (contains {v})")));
            }
        }
        Ok(f)
    }

    /// Roots each component of the edge set at its minimum. Fails on cycles.
    pub fn from_edges(vertices: impl IntoIterator<Item = u32>, edges: &[(u32, u32)]) -> Result<Self> {
        let vertices: BTreeSet<u32> = vertices.into_iter().collect();
        let mut adj: BTreeMap<u32, Vec<u32>> = vertices.iter().map(|&v| (v, Vec::new())).collect();
        for &(a, b) in edges {
            if a == b {
                return Err(invalid(format!("loop at {a}")));
            }
            for (x, y) in [(a, b), (b, a)] {
                adj.get_mut(&x)
                    .ok_or_else(|| invalid(format!("edge endpoint {x} is not a vertex")))?
                    .push(y);
            }
        }
        let mut parent: BTreeMap<u32, Option<u32>> = BTreeMap::new();
        let mut seen_edges = 0usize;
        for &root in &vertices {
            if parent.contains_key(&root) {
                continue;
            }
            parent.insert(root, None);
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &w in &adj[&v] {
                    if parent[&v] == Some(w) {
                        continue;
                    }
                    if parent.contains_key(&w) {
                        return Err(invalid(format!("edges contain a cycle through {v}{w}")));
                    }
                    parent.insert(w, Some(v));
                    seen_edges += 1;
                    stack.push(w);
                }
            }
        }
        if seen_edges != edges.len() {
            return Err(invalid("repeated edge"));
        }
        Self::new(parent)
    }

    /// Spanning forest of `g` given by an edge mask.
    pub fn from_graph_mask(g: &Graph, mask: u64) -> Result<Self> {
        let edges: Vec<(u32, u32)> = iter_bits(mask)
            .map(|i| (g.edges()[i].lo, g.edges()[i].hi))
            .collect();
        Self::from_edges(g.vertices(), &edges)
    }

    /// Reads `{"labels": [..], "parents": {"v": "p" or null}}`. Parents may
    /// also be given as numbers; labels missing from `parents` are roots.
    pub fn from_json(value: &Value) -> Result<Self> {
        let label = |v: &Value| -> Result<u32> {
            match v {
                Value::Number(n) => n.as_u64().and_then(|x| u32::try_from(x).ok()),
                Value::String(s) => s.trim().parse().ok(),
                _ => None,
            }
            .ok_or_else(|| invalid(format!("bad label {v}")))
        };
        let labels = value
            .get("labels")
            .and_then(Value::as_array)
            .ok_or_else(|| invalid("forest JSON needs a \"labels\" array"))?;
        let mut parent = BTreeMap::new();
        for v in labels {
            if parent.insert(label(v)?, None).is_some() {
                return Err(invalid(format!("repeated label {v}")));
            }
        }
        if let Some(ps) = value.get("parents") {
            let ps = ps.as_object().ok_or_else(|| invalid("\"parents\" must be an object"))?;
            for (k, p) in ps {
                let v: u32 = k.parse().map_err(|_| invalid(format!("bad label {k:?}")))?;
                let slot = parent
                    .get_mut(&v)
                    .ok_or_else(|| invalid(format!("{v} appears in parents but not labels")))?;
                *slot = if p.is_null() { None } else { Some(label(p)?) };
            }
        }
        Self::new(parent)
    }

    pub fn to_json(&self) -> Value {
        let parents: serde_json::Map<String, Value> = self
            .parent
            .iter()
            .map(|(v, p)| (v.to_string(), p.map_or(Value::Null, |p| Value::String(p.to_string()))))
            .collect();
        serde_json::json!({ "labels": self.labels(), "parents": parents })
    }

    pub fn labels(&self) -> Vec<u32> {
        self.parent.keys().copied().collect()
    }

    pub fn parent(&self, v: u32) -> Option<u32> {
        self.parent.get(&v).copied().flatten()
    }

    pub fn roots(&self) -> Vec<u32> {
        self.parent
            .iter()
            .filter(|(_, p)| p.is_none())
            .map(|(&v, _)| v)
            .collect()
    }

    pub fn edges(&self) -> Vec<(u32, u32)> {
        self.parent
            .iter()
            .filter_map(|(&v, &p)| p.map(|p| (p.min(v), p.max(v))))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.parent.values().filter(|p| p.is_some()).count()
    }

    fn has_children(&self) -> BTreeSet<u32> {
        self.parent.values().filter_map(|&p| p).collect()
    }

    /// Path from the root down to `v`.
    pub fn root_path(&self, v: u32) -> Vec<u32> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent(cur) {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    /// One path from a root to each vertex, so every path starting at a root.
    pub fn root_paths(&self) -> Vec<Vec<u32>> {
        self.parent.keys().map(|&v| self.root_path(v)).collect()
    }

    pub fn leaf_paths(&self) -> Vec<Vec<u32>> {
        let inner = self.has_children();
        self.parent
            .keys()
            .filter(|v| !inner.contains(v))
            .map(|&v| self.root_path(v))
            .collect()
    }

    /// Every root-to-leaf path avoids every pattern of `set`.
    pub fn avoids(&self, set: &[Pattern]) -> bool {
        self.leaf_paths()
            .iter()
            .all(|p| avoids_set(p, set).expect("labels are distinct"))
    }

    /// Every root path avoids 21.
    pub fn is_increasing(&self) -> bool {
        self.avoids(&[Pattern::parse("21").expect("valid pattern")])
    }

    /// Root-to-leaf paths avoid 231, 312 and 321; each path is also checked
    /// against the involution characterization.
    pub fn is_tight(&self) -> Result<bool> {
        for p in self.leaf_paths() {
            if !tight_checked(&p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The same test over every root path, not only the maximal ones.
    pub fn is_tight_all_paths(&self) -> Result<bool> {
        for p in self.root_paths() {
            if !tight_checked(&p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl Display for RootedLabeledForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .parent
            .iter()
            .filter_map(|(v, p)| p.map(|p| format!("{p}-{v}")))
            .collect();
        write!(f, "forest on {:?} [{}]", self.labels(), edges.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TfEnumeration {
    /// `counts[m]` is the number of tight spanning forests with `m` edges.
    pub counts: Vec<u64>,
    /// Edge masks of the tight spanning forests.
    pub masks: Vec<u64>,
}

impl TfEnumeration {
    pub fn polynomial(&self, n: usize) -> IntPolynomial {
        IntPolynomial::from_descending_counts(&self.counts, n)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Tight spanning forests of `g` by subset enumeration.
pub fn enumerate_tf(g: &Graph, budget: usize) -> Result<TfEnumeration> {
    let q = g.edge_count();
    check_budget("edge count", q, budget.min(MAX_MASK_EDGES))?;
    let mut counts = vec![0u64; q + 1];
    let mut masks = Vec::new();
    // grow forests by edges above the current top bit; subsets of forests are forests
    let mut forests: Vec<u64> = vec![0];
    while let Some(mask) = forests.pop() {
        let f = RootedLabeledForest::from_graph_mask(g, mask)?;
        if f.is_tight()? {
            counts[mask.count_ones() as usize] += 1;
            masks.push(mask);
        }
        let top = if mask == 0 { 0 } else { 64 - mask.leading_zeros() as usize };
        for e in top..q {
            let next = mask | 1 << e;
            if RootedLabeledForest::from_graph_mask(g, next).is_ok() {
                forests.push(next);
            }
        }
    }
    while counts.len() > 1 && counts.last() == Some(&0) {
        counts.pop();
    }
    masks.sort_unstable();
    Ok(TfEnumeration { counts, masks })
}

/// `TF(G, t) = sum_m tf_m(G) t^(n - m)`
pub fn tf_polynomial(g: &Graph, budget: usize) -> Result<IntPolynomial> {
    Ok(enumerate_tf(g, budget)?.polynomial(g.n()))
}
