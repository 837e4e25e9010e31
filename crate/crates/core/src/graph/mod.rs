//! Simple labeled graphs on `{1..n}` and the forest, broken-circuit,
//! chromatic and elimination-order machinery built on them.

mod chromatic;
mod cycles;
mod forest;
mod nbc;
mod orientation;
mod peo;
mod verify;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

pub use chromatic::{
    chromatic_by_deletion_contraction, chromatic_by_interpolation, chromatic_polynomial,
    count_proper_colorings, INTERPOLATION_MAX_VERTICES,
};
pub use cycles::{simple_cycles, DEFAULT_CYCLE_CAP};
pub use forest::{
    default_edge_weights, edge_partition, enumerate_isf, enumerate_isf_weighted,
    increasing_by_definition, increasing_by_lemma, isf_polynomial, isf_weighted, EdgePartition,
    IsfEnumeration,
};
pub use nbc::{broken_circuits, nbc_sets, whitney_polynomial, NbcEnumeration};
pub use orientation::{acyclic_orientation_count, AoCount};
pub use peo::{find_peo, is_chordal, is_natural_peo, is_peo};
pub use verify::{verify_isf_nbc, Budgets};

/// Largest vertex count accepted; several paths keep per-vertex bitsets in a `u64`.
pub const MAX_VERTICES: usize = 64;
/// Default cap on the edge count of any path that walks all edge subsets.
pub const DEFAULT_ENUMERATION_BUDGET: usize = 25;
/// Hard ceiling: edge subsets are stored as `u64` masks.
pub const MAX_MASK_EDGES: usize = 63;

/// An edge `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub lo: u32,
    pub hi: u32,
}

impl Edge {
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if a == b {
            return Err(invalid(format!("loop at vertex {a}")));
        }
        Ok(Self {
            lo: a.min(b),
            hi: a.max(b),
        })
    }

    pub fn other(&self, v: u32) -> u32 {
        if v == self.lo {
            self.hi
        } else {
            self.lo
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

impl Serialize for Edge {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.lo, self.hi].serialize(s)
    }
}

/// Simple graph with vertex set `{1..n}`; edges are kept in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[u32; 2]>,
}

impl Graph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        if n > MAX_VERTICES {
            return Err(invalid(format!("{n} vertices exceeds the limit of {MAX_VERTICES}")));
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            let e = Edge::new(a, b)?;
            if e.lo < 1 || e.hi as usize > n {
                return Err(invalid(format!("edge {e} has an endpoint outside 1..={n}")));
            }
            if !set.insert(e) {
                return Err(invalid(format!("duplicate edge {e}")));
            }
        }
        Ok(Self {
            n,
            edges: set.into_iter().collect(),
        })
    }

    pub fn empty(n: usize) -> Self {
        Self::new(n, []).expect("edgeless graph is valid")
    }

    pub fn complete(n: usize) -> Self {
        let n32 = n as u32;
        Self::new(
            n,
            (1..=n32).flat_map(|i| (i + 1..=n32).map(move |j| (i, j))),
        )
        .expect("complete graph is valid")
    }

    /// Cycle `1-2-...-n-1`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(invalid("a cycle needs at least 3 vertices"));
        }
        let n32 = n as u32;
        Self::new(n, (1..n32).map(|i| (i, i + 1)).chain([(1, n32)]))
    }

    /// Path `1-2-...-n`.
    pub fn path(n: usize) -> Self {
        let n32 = n as u32;
        Self::new(n, (1..n32).map(|i| (i, i + 1))).expect("path is valid")
    }

    /// Complete bipartite graph between two disjoint vertex sets that cover `{1..n}`.
    pub fn complete_bipartite(left: &[u32], right: &[u32]) -> Result<Self> {
        let n = left.len() + right.len();
        let mut seen: BTreeSet<u32> = left.iter().copied().collect();
        seen.extend(right.iter().copied());
        if seen.len() != n || seen.iter().any(|&v| v < 1 || v as usize > n) {
            return Err(invalid("partite sets must partition 1..=n"));
        }
        Self::new(
            n,
            left.iter()
                .flat_map(|&a| right.iter().map(move |&b| (a, b))),
        )
    }

    /// Reads `{"n": .., "edges": [[i, j], ..]}` with `i < j`.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: GraphJson = serde_json::from_value(value.clone())
            .map_err(|e| invalid(format!("graph JSON: {e}")))?;
        if let Some([i, j]) = raw.edges.iter().find(|[i, j]| i >= j) {
            return Err(invalid(format!("edge [{i},{j}] must be listed as [min,max]")));
        }
        Self::new(raw.n, raw.edges.iter().map(|&[i, j]| (i, j)))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GraphJson {
            n: self.n,
            edges: self.edges.iter().map(|e| [e.lo, e.hi]).collect(),
        })
        .expect("graph serializes")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        Edge::new(a, b).is_ok_and(|e| self.edge_index(e).is_some())
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> {
        1..=self.n as u32
    }

    pub fn neighbors(&self, v: u32) -> Vec<u32> {
        self.edges
            .iter()
            .filter(|e| e.lo == v || e.hi == v)
            .map(|e| e.other(v))
            .collect()
    }

    /// Neighbor bitsets indexed by vertex (bit `u` set when `uv` is an edge).
    pub(crate) fn adjacency_bits(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.n + 1];
        for e in &self.edges {
            adj[e.lo as usize] |= 1 << e.hi;
            adj[e.hi as usize] |= 1 << e.lo;
        }
        adj
    }

    /// Renames vertex `v` to `perm[v - 1]`.
    pub fn relabel(&self, perm: &[u32]) -> Result<Self> {
        check_permutation(perm, self.n)?;
        Self::new(
            self.n,
            self.edges
                .iter()
                .map(|e| (perm[e.lo as usize - 1], perm[e.hi as usize - 1])),
        )
    }

    /// Relabels so that `ordering[i]` becomes vertex `i + 1`.
    pub fn relabel_by_ordering(&self, ordering: &[u32]) -> Result<Self> {
        self.relabel(&inverse_permutation(ordering, self.n)?)
    }

    pub fn components(&self) -> Vec<Vec<u32>> {
        let mut comp = vec![usize::MAX; self.n + 1];
        let adj: Vec<Vec<u32>> = (0..=self.n as u32).map(|v| self.neighbors(v)).collect();
        let mut out = Vec::new();
        for s in self.vertices() {
            if comp[s as usize] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s as usize] = id;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v as usize] {
                    if comp[w as usize] == usize::MAX {
                        comp[w as usize] = id;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.components().len() == self.n
    }

    pub fn has_triangle(&self) -> bool {
        let adj = self.adjacency_bits();
        self.edges
            .iter()
            .any(|e| adj[e.lo as usize] & adj[e.hi as usize] != 0)
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![None::<bool>; self.n + 1];
        for s in self.vertices() {
            if side[s as usize].is_some() {
                continue;
            }
            side[s as usize] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                let sv = side[v as usize].expect("visited");
                for w in self.neighbors(v) {
                    match side[w as usize] {
                        None => {
                            side[w as usize] = Some(!sv);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == sv => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Edges of `mask` (bit `i` selects the `i`-th edge in lexicographic order).
    pub(crate) fn mask_edges(&self, mask: u64) -> Vec<Edge> {
        iter_bits(mask).map(|i| self.edges[i]).collect()
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G(n={}; ", self.n)?;
        let parts: Vec<String> = self.edges.iter().map(Edge::to_string).collect();
        write!(f, "{})", parts.join(" "))
    }
}

pub(crate) fn iter_bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

pub(crate) fn check_permutation(perm: &[u32], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(invalid(format!(
            "permutation has length {}, expected {n}",
            perm.len()
        )));
    }
    let mut seen = vec![false; n + 1];
    for &v in perm {
        if v < 1 || v as usize > n || std::mem::replace(&mut seen[v as usize], true) {
            return Err(invalid(format!("{perm:?} is not a permutation of 1..={n}")));
        }
    }
    Ok(())
}

pub(crate) fn inverse_permutation(perm: &[u32], n: usize) -> Result<Vec<u32>> {
    check_permutation(perm, n)?;
    let mut inv = vec![0u32; n];
    for (i, &v) in perm.iter().enumerate() {
        inv[v as usize - 1] = i as u32 + 1;
    }
    Ok(inv)
}

/// A spanning subgraph: a subset of the parent's edges on the full vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningSubgraph<'g> {
    parent: &'g Graph,
    subset: BTreeSet<Edge>,
}

impl<'g> SpanningSubgraph<'g> {
    pub fn new(parent: &'g Graph, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let subset: BTreeSet<Edge> = edges.into_iter().collect();
        if let Some(e) = subset.iter().find(|e| parent.edge_index(**e).is_none()) {
            return Err(invalid(format!("{e} is not an edge of the parent graph")));
        }
        Ok(Self { parent, subset })
    }

    pub fn from_pairs(parent: &'g Graph, pairs: &[(u32, u32)]) -> Result<Self> {
        let edges = pairs
            .iter()
            .map(|&(a, b)| Edge::new(a, b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parent, edges)
    }

    pub fn parent(&self) -> &'g Graph {
        self.parent
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.subset.iter()
    }

    pub fn len(&self) -> usize {
        self.subset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subset.is_empty()
    }

    /// No vertex `k` has two chosen edges `ik`, `jk` with `i, j < k`.
    pub fn is_increasing_forest(&self) -> bool {
        increasing_by_lemma(self.subset.iter().map(|e| (e.lo, e.hi)))
    }

    /// Roots each component at its minimum and checks every root path increases.
    pub fn is_increasing_forest_by_definition(&self) -> bool {
        let pairs: Vec<(u32, u32)> = self.subset.iter().map(|e| (e.lo, e.hi)).collect();
        increasing_by_definition(self.parent.n as u32, &pairs)
    }
}

/// A total order on a graph's edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeOrder {
    sequence: Vec<Edge>,
    /// position of each lexicographic edge index in `sequence`
    rank: Vec<usize>,
}

impl EdgeOrder {
    pub fn lex(g: &Graph) -> Self {
        Self {
            sequence: g.edges.clone(),
            rank: (0..g.edge_count()).collect(),
        }
    }

    pub fn from_sequence(g: &Graph, sequence: Vec<Edge>) -> Result<Self> {
        if sequence.len() != g.edge_count() {
            return Err(invalid("edge order must list every edge exactly once"));
        }
        let mut rank = vec![usize::MAX; g.edge_count()];
        for (pos, e) in sequence.iter().enumerate() {
            let idx = g
                .edge_index(*e)
                .ok_or_else(|| invalid(format!("{e} is not an edge")))?;
            if rank[idx] != usize::MAX {
                return Err(invalid(format!("{e} listed twice")));
            }
            rank[idx] = pos;
        }
        Ok(Self { sequence, rank })
    }

    pub fn random<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Self {
        let mut seq = g.edges.clone();
        seq.shuffle(rng);
        Self::from_sequence(g, seq).expect("shuffled edge list is a valid order")
    }

    pub fn sequence(&self) -> &[Edge] {
        &self.sequence
    }

    /// Position of the edge with lexicographic index `idx`.
    pub(crate) fn rank_of_index(&self, idx: usize) -> usize {
        self.rank[idx]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_rejects_bad_edges() {
        assert!(Graph::new(3, [(1, 1)]).is_err());
        assert!(Graph::new(3, [(1, 4)]).is_err());
        assert!(Graph::new(3, [(0, 2)]).is_err());
        assert!(Graph::new(3, [(1, 2), (2, 1)]).is_err());
        let g = Graph::new(3, [(3, 1), (2, 1)]).unwrap();
        assert_eq!(g.edges(), &[Edge { lo: 1, hi: 2 }, Edge { lo: 1, hi: 3 }]);
    }

    #[test]
    fn json_roundtrip_and_strict_order() {
        let g = crate::examples::paw();
        let js = g.to_json();
        assert_eq!(js.to_string(), r#"{"edges":[[1,2],[1,4],[2,3],[2,4]],"n":4}"#);
        assert_eq!(Graph::from_json(&js).unwrap(), g);
        let bad = serde_json::json!({"n": 3, "edges": [[2, 1]]});
        assert!(Graph::from_json(&bad).is_err());
    }

    #[test]
    fn relabel_by_ordering_moves_vertices() {
        let g = Graph::path(3); // 1-2-3
        let h = g.relabel_by_ordering(&[2, 1, 3]).unwrap();
        // vertex 2 becomes 1, vertex 1 becomes 2
        assert!(h.has_edge(1, 2) && h.has_edge(1, 3));
        assert!(g.relabel(&[1, 1, 2]).is_err());
    }

    #[test]
    fn structural_predicates() {
        assert!(Graph::path(5).is_forest());
        assert!(!Graph::cycle(4).unwrap().is_forest());
        assert!(Graph::complete(3).has_triangle());
        assert!(Graph::cycle(4).unwrap().is_bipartite());
        assert!(!Graph::cycle(5).unwrap().is_bipartite());
        assert_eq!(Graph::empty(3).components().len(), 3);
    }

    #[test]
    fn spanning_subgraph_membership() {
        let g = crate::examples::paw();
        assert!(SpanningSubgraph::from_pairs(&g, &[(1, 3)]).is_err());
        let s = SpanningSubgraph::from_pairs(&g, &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(s.len(), 2);
    }
}
