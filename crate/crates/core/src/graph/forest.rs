use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;

use super::{Edge, Graph, MAX_MASK_EDGES};
use crate::error::{check_budget, Result};
use crate::poly::{IntPolynomial, Monomial, WeightedGF};

/// `E_k`: the edges whose larger endpoint is `k`, for every `k` in `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePartition {
    blocks: BTreeMap<u32, Vec<Edge>>,
}

impl EdgePartition {
    pub fn block(&self, k: u32) -> &[Edge] {
        self.blocks.get(&k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn blocks(&self) -> &BTreeMap<u32, Vec<Edge>> {
        &self.blocks
    }

    pub fn sizes(&self) -> Vec<u64> {
        self.blocks.values().map(|b| b.len() as u64).collect()
    }
}

pub fn edge_partition(g: &Graph) -> EdgePartition {
    let mut blocks: BTreeMap<u32, Vec<Edge>> = g.vertices().map(|k| (k, Vec::new())).collect();
    for e in g.edges() {
        blocks.get_mut(&e.hi).expect("endpoint in range").push(*e);
    }
    EdgePartition { blocks }
}

/// Local criterion: no two edges `ik`, `jk` share a larger endpoint `k`.
///
/// Pairs are `(smaller, larger)`. Parallel pairs count twice, so a doubled
/// edge fails the test as it should.
pub fn increasing_by_lemma(pairs: impl IntoIterator<Item = (u32, u32)>) -> bool {
    let mut seen = std::collections::HashSet::new();
    pairs.into_iter().all(|(_, hi)| seen.insert(hi))
}

/// Direct check: the edge set is acyclic and, rooting each component at its
/// smallest vertex, labels increase along every path leaving the root.
///
/// Vertices are `0..=max_vertex`; parallel pairs form a cycle.
pub fn increasing_by_definition(max_vertex: u32, pairs: &[(u32, u32)]) -> bool {
    let size = max_vertex as usize + 1;
    let mut uf: Vec<usize> = (0..size).collect();
    fn find(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); size];
    for &(a, b) in pairs {
        let (ra, rb) = (find(&mut uf, a as usize), find(&mut uf, b as usize));
        if ra == rb {
            return false;
        }
        uf[ra] = rb;
        adj[a as usize].push(b);
        adj[b as usize].push(a);
    }
    let mut visited = vec![false; size];
    // ascending scan: the first unvisited vertex of a component is its minimum
    for root in 0..size {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut queue = VecDeque::from([root as u32]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v as usize] {
                if visited[w as usize] {
                    continue;
                }
                if w < v {
                    return false;
                }
                visited[w as usize] = true;
                queue.push_back(w);
            }
        }
    }
    true
}

/// Brute-force tally of increasing spanning forests by edge count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsfEnumeration {
    /// `counts[m]` is the number of increasing spanning forests with `m` edges.
    pub counts: Vec<u64>,
    /// Every forest, when a listing was requested.
    pub forests: Option<Vec<Vec<Edge>>>,
    pub(crate) masks: Vec<u64>,
}

impl IsfEnumeration {
    /// `sum_m counts[m] t^(n-m)`
    pub fn polynomial(&self, n: usize) -> IntPolynomial {
        IntPolynomial::from_descending_counts(&self.counts, n)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Walks every edge subset and keeps those passing the path-based definition.
pub fn enumerate_isf(g: &Graph, budget: usize, list: bool) -> Result<IsfEnumeration> {
    check_budget("edge count", g.edge_count(), budget.min(MAX_MASK_EDGES))?;
    let q = g.edge_count();
    let mut counts = vec![0u64; q + 1];
    let mut masks = Vec::new();
    let mut pairs = Vec::with_capacity(q);
    for mask in 0u64..(1u64 << q) {
        pairs.clear();
        pairs.extend(super::iter_bits(mask).map(|i| (g.edges()[i].lo, g.edges()[i].hi)));
        if increasing_by_definition(g.n() as u32, &pairs) {
            counts[pairs.len()] += 1;
            masks.push(mask);
        }
    }
    while counts.len() > 1 && counts.last() == Some(&0) {
        counts.pop();
    }
    let forests = list.then(|| masks.iter().map(|&m| g.mask_edges(m)).collect());
    Ok(IsfEnumeration {
        counts,
        forests,
        masks,
    })
}

/// `prod_k (t + |E_k|)`
pub fn isf_polynomial(g: &Graph) -> IntPolynomial {
    IntPolynomial::from_linear_factors(&edge_partition(g).sizes(), 0)
}

/// Variable names `x[i,j]` for every edge.
pub fn default_edge_weights(g: &Graph) -> BTreeMap<Edge, String> {
    g.edges()
        .iter()
        .map(|e| (*e, format!("x[{},{}]", e.lo, e.hi)))
        .collect()
}

/// `prod_k (t + sum_{e in E_k} x_e)`
pub fn isf_weighted(g: &Graph, weights: &BTreeMap<Edge, String>) -> WeightedGF {
    edge_partition(g)
        .blocks()
        .values()
        .map(|block| {
            let vars: Vec<&str> = block.iter().map(|e| weights[e].as_str()).collect();
            WeightedGF::linear(&vars)
        })
        .product()
}

/// Weighted generating function summed directly over enumerated forests.
pub fn enumerate_isf_weighted(
    g: &Graph,
    weights: &BTreeMap<Edge, String>,
    budget: usize,
) -> Result<WeightedGF> {
    let en = enumerate_isf(g, budget, false)?;
    let mut out = WeightedGF::zero();
    for &mask in &en.masks {
        let edges = g.mask_edges(mask);
        let mono = Monomial::new(edges.iter().map(|e| weights[e].clone()));
        out.add_term(mono, (g.n() - edges.len()) as u32, BigInt::from(1));
    }
    Ok(out)
}
