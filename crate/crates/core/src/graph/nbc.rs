use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::cycles::{cycle_mask, simple_cycles};
use super::{iter_bits, Edge, EdgeOrder, Graph, MAX_MASK_EDGES};
use crate::error::{check_budget, Result};
use crate::poly::IntPolynomial;

/// Each cycle minus its first edge under `order`, deduplicated.
pub fn broken_circuits(
    g: &Graph,
    order: &EdgeOrder,
    cycle_cap: usize,
) -> Result<BTreeSet<BTreeSet<Edge>>> {
    check_budget("edge count", g.edge_count(), MAX_MASK_EDGES)?;
    Ok(broken_circuit_masks(g, order, cycle_cap)?
        .into_iter()
        .map(|m| g.mask_edges(m).into_iter().collect())
        .collect())
}

pub(crate) fn broken_circuit_masks(
    g: &Graph,
    order: &EdgeOrder,
    cycle_cap: usize,
) -> Result<BTreeSet<u64>> {
    let mut out = BTreeSet::new();
    for cycle in simple_cycles(g, cycle_cap)? {
        let mask = cycle_mask(g, &cycle);
        let smallest = iter_bits(mask)
            .min_by_key(|&i| order.rank_of_index(i))
            .expect("cycle has edges");
        out.insert(mask & !(1u64 << smallest));
    }
    Ok(out)
}

/// Drops every mask that contains another one from the family.
fn minimal_masks(masks: &BTreeSet<u64>) -> Vec<u64> {
    let mut by_size: Vec<u64> = masks.iter().copied().collect();
    by_size.sort_by_key(|m| m.count_ones());
    let mut kept: Vec<u64> = Vec::new();
    for m in by_size {
        if !kept.iter().any(|&k| k & m == k) {
            kept.push(m);
        }
    }
    kept
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NbcEnumeration {
    /// `counts[m]` is the number of NBC sets with `m` edges.
    pub counts: Vec<u64>,
    pub(crate) masks: Vec<u64>,
}

impl NbcEnumeration {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn sets(&self, g: &Graph) -> Vec<Vec<Edge>> {
        self.masks.iter().map(|&m| g.mask_edges(m)).collect()
    }
}

/// Counts edge subsets containing no broken circuit.
///
/// NBC sets are closed under taking subsets, so the search only extends sets
/// that are already NBC.
pub fn nbc_sets(g: &Graph, order: &EdgeOrder, budget: usize) -> Result<NbcEnumeration> {
    check_budget("edge count", g.edge_count(), budget.min(MAX_MASK_EDGES))?;
    let broken = minimal_masks(&broken_circuit_masks(g, order, super::DEFAULT_CYCLE_CAP)?);
    let q = g.edge_count();
    // broken circuits indexed by their highest edge: only those can be completed
    // when that edge is the last one added
    let mut by_top: Vec<Vec<u64>> = vec![Vec::new(); q];
    for &b in &broken {
        by_top[63 - b.leading_zeros() as usize].push(b);
    }
    let mut masks = Vec::new();
    let mut stack = vec![(0u64, 0usize)];
    while let Some((set, next)) = stack.pop() {
        masks.push(set);
        for e in next..q {
            let grown = set | (1u64 << e);
            if by_top[e].iter().all(|&b| b & grown != b) {
                stack.push((grown, e + 1));
            }
        }
    }
    masks.sort_unstable();
    let mut counts = vec![0u64; q + 1];
    for &m in &masks {
        counts[m.count_ones() as usize] += 1;
    }
    while counts.len() > 1 && counts.last() == Some(&0) {
        counts.pop();
    }
    Ok(NbcEnumeration { counts, masks })
}

/// `sum_m (-1)^m nbc_m t^(n-m)`
pub fn whitney_polynomial(n: usize, counts: &[u64]) -> IntPolynomial {
    let signed: Vec<BigInt> = counts
        .iter()
        .enumerate()
        .map(|(m, &c)| if m % 2 == 0 { BigInt::from(c) } else { -BigInt::from(c) })
        .collect();
    IntPolynomial::from_descending_counts(&signed, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::paw;
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn e(a: u32, b: u32) -> Edge {
        Edge::new(a, b).unwrap()
    }

    /// Oracle: filter all subsets against the full broken-circuit family.
    fn nbc_counts_by_filter(g: &Graph, order: &EdgeOrder) -> Vec<u64> {
        let bcs = broken_circuit_masks(g, order, 1_000_000).unwrap();
        let mut counts = vec![0u64; g.edge_count() + 1];
        for s in 0u64..(1 << g.edge_count()) {
            if bcs.iter().all(|&b| b & s != b) {
                counts[s.count_ones() as usize] += 1;
            }
        }
        while counts.len() > 1 && counts.last() == Some(&0) {
            counts.pop();
        }
        counts
    }

    #[test]
    fn broken_circuit_examples() {
        let k3 = Graph::complete(3);
        let bc = broken_circuits(&k3, &EdgeOrder::lex(&k3), 100).unwrap();
        assert_eq!(bc, BTreeSet::from([BTreeSet::from([e(1, 3), e(2, 3)])]));

        let p = Graph::path(6);
        assert!(broken_circuits(&p, &EdgeOrder::lex(&p), 100).unwrap().is_empty());

        let c4 = Graph::cycle(4).unwrap();
        let bc = broken_circuits(&c4, &EdgeOrder::lex(&c4), 100).unwrap();
        assert_eq!(
            bc,
            BTreeSet::from([BTreeSet::from([e(1, 4), e(2, 3), e(3, 4)])])
        );
    }

    #[test]
    fn nbc_count_examples() {
        let k3 = Graph::complete(3);
        assert_eq!(nbc_sets(&k3, &EdgeOrder::lex(&k3), 25).unwrap().counts, vec![1, 3, 2]);

        let forest = Graph::new(6, [(1, 2), (2, 3), (4, 5), (5, 6)]).unwrap();
        let en = nbc_sets(&forest, &EdgeOrder::lex(&forest), 25).unwrap();
        assert_eq!(en.counts, vec![1, 4, 6, 4, 1]);

        let g = paw();
        assert_eq!(nbc_sets(&g, &EdgeOrder::lex(&g), 25).unwrap().counts, vec![1, 4, 5, 2]);
    }

    #[test]
    fn search_matches_subset_filter() {
        for g in [Graph::complete(5), Graph::cycle(6).unwrap(), paw()] {
            let order = EdgeOrder::lex(&g);
            assert_eq!(nbc_sets(&g, &order, 25).unwrap().counts, nbc_counts_by_filter(&g, &order));
        }
    }

    proptest! {
        #[test]
        fn counts_do_not_depend_on_edge_order(bits in 0u64..(1 << 15), seed in 0u64..1000) {
            let all: Vec<(u32, u32)> = (1..=6u32)
                .flat_map(|i| (i + 1..=6).map(move |j| (i, j)))
                .collect();
            let g = Graph::new(6, all.iter().enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .map(|(_, &p)| p)).unwrap();
            let base = nbc_sets(&g, &EdgeOrder::lex(&g), 25).unwrap().counts;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let shuffled = EdgeOrder::random(&g, &mut rng);
            prop_assert_eq!(&nbc_sets(&g, &shuffled, 25).unwrap().counts, &base);
            prop_assert_eq!(nbc_counts_by_filter(&g, &shuffled), base);
        }
    }
}
