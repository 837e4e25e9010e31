use super::{check_permutation, Graph};
use crate::error::Result;

/// `ordering[i]` is the vertex placed at position `i`. True when every
/// vertex's earlier neighbors are pairwise adjacent.
pub fn is_peo(g: &Graph, ordering: &[u32]) -> Result<bool> {
    check_permutation(ordering, g.n())?;
    let adj = g.adjacency_bits();
    let mut earlier = 0u64;
    for &v in ordering {
        let back = adj[v as usize] & earlier;
        for u in super::iter_bits(back) {
            let others = back & !(1u64 << u);
            if adj[u] & others != others {
                return Ok(false);
            }
        }
        earlier |= 1u64 << v;
    }
    Ok(true)
}

pub fn is_natural_peo(g: &Graph) -> bool {
    let natural: Vec<u32> = g.vertices().collect();
    is_peo(g, &natural).expect("identity is a permutation")
}

/// Maximum cardinality search; the visiting order is returned if it passes
/// [`is_peo`], which happens exactly when `g` is chordal.
pub fn find_peo(g: &Graph) -> Option<Vec<u32>> {
    let adj = g.adjacency_bits();
    let n = g.n();
    let mut weight = vec![0usize; n + 1];
    let mut numbered = vec![false; n + 1];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        // ties go to the smallest label for determinism
        let v = (1..=n)
            .filter(|&v| !numbered[v])
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("an unnumbered vertex remains");
        numbered[v] = true;
        order.push(v as u32);
        for w in super::iter_bits(adj[v]) {
            if !numbered[w] {
                weight[w] += 1;
            }
        }
    }
    is_peo(g, &order)
        .expect("search order is a permutation")
        .then_some(order)
}

pub fn is_chordal(g: &Graph) -> bool {
    find_peo(g).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cycles::simple_cycles;
    use crate::examples::{paw, paw_relabeled};
    use proptest::prelude::*;

    /// Oracle: every cycle of length >= 4 has a chord.
    fn chordal_by_cycles(g: &Graph) -> bool {
        simple_cycles(g, 1_000_000).unwrap().iter().all(|c| {
            let l = c.len();
            l < 4
                || (0..l).any(|i| {
                    (i + 2..l).any(|j| !(i == 0 && j == l - 1) && g.has_edge(c[i], c[j]))
                })
        })
    }

    #[test]
    fn example_orders() {
        assert!(is_peo(&paw(), &[1, 2, 3, 4]).unwrap());
        assert!(!is_peo(&paw_relabeled(), &[1, 2, 3, 4]).unwrap());
        assert!(find_peo(&Graph::cycle(4).unwrap()).is_none());
        assert!(find_peo(&paw_relabeled()).is_some());
        assert!(is_peo(&paw(), &[1, 2, 3]).is_err());
    }

    proptest! {
        #[test]
        fn mcs_decides_chordality(bits in 0u64..(1 << 15)) {
            let all: Vec<(u32, u32)> = (1..=6u32)
                .flat_map(|i| (i + 1..=6).map(move |j| (i, j)))
                .collect();
            let g = Graph::new(6, all.iter().enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .map(|(_, &p)| p)).unwrap();
            prop_assert_eq!(find_peo(&g).is_some(), chordal_by_cycles(&g));
            if let Some(order) = find_peo(&g) {
                let relabeled = g.relabel_by_ordering(&order).unwrap();
                prop_assert!(is_natural_peo(&relabeled));
            }
        }
    }
}
