use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::{
    acyclic_orientation_count, chromatic_by_deletion_contraction, chromatic_by_interpolation,
    enumerate_isf, is_natural_peo, isf_polynomial, nbc_sets, whitney_polynomial, EdgeOrder, Graph,
    DEFAULT_CYCLE_CAP, DEFAULT_ENUMERATION_BUDGET, INTERPOLATION_MAX_VERTICES,
};
use crate::error::{Error, Result};
use crate::report::Report;

/// Size limits for the brute-force paths used by verification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budgets {
    /// Maximum edge (or facet, or hyperplane) count for subset enumeration.
    pub enumeration: usize,
    pub cycles: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Self {
            enumeration: DEFAULT_ENUMERATION_BUDGET,
            cycles: DEFAULT_CYCLE_CAP,
        }
    }
}

/// Cross-checks increasing spanning forests against NBC sets, the chromatic
/// polynomial and acyclic orientations under the lexicographic edge order.
pub fn verify_isf_nbc(g: &Graph, budgets: Budgets) -> Result<Report> {
    let mut r = Report::new(format!("isf/nbc verification of {g}"));
    let n = g.n();

    let isf = enumerate_isf(g, budgets.enumeration, false)?;
    let isf_poly = isf_polynomial(g);
    r.require_equal("isf: enumeration = factorization", &isf.polynomial(n), &isf_poly);

    let nbc = nbc_sets(g, &EdgeOrder::lex(g), budgets.enumeration)?;
    r.value("isf_counts", &isf.counts);
    r.value("nbc_counts", &nbc.counts);

    let dc = chromatic_by_deletion_contraction(g);
    if n <= INTERPOLATION_MAX_VERTICES {
        let interp = chromatic_by_interpolation(g)?;
        if !r.require_equal("chromatic: deletion-contraction = interpolation", &dc, &interp) {
            return Err(Error::Disagreement(format!("chromatic polynomial of {g}")));
        }
    }
    r.require_equal("whitney: nbc alternating sum = chromatic", &whitney_polynomial(n, &nbc.counts), &dc);

    let nbc_set: BTreeSet<u64> = nbc.masks.iter().copied().collect();
    let isf_set: BTreeSet<u64> = isf.masks.iter().copied().collect();
    let outside: Vec<u64> = isf_set.difference(&nbc_set).copied().collect();
    r.require(
        "isf_subset_of_nbc",
        outside.is_empty(),
        format!("{} increasing forests contain a broken circuit", outside.len()),
    );
    if let Some(&m) = outside.first() {
        r.witness("isf_not_nbc", g.mask_edges(m));
    }

    let equal_all = isf_set == nbc_set;
    let of_size = |s: &BTreeSet<u64>, k: u32| -> BTreeSet<u64> {
        s.iter().copied().filter(|m| m.count_ones() == k).collect()
    };
    let equal_2 = of_size(&isf_set, 2) == of_size(&nbc_set, 2);
    let peo = is_natural_peo(g);
    r.fact("isf_equals_nbc_all_sizes", equal_all);
    r.fact("isf_equals_nbc_two_edges", equal_2);
    r.fact("natural_order_is_peo", peo);
    r.require(
        "three_way_equivalence",
        equal_all == equal_2 && equal_2 == peo,
        format!("all sizes {equal_all}, two edges {equal_2}, peo {peo}"),
    );
    if !peo {
        if let Some(t) = peo_violation(g) {
            r.witness("peo_violation_ijk", t);
        }
    }
    if let Some(&m) = nbc_set.difference(&isf_set).next() {
        r.witness("nbc_not_isf", g.mask_edges(m));
    }

    let twisted = dc.sign_twist(n);
    let hs2 = r.compare("isf = (-1)^n P(G,-t)", &isf_poly, &twisted);
    r.require(
        "chromatic_identity_iff_peo",
        hs2 == peo,
        format!("identity holds {hs2}, peo {peo}"),
    );

    let ao = acyclic_orientation_count(g, budgets.enumeration)?;
    let isf_total = BigInt::from(isf.total());
    r.value("isf_total", isf_total.to_string());
    r.value("ao", &ao);
    r.require(
        "isf_at_most_ao",
        isf_total <= ao.by_chromatic,
        format!("isf {isf_total} > ao {}", ao.by_chromatic),
    );
    let ao_equal = isf_total == ao.by_chromatic;
    r.require(
        "isf_equals_ao_iff_peo",
        ao_equal == peo,
        format!("equality {ao_equal}, peo {peo}"),
    );
    Ok(r)
}

/// Some `i < j < k` with `ik, jk` edges but `ij` missing.
fn peo_violation(g: &Graph) -> Option<[u32; 3]> {
    for k in g.vertices() {
        let lower: Vec<u32> = g.neighbors(k).into_iter().filter(|&v| v < k).collect();
        for (a, &i) in lower.iter().enumerate() {
            for &j in &lower[a + 1..] {
                if !g.has_edge(i, j) {
                    return Some([i.min(j), i.max(j), k]);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::find_peo;
    use crate::examples::{paw, paw_relabeled};

    #[test]
    fn equality_case() {
        let r = verify_isf_nbc(&paw(), Budgets::default()).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.facts["natural_order_is_peo"], true);
        assert_eq!(r.facts["isf_equals_nbc_all_sizes"], true);
        assert!(r.identity("isf = (-1)^n P(G,-t)").unwrap().equal);
    }

    #[test]
    fn strict_case() {
        let r = verify_isf_nbc(&paw_relabeled(), Budgets::default()).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.facts["natural_order_is_peo"], false);
        assert_eq!(r.facts["isf_equals_nbc_all_sizes"], false);
        assert!(!r.identity("isf = (-1)^n P(G,-t)").unwrap().equal);
        assert_eq!(r.witnesses["peo_violation_ijk"], serde_json::json!([1, 3, 4]));
    }

    #[test]
    fn chordal_graph_relabeled_by_its_peo() {
        // a fan plus a pendant, deliberately labeled off-order
        let g = Graph::new(6, [(6, 1), (6, 2), (6, 3), (1, 2), (2, 3), (3, 4), (5, 4)]).unwrap();
        assert!(!is_natural_peo(&g));
        let order = find_peo(&g).unwrap();
        let h = g.relabel_by_ordering(&order).unwrap();
        let r = verify_isf_nbc(&h, Budgets::default()).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.facts["isf_equals_ao_iff_peo"], true);
        assert_eq!(r.facts["natural_order_is_peo"], true);
    }
}
