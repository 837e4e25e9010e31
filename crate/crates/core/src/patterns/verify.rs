use std::collections::BTreeSet;

use super::{enumerate_tf, is_qpo, tight_checked};
use crate::error::{check_budget, invalid, Result};
use crate::graph::{
    check_permutation, chromatic_polynomial, nbc_sets, simple_cycles, EdgeOrder, Graph,
    DEFAULT_CYCLE_CAP,
};
use crate::report::Report;

/// Largest graph accepted by [`tf_integer_roots_classification`].
pub const MAX_ROOTS_VERTICES: usize = 6;

/// Largest length accepted by [`tight_permutation_count`].
pub const MAX_TIGHT_LENGTH: usize = 15;

fn of_size(masks: &BTreeSet<u64>, k: u32) -> BTreeSet<u64> {
    masks.iter().copied().filter(|m| m.count_ones() == k).collect()
}

/// Tight forests against NBC sets (lexicographic edge order) and the
/// chromatic polynomial. For triangle-free graphs, the QPO test, `TF = NBC`
/// and `TF(G, t) = (-1)^n P(G, -t)` must agree; with a triangle, the
/// two-edge tight forests strictly contain the two-edge NBC sets.
pub fn verify_tf_theorems(g: &Graph, budget: usize) -> Result<Report> {
    let mut r = Report::new(format!("tight forest verification of {g}"));
    let n = g.n();
    let tf = enumerate_tf(g, budget)?;
    let nbc = nbc_sets(g, &EdgeOrder::lex(g), budget)?;
    let tf_set: BTreeSet<u64> = tf.masks.iter().copied().collect();
    let nbc_set: BTreeSet<u64> = nbc.masks.iter().copied().collect();
    let tf_poly = tf.polynomial(n);
    let chromatic = chromatic_polynomial(g)?.sign_twist(n);
    r.value("tf_counts", &tf.counts);
    r.value("nbc_counts", &nbc.counts);
    r.value("tf", tf_poly.to_string());

    let triangle_free = !g.has_triangle();
    r.fact("triangle_free", triangle_free);
    let poly_equal = r.compare("tf(t) = (-1)^n P(-t)", &tf_poly, &chromatic);
    let sets_equal = tf_set == nbc_set;
    r.fact("tf_equals_nbc", sets_equal);

    if triangle_free {
        let outside: Vec<u64> = tf_set.difference(&nbc_set).copied().collect();
        r.require(
            "tf_subset_of_nbc",
            outside.is_empty(),
            format!("{} tight forests contain a broken circuit", outside.len()),
        );
        if let Some(&m) = outside.first() {
            r.witness("tf_not_nbc", g.mask_edges(m));
        }
        let q = is_qpo(g)?;
        r.fact("qpo", q.is_qpo);
        if let Some(w) = &q.witness {
            r.witness("failing_candidate_path", w);
        }
        r.require(
            "qpo_iff_tf_equals_nbc_iff_chromatic",
            q.is_qpo == sets_equal && sets_equal == poly_equal,
            format!("qpo {}, tf = nbc {sets_equal}, polynomials equal {poly_equal}", q.is_qpo),
        );
    } else {
        let (tf2, nbc2) = (of_size(&tf_set, 2), of_size(&nbc_set, 2));
        r.value("tf_2", tf2.len());
        r.value("nbc_2", nbc2.len());
        let strict = nbc2.is_subset(&tf2) && tf2.len() > nbc2.len();
        r.require(
            "tf_2_strictly_contains_nbc_2",
            strict,
            format!("|tf_2| = {}, |nbc_2| = {}", tf2.len(), nbc2.len()),
        );
        if let Some(m) = tf2.difference(&nbc2).next() {
            r.witness("tight_broken_circuit", g.mask_edges(*m));
        }
        r.require("triangle_breaks_chromatic_identity", !poly_equal, "identity holds despite a triangle");
    }
    r.absorb("chords", long_cycle_report(g)?);
    Ok(r)
}

/// Every cycle of length at least 5 has a chord.
pub fn long_cycle_chord_check(g: &Graph) -> Result<bool> {
    Ok(chordless_long_cycle(g)?.is_none())
}

fn chordless_long_cycle(g: &Graph) -> Result<Option<Vec<u32>>> {
    for c in simple_cycles(g, DEFAULT_CYCLE_CAP)? {
        let l = c.len();
        if l < 5 {
            continue;
        }
        let chord = (0..l).any(|i| (i + 2..l).any(|j| !(i == 0 && j == l - 1) && g.has_edge(c[i], c[j])));
        if !chord {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// With a QPO, long cycles have chords, and a triangle-free graph is bipartite.
fn long_cycle_report(g: &Graph) -> Result<Report> {
    let mut r = Report::new(format!("long cycles of {g}"));
    let chordless = chordless_long_cycle(g)?;
    r.fact("long_cycles_have_chords", chordless.is_none());
    if let Some(c) = &chordless {
        r.witness("chordless_cycle", c);
    }
    if g.n() <= super::MAX_QPO_VERTICES {
        let q = is_qpo(g)?.is_qpo;
        if q {
            r.require("qpo_implies_long_cycles_have_chords", chordless.is_none(), "chordless long cycle");
            if !g.has_triangle() {
                r.require("qpo_triangle_free_implies_bipartite", g.is_bipartite(), "odd cycle");
            }
        }
    }
    Ok(r)
}

/// Whether some vertex ordering gives `TF` integer roots, against whether
/// `g` is a forest. The two must agree.
pub fn tf_integer_roots_classification(g: &Graph, budget: usize) -> Result<Report> {
    check_budget("vertex count", g.n(), MAX_ROOTS_VERTICES)?;
    let mut r = Report::new(format!("tight forest root classification of {g}"));
    let mut witness = None;
    for perm in permutations(g.n()) {
        let h = g.relabel(&perm)?;
        let tf = enumerate_tf(&h, budget)?.polynomial(g.n());
        if tf.integer_roots()?.is_some() {
            witness = Some((perm, tf.to_string()));
            break;
        }
    }
    let some = witness.is_some();
    r.fact("some_ordering_has_integer_roots", some);
    r.fact("forest", g.is_forest());
    if let Some(w) = witness {
        r.witness("ordering", w);
    }
    r.require(
        "integer_roots_iff_forest",
        some == g.is_forest(),
        format!("integer roots {some}, forest {}", g.is_forest()),
    );
    Ok(r)
}

/// All permutations of `1..=n` as relabelings, in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<u32>> {
    let mut perm: Vec<u32> = (1..=n as u32).collect();
    let mut out = vec![perm.clone()];
    // next lexicographic permutation
    loop {
        let Some(i) = (1..perm.len()).rev().find(|&i| perm[i - 1] < perm[i]) else {
            break;
        };
        let j = (i..perm.len()).rev().find(|&j| perm[j] > perm[i - 1]).expect("pivot exists");
        perm.swap(i - 1, j);
        perm[i..].reverse();
        out.push(perm.clone());
    }
    debug_assert!(out.iter().all(|p| check_permutation(p, n).is_ok()));
    out
}

/// Permutations of `1..=k` avoiding 231, 312 and 321, by a depth-first
/// search that drops a prefix once it contains a pattern.
pub fn tight_permutation_count(k: usize) -> Result<u64> {
    if k == 0 {
        return Err(invalid("length must be positive"));
    }
    check_budget("permutation length", k, MAX_TIGHT_LENGTH)?;
    let mut prefix = Vec::with_capacity(k);
    let mut used = vec![false; k + 1];
    let mut count = 0;
    grow(k, &mut prefix, &mut used, &mut count)?;
    Ok(count)
}

fn grow(k: usize, prefix: &mut Vec<u32>, used: &mut [bool], count: &mut u64) -> Result<()> {
    if prefix.len() == k {
        // complete permutations are checked both ways
        if tight_checked(prefix)? {
            *count += 1;
        }
        return Ok(());
    }
    for v in 1..=k as u32 {
        if used[v as usize] {
            continue;
        }
        prefix.push(v);
        // a prefix containing a pattern cannot be completed
        if super::tight_by_patterns(prefix) {
            used[v as usize] = true;
            grow(k, prefix, used, count)?;
            used[v as usize] = false;
        }
        prefix.pop();
    }
    Ok(())
}

/// Fibonacci-style recurrence check on the counts for `1..=k`.
pub fn tight_counts_follow_recurrence(k: usize) -> Result<(Vec<u64>, bool)> {
    let counts: Vec<u64> = (1..=k).map(tight_permutation_count).collect::<Result<_>>()?;
    let ok = counts.windows(3).all(|w| w[2] == w[1] + w[0]);
    Ok((counts, ok))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::house;

    #[test]
    fn tight_counts() {
        let counts: Vec<u64> = (1..=8).map(|k| tight_permutation_count(k).unwrap()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 8, 13, 21, 34]);
        assert!(tight_permutation_count(0).is_err());
        assert!(tight_permutation_count(16).is_err());
        let (c, ok) = tight_counts_follow_recurrence(12).unwrap();
        assert!(ok);
        assert_eq!(c[11], 233);
    }

    #[test]
    fn tf_theorem_examples() {
        let r = verify_tf_theorems(&house(), 25).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.facts["triangle_free"], false);
        assert_eq!(r.values["tf_2"], serde_json::json!(15));
        assert_eq!(r.values["nbc_2"], serde_json::json!(14));

        let k3 = verify_tf_theorems(&Graph::complete(3), 25).unwrap();
        assert!(k3.passed(), "{k3}");
        let id = k3.identity("tf(t) = (-1)^n P(-t)").unwrap();
        assert_eq!(id.left_text, "t^3 + 3t^2 + 3t");
        assert_eq!(id.right_text, "t^3 + 3t^2 + 2t");

        let c4 = verify_tf_theorems(&Graph::cycle(4).unwrap(), 25).unwrap();
        assert!(c4.passed(), "{c4}");
        assert_eq!(c4.facts["qpo"], true);
        assert_eq!(c4.facts["tf_equals_nbc"], true);
    }

    #[test]
    fn chord_checks() {
        assert!(!long_cycle_chord_check(&Graph::cycle(5).unwrap()).unwrap());
        assert!(long_cycle_chord_check(&house()).unwrap());
        assert!(long_cycle_chord_check(&Graph::complete(6)).unwrap());
        assert!(long_cycle_chord_check(&Graph::cycle(4).unwrap()).unwrap());
    }

    #[test]
    fn root_classification() {
        let p4 = tf_integer_roots_classification(&Graph::path(4), 25).unwrap();
        assert!(p4.passed());
        assert_eq!(p4.facts["some_ordering_has_integer_roots"], true);
        let k3 = tf_integer_roots_classification(&Graph::complete(3), 25).unwrap();
        assert!(k3.passed());
        assert_eq!(k3.facts["some_ordering_has_integer_roots"], false);
        let e = tf_integer_roots_classification(&Graph::empty(3), 25).unwrap();
        assert_eq!(e.facts["forest"], true);
        assert!(tf_integer_roots_classification(&Graph::empty(7), 25).is_err());
        assert_eq!(permutations(3).len(), 6);
    }
}
