use serde::Serialize;

use crate::error::{check_budget, invalid, Result};
use crate::graph::Graph;

/// Largest graph accepted by the candidate-path search.
pub const MAX_QPO_VERTICES: usize = 12;

const MAX_CANDIDATE_PATHS: usize = 5_000_000;

/// Simple paths `a, c, b, v_1, .., v_m` with `a < b < c`, `m >= 1`, and `v_m`
/// the only `v_i` below `c`.
pub fn candidate_paths(g: &Graph) -> Result<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    for_each_candidate(g, |p| {
        out.push(p.to_vec());
        true
    })?;
    Ok(out)
}

/// Calls `visit` on each candidate path until it returns `false`.
fn for_each_candidate(g: &Graph, mut visit: impl FnMut(&[u32]) -> bool) -> Result<()> {
    if g.n() > MAX_QPO_VERTICES {
        return Err(invalid(format!(
            "candidate-path search is limited to {MAX_QPO_VERTICES} vertices, got {}",
            g.n()
        )));
    }
    let adj: Vec<Vec<u32>> = (0..=g.n() as u32).map(|v| g.neighbors(v)).collect();
    let mut seen = 0usize;
    for c in g.vertices() {
        for &a in &adj[c as usize] {
            for &b in &adj[c as usize] {
                if !(a < b && b < c) {
                    continue;
                }
                let mut path = vec![a, c, b];
                let mut on = vec![false; g.n() + 1];
                for &v in &path {
                    on[v as usize] = true;
                }
                if !extend(&adj, c, &mut path, &mut on, &mut seen, &mut visit)? {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

fn extend(
    adj: &[Vec<u32>],
    c: u32,
    path: &mut Vec<u32>,
    on: &mut [bool],
    seen: &mut usize,
    visit: &mut impl FnMut(&[u32]) -> bool,
) -> Result<bool> {
    let last = *path.last().expect("nonempty path");
    for &w in &adj[last as usize] {
        if on[w as usize] {
            continue;
        }
        path.push(w);
        if w < c {
            *seen += 1;
            check_budget("candidate path count", *seen, MAX_CANDIDATE_PATHS)?;
            if !visit(path) {
                return Ok(false);
            }
        } else {
            on[w as usize] = true;
            let go_on = extend(adj, c, path, on, seen, visit)?;
            on[w as usize] = false;
            if !go_on {
                return Ok(false);
            }
        }
        path.pop();
    }
    Ok(true)
}

/// `ad` is an edge, or `d < b` and `cd` is an edge.
fn satisfies_condition(g: &Graph, path: &[u32]) -> bool {
    let (a, c, b) = (path[0], path[1], path[2]);
    let d = *path.last().expect("candidate paths have length >= 4");
    g.has_edge(a, d) || (d < b && g.has_edge(c, d))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QpoCheck {
    pub is_qpo: bool,
    /// Candidate paths examined (all of them when the labeling is a QPO).
    pub candidates_checked: usize,
    /// First candidate path failing the condition.
    pub witness: Option<Vec<u32>>,
}

/// Whether the vertex labeling of `g` is a quasi-perfect ordering.
pub fn is_qpo(g: &Graph) -> Result<QpoCheck> {
    let mut checked = 0;
    let mut witness = None;
    for_each_candidate(g, |p| {
        checked += 1;
        if satisfies_condition(g, p) {
            true
        } else {
            witness = Some(p.to_vec());
            false
        }
    })?;
    Ok(QpoCheck {
        is_qpo: witness.is_none(),
        candidates_checked: checked,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{complete_bipartite_m2, house};

    #[test]
    fn house_has_one_candidate() {
        let g = house();
        assert_eq!(candidate_paths(&g).unwrap(), vec![vec![1, 5, 4, 3]]);
        let q = is_qpo(&g).unwrap();
        assert!(q.is_qpo);
        assert_eq!(q.candidates_checked, 1);
    }

    #[test]
    fn chordless_cycles_fail() {
        let c5 = Graph::cycle(5).unwrap();
        let q = is_qpo(&c5).unwrap();
        assert!(!q.is_qpo);
        let w = q.witness.unwrap();
        assert!(!g_has(&c5, w[0], *w.last().unwrap()));
        // C_4 candidate paths come from deleting an edge of the 4-cycle
        assert!(is_qpo(&Graph::cycle(4).unwrap()).unwrap().is_qpo);
    }

    fn g_has(g: &Graph, a: u32, b: u32) -> bool {
        g.has_edge(a, b)
    }

    #[test]
    fn bipartite_examples() {
        for m in 1..=5 {
            assert!(is_qpo(&complete_bipartite_m2(m)).unwrap().is_qpo, "m = {m}");
        }
        let x: Vec<u32> = (1..=4).collect();
        let y: Vec<u32> = (5..=8).collect();
        let k44 = Graph::complete_bipartite(&x, &y).unwrap();
        assert!(!is_qpo(&k44).unwrap().is_qpo);
    }

    #[test]
    fn paths_are_well_formed() {
        let g = Graph::complete(5);
        for p in candidate_paths(&g).unwrap() {
            let (a, c, b) = (p[0], p[1], p[2]);
            assert!(a < b && b < c && p.len() >= 4);
            let tail = &p[3..];
            assert!(tail[..tail.len() - 1].iter().all(|&v| v > c));
            assert!(*tail.last().unwrap() < c);
            assert!(p.windows(2).all(|w| g.has_edge(w[0], w[1])));
            let mut s = p.clone();
            s.sort_unstable();
            s.dedup();
            assert_eq!(s.len(), p.len());
        }
        assert!(candidate_paths(&Graph::empty(13)).is_err());
    }
}
