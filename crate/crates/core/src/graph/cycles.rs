use super::Graph;
use crate::error::{check_budget, Result};

pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;

/// All simple cycles as vertex sequences `v0, v1, ..., v_{l-1}` with `v0` the
/// cycle's minimum and `v1 < v_{l-1}`, so each cycle appears exactly once.
pub fn simple_cycles(g: &Graph, cap: usize) -> Result<Vec<Vec<u32>>> {
    let adj: Vec<Vec<u32>> = (0..=g.n() as u32).map(|v| g.neighbors(v)).collect();
    let mut out = Vec::new();
    let mut on_path = vec![false; g.n() + 1];
    for start in g.vertices() {
        let mut path = vec![start];
        on_path[start as usize] = true;
        extend(&adj, start, &mut path, &mut on_path, &mut out, cap)?;
        on_path[start as usize] = false;
    }
    Ok(out)
}

fn extend(
    adj: &[Vec<u32>],
    start: u32,
    path: &mut Vec<u32>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<u32>>,
    cap: usize,
) -> Result<()> {
    let last = *path.last().expect("nonempty path");
    for &w in &adj[last as usize] {
        if w == start {
            if path.len() >= 3 && path[1] < last {
                out.push(path.clone());
                check_budget("cycle count", out.len(), cap)?;
            }
            continue;
        }
        if w < start || on_path[w as usize] {
            continue;
        }
        on_path[w as usize] = true;
        path.push(w);
        extend(adj, start, path, on_path, out, cap)?;
        path.pop();
        on_path[w as usize] = false;
    }
    Ok(())
}

/// Edge mask of a cycle given as a vertex sequence.
pub(crate) fn cycle_mask(g: &Graph, cycle: &[u32]) -> u64 {
    let l = cycle.len();
    (0..l)
        .map(|i| {
            let e = super::Edge::new(cycle[i], cycle[(i + 1) % l]).expect("cycle edge");
            1u64 << g.edge_index(e).expect("cycle edge in graph")
        })
        .fold(0, |a, b| a | b)
}
