//! Seeded random instances for property campaigns.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arrangement::{GaussRational, LabeledMultigraph};
use crate::graph::{Edge, Graph};
use crate::simplicial::PureComplex;

/// Labels drawn for random multigraph edges.
pub const LABELS: [i64; 5] = [1, 2, 3, 5, 7];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each edge of `K_n` independently with probability 1/2.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Graph {
    let edges: Vec<(u32, u32)> = Graph::complete(n)
        .edges()
        .iter()
        .filter(|_| rng.gen_bool(0.5))
        .map(|e| (e.lo, e.hi))
        .collect();
    Graph::new(n, edges).expect("subgraph of K_n")
}

/// Edges of `K_n` in random order, each kept with probability 1/2 unless
/// it would close a triangle.
pub fn random_triangle_free_graph<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Graph {
    let mut candidates: Vec<Edge> = Graph::complete(n).edges().to_vec();
    candidates.shuffle(rng);
    let mut g = Graph::empty(n);
    for e in candidates {
        if !rng.gen_bool(0.5) {
            continue;
        }
        let closes = g.neighbors(e.lo).iter().any(|&w| g.has_edge(w, e.hi));
        if !closes {
            let mut edges: Vec<(u32, u32)> = g.edges().iter().map(|f| (f.lo, f.hi)).collect();
            edges.push((e.lo, e.hi));
            g = Graph::new(n, edges).expect("new edge");
        }
    }
    g
}

/// Each triangle on `1..=n` independently with probability 1/2.
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R, n: usize) -> PureComplex {
    let mut facets = Vec::new();
    for a in 1..=n as u32 {
        for b in a + 1..=n as u32 {
            for c in b + 1..=n as u32 {
                if rng.gen_bool(0.5) {
                    facets.push([a, b, c]);
                }
            }
        }
    }
    PureComplex::new(n, 2, facets).expect("triangles on 1..=n")
}

fn label(v: i64) -> GaussRational {
    GaussRational::from(v)
}

/// Up to `max_edges` edges chosen uniformly from all edges `0k` and `ij^l`
/// with `l` in [`LABELS`].
pub fn random_multigraph<R: Rng + ?Sized>(rng: &mut R, n: usize, max_edges: usize) -> LabeledMultigraph {
    let mut pool: Vec<(u32, u32, i64)> = (1..=n as u32).map(|k| (0, k, 0)).collect();
    for i in 1..=n as u32 {
        for j in i + 1..=n as u32 {
            pool.extend(LABELS.iter().map(|&l| (i, j, l)));
        }
    }
    pool.shuffle(rng);
    let count = rng.gen_range(0..=max_edges.min(pool.len()));
    build(n, &pool[..count])
}

fn build(n: usize, chosen: &[(u32, u32, i64)]) -> LabeledMultigraph {
    let zero: Vec<u32> = chosen.iter().filter(|e| e.0 == 0).map(|e| e.1).collect();
    let labeled: Vec<(u32, u32, GaussRational)> = chosen
        .iter()
        .filter(|e| e.0 != 0)
        .map(|&(i, j, l)| (i, j, label(l)))
        .collect();
    LabeledMultigraph::new(n, zero, labeled).expect("distinct edges")
}

/// A random multigraph closed under the perfect-labeling rules: edges into
/// `k` are added first, then the missing `ij^(a/b)` and `0j` edges, from the
/// top vertex down. Retries until at most `max_edges` edges remain, falling
/// back to [`random_multigraph`].
pub fn random_perfect_multigraph<R: Rng + ?Sized>(rng: &mut R, n: usize, max_edges: usize) -> LabeledMultigraph {
    for _ in 0..64 {
        let mut zero = vec![false; n + 1];
        let mut labeled: Vec<(u32, u32, GaussRational)> = Vec::new();
        for k in 1..=n as u32 {
            if rng.gen_bool(0.3) {
                zero[k as usize] = true;
            }
            for j in 1..k {
                for &l in &LABELS {
                    if rng.gen_bool(0.12) {
                        labeled.push((j, k, label(l)));
                    }
                }
            }
        }
        close(n, &mut zero, &mut labeled);
        let count = labeled.len() + zero.iter().filter(|&&z| z).count();
        if count <= max_edges {
            let zeros: Vec<u32> = (1..=n as u32).filter(|&k| zero[k as usize]).collect();
            return LabeledMultigraph::new(n, zeros, labeled).expect("closed edge set");
        }
    }
    random_multigraph(rng, n, max_edges)
}

fn close(n: usize, zero: &mut [bool], labeled: &mut Vec<(u32, u32, GaussRational)>) {
    for k in (1..=n as u32).rev() {
        let into: Vec<(u32, GaussRational)> = labeled
            .iter()
            .filter(|e| e.1 == k)
            .map(|e| (e.0, e.2.clone()))
            .collect();
        for (i, a) in &into {
            for (j, b) in &into {
                if i < j {
                    let r = a.clone() / b;
                    if !labeled.iter().any(|e| e.0 == *i && e.1 == *j && e.2 == r) {
                        labeled.push((*i, *j, r));
                    }
                }
            }
        }
        for (j, _) in &into {
            let parallel = into.iter().filter(|(i, _)| i == j).count() >= 2;
            if parallel || zero[k as usize] {
                zero[*j as usize] = true;
            }
        }
    }
}

/// Signed graph: each pair gets no edge, `+1`, `-1` or both, and each `0k`
/// appears with probability 1/2.
pub fn random_signed_graph<R: Rng + ?Sized>(rng: &mut R, n: usize) -> LabeledMultigraph {
    let zero: Vec<u32> = (1..=n as u32).filter(|_| rng.gen_bool(0.5)).collect();
    let mut labeled = Vec::new();
    for i in 1..=n as u32 {
        for j in i + 1..=n as u32 {
            match rng.gen_range(0..4) {
                1 => labeled.push((i, j, label(1))),
                2 => labeled.push((i, j, label(-1))),
                3 => {
                    labeled.push((i, j, label(1)));
                    labeled.push((i, j, label(-1)));
                }
                _ => {}
            }
        }
    }
    LabeledMultigraph::new(n, zero, labeled).expect("signed edges are distinct")
}
