use num_bigint::BigInt;
use serde::Serialize;

use super::{chromatic_polynomial, Graph, MAX_MASK_EDGES};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AoCount {
    /// `(-1)^n P(G, -1)`
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub by_chromatic: BigInt,
    /// Direct count over all orientations; `None` past the budget.
    pub by_enumeration: Option<u64>,
}

impl AoCount {
    pub fn value(&self) -> &BigInt {
        &self.by_chromatic
    }
}

/// Number of acyclic orientations. The enumeration check is skipped when the
/// graph has more than `budget` edges.
pub fn acyclic_orientation_count(g: &Graph, budget: usize) -> Result<AoCount> {
    let p = chromatic_polynomial(g)?;
    let by_chromatic = p.sign_twist(g.n()).eval_i64(1);
    let by_enumeration = if g.edge_count() <= budget.min(MAX_MASK_EDGES) {
        let count = count_acyclic_orientations(g);
        if BigInt::from(count) != by_chromatic {
            return Err(Error::Disagreement(format!(
                "acyclic orientations of {g}: chromatic route {by_chromatic}, enumeration {count}"
            )));
        }
        Some(count)
    } else {
        None
    };
    Ok(AoCount {
        by_chromatic,
        by_enumeration,
    })
}

fn count_acyclic_orientations(g: &Graph) -> u64 {
    let q = g.edge_count();
    let n = g.n();
    let mut out_bits = vec![0u64; n + 1];
    let mut count = 0;
    for mask in 0u64..(1u64 << q) {
        out_bits.iter_mut().for_each(|b| *b = 0);
        for (i, e) in g.edges().iter().enumerate() {
            // bit set: hi -> lo, otherwise lo -> hi
            if mask >> i & 1 == 1 {
                out_bits[e.hi as usize] |= 1 << e.lo;
            } else {
                out_bits[e.lo as usize] |= 1 << e.hi;
            }
        }
        if is_acyclic(&out_bits, n) {
            count += 1;
        }
    }
    count
}

/// Repeatedly strips sinks; acyclic iff everything gets stripped.
fn is_acyclic(out_bits: &[u64], n: usize) -> bool {
    let mut remaining: u64 = (1..=n).fold(0, |a, v| a | (1 << v));
    loop {
        let sinks = super::iter_bits(remaining)
            .filter(|&v| out_bits[v] & remaining == 0)
            .fold(0u64, |a, v| a | (1 << v));
        if sinks == 0 {
            return remaining == 0;
        }
        remaining &= !sinks;
    }
}
