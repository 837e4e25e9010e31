use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Graph;
use crate::error::{check_budget, Error, Result};
use crate::poly::IntPolynomial;

/// The coloring-count path enumerates colorings up to renaming of colors,
/// which is at most a Bell number of classes; this keeps it under ~5M.
pub const INTERPOLATION_MAX_VERTICES: usize = 12;

/// Chromatic polynomial, computed by deletion–contraction and (within
/// [`INTERPOLATION_MAX_VERTICES`]) re-derived by counting colorings and
/// interpolating. A mismatch is reported as [`Error::Disagreement`].
pub fn chromatic_polynomial(g: &Graph) -> Result<IntPolynomial> {
    let dc = chromatic_by_deletion_contraction(g);
    if g.n() <= INTERPOLATION_MAX_VERTICES {
        let interp = chromatic_by_interpolation(g)?;
        if interp != dc {
            return Err(Error::Disagreement(format!(
                "chromatic polynomial of {g}: deletion-contraction gives {dc}, interpolation gives {interp}"
            )));
        }
    }
    Ok(dc)
}

fn falling_factorial(k: usize) -> IntPolynomial {
    (0..k as i64).map(|i| IntPolynomial::linear(-i)).product()
}

pub fn chromatic_by_deletion_contraction(g: &Graph) -> IntPolynomial {
    let adj = g.adjacency_bits();
    let alive: u64 = g.vertices().map(|v| 1u64 << v).fold(0, |a, b| a | b);
    let mut memo = HashMap::new();
    contract_delete(alive, adj, &mut memo)
}

type Memo = HashMap<(u64, Vec<u64>), IntPolynomial>;

fn contract_delete(alive: u64, adj: Vec<u64>, memo: &mut Memo) -> IntPolynomial {
    let isolated = super::iter_bits(alive).filter(|&v| adj[v] == 0).count();
    let core = super::iter_bits(alive)
        .filter(|&v| adj[v] != 0)
        .fold(0u64, |a, v| a | (1 << v));
    if core == 0 {
        return IntPolynomial::t_pow(isolated);
    }
    let key = (core, super::iter_bits(core).map(|v| adj[v]).collect::<Vec<_>>());
    if let Some(p) = memo.get(&key) {
        return p.mul_t_pow(isolated);
    }
    let k = core.count_ones() as usize;
    let is_clique = super::iter_bits(core).all(|v| adj[v] == core & !(1u64 << v));
    let result = if is_clique {
        falling_factorial(k)
    } else {
        let u = core.trailing_zeros() as usize;
        let v = adj[u].trailing_zeros() as usize;

        let mut deleted = adj.clone();
        deleted[u] &= !(1 << v);
        deleted[v] &= !(1 << u);

        let mut contracted = adj;
        let merged = (contracted[u] | contracted[v]) & !(1 << u) & !(1 << v);
        for w in super::iter_bits(contracted[v]) {
            contracted[w] &= !(1 << v);
            if w != u {
                contracted[w] |= 1 << u;
            }
        }
        contracted[u] = merged;
        contracted[v] = 0;

        let without = contract_delete(core, deleted, memo);
        let with = contract_delete(core & !(1 << v), contracted, memo);
        &without - &with
    };
    memo.insert(key, result.clone());
    result.mul_t_pow(isolated)
}

/// Number of proper colorings with `t` colors.
///
/// Colorings are enumerated with colors introduced in first-use order; each
/// such canonical coloring with `j` colors stands for `t(t-1)...(t-j+1)`
/// actual colorings.
pub fn count_proper_colorings(g: &Graph, t: usize) -> BigInt {
    let adj = g.adjacency_bits();
    let mut colors = vec![usize::MAX; g.n() + 1];
    let mut by_used = vec![0u64; g.n() + 1];
    assign(1, 0, t, g.n(), &adj, &mut colors, &mut by_used);
    by_used
        .iter()
        .enumerate()
        .map(|(j, &count)| {
            let ways: BigInt = (0..j).map(|i| BigInt::from(t) - i).product();
            ways * count
        })
        .sum()
}

fn assign(
    v: usize,
    used: usize,
    t: usize,
    n: usize,
    adj: &[u64],
    colors: &mut [usize],
    by_used: &mut [u64],
) {
    if v > n {
        by_used[used] += 1;
        return;
    }
    for c in 0..=used.min(t.saturating_sub(1)) {
        if c >= t {
            break;
        }
        let clash = super::iter_bits(adj[v]).any(|w| w < v && colors[w] == c);
        if clash {
            continue;
        }
        colors[v] = c;
        assign(v + 1, used.max(c + 1), t, n, adj, colors, by_used);
    }
    colors[v] = usize::MAX;
}

/// Counts colorings for `t = 0..=n` and interpolates through those points.
pub fn chromatic_by_interpolation(g: &Graph) -> Result<IntPolynomial> {
    check_budget("vertex count", g.n(), INTERPOLATION_MAX_VERTICES)?;
    let points: Vec<(BigInt, BigInt)> = (0..=g.n())
        .map(|t| (BigInt::from(t), count_proper_colorings(g, t)))
        .collect();
    lagrange_integral(&points)
}

/// Lagrange interpolation over the rationals; fails unless every coefficient
/// is an integer.
pub(crate) fn lagrange_integral(points: &[(BigInt, BigInt)]) -> Result<IntPolynomial> {
    let len = points.len();
    let mut acc = vec![BigRational::zero(); len];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // basis polynomial prod_{j != i} (t - xj) / (xi - xj)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * BigRational::from_integer(xj.clone());
            }
            basis = next;
            denom *= BigRational::from_integer(xi - xj);
        }
        let scale = BigRational::from_integer(yi.clone()) / denom;
        for (k, c) in basis.into_iter().enumerate() {
            acc[k] += c * &scale;
        }
    }
    let coeffs = acc
        .into_iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::Disagreement(format!(
                    "interpolated coefficient {c} is not an integer"
                )))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPolynomial::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{paw, paw_relabeled};
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    /// Oracle: try every map V -> [t].
    fn count_all_maps(g: &Graph, t: usize) -> u64 {
        let n = g.n();
        let total = t.pow(n as u32);
        (0..total)
            .filter(|&code| {
                let mut c = vec![0; n + 1];
                let mut x = code;
                for v in 1..=n {
                    c[v] = x % t;
                    x /= t;
                }
                g.edges().iter().all(|e| c[e.lo as usize] != c[e.hi as usize])
            })
            .count() as u64
    }

    #[test]
    fn example_polynomials() {
        // t(t-1)^2(t-2)
        let expected = &(&p(&[0, 1]) * &p(&[-1, 1])) * &(&p(&[-1, 1]) * &p(&[-2, 1]));
        assert_eq!(chromatic_polynomial(&paw()).unwrap(), expected);
        assert_eq!(chromatic_polynomial(&Graph::empty(3)).unwrap(), p(&[0, 0, 0, 1]));
        // (t-1)^4 + (t-1) = t^4 - 4t^3 + 6t^2 - 3t
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(chromatic_polynomial(&c4).unwrap(), p(&[0, -3, 6, -4, 1]));
        for t in 1..=5 {
            assert_eq!(
                chromatic_polynomial(&c4).unwrap().eval_i64(t as i64),
                BigInt::from(count_all_maps(&c4, t))
            );
        }
        assert_eq!(chromatic_polynomial(&paw_relabeled()).unwrap(), expected);
    }

    #[test]
    fn complete_and_empty_graphs() {
        assert_eq!(chromatic_by_deletion_contraction(&Graph::complete(4)), falling_factorial(4));
        assert_eq!(chromatic_by_deletion_contraction(&Graph::empty(0)), p(&[1]));
        assert_eq!(count_proper_colorings(&Graph::complete(3), 2), BigInt::zero());
        assert_eq!(count_proper_colorings(&Graph::empty(2), 0), BigInt::zero());
        assert_eq!(count_proper_colorings(&Graph::empty(0), 0), BigInt::one());
    }

    #[test]
    fn non_integral_interpolation_is_rejected() {
        // values 0, 1, 0 at t = 0, 1, 2 interpolate to t(2-t)... integral;
        // 0, 1, 3 give (t^2 + t)/2
        let pts: Vec<(BigInt, BigInt)> = [(0, 0), (1, 1), (2, 3)]
            .iter()
            .map(|&(x, y)| (BigInt::from(x), BigInt::from(y)))
            .collect();
        assert!(lagrange_integral(&pts).is_err());
    }

    proptest! {
        #[test]
        fn both_methods_match_raw_counts(bits in 0u64..(1 << 10)) {
            let all: Vec<(u32, u32)> = (1..=5u32)
                .flat_map(|i| (i + 1..=5).map(move |j| (i, j)))
                .collect();
            let g = Graph::new(5, all.iter().enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .map(|(_, &p)| p)).unwrap();
            let dc = chromatic_by_deletion_contraction(&g);
            prop_assert_eq!(&dc, &chromatic_by_interpolation(&g).unwrap());
            for t in 0..=4usize {
                prop_assert_eq!(dc.eval_i64(t as i64), BigInt::from(count_all_maps(&g, t)));
            }
        }
    }
}
