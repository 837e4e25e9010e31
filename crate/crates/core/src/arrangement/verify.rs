use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::{
    build_arrangement, enumerate_multigraph_isf, multigraph_isf_polynomial,
    perfect_labeling_violation, rota_polynomial, Arrangement, IntersectionLattice,
    LabeledMultigraph, DEFAULT_HYPERPLANE_BUDGET,
};
use crate::error::{check_budget, invalid, Error, Result};
use crate::graph::iter_bits;
use crate::linalg::nullspace;
use crate::poly::IntPolynomial;
use crate::report::Report;

/// Hyperplane limit for the deletion-restriction region recursion.
pub const MAX_RECURSION_HYPERPLANES: usize = 12;

/// Largest `s` accepted by [`signed_chromatic_count`].
pub const MAX_SIGNED_COLORS: u64 = 10;

pub fn intersection_lattice(g: &LabeledMultigraph, budget: usize) -> Result<IntersectionLattice> {
    IntersectionLattice::new(&build_arrangement(g), budget)
}

/// Atom order with the blocks `E_1, E_2, ..` in sequence and input order
/// inside each block.
pub fn block_atom_order(g: &LabeledMultigraph, l: &IntersectionLattice) -> Vec<usize> {
    let mut order = Vec::with_capacity(l.atom_count());
    for h in 0..g.edge_count() {
        let a = l.hyperplane_atom(h);
        if !order.contains(&a) {
            order.push(a);
        }
    }
    order
}

/// `V_0 <= V_1 <= .. <= V_n`, where `V_m` joins the hyperplanes of `E_1..E_m`.
pub fn prefix_multichain(g: &LabeledMultigraph, l: &IntersectionLattice) -> Vec<usize> {
    let mut chain = vec![l.bottom()];
    let mut atoms = 0u64;
    for k in 1..=g.n() as u32 {
        for (h, e) in g.edges().iter().enumerate() {
            if e.hi == k {
                atoms |= 1 << l.hyperplane_atom(h);
            }
        }
        chain.push(l.join_atoms(atoms));
    }
    chain
}

/// `(-1)^deg p(-t)`
fn reflect(p: &IntPolynomial) -> IntPolynomial {
    p.sign_twist(p.degree().unwrap_or(0))
}

/// Compares `ISF(G, t)` with `(-1)^rho t^(n - rho) chi(L, -t)`; they agree
/// exactly when the labeling is perfect. Also checks the factorization of
/// `chi` along the prefix multichain, NBC and transversal counts, and
/// supersolvability.
pub fn verify_isf_chi(g: &LabeledMultigraph, budget: usize) -> Result<Report> {
    let mut r = Report::new(format!("isf/chi verification of {g}"));
    let n = g.n();
    let l = intersection_lattice(g, budget)?;
    let rho = l.rank();
    let chi = l.characteristic_polynomial();
    let isf = multigraph_isf_polynomial(g);

    r.value("lattice_size", l.len());
    r.value("rank", rho);
    r.value("rank_sizes", l.rank_sizes());
    r.value("chi", chi.to_string());
    r.fact("rank_equals_n", rho == n);

    let counts = enumerate_multigraph_isf(g, budget)?;
    let counts_poly = IntPolynomial::from_descending_counts(&counts, n);
    r.require_equal("isf: enumeration = factorization", &counts_poly, &isf);

    if l.len() > 1 {
        r.require("mobius_sum_zero", l.mobius_sum().is_zero(), l.mobius_sum());
    }

    let perfect = perfect_labeling_violation(g);
    if let Some(v) = &perfect {
        r.witness("labeling_violation", v);
    }
    let perfect = perfect.is_none();
    r.fact("perfectly_labeled", perfect);

    let rhs = reflect(&chi).mul_t_pow(n - rho);
    let identity = r.compare("isf(t) = (-1)^rho t^(n-rho) chi(-t)", &isf, &rhs);
    r.require(
        "identity_iff_perfectly_labeled",
        identity == perfect,
        format!("identity {identity}, perfectly labeled {perfect}"),
    );

    let chain = prefix_multichain(g, &l);
    let tr = l.atomic_transversals(&chain)?;
    let product = IntPolynomial::from_linear_factors(&tr.block_sizes, 0).sign_twist(n);
    let factored = product.div_t_pow(n - rho);
    let chain_ok = factored.as_ref() == Some(&chi);
    r.fact("chi_factors_along_prefix_chain", chain_ok);
    r.value("prefix_block_sizes", &tr.block_sizes);
    if perfect {
        r.require(
            "perfectly_labeled_implies_chain_factorization",
            chain_ok,
            format!("chi = {chi}, block sizes {:?}", tr.block_sizes),
        );
    }

    let order = block_atom_order(g, &l);
    let nbc = l.nbc(&order, budget)?;
    r.value("nbc_counts", &nbc.counts);
    r.value("isf_counts", &counts);
    r.value("transversal_counts", &tr.counts);
    r.require_equal("rota: nbc alternating sum = chi", &rota_polynomial(rho, &nbc.counts), &chi);

    let nbc_masks: std::collections::BTreeSet<u64> = nbc.masks.iter().copied().collect();
    let stray: Vec<u64> = tr.masks.iter().copied().filter(|m| !nbc_masks.contains(m)).collect();
    r.require(
        "transversals_are_nbc",
        stray.is_empty(),
        format!("{} transversals contain a broken circuit", stray.len()),
    );
    if let Some(&m) = stray.first() {
        r.witness("transversal_not_nbc", iter_bits(m).collect::<Vec<_>>());
    }

    let at = |v: &[u64], m: usize| v.get(m).copied().unwrap_or(0);
    let width = counts.len().max(nbc.counts.len());
    let bounded = (0..width).all(|m| at(&counts, m) <= at(&nbc.counts, m));
    let equal = (0..width).all(|m| at(&counts, m) == at(&nbc.counts, m));
    r.require("isf_at_most_nbc", bounded, format!("isf {counts:?}, nbc {:?}", nbc.counts));
    r.require(
        "isf_equals_nbc_iff_perfectly_labeled",
        equal == perfect,
        format!("equal {equal}, perfectly labeled {perfect}"),
    );

    let ss = l.is_supersolvable();
    r.fact("supersolvable", ss);
    if perfect {
        r.require("perfectly_labeled_implies_supersolvable", ss, "no modular maximal chain");
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Topology {
    /// `betti[m] = nbc_(n-m)` for `m = 0..=n`.
    pub betti: Vec<u64>,
    pub nbc_counts: Vec<u64>,
    /// Total NBC count; the number of regions when all labels are real.
    pub nbc_total: u64,
    /// Deletion-restriction region count, when computed.
    pub regions: Option<u64>,
}

/// Betti numbers of the complement and, for real labels, the region count
/// checked by deletion-restriction.
pub fn topology_report(g: &LabeledMultigraph, budget: usize) -> Result<(Topology, Report)> {
    let mut r = Report::new(format!("topology of {g}"));
    let n = g.n();
    let l = intersection_lattice(g, budget)?;
    let nbc = l.nbc(&block_atom_order(g, &l), budget)?;
    let at = |m: usize| nbc.counts.get(m).copied().unwrap_or(0);
    let betti: Vec<u64> = (0..=n).map(|m| at(n - m)).collect();
    let total: u64 = nbc.counts.iter().sum();

    let isf = enumerate_multigraph_isf(g, budget)?;
    let isf_at = |m: usize| isf.get(m).copied().unwrap_or(0);
    r.require(
        "isf_m_at_most_betti_n_minus_m",
        (0..=n).all(|m| isf_at(m) <= betti[n - m]),
        format!("isf {isf:?}, betti {betti:?}"),
    );
    let perfect = perfect_labeling_violation(g).is_none();
    let equal = (0..=n).all(|m| isf_at(m) == betti[n - m]);
    r.fact("perfectly_labeled", perfect);
    r.require(
        "isf_equals_betti_iff_perfectly_labeled",
        equal == perfect,
        format!("equal {equal}, perfectly labeled {perfect}"),
    );

    let arr = build_arrangement(g);
    let regions = if arr.real && arr.len() <= MAX_RECURSION_HYPERPLANES {
        let count = region_count(&arr)?;
        r.require_equal("regions: nbc total = deletion-restriction", &total, &count);
        Some(count)
    } else {
        None
    };
    if arr.real {
        let isf_total: u64 = isf.iter().sum();
        r.require("isf_at_most_regions", isf_total <= total, format!("{isf_total} > {total}"));
    }
    let topo = Topology {
        betti,
        nbc_counts: nbc.counts,
        nbc_total: total,
        regions,
    };
    r.value("topology", &topo);
    Ok((topo, r))
}

fn real_normals(arr: &Arrangement) -> Result<Vec<Vec<BigRational>>> {
    if !arr.real {
        return Err(invalid("region counting needs real labels"));
    }
    Ok(arr
        .normals
        .iter()
        .map(|v| v.iter().map(|c| c.re.clone()).collect())
        .collect())
}

/// Scales so the first nonzero entry is 1; `None` for the zero vector.
fn normalize(v: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let lead = v.iter().find(|c| !c.is_zero())?.clone();
    Some(v.into_iter().map(|c| c / &lead).collect())
}

fn dedupe(normals: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    let mut out: Vec<Vec<BigRational>> = Vec::new();
    for v in normals.into_iter().filter_map(normalize) {
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

fn regions_rec(normals: &[Vec<BigRational>], dim: usize) -> u64 {
    let Some((h, rest)) = normals.split_last() else {
        return 1;
    };
    // coordinates of H in a basis of its own, then the traces of the rest
    let basis = nullspace(vec![h.clone()], dim);
    let restricted = dedupe(
        rest.iter()
            .map(|v| {
                basis
                    .iter()
                    .map(|b| v.iter().zip(b).map(|(x, y)| x * y).sum())
                    .collect()
            })
            .collect(),
    );
    regions_rec(rest, dim) + regions_rec(&restricted, dim - 1)
}

/// Regions of a real central arrangement by `r(A) = r(A - H) + r(A|H)`.
pub fn region_count(arr: &Arrangement) -> Result<u64> {
    check_budget("hyperplane count", arr.len(), MAX_RECURSION_HYPERPLANES)?;
    let normals = dedupe(real_normals(arr)?);
    Ok(regions_rec(&normals, arr.dim))
}

/// Colorings `c: {1..n} -> {-s..s}` with `c(i) != e c(j)` for each edge
/// `ij^e` and `c(k) != 0` for each edge `0k`.
pub fn signed_chromatic_count(g: &LabeledMultigraph, s: u64) -> Result<u64> {
    if !g.is_signed() {
        return Err(invalid("signed colorings need every label to be +1 or -1"));
    }
    for i in 1..=g.n() as u32 {
        for j in i + 1..=g.n() as u32 {
            if g.labels(i, j).len() > 2 {
                return Err(invalid(format!("more than two edges between {i} and {j}")));
            }
        }
    }
    if s > MAX_SIGNED_COLORS {
        return Err(Error::BudgetExceeded {
            what: "signed color bound",
            limit: MAX_SIGNED_COLORS as usize,
            actual: s as usize,
        });
    }
    let n = g.n();
    let width = 2 * s + 1;
    check_budget("coloring count", width.pow(n as u32) as usize, 50_000_000)?;
    let constraints: Vec<(usize, usize, i64)> = g
        .edges()
        .iter()
        .map(|e| {
            let sign = e.label.as_ref().and_then(|z| z.sign_unit()).unwrap_or(0);
            (e.lo as usize, e.hi as usize, sign)
        })
        .collect();
    let s = s as i64;
    let mut c = vec![-s; n + 1];
    c[0] = 0;
    let mut count = 0u64;
    loop {
        let proper = constraints.iter().all(|&(i, j, e)| {
            if i == 0 {
                c[j] != 0
            } else {
                c[i] != e * c[j]
            }
        });
        count += u64::from(proper);
        let mut k = 1;
        while k <= n && c[k] == s {
            c[k] = -s;
            k += 1;
        }
        if k > n {
            break;
        }
        c[k] += 1;
    }
    Ok(count)
}

/// `signed_chromatic_count(g, s) = t^(n-rho) chi(L, t)` at `t = 2s + 1`
/// for each `s` in `s_values`.
pub fn verify_signed(g: &LabeledMultigraph, s_values: &[u64]) -> Result<Report> {
    let mut r = Report::new(format!("signed coloring verification of {g}"));
    let l = intersection_lattice(g, DEFAULT_HYPERPLANE_BUDGET)?;
    let poly = l.characteristic_polynomial().mul_t_pow(g.n() - l.rank());
    for &s in s_values {
        let count = BigInt::from(signed_chromatic_count(g, s)?);
        let value = poly.eval(&BigInt::from(2 * s + 1));
        r.require_equal(&format!("colorings(s={s}) = chi({})", 2 * s + 1), &count, &value);
    }
    Ok(r)
}

/// Everything in one report: the isf/chi identity, topology and (for
/// signed labels) colorings at `s = 0..=3`.
pub fn verify_multigraph(g: &LabeledMultigraph, budget: usize) -> Result<Report> {
    let mut r = Report::new(format!("multigraph verification of {g}"));
    r.absorb("isf_chi", verify_isf_chi(g, budget)?);
    r.absorb("topology", topology_report(g, budget)?.1);
    if g.is_signed() && g.n() <= 6 {
        r.absorb("signed", verify_signed(g, &[0, 1, 2, 3])?);
    }
    Ok(r)
}
