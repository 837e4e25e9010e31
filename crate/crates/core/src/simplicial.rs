//! Pure simplicial complexes stored by facets: caged ridges, cage-free
//! subcomplexes and their generating function, upper links, and the
//! simplicial analogue of a perfect elimination ordering.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Display};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{check_budget, invalid, Error, Result};
use crate::graph::{
    acyclic_orientation_count, check_permutation, chromatic_polynomial, enumerate_isf, find_peo,
    is_natural_peo, isf_polynomial, Budgets, Graph, MAX_MASK_EDGES, MAX_VERTICES,
};
use crate::linalg::integer_rank;
use crate::poly::{IntPolynomial, Monomial, WeightedGF};
use crate::report::Report;

/// A pure `d`-dimensional complex on `{1..n}`, given by its facets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PureComplex {
    n: usize,
    d: usize,
    /// Sorted facets, each sorted ascending.
    facets: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    n: usize,
    d: usize,
    facets: Vec<Vec<u32>>,
}

impl PureComplex {
    pub fn new<I, F>(n: usize, d: usize, facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: AsRef<[u32]>,
    {
        if d == 0 {
            return Err(invalid("dimension must be at least 1"));
        }
        if n > MAX_VERTICES {
            return Err(invalid(format!("{n} vertices exceeds the limit of {MAX_VERTICES}")));
        }
        let mut set = BTreeSet::new();
        for f in facets {
            let mut f = f.as_ref().to_vec();
            f.sort_unstable();
            if f.len() != d + 1 {
                return Err(invalid(format!("facet {f:?} does not have {} vertices", d + 1)));
            }
            if f.windows(2).any(|w| w[0] == w[1]) {
                return Err(invalid(format!("facet {f:?} repeats a vertex")));
            }
            if f.iter().any(|&v| v < 1 || v as usize > n) {
                return Err(invalid(format!("facet {f:?} has a vertex outside 1..={n}")));
            }
            if !set.insert(f.clone()) {
                return Err(invalid(format!("duplicate facet {f:?}")));
            }
        }
        Ok(Self {
            n,
            d,
            facets: set.into_iter().collect(),
        })
    }

    /// Reads `{"n": .., "d": .., "facets": [[..], ..]}`.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: ComplexJson = serde_json::from_value(value.clone())
            .map_err(|e| invalid(format!("complex JSON: {e}")))?;
        Self::new(raw.n, raw.d, raw.facets)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ComplexJson {
            n: self.n,
            d: self.d,
            facets: self.facets.clone(),
        })
        .expect("complex serializes")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn facets(&self) -> &[Vec<u32>] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn facet_index(&self, facet: &[u32]) -> Option<usize> {
        let mut f = facet.to_vec();
        f.sort_unstable();
        self.facets.binary_search(&f).ok()
    }

    pub fn has_facet(&self, facet: &[u32]) -> bool {
        self.facet_index(facet).is_some()
    }

    /// Renames vertex `v` to `perm[v - 1]`.
    pub fn relabel(&self, perm: &[u32]) -> Result<Self> {
        check_permutation(perm, self.n)?;
        Self::new(
            self.n,
            self.d,
            self.facets
                .iter()
                .map(|f| f.iter().map(|&v| perm[v as usize - 1]).collect::<Vec<_>>()),
        )
    }

    /// Faces of dimension `d - 1`.
    pub fn ridges(&self) -> BTreeSet<Vec<u32>> {
        self.facets.iter().flat_map(|f| drop_one(f)).collect()
    }

    /// Faces of dimension `d - 2`. For a graph this is just the empty face.
    pub fn peaks(&self) -> BTreeSet<Vec<u32>> {
        if self.d == 1 {
            return BTreeSet::from([Vec::new()]);
        }
        self.facets
            .iter()
            .flat_map(|f| drop_one(f).into_iter().flat_map(|r| drop_one(&r)))
            .collect()
    }

    /// Viewed as a graph; only for `d = 1`.
    pub fn as_graph(&self) -> Result<Graph> {
        if self.d != 1 {
            return Err(invalid("only a 1-dimensional complex is a graph"));
        }
        Graph::new(self.n, self.facets.iter().map(|f| (f[0], f[1])))
    }
}

impl Display for PureComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let facets: Vec<String> = self
            .facets
            .iter()
            .map(|fc| fc.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "<{}> on {} vertices", facets.join(" "), self.n)
    }
}

fn drop_one(face: &[u32]) -> Vec<Vec<u32>> {
    (0..face.len())
        .map(|skip| {
            face.iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}

/// Index of a block `Phi_{sigma,k}`: the peak `sigma` and the top vertex `k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PhiKey {
    pub peak: Vec<u32>,
    pub top: u32,
}

/// Facets grouped by their first `d - 1` vertices and their last vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiPartition {
    blocks: BTreeMap<PhiKey, Vec<usize>>,
    block_of: Vec<PhiKey>,
}

impl PhiPartition {
    /// Blocks with the indices of their facets.
    pub fn blocks(&self) -> &BTreeMap<PhiKey, Vec<usize>> {
        &self.blocks
    }

    /// Number of nonempty blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn sizes(&self) -> Vec<u64> {
        self.blocks.values().map(|b| b.len() as u64).collect()
    }

    pub fn block_of(&self, facet_index: usize) -> &PhiKey {
        &self.block_of[facet_index]
    }

    pub fn to_json(&self, complex: &PureComplex) -> serde_json::Value {
        serde_json::Value::Array(
            self.blocks
                .iter()
                .map(|(key, idx)| {
                    serde_json::json!({
                        "peak": key.peak,
                        "top": key.top,
                        "facets": idx.iter().map(|&i| &complex.facets[i]).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )
    }
}

pub fn phi_partition(complex: &PureComplex) -> PhiPartition {
    let mut blocks: BTreeMap<PhiKey, Vec<usize>> = BTreeMap::new();
    let mut block_of = Vec::with_capacity(complex.facets.len());
    for (i, f) in complex.facets.iter().enumerate() {
        let d = complex.d;
        let key = PhiKey {
            peak: f[..d - 1].to_vec(),
            top: f[d],
        };
        blocks.entry(key.clone()).or_default().push(i);
        block_of.push(key);
    }
    PhiPartition { blocks, block_of }
}

/// A subcomplex holding every face of dimension below `d` plus some facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningSubcomplex<'a> {
    parent: &'a PureComplex,
    kept: BTreeSet<usize>,
}

impl<'a> SpanningSubcomplex<'a> {
    pub fn new<I, F>(parent: &'a PureComplex, facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: AsRef<[u32]>,
    {
        let kept = facets
            .into_iter()
            .map(|f| {
                parent
                    .facet_index(f.as_ref())
                    .ok_or_else(|| invalid(format!("{:?} is not a facet", f.as_ref())))
            })
            .collect::<Result<_>>()?;
        Ok(Self { parent, kept })
    }

    pub fn full(parent: &'a PureComplex) -> Self {
        Self {
            parent,
            kept: (0..parent.facet_count()).collect(),
        }
    }

    /// Keeps the facets whose indices are the set bits of `mask`.
    pub fn from_mask(parent: &'a PureComplex, mask: u64) -> Self {
        Self {
            parent,
            kept: crate::graph::iter_bits(mask).collect(),
        }
    }

    pub fn parent(&self) -> &'a PureComplex {
        self.parent
    }

    pub fn kept_facets(&self) -> Vec<&'a [u32]> {
        self.kept.iter().map(|&i| self.parent.facets[i].as_slice()).collect()
    }

    pub fn len(&self) -> usize {
        self.kept.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kept.is_empty()
    }

    /// Ridges `[sigma, k]` with at least two kept facets in block `(sigma, k)`.
    pub fn caged_ridges_by_blocks(&self) -> BTreeSet<Vec<u32>> {
        let part = phi_partition(self.parent);
        let mut count: BTreeMap<&PhiKey, usize> = BTreeMap::new();
        for &i in &self.kept {
            *count.entry(part.block_of(i)).or_default() += 1;
        }
        count
            .into_iter()
            .filter(|&(_, c)| c >= 2)
            .map(|(key, _)| {
                let mut ridge = key.peak.clone();
                ridge.push(key.top);
                ridge
            })
            .collect()
    }

    /// Scans every ridge `rho` of a kept facet and asks whether two kept
    /// facets have the form `[sigma, i, k]` with `rho = [sigma, k]`.
    pub fn caged_ridges_by_definition(&self) -> BTreeSet<Vec<u32>> {
        let mut cages: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
        for f in self.kept_facets() {
            for (ridge, extra) in ridges_with_extra(f) {
                if extends_below_top(&ridge, extra) {
                    *cages.entry(ridge).or_default() += 1;
                }
            }
        }
        cages.into_iter().filter(|&(_, c)| c >= 2).map(|(r, _)| r).collect()
    }

    /// Caged ridges; both characterizations are computed and must agree.
    pub fn caged_ridges(&self) -> Result<BTreeSet<Vec<u32>>> {
        let by_blocks = self.caged_ridges_by_blocks();
        let by_def = self.caged_ridges_by_definition();
        if by_blocks != by_def {
            return Err(Error::Disagreement(format!(
                "caged ridges: blocks give {by_blocks:?}, definition gives {by_def:?}"
            )));
        }
        Ok(by_blocks)
    }

    pub fn is_cage_free(&self) -> Result<bool> {
        Ok(self.caged_ridges()?.is_empty())
    }

    /// The pure complex generated by the kept facets.
    pub fn facet_complex(&self) -> PureComplex {
        PureComplex::new(self.parent.n, self.parent.d, self.kept_facets())
            .expect("subset of a valid complex")
    }
}

/// Each ridge of `facet` paired with the vertex that completes it.
fn ridges_with_extra(facet: &[u32]) -> Vec<(Vec<u32>, u32)> {
    (0..facet.len())
        .map(|skip| {
            let ridge = facet
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect();
            (ridge, facet[skip])
        })
        .collect()
}

/// With `ridge = [sigma, k]`, whether `extra` lies strictly between `sigma`
/// and `k`.
fn extends_below_top(ridge: &[u32], extra: u32) -> bool {
    let (&k, sigma) = ridge.split_last().expect("ridges are nonempty");
    extra < k && sigma.last().is_none_or(|&s| s < extra)
}

/// `prod over nonempty blocks (t + |Phi_{sigma,k}|)`
pub fn cf_polynomial(complex: &PureComplex) -> IntPolynomial {
    IntPolynomial::from_linear_factors(&phi_partition(complex).sizes(), 0)
}

/// Variable names `x[v1,..,vd+1]`, aligned with [`PureComplex::facets`].
pub fn default_facet_weights(complex: &PureComplex) -> Vec<String> {
    complex
        .facets
        .iter()
        .map(|f| {
            let inner: Vec<String> = f.iter().map(u32::to_string).collect();
            format!("x[{}]", inner.join(","))
        })
        .collect()
}

/// `prod over nonempty blocks (t + sum of the block's facet variables)`
pub fn cf_weighted(complex: &PureComplex, weights: &[String]) -> WeightedGF {
    phi_partition(complex)
        .blocks()
        .values()
        .map(|idx| {
            let vars: Vec<&str> = idx.iter().map(|&i| weights[i].as_str()).collect();
            WeightedGF::linear(&vars)
        })
        .product()
}

/// Brute-force tally of cage-free spanning subcomplexes by facet count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfEnumeration {
    pub counts: Vec<u64>,
    /// Nonempty block count `N`, the degree of the generating function.
    pub blocks: usize,
    pub(crate) masks: Vec<u64>,
}

impl CfEnumeration {
    /// `sum_m counts[m] t^(N - m)`
    pub fn polynomial(&self) -> IntPolynomial {
        IntPolynomial::from_descending_counts(&self.counts, self.blocks)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Walks every facet subset, rejecting those where some ridge has two kept
/// facets of the caging form.
pub fn enumerate_cage_free(complex: &PureComplex, budget: usize) -> Result<CfEnumeration> {
    let q = complex.facet_count();
    check_budget("facet count", q, budget.min(MAX_MASK_EDGES))?;
    // for each ridge, the facets that would cage it
    let mut cage_masks: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    for (i, f) in complex.facets.iter().enumerate() {
        for (ridge, extra) in ridges_with_extra(f) {
            if extends_below_top(&ridge, extra) {
                *cage_masks.entry(ridge).or_default() |= 1 << i;
            }
        }
    }
    let cage_masks: Vec<u64> = cage_masks.into_values().filter(|m| m.count_ones() >= 2).collect();
    let mut counts = vec![0u64; q + 1];
    let mut masks = Vec::new();
    for mask in 0u64..(1u64 << q) {
        if cage_masks.iter().all(|&c| (mask & c).count_ones() < 2) {
            counts[mask.count_ones() as usize] += 1;
            masks.push(mask);
        }
    }
    while counts.len() > 1 && counts.last() == Some(&0) {
        counts.pop();
    }
    Ok(CfEnumeration {
        counts,
        blocks: phi_partition(complex).len(),
        masks,
    })
}

/// Weighted generating function summed over enumerated cage-free subcomplexes.
pub fn enumerate_cf_weighted(
    complex: &PureComplex,
    weights: &[String],
    budget: usize,
) -> Result<WeightedGF> {
    let en = enumerate_cage_free(complex, budget)?;
    let mut out = WeightedGF::zero();
    for &mask in &en.masks {
        let mono = Monomial::new(crate::graph::iter_bits(mask).map(|i| weights[i].clone()));
        out.add_term(mono, en.blocks as u32 - mask.count_ones(), BigInt::one());
    }
    Ok(out)
}

/// Graph on `{1..n}` with an edge `ij` for every facet `[sigma, i, j]`.
pub fn upper_link(complex: &PureComplex, peak: &[u32]) -> Result<Graph> {
    if peak.len() + 1 != complex.d {
        return Err(invalid(format!(
            "a peak of a {}-complex has {} vertices",
            complex.d,
            complex.d - 1
        )));
    }
    let mut sigma = peak.to_vec();
    sigma.sort_unstable();
    let d = complex.d;
    Graph::new(
        complex.n,
        complex
            .facets
            .iter()
            .filter(|f| f[..d - 1] == sigma[..])
            .map(|f| (f[d - 1], f[d])),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpperLinks {
    /// Every peak of the complex with its upper link.
    pub links: BTreeMap<Vec<u32>, Graph>,
    /// Peaks whose upper link has an edge.
    pub effective: Vec<Vec<u32>>,
}

impl UpperLinks {
    pub fn effective_links(&self) -> impl Iterator<Item = (&Vec<u32>, &Graph)> {
        self.effective.iter().map(|p| (p, &self.links[p]))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "effective": self.effective,
            "links": self.links.iter().map(|(p, g)| serde_json::json!({
                "peak": p,
                "graph": g.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

pub fn upper_links(complex: &PureComplex) -> UpperLinks {
    let links: BTreeMap<Vec<u32>, Graph> = complex
        .peaks()
        .into_iter()
        .map(|p| {
            let g = upper_link(complex, &p).expect("peaks have the right size");
            (p, g)
        })
        .collect();
    let effective = links
        .iter()
        .filter(|(_, g)| g.edge_count() > 0)
        .map(|(p, _)| p.clone())
        .collect();
    UpperLinks { links, effective }
}

/// Checks the cage-free generating function against its factorization,
/// against the product of upper-link forest polynomials, and against the
/// chromatic and acyclic-orientation bounds of the upper links.
pub fn verify_product_formula(complex: &PureComplex, budgets: Budgets) -> Result<Report> {
    let mut r = Report::new(format!("cage-free product formula for {complex}"));
    let n = complex.n;
    let part = phi_partition(complex);
    let cf = cf_polynomial(complex);
    r.value("blocks", part.len());

    if complex.facet_count() <= budgets.enumeration.min(MAX_MASK_EDGES) {
        let en = enumerate_cage_free(complex, budgets.enumeration)?;
        r.value("cf_counts", &en.counts);
        r.require_equal("cf: enumeration = factorization", &en.polynomial(), &cf);
    }

    let links = upper_links(complex);
    let s = links.effective.len();
    let exponent = part.len() as i64 - (n * s) as i64;
    r.value("effective_peaks", &links.effective);
    r.value("correction_exponent", exponent);

    let isf_product: IntPolynomial = links
        .effective_links()
        .map(|(_, g)| isf_polynomial(g))
        .product();
    match isf_product.shift_t(exponent) {
        Some(p) => {
            r.require_equal("cf = t^(N-ns) prod isf(G_sigma)", &cf, &p);
        }
        None => {
            r.require(
                "cf = t^(N-ns) prod isf(G_sigma)",
                false,
                format!("{isf_product} is not divisible by t^{}", -exponent),
            );
        }
    }

    // totals: the links' forest counts come from enumeration when it fits
    let mut isf_totals = BigInt::one();
    for (_, g) in links.effective_links() {
        let total = if g.edge_count() <= budgets.enumeration.min(MAX_MASK_EDGES) {
            BigInt::from(enumerate_isf(g, budgets.enumeration, false)?.total())
        } else {
            isf_polynomial(g).coeff_sum()
        };
        isf_totals *= total;
    }
    let cf_total = cf.coeff_sum();
    r.require_equal(
        "cf(1) = prod isf(G_sigma)(1)",
        &cf_total.to_string(),
        &isf_totals.to_string(),
    );

    let peo = is_simplicial_peo(complex, &identity(n))?;
    r.fact("natural_order_is_peo", peo);

    let mut chromatic_product = IntPolynomial::one();
    let mut ao_product = BigInt::one();
    for (_, g) in links.effective_links() {
        let p = chromatic_polynomial(g)?;
        chromatic_product = &chromatic_product * &p.sign_twist(n);
        ao_product *= acyclic_orientation_count(g, budgets.enumeration)?.by_chromatic;
    }
    let chromatic_side = chromatic_product
        .shift_t(exponent)
        .unwrap_or_else(IntPolynomial::zero);
    let holds = r.compare(
        "cf = (-1)^(ns) t^(N-ns) prod P(G_sigma,-t)",
        &cf,
        &chromatic_side,
    );
    r.require(
        "chromatic_identity_iff_peo",
        holds == peo,
        format!("identity holds {holds}, peo {peo}"),
    );
    r.value("ao_product", ao_product.to_string());
    r.require(
        "cf_at_most_ao_product",
        cf_total <= ao_product,
        format!("cf {cf_total} > {ao_product}"),
    );
    let equal = cf_total == ao_product;
    r.require(
        "cf_equals_ao_product_iff_peo",
        equal == peo,
        format!("equality {equal}, peo {peo}"),
    );
    Ok(r)
}

fn identity(n: usize) -> Vec<u32> {
    (1..=n as u32).collect()
}

/// Whether the complex, renamed by `labeling` (`v` becomes
/// `labeling[v - 1]`), satisfies: facets `[sigma,i,k]` and `[sigma,j,k]`
/// force `[sigma,i,j]`. Cross-checked against the upper links, each of which
/// must then be ordered naturally as a perfect elimination ordering.
pub fn is_simplicial_peo(complex: &PureComplex, labeling: &[u32]) -> Result<bool> {
    let relabeled = complex.relabel(labeling)?;
    let direct = simplicial_peo_direct(&relabeled);
    let by_links = upper_links(&relabeled)
        .links
        .values()
        .all(is_natural_peo);
    if direct != by_links {
        return Err(Error::Disagreement(format!(
            "simplicial peo of {relabeled}: direct {direct}, upper links {by_links}"
        )));
    }
    Ok(direct)
}

fn simplicial_peo_direct(complex: &PureComplex) -> bool {
    let d = complex.d;
    phi_partition(complex).blocks().iter().all(|(key, idx)| {
        let middles: Vec<u32> = idx.iter().map(|&i| complex.facets[i][d - 1]).collect();
        middles.iter().enumerate().all(|(a, &i)| {
            middles[a + 1..].iter().all(|&j| {
                let mut face = key.peak.clone();
                face.extend([i.min(j), i.max(j)]);
                complex.has_facet(&face)
            })
        })
    })
}

/// Shifted: replacing a vertex of a face by any smaller vertex gives a face.
/// Checking facets is enough.
pub fn is_shifted(complex: &PureComplex) -> bool {
    complex.facets.iter().all(|f| {
        f.iter().all(|&k| {
            (1..k).filter(|j| !f.contains(j)).all(|j| {
                let swapped: Vec<u32> = f.iter().map(|&v| if v == k { j } else { v }).collect();
                complex.has_facet(&swapped)
            })
        })
    })
}

/// Rank of the top homology over the rationals: the number of facets minus
/// the rank of the top boundary map.
pub fn top_homology_rank(facets: &[&[u32]]) -> usize {
    if facets.is_empty() {
        return 0;
    }
    let mut ridge_index: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    for f in facets {
        for r in drop_one(f) {
            let next = ridge_index.len();
            ridge_index.entry(r).or_insert(next);
        }
    }
    let matrix: Vec<Vec<BigInt>> = facets
        .iter()
        .map(|f| {
            let mut row = vec![BigInt::from(0); ridge_index.len()];
            for (pos, r) in drop_one(f).into_iter().enumerate() {
                row[ridge_index[&r]] = BigInt::from(if pos % 2 == 0 { 1 } else { -1 });
            }
            row
        })
        .collect();
    facets.len() - integer_rank(matrix)
}

/// A ridge lying in exactly one of the given facets.
pub fn find_leaf(facets: &[&[u32]]) -> Option<Vec<u32>> {
    let mut count: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    for f in facets {
        for r in drop_one(f) {
            *count.entry(r).or_default() += 1;
        }
    }
    count.into_iter().find(|&(_, c)| c == 1).map(|(r, _)| r)
}

/// Graph on `{1..n}` with an edge `ij` whenever `sigma + {i, j}` is a facet.
pub fn link_graph(complex: &PureComplex, peak: &[u32]) -> Graph {
    let mut edges = Vec::new();
    for f in &complex.facets {
        if peak.iter().all(|v| f.contains(v)) {
            let rest: Vec<u32> = f.iter().copied().filter(|v| !peak.contains(v)).collect();
            if let [i, j] = rest[..] {
                edges.push((i, j));
            }
        }
    }
    Graph::new(complex.n, edges).expect("facets are distinct")
}

/// Homology, leaf, shiftedness and link facts about a spanning subcomplex.
/// The last three are evaluated on the complex generated by the kept facets.
pub fn structure_report(sub: &SpanningSubcomplex<'_>) -> Result<Report> {
    let facets = sub.kept_facets();
    let complex = sub.facet_complex();
    let mut r = Report::new(format!("structure of {complex}"));
    let cage_free = sub.is_cage_free()?;
    let rank = top_homology_rank(&facets);
    let leaf = find_leaf(&facets);
    r.fact("cage_free", cage_free);
    r.value("top_homology_rank", rank);
    r.fact("has_leaf", leaf.is_some());
    if let Some(l) = &leaf {
        r.witness("leaf", l);
    }
    if cage_free {
        r.require(
            "cage_free_top_homology_vanishes",
            rank == 0,
            format!("top homology rank {rank}"),
        );
        if !facets.is_empty() {
            r.require("cage_free_has_leaf", leaf.is_some(), "no ridge lies in a single facet");
        }
    }

    let shifted = is_shifted(&complex);
    let peo = is_simplicial_peo(&complex, &identity(complex.n))?;
    r.fact("shifted", shifted);
    r.fact("natural_order_is_peo", peo);
    r.require("shifted_implies_peo", !shifted || peo, "shifted complex whose labeling is not a peo");

    if let Some(peak) = complex.peaks().into_iter().next().filter(|_| !facets.is_empty()) {
        let link = link_graph(&complex, &peak);
        let upper = upper_link(&complex, &peak)?;
        let chordal = find_peo(&link).is_some();
        r.witness("lex_min_peak", &peak);
        r.fact("lex_min_peak_link_chordal", chordal);
        r.fact("lex_min_peak_link_is_upper_link", link == upper);
        r.require(
            "peo_implies_chordal_lex_min_link",
            !peo || chordal,
            format!("link of {peak:?} is not chordal"),
        );
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{
        bipyramid, bowtie, hollow_tetrahedron, triangle_fan, BIPYRAMID_NON_PEO, BIPYRAMID_SWAP,
    };
    use crate::graph::DEFAULT_ENUMERATION_BUDGET;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn key(peak: &[u32], top: u32) -> PhiKey {
        PhiKey {
            peak: peak.to_vec(),
            top,
        }
    }

    /// Oracle: cage-free subsets by the definition, checked pair by pair.
    fn cage_free_counts_by_pairs(c: &PureComplex) -> Vec<u64> {
        let q = c.facet_count();
        let mut counts = vec![0u64; q + 1];
        for mask in 0u64..1 << q {
            let kept: Vec<&Vec<u32>> = (0..q).filter(|i| mask >> i & 1 == 1).map(|i| &c.facets[i]).collect();
            let caged = kept.iter().enumerate().any(|(a, f)| {
                kept[a + 1..].iter().any(|g| {
                    // f = [s,i,k], g = [s,j,k] with the same s and k
                    let d = c.d;
                    f[..d - 1] == g[..d - 1] && f[d] == g[d]
                })
            });
            if !caged {
                counts[kept.len()] += 1;
            }
        }
        while counts.len() > 1 && counts.last() == Some(&0) {
            counts.pop();
        }
        counts
    }

    #[test]
    fn partition_examples() {
        let part = phi_partition(&triangle_fan());
        assert_eq!(part.len(), 2);
        assert_eq!(part.blocks()[&key(&[1], 3)].len(), 1);
        assert_eq!(part.blocks()[&key(&[1], 4)].len(), 2);
        let bp = phi_partition(&bipyramid());
        let keys: Vec<PhiKey> = bp.blocks().keys().cloned().collect();
        assert_eq!(
            keys,
            vec![key(&[1], 4), key(&[1], 5), key(&[2], 4), key(&[2], 5), key(&[3], 5)]
        );
        let single = PureComplex::new(3, 2, [[1, 2, 3]]).unwrap();
        assert_eq!(phi_partition(&single).len(), 1);
    }

    #[test]
    fn caged_ridge_examples() {
        let fan = triangle_fan();
        let all = SpanningSubcomplex::full(&fan);
        assert_eq!(all.caged_ridges().unwrap(), BTreeSet::from([vec![1, 4]]));
        let two = SpanningSubcomplex::new(&fan, [[1, 2, 3], [1, 2, 4]]).unwrap();
        assert!(two.is_cage_free().unwrap());
        let none = SpanningSubcomplex::new(&fan, Vec::<Vec<u32>>::new()).unwrap();
        assert!(none.is_cage_free().unwrap());
        assert!(SpanningSubcomplex::new(&fan, [[2, 3, 4]]).is_err());
    }

    #[test]
    fn cf_examples() {
        let fan = triangle_fan();
        assert_eq!(cf_polynomial(&fan), p(&[2, 3, 1]));
        let w = default_facet_weights(&fan);
        let weighted = cf_weighted(&fan, &w);
        let expected = &WeightedGF::linear(&["x[1,2,3]"]) * &WeightedGF::linear(&["x[1,2,4]", "x[1,3,4]"]);
        assert_eq!(weighted, expected);
        assert_eq!(enumerate_cf_weighted(&fan, &w, 25).unwrap(), expected);

        let bp = bipyramid();
        let expected = IntPolynomial::from_linear_factors(&[1, 1, 1, 1, 2], 0);
        assert_eq!(cf_polynomial(&bp), expected);
        assert_eq!(enumerate_cage_free(&bp, 25).unwrap().polynomial(), expected);
        let swapped = bp.relabel(&BIPYRAMID_SWAP).unwrap();
        assert_eq!(cf_polynomial(&swapped), IntPolynomial::from_linear_factors(&[1, 1, 2, 2], 0));
        let other = bp.relabel(&BIPYRAMID_NON_PEO).unwrap();
        assert_eq!(cf_polynomial(&other), expected);
    }

    #[test]
    fn upper_link_examples() {
        let bp = bipyramid();
        let links = upper_links(&bp);
        assert_eq!(links.effective, vec![vec![1], vec![2], vec![3]]);
        assert_eq!(links.links[&vec![1]], Graph::new(5, [(2, 4), (2, 5), (4, 5)]).unwrap());
        assert_eq!(links.links[&vec![2]], Graph::new(5, [(3, 4), (3, 5)]).unwrap());
        assert_eq!(links.links[&vec![3]], Graph::new(5, [(4, 5)]).unwrap());
        assert_eq!(links.links[&vec![4]].edge_count(), 0);
        let fan = triangle_fan();
        assert_eq!(upper_link(&fan, &[2]).unwrap().edge_count(), 0);
        assert!(upper_link(&fan, &[1, 2]).is_err());
    }

    #[test]
    fn product_formula_examples() {
        let r = verify_product_formula(&bipyramid(), Budgets::default()).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.values["correction_exponent"], serde_json::json!(-10));
        assert_eq!(r.facts["natural_order_is_peo"], true);

        let single = PureComplex::new(3, 2, [[1, 2, 3]]).unwrap();
        let r = verify_product_formula(&single, Budgets::default()).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.values["correction_exponent"], serde_json::json!(-2));
        assert_eq!(cf_polynomial(&single), p(&[1, 1]));

        let non_peo = bipyramid().relabel(&BIPYRAMID_NON_PEO).unwrap();
        let r = verify_product_formula(&non_peo, Budgets::default()).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.facts["natural_order_is_peo"], false);
    }

    #[test]
    fn peo_examples() {
        let bp = bipyramid();
        assert!(is_simplicial_peo(&bp, &[1, 2, 3, 4, 5]).unwrap());
        assert!(is_simplicial_peo(&bp, &BIPYRAMID_SWAP).unwrap());
        assert!(!is_simplicial_peo(&bp, &BIPYRAMID_NON_PEO).unwrap());
        let relabeled = bp.relabel(&BIPYRAMID_NON_PEO).unwrap();
        assert!(relabeled.has_facet(&[1, 3, 5]) && relabeled.has_facet(&[1, 4, 5]));
        assert!(!relabeled.has_facet(&[1, 3, 4]));
        let bt = bowtie();
        let mut perm = vec![1, 2, 3, 4, 5];
        for _ in 0..10 {
            assert!(is_simplicial_peo(&bt, &perm).unwrap());
            perm.rotate_left(1);
            perm.swap(0, 2);
        }
        assert!(is_simplicial_peo(&bp, &[1, 2, 3]).is_err());
    }

    #[test]
    fn structure_examples() {
        let sphere = hollow_tetrahedron();
        let r = structure_report(&SpanningSubcomplex::full(&sphere)).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.values["top_homology_rank"], serde_json::json!(1));
        assert_eq!(r.facts["has_leaf"], false);

        let bp = bipyramid();
        let r = structure_report(&SpanningSubcomplex::full(&bp)).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.witnesses["lex_min_peak"], serde_json::json!([1]));
        assert_eq!(r.facts["lex_min_peak_link_chordal"], true);
        assert_eq!(r.facts["shifted"], false);
        // the link of 1 is the upper link plus isolated vertices
        let link = link_graph(&bp, &[1]);
        assert!(find_peo(&link).is_some());
        assert_eq!(link, upper_link(&bp, &[1]).unwrap());

        let fan = triangle_fan();
        let sub = SpanningSubcomplex::new(&fan, [[1, 2, 3], [1, 2, 4]]).unwrap();
        let r = structure_report(&sub).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.values["top_homology_rank"], serde_json::json!(0));
        assert_eq!(r.facts["has_leaf"], true);
    }

    #[test]
    fn shifted_complexes() {
        // all triangles containing vertex 1 on five vertices
        let cone = PureComplex::new(
            5,
            2,
            (2..=5u32).flat_map(|i| (i + 1..=5).map(move |j| [1, i, j])),
        )
        .unwrap();
        assert!(is_shifted(&cone));
        assert!(is_simplicial_peo(&cone, &[1, 2, 3, 4, 5]).unwrap());
        assert!(!is_shifted(&bipyramid()));
        assert!(is_shifted(&hollow_tetrahedron()));
    }

    #[test]
    fn graphs_as_one_dimensional_complexes() {
        let g = crate::examples::paw();
        let c = PureComplex::new(4, 1, g.edges().iter().map(|e| [e.lo, e.hi])).unwrap();
        assert_eq!(c.as_graph().unwrap(), g);
        assert_eq!(upper_links(&c).links[&Vec::new()], g);
        // every E_k but E_1 is nonempty, so N = n - 1 and CF = ISF / t
        assert_eq!(
            cf_polynomial(&c),
            isf_polynomial(&g).div_t_pow(1).unwrap()
        );
        assert!(verify_product_formula(&c, Budgets::default()).unwrap().passed());
        assert_eq!(
            is_simplicial_peo(&c, &[1, 2, 3, 4]).unwrap(),
            is_natural_peo(&g)
        );
    }

    #[test]
    fn json_round_trip() {
        let bp = bipyramid();
        assert_eq!(PureComplex::from_json(&bp.to_json()).unwrap(), bp);
        let bad = serde_json::json!({"n": 3, "d": 2, "facets": [[1, 2]]});
        assert!(PureComplex::from_json(&bad).is_err());
    }

    fn arb_complex() -> impl Strategy<Value = PureComplex> {
        (3usize..=6, any::<u32>()).prop_map(|(n, bits)| {
            let triples: Vec<[u32; 3]> = (1..=n as u32)
                .flat_map(|i| (i + 1..=n as u32).flat_map(move |j| (j + 1..=n as u32).map(move |k| [i, j, k])))
                .collect();
            PureComplex::new(n, 2, triples.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, t)| t)).unwrap()
        })
    }

    proptest! {
        #[test]
        fn enumeration_matches_factorization_and_pair_oracle(c in arb_complex()) {
            let en = enumerate_cage_free(&c, DEFAULT_ENUMERATION_BUDGET).unwrap();
            prop_assert_eq!(&en.counts, &cage_free_counts_by_pairs(&c));
            prop_assert_eq!(en.polynomial(), cf_polynomial(&c));
            prop_assert!(verify_product_formula(&c, Budgets::default()).unwrap().passed());
        }

        #[test]
        fn cage_free_subcomplexes_are_acyclic(c in arb_complex(), pick in any::<u64>()) {
            let en = enumerate_cage_free(&c, DEFAULT_ENUMERATION_BUDGET).unwrap();
            let mask = en.masks[(pick % en.masks.len() as u64) as usize];
            let sub = SpanningSubcomplex::from_mask(&c, mask);
            prop_assert!(sub.is_cage_free().unwrap());
            let r = structure_report(&sub).unwrap();
            prop_assert!(r.passed(), "{}", r);
        }
    }
}
