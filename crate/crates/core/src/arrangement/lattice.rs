use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{GaussRational, LabeledMultigraph};
use crate::error::{check_budget, invalid, Error, Result};
use crate::graph::iter_bits;
use crate::linalg::rref;
use crate::poly::IntPolynomial;

pub const DEFAULT_HYPERPLANE_BUDGET: usize = 20;
pub const MAX_LATTICE_SIZE: usize = 5000;

/// Central arrangement in `C^n`, one normal vector per hyperplane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    pub dim: usize,
    pub normals: Vec<Vec<GaussRational>>,
    /// Every normal has real entries.
    pub real: bool,
}

impl Arrangement {
    pub fn new(dim: usize, normals: Vec<Vec<GaussRational>>) -> Result<Self> {
        for v in &normals {
            if v.len() != dim {
                return Err(invalid(format!("normal of length {} in dimension {dim}", v.len())));
            }
            if v.iter().all(Zero::is_zero) {
                return Err(invalid("zero normal vector"));
            }
        }
        let real = normals.iter().flatten().all(GaussRational::is_real);
        Ok(Self { dim, normals, real })
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    /// Hyperplanes as equations such as `x1 = 2 x3` or `x2 = 0`.
    pub fn equations(&self) -> Vec<String> {
        self.normals.iter().map(|v| equation(v)).collect()
    }
}

fn equation(v: &[GaussRational]) -> String {
    let nz: Vec<(usize, &GaussRational)> =
        v.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    match nz[..] {
        [(i, _)] => format!("x{} = 0", i + 1),
        [(i, a), (j, b)] if a.is_one() => {
            let g = -b.clone();
            if g.is_one() {
                format!("x{} = x{}", i + 1, j + 1)
            } else {
                format!("x{} = ({g}) x{}", i + 1, j + 1)
            }
        }
        _ => {
            let terms: Vec<String> =
                nz.iter().map(|(i, c)| format!("({c}) x{}", i + 1)).collect();
            format!("{} = 0", terms.join(" + "))
        }
    }
}

/// Hyperplane `x_i = z x_j` for each edge `ij^z`, and `x_k = 0` for each edge `0k`.
pub fn build_arrangement(g: &LabeledMultigraph) -> Arrangement {
    let n = g.n();
    let normals = g
        .edges()
        .iter()
        .map(|e| {
            let mut v = vec![GaussRational::zero(); n];
            match &e.label {
                None => v[e.hi as usize - 1] = GaussRational::one(),
                Some(z) => {
                    v[e.lo as usize - 1] = GaussRational::one();
                    v[e.hi as usize - 1] = -z.clone();
                }
            }
            v
        })
        .collect();
    Arrangement::new(n, normals).expect("edge normals are nonzero")
}

/// One flat of the arrangement: the span of the normals vanishing on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeElement {
    /// Reduced row echelon basis of the normal span.
    pub basis: Vec<Vec<GaussRational>>,
    /// Codimension, the number of rows in `basis`.
    pub rank: usize,
    /// Atoms below this element, as a bitmask over atom indices.
    pub atoms: u64,
    pub mobius: BigInt,
}

/// Intersection lattice ordered by reverse inclusion of subspaces (that is,
/// inclusion of normal spans). Element 0 is the bottom, the ambient space.
#[derive(Clone, Debug)]
pub struct IntersectionLattice {
    elements: Vec<LatticeElement>,
    /// `atom_element[a]` is the element index of atom `a`.
    atom_element: Vec<usize>,
    /// `hyperplane_atom[h]` is the atom of hyperplane `h`.
    hyperplane_atom: Vec<usize>,
    /// `join_atom[x][a]` is the element index of `x` joined with atom `a`.
    join_atom: Vec<Vec<usize>>,
    by_atoms: HashMap<u64, usize>,
    top: usize,
}

impl IntersectionLattice {
    /// Closes the atoms under joins. Fails past `hyperplane_budget`
    /// hyperplanes or [`MAX_LATTICE_SIZE`] elements.
    pub fn new(arr: &Arrangement, hyperplane_budget: usize) -> Result<Self> {
        check_budget("hyperplane count", arr.len(), hyperplane_budget.min(63))?;
        let mut index: HashMap<Vec<Vec<GaussRational>>, usize> = HashMap::new();
        let mut bases: Vec<Vec<Vec<GaussRational>>> = vec![Vec::new()];
        index.insert(Vec::new(), 0);

        let mut atom_element = Vec::new();
        let mut hyperplane_atom = Vec::with_capacity(arr.len());
        for v in &arr.normals {
            let b = rref(vec![v.clone()]);
            let next = bases.len();
            let e = *index.entry(b.clone()).or_insert_with(|| {
                bases.push(b);
                next
            });
            match atom_element.iter().position(|&x| x == e) {
                Some(a) => hyperplane_atom.push(a),
                None => {
                    hyperplane_atom.push(atom_element.len());
                    atom_element.push(e);
                }
            }
        }

        let atom_rows: Vec<Vec<GaussRational>> =
            atom_element.iter().map(|&e| bases[e][0].clone()).collect();
        // every element enters the queue exactly once
        let mut join_atom: Vec<Vec<usize>> = Vec::new();
        let mut queue: VecDeque<usize> = (0..bases.len()).collect();
        while let Some(x) = queue.pop_front() {
            let mut row = Vec::with_capacity(atom_rows.len());
            for a in &atom_rows {
                let mut rows = bases[x].clone();
                rows.push(a.clone());
                let b = rref(rows);
                let j = match index.get(&b) {
                    Some(&j) => j,
                    None => {
                        let j = bases.len();
                        if j >= MAX_LATTICE_SIZE {
                            return Err(Error::BudgetExceeded {
                                what: "lattice size",
                                limit: MAX_LATTICE_SIZE,
                                actual: j + 1,
                            });
                        }
                        index.insert(b.clone(), j);
                        bases.push(b);
                        queue.push_back(j);
                        j
                    }
                };
                row.push(j);
            }
            if join_atom.len() <= x {
                join_atom.resize(x + 1, Vec::new());
            }
            join_atom[x] = row;
        }

        let atoms_of: Vec<u64> = (0..bases.len())
            .map(|x| {
                join_atom[x]
                    .iter()
                    .enumerate()
                    .filter(|&(_, &j)| j == x)
                    .fold(0u64, |m, (a, _)| m | 1 << a)
            })
            .collect();
        let by_atoms: HashMap<u64, usize> =
            atoms_of.iter().enumerate().map(|(x, &m)| (m, x)).collect();
        let top = by_atoms[&((1u64 << atom_rows.len()) - 1)];

        let mut elements: Vec<LatticeElement> = bases
            .into_iter()
            .zip(&atoms_of)
            .map(|(basis, &atoms)| LatticeElement {
                rank: basis.len(),
                basis,
                atoms,
                mobius: BigInt::zero(),
            })
            .collect();

        let mut order: Vec<usize> = (0..elements.len()).collect();
        order.sort_by_key(|&x| elements[x].rank);
        for (pos, &x) in order.iter().enumerate() {
            if x == 0 {
                elements[x].mobius = BigInt::one();
                continue;
            }
            let ax = elements[x].atoms;
            let sum: BigInt = order[..pos]
                .iter()
                .filter(|&&y| {
                    let ay = elements[y].atoms;
                    ay & ax == ay && ay != ax
                })
                .map(|&y| elements[y].mobius.clone())
                .sum();
            elements[x].mobius = -sum;
        }

        Ok(Self {
            elements,
            atom_element,
            hyperplane_atom,
            join_atom,
            by_atoms,
            top,
        })
    }

    pub fn elements(&self) -> &[LatticeElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Rank of the lattice, the rank of its top.
    pub fn rank(&self) -> usize {
        self.elements[self.top].rank
    }

    pub fn atom_count(&self) -> usize {
        self.atom_element.len()
    }

    pub fn atom_element(&self, a: usize) -> usize {
        self.atom_element[a]
    }

    pub fn hyperplane_atom(&self, h: usize) -> usize {
        self.hyperplane_atom[h]
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        let (ax, ay) = (self.elements[x].atoms, self.elements[y].atoms);
        ax & ay == ax
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        iter_bits(self.elements[y].atoms).fold(x, |acc, a| self.join_atom[acc][a])
    }

    /// Join of a set of atoms.
    pub fn join_atoms(&self, atoms: u64) -> usize {
        iter_bits(atoms).fold(0, |acc, a| self.join_atom[acc][a])
    }

    /// Flats meet in the intersection of their atom sets.
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.by_atoms[&(self.elements[x].atoms & self.elements[y].atoms)]
    }

    /// Elements covering `x`.
    pub fn covers(&self, x: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.join_atom[x]
            .iter()
            .copied()
            .filter(|&j| self.elements[j].rank == self.elements[x].rank + 1)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `sum_x mu(0, x) t^(rho(L) - rho(x))`
    pub fn characteristic_polynomial(&self) -> IntPolynomial {
        let r = self.rank();
        let mut coeffs = vec![BigInt::zero(); r + 1];
        for e in &self.elements {
            coeffs[r - e.rank] += &e.mobius;
        }
        IntPolynomial::new(coeffs)
    }

    pub fn mobius_sum(&self) -> BigInt {
        self.elements.iter().map(|e| &e.mobius).sum()
    }

    /// `rho(x) + rho(y) = rho(x v y) + rho(x ^ y)` for every `y`.
    pub fn is_modular(&self, x: usize) -> bool {
        let rx = self.elements[x].rank;
        (0..self.len()).all(|y| {
            rx + self.elements[y].rank
                == self.elements[self.join(x, y)].rank + self.elements[self.meet(x, y)].rank
        })
    }

    /// Searches for a maximal chain of modular elements from bottom to top.
    /// Returns the chain when one exists.
    pub fn modular_chain(&self) -> Option<Vec<usize>> {
        let modular: Vec<bool> = (0..self.len()).map(|x| self.is_modular(x)).collect();
        let mut dead = vec![false; self.len()];
        let mut chain = vec![0];
        self.chain_dfs(0, &modular, &mut dead, &mut chain).then_some(chain)
    }

    fn chain_dfs(&self, x: usize, modular: &[bool], dead: &mut [bool], chain: &mut Vec<usize>) -> bool {
        if x == self.top {
            return true;
        }
        for y in self.covers(x) {
            if !modular[y] || dead[y] {
                continue;
            }
            chain.push(y);
            if self.chain_dfs(y, modular, dead, chain) {
                return true;
            }
            chain.pop();
            dead[y] = true;
        }
        false
    }

    pub fn is_supersolvable(&self) -> bool {
        self.modular_chain().is_some()
    }

    /// Rank of the join of every subset of atoms, indexed by bitmask.
    fn subset_ranks(&self) -> Vec<u8> {
        let m = self.atom_count();
        let mut elem = vec![0usize; 1 << m];
        let mut ranks = vec![0u8; 1 << m];
        for mask in 1usize..1 << m {
            let low = mask.trailing_zeros() as usize;
            elem[mask] = self.join_atom[elem[mask & (mask - 1)]][low];
            ranks[mask] = self.elements[elem[mask]].rank as u8;
        }
        ranks
    }

    /// Circuits (minimal sets with `rho(join) < size`) as atom bitmasks.
    pub fn circuits(&self, budget: usize) -> Result<Vec<u64>> {
        check_budget("atom count", self.atom_count(), budget.min(22))?;
        let ranks = self.subset_ranks();
        let dependent = |mask: usize| (ranks[mask] as u32) < mask.count_ones();
        Ok((1usize..ranks.len())
            .filter(|&mask| {
                dependent(mask) && iter_bits(mask as u64).all(|b| !dependent(mask & !(1 << b)))
            })
            .map(|m| m as u64)
            .collect())
    }

    /// NBC sets under `atom_order` (a permutation of atom indices, earliest
    /// first), tallied by size.
    pub fn nbc(&self, atom_order: &[usize], budget: usize) -> Result<LatticeNbc> {
        let m = self.atom_count();
        let mut sorted = atom_order.to_vec();
        sorted.sort_unstable();
        if sorted != (0..m).collect::<Vec<_>>() {
            return Err(invalid(format!("atom order {atom_order:?} is not a permutation of 0..{m}")));
        }
        let mut position = vec![0usize; m];
        for (p, &a) in atom_order.iter().enumerate() {
            position[a] = p;
        }
        let circuits = self.circuits(budget)?;
        let mut broken = vec![false; 1 << m];
        for &c in &circuits {
            let min = iter_bits(c).min_by_key(|&a| position[a]).expect("circuits are nonempty");
            broken[(c & !(1 << min)) as usize] = true;
        }
        // contains[mask]: some broken circuit lies inside mask
        let mut contains = broken;
        for mask in 1usize..1 << m {
            if !contains[mask] {
                contains[mask] = iter_bits(mask as u64).any(|b| contains[mask & !(1 << b)]);
            }
        }
        let mut counts = vec![0u64; m + 1];
        let mut masks = Vec::new();
        for (mask, &c) in contains.iter().enumerate() {
            if !c {
                counts[mask.count_ones() as usize] += 1;
                masks.push(mask as u64);
            }
        }
        while counts.len() > 1 && counts.last() == Some(&0) {
            counts.pop();
        }
        Ok(LatticeNbc { counts, masks })
    }

    /// Atom blocks `A_i` induced by a multichain `z_0 <= z_1 <= ...`, as bitmasks.
    pub fn chain_blocks(&self, chain: &[usize]) -> Result<Vec<u64>> {
        for w in chain.windows(2) {
            if !self.leq(w[0], w[1]) {
                return Err(invalid("chain elements are not increasing"));
            }
        }
        Ok(chain
            .windows(2)
            .map(|w| self.elements[w[1]].atoms & !self.elements[w[0]].atoms)
            .collect())
    }

    /// Atom sets meeting each block at most once, tallied by size.
    pub fn atomic_transversals(&self, chain: &[usize]) -> Result<Transversals> {
        let blocks = self.chain_blocks(chain)?;
        let m = self.atom_count();
        check_budget("atom count", m, 22)?;
        let mut counts = vec![0u64; m + 1];
        let mut masks = Vec::new();
        for mask in 0u64..1 << m {
            if blocks.iter().all(|&b| (mask & b).count_ones() <= 1) {
                counts[mask.count_ones() as usize] += 1;
                masks.push(mask);
            }
        }
        while counts.len() > 1 && counts.last() == Some(&0) {
            counts.pop();
        }
        Ok(Transversals {
            block_sizes: blocks.iter().map(|b| b.count_ones() as u64).collect(),
            counts,
            masks,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let atoms: Vec<Vec<usize>> = self
            .elements
            .iter()
            .map(|e| iter_bits(e.atoms).collect())
            .collect();
        serde_json::json!({
            "size": self.len(),
            "rank": self.rank(),
            "elements": self.elements.iter().zip(atoms).map(|(e, a)| serde_json::json!({
                "rank": e.rank,
                "atoms": a,
                "mobius": e.mobius.to_string(),
                "basis": e.basis,
            })).collect::<Vec<_>>(),
        })
    }

    /// Number of elements at each rank.
    pub fn rank_sizes(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for e in &self.elements {
            *out.entry(e.rank).or_default() += 1;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeNbc {
    pub counts: Vec<u64>,
    #[serde(skip)]
    pub masks: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transversals {
    pub block_sizes: Vec<u64>,
    pub counts: Vec<u64>,
    #[serde(skip)]
    pub masks: Vec<u64>,
}

/// `sum_m (-1)^m nbc_m t^(rank - m)`
pub fn rota_polynomial(rank: usize, counts: &[u64]) -> IntPolynomial {
    crate::graph::whitney_polynomial(rank, counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{doubled_triangle_default, parallel_pair_default};
    use crate::graph::Graph;

    fn lattice(g: &LabeledMultigraph) -> IntersectionLattice {
        IntersectionLattice::new(&build_arrangement(g), DEFAULT_HYPERPLANE_BUDGET).unwrap()
    }

    #[test]
    fn arrangement_examples() {
        let arr = build_arrangement(&doubled_triangle_default());
        assert_eq!(
            arr.equations(),
            ["x1 = 0", "x1 = (2) x2", "x1 = (3) x2", "x1 = (5) x3", "x3 = 0"]
        );
        assert!(arr.real);
        let empty = LabeledMultigraph::new(3, [], []).unwrap();
        assert!(build_arrangement(&empty).is_empty());
        let graphic = LabeledMultigraph::from_graph(&Graph::complete(3));
        assert_eq!(build_arrangement(&graphic).equations(), ["x1 = x2", "x1 = x3", "x2 = x3"]);
    }

    #[test]
    fn doubled_triangle_lattice() {
        let l = lattice(&doubled_triangle_default());
        assert_eq!(l.len(), 13);
        assert_eq!(l.rank_sizes(), BTreeMap::from([(0, 1), (1, 5), (2, 6), (3, 1)]));
        assert_eq!(l.characteristic_polynomial(), IntPolynomial::from_i64s(&[-4, 8, -5, 1]));
        assert!(l.mobius_sum().is_zero());
        assert!(l.is_supersolvable());
    }

    #[test]
    fn small_lattices() {
        let one = LabeledMultigraph::new(1, [1], []).unwrap();
        let l = lattice(&one);
        assert_eq!(l.len(), 2);
        assert_eq!(l.characteristic_polynomial(), IntPolynomial::from_i64s(&[-1, 1]));
        assert_eq!(l.nbc(&[0], 20).unwrap().counts, vec![1, 1]);

        let l = lattice(&parallel_pair_default());
        assert_eq!(l.len(), 4);
        assert_eq!(l.rank(), 2);
        assert_eq!(l.characteristic_polynomial(), IntPolynomial::from_i64s(&[1, -2, 1]));
        let mobius: Vec<i64> = l
            .elements()
            .iter()
            .map(|e| i64::try_from(&e.mobius).unwrap())
            .collect();
        assert_eq!(mobius, vec![1, -1, -1, 1]);
        assert!(l.is_supersolvable());

        let empty = LabeledMultigraph::new(2, [], []).unwrap();
        let l = lattice(&empty);
        assert_eq!(l.len(), 1);
        assert_eq!(l.characteristic_polynomial(), IntPolynomial::one());
    }

    #[test]
    fn graphic_lattices_and_supersolvability() {
        let c4 = LabeledMultigraph::from_graph(&Graph::cycle(4).unwrap());
        let l = lattice(&c4);
        assert!(!l.is_supersolvable());
        // graphic characteristic polynomial is P(G, t) / t^(n - rank)
        let p = crate::graph::chromatic_polynomial(&Graph::cycle(4).unwrap()).unwrap();
        assert_eq!(l.characteristic_polynomial(), p.div_t_pow(1).unwrap());
        let k4 = LabeledMultigraph::from_graph(&Graph::complete(4));
        assert!(lattice(&k4).is_supersolvable());
    }

    #[test]
    fn nbc_and_transversals() {
        let g = doubled_triangle_default();
        let l = lattice(&g);
        let order: Vec<usize> = (0..l.atom_count()).collect();
        let nbc = l.nbc(&order, 20).unwrap();
        assert_eq!(nbc.counts, vec![1, 5, 8, 4]);
        assert_eq!(rota_polynomial(l.rank(), &nbc.counts), l.characteristic_polynomial());
        // saturated chain: bottom, x1 = 0, x1 = x2 = 0, top
        let a0 = l.atom_element(0);
        let chain = vec![0, a0, l.join(a0, l.atom_element(1)), l.top()];
        let tr = l.atomic_transversals(&chain).unwrap();
        assert_eq!(tr.block_sizes, vec![1, 2, 2]);
        assert_eq!(tr.counts, vec![1, 5, 8, 4]);
    }

    #[test]
    fn meets_and_joins() {
        let l = lattice(&doubled_triangle_default());
        for x in 0..l.len() {
            assert_eq!(l.join(x, 0), x);
            assert_eq!(l.meet(x, l.top()), x);
            for y in 0..l.len() {
                let j = l.join(x, y);
                let m = l.meet(x, y);
                assert!(l.leq(x, j) && l.leq(y, j));
                assert!(l.leq(m, x) && l.leq(m, y));
                assert_eq!(j, l.join(y, x));
            }
        }
    }
}
