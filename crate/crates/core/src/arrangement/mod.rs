//! Labeled multigraphs, their hyperplane arrangements and intersection lattices.

mod gauss;
mod lattice;
mod multigraph;
mod verify;

pub use gauss::GaussRational;
pub use lattice::{
    build_arrangement, rota_polynomial, Arrangement, IntersectionLattice, LatticeElement,
    LatticeNbc, Transversals, DEFAULT_HYPERPLANE_BUDGET, MAX_LATTICE_SIZE,
};
pub use multigraph::{
    enumerate_multigraph_isf, is_perfectly_labeled, multigraph_isf_polynomial,
    perfect_labeling_violation, LabeledMultigraph, LabelingViolation, MultiEdge,
};
pub use verify::{
    block_atom_order, intersection_lattice, prefix_multichain, region_count,
    signed_chromatic_count, topology_report, verify_isf_chi, verify_multigraph, verify_signed,
    Topology, MAX_RECURSION_HYPERPLANES, MAX_SIGNED_COLORS,
};
