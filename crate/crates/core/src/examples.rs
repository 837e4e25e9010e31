//! Small named instances used by the tests, the CLI and the acceptance suite.

use crate::arrangement::{GaussRational, LabeledMultigraph};
use crate::graph::Graph;
use crate::simplicial::PureComplex;

/// Triangle 124 with vertex 3 hanging off 2: edges 12, 23, 14, 24. The
/// natural order is a perfect elimination ordering.
pub fn paw() -> Graph {
    Graph::new(4, [(1, 2), (2, 3), (1, 4), (2, 4)]).expect("valid graph")
}

/// The same shape with the pendant vertex hanging off 4: edges 12, 14, 24,
/// 34. The natural order is not a perfect elimination ordering.
pub fn paw_relabeled() -> Graph {
    Graph::new(4, [(1, 2), (1, 4), (2, 4), (3, 4)]).expect("valid graph")
}

/// Square 1-3-4-5 with a roof vertex 2 over the edge 13.
pub fn house() -> Graph {
    Graph::new(5, [(1, 2), (1, 3), (1, 5), (2, 3), (3, 4), (4, 5)]).expect("valid graph")
}

/// `K_{m,2}` with partite sets `{1, m+2}` and `{2..m+1}`.
pub fn complete_bipartite_m2(m: u32) -> Graph {
    let left = [1, m + 2];
    let right: Vec<u32> = (2..=m + 1).collect();
    Graph::complete_bipartite(&left, &right).expect("valid partition")
}

/// Three triangles 123, 124, 134 around vertex 1.
pub fn triangle_fan() -> PureComplex {
    PureComplex::new(4, 2, [[1, 2, 3], [1, 2, 4], [1, 3, 4]]).expect("valid complex")
}

/// Triangular bipyramid with apexes 1 and 3 over the triangle 2, 4, 5.
pub fn bipyramid() -> PureComplex {
    PureComplex::new(
        5,
        2,
        [[1, 2, 4], [1, 2, 5], [1, 4, 5], [2, 3, 4], [2, 3, 5], [3, 4, 5]],
    )
    .expect("valid complex")
}

/// Swaps the names of vertices 2 and 3 of [`bipyramid`].
pub const BIPYRAMID_SWAP: [u32; 5] = [1, 3, 2, 4, 5];

/// Renames the bipyramid so that 135 and 145 are facets but 134 is not.
pub const BIPYRAMID_NON_PEO: [u32; 5] = [5, 3, 2, 4, 1];

/// Two triangles sharing only vertex 3.
pub fn bowtie() -> PureComplex {
    PureComplex::new(5, 2, [[1, 2, 3], [3, 4, 5]]).expect("valid complex")
}

/// All four triangles of the tetrahedron on 1..4.
pub fn hollow_tetrahedron() -> PureComplex {
    PureComplex::new(4, 2, [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]).expect("valid complex")
}

/// Multigraph on {0,1,2,3} with edges 01, 12^a, 12^b, 03, 13^c.
pub fn doubled_triangle(a: GaussRational, b: GaussRational, c: GaussRational) -> LabeledMultigraph {
    LabeledMultigraph::new(3, [1, 3], [(1, 2, a), (1, 2, b), (1, 3, c)]).expect("valid multigraph")
}

/// [`doubled_triangle`] with the labels 2, 3, 5.
pub fn doubled_triangle_default() -> LabeledMultigraph {
    doubled_triangle(2.into(), 3.into(), 5.into())
}

/// Two parallel edges 12^a, 12^b and nothing else.
pub fn parallel_pair(a: GaussRational, b: GaussRational) -> LabeledMultigraph {
    LabeledMultigraph::new(2, [], [(1, 2, a), (1, 2, b)]).expect("valid multigraph")
}

pub fn parallel_pair_default() -> LabeledMultigraph {
    parallel_pair(2.into(), 3.into())
}
