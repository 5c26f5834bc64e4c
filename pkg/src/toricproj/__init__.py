"""Classification of toric subvarieties of projective space by lattice point configurations."""

from .configuration import (
    AffineMap,
    EquivalenceVerdict,
    PointConfiguration,
    PreconditionError,
    ReducedConfiguration,
    affinely_equivalent,
    apply,
    brute_force_equivalent,
    difference_lattice,
    dimension,
    is_affinely_generating,
    reduce,
    verify_witness,
)
from .embedding import (
    MonomialEmbedding,
    ProjectivePoint,
    RelationLattice,
    orbit_point,
    projectively_equivalent,
    relation_lattice,
    same_subvariety,
    span_dimension,
    variety_dimension,
)
from .linalg import (
    HermiteDecomposition,
    IntegerMatrix,
    LatticeBasis,
    SmithDecomposition,
    elementary_divisors,
    hnf,
    kernel_basis,
    lattice_equal,
    snf,
)
from .polytope import (
    AmbientLattice,
    HalfspaceRep,
    LatticePolytope,
    halfspaces,
    is_solid,
    is_Z_solid,
    lattice_points,
    relative_points,
)

__version__ = "0.1.0"
