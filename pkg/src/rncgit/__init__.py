"""Exact tools for point configurations on rational normal curves and their
degenerations: GIT stability over the hypersimplex, limit configurations from
stable trees, Gale duality, and conformal-blocks intersection degrees on
boundary curves of the moduli space of pointed rational curves.

All arithmetic is exact rational; nothing here touches floating point.
"""

from .scalars import INF, Infinity, Param, format_param, format_rational, parse_param, parse_rational
from .exactlin import Mat, det, kernel_basis, mat_inverse, rank, rref, solve_affine
from .configs import (
    Configuration,
    DegeneratePosition,
    IndeterminateEquivalence,
    ProjPoint,
    RncParam,
    fit_rnc,
    on_rnc,
    proj_equivalent,
    veronese_config,
    veronese_point,
)
from .fcurves import (
    CertificateKind,
    ContractionCertificate,
    FPartition,
    Residues,
    cont2_predicate,
    dk_symmetry_check,
    enumerate_sym_fcurves,
    fakhruddin_degree,
    residue_vector,
)
from .gitstab import (
    DimensionMismatch,
    Linearization,
    OutOfHypersimplex,
    Stability,
    StabilityVerdict,
    Witness,
    cont_predicate,
    hassett_contracted,
    make_linearization,
    semistability,
    symcont_predicate,
    symmetric_linearization,
    walls,
)
from .trees import (
    NonGenericConstraints,
    PiecewiseMap,
    PoleAtMark,
    SectionSpaceDimension,
    StableTree,
    SubspaceConstraint,
    TreePoint,
    aux_independence_check,
    default_aux,
    degree_compositions,
    degree_map_solve,
    limit_config,
    semistable_partitions,
)
from .gale import (
    DegenerateDual,
    GoppaWeights,
    RankDeficient,
    dual_linearization,
    gale_involution_check,
    gale_transform,
    goppa_weights,
    goppa_witness,
    self_association_matrix,
)
from .nefcone import (
    AgssFamily,
    DivisibilityViolated,
    TheoremReport,
    agss_family,
    contracted_set,
    intersection_matrix,
    rho,
    sym_curve_vector,
    verify_theorem_cb,
)

__version__ = "0.1.0"
