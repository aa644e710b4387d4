"""Exact hyperspace distances between finite point sets.

The distance of interest is the minimum total edge length over graphs
whose connected components each touch both input sets.  The package
computes it exactly on the real line and on finite metric spaces
(optionally through extra candidate vertices), bounds it from below by
the Hausdorff distance and separation arguments, bounds it from above
by spanning forests, certifies zero length for Cantor-type compact
subsets of the line, and brackets distances between such compact sets.
"""

from .core import (
    EuclideanPoints,
    FiniteMatrix,
    GraphCertificate,
    MetricSpace,
    PointSet,
    RealLine,
    WeightedGraph,
    complete_graph,
    connected_components,
    total_length,
    validate_certificate,
)
from .errors import (
    CapExceeded,
    CertificateUnavailable,
    ComponentMissesSet,
    DegenerateLadder,
    EmptySet,
    GeneratorFailure,
    HyperspanError,
    InputError,
    InvalidGraph,
    InvalidSpace,
    NoContractionInfo,
    NotATree,
    NotSeparated,
    SpaceMismatch,
    TooLarge,
    VertexNotCovered,
)
from .fractal import (
    AffineMap,
    CauchyStep,
    CompactBracket,
    IntervalSystem,
    Refusal,
    ZeroLengthCertificate,
    cauchy_demo,
    certify_zero_length,
    d1_compact_approx,
    fat_cantor,
    finite_set_system,
    middle_thirds_cantor,
    sample_error_bound,
)
from .hausdorff import hausdorff_distance
from .line import LabeledPoint, d1_line, d1_line_brute_force, d1_line_quadratic, merge_labeled
from .steiner import (
    SteinerInstance,
    d1_brute_force,
    d1_exact,
    mst_upper_bound,
    separation_lower_bound,
)
from .trees import (
    CoveringNumber,
    DoublingWalk,
    box_dimension_estimate,
    covering_number,
    doubling_walk,
)

__version__ = "0.1.0"

__all__ = [
    "AffineMap",
    "CapExceeded",
    "CauchyStep",
    "CertificateUnavailable",
    "CompactBracket",
    "ComponentMissesSet",
    "CoveringNumber",
    "DegenerateLadder",
    "DoublingWalk",
    "EmptySet",
    "EuclideanPoints",
    "FiniteMatrix",
    "GeneratorFailure",
    "GraphCertificate",
    "HyperspanError",
    "InputError",
    "IntervalSystem",
    "InvalidGraph",
    "InvalidSpace",
    "LabeledPoint",
    "MetricSpace",
    "NoContractionInfo",
    "NotATree",
    "NotSeparated",
    "PointSet",
    "RealLine",
    "Refusal",
    "SpaceMismatch",
    "SteinerInstance",
    "TooLarge",
    "VertexNotCovered",
    "WeightedGraph",
    "ZeroLengthCertificate",
    "box_dimension_estimate",
    "cauchy_demo",
    "certify_zero_length",
    "complete_graph",
    "connected_components",
    "covering_number",
    "d1_brute_force",
    "d1_compact_approx",
    "d1_exact",
    "d1_line",
    "d1_line_brute_force",
    "d1_line_quadratic",
    "doubling_walk",
    "fat_cantor",
    "finite_set_system",
    "hausdorff_distance",
    "merge_labeled",
    "middle_thirds_cantor",
    "mst_upper_bound",
    "sample_error_bound",
    "separation_lower_bound",
    "total_length",
    "validate_certificate",
]
