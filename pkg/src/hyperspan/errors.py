"""Exception types shared across the package."""


class HyperspanError(Exception):
    """Base class for all errors raised by this package."""

    code = "error"


class InvalidSpace(HyperspanError):
    """Construction data does not define a valid metric space."""

    code = "invalid_space"


class InvalidGraph(HyperspanError):
    """Graph data violates structural invariants (bad edges, unknown vertices)."""

    code = "invalid_graph"


class SpaceMismatch(HyperspanError):
    """Operands live in different ambient spaces."""

    code = "space_mismatch"


class EmptySet(HyperspanError):
    """A point set must contain at least one point."""

    code = "empty_set"


class VertexNotCovered(HyperspanError):
    """A required point of A or B is not a vertex of the candidate graph."""

    code = "vertex_not_covered"


class ComponentMissesSet(HyperspanError):
    """Some connected component fails to touch both input sets."""

    code = "component_misses_set"

    def __init__(self, message, component=(), missing_side=""):
        super().__init__(message)
        self.component = tuple(component)
        self.missing_side = missing_side


class CapExceeded(HyperspanError):
    """Instance exceeds the configured exact-solver size caps."""

    code = "cap_exceeded"


class TooLarge(HyperspanError):
    """Instance exceeds the hard cap of a brute-force oracle."""

    code = "too_large"


class NotSeparated(HyperspanError):
    """Separation lower bound requires pairwise distances >= 2*epsilon."""

    code = "not_separated"


class NotATree(HyperspanError):
    """Doubling walks are defined on trees only."""

    code = "not_a_tree"


class DegenerateLadder(HyperspanError):
    """Dimension estimation needs >= 3 strictly decreasing positive scales."""

    code = "degenerate_ladder"


class GeneratorFailure(HyperspanError):
    """An interval system could not produce or validate a requested level."""

    code = "generator_failure"


class NoContractionInfo(HyperspanError):
    """The tail of the level-measure series cannot be bounded."""

    code = "no_contraction_info"


class CertificateUnavailable(HyperspanError):
    """An operation requires a sampling-error bound that cannot be produced."""

    code = "certificate_unavailable"


class InputError(HyperspanError):
    """Malformed JSON input on the command line."""

    code = "input_error"
