"""Exception hierarchy shared by all lieorbits modules."""


class LieOrbitsError(Exception):
    """Base class for all errors raised by this package."""


class InvalidTypeError(LieOrbitsError):
    """Requested (series, rank) is not a valid simple type."""


class MembershipError(LieOrbitsError):
    """A root does not belong to the system it was used with."""


class DegeneratePairError(LieOrbitsError):
    """Strong orthogonality queried for a pair (a, ±a)."""


class NotPositiveError(LieOrbitsError):
    """An admissible-system candidate contains a non-positive root."""


class OracleTooLargeError(LieOrbitsError):
    """Exhaustive sigma oracle requested on a system that is too big."""


class NotSimpleError(LieOrbitsError):
    """Operation requires a simple root."""


class NoRealRootsError(LieOrbitsError):
    """A real root was required but none exist."""


class InternalInconsistencyError(LieOrbitsError):
    """Two supposedly equivalent tests disagreed; indicates a bug."""


class AdmissibilityError(LieOrbitsError):
    """Root set is not an admissible (pairwise strongly orthogonal) system."""


class NotNilpotentError(LieOrbitsError):
    """Adjoint action of the given element is not nilpotent."""


class ChamberError(LieOrbitsError):
    """Darboux radicand is not positive; X is not in the positive chamber."""


class NotRegularError(LieOrbitsError):
    """Element is not regular (stabilizer bigger than a Cartan subalgebra)."""


class StabilizerError(LieOrbitsError):
    """Stabilizer of the element does not match the declared CSA."""


class RegularitySearchError(LieOrbitsError):
    """Deterministic perturbation schedule failed to find a regular element."""


class PositivityError(LieOrbitsError):
    """Given root set is not a valid choice of positive roots."""


class InvalidFamilyError(LieOrbitsError):
    """Unknown real-form family or excluded/invalid parameters."""


class InvolutionError(LieOrbitsError):
    """Cartan involution checks failed (wrong matrix realization)."""


class MaximalityError(LieOrbitsError):
    """Candidate abelian subspace of p is not maximal."""


class SpectralToleranceError(LieOrbitsError):
    """Numeric eigen-clustering was ambiguous at the working tolerance."""


class RealRootExtractionError(LieOrbitsError):
    """No real vector could be extracted from a root space."""
