"""
Exception hierarchy for the hypergeometric / modular toolkit.

Every error raised on purpose by the numerical models derives from
DomainError, which the command layer turns into exit code 3.
"""


class HMLError(Exception):
    """Base class for all library errors."""


class DomainError(HMLError):
    """An input lies outside the region where an operation is defined."""


class GammaPoleError(DomainError):
    """Gamma evaluated at a non-positive integer."""


class ParameterError(DomainError):
    """Hypergeometric parameters violate the hypotheses of an operation."""


class HypothesisError(DomainError):
    """A convergence hypothesis such as Re(c-a-b) > 0 fails."""


class BranchCutError(DomainError):
    """Principal branch requested on the cut [1, inf)."""


class SeriesConvergenceError(DomainError):
    """Power series did not converge within max_terms."""


class QuadratureError(DomainError):
    """Adaptive quadrature failed to reach its tolerance."""


class MoebiusPoleError(DomainError, ZeroDivisionError):
    """g21*tau + g22 vanished."""


class DefectiveMatrixError(DomainError):
    """Repeated eigenvalue with a one-dimensional eigenspace."""


class DeterminantError(DomainError):
    """Group work requested for a matrix whose determinant is not 1."""


class ConjugatorError(DomainError):
    """No conjugator makes the local monodromy integral."""


class LowImaginaryPartError(DomainError):
    """Direct theta summation requested too close to the real axis."""


class UnsupportedElementError(DomainError):
    """No transformation law is known for this element/characteristic."""


class ReductionError(DomainError):
    """Fundamental-domain reduction did not terminate."""


class AliasingError(DomainError):
    """Fourier extraction failed its decay sanity check."""


class IdentityDomainError(DomainError):
    """Sample point outside the domain of the identity being checked."""


class CuspError(DomainError):
    """Schwarz map evaluated too close to the cusp z = 0."""


class AtPole(DomainError):
    """
    Pole marker for nu and 1/j.

    Raised instead of returning inf/nan so that callers (the identity
    engine in particular) can skip the point.
    """

    def __init__(self, what, tau):
        super().__init__(f"{what} has a pole at tau={tau}")
        self.what = what
        self.tau = tau
