"""
Exception hierarchy for the Lambert solver core
"""


class LambertError(Exception):
    """Base class for every error raised by the solver core"""


class InputError(LambertError):
    """The request lies outside the domain of the operation"""


class NumericalFailure(LambertError):
    """A numerical method failed to meet its contract"""


# Input / domain errors

class CoincidentPoints(InputError):
    """A and B coincide, or an endpoint sits at the center"""


class Degenerate(InputError):
    """The symmetric equivalent is undefined (x_B = 0)"""


class DomainError(InputError):
    """A parameter lies outside the domain of a map or time function"""


class TooCloseToEscape(InputError):
    """Initial velocity within the escape margin of v_E"""


class NonElliptic(InputError):
    """A period was requested for a non-negative energy"""


class DegenerateDirect(InputError):
    """Direct arcs do not exist when O lies on the open segment AB"""


class RectilinearState(InputError):
    """Zero angular momentum: the eccentricity vector form is undefined"""


class RectilinearDegenerate(InputError):
    """A and B on one ray from O: the universal parameter is undefined"""


class NonpositiveLatus(InputError):
    """The requested conic has a non-positive semi-latus rectum"""


class UsageError(InputError):
    """Malformed command line or batch entry"""


# Numerical failures

class QuadratureFailure(NumericalFailure):
    """Adaptive quadrature did not reach the requested accuracy"""


class NoConvergence(NumericalFailure):
    """An iteration hit its cap before converging"""


class SamplingInconclusive(NumericalFailure):
    """A sampled time curve is tangent to the target at resolution limit"""


class InconsistentSolution(NumericalFailure):
    """No sign choice of the reconstructed state reaches B"""


class CollisionWithinInterval(NumericalFailure):
    """A rectilinear state reaches the center inside the propagation interval"""
