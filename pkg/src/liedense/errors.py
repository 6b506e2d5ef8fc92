"""Exception hierarchy shared by all liedense modules."""


class LieDenseError(Exception):
    """Base class for every error raised by this package."""


class InvalidType(LieDenseError, ValueError):
    pass


class ZeroVector(LieDenseError, ValueError):
    pass


class NotInSpan(LieDenseError, ValueError):
    pass


class NonIntegral(LieDenseError, ValueError):
    pass


class NonDominant(LieDenseError, ValueError):
    pass


class IndexOutOfRange(LieDenseError, IndexError):
    pass


class WitnessNotFound(LieDenseError):
    """A witness search over a root system came up empty (a counterexample)."""


class NotARoot(LieDenseError, ValueError):
    pass


class AlgebraMismatch(LieDenseError, ValueError):
    pass


class NonDiagonalizable(LieDenseError, ValueError):
    pass


class DimensionOverflow(LieDenseError):
    pass


class DimensionMismatch(LieDenseError):
    pass


class NotFoundWithinBound(LieDenseError):
    pass


class NotARepresentation(LieDenseError, ValueError):
    """Loaded matrices violate rho([x, y]) = [rho(x), rho(y)]."""


class IdentityFailure(LieDenseError):
    pass


class HypothesisNotMet(LieDenseError, ValueError):
    pass


class NotAShear(LieDenseError, ValueError):
    pass


class NonFinite(LieDenseError, ArithmeticError):
    pass


class NotSymplectic(LieDenseError, ValueError):
    pass
