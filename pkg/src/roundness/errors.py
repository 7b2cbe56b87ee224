"""Exception hierarchy shared across the package."""


class RoundnessError(Exception):
    """Base class for all errors raised by this package."""


# -- metric space construction ------------------------------------------------

class NotSymmetricError(RoundnessError):
    pass


class NonzeroDiagonalError(RoundnessError):
    pass


class NegativeEntryError(RoundnessError):
    pass


class ZeroDistanceError(RoundnessError):
    """Zero distance between distinct points (pseudometrics are rejected)."""


class TriangleViolationError(RoundnessError):
    def __init__(self, i: int, k: int, j: int, dij: float, dik: float, dkj: float):
        self.triple = (i, k, j)
        super().__init__(
            f"triangle inequality violated: d[{i}][{j}] = {dij} > "
            f"d[{i}][{k}] + d[{k}][{j}] = {dik} + {dkj}"
        )


class NegativeExponentError(RoundnessError):
    pass


class DimensionMismatchError(RoundnessError):
    pass


# -- spectral -----------------------------------------------------------------

class NoConvergenceError(RoundnessError):
    def __init__(self, sweeps: int, residual: float):
        self.sweeps = sweeps
        self.residual = residual
        super().__init__(
            f"eigensolver did not converge within {sweeps} sweeps "
            f"(reconstruction residual {residual:.3e})"
        )


# -- graphs -------------------------------------------------------------------

class DisconnectedError(RoundnessError):
    pass


class UnknownFamilyError(RoundnessError):
    pass


class BadParamsError(RoundnessError):
    pass


# -- roundness computation ----------------------------------------------------

class BracketFailureError(RoundnessError):
    """The negative-type predicate failed at p = 0, which is impossible for a
    valid metric and signals numerical corruption."""


class HypothesisViolatedError(RoundnessError):
    """The input lacks the row-permutation property required by the check."""


class LengthMismatchError(RoundnessError):
    pass


class IndexOutOfRangeError(RoundnessError):
    pass


# -- hamming cube -------------------------------------------------------------

class DimensionTooLargeError(RoundnessError):
    pass


class BadBlockExponentError(RoundnessError):
    pass


class NotATreeError(RoundnessError):
    pass


class SearchSpaceTooLargeError(RoundnessError):
    pass
