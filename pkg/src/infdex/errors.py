"""Exception hierarchy.

Two families: :class:`InputError` for malformed input (CLI exit 2) and
:class:`PreconditionError` for violated mathematical preconditions
(CLI exit 3).  Each precondition error carries the name of the
precondition it reports.
"""


class InputError(ValueError):
    """Malformed input: bad JSON, wrong shapes, non-rational entries."""


class PreconditionError(ValueError):
    precondition = "precondition"

    def __init__(self, message: str = ""):
        super().__init__(f"{self.precondition}: {message}" if message else self.precondition)


class ZeroWeightError(PreconditionError):
    precondition = "nonzero weights"


class NotPointedError(PreconditionError):
    precondition = "unbounded support (weights do not span a pointed cone)"


class OnWallError(PreconditionError):
    precondition = "on-wall evaluation undefined"


class EmptyInteriorError(PreconditionError):
    precondition = "chamber has empty interior"


class InterpolationError(PreconditionError):
    precondition = "singular interpolation samples"


class DivergentError(PreconditionError):
    precondition = "Laplace integral divergent"


class NotCompactAlongFibersError(PreconditionError):
    precondition = "not compactly supported along fibers"


class ClosedClassError(PreconditionError):
    precondition = "convolution not in closed class"


class SmoothnessError(PreconditionError):
    precondition = "insufficient smoothness for derivative convolution"


class NotSurjectiveError(PreconditionError):
    precondition = "projection not surjective"


class UnsupportedError(PreconditionError):
    precondition = "unsupported operand"
