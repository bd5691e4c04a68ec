"""Exception hierarchy.

Every error carries a short ``category`` string used by the command-line
tool to report failures in a machine-readable way.
"""


class TwoStokesError(Exception):
    category = "error"


class InvalidDimensionError(TwoStokesError, ValueError):
    category = "invalid-dimension"


class NonHermitianError(TwoStokesError, ValueError):
    category = "non-hermitian"


class DensityError(TwoStokesError, ValueError):
    """Raised when a matrix fails density-operator validation.

    The failing :class:`~twostokes.qmat.DensityReport` is kept on ``report``.
    """

    category = "density"

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NormalizationError(TwoStokesError, ValueError):
    category = "normalization"


class RangeError(TwoStokesError, ValueError):
    category = "range"


class PreconditionError(TwoStokesError, ValueError):
    category = "precondition"


class DegenerateStateError(TwoStokesError, ValueError):
    category = "degenerate-state"


class SpecError(TwoStokesError, ValueError):
    category = "spec"


class SingularSchemeError(TwoStokesError, ValueError):
    """The measurement scheme does not determine all 16 parameters.

    ``dependent`` lists the setting indices that add nothing to the rank of
    the settings before them.
    """

    category = "singular-scheme"

    def __init__(self, message, rank=None, dependent=()):
        super().__init__(message)
        self.rank = rank
        self.dependent = tuple(dependent)


class RecordError(TwoStokesError, ValueError):
    category = "records"


class ParseError(TwoStokesError, ValueError):
    category = "parse"
