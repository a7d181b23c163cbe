"""Exception types shared across the package."""


class ParalloError(Exception):
    """Base class for all package errors."""


class ParseError(ParalloError):
    """Malformed input document (JSON structure, rational strings, ...)."""


class GeometryError(ParalloError):
    """Input violates a geometric precondition (unbounded, degenerate, ...)."""


class UnsupportedDimensionError(ParalloError):
    """Operation only implemented for a specific dimension (usually d = 3)."""


class NotAParallelohedron(ParalloError):
    """Venkov conditions failed; carries the verdict with its witness."""

    def __init__(self, verdict):
        self.verdict = verdict
        super().__init__(str(verdict))


class DualCellAnomaly(ParalloError):
    """A dual 3-cell hull matched none of the five reference types.

    On valid parallelohedron input this should be impossible; seeing it
    means either corrupted input or a counterexample to the expectation
    that dual k-cell hulls are k-dimensional of the known types, so it
    is raised loudly with the full cell data attached.
    """

    def __init__(self, message, centers=None, detail=None):
        self.centers = centers
        self.detail = detail
        super().__init__(message)
