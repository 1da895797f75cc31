"""
Exception hierarchy for mvnlab.

Every error raised by the library derives from MvnLabError and from the builtin
it is closest to, so callers can catch either the domain class or the generic one.
"""

from __future__ import annotations


class MvnLabError(Exception):
    """Base class for all mvnlab errors."""


class NotHermitian(MvnLabError, ValueError):
    """A matrix expected to be Hermitian is not, within tolerance."""


class NotUnitary(MvnLabError, ValueError):
    """A matrix expected to be unitary is not, within tolerance."""


class SpectralObstruction(MvnLabError, ValueError):
    """A spectral condition needed by an operation fails (e.g. 1 in the spectrum of a Cayley input)."""


class BadWeights(MvnLabError, ValueError):
    """Trace weights are non-positive or do not carry total mass 1."""


class AlgebraMismatch(MvnLabError, ValueError):
    """Operands live over different block algebras."""


class TailConflict(MvnLabError, ValueError):
    """An operation needs finite block lists but an infinite tail is present."""


class DimensionMismatch(MvnLabError, ValueError):
    """Block matrix dimensions disagree with the algebra shape."""


class BadMorphism(MvnLabError, ValueError):
    """A morphism descriptor is not a unital *-homomorphism on bounded generators."""


class PreconditionFailed(MvnLabError, ValueError):
    """A documented precondition of an operation does not hold."""


class Unbounded(MvnLabError, ArithmeticError):
    """An operation requires a bounded operator."""


class DivergentTail(MvnLabError, ArithmeticError):
    """A tail series does not converge."""


class GrammarOverflow(MvnLabError, ArithmeticError):
    """A tail combination leaves the scalar formula grammar."""


class ParseError(MvnLabError, ValueError):
    """Malformed operator file or formula text."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        location = ""
        if line is not None:
            location = f"line {line}"
            if column is not None:
                location += f", column {column}"
            location += ": "
        super().__init__(f"{location}{message}")


# Errors the runner reports as bad input (exit code 2) rather than failed properties.
INPUT_ERRORS: tuple[type[BaseException], ...] = (
    ParseError,
    DimensionMismatch,
    BadWeights,
    TailConflict,
    FileNotFoundError,
)

__all__ = [
    "MvnLabError",
    "NotHermitian",
    "NotUnitary",
    "SpectralObstruction",
    "BadWeights",
    "AlgebraMismatch",
    "TailConflict",
    "DimensionMismatch",
    "BadMorphism",
    "PreconditionFailed",
    "Unbounded",
    "DivergentTail",
    "GrammarOverflow",
    "ParseError",
    "INPUT_ERRORS",
]
