"""Typed errors surfaced by the engine.

Anything that could silently produce a wrong answer over Q instead raises
one of these.
"""


class ReplalgError(Exception):
    """Base class for all package errors."""


class CyclicQuiver(ReplalgError):
    """The quiver has an oriented cycle; path algebras here must be finite."""


class DuplicateLabel(ReplalgError):
    """A vertex or arrow name is declared twice."""


class ParseError(ReplalgError):
    """Malformed quiver file; carries line/column when known."""

    def __init__(self, message: str, line: int = -1, column: int = -1):
        super().__init__(message)
        self.line = line
        self.column = column


class CopyOutOfRange(ReplalgError):
    """Embedding copy index outside 0..m."""


class NonSplitSimple(ReplalgError):
    """Some e_i (A/rad) e_i has dimension > 1 over Q; covers/simples would lie."""


class NotBasic(ReplalgError):
    """Two summands of the module are isomorphic; End would not be basic."""


class NotProjInjective(ReplalgError):
    """A module passed as projective-injective is not."""


class UndecidableDecomposition(ReplalgError):
    """An End residue looks like a division algebra over Q; we refuse to guess."""


class AmbientTooSmall(ReplalgError):
    """A cosyzygy ladder touched the top copy of the ambient truncation."""
