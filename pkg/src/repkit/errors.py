"""Exception types shared across the package."""

from __future__ import annotations


class RepkitError(Exception):
    """Base class for every error raised by this library."""


class AxiomViolation(RepkitError):
    """A table failed structural validation.

    ``axiom`` identifies the broken law: the integers 1, 2, 3 for the three
    action axioms (per-element linearity/bijectivity, compatibility with the
    group product, unit acts as identity), or a dotted name such as
    ``"group.associativity"`` for carrier-level problems.  ``witness`` holds
    the first offending elements, in the order they appear in the law.
    """

    def __init__(self, axiom, witness=(), message=""):
        self.axiom = axiom
        self.witness = tuple(witness)
        super().__init__(message or f"axiom {axiom} violated at witness {self.witness}")


class GuardExceeded(RepkitError):
    """An enumeration or hom-space would exceed the configured size guard."""


class NotASubgroup(RepkitError):
    pass


class NotACongruence(RepkitError):
    pass


class NotAFilter(RepkitError):
    pass


class NotActionType(RepkitError):
    """The operation only accepts formulas without group equalities or
    existential group quantifiers."""


class SupportNotCovered(RepkitError):
    """The supplied index set does not contain the formula's y-support."""


class DimensionMismatch(RepkitError):
    """A variable index or subset falls outside the ambient hom-space."""


class ModulusMismatch(RepkitError):
    """Coefficients were reduced against a different ring than the target's."""


class UnboundVariable(RepkitError):
    def __init__(self, kind: str, index: int):
        self.kind = kind
        self.index = index
        super().__init__(f"no value assigned to {kind}{index}")


class ParseError(RepkitError):
    """Rejected input text.  ``position`` is a 0-based character offset into
    the parsed string; ``expected`` describes what would have been legal."""

    def __init__(self, position: int, expected: str):
        self.position = position
        self.expected = expected
        super().__init__(f"parse error at position {position}: expected {expected}")
