"""Exception types shared across the toolkit."""
from __future__ import annotations


class QpigeonError(Exception):
    """Base class for all toolkit errors."""


class DivisionByZero(QpigeonError, ZeroDivisionError):
    """Division by an exact zero scalar."""


class DimensionMismatch(QpigeonError):
    """Operands have incompatible dimensions."""


class ZeroVector(QpigeonError):
    """A nonzero vector was required."""


class UndefinedLatticeOp(QpigeonError):
    """Meet/join requested for a noncommuting projector pair.

    The subspace lattice used here is a partial algebra: meet and join
    exist only for commuting projectors.
    """

    def __init__(self, op: str, left_label: str, right_label: str):
        self.op = op
        self.left_label = left_label or "<unlabeled>"
        self.right_label = right_label or "<unlabeled>"
        super().__init__(
            f"{op} is undefined: projectors {self.left_label!r} and "
            f"{self.right_label!r} do not commute"
        )


class BadPositions(QpigeonError):
    """Invalid particle positions for a tensor-product embedding."""


class ParseError(QpigeonError):
    """Input text does not conform to the grammar.

    Carries the byte offset of the failure and the set of tokens that
    would have been accepted there.
    """

    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        self.offset = offset
        self.expected = tuple(expected)
        detail = f"{message} at offset {offset}"
        if self.expected:
            detail += " (expected " + " or ".join(self.expected) + ")"
        super().__init__(detail)


class TooManyAtoms(QpigeonError):
    """Formula exceeds the exhaustive-enumeration atom cap."""


class MissingAtom(QpigeonError):
    """An assignment does not cover every atom of the formula."""


class NonBivalentValue(QpigeonError):
    """A two-valued evaluation received the intermediate truth value."""


class UnmappedAtom(QpigeonError):
    """A formula atom has no projector in the proposition map."""


class UndefinedConnective(QpigeonError):
    """A formula connective has no defined lattice operation.

    Raised when evaluating a conjunction/disjunction whose operand
    projectors do not commute; carries the offending pair.
    """

    def __init__(self, connective: str, left_label: str, right_label: str):
        self.connective = connective
        self.left_label = left_label or "<unlabeled>"
        self.right_label = right_label or "<unlabeled>"
        super().__init__(
            f"{connective} of {self.left_label!r} and {self.right_label!r} "
            f"is undefined: the projectors do not commute"
        )


class ImplicationUnsupported(QpigeonError):
    """Implication has no projector counterpart in this semantics."""
