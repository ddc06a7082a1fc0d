"""Exception hierarchy shared by every spgkit module."""

from __future__ import annotations

from dataclasses import dataclass


class SpgError(Exception):
    """Base class for all spgkit errors."""


class InvalidParams(SpgError, ValueError):
    """Parameters outside an operation's domain (e.g. n < d)."""


@dataclass(frozen=True)
class Violation:
    """One structural defect found while validating an SPG.

    ``kind`` is one of ``OverlappingClasses``, ``EmptyClass``,
    ``SymbolOutOfRange``, ``BadEdge``, ``Disconnected``, ``WrongArity`` or
    ``DuplicateId``; ``detail`` carries the witness.
    """

    kind: str
    detail: tuple

    def __str__(self) -> str:
        return f"{self.kind}: {_fmt(self.detail)}"


def _fmt(obj) -> str:
    if isinstance(obj, (tuple, list, frozenset, set)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return "(" + ", ".join(_fmt(x) for x in items) + ")"
    return str(obj)


class InvalidSpg(SpgError, ValueError):
    """Raised by ``build_spg`` with the complete list of violations."""

    def __init__(self, violations: list[Violation]):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class ParseError(SpgError, ValueError):
    def __init__(self, lineno: int, message: str):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


class UnknownId(SpgError, KeyError):
    def __str__(self) -> str:
        return f"unknown class id {self.args[0]!r}"


class EmptyRestriction(SpgError):
    pass


class DisconnectedRestriction(SpgError):
    pass


class DimensionUnderflow(SpgError):
    pass


class StuckRecursion(SpgError):
    """A restriction that dimension reduction says is connected was not.

    ``symbols`` is the offending F, which is a dimension-reduction witness.
    """

    def __init__(self, symbols):
        self.symbols = tuple(sorted(symbols))
        super().__init__(f"restriction to F={set(self.symbols) or '{}'} is disconnected")


class ResourceLimit(SpgError):
    pass


class VerificationFailure(SpgError):
    def __init__(self, message: str, d: int | None = None):
        self.d = d
        super().__init__(message)


class ChainStepFailure(SpgError):
    def __init__(self, step: int, lhs: float, rhs: float, variant: str = ""):
        self.step, self.lhs, self.rhs, self.variant = step, lhs, rhs, variant
        super().__init__(f"chain step {step} ({variant}) failed: {lhs!r} vs {rhs!r}")


class NotSimple(SpgError, ValueError):
    pass


class DuplicateVertex(SpgError, ValueError):
    pass
