"""Exception hierarchy shared by every clawdom module."""

from __future__ import annotations


class ClawdomError(Exception):
    """Base class for all errors raised by this package."""


class EndpointOutOfRange(ClawdomError, ValueError):
    pass


class SelfLoop(ClawdomError, ValueError):
    pass


class InstanceTooLarge(ClawdomError):
    pass


class BudgetNegative(ClawdomError, ValueError):
    pass


class _ClawError(ClawdomError):
    """An error that carries an induced star ``(center, leaves)``."""

    def __init__(self, center: int, leaves, message: str | None = None):
        self.center = center
        self.leaves = tuple(sorted(leaves))
        text = message or f"induced star at center {center} with leaves {list(self.leaves)}"
        super().__init__(text)


class NotClawFree(_ClawError):
    pass


class NotTClawFree(_ClawError):
    pass


class ClawWitness(_ClawError):
    """Raised by pack decomposition when a vertex sees three vertices of I."""


class NotMaximal(ClawdomError):
    def __init__(self, vertex: int):
        self.vertex = vertex
        super().__init__(f"vertex {vertex} has no neighbour in the independent set")


class StructureViolation(ClawdomError):
    """A structural property that holds on claw-free graphs failed.

    ``witness`` is an induced claw ``(center, leaves)`` when one could be found.
    """

    def __init__(self, message: str, witness: tuple[int, tuple[int, ...]] | None = None):
        self.witness = witness
        super().__init__(message)


class InternalContradiction(ClawdomError):
    """An invariant that the algorithm guarantees was violated (a bug)."""


class DegreeTooHigh(ClawdomError):
    def __init__(self, variable):
        self.variable = variable
        super().__init__(f"variable {variable!r} is bound to more than two other variables")


class LiftFailed(ClawdomError):
    pass


class ParseError(ClawdomError, ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class GenerationFailed(ClawdomError):
    pass


class NoEdges(ClawdomError, ValueError):
    pass


class HasTriangle(ClawdomError, ValueError):
    def __init__(self, triangle: tuple[int, int, int]):
        self.triangle = triangle
        super().__init__(f"graph has triangle {triangle}")
