"""
Exception hierarchy shared by every zyclone module.

Library code raises these; the engine turns them into exit codes and
one-line diagnostics.
"""


class ZycloneError(Exception):
    """Base class for all zyclone errors."""


class HypergraphError(ZycloneError, ValueError):
    """Invalid arguments to a hypergraph operation or generator."""


class OutOfRangeVertex(HypergraphError):
    pass


class WrongEdgeSize(HypergraphError):
    pass


class UniformityTooSmall(HypergraphError):
    pass


class WrongSetSize(HypergraphError):
    pass


class LengthTooSmall(HypergraphError):
    pass


class NotPrime(HypergraphError):
    pass


class DivisibilityViolated(HypergraphError):
    pass


class PrimeTooSmall(HypergraphError):
    pass


class ZeroResidue(HypergraphError):
    pass


class UniformityMismatch(HypergraphError):
    pass


class InstanceTooLarge(HypergraphError):
    pass


class FormatError(HypergraphError):
    """Malformed .khg / json / edge-list input."""


class BudgetExhausted(ZycloneError):
    """A search hit its node or time limit before finishing."""

    def __init__(self, nodes: int, elapsed: float = 0.0):
        super().__init__(f"budget exhausted after {nodes} nodes ({elapsed:.2f}s)")
        self.nodes = nodes
        self.elapsed = elapsed


class ChainStuck(ZycloneError):
    """Greedy back-chain could not pick block number `step` (1-based)."""

    def __init__(self, step: int):
        super().__init__(f"no admissible block at step {step}")
        self.step = step
