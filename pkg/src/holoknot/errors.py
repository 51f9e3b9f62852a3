"""Exception hierarchy for the holoknot pipeline.

Genericity failures carry diagnostic data so callers (and the CLI) can
distinguish "bad input" from "input too close to a bifurcation".
"""

from __future__ import annotations


class HoloknotError(Exception):
    """Base class for all library errors."""


class GenericityError(HoloknotError):
    """The input function is too close to a degenerate configuration."""


class DegenerateCritical(GenericityError):
    """f' and f'' vanish together (or nearly so) at some parameter."""


class ValueCollision(GenericityError):
    """Two critical values coincide within tolerance."""


class AxisDoublePoint(GenericityError):
    """A double point of the plane curve sits on (or hugs) the x0-axis."""


class NonTransverseDoublePoint(GenericityError):
    """A double point with tangent branches (transversality below tolerance)."""


class ImmersionMarginTooSmall(GenericityError):
    """(f', f'') passes too close to the origin for winding computations."""


class AmbiguousBasePoint(GenericityError):
    """The support point with minimal x1 is not unique within tolerance."""


class MismatchedProfiles(HoloknotError):
    """Two functions have different numbers of local minima."""


class ImmersionLost(HoloknotError):
    """A deformation family left the space of immersed curves."""


class ProjectionError(HoloknotError):
    """Trigonometric projection of a reparameterized function failed to converge."""


class PerturbationFailed(HoloknotError):
    """Could not reach a generic function within the retry budget."""


class UnresolvedEvent(HoloknotError):
    """Two bifurcations occur too close together along a path to separate."""


class InvarianceViolation(HoloknotError):
    """Observed invariant jumps contradict the move classification."""

    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}


class NormalizationFailed(HoloknotError):
    """Braid normalization hit a forbidden event class and ran out of retries."""


class GenerationFailed(HoloknotError):
    """Target invariants not reached within the construction budget."""


class TooManyCrossings(HoloknotError):
    """Crossing code exceeds the state-sum budget."""


class CensusMismatch(HoloknotError):
    """Front built by traversal disagrees with the closed-form census."""


class ParityError(HoloknotError):
    """Cusp counts with odd difference; not a valid closed front."""


class BoundViolated(HoloknotError):
    """A proven inequality failed; indicates an implementation bug."""


class SameArc(HoloknotError):
    """Cyclic distance requested for an arc paired with itself."""
