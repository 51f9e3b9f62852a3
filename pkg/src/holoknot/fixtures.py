"""Shipped reference functions with known invariants."""

from __future__ import annotations

import json
from importlib import resources

from .trig import TrigPolynomial


def _load(name: str) -> TrigPolynomial:
    with resources.files("holoknot.data").joinpath(name).open() as fh:
        return TrigPolynomial.from_dict(json.load(fh))


def braided_unknot() -> TrigPolynomial:
    """Closed-braid unknot with W = -4, S = -1, split components (-2, 1):
    three upper crossings between distance-1 arc pairs, lower crossings at
    distances 1 and 2."""
    return _load("braided_unknot.json")


def trefoil_witness() -> TrigPolynomial:
    """Two-strand braid with W = -2, S = 3; trefoil class."""
    return _load("trefoil_witness.json")


def figure_eight_witness() -> TrigPolynomial:
    """W = -4, S = 1 representative of the figure-eight class."""
    return _load("figure_eight_witness.json")


def cinquefoil_witness() -> TrigPolynomial:
    """Two-strand braid with W = -2, S = 5; (2,5) torus knot class."""
    return _load("cinquefoil_witness.json")
