"""Front censuses of the two Legendrian knots carried by a framed diagram.

Each diagram yields a plus- and a minus-variant front: axis meetings become
cusps, and the crossings of one chosen half-plane receive zig-zag insertions
(two extra cusps each). Only the censuses matter downstream; fronts are
combinatorial symbol sequences, never embedded.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import FramedDiagram
from .errors import BoundViolated, CensusMismatch, ParityError
from .trig import TWO_PI


@dataclass(frozen=True)
class FrontCounts:
    down_cusps: int
    up_cusps: int
    left_cusps: int
    equal_crossings: int      # tangent x-components of the same sign
    opposite_crossings: int   # tangent x-components of opposite sign
    variant: str              # "plus" | "minus"

    def __post_init__(self):
        if (self.down_cusps + self.up_cusps) % 2 != 0:
            raise ParityError("total cusp count must be even on a closed front")
        if self.left_cusps * 2 != self.down_cusps + self.up_cusps:
            raise ParityError("left cusps must be half of all cusps")

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (
            self.down_cusps,
            self.up_cusps,
            self.left_cusps,
            self.equal_crossings,
            self.opposite_crossings,
        )

    def to_dict(self) -> dict:
        return {
            "Dcu": self.down_cusps,
            "Ucu": self.up_cusps,
            "Lcu": self.left_cusps,
            "Ecr": self.equal_crossings,
            "Ocr": self.opposite_crossings,
            "variant": self.variant,
        }


def front_census(d: FramedDiagram, variant: str) -> FrontCounts:
    """Closed-form census from (W, H+, H-) alone."""
    if variant not in ("plus", "minus"):
        raise ValueError("variant must be 'plus' or 'minus'")
    w = -d.m
    h_plus, h_minus = d.upper_count, d.lower_count
    zig = h_minus if variant == "plus" else h_plus
    kept = h_plus if variant == "plus" else h_minus
    return FrontCounts(
        down_cusps=-w + 2 * zig,
        up_cusps=-w,
        left_cusps=-w + zig,
        equal_crossings=kept,
        opposite_crossings=zig,
        variant=variant,
    )


@dataclass(frozen=True)
class CuspSymbol:
    vertical: str     # "down" | "up"
    horizontal: str   # "left" | "right"


@dataclass(frozen=True)
class CrossingEndSymbol:
    crossing_id: int
    x_class: str      # "equal" | "opposite"


@dataclass(frozen=True)
class CombinatorialFront:
    """Cyclic symbol sequence read along the knot."""

    symbols: tuple[object, ...]
    variant: str

    def census(self) -> FrontCounts:
        return _census_of_symbols(self)


def build_front(d: FramedDiagram, variant: str) -> CombinatorialFront:
    """Construct the symbol sequence by traversing the knot once.

    Axis meetings become one cusp each (minima: up-left, maxima: down-right);
    each crossing in the zig-zag half-plane gets a cusp pair (down-left,
    down-right) straddling its first-visited branch. The census of the built
    front must match the closed form exactly.
    """
    if variant not in ("plus", "minus"):
        raise ValueError("variant must be 'plus' or 'minus'")
    zig_half_plane = -1 if variant == "plus" else 1

    events: list[tuple[float, object]] = []
    for a in d.arcs:
        t = a.t_start % TWO_PI
        kind = "min" if a.family == "X" else "max"
        cusp = (
            CuspSymbol("up", "left") if kind == "min" else CuspSymbol("down", "right")
        )
        events.append((t, cusp))
    for idx, c in enumerate(d.crossings):
        zigzag = c.double_point.half_plane == zig_half_plane
        x_class = "opposite" if zigzag else "equal"
        for visit, t in enumerate((c.double_point.t1, c.double_point.t2)):
            if zigzag and visit == 0:
                events.append((t - 1e-12, CuspSymbol("down", "left")))
                events.append((t, CrossingEndSymbol(idx, x_class)))
                events.append((t + 1e-12, CuspSymbol("down", "right")))
            else:
                events.append((t, CrossingEndSymbol(idx, x_class)))

    events.sort(key=lambda e: e[0])
    front = CombinatorialFront(tuple(s for _, s in events), variant)

    counts = _census_of_symbols(front)
    expected = front_census(d, variant)
    if counts.as_tuple() != expected.as_tuple():
        raise CensusMismatch(
            f"built front census {counts.as_tuple()} != closed form {expected.as_tuple()}"
        )
    ids = [s.crossing_id for s in front.symbols if isinstance(s, CrossingEndSymbol)]
    if sorted(ids) != sorted(list(range(len(d.crossings))) * 2):
        raise CensusMismatch("each crossing must be visited exactly twice")
    return front


def _census_of_symbols(front: CombinatorialFront) -> FrontCounts:
    cusps = [s for s in front.symbols if isinstance(s, CuspSymbol)]
    ends = [s for s in front.symbols if isinstance(s, CrossingEndSymbol)]
    per_crossing: dict[int, str] = {}
    for s in ends:
        per_crossing[s.crossing_id] = s.x_class
    return FrontCounts(
        down_cusps=sum(1 for s in cusps if s.vertical == "down"),
        up_cusps=sum(1 for s in cusps if s.vertical == "up"),
        left_cusps=sum(1 for s in cusps if s.horizontal == "left"),
        equal_crossings=sum(1 for v in per_crossing.values() if v == "equal"),
        opposite_crossings=sum(1 for v in per_crossing.values() if v == "opposite"),
        variant=front.variant,
    )


def front_invariants(c: FrontCounts) -> tuple[int, int]:
    """(rotation, self-linking) of the companion diagram, from the front census."""
    if (c.down_cusps - c.up_cusps) % 2 != 0:
        raise ParityError("down/up cusp difference must be even")
    w_xy = (c.down_cusps - c.up_cusps) // 2
    s_xy = c.equal_crossings - c.opposite_crossings - c.left_cusps
    return w_xy, s_xy


# ---- bound checks ----------------------------------------------------------


@dataclass(frozen=True)
class BoundCheck:
    name: str
    lhs: int
    rhs: int

    @property
    def slack(self) -> int:
        return self.rhs - self.lhs

    @property
    def ok(self) -> bool:
        return self.lhs <= self.rhs

    def to_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs, "slack": self.slack}


@dataclass(frozen=True)
class BoundReport:
    checks: tuple[BoundCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "checks": [c.to_dict() for c in self.checks]}


def genus_bound_check(d: FramedDiagram, genus: int) -> BoundReport:
    """W +- S <= 2g - 1, plus both front-side instances of the same bound."""
    w = -d.m
    s = d.lower_count - d.upper_count
    rhs = 2 * genus - 1
    checks = [
        BoundCheck("W - S <= 2g - 1", w - s, rhs),
        BoundCheck("W + S <= 2g - 1", w + s, rhs),
        BoundCheck("W + |S| <= 2g - 1", w + abs(s), rhs),
    ]
    for variant in ("plus", "minus"):
        counts = front_census(d, variant)
        w_xy, s_xy = front_invariants(counts)
        checks.append(
            BoundCheck(f"front[{variant}]: S_xy + |W_xy| <= 2g - 1", s_xy + abs(w_xy), rhs)
        )
    report = BoundReport(tuple(checks))
    if not report.ok:
        bad = [c.name for c in report.checks if not c.ok]
        raise BoundViolated(f"genus bound failed: {bad}")
    return report


def braid_bound_check(d: FramedDiagram, braid_index: int) -> BoundReport:
    """W <= -braid index."""
    w = -d.m
    check = BoundCheck("W <= -braid(K)", w, -braid_index)
    report = BoundReport((check,))
    if not check.ok:
        raise BoundViolated(f"braid bound failed: W = {w} > {-braid_index}")
    return report
