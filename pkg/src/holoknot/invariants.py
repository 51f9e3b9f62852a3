"""Whitney index, self-linking number, and the split invariants.

The Whitney index is computed three independent ways (tangent winding,
minima count, base-point formula) and the three are cross-checked in tests.
The split invariants refine the self-linking number by the cyclic distance
of the arc pair carrying each crossing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .diagram import Arc, FramedDiagram
from .errors import (
    AmbiguousBasePoint,
    ImmersionMarginTooSmall,
    InvarianceViolation,
    SameArc,
    ValueCollision,
)
from .trig import DEFAULT_TOL, TWO_PI, Tolerances, TrigPolynomial


# ---- Whitney index --------------------------------------------------------


def _winding(points: np.ndarray, refine) -> int:
    """Total turning of a closed polygon of plane points around the origin.

    refine(i) must return extra points between sample i and i+1; it is called
    whenever a single step turns by pi/2 or more.
    """
    angles = np.arctan2(points[:, 1], points[:, 0])
    total = 0.0
    n = len(points)
    for i in range(n):
        a, b = angles[i], angles[(i + 1) % n]
        step = (b - a + math.pi) % TWO_PI - math.pi
        if abs(step) >= math.pi / 2:
            step = _winding_refined(points[i], points[(i + 1) % n], refine(i))
        total += step
    turns = total / TWO_PI
    nearest = round(turns)
    if abs(turns - nearest) > 1e-6:
        raise ImmersionMarginTooSmall(
            f"winding number {turns} did not converge to an integer"
        )
    return int(nearest)


def _winding_refined(p, q, extra) -> float:
    pts = [p, *extra, q]
    total = 0.0
    for u, v in zip(pts, pts[1:]):
        a = math.atan2(u[1], u[0])
        b = math.atan2(v[1], v[0])
        step = (b - a + math.pi) % TWO_PI - math.pi
        if abs(step) >= math.pi / 2:
            raise ImmersionMarginTooSmall("tangent direction jumps across refinement")
        total += step
    return total


def whitney_by_degree(
    f: TrigPolynomial,
    grid_size: int | None = None,
    tol: Tolerances = DEFAULT_TOL,
) -> int:
    """Tangential degree: winding of t -> (f'(t), f''(t)) around the origin."""
    n = max(grid_size or 0, 4096, 64 * max(f.degree, 1))
    ts = np.linspace(0.0, TWO_PI, n, endpoint=False)
    _, d1, d2 = f.jets(ts, 2)
    norms = d1 * d1 + d2 * d2
    if float(np.min(norms)) < tol.immersion:
        raise ImmersionMarginTooSmall(
            f"immersion margin {float(np.min(norms)):.3e} below tolerance"
        )
    pts = np.column_stack([d1, d2])
    h = TWO_PI / n

    def refine(i):
        sub = np.linspace(ts[i], ts[i] + h, 18)[1:-1]
        _, e1, e2 = f.jets(sub, 2)
        if float(np.min(e1 * e1 + e2 * e2)) < tol.immersion:
            raise ImmersionMarginTooSmall("immersion margin lost between samples")
        return np.column_stack([e1, e2])

    return _winding(pts, refine)


def whitney_by_minima(d: FramedDiagram) -> int:
    """Each minimum contributes one negative turn; no other tangent verticals."""
    return -d.m


def whitney_formula(
    d: FramedDiagram,
    f: TrigPolynomial,
    grid_size: int | None = None,
    tol: Tolerances = DEFAULT_TOL,
) -> int:
    """Base-point formula: -(sum of crossing orientation signs) + winding at a
    support point.

    The base point q is the curve point with globally minimal x1; its tangent
    line supports the curve from below. The winding mu is taken around q
    nudged into the half-plane containing the curve, and each crossing sign
    compares the branch tangents in traversal order from q.
    """
    f1 = f.derivative()
    from .trig import _bracket_roots, grid_size_for

    n = grid_size_for(f, grid_size)
    candidates = _bracket_roots(f1.derivative(), n, tol)
    if not candidates:
        raise AmbiguousBasePoint("no tangent-horizontal point found")
    vals = [f1(t) for t in candidates]
    order = sorted(range(len(vals)), key=lambda i: vals[i])
    t_q = candidates[order[0]]
    if len(order) > 1 and vals[order[1]] - vals[order[0]] < 1e-8:
        raise AmbiguousBasePoint(
            f"two support candidates with x1 gap {vals[order[1]] - vals[order[0]]:.3e}"
        )
    q = np.array([f(t_q), f1(t_q)])

    ts = np.linspace(0.0, TWO_PI, n, endpoint=False)
    v0, v1 = f.jets(ts, 1)
    curve = np.column_stack([v0, v1])
    dist = np.linalg.norm(curve - q, axis=1)
    wrap = np.minimum(np.abs(ts - t_q), TWO_PI - np.abs(ts - t_q))
    far = wrap > 0.15
    clearance = float(np.min(dist[far])) if far.any() else 1.0
    q_shift = q + np.array([0.0, min(clearance, 1.0) / 4.0])

    rel = curve - q_shift

    def refine(i):
        sub = np.linspace(ts[i], ts[i] + TWO_PI / n, 18)[1:-1]
        w0, w1 = f.jets(sub, 1)
        return np.column_stack([w0, w1]) - q_shift

    mu = _winding(rel, refine)

    eps_total = 0
    for c in d.crossings:
        s1 = (c.double_point.t1 - t_q) % TWO_PI
        s2 = (c.double_point.t2 - t_q) % TWO_PI
        first, second = (
            (c.double_point.t1, c.double_point.t2) if s1 < s2 else (c.double_point.t2, c.double_point.t1)
        )
        _, a1, a2 = f.jets(first, 2)
        _, b1, b2 = f.jets(second, 2)
        det = a1 * b2 - a2 * b1
        eps_total += 1 if det > 0 else -1
    return -eps_total + mu


def self_linking(d: FramedDiagram) -> int:
    """Lower-minus-upper crossing count; asserted equal to the sign sum."""
    by_count = d.lower_count - d.upper_count
    by_signs = sum(c.sign for c in d.crossings)
    if by_count != by_signs:
        raise InvarianceViolation(
            f"crossing census {by_count} disagrees with sign sum {by_signs}"
        )
    return by_count


# ---- pair combinatorics ---------------------------------------------------


def cyclic_distance(i: int, j: int, m: int) -> int:
    """Cyclic index distance between same-family arcs i and j (1-based)."""
    if i == j:
        raise SameArc(f"distance of arc {i} with itself is undefined")
    if not (1 <= i <= m and 1 <= j <= m):
        raise ValueError("arc indices must lie in 1..m")
    return min((j - i) % m, (i - j) % m)


def delta(a: Arc, b: Arc, tol: float = DEFAULT_TOL.value_gap) -> int:
    """1 when the endpoint-value spans of the two arcs are disjoint, else 0.

    Equivalently: no horizontal line in graph coordinates meets both arcs.
    """
    if a.family != b.family:
        raise ValueError("delta requires arcs in the same half-plane")
    if a.key == b.key:
        raise SameArc("delta of an arc with itself is undefined")
    for x in (a.v_start, a.v_end):
        for y in (b.v_start, b.v_end):
            if abs(x - y) < tol:
                raise ValueCollision(
                    f"endpoint values {x} and {y} coincide within tolerance"
                )
    lo_a, hi_a = a.span
    lo_b, hi_b = b.span
    return 1 if (hi_a < lo_b or hi_b < lo_a) else 0


def pair_count(a: Arc, b: Arc, d: FramedDiagram) -> int:
    """Crossing count between the arcs plus the span-disjointness indicator."""
    return len(d.crossings_between(a.key, b.key)) + delta(a, b)


@dataclass(frozen=True)
class PairData:
    crossing_count: int
    delta: int
    distance: int


@dataclass(frozen=True)
class PairCensus:
    """Per-pair crossing data for all unordered same-family arc pairs."""

    pairs: dict[tuple[str, int, int], PairData]

    def total(self, family: str) -> int:
        return sum(p.crossing_count for (fam, _, _), p in self.pairs.items() if fam == family)


def pair_census(d: FramedDiagram) -> PairCensus:
    pairs: dict[tuple[str, int, int], PairData] = {}
    for fam in ("X", "Y"):
        group = d.arcs_of(fam)
        for i, a in enumerate(group):
            for b in group[i + 1 :]:
                count = len(d.crossings_between(a.key, b.key))
                dlt = delta(a, b)
                if dlt == 1 and count % 2 != 0:
                    raise InvarianceViolation(
                        f"disjoint spans {a.key}/{b.key} carry an odd crossing count"
                    )
                pairs[(fam, a.index, b.index)] = PairData(
                    count, dlt, cyclic_distance(a.index, b.index, d.m)
                )
    return PairCensus(pairs)


# ---- split invariants ------------------------------------------------------


@dataclass(frozen=True)
class SplitInvariants:
    """The full invariant vector of a framed holonomic knot diagram.

    components[k-1] collects, over unordered same-family arc pairs at cyclic
    distance k, the lower-pair counts minus the upper-pair counts; they sum
    to the self-linking number.
    """

    m: int
    whitney: int
    self_linking: int
    upper_count: int
    lower_count: int
    components: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "W": self.whitney,
            "S": self.self_linking,
            "H_plus": self.upper_count,
            "H_minus": self.lower_count,
            "S_k": list(self.components),
        }


def split_invariants(d: FramedDiagram) -> SplitInvariants:
    """Compute (W, S, S_1..S_n) from the diagram, n = floor(m/2)."""
    s = self_linking(d)
    census = pair_census(d)
    n = d.m // 2
    comps = [0] * n
    for (fam, _, _), data in census.pairs.items():
        contrib = data.crossing_count + data.delta
        if fam == "Y":
            comps[data.distance - 1] += contrib
        else:
            comps[data.distance - 1] -= contrib

    inv = SplitInvariants(
        m=d.m,
        whitney=-d.m,
        self_linking=s,
        upper_count=d.upper_count,
        lower_count=d.lower_count,
        components=tuple(comps),
    )
    if inv.whitney >= 0:
        raise InvarianceViolation(f"Whitney index {inv.whitney} must be negative")
    if sum(comps) != s:
        raise InvarianceViolation(
            f"split components {comps} sum to {sum(comps)} != S = {s}",
            witness={"census": {str(k): v.__dict__ for k, v in census.pairs.items()}},
        )
    if (inv.whitney + s) % 2 == 0:
        raise InvarianceViolation(f"W + S = {inv.whitney + s} must be odd")
    return inv
