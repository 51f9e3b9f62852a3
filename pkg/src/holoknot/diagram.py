"""Planar diagram of the 1-jet curve c(t) = (f(t), f'(t)).

The x0-axis cuts the curve into arcs: upper arcs (f increasing) and lower
arcs (f decreasing), alternating around the circle. Double points are located
arc pair by arc pair: on a fixed arc f is strictly monotone, so each branch
is a graph over the x0-interval between its endpoint critical values, and a
crossing is a root of a one-variable difference function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    AxisDoublePoint,
    DegenerateCritical,
    NonTransverseDoublePoint,
)
from .trig import DEFAULT_TOL, TWO_PI, MorseProfile, Tolerances, TrigPolynomial, critical_points, grid_size_for


@dataclass(frozen=True)
class DoublePoint:
    """Self-intersection of the plane curve: c(t1) = c(t2) with t1 < t2."""

    t1: float
    t2: float
    point: tuple[float, float]          # (x0, x1)
    half_plane: int                     # +1 upper, -1 lower
    x2_gap: float                       # f''(t1) - f''(t2)
    transversality: float               # |det(c'(t1), c'(t2))|

    @property
    def half_plane_name(self) -> str:
        return "upper" if self.half_plane > 0 else "lower"


@dataclass(frozen=True)
class Arc:
    """Maximal piece of the diagram between consecutive axis meetings.

    Upper arcs run from a minimum up to a maximum (f' > 0), lower arcs from a
    maximum down to the next minimum. t_end may exceed 2*pi for the wrapping
    arc; values are the endpoint critical values of f.
    """

    family: str                          # "X" (upper) | "Y" (lower)
    index: int                           # 1-based cyclic index within family
    t_start: float
    t_end: float
    v_start: float
    v_end: float

    @property
    def half_plane(self) -> int:
        return 1 if self.family == "X" else -1

    @property
    def span(self) -> tuple[float, float]:
        return (min(self.v_start, self.v_end), max(self.v_start, self.v_end))

    @property
    def key(self) -> tuple[str, int]:
        return (self.family, self.index)

    def contains(self, t: float) -> bool:
        u = t % TWO_PI
        if self.t_start <= u < self.t_end:
            return True
        return self.t_start <= u + TWO_PI < self.t_end


@dataclass(frozen=True)
class Crossing:
    """A double point attached to its arc pair; branch a is the t1 branch."""

    arc_a: tuple[str, int]
    arc_b: tuple[str, int]
    double_point: DoublePoint
    sign: int                            # -1 upper, +1 lower
    over_branch: str                     # "a" | "b": branch with larger f''


@dataclass(frozen=True)
class FramedDiagram:
    m: int
    arcs: tuple[Arc, ...]
    crossings: tuple[Crossing, ...]

    @property
    def upper_count(self) -> int:
        return sum(1 for c in self.crossings if c.double_point.half_plane > 0)

    @property
    def lower_count(self) -> int:
        return sum(1 for c in self.crossings if c.double_point.half_plane < 0)

    def arcs_of(self, family: str) -> tuple[Arc, ...]:
        return tuple(a for a in self.arcs if a.family == family)

    def arc(self, key: tuple[str, int]) -> Arc:
        for a in self.arcs:
            if a.key == key:
                return a
        raise KeyError(key)

    def crossings_between(self, key_a: tuple[str, int], key_b: tuple[str, int]) -> list[Crossing]:
        pair = {key_a, key_b}
        return [c for c in self.crossings if {c.arc_a, c.arc_b} == pair]

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "arcs": [
                {
                    "family": a.family,
                    "index": a.index,
                    "half_plane": a.half_plane,
                    "t_start": a.t_start,
                    "t_end": a.t_end,
                    "v_start": a.v_start,
                    "v_end": a.v_end,
                }
                for a in self.arcs
            ],
            "crossings": [
                {
                    "arc_a": list(c.arc_a),
                    "arc_b": list(c.arc_b),
                    "t1": c.double_point.t1,
                    "t2": c.double_point.t2,
                    "x0": c.double_point.point[0],
                    "x1": c.double_point.point[1],
                    "sign": c.sign,
                    "over_branch": c.over_branch,
                    "x2_gap": c.double_point.x2_gap,
                }
                for c in self.crossings
            ],
        }


def _arcs_from_profile(profile: MorseProfile) -> list[Arc]:
    """Arcs between consecutive critical points, starting at the first minimum."""
    pts = list(profile.points)
    start = next(i for i, p in enumerate(pts) if p.kind == "min")
    ordered = pts[start:] + pts[:start]
    arcs = []
    n = len(ordered)
    for i in range(n):
        p = ordered[i]
        q = ordered[(i + 1) % n]
        t_end = q.t if q.t > p.t else q.t + TWO_PI
        family = "X" if p.kind == "min" else "Y"
        index = i // 2 + 1
        arcs.append(Arc(family, index, p.t, t_end, p.value, q.value))
    return arcs


class _ArcInverter:
    """Fast monotone inversion of f on one arc.

    Dense cosine-clustered samples give an interpolated first guess; a short
    vectorized Newton polish brings it to root tolerance. Clustering matters:
    f' vanishes at the arc endpoints, so uniform samples lose accuracy there.
    """

    def __init__(self, f: TrigPolynomial, arc: Arc, n: int = 768):
        self.f = f
        self.arc = arc
        u = np.linspace(0.0, 1.0, n)
        self.ts = arc.t_start + (arc.t_end - arc.t_start) * 0.5 * (
            1.0 - np.cos(math.pi * u)
        )
        self.vals = f.jets(self.ts, 0)[0]
        self.increasing = arc.v_end > arc.v_start

    def __call__(self, targets: np.ndarray) -> np.ndarray:
        if self.increasing:
            t = np.interp(targets, self.vals, self.ts)
        else:
            t = np.interp(-np.asarray(targets), -self.vals, self.ts)
        span = self.arc.t_end - self.arc.t_start
        for _ in range(3):
            v, d1 = self.f.jets(t, 1)
            safe = np.abs(d1) > 1e-14
            step = np.where(safe, (v - targets) / np.where(safe, d1, 1.0), 0.0)
            step = np.clip(step, -0.05 * span, 0.05 * span)
            t = np.clip(t - step, self.arc.t_start, self.arc.t_end)
        return t


def _polish_pair(f: TrigPolynomial, t1: float, t2: float, tol: Tolerances):
    """Newton iteration on (f(t1)-f(t2), f'(t1)-f'(t2)) with analytic jets."""
    for _ in range(30):
        v1, d1, dd1 = f.jets(t1, 2)
        v2, d2, dd2 = f.jets(t2, 2)
        r0, r1 = v1 - v2, d1 - d2
        if abs(r0) < tol.root and abs(r1) < tol.root:
            break
        det = d1 * (-dd2) - (-d2) * dd1
        if abs(det) < 1e-300:
            break
        dt1 = (-dd2 * r0 + d2 * r1) / det
        dt2 = (-dd1 * r0 + d1 * r1) / det
        step = max(abs(dt1), abs(dt2))
        if step > 0.5:
            dt1, dt2 = dt1 / (2 * step), dt2 / (2 * step)
        t1, t2 = t1 - dt1, t2 - dt2
    return t1, t2


def find_double_points(
    f: TrigPolynomial,
    grid_size: int | None = None,
    tol: Tolerances = DEFAULT_TOL,
    profile: MorseProfile | None = None,
) -> list[DoublePoint]:
    """Complete list of transverse double points of c(t) = (f(t), f'(t)).

    Raises AxisDoublePoint / NonTransverseDoublePoint when a double point
    violates the genericity clearances.
    """
    if profile is None:
        profile = critical_points(f, grid_size, tol)
    arcs = _arcs_from_profile(profile)
    n_window = max(128, grid_size_for(f, grid_size) // 24)
    inverters = {a.key: _ArcInverter(f, a) for a in arcs}
    found: list[tuple[float, float]] = []

    for i, a in enumerate(arcs):
        for b in arcs[i + 1 :]:
            if a.family != b.family:
                continue
            lo = max(a.span[0], b.span[0])
            hi = min(a.span[1], b.span[1])
            if hi <= lo:
                continue
            # preimage of the value overlap on arc a; samples concentrate
            # there so arbitrarily thin overlaps are still resolved
            t_edges = inverters[a.key](np.array([lo, hi]))
            t_lo, t_hi = float(min(t_edges)), float(max(t_edges))
            if t_hi - t_lo < 1e-13:
                continue
            # Chebyshev clustering: crossings can hug the window edges just
            # before a tangency event, where uniform spacing misses them
            u = np.linspace(0.0, 1.0, n_window + 2)[1:-1]
            ts_in = t_lo + (t_hi - t_lo) * 0.5 * (1.0 - np.cos(math.pi * u))
            vals_in, d1_in = f.jets(ts_in, 1)
            t_b = inverters[b.key](vals_in)
            diff = d1_in - f.jets(t_b, 1)[1]
            flips = np.nonzero(np.diff(np.sign(diff)) != 0)[0]
            for idx in flips:
                t1g = 0.5 * (ts_in[idx] + ts_in[idx + 1])
                t2g = 0.5 * (t_b[idx] + t_b[idx + 1])
                t1, t2 = _polish_pair(f, t1g, t2g, tol)
                if a.contains(t1) and b.contains(t2):
                    found.append((t1 % TWO_PI, t2 % TWO_PI))

    deduped: list[tuple[float, float]] = []
    for t1, t2 in found:
        if t1 > t2:
            t1, t2 = t2, t1
        if min(t2 - t1, TWO_PI - (t2 - t1)) < tol.cluster:
            continue
        if any(
            abs(t1 - u1) < tol.cluster and abs(t2 - u2) < tol.cluster
            for u1, u2 in deduped
        ):
            continue
        deduped.append((t1, t2))

    points = []
    for t1, t2 in sorted(deduped):
        v1, d1, dd1 = f.jets(t1, 2)
        v2, d2, dd2 = f.jets(t2, 2)
        x0, x1 = 0.5 * (v1 + v2), 0.5 * (d1 + d2)
        gap = dd1 - dd2
        trans = abs(d1 * dd2 - d2 * dd1)
        if abs(x1) < tol.axis_clearance:
            raise AxisDoublePoint(
                f"double point at x1={x1:.3e} inside the axis clearance"
            )
        if trans < tol.transversality:
            raise NonTransverseDoublePoint(
                f"double point ({t1:.6f}, {t2:.6f}) has transversality {trans:.3e}"
            )
        points.append(
            DoublePoint(
                float(t1),
                float(t2),
                (float(x0), float(x1)),
                1 if x1 > 0 else -1,
                float(gap),
                float(trans),
            )
        )
    return points


@dataclass(frozen=True)
class EmbeddingReport:
    ok: bool
    violations: tuple[tuple[float, float, float], ...]  # (t1, t2, |x2_gap|)


def embedding_check(
    f: TrigPolynomial,
    points: list[DoublePoint],
    tol: float = DEFAULT_TOL.x2_gap,
) -> EmbeddingReport:
    """The 2-jet curve embeds iff every plane double point separates in x2."""
    bad = tuple(
        (p.t1, p.t2, abs(p.x2_gap)) for p in points if abs(p.x2_gap) <= tol
    )
    return EmbeddingReport(ok=not bad, violations=bad)


def build_diagram(
    f: TrigPolynomial,
    grid_size: int | None = None,
    tol: Tolerances = DEFAULT_TOL,
) -> FramedDiagram:
    """Assemble the full combinatorial diagram of a generic function."""
    profile = critical_points(f, grid_size, tol)
    arcs = _arcs_from_profile(profile)
    points = find_double_points(f, grid_size, tol, profile=profile)
    emb = embedding_check(f, points, tol.x2_gap)
    if not emb.ok:
        raise NonTransverseDoublePoint(
            f"{len(emb.violations)} double point(s) with vanishing x2 gap; "
            "space curve is not embedded"
        )

    crossings = []
    for p in points:
        arc_a = next(a for a in arcs if a.contains(p.t1))
        arc_b = next(a for a in arcs if a.contains(p.t2))
        if arc_a.family != arc_b.family:
            raise DegenerateCritical(
                "double point joins opposite half-plane arcs; genericity lost"
            )
        sign = -1 if p.half_plane > 0 else 1
        # Geometric sign from the ordered branch tangents must agree with the
        # half-plane rule; both branches share x1, so det = x1 * (dd2 - dd1).
        dd1 = f.jets(p.t1, 2)[2]
        dd2 = f.jets(p.t2, 2)[2]
        over = "a" if dd1 > dd2 else "b"
        d_over, d_under = (dd1, dd2) if over == "a" else (dd2, dd1)
        geo = p.point[1] * (d_under - d_over)
        if (geo > 0) != (sign > 0):
            raise NonTransverseDoublePoint(
                "crossing sign from tangents disagrees with half-plane rule"
            )
        crossings.append(
            Crossing(arc_a.key, arc_b.key, p, sign, over)
        )
    return FramedDiagram(profile.minima_count, tuple(arcs), tuple(crossings))


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    issues: tuple[str, ...]


def validate_diagram(
    d: FramedDiagram,
    f: TrigPolynomial | None = None,
    samples: int = 64,
) -> ValidationReport:
    """Consistency harness: sign law, monotone arcs, pair exclusion, parity law."""
    issues: list[str] = []

    for c in d.crossings:
        expected = -1 if c.double_point.half_plane > 0 else 1
        if c.sign != expected:
            issues.append(f"crossing at {c.double_point.point} violates the sign law")
        if c.arc_a[0] != c.arc_b[0]:
            issues.append(f"crossing joins mixed families {c.arc_a}/{c.arc_b}")

    if f is not None:
        for a in d.arcs:
            ts = np.linspace(a.t_start, a.t_end, samples + 2)[1:-1]
            d1 = f.jets(ts, 1)[1]
            if a.family == "X" and not np.all(d1 > 0):
                issues.append(f"upper arc {a.key} is not increasing")
            if a.family == "Y" and not np.all(d1 < 0):
                issues.append(f"lower arc {a.key} is not decreasing")

    for fam in ("X", "Y"):
        group = d.arcs_of(fam)
        for i, a in enumerate(group):
            for b in group[i + 1 :]:
                count = len(d.crossings_between(a.key, b.key))
                lo_a, hi_a = a.span
                inside = sum(1 for v in (b.v_start, b.v_end) if lo_a < v < hi_a)
                if (count % 2 == 1) != (inside == 1):
                    issues.append(
                        f"parity violation for {a.key}/{b.key}: "
                        f"{count} crossings, {inside} endpoint(s) inside"
                    )

    return ValidationReport(ok=not issues, issues=tuple(issues))
