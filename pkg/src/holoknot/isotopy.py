"""Paths in function space and the bifurcations along them.

A path is a chain of coefficient-linear segments. Generic samples carry a
combinatorial signature (minima count, crossing counts per half-plane, and
the rotation-canonical crossing order along arcs); an event is an isolated
parameter where the signature changes, localized by bisection and classified
by what changed:

  * minima count changes          -> kink move (changes the turning number),
  * one crossing appears per side -> axis self-tangency move,
  * a same-side crossing pair     -> space crossing move,
  * only the order along arcs     -> triple point move.

Signs follow the half-plane of the crossings involved, or for tangency moves
the kinds of the two critical points whose values collide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .diagram import FramedDiagram, build_diagram
from .errors import (
    GenericityError,
    HoloknotError,
    InvarianceViolation,
    NormalizationFailed,
    UnresolvedEvent,
)
from .invariants import SplitInvariants, split_invariants
from .trig import (
    DEFAULT_TOL,
    TWO_PI,
    Tolerances,
    TrigPolynomial,
    critical_points,
    plateau_bump,
)

OMEGA_KINDS = (
    "omega0+",
    "omega0-",
    "omega1+",
    "omega1-",
    "omega2+",
    "omega2-",
    "omega3",
)


@dataclass(frozen=True)
class FunctionPath:
    """Piecewise-linear path in coefficient space; s runs over [0, 1]."""

    segments: tuple[tuple[TrigPolynomial, TrigPolynomial], ...]
    step: float = 1.0 / 64.0

    def __post_init__(self):
        for (_, a), (b, _) in zip(self.segments, self.segments[1:]):
            if not a.close_to(b, 1e-9):
                raise ValueError("path segments do not join continuously")

    def at(self, s: float) -> TrigPolynomial:
        if not 0.0 <= s <= 1.0:
            raise ValueError("path parameter must lie in [0, 1]")
        n = len(self.segments)
        idx = min(int(s * n), n - 1)
        local = s * n - idx
        fa, fb = self.segments[idx]
        return fa + (fb - fa).scale(local)

    @property
    def start(self) -> TrigPolynomial:
        return self.segments[0][0]

    @property
    def end(self) -> TrigPolynomial:
        return self.segments[-1][1]


def interpolate(f: TrigPolynomial, g: TrigPolynomial) -> FunctionPath:
    """Single linear segment from f to g (degrees padded to match)."""
    d = max(f.degree, g.degree)
    return FunctionPath(((f.pad_to(d), g.pad_to(d)),))


@dataclass(frozen=True)
class IsotopyEvent:
    s_star: float
    kind: str
    witness: dict

    def to_dict(self) -> dict:
        return {"s": self.s_star, "kind": self.kind, "witness": self.witness}


# ---- signatures -------------------------------------------------------------


@dataclass(frozen=True)
class _Sig:
    m: int
    upper: int
    lower: int
    arc_orders: tuple  # rotation-canonical partner sequences


def _diagram_signature(d: FramedDiagram) -> _Sig:
    m = d.m
    per_arc: dict[tuple[str, int], list[tuple[float, str, int]]] = {
        a.key: [] for a in d.arcs
    }
    for c in d.crossings:
        for key, t in ((c.arc_a, c.double_point.t1), (c.arc_b, c.double_point.t2)):
            other = c.arc_b if key == c.arc_a else c.arc_a
            per_arc.setdefault(key, []).append((t, other[0], other[1]))
    best = None
    for r in range(m):
        rows = []
        for fam in ("X", "Y"):
            for i in range(1, m + 1):
                src = (fam, (i - 1 + r) % m + 1)
                entries = sorted(per_arc.get(src, []))
                rows.append(
                    tuple((fam2, (j - 1 - r) % m + 1) for _, fam2, j in entries)
                )
        rows = tuple(rows)
        if best is None or rows < best:
            best = rows
    return _Sig(m, d.upper_count, d.lower_count, best)


class _PathScanner:
    """Caches diagrams along a path; non-generic samples report None.

    Every event sits inside a (usually very thin) band of parameters where
    some genericity margin is below tolerance; scanning treats that band as
    part of the event.
    """

    def __init__(self, path: FunctionPath, tol: Tolerances, grid_size: int | None = None):
        self.path = path
        self.tol = tol
        self.grid_size = grid_size
        self.cache: dict[float, tuple[FramedDiagram, _Sig] | None] = {}

    def diagram(self, s: float) -> tuple[FramedDiagram, _Sig] | None:
        if s in self.cache:
            return self.cache[s]
        try:
            d = build_diagram(self.path.at(s), grid_size=self.grid_size, tol=self.tol)
            out = (d, _diagram_signature(d))
        except GenericityError:
            out = None
        self.cache[s] = out
        return out

    def sig(self, s: float) -> _Sig | None:
        got = self.diagram(s)
        return None if got is None else got[1]

    def generic_near(self, s: float, direction: float, limit: float) -> float:
        """First generic parameter stepping from s toward limit."""
        span = abs(limit - s)
        for frac in (0.0, 1e-6, 1e-5, 1e-4, 1e-3, 0.01, 0.05, 0.2, 0.5, 1.0):
            sj = s + direction * span * frac
            if self.sig(sj) is not None:
                return sj
        raise UnresolvedEvent(f"no generic sample between s={s} and s={limit}")


def detect_events(
    path: FunctionPath,
    tol: Tolerances = DEFAULT_TOL,
    grid_size: int | None = None,
) -> list[IsotopyEvent]:
    """Locate and classify every signature change along the path."""
    scanner = _PathScanner(path, tol, grid_size)
    n_seg = len(path.segments)
    steps = max(4, int(round(1.0 / path.step)))
    grid = sorted(
        {min((i + k / steps) / n_seg, 1.0) for i in range(n_seg) for k in range(steps + 1)}
    )
    # move non-generic grid nodes to a nearby generic parameter
    nodes = []
    for i, s in enumerate(grid):
        if scanner.sig(s) is not None:
            nodes.append(s)
            continue
        limit = grid[i + 1] if i + 1 < len(grid) else grid[i - 1]
        nodes.append(scanner.generic_near(s, math.copysign(1.0, limit - s), limit))
    nodes = sorted(set(nodes))

    events: list[IsotopyEvent] = []
    for lo, hi in zip(nodes, nodes[1:]):
        events.extend(_locate(scanner, lo, hi, tol, depth=0))
    events.sort(key=lambda e: e.s_star)
    for a, b in zip(events, events[1:]):
        if b.s_star - a.s_star < tol.event_separation:
            raise UnresolvedEvent(
                f"events at s={a.s_star} and s={b.s_star} are closer than "
                f"the separation tolerance"
            )
    return events


def _edge_bisect(scanner, a: float, b: float, sig_a: _Sig, locate_tol: float) -> float:
    """Largest parameter still showing sig_a, scanning toward b."""
    lo, hi = a, b
    while hi - lo > locate_tol:
        mid = 0.5 * (lo + hi)
        if scanner.sig(mid) == sig_a:
            lo = mid
        else:
            hi = mid
    return lo


def _locate(scanner: _PathScanner, lo: float, hi: float, tol, depth: int) -> list[IsotopyEvent]:
    sig_lo = scanner.sig(lo)
    sig_hi = scanner.sig(hi)
    if sig_lo == sig_hi:
        return []
    if depth > 60:
        raise UnresolvedEvent(f"could not isolate event inside ({lo}, {hi})")
    # approach the event band from both sides
    s_left = _edge_bisect(scanner, lo, hi, sig_lo, tol.event_locate)
    s_right = _edge_bisect_reversed(scanner, s_left, hi, sig_hi, tol.event_locate)
    s_star = 0.5 * (s_left + s_right)

    before = scanner.generic_near(s_left, -1.0, lo)
    after = scanner.generic_near(s_right, 1.0, hi)
    event = _classify(scanner, s_star, before, after, tol)
    out = []
    if scanner.sig(lo) != scanner.sig(before):
        out.extend(_locate(scanner, lo, before, tol, depth + 1))
    out.append(event)
    if scanner.sig(after) != scanner.sig(hi):
        out.extend(_locate(scanner, after, hi, tol, depth + 1))
    return out


def _edge_bisect_reversed(scanner, a: float, b: float, sig_b: _Sig, locate_tol: float) -> float:
    """Smallest parameter already showing sig_b, scanning down toward a."""
    lo, hi = a, b
    while hi - lo > locate_tol:
        mid = 0.5 * (lo + hi)
        if scanner.sig(mid) == sig_b:
            hi = mid
        else:
            lo = mid
    return hi


def _classify(scanner: _PathScanner, s_star, s_before, s_after, tol) -> IsotopyEvent:
    got_b = scanner.diagram(s_before)
    got_a = scanner.diagram(s_after)
    if got_b is None or got_a is None:
        raise UnresolvedEvent(f"no generic flanks around s={s_star}")
    db, _ = got_b
    da, _ = got_a
    sb, sa = s_before, s_after
    dm = da.m - db.m
    dup = da.upper_count - db.upper_count
    dlow = da.lower_count - db.lower_count
    witness = {
        "s_before": sb,
        "s_after": sa,
        "m": (db.m, da.m),
        "upper": (db.upper_count, da.upper_count),
        "lower": (db.lower_count, da.lower_count),
    }
    if dm != 0:
        if abs(dm) != 1 or abs(dup) + abs(dlow) != 1:
            raise UnresolvedEvent(f"kink move with impossible deltas at s={s_star}")
        kind = "omega1+" if dup != 0 else "omega1-"
    elif dup == 0 and dlow == 0:
        kind = "omega3"
    elif abs(dup) == 1 and abs(dlow) == 1 and dup == dlow:
        kind = "omega2+" if _tangency_same_kind(scanner, s_star, tol) else "omega2-"
    elif (abs(dup), dlow) == (2, 0):
        kind = "omega0+"
    elif (dup, abs(dlow)) == (0, 2):
        kind = "omega0-"
    else:
        raise UnresolvedEvent(
            f"signature deltas (dm={dm}, dH+={dup}, dH-={dlow}) at s={s_star} "
            "match no single move"
        )
    return IsotopyEvent(s_star, kind, witness)


def _tangency_same_kind(scanner: _PathScanner, s_star: float, tol) -> bool:
    """Kinds of the two critical points whose values collide at the event."""
    for probe in (2e-7, -2e-7, 1e-6, -1e-6):
        s = min(max(s_star + probe, 0.0), 1.0)
        try:
            prof = critical_points(scanner.path.at(s), tol=tol)
        except GenericityError:
            continue
        pts = sorted(prof.points, key=lambda p: p.value)
        gaps = [(b.value - a.value, a, b) for a, b in zip(pts, pts[1:])]
        _, pa, pb = min(gaps, key=lambda g: g[0])
        return pa.kind == pb.kind
    raise UnresolvedEvent(f"cannot probe critical kinds near s={s_star}")


# ---- invariant monitoring ----------------------------------------------------


@dataclass(frozen=True)
class TraceSegment:
    s_range: tuple[float, float]
    invariants: SplitInvariants


@dataclass(frozen=True)
class EventRecord:
    event: IsotopyEvent
    before: SplitInvariants
    after: SplitInvariants


@dataclass(frozen=True)
class InvariantTrace:
    segments: tuple[TraceSegment, ...]
    events: tuple[EventRecord, ...]

    def to_dict(self) -> dict:
        return {
            "segments": [
                {"s_range": list(seg.s_range), "invariants": seg.invariants.to_dict()}
                for seg in self.segments
            ],
            "events": [
                {
                    **rec.event.to_dict(),
                    "before": rec.before.to_dict(),
                    "after": rec.after.to_dict(),
                }
                for rec in self.events
            ],
        }


def _invariants_at(path: FunctionPath, s: float, tol) -> SplitInvariants:
    return split_invariants(build_diagram(path.at(s), tol=tol))


def monitor_invariants(
    path: FunctionPath,
    tol: Tolerances = DEFAULT_TOL,
    events: list[IsotopyEvent] | None = None,
) -> InvariantTrace:
    """Verify constancy between events and the jump laws across them."""
    if events is None:
        events = detect_events(path, tol)
    cuts = [0.0] + [e.s_star for e in events] + [1.0]
    pad = max(8.0 * tol.event_locate, 1e-7)

    segments = []
    seg_invs = []
    for lo, hi in zip(cuts, cuts[1:]):
        a, b = lo + (pad if lo > 0.0 else 0.0), hi - (pad if hi < 1.0 else 0.0)
        samples = [a + (b - a) * q for q in (0.25, 0.5, 0.75)]
        invs = [_invariants_at(path, s, tol) for s in samples]
        for other in invs[1:]:
            if other != invs[0]:
                raise InvarianceViolation(
                    f"invariants drift inside event-free span ({lo}, {hi})",
                    witness={"at": samples, "values": [i.to_dict() for i in invs]},
                )
        segments.append(TraceSegment((lo, hi), invs[0]))
        seg_invs.append(invs[0])

    records = []
    for i, event in enumerate(events):
        before, after = seg_invs[i], seg_invs[i + 1]
        d_w = after.whitney - before.whitney
        d_s = after.self_linking - before.self_linking
        kind = event.kind
        ok = (
            (kind.startswith("omega2") or kind == "omega3")
            and d_w == 0
            and d_s == 0
            and before.components == after.components
        ) or (
            kind.startswith("omega1") and abs(d_w) == 1 and abs(d_s) == 1
        ) or (
            kind.startswith("omega0") and d_w == 0 and abs(d_s) == 2
        )
        if not ok:
            raise InvarianceViolation(
                f"{kind} event at s={event.s_star} produced dW={d_w}, dS={d_s}",
                witness={
                    "event": event.to_dict(),
                    "before": before.to_dict(),
                    "after": after.to_dict(),
                },
            )
        records.append(EventRecord(event, before, after))
    return InvariantTrace(tuple(segments), tuple(records))


# ---- braid normalization -------------------------------------------------------


def _inversions(prof) -> int:
    return sum(
        1 for mx in prof.maxima for mn in prof.minima if mx.value < mn.value
    )


def _inversion_mass(prof) -> float:
    """Total value defect of the braid order; zero exactly when normalized."""
    return sum(
        mn.value - mx.value
        for mx in prof.maxima
        for mn in prof.minima
        if mx.value < mn.value
    )


def _lift_move(current, pt, target, tol, ramp_scale=0.6):
    """Plateau lift of a maximum, its partner minimum, and the next maximum
    beyond the partner.

    Extending the plateau over the following maximum puts the trailing ramp
    on a descending arc, so both ramps add slope of the sign the base arc
    already has: the move cannot create critical points, whatever its size.
    The lift lands the max at `target`; the absorbed points rise by the same
    amount.
    """
    prof = critical_points(current, tol=tol)
    pts_sorted = sorted(prof.points, key=lambda q: q.t)
    n = len(pts_sorted)
    idx = min(
        range(n),
        key=lambda i: min(abs(pts_sorted[i].t - pt.t), TWO_PI - abs(pts_sorted[i].t - pt.t)),
    )
    nb_prev = pts_sorted[idx - 1]
    nb_next = pts_sorted[(idx + 1) % n]
    gap_prev = (pts_sorted[idx].t - nb_prev.t) % TWO_PI
    gap_next = (nb_next.t - pts_sorted[idx].t) % TWO_PI
    t_pt = pts_sorted[idx].t
    if gap_next <= gap_prev:
        t_far = pts_sorted[(idx + 2) % n].t
        t_lo = t_pt
        t_hi = t_lo + (t_far - t_lo) % TWO_PI
        ramp_left = ramp_scale * gap_prev
        ramp_right = ramp_scale * ((pts_sorted[(idx + 3) % n].t - t_far) % TWO_PI)
    else:
        t_far = pts_sorted[(idx - 2) % n].t
        t_hi = t_pt
        t_lo = t_hi - (t_hi - t_far) % TWO_PI
        ramp_left = ramp_scale * ((t_far - pts_sorted[(idx - 3) % n].t) % TWO_PI)
        ramp_right = ramp_scale * gap_next
    ramp = max(0.1, min(ramp_left, ramp_right))
    width = t_hi - t_lo
    if width + 2 * ramp > 0.92 * TWO_PI:
        ramp = max(0.08, 0.5 * (0.92 * TWO_PI - width))
    bump = plateau_bump(t_lo, t_hi, ramp, degree=max(96, current.degree))
    delta = (target - pt.value) / max(bump(t_pt), 1e-9)
    return (current + bump.scale(delta)).trim()


def _swap_candidates(current, prof, rng, tol):
    """Single adjacent-value swap moves toward the braid order, both ways.

    Raising an offending maximum past the next minimum value above it, or
    (mirrored) lowering that minimum past the maximum. Each candidate is one
    small verified segment.
    """
    values = sorted(prof.points, key=lambda q: q.value)
    candidates = []
    for lo_pt, hi_pt in zip(values, values[1:]):
        if lo_pt.kind == "max" and hi_pt.kind == "min":
            gap = hi_pt.value - lo_pt.value
            for k, ramp_scale in enumerate((0.6, 0.45, 0.75, 0.3)):
                eps = min(0.04, (0.25 + 0.17 * k) * gap) + 0.012 * float(
                    rng.uniform(0, 1)
                )
                candidates.append(("raise", lo_pt.t, hi_pt.value + eps, ramp_scale))
                candidates.append(("lower", hi_pt.t, lo_pt.value - eps, ramp_scale))
    return candidates


def _apply_swap(current, kind, t_pt, target, tol, ramp_scale):
    if kind == "raise":
        prof = critical_points(current, tol=tol)
        pt = min(
            prof.maxima,
            key=lambda p: min(abs(p.t - t_pt), TWO_PI - abs(p.t - t_pt)),
        )
        return _lift_move(current, pt, target, tol, ramp_scale)
    mirror = current.scale(-1.0)
    prof = critical_points(mirror, tol=tol)
    pt = min(
        prof.maxima,
        key=lambda p: min(abs(p.t - t_pt), TWO_PI - abs(p.t - t_pt)),
    )
    cand = _lift_move(mirror, pt, -target, tol, ramp_scale)
    return cand.scale(-1.0)


def _segment_clean(a, b, tol):
    """Events of the single segment a -> b; None when unresolvable or dirty."""
    try:
        path = FunctionPath(((a, b),), step=1.0 / 16.0)
        events = detect_events(path, tol, grid_size=2048)
    except (HoloknotError, ValueError):
        return None
    if any(e.kind.startswith(("omega0", "omega1")) for e in events):
        return None
    return events


def braid_normalize(
    f: TrigPolynomial,
    tol: Tolerances = DEFAULT_TOL,
    seed: int = 0,
    max_moves: int = 40,
    model_budget: float = 300.0,
) -> tuple[FunctionPath | None, TrigPolynomial]:
    """Deform f until every maximum value exceeds every minimum value,
    through tangency and triple-point events only.

    Moves are single adjacent-value swaps (plateau lifts of a nub past one
    value, tried in both vertical directions); each segment is certified by
    event detection before being kept. When no swap yields a clean segment,
    a path onto a constructively built braid-shaped model with the same
    invariant vector is tried instead. Returns (path, normalized function);
    the path is None when f is already normalized.
    """
    inv_start = split_invariants(build_diagram(f, tol=tol))
    rng = np.random.default_rng(seed)
    segments: list[tuple[TrigPolynomial, TrigPolynomial]] = []
    current = f

    for _ in range(max_moves):
        prof = critical_points(current, tol=tol)
        if _inversions(prof) == 0:
            break
        mass = _inversion_mass(prof)
        advanced = False
        for kind, t_pt, target, ramp_scale in _swap_candidates(current, prof, rng, tol):
            try:
                cand = _apply_swap(current, kind, t_pt, target, tol, ramp_scale)
                cand_prof = critical_points(cand, tol=tol)
            except GenericityError:
                continue
            if cand_prof.minima_count != inv_start.m:
                continue
            # strict mass decrease: multi-step clearing of clustered values
            # is allowed, cycling is not
            if _inversion_mass(cand_prof) >= mass - 1e-6:
                continue
            if _segment_clean(current, cand, tol) is None:
                continue
            segments.append((current, cand))
            current = cand
            advanced = True
            break
        if not advanced:
            break
    else:
        raise NormalizationFailed(f"not normalized after {max_moves} moves")

    prof = critical_points(current, tol=tol)
    if _inversions(prof) > 0:
        # swap moves stuck; fall back to a model path from f directly
        return _normalize_via_model(f, inv_start, tol, seed, budget_seconds=model_budget)

    if not segments:
        return None, current

    path = FunctionPath(tuple(segments))
    inv_end = split_invariants(build_diagram(current, tol=tol))
    if (
        inv_end.whitney != inv_start.whitney
        or inv_end.self_linking != inv_start.self_linking
        or inv_end.components != inv_start.components
    ):
        raise InvarianceViolation(
            "normalization changed the invariant vector",
            witness={"before": inv_start.to_dict(), "after": inv_end.to_dict()},
        )
    return path, current


def _linearize_homotopy(hpath, per_stage: int = 12) -> FunctionPath:
    """Chord approximation of a homotopy path as coefficient-linear segments."""
    members: list[TrigPolynomial] = []
    for stage in hpath.stages:
        sampled = stage.sample(per_stage + 1)
        members.extend(sampled if not members else sampled[1:])
    degree = max(g.degree for g in members)
    members = [g.pad_to(degree) for g in members]
    return FunctionPath(tuple(zip(members, members[1:])), step=1.0 / 5.0)


def _normalize_via_model(f, inv_start, tol, seed, budget_seconds=300.0):
    """Path from f onto a braid-shaped model with the same invariant vector.

    Straight-line interpolations to several models are tried first; regular
    homotopy (immersed members, so kink moves cannot occur) is the last
    resort. Every candidate path is certified by full event detection.
    """
    import time as _time

    from .builder import build_from_census, plan_for_target
    from .homotopy import regular_homotopy

    deadline = _time.monotonic() + budget_seconds
    plans = [
        p
        for p in plan_for_target(inv_start.m, inv_start.self_linking)
        if p.components() == inv_start.components
    ]
    last: Exception | None = None

    models = []
    for plan in plans[:6]:
        for plan_seed in (seed, seed + 101):
            try:
                models.append(build_from_census(plan, seed=plan_seed).function)
            except (HoloknotError, ValueError) as exc:
                last = exc

    def certify(path):
        events = detect_events(path, tol, grid_size=2048)
        bad = [e for e in events if e.kind.startswith(("omega0", "omega1"))]
        if bad:
            raise NormalizationFailed(f"model path contains {[e.kind for e in bad]}")
        f_star = path.end
        inv_end = split_invariants(build_diagram(f_star, tol=tol))
        if (
            inv_end.whitney,
            inv_end.self_linking,
            inv_end.components,
        ) != (inv_start.whitney, inv_start.self_linking, inv_start.components):
            raise InvarianceViolation("model path changed invariants")
        return path, f_star

    for model in models:
        if _time.monotonic() > deadline:
            break
        try:
            path = interpolate(f, model)
            path = FunctionPath(path.segments, step=1.0 / 24.0)
            return certify(path)
        except (HoloknotError, ValueError) as exc:
            last = exc

    for model in models[:3]:
        if _time.monotonic() > deadline:
            break
        try:
            hpath = regular_homotopy(model, f, tol=tol, proj_tol=3e-5, max_degree=256)
            return certify(_linearize_homotopy(hpath, per_stage=8))
        except (HoloknotError, ValueError) as exc:
            last = exc
    raise NormalizationFailed(f"no clean model path found: {last}")


@dataclass(frozen=True)
class SplitCheckReport:
    invariants: SplitInvariants
    normalized_invariants: SplitInvariants
    moves: int
    all_spans_overlap: bool

    def to_dict(self) -> dict:
        return {
            "invariants": self.invariants.to_dict(),
            "normalized_invariants": self.normalized_invariants.to_dict(),
            "moves": self.moves,
            "all_spans_overlap": self.all_spans_overlap,
        }


def check_split_via_braid(
    f: TrigPolynomial,
    tol: Tolerances = DEFAULT_TOL,
    seed: int = 0,
) -> SplitCheckReport:
    """Normalize, then confirm the split identity directly on the braid form."""
    from .invariants import pair_census

    inv0 = split_invariants(build_diagram(f, tol=tol))
    path, f_star = braid_normalize(f, tol=tol, seed=seed)
    d_star = build_diagram(f_star, tol=tol)
    inv1 = split_invariants(d_star)
    census = pair_census(d_star)
    deltas_vanish = all(p.delta == 0 for p in census.pairs.values())
    if not deltas_vanish:
        raise NormalizationFailed("normalized diagram still has disjoint spans")
    direct = d_star.lower_count - d_star.upper_count
    if sum(inv1.components) != direct or inv1.self_linking != direct:
        raise InvarianceViolation("split identity fails on the normalized diagram")
    if (inv0.whitney, inv0.self_linking, inv0.components) != (
        inv1.whitney,
        inv1.self_linking,
        inv1.components,
    ):
        raise InvarianceViolation("invariants changed across normalization")
    moves = 0 if path is None else len(path.segments)
    return SplitCheckReport(inv0, inv1, moves, deltas_vanish)
