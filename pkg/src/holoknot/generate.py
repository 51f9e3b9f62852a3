"""Constructive search: functions with target invariants, and pairs that the
split invariants tell apart.

Everything returned here is verified through the extraction pipeline; the
recipes (kinked circles and census-planned braids) only steer the search.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .builder import CensusPlan, build_from_census, kink_function, plan_for_target
from .diagram import build_diagram
from .errors import GenerationFailed, HoloknotError
from .invariants import SplitInvariants, split_invariants
from .oracle import identify, to_crossing_code
from .trig import DEFAULT_TOL, Tolerances, TrigPolynomial


def generate_range(
    m: int,
    n: int,
    seed: int = 0,
    tol: Tolerances = DEFAULT_TOL,
    budget: int = 60,
) -> TrigPolynomial:
    """A generic function whose diagram has Whitney index m and self-linking n.

    Requires m <= -2 and m + n odd. Construction alternates between kinked
    circles and census-planned braids; every candidate is re-extracted and
    checked exactly before being returned.
    """
    if m > -2:
        raise ValueError("Whitney index must be at most -2")
    if (m + n) % 2 == 0:
        raise ValueError("m + n must be odd")
    strands = -m

    candidates = []
    if abs(n) <= strands - 1:
        dips = (strands - 1 - n) // 2
        rises = (strands - 1 + n) // 2
        if max(dips, rises) <= 3:
            candidates.append(("kinks", dips, rises))
    plans = plan_for_target(strands, n)
    candidates.extend(("plan", p) for p in plans[:24])
    if seed % 2 == 1:
        candidates.reverse()

    tried = 0
    last: Exception | None = None
    for cand in candidates:
        if tried >= budget:
            break
        for attempt_seed in (seed, seed + 31, seed + 62):
            tried += 1
            try:
                if cand[0] == "kinks":
                    f = kink_function(cand[1], cand[2], seed=attempt_seed)
                    d = build_diagram(f, tol=tol)
                else:
                    res = build_from_census(cand[1], seed=attempt_seed, retries=3)
                    f, d = res.function, res.diagram
                inv = split_invariants(d)
            except HoloknotError as exc:
                last = exc
                continue
            if inv.whitney == m and inv.self_linking == n:
                return f
            last = GenerationFailed(
                f"candidate landed at W={inv.whitney}, S={inv.self_linking}"
            )
    raise GenerationFailed(
        f"no function with (W, S) = ({m}, {n}) within budget: {last}"
    )


@dataclass(frozen=True)
class DistinguishedPair:
    """Same knot class, same (W, S), different split invariants."""

    first: TrigPolynomial
    second: TrigPolynomial
    first_invariants: SplitInvariants
    second_invariants: SplitInvariants
    knot_class: str

    def to_dict(self) -> dict:
        return {
            "knot_class": self.knot_class,
            "first": {
                "function": self.first.to_dict(),
                "invariants": self.first_invariants.to_dict(),
            },
            "second": {
                "function": self.second.to_dict(),
                "invariants": self.second_invariants.to_dict(),
            },
        }


def _candidate_stream(strands: int, s: int, seed: int):
    """Deterministic stream of construction recipes for the pair search."""
    if abs(s) <= strands - 1:
        dips = (strands - 1 - s) // 2
        rises = (strands - 1 + s) // 2
        if max(dips, rises) <= 3:
            for k in range(3):
                yield ("kinks", dips, rises, seed + 17 * k)
    if strands == 4 and s == -1:
        # braid census with all upper crossings between cyclically adjacent
        # arcs and lower crossings at both distances
        yield ("plan", CensusPlan(4, (0, 1, 2, 3), (1, 3, 0, 2)), seed)
        yield ("plan", CensusPlan(4, (0, 1, 2, 3), (1, 3, 0, 2)), seed + 7)
    for i, plan in enumerate(plan_for_target(strands, s)[:20]):
        yield ("plan", plan, seed + 3 * i)
        yield ("plan", plan, seed + 3 * i + 1)


def search_distinguishing_pair(
    m: int,
    s: int,
    budget_seconds: float = 600.0,
    seed: int = 0,
    knot_class: str | None = None,
    tol: Tolerances = DEFAULT_TOL,
) -> DistinguishedPair | None:
    """Two functions with equal knot class, W and S but different S_k.

    Requires |m| >= 4 (below that there is a single split component, pinned
    to S). Returns None when the budget runs out without a pair.
    """
    if abs(m) < 4:
        raise ValueError("need |m| >= 4 for more than one split component")
    if (m + s) % 2 == 0:
        raise ValueError("m + s must be odd")
    strands = -m
    deadline = time.monotonic() + budget_seconds

    buckets: dict[tuple[str, tuple[int, ...]], tuple[TrigPolynomial, SplitInvariants]] = {}
    for cand in _candidate_stream(strands, s, seed):
        if time.monotonic() > deadline:
            break
        try:
            if cand[0] == "kinks":
                f = kink_function(cand[1], cand[2], seed=cand[3])
                d = build_diagram(f, tol=tol)
            else:
                res = build_from_census(cand[1], seed=cand[2], retries=3)
                f, d = res.function, res.diagram
            inv = split_invariants(d)
            if inv.whitney != m or inv.self_linking != s:
                continue
            entry = identify(to_crossing_code(d, f))
        except HoloknotError:
            continue
        name = entry.name if entry else "unknown"
        if knot_class is not None and name != knot_class:
            continue
        key = (name, inv.components)
        for (other_name, other_comps), (g, g_inv) in buckets.items():
            if other_name == name and other_comps != inv.components:
                return DistinguishedPair(g, f, g_inv, inv, name)
        buckets.setdefault(key, (f, inv))
    return None
