"""Constructive builder: functions with a prescribed diagram census.

A braid-shaped diagram (every span overlapping) is designed strand by strand:
upper arcs are graphs over the value axis with levels on a multiplicative
ladder, lower arcs likewise in reflected coordinates. Crossings between two
strands are controlled exactly:

  * one forced crossing when entry order and exit order of the pair agree
    (the parity minimum), and
  * two extra crossings per designed "wiggle" of lane-adjacent strands.

The traversal speed profile is integrated to recover the circle parameter,
sampled, and projected onto a trigonometric polynomial. Every construction is
verified through the extraction pipeline before being returned; the design
only has to be right often enough for the retry loop.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .diagram import FramedDiagram, build_diagram
from .errors import GenerationFailed
from .invariants import pair_census
from .trig import DEFAULT_TOL, TWO_PI, Tolerances, TrigPolynomial, from_samples, periodic_bump


# ---- plans -----------------------------------------------------------------


@dataclass(frozen=True)
class CensusPlan:
    """Target combinatorics: value orderings plus extra crossing pairs.

    min_order[i] / max_order[i] give the rank (0-based) of the i-th minimum /
    maximum value among its peers; extras map unordered 1-based strand pairs
    to an even number of additional crossings on top of the forced minimum.
    """

    m: int
    min_order: tuple[int, ...]
    max_order: tuple[int, ...]
    extra_upper: tuple[tuple[tuple[int, int], int], ...] = ()
    extra_lower: tuple[tuple[tuple[int, int], int], ...] = ()

    def upper_counts(self) -> dict[tuple[int, int], int]:
        counts = _forced_counts(self.min_order, self.max_order)
        for pair, extra in self.extra_upper:
            counts[pair] = counts.get(pair, 0) + extra
        return {p: c for p, c in counts.items() if c}

    def lower_counts(self) -> dict[tuple[int, int], int]:
        shifted = tuple(self.min_order[(i + 1) % self.m] for i in range(self.m))
        counts = _forced_counts(shifted, self.max_order)
        for pair, extra in self.extra_lower:
            counts[pair] = counts.get(pair, 0) + extra
        return {p: c for p, c in counts.items() if c}

    def self_linking(self) -> int:
        return sum(self.lower_counts().values()) - sum(self.upper_counts().values())

    def components(self) -> tuple[int, ...]:
        n = self.m // 2
        comps = [0] * n
        for pair, c in self.lower_counts().items():
            comps[_distance(pair, self.m) - 1] += c
        for pair, c in self.upper_counts().items():
            comps[_distance(pair, self.m) - 1] -= c
        return tuple(comps)


def _distance(pair: tuple[int, int], m: int) -> int:
    i, j = pair
    return min((j - i) % m, (i - j) % m)


def _forced_counts(entry_rank: tuple[int, ...], exit_rank: tuple[int, ...]) -> dict:
    """One forced crossing per pair whose entry and exit orders agree."""
    m = len(entry_rank)
    counts = {}
    for i, j in itertools.combinations(range(m), 2):
        concordant = (entry_rank[i] < entry_rank[j]) == (exit_rank[i] < exit_rank[j])
        if concordant:
            counts[(i + 1, j + 1)] = 1
    return counts


# ---- strand profiles --------------------------------------------------------


def _smoothstep(u):
    v = np.clip(u, 0.0, 1.0)
    return v * v * v * (v * (6.0 * v - 15.0) + 10.0)


def _bump(u):
    """C^2 bump on (-1, 1), peak 1 at 0."""
    v = np.clip(np.abs(u), 0.0, 1.0)
    return (1.0 - v * v) ** 3


@dataclass
class _Strand:
    birth: float
    death: float
    kappa_birth: float
    kappa_death: float
    lane: int
    wiggles: list[tuple[float, float, float]] = field(default_factory=list)
    # each wiggle: (station, halfwidth, log_ratio)

    LANE_BASE = 0.55
    LANE_RATIO = 1.32
    RAMP = 0.3

    def level(self) -> float:
        return self.LANE_BASE * self.LANE_RATIO ** self.lane

    def theta(self, x: np.ndarray) -> np.ndarray:
        span = self.death - self.birth
        plateau = np.full_like(x, self.level())
        for station, halfwidth, log_ratio in self.wiggles:
            plateau = plateau * np.exp(log_ratio * _bump((x - station) / halfwidth))
        theta_a = self.kappa_birth / math.sqrt(span)
        theta_b = self.kappa_death / math.sqrt(span)
        r_in = _smoothstep((x - self.birth) / self.RAMP)
        r_out = _smoothstep((self.death - x) / self.RAMP)
        out = plateau * r_in * r_out + theta_a * (1.0 - r_in) + theta_b * (1.0 - r_out)
        return out

    def speed(self, x: np.ndarray) -> np.ndarray:
        env = np.sqrt(np.maximum((x - self.birth) * (self.death - x), 0.0))
        return self.theta(x) * env


def _assign_wiggles(strands: list[_Strand], extras: dict[tuple[int, int], int]) -> None:
    """Distribute extra crossing pairs as wiggles of lane-adjacent strands."""
    jobs = []
    for (i, j), extra in sorted(extras.items()):
        if extra % 2 != 0:
            raise ValueError("extras must be even")
        a, b = strands[i - 1], strands[j - 1]
        if abs(a.lane - b.lane) != 1:
            raise ValueError(f"extras need lane-adjacent strands, got pair {(i, j)}")
        mover = a if a.lane < b.lane else b
        upper = b if mover is a else a
        for _ in range(extra // 2):
            jobs.append((mover, upper))
    if not jobs:
        return
    zone_lo, zone_hi = -0.45, 0.5
    step = (zone_hi - zone_lo) / len(jobs)
    for k, (mover, upper) in enumerate(jobs):
        station = zone_lo + (k + 0.5) * step
        halfwidth = 0.38 * step
        log_ratio = math.log(
            (_Strand.LANE_RATIO ** (upper.lane - mover.lane)) * 1.18
        )
        mover.wiggles.append((station, halfwidth, log_ratio))


def _value_ladder(order: tuple[int, ...], base: float, spread: float, rng) -> list[float]:
    m = len(order)
    jitter = rng.uniform(-0.18, 0.18, m) * (spread / max(m, 2))
    return [base + spread * (order[i] / max(m - 1, 1) - 0.5) + float(jitter[i]) for i in range(m)]


def build_raw(plan: CensusPlan, seed: int, degree: int = 96, samples: int = 8192) -> TrigPolynomial:
    """Construct the designed function (unverified)."""
    rng = np.random.default_rng(seed)
    m = plan.m
    mins = _value_ladder(plan.min_order, -1.0, 0.07, rng)
    maxes = _value_ladder(plan.max_order, 1.0, 0.07, rng)
    kap_min = [1.0 + 0.03 * float(rng.uniform(-1, 1)) for _ in range(m)]
    kap_max = [1.0 + 0.03 * float(rng.uniform(-1, 1)) for _ in range(m)]

    # upper strands: graphs over x in [min_i, max_i]
    exit_rank_x = plan.max_order
    upper = [
        _Strand(mins[i], maxes[i], kap_min[i], kap_max[i], exit_rank_x[i])
        for i in range(m)
    ]
    _assign_wiggles(upper, dict(plan.extra_upper))

    # lower strands in reflected coordinates u = -x: from -max_i to -min_{i+1}
    death_rank_y = tuple(
        sorted(range(m), key=lambda i: -mins[(i + 1) % m]).index(i) for i in range(m)
    )
    lower = [
        _Strand(
            -maxes[i],
            -mins[(i + 1) % m],
            kap_max[i],
            kap_min[(i + 1) % m],
            death_rank_y[i],
        )
        for i in range(m)
    ]
    _assign_wiggles(lower, dict(plan.extra_lower))

    # integrate dt = 2 dv / theta along each arc (sin^2 substitution)
    n_quad = 1024
    v = np.linspace(0.0, math.pi / 2.0, n_quad)
    s_frac = np.sin(v) ** 2

    arc_samples = []  # (t_grid_local, x_values)
    for i in range(m):
        for strand, x_from, x_to in (
            (upper[i], mins[i], maxes[i]),
            (lower[i], maxes[i], mins[(i + 1) % m]),
        ):
            xs = x_from + (x_to - x_from) * s_frac
            us = xs if strand is upper[i] else -xs
            integrand = 2.0 / strand.theta(us)
            t_local = np.concatenate(
                [[0.0], np.cumsum(0.5 * (integrand[1:] + integrand[:-1]) * np.diff(v))]
            )
            arc_samples.append((t_local, xs))

    durations = [t[-1] for t, _ in arc_samples]
    total = sum(durations)
    lam = TWO_PI / total

    knot_t: list[np.ndarray] = []
    knot_x: list[np.ndarray] = []
    offset = 0.0
    for (t_local, xs), dur in zip(arc_samples, durations):
        t_global = (offset + t_local) * lam
        knot_t.append(t_global[:-1])
        knot_x.append(xs[:-1])
        offset += dur
    knot_t.append(np.array([TWO_PI]))
    knot_x.append(np.array([arc_samples[0][1][0]]))
    t_all = np.concatenate(knot_t)
    x_all = np.concatenate(knot_x)
    keep = np.concatenate([[True], np.diff(t_all) > 0])
    ts = np.linspace(0.0, TWO_PI, samples, endpoint=False)
    values = np.interp(ts, t_all[keep], x_all[keep])
    return from_samples(values, degree).trim()


@dataclass(frozen=True)
class BuildResult:
    function: TrigPolynomial
    diagram: FramedDiagram


def _census_matches(d: FramedDiagram, plan: CensusPlan) -> bool:
    """Compare diagram census to plan, allowing a cyclic index rotation."""
    if d.m != plan.m:
        return False
    got = pair_census(d)
    got_x = {}
    got_y = {}
    for (fam, i, j), data in got.pairs.items():
        if data.crossing_count == 0:
            continue
        target = got_x if fam == "X" else got_y
        target[(i, j)] = data.crossing_count
    want_x = plan.upper_counts()
    want_y = plan.lower_counts()

    def rotate(pairs: dict, r: int) -> dict:
        out = {}
        for (i, j), c in pairs.items():
            a = (i - 1 + r) % plan.m + 1
            b = (j - 1 + r) % plan.m + 1
            out[(min(a, b), max(a, b))] = c
        return out

    for r in range(plan.m):
        if rotate(want_x, r) == got_x and rotate(want_y, r) == got_y:
            return True
    return False


def build_from_census(
    plan: CensusPlan,
    seed: int = 0,
    degree: int = 96,
    retries: int = 12,
    tol: Tolerances = DEFAULT_TOL,
    exact_census: bool = True,
) -> BuildResult:
    """Build and pipeline-verify a function realizing the planned census."""
    last = None
    for attempt in range(retries):
        try:
            f = build_raw(plan, seed + 1009 * attempt, degree=degree)
            d = build_diagram(f, tol=tol)
        except Exception as exc:  # genericity failures: jitter and retry
            last = exc
            continue
        if exact_census:
            if _census_matches(d, plan):
                return BuildResult(f, d)
            last = GenerationFailed("census mismatch on attempt %d" % attempt)
        else:
            return BuildResult(f, d)
    raise GenerationFailed(f"census construction failed after {retries} attempts: {last}")


# ---- plan search -------------------------------------------------------------


def plan_for_target(m_strands: int, n: int, max_candidates: int = 400) -> list[CensusPlan]:
    """Candidate plans whose diagram should have W = -m_strands, S = n.

    Candidates are ordered by total crossing count; extras are placed on a
    lane-adjacent pair of the side that needs topping up.
    """
    m = m_strands
    candidates = []
    perms = list(itertools.permutations(range(m)))
    for sigma in perms:
        for pi in perms:
            base = CensusPlan(m, sigma, pi)
            s0 = base.self_linking()
            diff = n - s0
            if diff % 2 != 0:
                continue
            extras_needed = abs(diff) // 2
            plan = None
            if diff == 0:
                plan = base
            else:
                side_exit = pi
                if diff > 0:
                    lanes = tuple(
                        sorted(range(m), key=lambda i: -_shift_min(sigma, m)[i]).index(i)
                        for i in range(m)
                    )
                    pair = _adjacent_lane_pair(lanes)
                    if pair:
                        plan = CensusPlan(m, sigma, pi, extra_lower=((pair, 2 * extras_needed),))
                else:
                    lanes = side_exit
                    pair = _adjacent_lane_pair(lanes)
                    if pair:
                        plan = CensusPlan(m, sigma, pi, extra_upper=((pair, 2 * extras_needed),))
            if plan is None:
                continue
            cost = sum(plan.upper_counts().values()) + sum(plan.lower_counts().values())
            candidates.append((cost, plan))
    candidates.sort(key=lambda t: (t[0], t[1].min_order, t[1].max_order))
    return [p for _, p in candidates[:max_candidates]]


def _shift_min(sigma: tuple[int, ...], m: int) -> tuple[int, ...]:
    return tuple(sigma[(i + 1) % m] for i in range(m))


def _adjacent_lane_pair(lanes: tuple[int, ...]) -> tuple[int, int] | None:
    m = len(lanes)
    for i in range(m):
        for j in range(i + 1, m):
            if abs(lanes[i] - lanes[j]) == 1:
                return (i + 1, j + 1)
    return None


# ---- kink recipe --------------------------------------------------------------


def kink_function(
    dips: int,
    rises: int,
    seed: int = 0,
) -> TrigPolynomial:
    """Circle with small monotonicity-breaking wiggles.

    Each dip on the rising side adds one upper crossing between consecutive
    upper arcs; each rise on the falling side adds one lower crossing. The
    result has m = 1 + dips + rises and S = rises - dips, with every crossing
    between index-adjacent arcs.
    """
    if dips > 3 or rises > 3:
        raise GenerationFailed("kink recipe supports at most 3 wiggles per side")
    rng = np.random.default_rng(seed)
    f = TrigPolynomial(0.0, (0.0,), (1.0,))
    # kink value extent must stay inside the base range, away from +-1
    height_table = {1: [0.07], 2: [0.55, -0.25], 3: [0.6, 0.05, -0.5]}
    depth_table = {1: 0.45, 2: 0.4, 3: 0.3}
    for count, orientation in ((dips, -1.0), (rises, 1.0)):
        if not count:
            continue
        depth = depth_table[count]
        heights = np.array(height_table[count]) * (1.0 if orientation < 0 else -1.0)
        heights = heights + rng.uniform(-0.02, 0.02, count)
        for h in heights:
            h = float(np.clip(h, -0.85, 0.85))
            tau = math.asin(h)
            center = tau if orientation < 0 else math.pi - tau
            # the bump's derivative swing 0.606*depth*sqrt(p/2) must beat the
            # base slope sqrt(1 - h^2) to create the wiggle
            swing_needed = math.sqrt(1.0 - h * h) * 1.35 + 0.12
            p = int(math.ceil(2.0 * (swing_needed / (0.606 * depth)) ** 2))
            p = min(max(p, 40), 170)
            f = f + periodic_bump(float(center), p).scale(
                orientation * depth * (1.0 + 0.04 * float(rng.uniform(-1, 1)))
            )
    return f
