"""Regular homotopy between immersed 1-jet curves of equal turning number.

Two stages realize the deformation: a circle reparameterization moving one
function's critical points onto the other's (monotone interpolation of the
anchor displacements, linear in the stage parameter), followed by a straight
line between the aligned functions (vertical graph flow, exact in
coefficients). Reparameterized members leave the trigonometric class, so each
sampled member is resampled and projected back, with the projection error
checked and the degree escalated if needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.interpolate import CubicSpline, PchipInterpolator

from .errors import ImmersionLost, MismatchedProfiles, ProjectionError
from .trig import (
    DEFAULT_TOL,
    TWO_PI,
    MorseProfile,
    Tolerances,
    TrigPolynomial,
    critical_points,
    from_samples,
)


@dataclass(frozen=True)
class Stage:
    """One-parameter family s in [0, 1] -> TrigPolynomial."""

    kind: str                                  # "reparam" | "linear"
    at: Callable[[float], TrigPolynomial]

    def sample(self, count: int) -> list[TrigPolynomial]:
        return [self.at(i / (count - 1)) for i in range(count)]


@dataclass(frozen=True)
class HomotopyPath:
    """Ordered stages; consecutive stages agree at their shared endpoints."""

    stages: tuple[Stage, ...]
    sample_grid: int = 1024

    def endpoints(self) -> tuple[TrigPolynomial, TrigPolynomial]:
        return self.stages[0].at(0.0), self.stages[-1].at(1.0)

    def min_immersion_margin(self, samples_per_stage: int = 33) -> float:
        worst = math.inf
        for stage in self.stages:
            for g in stage.sample(samples_per_stage):
                worst = min(worst, immersion_margin(g, self.sample_grid))
        return worst

    def verify(self, tol: Tolerances = DEFAULT_TOL, samples_per_stage: int = 33) -> None:
        for a, b in zip(self.stages, self.stages[1:]):
            if not a.at(1.0).close_to(b.at(0.0), 1e-9):
                raise ImmersionLost("consecutive stages disagree at the joint")
        margin = self.min_immersion_margin(samples_per_stage)
        if margin <= tol.immersion:
            raise ImmersionLost(f"immersion margin {margin:.3e} along the path")


def immersion_margin(f: TrigPolynomial, grid: int = 1024) -> float:
    ts = np.linspace(0.0, TWO_PI, grid, endpoint=False)
    _, d1, d2 = f.jets(ts, 2)
    return float(np.min(d1 * d1 + d2 * d2))


# ---- anchor matching -------------------------------------------------------


def _anchor_lift(profile_f: MorseProfile, profile_g: MorseProfile) -> tuple[np.ndarray, np.ndarray]:
    """Anchor parameters of f and the lifted targets on g, kind-matched.

    Minima pair with minima cyclically; of the m admissible rotations the one
    with the smallest maximal displacement is used. The returned target
    sequence increases and spans exactly 2*pi.
    """
    tf = np.array([p.t for p in profile_f.points])
    kinds_f = [p.kind for p in profile_f.points]
    tg = np.array([p.t for p in profile_g.points])
    kinds_g = [p.kind for p in profile_g.points]
    n = len(tf)

    best = None
    for r in range(n):
        if kinds_g[r] != kinds_f[0]:
            continue
        rolled = np.concatenate([tg[r:], tg[:r] + TWO_PI])
        # lift so targets increase and the first displacement is within (-pi, pi]
        shift = TWO_PI * round((rolled[0] - tf[0]) / TWO_PI)
        cand = rolled - shift
        disp = cand - tf
        width = float(np.max(np.abs(disp)))
        if best is None or width < best[0]:
            best = (width, cand)
    if best is None:
        raise MismatchedProfiles("no kind-preserving anchor rotation exists")
    return tf, best[1]


def _monotone_lift(tf: np.ndarray, targets: np.ndarray):
    """Monotone interpolant of the lifted reparameterization phi_1.

    A C2 periodic spline of the displacement is preferred (fast Fourier decay
    of the reparameterized members); if it fails to stay monotone, fall back
    to the monotone C1 interpolant.
    """
    disp = targets - tf
    xs_p = np.concatenate([tf, [tf[0] + TWO_PI]])
    ys_p = np.concatenate([disp, [disp[0]]])
    spline = CubicSpline(xs_p, ys_p, bc_type="periodic")

    def phi_smooth(ts):
        return ts + spline(tf[0] + np.mod(ts - tf[0], TWO_PI))

    probe = np.linspace(tf[0], tf[0] + TWO_PI, 4096)
    slope = 1.0 + spline(probe, 1)
    if float(np.min(slope)) > 0.05:
        return phi_smooth

    xs = np.concatenate([tf - TWO_PI, tf, tf + TWO_PI, [tf[0] + 2 * TWO_PI]])
    ys = np.concatenate(
        [targets - TWO_PI, targets, targets + TWO_PI, [targets[0] + 2 * TWO_PI]]
    )
    return PchipInterpolator(xs, ys)


def _project_family(
    g: TrigPolynomial,
    phi_at: Callable[[float, np.ndarray], np.ndarray],
    degree: int,
    proj_tol: float,
    max_degree: int,
) -> Callable[[float], TrigPolynomial]:
    """Wrap s -> projection of g(phi_s(t)) with an error-checked degree."""

    scale = max(g.amplitude_bound(0), 1.0)
    state = {"degree": degree}

    def member(s: float) -> TrigPolynomial:
        d = state["degree"]
        while True:
            n = 8 * d
            ts = np.linspace(0.0, TWO_PI, n, endpoint=False)
            vals = g.jets(phi_at(s, ts), 0)[0]
            proj = from_samples(vals, d)
            err = float(np.max(np.abs(proj.jets(ts, 0)[0] - vals)))
            if err <= proj_tol * scale:
                state["degree"] = d
                return proj.trim()
            if d >= max_degree:
                raise ProjectionError(
                    f"projection error {err:.3e} at degree {d} exceeds tolerance"
                )
            d *= 2

    return member


def align_critical_points(
    f: TrigPolynomial,
    g: TrigPolynomial,
    tol: Tolerances = DEFAULT_TOL,
    proj_tol: float = 1e-7,
    max_degree: int | None = None,
) -> Stage:
    """Family s -> g o phi_s with phi_0 = id and crit(g o phi_1) = crit(f).

    phi_s is the convex combination of the identity and a monotone
    interpolant through the anchor displacements, so every phi_s is a
    degree-one circle diffeomorphism.
    """
    pf = critical_points(f, tol=tol)
    pg = critical_points(g, tol=tol)
    if pf.minima_count != pg.minima_count:
        raise MismatchedProfiles(
            f"minima counts differ: {pf.minima_count} vs {pg.minima_count}"
        )
    tf, targets = _anchor_lift(pf, pg)
    phi1 = _monotone_lift(tf, targets)

    def phi_at(s: float, ts: np.ndarray) -> np.ndarray:
        return (1.0 - s) * ts + s * phi1(ts)

    degree = 4 * max(f.degree, g.degree, 3)
    if max_degree is None:
        max_degree = max(1024, degree)
    member = _project_family(g, phi_at, degree, proj_tol, max_degree=max_degree)
    return Stage("reparam", member)


def graph_flow(
    f: TrigPolynomial,
    g_hat: TrigPolynomial,
    tol: Tolerances = DEFAULT_TOL,
    check_samples: int = 33,
    grid: int = 1024,
) -> Stage:
    """Linear family rho -> g_hat + rho (f - g_hat); margin-checked.

    Immersion of every member rests on f and g_hat sharing their critical
    parameters with matching kinds; any misalignment surfaces here as a
    failed margin check.
    """
    diff = f - g_hat

    def member(rho: float) -> TrigPolynomial:
        return g_hat + diff.scale(rho)

    stage = Stage("linear", member)
    for h in stage.sample(check_samples):
        if immersion_margin(h, grid) <= tol.immersion:
            raise ImmersionLost(
                "graph flow loses immersion; alignment insufficient"
            )
    return stage


def regular_homotopy(
    f: TrigPolynomial,
    g: TrigPolynomial,
    tol: Tolerances = DEFAULT_TOL,
    sample_grid: int = 1024,
    check_samples: int = 33,
    proj_tol: float = 1e-7,
    max_degree: int | None = None,
) -> HomotopyPath:
    """Path of immersed members connecting g to f (alignment, then flow).

    Raises MismatchedProfiles when the turning numbers differ.
    """
    align = align_critical_points(f, g, tol=tol, proj_tol=proj_tol, max_degree=max_degree)
    g_hat = align.at(1.0)
    flow = graph_flow(f, g_hat, tol=tol, check_samples=check_samples, grid=sample_grid)
    path = HomotopyPath((align, flow), sample_grid=sample_grid)
    path.verify(tol=tol, samples_per_stage=check_samples)
    return path
