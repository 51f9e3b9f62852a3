"""Trigonometric polynomials on the circle and their critical-point structure.

Everything downstream (diagrams, invariants, isotopies) is driven by a single
finite trigonometric series

    f(t) = a0 + sum_k (a_k cos kt + b_k sin kt),   t in [0, 2*pi),

whose jets are evaluated analytically; no finite differencing anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateCritical, PerturbationFailed, ValueCollision

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used across the pipeline. All configurable."""

    root: float = 1e-12              # parameter accuracy for root polishing
    morse_margin: float = 1e-8       # min |f''| at a critical point
    value_gap: float = 1e-8          # min distance between critical values
    immersion: float = 1e-8          # min f'^2 + f''^2 along the curve
    axis_clearance: float = 1e-6     # min |x1| at a double point
    transversality: float = 1e-8     # min |det| of branch tangents
    x2_gap: float = 1e-8             # min |f''(t1) - f''(t2)| at a double point
    cluster: float = 1e-6            # dedup radius for double points
    event_locate: float = 1e-9       # bisection accuracy for event parameters
    event_separation: float = 1e-7   # closer event pairs are unresolved


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class TrigPolynomial:
    """f(t) = constant + sum_k (cos_coeffs[k-1] cos kt + sin_coeffs[k-1] sin kt)."""

    constant: float
    cos_coeffs: tuple[float, ...] = ()
    sin_coeffs: tuple[float, ...] = ()

    def __post_init__(self):
        if len(self.cos_coeffs) != len(self.sin_coeffs):
            raise ValueError("cos and sin coefficient lists must have equal length")
        object.__setattr__(self, "cos_coeffs", tuple(float(c) for c in self.cos_coeffs))
        object.__setattr__(self, "sin_coeffs", tuple(float(c) for c in self.sin_coeffs))
        object.__setattr__(self, "constant", float(self.constant))

    @property
    def degree(self) -> int:
        return len(self.cos_coeffs)

    # ---- evaluation -----------------------------------------------------

    def jets(self, t, order: int = 0):
        """Evaluate (f, f', ..., f^(order)) at scalar or array t. order <= 3."""
        if order < 0 or order > 3:
            raise ValueError("jet order must be in 0..3")
        t_arr = np.atleast_1d(np.asarray(t, dtype=float))
        k = np.arange(1, self.degree + 1, dtype=float)
        a = np.asarray(self.cos_coeffs)
        b = np.asarray(self.sin_coeffs)
        kt = np.outer(t_arr, k)
        c, s = np.cos(kt), np.sin(kt)
        out = []
        # d/dt rotates (a_k, b_k) -> (k b_k, -k a_k)
        ca, cb = a.copy(), b.copy()
        const = self.constant
        for n in range(order + 1):
            vals = c @ ca + s @ cb
            if n == 0:
                vals = vals + const
            out.append(vals if np.ndim(t) else float(vals[0]))
            ca, cb = k * cb, -k * ca
        return tuple(out)

    def __call__(self, t):
        return self.jets(t, 0)[0]

    def derivative(self) -> "TrigPolynomial":
        k = np.arange(1, self.degree + 1, dtype=float)
        a = np.asarray(self.cos_coeffs)
        b = np.asarray(self.sin_coeffs)
        return TrigPolynomial(0.0, tuple(k * b), tuple(-k * a))

    # ---- algebra --------------------------------------------------------

    def pad_to(self, degree: int) -> "TrigPolynomial":
        if degree < self.degree:
            raise ValueError("cannot pad to a smaller degree")
        extra = degree - self.degree
        return TrigPolynomial(
            self.constant,
            self.cos_coeffs + (0.0,) * extra,
            self.sin_coeffs + (0.0,) * extra,
        )

    def trim(self, rel_tol: float = 1e-13) -> "TrigPolynomial":
        """Drop trailing coefficients below rel_tol * amplitude scale."""
        scale = max(self.amplitude_bound(0), 1.0)
        d = self.degree
        while d > 0 and max(abs(self.cos_coeffs[d - 1]), abs(self.sin_coeffs[d - 1])) < rel_tol * scale:
            d -= 1
        return TrigPolynomial(self.constant, self.cos_coeffs[:d], self.sin_coeffs[:d])

    def __add__(self, other: "TrigPolynomial") -> "TrigPolynomial":
        d = max(self.degree, other.degree)
        p, q = self.pad_to(d), other.pad_to(d)
        return TrigPolynomial(
            p.constant + q.constant,
            tuple(x + y for x, y in zip(p.cos_coeffs, q.cos_coeffs)),
            tuple(x + y for x, y in zip(p.sin_coeffs, q.sin_coeffs)),
        )

    def __sub__(self, other: "TrigPolynomial") -> "TrigPolynomial":
        return self + other.scale(-1.0)

    def scale(self, c: float) -> "TrigPolynomial":
        return TrigPolynomial(
            c * self.constant,
            tuple(c * x for x in self.cos_coeffs),
            tuple(c * x for x in self.sin_coeffs),
        )

    def amplitude_bound(self, order: int) -> float:
        """Coefficient bound on |f^(order)|: sum_k k^order (|a_k| + |b_k|)."""
        total = abs(self.constant) if order == 0 else 0.0
        for i, (a, b) in enumerate(zip(self.cos_coeffs, self.sin_coeffs), start=1):
            total += (i ** order) * (abs(a) + abs(b))
        return total

    def close_to(self, other: "TrigPolynomial", tol: float = 1e-9) -> bool:
        d = max(self.degree, other.degree)
        p, q = self.pad_to(d), other.pad_to(d)
        diff = abs(p.constant - q.constant)
        for x, y in zip(p.cos_coeffs + p.sin_coeffs, q.cos_coeffs + q.sin_coeffs):
            diff = max(diff, abs(x - y))
        return diff <= tol

    # ---- serialization --------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "constant": self.constant,
            "cos": list(self.cos_coeffs),
            "sin": list(self.sin_coeffs),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TrigPolynomial":
        cos = [float(x) for x in data["cos"]]
        sin = [float(x) for x in data["sin"]]
        if "degree" in data and int(data["degree"]) != len(cos):
            raise ValueError("degree field does not match coefficient list length")
        return cls(float(data.get("constant", 0.0)), tuple(cos), tuple(sin))


def evaluate_jets(f: TrigPolynomial, t: float, order: int = 3) -> tuple[float, ...]:
    """Jets (f(t), f'(t), ...) truncated to the requested order, analytically."""
    return f.jets(float(t), order)


def from_samples(values: np.ndarray, degree: int) -> TrigPolynomial:
    """Project uniformly sampled periodic values onto a degree-bounded series."""
    n = len(values)
    if degree > n // 2 - 1:
        raise ValueError("sample grid too coarse for requested degree")
    spec = np.fft.rfft(np.asarray(values, dtype=float)) / n
    const = spec[0].real
    cos = 2.0 * spec[1 : degree + 1].real
    sin = -2.0 * spec[1 : degree + 1].imag
    return TrigPolynomial(const, tuple(cos), tuple(sin))


def periodic_bump(center: float, sharpness: int) -> TrigPolynomial:
    """((1 + cos(t - c))/2)^p: a degree-p bump with unit peak at t = c.

    Effective half-width is about 2/sqrt(p).
    """
    if sharpness < 1:
        raise ValueError("sharpness must be >= 1")
    # Binomial expansion of ((1 + cos u)/2)^p in complex exponentials, then
    # shift by the center phase.
    p = sharpness
    coeff = [math.comb(2 * p, p + k) / float(4 ** p) for k in range(0, p + 1)]
    cos = []
    sin = []
    for k in range(1, p + 1):
        amp = 2.0 * coeff[k]
        cos.append(amp * math.cos(k * center))
        sin.append(amp * math.sin(k * center))
    return TrigPolynomial(coeff[0], tuple(cos), tuple(sin))


def plateau_bump(
    t_lo: float,
    t_hi: float,
    ramp: float,
    degree: int = 96,
) -> TrigPolynomial:
    """Unit-height plateau over [t_lo, t_hi] with C^3 ramps of the given width.

    Sampled and projected onto a trigonometric series, so the flat top is flat
    to projection accuracy and the tails vanish beyond the ramps.
    """
    if t_hi <= t_lo:
        raise ValueError("plateau needs t_hi > t_lo")
    n = max(8 * degree, 1024)
    ts = np.linspace(0.0, TWO_PI, n, endpoint=False)
    center = 0.5 * (t_lo + t_hi)
    u = np.mod(ts - center + math.pi, TWO_PI) - math.pi
    half = 0.5 * (t_hi - t_lo)
    v = (np.abs(u) - half) / ramp
    v = np.clip(v, 0.0, 1.0)
    # C^3 step: 1 at v=0 down to 0 at v=1
    s = 1.0 - (35.0 * v**4 - 84.0 * v**5 + 70.0 * v**6 - 20.0 * v**7)
    return from_samples(s, degree).trim(1e-12)


def random_series(rng: np.random.Generator, degree: int, scale: float = 1.0) -> TrigPolynomial:
    """Random series with 1/k-decaying coefficients; used for perturbations."""
    k = np.arange(1, degree + 1, dtype=float)
    cos = rng.normal(0.0, scale, degree) / k
    sin = rng.normal(0.0, scale, degree) / k
    return TrigPolynomial(0.0, tuple(cos), tuple(sin))


# ---- critical points ----------------------------------------------------


@dataclass(frozen=True)
class CriticalPoint:
    t: float
    value: float
    kind: str                # "min" | "max"
    second_deriv: float


@dataclass(frozen=True)
class MorseProfile:
    """Cyclically ordered critical points; kinds alternate, 2m points total."""

    points: tuple[CriticalPoint, ...]
    minima_count: int

    @property
    def minima(self) -> tuple[CriticalPoint, ...]:
        return tuple(p for p in self.points if p.kind == "min")

    @property
    def maxima(self) -> tuple[CriticalPoint, ...]:
        return tuple(p for p in self.points if p.kind == "max")

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(p.value for p in self.points)


def grid_size_for(f: TrigPolynomial, requested: int | None = None) -> int:
    """Scan grid: max(4096, 64 K) by default; explicit requests may go coarser
    but never below 16 samples per harmonic."""
    if requested is None:
        return max(4096, 64 * max(f.degree, 1))
    return max(requested, 16 * max(f.degree, 1))


def _bracket_roots(g: TrigPolynomial, n: int, tol: Tolerances) -> list[float]:
    """Roots of g on [0, 2pi) located by sign-change bracketing on an n-grid.

    All brackets are refined simultaneously: bisection to the requested
    parameter accuracy, then a short vectorized Newton polish.
    """
    ts = np.linspace(0.0, TWO_PI, n, endpoint=False)
    (vals,) = g.jets(ts, 0)
    h = TWO_PI / n
    exact = ts[vals == 0.0]
    sign_flip = (vals < 0) != (np.roll(vals, -1) < 0)
    sign_flip &= vals != 0.0
    lo = ts[sign_flip]
    hi = lo + h
    if lo.size:
        vlo = g.jets(lo, 0)[0]
        steps = max(8, int(math.ceil(math.log2(h / max(tol.root, 1e-15)))))
        for _ in range(steps):
            mid = 0.5 * (lo + hi)
            vmid = g.jets(mid, 0)[0]
            take_lo = (vlo < 0) == (vmid < 0)
            lo = np.where(take_lo, mid, lo)
            vlo = np.where(take_lo, vmid, vlo)
            hi = np.where(take_lo, hi, mid)
        root = 0.5 * (lo + hi)
        for _ in range(2):
            v, d = g.jets(root, 1)
            safe = np.abs(d) > 1e-300
            step = np.where(safe, v / np.where(safe, d, 1.0), 0.0)
            step = np.clip(step, -h, h)
            root = root - step
    else:
        root = np.empty(0)
    roots = sorted(float(r) % TWO_PI for r in np.concatenate([exact, root]))
    merged: list[float] = []
    for r in roots:
        if merged and (r - merged[-1] < 1e-9):
            continue
        merged.append(r)
    if len(merged) >= 2 and (merged[0] + TWO_PI) - merged[-1] < 1e-9:
        merged.pop()
    return merged


def _critical_roots(f: TrigPolynomial, grid_size: int | None, tol: Tolerances):
    """All roots of f' on [0, 2pi), with a tangency certificate.

    A root pair of f' can hide from the sign scan only near a zero of f'',
    so every root s of f'' is checked: |f'(s)| below the quadratic recovery
    bound marks the function as (near) non-Morse.
    """
    f1 = f.derivative()
    if f1.amplitude_bound(0) == 0.0:
        return [], False
    n = grid_size_for(f, grid_size)
    h = TWO_PI / n
    roots = _bracket_roots(f1, n, tol)

    f2 = f1.derivative()
    suspicious = False
    bound3 = f1.amplitude_bound(2)  # sup |f'''|
    for s in _bracket_roots(f2, n, tol):
        near_known = any(
            min(abs(s - r), TWO_PI - abs(s - r)) < 2.0 * h for r in roots
        )
        if near_known:
            continue
        if abs(f1(s)) <= max(bound3 * h * h / 2.0, tol.morse_margin):
            suspicious = True
            break
    return roots, suspicious


def critical_points(
    f: TrigPolynomial,
    grid_size: int | None = None,
    tol: Tolerances = DEFAULT_TOL,
) -> MorseProfile:
    """Locate all critical points of f and classify them.

    Raises DegenerateCritical when some root of f' has |f''| below the Morse
    margin (or when a tangential root may be hiding between grid nodes), and
    ValueCollision when two critical values coincide within tolerance.
    """
    roots, suspicious = _critical_roots(f, grid_size, tol)
    if suspicious:
        raise DegenerateCritical("f' has a near-tangential zero; function is not Morse")
    if not roots:
        raise DegenerateCritical("no critical points found; function is (near) constant")

    pts = []
    for t in roots:
        v, d1, d2 = f.jets(t, 2)
        if abs(d2) < tol.morse_margin:
            raise DegenerateCritical(
                f"critical point at t={t:.6f} has |f''|={abs(d2):.3e} below margin"
            )
        pts.append(CriticalPoint(t, v, "min" if d2 > 0 else "max", d2))

    kinds = [p.kind for p in pts]
    if len(pts) % 2 != 0 or any(kinds[i] == kinds[(i + 1) % len(pts)] for i in range(len(pts))):
        raise DegenerateCritical("critical kinds do not alternate; missed a root")

    values = sorted(p.value for p in pts)
    for x, y in zip(values, values[1:]):
        if y - x < tol.value_gap:
            raise ValueCollision(f"critical values {x:.9f} and {y:.9f} collide")

    return MorseProfile(tuple(pts), minima_count=sum(1 for p in pts if p.kind == "min"))


# ---- genericity margins -------------------------------------------------


@dataclass(frozen=True)
class MarginReport:
    """Lower-bound margins; zeros are reported, never raised."""

    immersion: float            # min over grid of f'^2 + f''^2
    immersion_certified: float  # grid min padded by the derivative bound
    morse: float                # min |f''| over critical points
    value_gap: float            # min pairwise critical-value distance
    grid_size: int = field(default=0)

    def is_generic(self, tol: Tolerances = DEFAULT_TOL) -> bool:
        return (
            self.immersion > tol.immersion
            and self.morse > tol.morse_margin
            and self.value_gap > tol.value_gap
        )


def genericity_margins(
    f: TrigPolynomial,
    grid_size: int | None = None,
    tol: Tolerances = DEFAULT_TOL,
) -> MarginReport:
    n = grid_size_for(f, grid_size)
    ts = np.linspace(0.0, TWO_PI, n, endpoint=False)
    _, d1, d2 = f.jets(ts, 2)
    g = d1 * d1 + d2 * d2
    grid_min = float(np.min(g))
    # |d/dt (f'^2 + f''^2)| <= 2 |f''| (|f'| + |f'''|)
    lip = 2.0 * f.amplitude_bound(2) * (f.amplitude_bound(1) + f.amplitude_bound(3))
    certified = grid_min - lip * (TWO_PI / n) / 2.0

    try:
        roots, suspicious = _critical_roots(f, grid_size, tol)
    except Exception:
        roots, suspicious = [], True
    if not roots:
        morse = 0.0
        vgap = 0.0
    else:
        d2s = [f.jets(t, 2)[2] for t in roots]
        morse = 0.0 if suspicious else float(min(abs(x) for x in d2s))
        vals = sorted(f(t) for t in roots)
        if len(vals) < 2:
            vgap = 0.0
        else:
            vgap = float(min(y - x for x, y in zip(vals, vals[1:])))
    return MarginReport(grid_min, certified, morse, vgap, grid_size=n)


def morse_perturb(
    f: TrigPolynomial,
    epsilon: float,
    seed: int,
    tol: Tolerances = DEFAULT_TOL,
    retries: int = 40,
) -> TrigPolynomial:
    """Smallest-change perturbation making all genericity margins positive.

    Returns f unchanged when it is already generic.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if genericity_margins(f, tol=tol).is_generic(tol):
        return f
    rng = np.random.default_rng(seed)
    degree = max(f.degree, 3)
    for attempt in range(retries):
        size = epsilon * (0.25 + 0.75 * (attempt + 1) / retries)
        g = f + random_series(rng, degree, scale=size)
        if genericity_margins(g, tol=tol).is_generic(tol):
            return g
    raise PerturbationFailed(
        f"no generic function within epsilon={epsilon} after {retries} attempts"
    )
