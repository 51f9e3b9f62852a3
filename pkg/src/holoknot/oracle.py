"""Knot identification via the Kauffman bracket state sum.

A diagram is reduced to a crossing code (four strand-ends per crossing in
counterclockwise rotational order, plus over/under and sign), the bracket is
summed over all smoothings with loop counting by union-find, and the
writhe-normalized polynomial is matched against a small table of knot classes
carrying genus and braid index.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

from .diagram import FramedDiagram
from .errors import HoloknotError, TooManyCrossings
from .trig import TWO_PI, TrigPolynomial

MAX_CROSSINGS = 14


# ---- Laurent polynomials ---------------------------------------------------


class LaurentPolynomial:
    """Integer Laurent polynomial in one variable; zero coefficients dropped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[int, int] | None = None):
        self.coeffs = {int(e): int(c) for e, c in (coeffs or {}).items() if c != 0}

    @classmethod
    def monomial(cls, coeff: int, exponent: int) -> "LaurentPolynomial":
        return cls({exponent: coeff})

    @classmethod
    def one(cls) -> "LaurentPolynomial":
        return cls({0: 1})

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out)

    def __mul__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(out)

    def __pow__(self, n: int) -> "LaurentPolynomial":
        if n < 0:
            raise ValueError("only nonnegative powers")
        out = LaurentPolynomial.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def mirror(self) -> "LaurentPolynomial":
        """Invert the variable."""
        return LaurentPolynomial({-e: c for e, c in self.coeffs.items()})

    def substitute_power(self, k: int) -> "LaurentPolynomial":
        """Replace the variable x by x^k."""
        return LaurentPolynomial({e * k: c for e, c in self.coeffs.items()})

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                parts.append(f"{c}")
            else:
                parts.append(f"{c}*x^{e}" if e != 1 else f"{c}*x")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


# ---- crossing codes ---------------------------------------------------------


@dataclass(frozen=True)
class CrossingEnds:
    """One crossing: edge ids of the four strand-ends in CCW rotational order.

    Slot 0 is the incoming under-strand end, so the under-strand occupies
    slots 0 and 2 and the over-strand slots 1 and 3. over_in gives the slot
    (1 or 3) at which the over-strand enters.
    """

    edges: tuple[int, int, int, int]
    over_in: int
    sign: int

    def __post_init__(self):
        if self.over_in not in (1, 3):
            raise ValueError("over-strand must enter at slot 1 or 3")


@dataclass(frozen=True)
class CrossingCode:
    crossings: tuple[CrossingEnds, ...]
    n_edges: int

    @property
    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    def mirror(self) -> "CrossingCode":
        """Swap over/under at every crossing.

        The new under-strand is the old over-strand; the slot list rotates so
        that slot 0 is again the incoming under end. This reverses every
        crossing sign.
        """
        out = []
        for c in self.crossings:
            r = c.over_in  # old over-in slot becomes new under-in slot
            edges = tuple(c.edges[(r + i) % 4] for i in range(4))
            # new over strand = old under strand; after rotating by r its
            # incoming end (old slot 0) sits at slot (0 - r) % 4.
            new_over_in = (0 - r) % 4
            out.append(CrossingEnds(edges, new_over_in, -c.sign))
        return CrossingCode(tuple(out), self.n_edges)


def from_pd_code(pd: list[list[int]]) -> CrossingCode:
    """Convert a planar-diagram code (X[a,b,c,d], ends CCW from the incoming
    under-strand, edges numbered 1..2n along the orientation) into a
    CrossingCode. The over-strand runs d->b when b = d + 1 (mod 2n), giving a
    positive crossing; otherwise it runs b->d and the crossing is negative.
    """
    n = len(pd)
    n_edges = 2 * n
    crossings = []
    for a, b, c, dd in pd:
        if (b - dd) % n_edges == 1:
            over_in, sign = 3, 1
        elif (dd - b) % n_edges == 1:
            over_in, sign = 1, -1
        else:
            raise ValueError(f"cannot orient over-strand of X[{a},{b},{c},{dd}]")
        crossings.append(CrossingEnds((a - 1, b - 1, c - 1, dd - 1), over_in, sign))
    return CrossingCode(tuple(crossings), n_edges)


def to_crossing_code(d: FramedDiagram, f: TrigPolynomial) -> CrossingCode:
    """Crossing code of a holonomic diagram.

    Edge ids follow the knot traversal between consecutive crossing visits;
    rotational order comes from the branch tangent directions; the over
    branch is the one with larger f''.
    """
    visits: list[tuple[float, int]] = []
    for idx, c in enumerate(d.crossings):
        visits.append((c.double_point.t1 % TWO_PI, idx))
        visits.append((c.double_point.t2 % TWO_PI, idx))
    visits.sort()
    n_visits = len(visits)
    if n_visits == 0:
        return CrossingCode((), 0)

    # edge k runs from visit k to visit k+1 (cyclically)
    in_edge: dict[tuple[int, int], int] = {}
    out_edge: dict[tuple[int, int], int] = {}
    occurrence: dict[int, int] = {}
    order_of: dict[tuple[float, int], int] = {}
    for pos, (t, idx) in enumerate(visits):
        visit_no = occurrence.get(idx, 0)
        occurrence[idx] = visit_no + 1
        in_edge[(idx, visit_no)] = (pos - 1) % n_visits
        out_edge[(idx, visit_no)] = pos

    crossings = []
    for idx, c in enumerate(d.crossings):
        t1, t2 = c.double_point.t1 % TWO_PI, c.double_point.t2 % TWO_PI
        first_is_t1 = t1 < t2
        # visit numbers in traversal order relative to (t1, t2) storage
        v_t1 = 0 if first_is_t1 else 1
        v_t2 = 1 - v_t1
        _, d1a, d2a = f.jets(c.double_point.t1, 2)
        _, d1b, d2b = f.jets(c.double_point.t2, 2)
        ends = [
            (math.atan2(-d2a, -d1a), in_edge[(idx, v_t1)], "a", True),
            (math.atan2(d2a, d1a), out_edge[(idx, v_t1)], "a", False),
            (math.atan2(-d2b, -d1b), in_edge[(idx, v_t2)], "b", True),
            (math.atan2(d2b, d1b), out_edge[(idx, v_t2)], "b", False),
        ]
        ends.sort(key=lambda e: e[0])
        under = "b" if c.over_branch == "a" else "a"
        start = next(
            i for i, e in enumerate(ends) if e[2] == under and e[3]
        )
        rotated = [ends[(start + i) % 4] for i in range(4)]
        if rotated[1][2] == under or rotated[3][2] == under:
            raise HoloknotError("branch ends do not alternate around the crossing")
        over_in = 1 if rotated[1][3] else 3
        crossings.append(
            CrossingEnds(tuple(e[1] for e in rotated), over_in, c.sign)
        )
    return CrossingCode(tuple(crossings), n_visits)


# ---- bracket state sum -------------------------------------------------------


def kauffman_bracket(code: CrossingCode) -> LaurentPolynomial:
    """Full state sum in the framing variable A.

    Every crossing is smoothed two ways; the A-smoothing joins each
    under-strand end to its counterclockwise successor. Loops are counted by
    union-find over edge ids.
    """
    n = len(code.crossings)
    if n > MAX_CROSSINGS:
        raise TooManyCrossings(f"{n} crossings exceeds the budget of {MAX_CROSSINGS}")
    if n == 0:
        return LaurentPolynomial.one()

    a_pairs = []
    b_pairs = []
    for c in code.crossings:
        e = c.edges
        # under ends at slots 0, 2: CCW successor pairing for A
        a_pairs.append(((e[0], e[1]), (e[2], e[3])))
        b_pairs.append(((e[0], e[3]), (e[2], e[1])))

    d_poly = LaurentPolynomial({2: -1, -2: -1})
    total: dict[int, int] = {}
    n_edges = code.n_edges
    parent = list(range(n_edges))

    def find(x, parent):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for state in range(1 << n):
        parent = list(range(n_edges))
        a_count = 0
        for i in range(n):
            if state >> i & 1:
                pairs = a_pairs[i]
                a_count += 1
            else:
                pairs = b_pairs[i]
            for x, y in pairs:
                rx, ry = find(x, parent), find(y, parent)
                if rx != ry:
                    parent[rx] = ry
        loops = len({find(x, parent) for x in range(n_edges)})
        exp_a = a_count - (n - a_count)
        term = LaurentPolynomial.monomial(1, exp_a) * d_poly ** (loops - 1)
        for e, c in term.coeffs.items():
            total[e] = total.get(e, 0) + c
    return LaurentPolynomial(total)


def jones_in_a(code: CrossingCode) -> LaurentPolynomial:
    """Writhe-normalized bracket: (-A^3)^(-w) <D>, an isotopy invariant.

    Equals the Jones polynomial V(t) under t = A^-4.
    """
    bracket = kauffman_bracket(code)
    w = code.writhe
    norm = LaurentPolynomial.monomial((-1) ** (w % 2), -3 * w)
    return norm * bracket


def jones_t_to_a(poly_t: dict[int, int]) -> LaurentPolynomial:
    """Convert a Jones polynomial in t into the A variable (t = A^-4)."""
    return LaurentPolynomial({-4 * e: c for e, c in poly_t.items()})


# ---- knot table ---------------------------------------------------------------


@dataclass(frozen=True)
class KnotTableEntry:
    name: str
    genus: int
    braid_index: int
    jones_plus: LaurentPolynomial    # in A
    jones_minus: LaurentPolynomial   # mirror chirality, in A

    def to_dict(self) -> dict:
        return {"name": self.name, "genus": self.genus, "braid_index": self.braid_index}


def _load_raw_table() -> dict:
    with resources.files("holoknot.data").joinpath("knot_table.json").open() as fh:
        return json.load(fh)


@lru_cache(maxsize=1)
def knot_table(self_test: bool = True) -> tuple[KnotTableEntry, ...]:
    """Built-in table; reference codes are re-computed through the bracket on
    first load and must reproduce the stored polynomials exactly.
    """
    raw = _load_raw_table()
    entries = []
    for item in raw["entries"]:
        plus = jones_t_to_a({int(k): v for k, v in item["jones_t"].items()})
        entries.append(
            KnotTableEntry(
                name=item["name"],
                genus=item["genus"],
                braid_index=item["braid_index"],
                jones_plus=plus,
                jones_minus=plus.mirror(),
            )
        )
    if self_test:
        failures = table_self_test(raw, tuple(entries))
        if failures:
            raise HoloknotError(f"knot table self-test failed: {failures}")
    return tuple(entries)


def table_self_test(raw: dict | None = None, entries: tuple[KnotTableEntry, ...] | None = None) -> list[str]:
    """Re-derive table polynomials from stored reference codes."""
    raw = raw or _load_raw_table()
    if entries is None:
        entries = knot_table()
    by_name = {e.name: e for e in entries}
    failures = []
    for item in raw["entries"]:
        pd = item.get("reference_pd")
        if not pd:
            continue
        code = from_pd_code(pd)
        computed = jones_in_a(code)
        entry = by_name[item["name"]]
        if computed == entry.jones_plus:
            pass
        elif computed == entry.jones_minus:
            pass
        else:
            failures.append(f"{item['name']}: bracket does not reproduce stored Jones")
        if computed.mirror() != jones_in_a(code.mirror()):
            failures.append(f"{item['name']}: mirror symmetry broken")
    return failures


def identify(code: CrossingCode) -> KnotTableEntry | None:
    """Match the writhe-normalized Jones polynomial against the table."""
    poly = jones_in_a(code)
    for entry in knot_table():
        if poly == entry.jones_plus or poly == entry.jones_minus:
            return entry
    return None
