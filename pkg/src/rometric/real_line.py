"""Exact balls of the lower-limit and K-topology distances on the rationals.

``K`` is ``{1/n : n >= 1}``. Ball shapes are derived from the distance
formulas; the shapes one would write down by hand (the *nominal* shapes) are
kept alongside and compared, because for some radii they differ.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .distance import AxiomViolation, DistanceMatrix, rometric_violations
from .errors import DomainError, ParseError
from .finite_topology import GroundSet

LINE_METRICS = ("lower_limit", "k_topology")


def in_k(q: Fraction) -> bool:
    """Is ``q`` of the form ``1/n`` for a positive integer ``n``?"""
    q = Fraction(q)
    return q > 0 and q.numerator == 1


def fmt(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction
    lo_closed: bool = False
    hi_closed: bool = False
    minus_k: bool = False

    def __contains__(self, q) -> bool:
        q = Fraction(q)
        above = q >= self.lo if self.lo_closed else q > self.lo
        below = q <= self.hi if self.hi_closed else q < self.hi
        return above and below and not (self.minus_k and in_k(q))

    def __str__(self) -> str:
        s = f"{'[' if self.lo_closed else '('}{fmt(self.lo)}, {fmt(self.hi)}{']' if self.hi_closed else ')'}"
        return s + " \\ K" if self.minus_k else s


@dataclass(frozen=True)
class IntervalSet:
    """Finite union of intervals (each optionally minus ``K``), adjusted by finite point sets.

    ``k_tail = N`` adds the whole tail ``{1/n : n >= N}``. A rational is a
    member iff it lies in some piece, in ``includes`` or in the tail, and is
    not in ``excludes``.
    """

    pieces: tuple[Interval, ...] = ()
    includes: tuple[Fraction, ...] = ()
    excludes: tuple[Fraction, ...] = ()
    k_tail: int | None = None

    def __post_init__(self):
        inc = tuple(sorted({Fraction(q) for q in self.includes}))
        exc = tuple(sorted({Fraction(q) for q in self.excludes}))
        if set(inc) & set(exc):
            raise ValueError("includes and excludes must be disjoint")
        object.__setattr__(self, "includes", inc)
        object.__setattr__(self, "excludes", exc)
        object.__setattr__(self, "pieces", tuple(self.pieces))

    def __contains__(self, q) -> bool:
        q = Fraction(q)
        if q in self.excludes:
            return False
        if q in self.includes or any(q in p for p in self.pieces):
            return True
        return self.k_tail is not None and in_k(q) and q.denominator >= self.k_tail

    def __str__(self) -> str:
        parts = [str(p) for p in self.pieces]
        if self.includes:
            parts.append("{" + ", ".join(fmt(q) for q in self.includes) + "}")
        if self.k_tail is not None:
            parts.append(f"{{1/n : n ≥ {self.k_tail}}}")
        s = " ∪ ".join(parts) if parts else "∅"
        if self.excludes:
            s += " \\ {" + ", ".join(fmt(q) for q in self.excludes) + "}"
        return s

    def critical_points(self) -> list[Fraction]:
        pts = {Fraction(0)}
        for p in self.pieces:
            pts.update((p.lo, p.hi))
        pts.update(self.includes)
        pts.update(self.excludes)
        if self.k_tail is not None:
            pts.add(Fraction(1, self.k_tail))
        return sorted(pts)


def interval_membership(s: IntervalSet, q) -> bool:
    return q in s


def _non_k_between(lo: Fraction | None, hi: Fraction | None) -> Fraction:
    """Some rational strictly between ``lo`` and ``hi`` that is not in K."""
    if lo is None:
        q = hi - 1
        while in_k(q):
            q -= Fraction(1, 3)
        return q
    if hi is None:
        q = lo + 1
        while in_k(q):
            q += Fraction(1, 3)
        return q
    q = (lo + hi) / 2
    while in_k(q):
        q = (q + hi) / 2
    return q


def same_set(a: IntervalSet, b: IntervalSet) -> bool:
    """Exact equality of two interval sets.

    Between consecutive critical points, membership of non-K rationals is
    constant, and membership of ``1/n`` is constant once ``1/n`` drops below
    the smallest positive critical point; testing one point per region decides
    equality.
    """
    pts = sorted(set(a.critical_points()) | set(b.critical_points()))
    probes = list(pts)
    probes.append(_non_k_between(None, pts[0]))
    probes.append(_non_k_between(pts[-1], None))
    probes.extend(_non_k_between(x, y) for x, y in zip(pts, pts[1:]))
    pos = [p for p in pts if p > 0]
    limit = math.ceil(1 / pos[0]) + 2 if pos else 2
    probes.extend(Fraction(1, n) for n in range(1, limit + 2))
    return all((q in a) == (q in b) for q in probes)


def eval_line_metric(name: str, x, y) -> Fraction:
    """Distance from ``x`` to ``y`` under the named metric."""
    x, y = Fraction(x), Fraction(y)
    if x == y:
        return Fraction(0)
    if name == "lower_limit":
        return x - y + 1 if y < x else y - x
    if name == "k_topology":
        if not in_k(x) and in_k(y):
            return abs(x - y) + 1
        return abs(x - y)
    raise ParseError(f"unknown line metric {name!r}; choose from {', '.join(LINE_METRICS)}")


def k_points_between(lo: Fraction, hi: Fraction) -> tuple[tuple[Fraction, ...], int | None]:
    """``K`` inside the open interval ``(lo, hi)`` as ``(finite points, tail start)``."""
    if hi <= 0 or lo >= 1:
        return (), None
    # 1/n < hi  <=>  n > 1/hi
    n_min = 1 if hi > 1 else math.floor(1 / hi) + 1
    if lo <= 0:
        return (), n_min
    # 1/n > lo  <=>  n < 1/lo
    n_max = math.ceil(1 / lo) - 1
    return tuple(Fraction(1, n) for n in range(n_min, n_max + 1)), None


@dataclass(frozen=True)
class LineBall:
    """A ball computed from the distance formula, with its nominal textbook shape."""

    metric: str
    center: Fraction
    radius: Fraction
    members: IntervalSet
    nominal: IntervalSet

    @property
    def matches_nominal(self) -> bool:
        return same_set(self.members, self.nominal)

    def __contains__(self, q) -> bool:
        return q in self.members

    def __str__(self) -> str:
        return str(self.members)


def line_ball(name: str, center, r) -> LineBall:
    """``V_r(center)`` as an exact :class:`IntervalSet`."""
    c, r = Fraction(center), Fraction(r)
    if r <= 0:
        raise DomainError(f"radius must be positive, got {r}")
    if name == "lower_limit":
        nominal = IntervalSet((Interval(c, c + r, lo_closed=True),)) if r <= 1 else IntervalSet((Interval(c - r, c + r),))
        # y >= c needs y - c < r; y < c needs c - y + 1 < r, i.e. y > c - r + 1
        if r <= 1:
            members = IntervalSet((Interval(c, c + r, lo_closed=True),))
        else:
            members = IntervalSet((Interval(c - r + 1, c + r),))
        return LineBall(name, c, r, members, nominal)
    if name == "k_topology":
        if in_k(c):
            members = IntervalSet((Interval(c - r, c + r),))
            return LineBall(name, c, r, members, members)
        nominal = IntervalSet((Interval(c - r, c + r, minus_k=r <= 1),))
        # points of K are one unit further away than their plain distance
        finite, tail = k_points_between(c - r + 1, c + r - 1) if r > 1 else ((), None)
        members = IntervalSet((Interval(c - r, c + r, minus_k=True),), includes=finite, k_tail=tail)
        return LineBall(name, c, r, members, nominal)
    raise ParseError(f"unknown line metric {name!r}; choose from {', '.join(LINE_METRICS)}")


def check_line_axioms(name: str, sample: Iterable) -> list[AxiomViolation]:
    """R.O axiom violations of the named metric restricted to a finite sample."""
    pts: Sequence[Fraction] = sorted({Fraction(q) for q in sample})
    ground = GroundSet(tuple(fmt(q) for q in pts))
    m = DistanceMatrix.from_function(ground, lambda i, j: eval_line_metric(name, pts[i], pts[j]))
    return rometric_violations(m)
