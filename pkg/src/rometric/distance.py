"""Exact non-symmetric distance matrices, axiom checks, balls and tau_d.

Entries are :class:`fractions.Fraction`. Triple scans run on an integer copy
of the matrix scaled by the common denominator, which keeps comparisons exact
while letting numpy do the O(n^3) work.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import DomainError, ValidationError
from .finite_topology import FiniteTopology, GroundSet, bits, close_subbasis, subbasis_minimal_opens


def as_fraction(v) -> Fraction:
    if isinstance(v, float):
        raise TypeError("floating point distances are not accepted; use Fraction or 'p/q' strings")
    return Fraction(v)


@dataclass(frozen=True)
class DistanceMatrix:
    """A square matrix of rationals over a ground set, with no axioms assumed.

    ``matrix[i][j]`` is the distance from point ``i`` to point ``j``.
    """

    ground: GroundSet
    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(as_fraction(v) for v in row) for row in self.matrix)
        n = self.ground.size
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"matrix must be {n}x{n}")
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def from_rows(cls, labels: Sequence[str], rows) -> "DistanceMatrix":
        return cls(GroundSet(tuple(labels)), rows)

    @classmethod
    def from_function(cls, ground: GroundSet, fn) -> "DistanceMatrix":
        n = ground.size
        return cls(ground, tuple(tuple(fn(i, j) for j in range(n)) for i in range(n)))

    @property
    def size(self) -> int:
        return self.ground.size

    def d(self, x, y) -> Fraction:
        """Distance between two labels."""
        return self.matrix[self.ground.index(x)][self.ground.index(y)]

    @cached_property
    def scaled(self) -> tuple[np.ndarray, int]:
        """``(M, q)`` with ``M`` an integer array and ``matrix == M / q`` exactly."""
        q = 1
        for row in self.matrix:
            for v in row:
                q = math.lcm(q, v.denominator)
        ints = [[v.numerator * (q // v.denominator) for v in row] for row in self.matrix]
        peak = max((abs(v) for row in ints for v in row), default=0)
        dtype = np.int64 if peak < 2**60 else object
        return np.array(ints, dtype=dtype).reshape(self.size, self.size), q

    def relabel(self, ground: GroundSet):
        return type(self)(ground, self.matrix)


@dataclass(frozen=True)
class AxiomViolation:
    """One failed instance of an axiom.

    ``kind`` is ``"negative"``, ``"diagonal"`` (condition 1) or ``"triangle"``
    (condition 2, as ``(x, z, y)`` with ``d(x,y) > d(x,z) + d(z,y) != 0``).
    """

    kind: str
    points: tuple[str, ...]
    values: tuple[Fraction, ...]

    def describe(self) -> str:
        if self.kind == "negative":
            return f"d({self.points[0]},{self.points[1]}) = {self.values[0]} < 0"
        if self.kind == "diagonal":
            return f"d({self.points[0]},{self.points[0]}) = {self.values[0]} != 0"
        x, z, y = self.points
        lhs, a, b = self.values
        return f"d({x},{y}) = {lhs} > d({x},{z}) + d({z},{y}) = {a} + {b}"


def _negatives(m: DistanceMatrix) -> list[AxiomViolation]:
    lab = m.ground.labels
    return [
        AxiomViolation("negative", (lab[i], lab[j]), (v,))
        for i, row in enumerate(m.matrix)
        for j, v in enumerate(row)
        if v < 0
    ]


def _triangle_failures(M: np.ndarray, conditional: bool) -> list[tuple[int, int, int]]:
    """All ``(x, z, y)`` index triples failing the (conditional) triangle inequality."""
    n = M.shape[0]
    out = []
    for z in range(n):
        s = M[:, z][:, None] + M[z, :][None, :]
        bad = M > s
        if conditional:
            bad &= s != 0
        for x, y in zip(*np.nonzero(bad)):
            out.append((int(x), z, int(y)))
    out.sort()
    return out


def rometric_violations(m: DistanceMatrix) -> list[AxiomViolation]:
    """Every violation of the R.O axioms: sign, zero diagonal, conditional triangle."""
    out = _negatives(m)
    lab = m.ground.labels
    for i in range(m.size):
        if m.matrix[i][i] != 0:
            out.append(AxiomViolation("diagonal", (lab[i],), (m.matrix[i][i],)))
    M, _ = m.scaled
    for x, z, y in _triangle_failures(M, conditional=True):
        mx = m.matrix
        out.append(AxiomViolation("triangle", (lab[x], lab[z], lab[y]), (mx[x][y], mx[x][z], mx[z][y])))
    return out


class ROMetric(DistanceMatrix):
    """A distance matrix satisfying the R.O axioms.

    Construction validates: zero diagonal, non-negative entries, and
    ``d(x,y) <= d(x,z) + d(z,y)`` whenever the right side is nonzero.
    """

    def __post_init__(self):
        super().__post_init__()
        if not getattr(self, "_trusted", False):
            _raise_if_invalid(self)

    @classmethod
    def trusted(cls, ground: GroundSet, matrix) -> "ROMetric":
        """Skip validation; for constructions whose validity is proven and tested."""
        obj = cls.__new__(cls)
        object.__setattr__(obj, "_trusted", True)
        obj.__init__(ground, matrix)
        return obj


def _raise_if_invalid(m: DistanceMatrix) -> None:
    neg = _negatives(m)
    if neg:
        raise DomainError(f"negative distance: {neg[0].describe()}")
    bad = rometric_violations(m)
    if bad:
        raise ValidationError(f"not an R.O-metric ({len(bad)} violations): {bad[0].describe()}", bad)


def check_rometric_axioms(m: DistanceMatrix) -> ROMetric:
    """Promote ``m`` to an :class:`ROMetric` or raise with all violations attached."""
    if isinstance(m, ROMetric):
        return m
    return ROMetric(m.ground, m.matrix)


def is_rometric(m: DistanceMatrix) -> bool:
    return not rometric_violations(m)


@dataclass(frozen=True)
class AxiomProfile:
    """Which classical distance axiom systems a matrix satisfies.

    ``witnesses`` maps a failed property name to one failing instance.
    """

    is_ro: bool
    is_quasi_pseudo: bool
    is_pseudo: bool
    is_quasi: bool
    is_t0_quasi: bool
    is_metric: bool
    witnesses: dict = field(default_factory=dict)

    def flags(self) -> dict[str, bool]:
        return {
            "ro": self.is_ro,
            "quasi_pseudo": self.is_quasi_pseudo,
            "pseudo": self.is_pseudo,
            "quasi": self.is_quasi,
            "t0_quasi": self.is_t0_quasi,
            "metric": self.is_metric,
        }

    def lattice_ok(self) -> bool:
        imp = lambda a, b: (not a) or b  # noqa: E731
        return all(
            (
                imp(self.is_metric, self.is_pseudo and self.is_quasi),
                imp(self.is_pseudo, self.is_quasi_pseudo),
                imp(self.is_quasi, self.is_quasi_pseudo and self.is_t0_quasi),
                imp(self.is_t0_quasi, self.is_quasi_pseudo),
                imp(self.is_quasi_pseudo, self.is_ro),
            )
        )


def classify_axioms(m: DistanceMatrix) -> AxiomProfile:
    """Exhaustive pair/triple scan of symmetry, separation and both triangle forms.

    Requires non-negative entries and a zero diagonal.
    """
    neg = _negatives(m)
    if neg:
        raise DomainError(f"negative distance: {neg[0].describe()}")
    lab = m.ground.labels
    for i in range(m.size):
        if m.matrix[i][i] != 0:
            raise DomainError(f"nonzero diagonal at {lab[i]}")
    M, _ = m.scaled
    n = m.size
    witnesses: dict[str, dict] = {}

    def note(name, **w):
        witnesses.setdefault(name, w)

    cond = _triangle_failures(M, conditional=True)
    full = _triangle_failures(M, conditional=False)
    if cond:
        x, z, y = cond[0]
        note("ro", triple=[lab[x], lab[z], lab[y]])
    if full:
        x, z, y = full[0]
        note("triangle", triple=[lab[x], lab[z], lab[y]])
    asym = np.argwhere(M != M.T)
    if len(asym):
        x, y = asym[0]
        note("symmetry", pair=[lab[x], lab[y]])
    off = ~np.eye(n, dtype=bool)
    zeros = np.argwhere((M == 0) & off)
    if len(zeros):
        x, y = zeros[0]
        note("identity", pair=[lab[x], lab[y]])
    both = np.argwhere((M == 0) & (M.T == 0) & off)
    if len(both):
        x, y = both[0]
        note("t0", pair=[lab[x], lab[y]])

    tri = not full
    symmetric = not len(asym)
    identity = not len(zeros)
    t0 = not len(both)
    return AxiomProfile(
        is_ro=not cond,
        is_quasi_pseudo=tri,
        is_pseudo=tri and symmetric,
        is_quasi=tri and identity,
        is_t0_quasi=tri and t0,
        is_metric=tri and symmetric and identity,
        witnesses=witnesses,
    )


@dataclass(frozen=True)
class Ball:
    """``V_r(p) = {x : d(p,x) < r}``.

    ``threshold`` is the largest distance from the center still inside the
    ball, so ``members == {x : d(p,x) <= threshold}``; ``radius`` is the
    largest radius producing exactly this ball (the next distance value, or
    ``threshold + 1`` for the outermost ball).
    """

    center: str
    radius: Fraction
    threshold: Fraction
    members: int


def ball(m: DistanceMatrix, p, r) -> int:
    """Members of ``V_r(p)`` as a mask. Strict inequality, exact comparison."""
    r = as_fraction(r)
    if r <= 0:
        raise DomainError(f"radius must be positive, got {r}")
    row = m.matrix[m.ground.index(p)]
    return sum(1 << j for j, v in enumerate(row) if v < r)


def _row_balls(center: str, row: Sequence[Fraction], candidates: Sequence[int]) -> list[Ball]:
    values = sorted({row[j] for j in candidates})
    out = []
    for k, v in enumerate(values):
        radius = values[k + 1] if k + 1 < len(values) else v + 1
        members = sum(1 << j for j in candidates if row[j] <= v)
        out.append(Ball(center, radius, v, members))
    return out


def distinct_balls(m: DistanceMatrix) -> list[Ball]:
    """Every distinct ball, grouped by center in ground order, innermost first.

    One ball per distinct value in the center's row; together they are all
    ``V_r(p)`` for ``r > 0``.
    """
    out = []
    everyone = range(m.size)
    for i, lab in enumerate(m.ground.labels):
        out.extend(_row_balls(lab, m.matrix[i], everyone))
    return out


def ball_family(m: DistanceMatrix) -> set[int]:
    """Member masks of all distinct balls, from one sort per row of the scaled matrix."""
    M, _ = m.scaled
    fam = set()
    for row in M.tolist():
        acc = 0
        prev = None
        for j in sorted(range(len(row)), key=row.__getitem__):
            if prev is not None and row[j] != prev:
                fam.add(acc)
            acc |= 1 << j
            prev = row[j]
        if prev is not None:
            fam.add(acc)
    return fam


def generated_topology(m: DistanceMatrix) -> FiniteTopology:
    """tau_d: the topology with all balls as a subbasis."""
    return close_subbasis(ball_family(m), m.ground)


def generated_minimal_opens(m: DistanceMatrix) -> tuple[int, ...]:
    """Minimal neighbourhoods of tau_d without listing its opens."""
    return subbasis_minimal_opens(ball_family(m), m.ground)


def normalize(m: ROMetric) -> ROMetric:
    """Entrywise ``v -> v / (v + 1)``; same topology, all entries in [0, 1)."""
    rows = tuple(tuple(v / (v + 1) for v in row) for row in m.matrix)
    return ROMetric(m.ground, rows)


def zero_metric(ground: GroundSet) -> ROMetric:
    return ROMetric.trusted(ground, tuple((Fraction(0),) * ground.size for _ in range(ground.size)))


def members_of(m: DistanceMatrix, mask: int) -> list[str]:
    return [m.ground.labels[i] for i in bits(mask)]
