"""Building R.O-metrics that realize a given finite topology."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .distance import ROMetric, generated_topology, rometric_violations
from .errors import GroundMismatchError, ParseError, PreconditionError
from .finite_topology import (
    FiniteTopology,
    GroundSet,
    QuotientResult,
    close_subbasis,
    sierpinski,
)

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class PointedSubbasis:
    """A subbasis given as one open set per point, each containing its point."""

    topology: FiniteTopology
    assignment: tuple[int, ...]

    def __post_init__(self):
        t = self.topology
        g = t.ground
        if len(self.assignment) != g.size:
            raise PreconditionError("assignment must give one set per point")
        for i, s in enumerate(self.assignment):
            if not s >> i & 1:
                raise PreconditionError(f"{g.labels[i]} is not in its assigned set {g.format(s)}")
            if not t.is_open(s):
                raise PreconditionError(f"set {g.format(s)} assigned to {g.labels[i]} is not open")
        if close_subbasis(self.assignment, g) != t:
            raise PreconditionError("assigned sets do not generate the topology")

    @classmethod
    def from_labels(cls, topology: FiniteTopology, assignment: dict) -> "PointedSubbasis":
        g = topology.ground
        return cls(topology, tuple(g.mask(assignment[lab]) for lab in g.labels))


def metrize_from_pointed_subbasis(ps: PointedSubbasis) -> ROMetric:
    """``d(x, y) = 0`` if ``y`` lies in the set assigned to ``x``, else 1."""
    g = ps.topology.ground
    rows = tuple(
        tuple(ZERO if s >> j & 1 else ONE for j in range(g.size)) for s in ps.assignment
    )
    return ROMetric(g, rows)


def metrize_finite(t: FiniteTopology) -> ROMetric:
    """Two-valued metric whose balls are the minimal open sets and the whole space."""
    return metrize_from_pointed_subbasis(PointedSubbasis(t, t.minimal_opens))


def lift_from_quotient(t: FiniteTopology, q: QuotientResult, dq: ROMetric) -> ROMetric:
    """Pull a metric on the Kolmogorov quotient back to the original points.

    Points in the same class are at distance 0; otherwise the distance is the
    one between their classes.
    """
    if dq.ground.size != q.quotient.ground.size:
        raise GroundMismatchError("quotient metric has the wrong number of points")
    if generated_topology(dq).opens != q.quotient.opens:
        raise PreconditionError("metric does not generate the quotient topology")
    cm = q.class_map
    n = t.ground.size
    rows = tuple(
        tuple(ZERO if cm[i] == cm[j] else dq.matrix[cm[i]][cm[j]] for j in range(n)) for i in range(n)
    )
    return ROMetric(t.ground, rows)


@dataclass(frozen=True)
class MetrizationCheck:
    ok: bool
    missing: tuple[int, ...] = ()
    extra: tuple[int, ...] = ()
    violations: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


def verify_metrization(t: FiniteTopology, m) -> MetrizationCheck:
    """Does ``m`` satisfy the R.O axioms and generate exactly ``t``?"""
    if m.ground != t.ground:
        raise GroundMismatchError("topology and metric are over different ground sets")
    bad = tuple(rometric_violations(m))
    if bad:
        return MetrizationCheck(False, violations=bad)
    got = generated_topology(m)
    want = set(t.opens)
    have = set(got.opens)
    missing = tuple(u for u in t.opens if u not in have)
    extra = tuple(u for u in got.opens if u not in want)
    return MetrizationCheck(not missing and not extra, missing, extra)


EXAMPLE_NAMES = ("three_point", "particular_set", "paired_cofinite", "sierpinski")


@dataclass(frozen=True)
class ExampleSpec:
    """Parameters for one of the worked constructions.

    ``labels`` defaults per example; ``subset`` is the distinguished set A for
    ``particular_set``; ``pairs`` overrides consecutive pairing for
    ``paired_cofinite``.
    """

    name: str
    labels: tuple[str, ...] | None = None
    subset: tuple[str, ...] | None = None
    pairs: tuple[tuple[str, str], ...] | None = None


_DEFAULT_LABELS = {
    "three_point": ("a", "b", "c"),
    "particular_set": ("1", "2", "3"),
    "paired_cofinite": ("x1", "x2", "x3", "x4"),
    "sierpinski": ("0", "1"),
}


def builtin_example(example: ExampleSpec | str) -> tuple[FiniteTopology, ROMetric]:
    """Target topology and metric for a named worked example."""
    if isinstance(example, str):
        example = ExampleSpec(example)
    if example.name not in _DEFAULT_LABELS:
        raise ParseError(f"unknown example {example.name!r}; choose from {', '.join(EXAMPLE_NAMES)}")
    g = GroundSet(tuple(example.labels or _DEFAULT_LABELS[example.name]))
    build = {
        "three_point": _three_point,
        "particular_set": _particular_set,
        "paired_cofinite": _paired_cofinite,
        "sierpinski": _sierpinski,
    }[example.name]
    return build(g, example)


def _three_point(g: GroundSet, example: ExampleSpec):
    if g.size != 3:
        raise PreconditionError("three_point needs exactly three labels")
    a, b, c = g.labels
    vals = {(a, b): 1, (b, c): 1, (a, c): 2}
    m = ROMetric(g, tuple(tuple(Fraction(vals.get((x, y), 0)) for y in g.labels) for x in g.labels))
    t = FiniteTopology(g, (0, g.mask([a]), g.mask([a, b]), g.full))
    return t, m


def _particular_set(g: GroundSet, example: ExampleSpec):
    A = g.mask(example.subset if example.subset is not None else g.labels[:1])
    if not A:
        raise PreconditionError("particular_set needs a nonempty distinguished set")
    # zero diagonal overrides the "target outside A" rule
    rows = tuple(
        tuple(ZERO if (i == j or A >> j & 1) else ONE for j in range(g.size)) for i in range(g.size)
    )
    opens = (0,) + tuple(u for u in range(g.full + 1) if u & A == A)
    return FiniteTopology(g, opens), ROMetric(g, rows)


def _paired_cofinite(g: GroundSet, example: ExampleSpec):
    if example.pairs is not None:
        pairs = [(g.index(x), g.index(y)) for x, y in example.pairs]
    else:
        if g.size % 2:
            raise PreconditionError("paired_cofinite needs an even number of points")
        pairs = [(k, k + 1) for k in range(0, g.size, 2)]
    partner: dict[int, int] = {}
    for x, y in pairs:
        if x == y or x in partner or y in partner:
            raise PreconditionError("pairs must be disjoint and consist of distinct points")
        partner[x], partner[y] = y, x
    if len(partner) != g.size:
        raise PreconditionError("every point must be paired")
    rows = tuple(
        tuple(ONE if partner[i] == j else ZERO for j in range(g.size)) for i in range(g.size)
    )
    subbasis = [g.full & ~(1 << partner[i]) for i in range(g.size)] + [g.full]
    return close_subbasis(subbasis, g), ROMetric(g, rows)


def _sierpinski(g: GroundSet, example: ExampleSpec):
    if g.size != 2:
        raise PreconditionError("sierpinski needs exactly two labels")
    return sierpinski(g.labels), sierpinski_metric(g.labels)


def sierpinski_metric(labels: Sequence[str] = ("0", "1")) -> ROMetric:
    """``d(1,0) = 1`` and every other distance 0; generates the Sierpinski topology."""
    return ROMetric(GroundSet(tuple(labels)), ((ZERO, ZERO), (ONE, ZERO)))
