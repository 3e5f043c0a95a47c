"""Exhaustive ground truth: topology census, brute-force metric search, cross checks."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Sequence

from .distance import DistanceMatrix, ROMetric, generated_topology
from .documents import parse_rational
from .errors import BudgetError, RometricError
from .finite_topology import (
    FiniteTopology,
    GroundSet,
    close_subbasis,
    find_open_singleton,
    is_t0,
    is_topology,
    kolmogorov_quotient,
)
from .generalized import GeneralizedSpace, generalized_topology, universal_generalized_metrization
from .metrization import lift_from_quotient, metrize_finite, verify_metrization

log = logging.getLogger(__name__)

MAX_CENSUS_POINTS = 4


@dataclass(frozen=True)
class TopologyCensus:
    n: int
    topologies: tuple[FiniteTopology, ...]

    @property
    def count(self) -> int:
        return len(self.topologies)

    def __iter__(self):
        return iter(self.topologies)

    def __len__(self) -> int:
        return len(self.topologies)


def _families(n: int):
    """Every family of subsets of an n-point set, as a bitmask over subset masks."""
    return range(1 << (1 << n))


def _members(fam: int, n: int) -> list[int]:
    return [s for s in range(1 << n) if fam >> s & 1]


def _closed_pairwise(fam: int, members: list[int], full: int) -> bool:
    if not fam & 1 or not fam >> full & 1:
        return False
    for i, a in enumerate(members):
        for b in members[i + 1 :]:
            if not fam >> (a | b) & 1 or not fam >> (a & b) & 1:
                return False
    return True


@lru_cache(maxsize=None)
def enumerate_topologies(n: int, labels: tuple[str, ...] | None = None) -> TopologyCensus:
    """All labeled topologies on ``n <= 4`` points by filtering every subset family.

    Ordered by the family's bitmask over subsets.
    """
    if not 0 <= n <= MAX_CENSUS_POINTS:
        raise BudgetError(f"census supports 0 <= n <= {MAX_CENSUS_POINTS}, got {n}")
    g = GroundSet(labels) if labels is not None else GroundSet.standard(n)
    if g.size != n:
        raise BudgetError("label count must equal n")
    full = (1 << n) - 1
    found = []
    for fam in _families(n):
        members = _members(fam, n)
        if _closed_pairwise(fam, members, full):
            found.append(FiniteTopology(g, tuple(members)))
    return TopologyCensus(n, tuple(found))


def census_disagreements(n: int) -> list[int]:
    """Families on which the two independent topology tests disagree.

    One test is the pairwise closure scan in :func:`is_topology`, the other
    asks whether the family is a fixed point of :func:`close_subbasis`.
    """
    g = GroundSet.standard(n)
    bad = []
    for fam in _families(n):
        members = _members(fam, n)
        closed = is_topology(members, g)
        fixed = close_subbasis(members, g).opens == FiniteTopology(g, tuple(members)).opens
        if closed != fixed:
            bad.append(fam)
    return bad


@dataclass(frozen=True)
class SearchBudget:
    values: tuple[Fraction, ...] = (Fraction(0), Fraction(1))
    max_candidates: int = 1_000_000

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if Fraction(0) not in vals:
            raise BudgetError("value set must contain 0")
        if any(v < 0 for v in vals):
            raise BudgetError("value set must be non-negative")
        if len(set(vals)) != len(vals):
            raise BudgetError("value set has repeated entries")
        if self.max_candidates < 1:
            raise BudgetError("max_candidates must be positive")


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a bounded search; ``complete`` means every candidate was examined."""

    metric: ROMetric | None
    candidates: int
    complete: bool

    @property
    def found(self) -> bool:
        return self.metric is not None


def brute_force_metrize(t: FiniteTopology, budget: SearchBudget = SearchBudget()) -> SearchResult:
    """First zero-diagonal matrix over ``budget.values`` that metrizes ``t``.

    Candidates are visited in lexicographic order of their off-diagonal entries
    (row-major), so the answer is reproducible.
    """
    g = t.ground
    n = g.size
    slots = [(i, j) for i in range(n) for j in range(n) if i != j]
    total = len(budget.values) ** len(slots)
    tried = 0
    for choice in product(budget.values, repeat=len(slots)):
        if tried >= budget.max_candidates:
            return SearchResult(None, tried, False)
        tried += 1
        rows = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), v in zip(slots, choice):
            rows[i][j] = v
        cand = DistanceMatrix(g, rows)
        if verify_metrization(t, cand):
            return SearchResult(ROMetric(g, cand.matrix), tried, tried == total)
    return SearchResult(None, tried, True)


@dataclass
class CrossCheckReport:
    n: int
    count: int = 0
    t0_count: int = 0
    passed: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, check: str, t: FiniteTopology, ok: bool, detail: str = "") -> None:
        self.passed.setdefault(check, 0)
        if ok:
            self.passed[check] += 1
        else:
            self.failures.append({"check": check, "topology": t.labeled_opens(), "detail": detail})

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "count": self.count,
            "t0_count": self.t0_count,
            "passed": dict(sorted(self.passed.items())),
            "ok": self.ok,
            "witnesses": self.failures,
        }


def _guard(fn):
    try:
        return fn(), ""
    except RometricError as exc:
        return False, f"{type(exc).__name__}: {exc}"


def cross_check_suite(n: int, universal: bool | None = None) -> CrossCheckReport:
    """Run every module's guarantees over the full census on ``n`` points.

    The universal generalized construction is included for ``n <= 3`` unless
    ``universal`` says otherwise.
    """
    census = enumerate_topologies(n)
    if universal is None:
        universal = n <= 3
    report = CrossCheckReport(n, count=census.count)
    for t in census:
        q = kolmogorov_quotient(t)
        ok, why = _guard(lambda: bool(verify_metrization(t, metrize_finite(t))))
        report.record("metrize_finite", t, ok, why)
        report.record("quotient_t0", t, is_t0(q.quotient))
        ok, why = _guard(
            lambda: generated_topology(lift_from_quotient(t, q, metrize_finite(q.quotient))).opens == t.opens
        )
        report.record("quotient_lift", t, ok, why)
        if is_t0(t):
            report.t0_count += 1
            if n > 0:
                ok, why = _guard(lambda: t.is_open(t.ground.mask([find_open_singleton(t)])))
                report.record("open_singleton", t, ok, why)
        if universal:

            def roundtrip():
                m, fam = universal_generalized_metrization(t)
                return generalized_topology(GeneralizedSpace(m, fam)).opens == t.opens

            ok, why = _guard(roundtrip)
            report.record("universal", t, ok, why)
    log.info("cross check n=%d: %d topologies, %d failures", n, report.count, len(report.failures))
    return report


def parse_values(text: str | Sequence) -> tuple[Fraction, ...]:
    if isinstance(text, str):
        return tuple(parse_rational(v.strip()) for v in text.split(",") if v.strip())
    return tuple(Fraction(v) for v in text)
