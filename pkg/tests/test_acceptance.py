"""Acceptance gate: one test per criterion, each printing a single PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the lines appear even when
output capture is on.
"""

import io
import random
import time
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path

import pytest

from rometric import (
    GroundSet,
    ROMetric,
    check_rometric_axioms,
    classify_axioms,
    distinct_balls,
    find_open_singleton,
    generated_topology,
    is_t0,
    kolmogorov_quotient,
    normalize,
)
from rometric.errors import ValidationError
from rometric.cli import run
from rometric.generalized import (
    GeneralizedSpace,
    MapFamily,
    check_generalized_axioms,
    embedding_report,
    generalized_topology,
    generalized_violation,
    sierpinski_embed,
    universal_generalized_metrization,
)
from rometric.metrization import lift_from_quotient, metrize_finite, verify_metrization
from rometric.oracle import enumerate_topologies
from rometric.real_line import Interval, IntervalSet, eval_line_metric, interval_membership, line_ball, same_set

from conftest import matrix, random_matrix, repair_to_rometric

F = Fraction
GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def gate(capsys):
    """Yield a context manager that times a criterion and prints its verdict."""

    @contextmanager
    def criterion(number, title, limit=None):
        start = time.perf_counter()
        detail = {}
        ok = False
        try:
            yield detail
            elapsed = time.perf_counter() - start
            ok = limit is None or elapsed < limit
            if not ok:
                detail["over budget"] = f"{elapsed:.2f}s >= {limit}s"
        finally:
            elapsed = time.perf_counter() - start
            extra = ", ".join(f"{k}={v}" for k, v in detail.items())
            budget = f" / {limit}s" if limit else ""
            with capsys.disabled():
                print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({elapsed:.2f}s{budget}{'; ' + extra if extra else ''})")
        assert ok, detail

    return criterion


def test_1_axiom_generalization(gate):
    rng = random.Random(1)
    grounds = {n: [str(i) for i in range(n)] for n in range(1, 6)}
    with gate(1, "quasi-pseudo implies R.O on 10,000 random matrices", limit=5) as info:
        qp = 0
        for _ in range(10_000):
            rows = random_matrix(rng, rng.randint(1, 5))
            p = classify_axioms(matrix(grounds[len(rows)], rows))
            assert p.lattice_ok()
            if p.is_quasi_pseudo:
                qp += 1
                assert p.is_ro
        info["quasi_pseudo"] = qp
        assert qp > 0


def test_2_three_point_pipeline(gate, ex22):
    with gate(2, "three-point matrix: balls and generated topology exact"):
        m = check_rometric_axioms(ex22)
        got = [(b.center, m.ground.members(b.members)) for b in distinct_balls(m)]
        assert got == [
            ("a", ["a"]),
            ("a", ["a", "b"]),
            ("a", ["a", "b", "c"]),
            ("b", ["a", "b"]),
            ("b", ["a", "b", "c"]),
            ("c", ["a", "b", "c"]),
        ]
        assert generated_topology(m).labeled_opens() == [[], ["a"], ["a", "b"], ["a", "b", "c"]]


def test_3_normalization(gate):
    rng = random.Random(3)
    grounds = {n: GroundSet.standard(n) for n in range(1, 6)}
    samples = [repair_to_rometric(random_matrix(rng, rng.randint(1, 5))) for _ in range(10_000)]
    with gate(3, "normalized metric generates the same topology, 10,000 metrics", limit=10) as info:
        for rows in samples:
            m = ROMetric(grounds[len(rows)], rows)
            assert generated_topology(normalize(m)) == generated_topology(m)
        info["nonzero"] = sum(any(v for r in rows for v in r) for rows in samples)


def test_4_finite_metrization(gate):
    with gate(4, "metrize_finite round-trips every topology on 0..4 points", limit=30) as info:
        counts = []
        for n in range(5):
            census = enumerate_topologies.__wrapped__(n)
            counts.append(census.count)
            for t in census:
                m = metrize_finite(t)
                assert verify_metrization(t, m)
                assert generated_topology(m) == t
        info["counts"] = counts
        assert counts == [1, 1, 4, 29, 355]


def test_5_quotient_round_trips(gate):
    with gate(5, "quotient is T0, lift round-trips, open singleton exists", limit=30) as info:
        t0 = 0
        for n in range(5):
            for t in enumerate_topologies(n):
                q = kolmogorov_quotient(t)
                assert is_t0(q.quotient)
                lifted = lift_from_quotient(t, q, metrize_finite(q.quotient))
                assert generated_topology(lifted) == t
                if n and is_t0(t):
                    t0 += 1
                    a = find_open_singleton(t)
                    assert t.is_open(t.ground.mask([a]))
        info["t0_nonempty"] = t0
        assert t0 == 1 + 3 + 19 + 219


def test_6_generalized_counterexample(gate):
    with gate(6, "identity-only family fails the basis axiom with witness (id, x, 1, y)"):
        m = check_rometric_axioms(matrix("xyz", [[0, 0, 1], [0, 0, 0], [0, 0, 0]]))
        w = generalized_violation(m, MapFamily.identity_only(m.ground))
        assert w is not None and w.as_tuple() == ("id", "x", F(1), "y")
        with pytest.raises(ValidationError):
            check_generalized_axioms(m, MapFamily.identity_only(m.ground))


def test_7_universal_construction(gate):
    with gate(7, "universal generalized metrization and embedding, n <= 3", limit=60) as info:
        spaces = t0s = 0
        for n in range(4):
            for t in enumerate_topologies(n):
                m, fam = universal_generalized_metrization(t)
                assert generalized_violation(m, fam) is None
                assert generalized_topology(GeneralizedSpace(m, fam)) == t
                spaces += 1
                if n and is_t0(t):
                    report = embedding_report(sierpinski_embed(t, verify=False))
                    assert report == {"product_metric_valid": True, "product_topology": True, "subspace_topology": True}
                    t0s += 1
        info["topologies"] = spaces
        info["embedded"] = t0s


@pytest.mark.slow
def test_7_universal_construction_four_points(gate):
    with gate("7b", "universal generalized metrization and embedding, n = 4", limit=600) as info:
        skipped = 0
        for t in enumerate_topologies(4):
            m, fam = universal_generalized_metrization(t)
            assert generalized_topology(GeneralizedSpace(m, fam)) == t
            if is_t0(t):
                report = embedding_report(sierpinski_embed(t, verify=False))
                # product checks are skipped (None) when the power has too many coordinates
                assert report["subspace_topology"] is True
                assert False not in report.values()
                skipped += report["product_topology"] is None
        info["topologies"] = 355
        info["product_checks_skipped"] = skipped


def test_8_real_line(gate):
    grid = sorted({F(k, 6) for k in range(-18, 19)} | {F(1, n) for n in range(1, 14)} | {F(2, 5), F(5, 7), F(-7, 5), F(9, 4)})
    assert len(grid) == 50
    with gate(8, "real-line balls agree with the distance formulas on a 50-point grid", limit=1) as info:
        checks = 0
        for name in ("lower_limit", "k_topology"):
            for c in grid:
                for r in (F(1, 2), F(1), F(3, 2), F(2)):
                    b = line_ball(name, c, r)
                    for q in grid:
                        assert interval_membership(b.members, q) == (eval_line_metric(name, c, q) < r)
                        checks += 1
                    if name == "lower_limit" and r <= 1:
                        assert same_set(b.members, IntervalSet((Interval(c, c + r, lo_closed=True),)))
        info["checks"] = checks


def test_9_cli_golden(gate, tmp_path):
    def invoke(*argv):
        out = io.StringIO()
        code = run([str(a) for a in argv], stdout=out, stderr=io.StringIO())
        return code, out.getvalue()

    with gate(9, "CLI transcripts reproduce golden outputs byte for byte"):
        assert invoke("classify", "--metric", GOLDEN / "ex2.json") == (0, (GOLDEN / "classify_ex2.out").read_text())
        assert invoke("topology", "--metric", GOLDEN / "zero2.json") == (0, (GOLDEN / "topology_zero2.out").read_text())
        code, out = invoke("metrize", "--topology", GOLDEN / "sierpinski.json")
        assert (code, out) == (0, (GOLDEN / "metrize_sierpinski.out").read_text())
        path = tmp_path / "out.json"
        path.write_text(out)
        code, out = invoke("verify", "--topology", GOLDEN / "sierpinski.json", "--metric", path)
        assert (code, out) == (0, (GOLDEN / "verify_sierpinski.out").read_text())
