import math
import random
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from rometric import DistanceMatrix, FiniteTopology, GroundSet
from rometric.finite_topology import bits

VALUES = tuple(Fraction(v) for v in ("0", "1/2", "1", "2", "3"))


def matrix(labels, rows):
    return DistanceMatrix.from_rows(list(labels), [[Fraction(v) for v in r] for r in rows])


def topo(labels, *opens):
    g = GroundSet(tuple(labels))
    return FiniteTopology(g, tuple(g.mask(o) for o in opens))


def naive_closure(family, n):
    """Unions of finite intersections, computed literally (exponential; tiny n only)."""
    full = (1 << n) - 1
    fam = list(set(family))
    inters = {full}
    for k in range(1, len(fam) + 1):
        for combo in combinations(fam, k):
            acc = full
            for s in combo:
                acc &= s
            inters.add(acc)
    inters = sorted(inters)
    opens = set()
    for k in range(len(inters) + 1):
        for combo in combinations(inters, k):
            acc = 0
            for s in combo:
                acc |= s
            opens.add(acc)
    return opens


def brute_profile(rows):
    """Axiom flags by literal pair/triple loops over Fractions."""
    n = len(rows)
    idx = range(n)
    tri = all(rows[x][y] <= rows[x][z] + rows[z][y] for x in idx for y in idx for z in idx)
    cond = all(
        rows[x][y] <= rows[x][z] + rows[z][y]
        for x in idx for y in idx for z in idx
        if rows[x][z] + rows[z][y] != 0
    )
    sym = all(rows[x][y] == rows[y][x] for x in idx for y in idx)
    ident = all(rows[x][y] != 0 for x in idx for y in idx if x != y)
    t0 = all(not (rows[x][y] == 0 == rows[y][x]) for x in idx for y in idx if x != y)
    return {
        "ro": cond,
        "quasi_pseudo": tri,
        "pseudo": tri and sym,
        "quasi": tri and ident,
        "t0_quasi": tri and t0,
        "metric": tri and sym and ident,
    }


def random_matrix(rng, n, values=VALUES):
    return [[Fraction(0) if i == j else rng.choice(values) for j in range(n)] for i in range(n)]


def repair_to_rometric(rows):
    """Lower entries along nonzero detours until the R.O triangle holds everywhere."""
    n = len(rows)
    if n == 0:
        return []
    q = math.lcm(*(v.denominator for r in rows for v in r))
    M = np.array([[int(v * q) for v in r] for r in rows], dtype=np.int64)
    while True:
        before = M.copy()
        for z in range(n):
            s = M[:, z][:, None] + M[z, :][None, :]
            M = np.where((s != 0) & (M > s), s, M)
        if np.array_equal(before, M):
            return [[Fraction(int(v), q) for v in r] for r in M]


def random_rometric_rows(rng, n):
    rows = random_matrix(rng, n)
    return repair_to_rometric(rows)


@pytest.fixture
def rng():
    return random.Random(20261016)


@pytest.fixture
def ex22():
    return matrix("abc", [[0, 1, 2], [0, 0, 1], [0, 0, 0]])


@pytest.fixture
def sierpinski_top():
    return topo("01", [], ["1"], ["0", "1"])


def members(ground, mask):
    return [ground.labels[i] for i in bits(mask)]
