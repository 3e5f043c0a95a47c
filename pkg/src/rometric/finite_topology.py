"""Finite topological spaces over a labeled ground set.

Subsets of the ground set are plain ``int`` bitmasks: bit ``i`` is set when
the point with index ``i`` is a member. A :class:`FiniteTopology` stores its
open sets as a tuple of masks sorted by ``(popcount, mask)``, so two
topologies on the same ground compare equal exactly when they have the same
opens.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .errors import ParseError, PreconditionError, ValidationError


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def canonical_key(mask: int) -> tuple[int, int]:
    return popcount(mask), mask


@dataclass(frozen=True)
class GroundSet:
    """An ordered list of distinct point labels."""

    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        if len(set(labels)) != len(labels):
            raise ParseError(f"duplicate point labels in {list(labels)}")

    @classmethod
    def standard(cls, n: int) -> "GroundSet":
        """``a, b, c, ...`` for ``n <= 26``, otherwise ``p0, p1, ...``."""
        if n <= 26:
            return cls(tuple("abcdefghijklmnopqrstuvwxyz"[:n]))
        return cls(tuple(f"p{i}" for i in range(n)))

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    def index(self, label) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise ParseError(f"unknown point {label!r}") from None

    def mask(self, labels: Iterable) -> int:
        m = 0
        for lab in labels:
            m |= 1 << self.index(lab)
        return m

    def members(self, mask: int) -> list[str]:
        return [self.labels[i] for i in bits(mask)]

    def format(self, mask: int) -> str:
        return "{" + ",".join(self.members(mask)) + "}"


@dataclass(frozen=True)
class FiniteTopology:
    """A ground set together with a canonical family of open sets.

    Use :func:`validate_topology` or :func:`close_subbasis` to build one from
    arbitrary input; the constructor only canonicalizes ordering.
    """

    ground: GroundSet
    opens: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "opens", tuple(sorted(set(self.opens), key=canonical_key)))

    @cached_property
    def _open_set(self) -> frozenset[int]:
        return frozenset(self.opens)

    def is_open(self, mask: int) -> bool:
        return mask in self._open_set

    def __len__(self) -> int:
        return len(self.opens)

    @cached_property
    def minimal_opens(self) -> tuple[int, ...]:
        """For each point index, the smallest open set containing it."""
        n = self.ground.size
        out = [self.ground.full] * n
        for u in self.opens:
            for i in bits(u):
                out[i] &= u
        return tuple(out)

    def labeled_opens(self) -> list[list[str]]:
        return [self.ground.members(u) for u in self.opens]

    def relabel(self, ground: GroundSet) -> "FiniteTopology":
        if ground.size != self.ground.size:
            raise ParseError("relabeling must preserve the number of points")
        return FiniteTopology(ground, self.opens)

    def __str__(self) -> str:
        return "{" + ", ".join(self.ground.format(u) for u in self.opens) + "}"


@dataclass(frozen=True)
class ClosureViolation:
    """Why a family fails to be a topology.

    ``kind`` is ``"missing_empty"``, ``"missing_full"``, ``"union"`` or
    ``"intersection"``; for the last two ``pair`` holds the offending members
    and ``result`` the missing set.
    """

    kind: str
    pair: tuple[int, int] | None = None
    result: int | None = None

    def describe(self, ground: GroundSet) -> str:
        if self.kind == "missing_empty":
            return "empty set is not in the family"
        if self.kind == "missing_full":
            return f"ground set {ground.format(ground.full)} is not in the family"
        a, b = self.pair
        op = "∪" if self.kind == "union" else "∩"
        return f"{ground.format(a)} {op} {ground.format(b)} = {ground.format(self.result)} missing"


def closure_violations(family: Iterable[int], ground: GroundSet, first_only: bool = False) -> list[ClosureViolation]:
    """Direct pairwise check of the topology axioms on a finite family."""
    fam = sorted(set(family), key=canonical_key)
    present = set(fam)
    out: list[ClosureViolation] = []
    if 0 not in present:
        out.append(ClosureViolation("missing_empty"))
    if ground.full not in present:
        out.append(ClosureViolation("missing_full"))
    if out and first_only:
        return out[:1]
    for a, b in combinations(fam, 2):
        if a | b not in present:
            out.append(ClosureViolation("union", (a, b), a | b))
            if first_only:
                return out
        if a & b not in present:
            out.append(ClosureViolation("intersection", (a, b), a & b))
            if first_only:
                return out
    return out


def _check_family(family: Iterable[int], ground: GroundSet) -> list[int]:
    fam = list(family)
    for m in fam:
        if m < 0 or m & ~ground.full:
            raise ParseError(f"set {m:#b} has bits outside a ground of size {ground.size}")
    return fam


def validate_topology(family: Iterable[int], ground: GroundSet) -> FiniteTopology:
    """Return the canonical topology, or raise :class:`ValidationError`.

    The error carries the first violated closure witness.
    """
    fam = _check_family(family, ground)
    bad = closure_violations(fam, ground, first_only=True)
    if bad:
        raise ValidationError(f"not a topology: {bad[0].describe(ground)}", bad)
    return FiniteTopology(ground, tuple(fam))


def is_topology(family: Iterable[int], ground: GroundSet) -> bool:
    return not closure_violations(family, ground, first_only=True)


def subbasis_minimal_opens(family: Iterable[int], ground: GroundSet) -> tuple[int, ...]:
    """Smallest open neighbourhood of each point in the topology generated by ``family``.

    This is the intersection of the subbasis members containing the point
    (the ground set when there are none). Two subbases generate the same
    topology iff these tuples agree, which makes it usable on ground sets far
    too large to list every open set.
    """
    out = [ground.full] * ground.size
    for s in _check_family(family, ground):
        for i in bits(s):
            out[i] &= s
    return tuple(out)


def unions_of(generators: Iterable[int]) -> set[int]:
    """Every union of a subfamily of ``generators`` (the empty union included)."""
    acc = {0}
    for g in set(generators):
        acc |= {s | g for s in acc}
    return acc


def close_subbasis(family: Iterable[int], ground: GroundSet) -> FiniteTopology:
    """Smallest topology containing ``family``.

    Each open set is the union of the minimal neighbourhoods of its points, so
    the topology is the union closure of those neighbourhoods.
    """
    return FiniteTopology(ground, tuple(unions_of(subbasis_minimal_opens(family, ground))))


def discrete(ground: GroundSet) -> FiniteTopology:
    return FiniteTopology(ground, tuple(range(ground.full + 1)))


def indiscrete(ground: GroundSet) -> FiniteTopology:
    return FiniteTopology(ground, (0, ground.full))


def sierpinski(labels: Sequence[str] = ("0", "1")) -> FiniteTopology:
    """Two points, the second one open."""
    g = GroundSet(tuple(labels))
    return FiniteTopology(g, (0, 0b10, 0b11))


def minimal_open_set(t: FiniteTopology, p) -> int:
    """Intersection of all opens containing ``p`` (a label)."""
    return t.minimal_opens[t.ground.index(p)]


def t0_witness(t: FiniteTopology) -> tuple[str, str] | None:
    """First pair of distinct points lying in exactly the same opens, if any."""
    mins = t.minimal_opens
    for i, j in combinations(range(t.ground.size), 2):
        if mins[i] == mins[j]:
            return t.ground.labels[i], t.ground.labels[j]
    return None


def is_t0(t: FiniteTopology) -> bool:
    return t0_witness(t) is None


def find_open_singleton(t: FiniteTopology) -> str:
    """A point whose singleton is open in a finite T0 space.

    Starts from a smallest nonempty open set and shrinks it with separating
    opens until one point remains.
    """
    if t.ground.size == 0:
        raise PreconditionError("find_open_singleton needs a nonempty ground set")
    pair = t0_witness(t)
    if pair is not None:
        raise PreconditionError(f"topology is not T0: {pair[0]} and {pair[1]} are not separated")
    u = next(o for o in t.opens if o)
    while popcount(u) > 1:
        a, b = bits(u)[:2]
        # keeps exactly one of a, b, so the intersection stays nonempty
        sep = next(v for v in t.opens if bool(v >> a & 1) != bool(v >> b & 1))
        u &= sep
    return t.ground.labels[bits(u)[0]]


@dataclass(frozen=True)
class QuotientResult:
    """Kolmogorov quotient of a finite space.

    ``classes[k]`` is a mask over the original ground; ``class_map[i]`` is the
    class index of point ``i``; the quotient ground uses the label of each
    class's smallest-index member.
    """

    classes: tuple[int, ...]
    class_map: tuple[int, ...]
    quotient: FiniteTopology

    def class_of(self, mask: int) -> int:
        """Image of an original subset as a mask over class indices."""
        out = 0
        for i in bits(mask):
            out |= 1 << self.class_map[i]
        return out

    def preimage(self, qmask: int) -> int:
        out = 0
        for k in bits(qmask):
            out |= self.classes[k]
        return out


def kolmogorov_quotient(t: FiniteTopology) -> QuotientResult:
    mins = t.minimal_opens
    class_of_profile: dict[int, int] = {}
    class_map = []
    classes: list[int] = []
    for i, u in enumerate(mins):
        k = class_of_profile.setdefault(u, len(classes))
        if k == len(classes):
            classes.append(0)
        classes[k] |= 1 << i
        class_map.append(k)
    reps = [t.ground.labels[bits(c)[0]] for c in classes]
    qground = GroundSet(tuple(reps))
    result = QuotientResult(tuple(classes), tuple(class_map), FiniteTopology(qground, ()))
    qopens = tuple(result.class_of(u) for u in t.opens)
    return QuotientResult(result.classes, result.class_map, FiniteTopology(qground, qopens))


def find_isomorphism(t1: FiniteTopology, t2: FiniteTopology) -> tuple[int, ...] | None:
    """A permutation ``p`` with ``{p(U) : U open in t1}`` equal to the opens of t2.

    Brute force over bijections; meant for grounds of at most about 8 points.
    """
    n = t1.ground.size
    if n != t2.ground.size or len(t1.opens) != len(t2.opens):
        return None
    target = t2._open_set
    sizes1 = sorted(popcount(m) for m in t1.minimal_opens)
    sizes2 = sorted(popcount(m) for m in t2.minimal_opens)
    if sizes1 != sizes2:
        return None
    for perm in permutations(range(n)):
        if all(_apply(perm, u) in target for u in t1.opens):
            return perm
    return None


def _apply(perm: Sequence[int], mask: int) -> int:
    out = 0
    for i in bits(mask):
        out |= 1 << perm[i]
    return out


def is_homeomorphic(t1: FiniteTopology, t2: FiniteTopology) -> bool:
    return find_isomorphism(t1, t2) is not None
