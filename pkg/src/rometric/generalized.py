"""Generalized R.O-metric spaces ``(X, d, beta)`` and the universal construction.

A generalized space pairs an R.O-metric with a family ``beta`` of self-maps
containing the identity. Balls are taken inside the image of a map:
``V_{r,a}(x) = {f_a(y) : d(x, f_a(y)) < r}`` for centers ``x`` in that image.
When every point of such a ball has a smaller ball around it, the balls form
a basis.

:func:`universal_generalized_metrization` realizes any finite topology this
way: quotient to a T0 space, embed it in a power of the Sierpinski space,
read off a metric and a map family on the image, and lift back.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from typing import Sequence

from .distance import (
    Ball,
    DistanceMatrix,
    ROMetric,
    _row_balls,
    check_rometric_axioms,
    generated_minimal_opens,
    rometric_violations,
)
from .errors import DomainError, GroundMismatchError, InternalConsistencyError, ParseError, PreconditionError, ValidationError
from .finite_topology import (
    FiniteTopology,
    GroundSet,
    bits,
    canonical_key,
    close_subbasis,
    kolmogorov_quotient,
    subbasis_minimal_opens,
    t0_witness,
    unions_of,
)

ZERO = Fraction(0)
ONE = Fraction(1)

# largest |J| for which the full product metric on Y^J is materialized and checked
MAX_PRODUCT_COORDS = 8


@dataclass(frozen=True)
class MapFamily:
    """Named total self-maps of a ground set; ``maps[a][i]`` is the image index of point ``i``."""

    ground: GroundSet
    maps: tuple[tuple[int, ...], ...]
    names: tuple[str, ...]

    def __post_init__(self):
        maps = tuple(tuple(int(v) for v in f) for f in self.maps)
        object.__setattr__(self, "maps", maps)
        object.__setattr__(self, "names", tuple(self.names))
        n = self.ground.size
        if len(self.names) != len(maps):
            raise ParseError("each map needs exactly one name")
        if len(set(self.names)) != len(self.names):
            raise ParseError("map names must be distinct")
        for name, f in zip(self.names, maps):
            if len(f) != n or any(not 0 <= v < n for v in f):
                raise ParseError(f"map {name!r} is not a total self-map of the ground set")
        if self.identity_index is None:
            raise ValidationError("map family must contain the identity", [])

    @classmethod
    def identity_only(cls, ground: GroundSet) -> "MapFamily":
        return cls(ground, (tuple(range(ground.size)),), ("id",))

    @classmethod
    def from_labels(cls, ground: GroundSet, maps: dict[str, Sequence[str]]) -> "MapFamily":
        names = tuple(maps)
        return cls(ground, tuple(tuple(ground.index(v) for v in maps[k]) for k in names), names)

    @cached_property
    def identity_index(self) -> int | None:
        ident = tuple(range(self.ground.size))
        for a, f in enumerate(self.maps):
            if f == ident:
                return a
        return None

    @cached_property
    def images(self) -> tuple[int, ...]:
        return tuple(sum(1 << v for v in set(f)) for f in self.maps)

    def index(self, alpha) -> int:
        if isinstance(alpha, int):
            if not 0 <= alpha < len(self.maps):
                raise ParseError(f"no map with index {alpha}")
            return alpha
        try:
            return self.names.index(alpha)
        except ValueError:
            raise ParseError(f"unknown map {alpha!r}") from None

    def relabel(self, ground: GroundSet) -> "MapFamily":
        return MapFamily(ground, self.maps, self.names)

    def __len__(self) -> int:
        return len(self.maps)


@dataclass(frozen=True)
class GeneralizedSpace:
    metric: ROMetric
    family: MapFamily


@dataclass(frozen=True)
class GeneralizedBall:
    center: str
    alpha: str
    radius: Fraction
    members: int


def _balls(metric: DistanceMatrix, family: MapFamily, a: int, x: int) -> list[Ball]:
    image = family.images[a]
    return _row_balls(metric.ground.labels[x], metric.matrix[x], bits(image))


def generalized_ball(space: GeneralizedSpace, alpha, x, r) -> GeneralizedBall:
    """``V_{r,alpha}(x)``; the center must lie in the image of the map."""
    m, fam = space.metric, space.family
    a = fam.index(alpha)
    i = m.ground.index(x)
    r = Fraction(r)
    if r <= 0:
        raise DomainError(f"radius must be positive, got {r}")
    if not fam.images[a] >> i & 1:
        raise PreconditionError(f"center {x} is not in the image of map {fam.names[a]}")
    row = m.matrix[i]
    members = sum(1 << j for j in bits(fam.images[a]) if row[j] < r)
    return GeneralizedBall(m.ground.labels[i], fam.names[a], r, members)


@dataclass(frozen=True)
class GeneralizedWitness:
    """A ball ``V_{radius,alpha}(center)`` containing ``point`` with no ball around ``point`` inside it."""

    alpha: str
    center: str
    radius: Fraction
    point: str

    def as_tuple(self):
        return self.alpha, self.center, self.radius, self.point


def _smallest_balls(metric: DistanceMatrix, family: MapFamily) -> dict[int, list[int]]:
    """For every point, the innermost ball around it for each map whose image contains it."""
    out: dict[int, list[int]] = {i: [] for i in range(metric.size)}
    for a, image in enumerate(family.images):
        for y in bits(image):
            out[y].append(_balls(metric, family, a, y)[0].members)
    return out


def generalized_violation(metric: DistanceMatrix, family: MapFamily) -> GeneralizedWitness | None:
    """First ``(alpha, x, r, y)`` where the basis axiom fails, scanning maps, centers, radii, points in order.

    Balls shrink with the radius, so it suffices to test the innermost ball
    around ``y`` for each admissible map.
    """
    if metric.ground != family.ground:
        raise GroundMismatchError("metric and map family are over different ground sets")
    inner = _smallest_balls(metric, family)
    for a, image in enumerate(family.images):
        for x in bits(image):
            for b in _balls(metric, family, a, x):
                for y in bits(b.members):
                    if not any(s & ~b.members == 0 for s in inner[y]):
                        lab = metric.ground.labels
                        return GeneralizedWitness(family.names[a], lab[x], b.radius, lab[y])
    return None


def check_generalized_axioms(metric: DistanceMatrix, family: MapFamily) -> GeneralizedSpace:
    m = check_rometric_axioms(metric)
    w = generalized_violation(m, family)
    if w is not None:
        raise ValidationError(
            f"no ball around {w.point} fits inside V_{{{w.radius},{w.alpha}}}({w.center})", [w]
        )
    return GeneralizedSpace(m, family)


def generalized_balls(space: GeneralizedSpace) -> set[int]:
    m, fam = space.metric, space.family
    return {
        b.members for a, image in enumerate(fam.images) for x in bits(image) for b in _balls(m, fam, a, x)
    }


def generalized_topology(space: GeneralizedSpace) -> FiniteTopology:
    """Union closure of all generalized balls, after confirming they form a basis."""
    basis = generalized_balls(space)
    for b1, b2 in combinations(sorted(basis), 2):
        inter = b1 & b2
        covered = 0
        for b in basis:
            if b & ~inter == 0:
                covered |= b
        if covered != inter:
            raise InternalConsistencyError(
                f"balls {b1:#b} and {b2:#b} meet in a set that is not a union of balls"
            )
    return FiniteTopology(space.metric.ground, tuple(unions_of(basis)))


# -- Sierpinski embedding ---------------------------------------------------


def _least_one(k: int) -> int | None:
    return (k & -k).bit_length() - 1 if k else None


def _tuple_label(k: int, width: int) -> str:
    return "".join("1" if k >> j & 1 else "0" for j in range(width))


def product_distance(x: int, y: int) -> Fraction:
    """``D(x, y) = d_S(1, y_b)`` with ``b`` the first coordinate where ``x`` is 1.

    ``d_S`` is the Sierpinski metric (``d_S(1,0) = 1``, all else 0); tuples are
    bitmasks over coordinates. The all-zero tuple is at distance 0 from everything.
    """
    b = _least_one(x)
    if b is None:
        return ZERO
    return ZERO if y >> b & 1 else ONE


@dataclass(frozen=True)
class SierpinskiEmbedding:
    """``F: X -> {0,1}^J`` with ``J`` the proper closed sets of a T0 space.

    ``closed_index[j]`` is the closed set for coordinate ``j``; ``coords[i]`` is
    ``F(x_i)`` as a bitmask (coordinate ``j`` is 1 iff ``x_i`` is outside the
    closed set). ``image_ground`` labels each image point by its 0/1 string.
    """

    source: FiniteTopology
    closed_index: tuple[int, ...]
    coords: tuple[int, ...]
    image_ground: GroundSet
    induced_metric: ROMetric
    beta: MapFamily

    @property
    def width(self) -> int:
        return len(self.closed_index)

    @cached_property
    def product_ground(self) -> GroundSet:
        w = self.width
        return GroundSet(tuple(_tuple_label(k, w) for k in range(1 << w)))

    @cached_property
    def product_metric(self) -> DistanceMatrix:
        """D on all of ``Y^J`` (exponential in ``|J|``)."""
        size = 1 << self.width
        rows = tuple(tuple(product_distance(x, y) for y in range(size)) for x in range(size))
        return DistanceMatrix(self.product_ground, rows)

    def subspace_topology(self) -> FiniteTopology:
        """``{U & F(X) : U open in the product}`` on the image points, indexed like the source."""
        n = self.source.ground.size
        sub = set()
        for k in range(1 << self.width):
            sub.add(sum(1 << i for i in range(n) if self.coords[i] & k == k))
        return close_subbasis(sub, self.image_ground)

    def generalized_space(self) -> GeneralizedSpace:
        return GeneralizedSpace(self.induced_metric, self.beta)


def sierpinski_product_minimal_opens(width: int) -> tuple[int, ...]:
    """Minimal neighbourhoods in the product of ``width`` Sierpinski spaces, from basic boxes.

    A basic box picks ``{1}`` or ``Y`` in each coordinate.
    """
    size = 1 << width
    boxes = []
    for choice in product((False, True), repeat=width):
        box = 0
        for k in range(size):
            if all(not need or (k >> j & 1) for j, need in enumerate(choice)):
                box |= 1 << k
        boxes.append(box)
    return subbasis_minimal_opens(boxes, GroundSet(tuple(_tuple_label(k, width) for k in range(size))))


def _retraction(n: int, image: int) -> tuple[int, ...]:
    """Identity on ``image``, everything else sent to its smallest member."""
    low = bits(image)[0]
    return tuple(i if image >> i & 1 else low for i in range(n))


def sierpinski_embed(t: FiniteTopology, order: Sequence[int] | str | None = None, verify: bool = True) -> SierpinskiEmbedding:
    """Embed a finite T0 space in a Sierpinski power and build its generalized metric.

    ``order`` fixes the well-ordering of the closed sets: ``None`` sorts them
    by ``(size, mask)``, ``"reverse"`` reverses that, or pass the masks
    explicitly. With ``verify`` the construction re-checks its guarantees and
    raises :class:`InternalConsistencyError` if any fails.
    """
    g = t.ground
    if g.size == 0:
        raise PreconditionError("sierpinski_embed needs a nonempty ground set")
    pair = t0_witness(t)
    if pair is not None:
        raise PreconditionError(f"source is not T0 ({pair[0]} ~ {pair[1]}); take the Kolmogorov quotient first")

    closed = sorted((g.full & ~u for u in t.opens if u), key=canonical_key)
    if order == "reverse":
        closed.reverse()
    elif order is not None:
        if sorted(order, key=canonical_key) != closed:
            raise PreconditionError("order must list every proper closed set exactly once")
        closed = list(order)
    width = len(closed)
    n = g.size
    coords = tuple(sum(1 << j for j, c in enumerate(closed) if not c >> i & 1) for i in range(n))
    image_ground = GroundSet(tuple(_tuple_label(k, width) for k in coords))
    induced = ROMetric.trusted(
        image_ground, tuple(tuple(product_distance(coords[i], coords[j]) for j in range(n)) for i in range(n))
    )

    # Ball of radius <= 1 around a tuple keeps the image points that are 1 at its
    # first 1-coordinate; radius > 1 (or the all-zero tuple) keeps every image point.
    full = (1 << n) - 1
    in_image = set(coords)
    maps = [tuple(range(n))]
    names = ["id"]
    seen = {full}  # the identity already has the whole image
    for k in range(1 << width):
        if k in in_image:
            continue
        b = _least_one(k)
        shells = [(1, full)] if b is None else [(1, sum(1 << i for i in range(n) if coords[i] >> b & 1)), (2, full)]
        for r, image in shells:
            if image and image not in seen:
                seen.add(image)
                maps.append(_retraction(n, image))
                names.append(f"f[{_tuple_label(k, width)},r={r}]")
    beta = MapFamily(image_ground, tuple(maps), tuple(names))
    emb = SierpinskiEmbedding(t, tuple(closed), coords, image_ground, induced, beta)
    if verify:
        report = embedding_report(emb)
        failed = [k for k, v in report.items() if v is False]
        if failed:
            raise InternalConsistencyError(f"embedding checks failed: {failed}")
    return emb


def embedding_report(emb: SierpinskiEmbedding) -> dict[str, bool | None]:
    """The construction's three guarantees, each ``True``/``False`` or ``None`` when skipped.

    ``product_metric_valid`` and ``product_topology`` need the full product
    and are skipped above ``MAX_PRODUCT_COORDS`` coordinates.
    """
    out: dict[str, bool | None] = {"product_metric_valid": None, "product_topology": None}
    if emb.width <= MAX_PRODUCT_COORDS:
        D = emb.product_metric
        out["product_metric_valid"] = not rometric_violations(D)
        out["product_topology"] = generated_minimal_opens(D) == sierpinski_product_minimal_opens(emb.width)
    sub = emb.subspace_topology()
    gen = generalized_violation(emb.induced_metric, emb.beta) is None and generalized_topology(
        emb.generalized_space()
    ).opens == sub.opens
    out["subspace_topology"] = gen and sub.opens == emb.source.opens
    return out


# -- universal construction -------------------------------------------------


def lift_map_family(q, family: MapFamily, ground: GroundSet) -> MapFamily:
    """Lift maps on the quotient to the original points.

    A point whose class is fixed by the map stays put; any other point goes to
    the smallest-index member of its image class. For a retraction onto a set
    of classes the lifted image is the union of those classes.
    """
    cm = q.class_map
    reps = [bits(c)[0] for c in q.classes]
    maps = []
    for f in family.maps:
        maps.append(tuple(i if f[cm[i]] == cm[i] else reps[f[cm[i]]] for i in range(ground.size)))
    return MapFamily(ground, tuple(maps), family.names)


def universal_generalized_metrization(t: FiniteTopology) -> tuple[ROMetric, MapFamily]:
    """A metric and map family on ``t.ground`` whose generalized topology is ``t``.

    Pipeline: Kolmogorov quotient, Sierpinski embedding of the quotient, then
    distance 0 inside a class and the quotient distance across classes.
    """
    g = t.ground
    if g.size == 0:
        return ROMetric.trusted(g, ()), MapFamily.identity_only(g)
    q = kolmogorov_quotient(t)
    emb = sierpinski_embed(q.quotient, verify=False)
    dq = emb.induced_metric.matrix
    cm = q.class_map
    n = g.size
    rows = tuple(tuple(ZERO if cm[i] == cm[j] else dq[cm[i]][cm[j]] for j in range(n)) for i in range(n))
    metric = ROMetric(g, rows)
    family = lift_map_family(q, emb.beta.relabel(q.quotient.ground), g)
    space = check_generalized_axioms(metric, family)
    got = generalized_topology(space)
    if got.opens != t.opens:
        raise InternalConsistencyError("lifted generalized space does not reproduce the input topology")
    return metric, family
