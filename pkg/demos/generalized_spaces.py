"""
When balls are only a subbasis, and how self-maps repair it
===========================================================

"""

from fractions import Fraction

from rometric import DistanceMatrix, check_rometric_axioms
from rometric.finite_topology import FiniteTopology, GroundSet
from rometric.generalized import (
    GeneralizedSpace,
    MapFamily,
    generalized_topology,
    generalized_violation,
    sierpinski_embed,
    universal_generalized_metrization,
)

rows = [[0, 0, 1], [0, 0, 0], [0, 0, 0]]
m = check_rometric_axioms(DistanceMatrix.from_rows(["x", "y", "z"], [[Fraction(v) for v in r] for r in rows]))

# y sits in V_1(x) = {x, y} but every ball around y is the whole space
print("identity only:", generalized_violation(m, MapFamily.identity_only(m.ground)))

# a map onto {x, y} restricts balls to its image and gives y a small enough ball
fam = MapFamily.from_labels(m.ground, {"id": "xyz", "g": "xyx"})
print("with g:", generalized_violation(m, fam))
print("opens:", generalized_topology(GeneralizedSpace(m, fam)).labeled_opens())

# the universal construction works for any finite topology, T0 or not
g = GroundSet(("a", "b", "c"))
t = FiniteTopology(g, (0, g.mask(["a", "b"]), g.full))
d, beta = universal_generalized_metrization(t)
print("maps:", dict(zip(beta.names, beta.maps)))
print("recovers input:", generalized_topology(GeneralizedSpace(d, beta)) == t)

# under the hood: a T0 space sits inside a power of the Sierpinski space
s = FiniteTopology(GroundSet(("a", "b")), (0, 0b10, 0b11))
emb = sierpinski_embed(s)
print("coordinates:", dict(zip(s.ground.labels, emb.image_ground.labels)))
