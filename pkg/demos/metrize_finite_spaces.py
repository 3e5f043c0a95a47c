"""
Every finite topology from a two-valued distance
================================================

"""

from rometric import kolmogorov_quotient, metrize_finite, verify_metrization
from rometric.metrization import lift_from_quotient
from rometric.oracle import enumerate_topologies

# the 29 labeled topologies on three points
census = enumerate_topologies(3)
print(len(census), "topologies on 3 points")

# d(x,y) = 0 when y is in the smallest open set around x, else 1
t = census.topologies[7]
m = metrize_finite(t)
print("topology:", t.labeled_opens())
print("distance rows:", [[str(v) for v in row] for row in m.matrix])
print("round trip:", bool(verify_metrization(t, m)))

ok = all(verify_metrization(s, metrize_finite(s)) for n in range(5) for s in enumerate_topologies(n))
print("all topologies on up to 4 points round-trip:", ok)

# the same works through the Kolmogorov quotient: metrize the T0 space, then
# put indistinguishable points at distance zero
q = kolmogorov_quotient(t)
lifted = lift_from_quotient(t, q, metrize_finite(q.quotient))
print("classes:", [t.ground.members(c) for c in q.classes])
print("lifted round trip:", bool(verify_metrization(t, lifted)))
