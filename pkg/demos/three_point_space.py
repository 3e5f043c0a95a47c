"""
Balls and topology of an asymmetric three-point distance
=========================================================

"""

from fractions import Fraction

from rometric import DistanceMatrix, check_rometric_axioms, classify_axioms, distinct_balls, generated_topology, normalize

# d(a,b) = d(b,c) = 1, d(a,c) = 2, everything running backwards is free
rows = [[0, 1, 2], [0, 0, 1], [0, 0, 0]]
m = check_rometric_axioms(DistanceMatrix.from_rows(["a", "b", "c"], [[Fraction(v) for v in r] for r in rows]))

profile = classify_axioms(m)
print("axioms:", profile.flags())
print("why not symmetric:", profile.witnesses["symmetry"])

# one ball per distinct value in each row
for b in distinct_balls(m):
    print(f"V_{b.radius}({b.center}) = {m.ground.format(b.members)}")

t = generated_topology(m)
print("opens:", t.labeled_opens())

# squashing every distance into [0, 1) leaves the topology alone
print("same after v/(v+1):", generated_topology(normalize(m)) == t)
