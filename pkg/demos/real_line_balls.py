"""
Exact balls of two distances on the rationals
=============================================

"""

from fractions import Fraction as F

from rometric.real_line import eval_line_metric, line_ball

# lower-limit distance: going left costs an extra unit
print(eval_line_metric("lower_limit", 1, 0), eval_line_metric("lower_limit", 0, 1))

for r in (F(1, 2), F(1), F(3, 2)):
    b = line_ball("lower_limit", 0, r)
    print(f"lower_limit r={r}: {b}   nominal {b.nominal}   same: {b.matches_nominal}")

# K = {1/n}; from outside K, its points are one unit further away
for r in (F(1, 2), F(3, 2)):
    b = line_ball("k_topology", 0, r)
    print(f"k_topology r={r}: {b}   same as nominal: {b.matches_nominal}")

b = line_ball("k_topology", 0, F(3, 2))
print([q in b for q in (F(1, 2), F(1, 3), F(2, 5))])
