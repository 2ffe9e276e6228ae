"""Exact z-measure tables, the Plancherel limit and the spherical correspondence.

Run: python demos/01_zmeasure_tables.py
"""
from fractions import Fraction

from zmeasures import ExactScalar, ZMeasureParams, classify_parameters, plancherel_table, transpose, zmeasure_table
from zmeasures.spherical import explicit_zmeasure

n = 4
params = ZMeasureParams(ExactScalar(2), ExactScalar(3), Fraction(1, 2), n)
table = zmeasure_table(params)
print(f"z=2, z'=3, theta=1/2, n={n}: total = {table.total}")
for lam, w in table.entries.items():
    print(f"  {str(lam):<14} {str(w):>14}  ~ {float(w.re):.5f}")

# Swapping theta for 1/theta and transposing lambda leaves the weights unchanged.
flipped = zmeasure_table(params.transposed())
same = all(flipped[transpose(lam)] == w for lam, w in table.entries.items())
print(f"transposition symmetry holds: {same}")

# Large z and z' approach the Plancherel measure.
big = ZMeasureParams(ExactScalar(10**6), ExactScalar(10**6), Fraction(1), n)
near = zmeasure_table(big)
limit = plancherel_table(Fraction(1), n)
worst = max(abs(float(near[lam].re) - float(limit[lam].re)) for lam in limit.entries)
print(f"z=z'=1e6 vs Plancherel, max abs difference: {worst:.2e}")

# The spherical-function formula is the general measure at (z/2, conj(z)/2, theta=1/2).
z = 1 + ExactScalar(0, 1)
general = zmeasure_table(ZMeasureParams(z / 2, z.conjugate() / 2, Fraction(1, 2), n))
agree = all(general[lam] == explicit_zmeasure(z, n, lam) for lam in general.entries)
print(f"z=1+i: explicit formula equals M(z/2, conj z/2, 1/2): {agree}")

for zz, zp, theta in [(2, 3, 1), (1 + ExactScalar(0, 1), 1 - ExactScalar(0, 1), 1), (-2, -3, 1), (Fraction(1, 3), -2, 1)]:
    print(f"classify z={zz}, z'={zp}, theta={theta}: {classify_parameters(zz, zp, theta).series.value}")
