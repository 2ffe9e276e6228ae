"""Perfect matchings, cycle types, the projection to level n-1 and the Ewens-type sampler.

Run: python demos/02_matchings_and_ewens.py
"""
from collections import Counter
from fractions import Fraction

from zmeasures import (
    SignedPermutation,
    act,
    canonical_projection,
    cocycle,
    cycle_decomposition,
    enumerate_matchings,
    ewens_weight,
    render_cycles,
    sample_matchings,
)

n = 3
xs = enumerate_matchings(n)
print(f"|X({n})| = {len(xs)}")
print("cycle types:", dict(Counter(cycle_decomposition(x).type for x in xs)))

x = xs[7]
print(f"x = {x.to_json()}  type {cycle_decomposition(x).type}")
print(render_cycles(x))
print(f"projection to level {n - 1}: {canonical_projection(x).to_json()}")

for g in (SignedPermutation.transposition(1, 2, n), SignedPermutation.transposition(-1, 3, n)):
    y = act(x, g)
    print(f"x.g for g={g.to_json()}: {y.to_json()} type {cycle_decomposition(y).type}, cocycle {cocycle(x, g)}")

t = Fraction(3, 2)
draws = 20_000
counts = Counter(sample_matchings(t, n, draws, seed=7))
print(f"\nEwens sampler, t={t}, {draws} draws: observed vs expected frequency")
for x in sorted(xs, key=lambda m: -ewens_weight(t, m))[:5]:
    print(f"  {x.to_json():<40} {counts[x] / draws:.4f}  {float(ewens_weight(t, x)):.4f}")
