"""Zonal spherical functions of (S(2n), H(n)) and the decomposition of phi_z.

Run: python demos/03_spherical_decomposition.py
"""
from zmeasures import ExactScalar, enumerate_partitions, spherical_function_phi, zonal_spherical_table
from zmeasures.spherical import check_decomposition, check_embedding_L, zmeasure_by_inner_product

n = 3
table = zonal_spherical_table(n)
rhos = enumerate_partitions(n)
print(f"w^lam(rho) for n={n} (route: {table.route})")
print("lam \\ rho".ljust(14) + "".join(str(r).ljust(12) for r in rhos))
for lam in rhos:
    print(str(lam).ljust(14) + "".join(str(table(lam, r)).ljust(12) for r in rhos))

z = ExactScalar(2)
phi = spherical_function_phi(z, n)
print(f"\nphi_z on coset types, z={z}: {phi.values}")

m = zmeasure_by_inner_product(z, n)
print("coefficients of phi_z in the zonal basis:")
for lam, w in m.entries.items():
    print(f"  {str(lam):<12} {w}")
print(f"sum = {m.total}")

for report in (check_decomposition(z, n), check_embedding_L(z, n)):
    print(f"{report.identity}: {'ok' if report.status else 'FAILED'} ({report.cases} cases)")
