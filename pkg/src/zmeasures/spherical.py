"""Zonal spherical functions of ``(S(2n), H(n))`` and the measures they produce.

Square roots never appear explicitly. The cyclic vector ``F_z`` is
``sqrt(c_n) z^[x]`` with::

    c_n = (2n-1)!! / (t (t+2) ... (t+2n-2)),   t = |z|^2,

and every exposed quantity (matrix coefficients, the measure, squared norms)
depends on ``c_n`` or on ``|.|^2`` only. Likewise the normalized function
``sqrt(dim 2 lam) w^lam`` enters only through ``dim 2 lam``.

Inner products on ``X(n)`` use the uniform measure:
``(f, g) = |X(n)|^{-1} sum_x f(x) conj(g(x))``.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import CapacityError
from .groups import (
    ClassFunctionOnCosets,
    SignedPermutation,
    act,
    character,
    coset_representative,
    coset_type,
    iter_hyperoctahedral,
    iter_symmetric_group,
    transpositions,
)
from .matchings import (
    Matching,
    canonical_projection,
    cycle_count,
    cycle_decomposition,
    double_factorial_odd,
    enumerate_matchings,
    ewens_normalizer,
)
from .partitions import Partition, dimension, double, enumerate_partitions, hook_length_product, pochhammer
from .reports import CheckReport
from .scalar import ExactScalar, format_scalar
from .symfunc import characteristic_map, inverse_characteristic_map, jack_polynomial
from .zmeasure import MeasureTable

BRUTE_FORCE_LEVEL = 5
JACK_LEVEL = 8
INNER_PRODUCT_LEVEL = 5


def _nonzero(z) -> ExactScalar:
    z = ExactScalar.coerce(z)
    if not z:
        raise ValueError("z must be nonzero")
    return z


def cyclic_vector_constant(z, n: int) -> Fraction:
    """``c_n = |F_z(x)|^2 / |z|^{2[x]}``."""
    t = _nonzero(z).abs2()
    return Fraction(double_factorial_odd(n)) / ewens_normalizer(t, n)


# ---------------------------------------------------------------------------
# zonal spherical functions


@lru_cache(maxsize=None)
def _zonal_brute_force(n: int) -> dict[tuple[Partition, Partition], Fraction]:
    hyper = list(iter_hyperoctahedral(n))
    reps = {rho: coset_representative(rho) for rho in enumerate_partitions(n)}
    values = {}
    for rho, g in reps.items():
        types: dict[Partition, int] = {}
        for h in hyper:
            ct = (g * h).cycle_type()
            types[ct] = types.get(ct, 0) + 1
        for lam in enumerate_partitions(n):
            s = sum(m * character(double(lam), ct) for ct, m in types.items())
            values[(lam, rho)] = Fraction(s, len(hyper))
    return values


@lru_cache(maxsize=None)
def _zonal_via_jack(n: int) -> dict[tuple[Partition, Partition], Fraction]:
    values = {}
    for lam in enumerate_partitions(n):
        w = inverse_characteristic_map(jack_polynomial(lam, 2).expansion)
        for rho, v in w.values.items():
            values[(lam, rho)] = Fraction(v)
    return values


class SphericalFunctionTable:
    """``w^lam(rho)`` for all ``lam``, ``rho`` partitions of ``n``."""

    def __init__(self, n: int, values: dict[tuple[Partition, Partition], Fraction], route: str):
        self.n = n
        self.values = values
        self.route = route

    def __call__(self, lam: Partition, rho: Partition) -> Fraction:
        return self.values[(tuple(lam), tuple(rho))]

    def function(self, lam: Partition) -> ClassFunctionOnCosets:
        return ClassFunctionOnCosets(self.n, {rho: self(lam, rho) for rho in enumerate_partitions(self.n)})

    def __eq__(self, other):
        return isinstance(other, SphericalFunctionTable) and self.n == other.n and self.values == other.values


def zonal_spherical_table(n: int, route: str = "auto") -> SphericalFunctionTable:
    """Zonal spherical functions ``w^lam = |H|^{-1} sum_h chi^{2 lam}(g h)``.

    ``route="brute-force"`` averages characters over ``H(n)`` (``n <= 5``);
    ``route="jack"`` inverts ``ch''(w^lam) = J_lam^(2)`` (``n <= 8``);
    ``route="auto"`` computes both where feasible and insists they agree.
    """
    if route not in ("auto", "brute-force", "jack"):
        raise ValueError(f"unknown route {route!r}")
    if route == "brute-force" or (route == "auto" and n <= BRUTE_FORCE_LEVEL):
        if n > BRUTE_FORCE_LEVEL:
            raise CapacityError(f"brute-force zonal functions bounded by n <= {BRUTE_FORCE_LEVEL}")
        brute = _zonal_brute_force(n)
        if route == "auto" and n <= JACK_LEVEL:
            if brute != _zonal_via_jack(n):
                raise ArithmeticError(f"zonal spherical function routes disagree at n = {n}")
        return SphericalFunctionTable(n, brute, "brute-force" if route != "auto" else "both")
    if n > JACK_LEVEL:
        raise CapacityError(f"zonal functions via Jack polynomials bounded by n <= {JACK_LEVEL}")
    return SphericalFunctionTable(n, _zonal_via_jack(n), "jack")


def dim_double(lam: Partition) -> int:
    """``dim 2 lam``."""
    return dimension(double(lam))


# ---------------------------------------------------------------------------
# helpers over X(n)


@lru_cache(maxsize=None)
def _matchings(n: int) -> tuple[Matching, ...]:
    if n > INNER_PRODUCT_LEVEL + 1:
        raise CapacityError(f"X(n) sums bounded by n <= {INNER_PRODUCT_LEVEL + 1}")
    return tuple(enumerate_matchings(n))


@lru_cache(maxsize=None)
def _matching_types(n: int) -> tuple[Partition, ...]:
    return tuple(cycle_decomposition(x).type for x in _matchings(n))


def _powers(z: ExactScalar, upto: int) -> list[ExactScalar]:
    out = [ExactScalar(1)]
    for _ in range(upto):
        out.append(out[-1] * z)
    return out


def _phi_at(z: ExactScalar, n: int, g: SignedPermutation, cn: Fraction, zp, zbp) -> ExactScalar:
    counts: dict[tuple[int, int], int] = {}
    for x in _matchings(n):
        key = (cycle_count(act(x, g)), cycle_count(x))
        counts[key] = counts.get(key, 0) + 1
    total = ExactScalar(0)
    for (a, b), m in counts.items():
        total = total + zp[a] * zbp[b] * m
    return total * cn / len(_matchings(n))


def spherical_function_phi(z, n: int, exhaustive: bool | None = None) -> ClassFunctionOnCosets:
    """``phi_z(g) = (Reg(g) F_z, F_z) = c_n |X|^{-1} sum_x z^[x.g] conj(z)^[x]``.

    With ``exhaustive`` (default for ``n <= 3``) the value is computed for
    every ``g`` in ``S(2n)`` and constancy on double cosets is enforced;
    otherwise only the canonical coset representatives are evaluated.
    """
    z = _nonzero(z)
    if n > INNER_PRODUCT_LEVEL:
        raise CapacityError(f"spherical function bounded by n <= {INNER_PRODUCT_LEVEL}")
    if exhaustive is None:
        exhaustive = n <= 3
    cn = cyclic_vector_constant(z, n)
    zp, zbp = _powers(z, n), _powers(z.conjugate(), n)
    values: dict[Partition, ExactScalar] = {}
    if exhaustive:
        for g in iter_symmetric_group(n):
            rho = coset_type(g)
            v = _phi_at(z, n, g, cn, zp, zbp)
            if values.setdefault(rho, v) != v:
                raise ArithmeticError(f"phi_z is not constant on the double coset of type {rho}")
    else:
        for rho in enumerate_partitions(n):
            values[rho] = _phi_at(z, n, coset_representative(rho), cn, zp, zbp)
    return ClassFunctionOnCosets(n, {rho: values[rho] for rho in enumerate_partitions(n)})


def _type_counts(n: int) -> dict[Partition, int]:
    counts: dict[Partition, int] = {}
    for rho in _matching_types(n):
        counts[rho] = counts.get(rho, 0) + 1
    return counts


def zmeasure_by_inner_product(z, n: int) -> MeasureTable:
    """``M(lam) = |(F_z, sqrt(dim 2lam) w^lam)|^2 = c_n dim 2lam |(z^[.], w^lam)|^2``."""
    z = _nonzero(z)
    if n > INNER_PRODUCT_LEVEL:
        raise CapacityError(f"inner-product z-measure bounded by n <= {INNER_PRODUCT_LEVEL}")
    zonal = zonal_spherical_table(n)
    cn = cyclic_vector_constant(z, n)
    size = double_factorial_odd(n)
    counts = _type_counts(n)
    zp = _powers(z, n)
    entries = {}
    for lam in enumerate_partitions(n):
        # w^lam is real, so the inner product needs no conjugation on its side
        coef = sum((zp[len(rho)] * (m * zonal(lam, rho)) for rho, m in counts.items()), ExactScalar(0)) / size
        entries[lam] = ExactScalar(cn * dim_double(lam) * coef.abs2())
    table = MeasureTable(n, entries, {"measure": "inner-product", "z": format_scalar(z), "n": n})
    table.meta["normalized"] = table.normalized
    return table


def explicit_zmeasure(z, n: int, lam: Partition) -> ExactScalar:
    """``n! / (|z|^2/2)_n * prod (z+2(j-1)-(i-1)) (conj z + 2(j-1)-(i-1)) / h(2 lam)``."""
    z = _nonzero(z)
    if sum(lam) != n:
        raise ValueError(f"partition {lam} does not have {n} boxes")
    zb = z.conjugate()
    num = ExactScalar(1)
    for i, part in enumerate(lam):
        for j in range(part):
            num = num * ((z + 2 * j - i) * (zb + 2 * j - i))
    return num * math.factorial(n) / (pochhammer(z.abs2() / 2, n) * hook_length_product(double(lam)))


def explicit_zmeasure_table(z, n: int) -> MeasureTable:
    entries = {lam: explicit_zmeasure(z, n, lam) for lam in enumerate_partitions(n)}
    table = MeasureTable(n, entries, {"measure": "explicit", "z": format_scalar(ExactScalar.coerce(z)), "n": n})
    table.meta["normalized"] = table.normalized
    return table


def zmeasure_params_for(z):
    """The general-theta parameters reproducing the explicit formula: ``(z/2, conj(z)/2, theta=1/2)``."""
    from .zmeasure import ZMeasureParams

    z = _nonzero(z)
    return lambda n: ZMeasureParams(z / 2, z.conjugate() / 2, Fraction(1, 2), n)


# ---------------------------------------------------------------------------
# checks


def _report(identity, anchor, n, params, counterexample, cases):
    return CheckReport(
        identity=identity,
        anchor=anchor,
        n=n,
        params=params,
        status=counterexample is None,
        counterexample=counterexample,
        cases=cases,
    )


def check_zonal_orthogonality(n: int) -> CheckReport:
    """``w^lam(e) = 1`` and ``(w^lam, w^mu) = delta / dim 2lam`` under the uniform measure on X(n)."""
    zonal = zonal_spherical_table(n)
    counts = _type_counts(n)
    size = double_factorial_odd(n)
    parts = enumerate_partitions(n)
    ident = (1,) * n
    counterexample = None
    cases = 0
    for lam in parts:
        cases += 1
        if zonal(lam, ident) != 1:
            counterexample = {"lam": list(lam), "w(e)": zonal(lam, ident)}
            break
        for mu in parts:
            cases += 1
            ip = sum((m * zonal(lam, rho) * zonal(mu, rho) for rho, m in counts.items()), Fraction(0)) / size
            expected = Fraction(1, dim_double(lam)) if lam == mu else 0
            if ip != expected:
                counterexample = {"lam": list(lam), "mu": list(mu), "inner": ip, "expected": expected}
                break
        if counterexample:
            break
    return _report("orthogonality", "(w^lam, w^mu) = delta_{lam,mu} / dim 2lam; w^lam(e) = 1", n, {}, counterexample, cases)


def check_reproducing_identity(n: int, exhaustive: bool | None = None) -> CheckReport:
    """``|X|^{-1} sum_x w^lam(x.g) w^mu(x) = delta w^lam(g) / dim 2lam`` for ``g`` in ``S(2n)``."""
    if exhaustive is None:
        exhaustive = n <= 3
    zonal = zonal_spherical_table(n)
    xs = _matchings(n)
    types = _matching_types(n)
    parts = enumerate_partitions(n)
    if exhaustive:
        group = iter_symmetric_group(n)
    else:
        group = (coset_representative(rho) for rho in parts)
    counterexample = None
    cases = 0
    for g in group:
        moved = [cycle_decomposition(act(x, g)).type for x in xs]
        gt = coset_type(g)
        for lam, mu in itertools.product(parts, parts):
            cases += 1
            s = sum((zonal(lam, a) * zonal(mu, b) for a, b in zip(moved, types)), Fraction(0)) / len(xs)
            expected = zonal(lam, gt) / dim_double(lam) if lam == mu else 0
            if s != expected:
                counterexample = {"g": g, "lam": list(lam), "mu": list(mu), "lhs": s, "rhs": expected}
                break
        if counterexample:
            break
    return _report(
        "reproducing",
        "|X|^-1 sum_x w^lam(x.g) w^mu(x) = delta w^lam(g) / dim 2lam",
        n,
        {"exhaustive": exhaustive},
        counterexample,
        cases,
    )


def check_zonal_routes(n: int) -> CheckReport:
    brute = _zonal_brute_force(n)
    jack = _zonal_via_jack(n)
    bad = next((k for k in brute if brute[k] != jack[k]), None)
    ce = None if bad is None else {"lam": list(bad[0]), "rho": list(bad[1]), "brute": brute[bad], "jack": jack[bad]}
    return _report("zonal-routes", "character average over H(n) == ch''^-1(J^(2))", n, {}, ce, len(brute))


def check_decomposition(z, n: int) -> CheckReport:
    """``phi_z(g) == sum_lam M(lam) w^lam(g)`` on every coset type."""
    z = _nonzero(z)
    phi = spherical_function_phi(z, n)
    M = zmeasure_by_inner_product(z, n)
    zonal = zonal_spherical_table(n)
    counterexample = None
    for rho in enumerate_partitions(n):
        rhs = sum((M[lam] * zonal(lam, rho) for lam in enumerate_partitions(n)), ExactScalar(0))
        if phi.values[rho] != rhs:
            counterexample = {"rho": list(rho), "phi": phi.values[rho], "sum": rhs}
            break
    return _report(
        "decomposition",
        "phi_z|S(2n)(g) = sum_lam M_{z,1/2}(lam) w^lam(g)",
        n,
        {"z": z},
        counterexample,
        len(phi.values),
    )


def check_explicit_formula(z, n: int) -> CheckReport:
    """Inner-product measure == explicit product formula == general-theta measure at ``(z/2, conj z/2, 1/2)``."""
    from .zmeasure import zmeasure_weight

    z = _nonzero(z)
    M = zmeasure_by_inner_product(z, n)
    params = zmeasure_params_for(z)(n)
    counterexample = None
    for lam in enumerate_partitions(n):
        e = explicit_zmeasure(z, n, lam)
        g = zmeasure_weight(params, lam)
        if not (M[lam] == e == g):
            counterexample = {"lam": list(lam), "inner_product": M[lam], "explicit": e, "general_theta": g}
            break
    return _report(
        "explicit-formula",
        "M_{z,1/2}(lam) = n!/(|z|^2/2)_n prod(z+2(j-1)-(i-1))(conj z+2(j-1)-(i-1))/h(2lam)",
        n,
        {"z": z, "correspondence": "(z/2, conj(z)/2, theta=1/2)"},
        counterexample,
        len(M.entries),
    )


def check_characteristic_map(n: int) -> CheckReport:
    """``ch''(w^lam) = J_lam^(2)`` and the images are orthogonal with norms ``h(2 lam)``."""
    from .symfunc import jack_inner_product

    zonal = zonal_spherical_table(n)
    parts = enumerate_partitions(n)
    images = {lam: characteristic_map(zonal.function(lam)) for lam in parts}
    counterexample = None
    cases = 0
    for lam in parts:
        cases += 1
        if images[lam] != jack_polynomial(lam, 2).expansion:
            counterexample = {"lam": list(lam), "issue": "ch''(w) != J"}
            break
        for mu in parts:
            cases += 1
            ip = jack_inner_product(images[lam], images[mu], 2)
            expected = hook_length_product(double(lam)) if lam == mu else 0
            if ip != expected:
                counterexample = {"lam": list(lam), "mu": list(mu), "inner": ip, "expected": expected}
                break
        if counterexample:
            break
    return _report("characteristic-map", "ch''(w^lam) = J_lam^(2), (J,J) = h(2lam)", n, {}, counterexample, cases)


# ---------------------------------------------------------------------------
# the embedding L_z: functions on X(n) -> functions on X(n+1)


def embedding_scale(z, n: int) -> Fraction:
    """``(2n+1) / (2n+t)``; ``L_z = sqrt(scale) * L~`` with ``L~`` carrying only the branch factors."""
    t = _nonzero(z).abs2()
    return Fraction(2 * n + 1) / (2 * n + t)


def apply_embedding(z, n: int, f: dict[Matching, ExactScalar]) -> dict[Matching, ExactScalar]:
    """``L~ f``: ``z f(p x)`` on the embedded copy of ``X(n)``, ``f(p x)`` elsewhere."""
    z = _nonzero(z)
    top = n + 1
    out = {}
    for x in _matchings(n + 1):
        fx = ExactScalar.coerce(f[canonical_projection(x)])
        out[x] = z * fx if x.partner(top) == -top else fx
    return out


def _embedding_matrix(z: ExactScalar, n: int) -> dict[Matching, tuple[Matching, ExactScalar]]:
    """Row ``x`` of ``L~`` has one nonzero entry, in column ``p(x)``."""
    top = n + 1
    return {
        x: (canonical_projection(x), z if x.partner(top) == -top else ExactScalar(1))
        for x in _matchings(n + 1)
    }


def check_embedding_L(z, n: int, max_n: int = 4) -> CheckReport:
    """Isometry and intertwining of ``L_z^(n)``, exactly.

    ``L~`` is stored as a sparse matrix. Isometry means
    ``s * L~^* L~ = I`` with the uniform inner products on both levels
    (equivalently on every function, not just a sample). Intertwining
    compares the sparse products ``L~ Reg^n(g)`` and ``Reg^(n+1)(g) L~`` for
    every transposition ``g`` in ``S(2n)``. Also checks
    ``L~ z^[.]_n = z^[.]_(n+1)``, i.e. ``L_z F_z^(n) = F_z^(n+1)``.
    """
    z = _nonzero(z)
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > max_n:
        raise CapacityError(f"embedding check bounded by n <= {max_n}")
    s = embedding_scale(z, n)
    xs = _matchings(n)
    L = _embedding_matrix(z, n)
    ratio = Fraction(len(xs), len(L))
    gram: dict[tuple[Matching, Matching], ExactScalar] = {}
    for x, (y, c) in L.items():
        gram[(y, y)] = gram.get((y, y), ExactScalar(0)) + c.abs2()
    counterexample = None
    cases = 0
    for y in xs:
        cases += 1
        value = gram.get((y, y), ExactScalar(0)) * ratio * s
        if value != 1:
            counterexample = {"kind": "isometry", "x": y, "lhs": value, "rhs": 1}
            break
    if counterexample is None and len(gram) != len(xs):
        counterexample = {"kind": "isometry", "issue": "off-diagonal Gram entries"}
    if counterexample is None:
        for g in transpositions(n):
            g_up = g.embed(n + 1)
            for x, (y, c) in L.items():
                cases += 1
                left = (act(y, g), c)  # row x of L~ Reg^n(g)
                left_up = L[act(x, g_up)]  # row x of Reg^(n+1)(g) L~
                if left != left_up:
                    counterexample = {"kind": "intertwining", "g": g, "row": x}
                    break
            if counterexample:
                break
    if counterexample is None:
        cases += 1
        f_n = {x: z ** cycle_count(x) for x in xs}
        f_up = {x: z ** cycle_count(x) for x in _matchings(n + 1)}
        if apply_embedding(z, n, f_n) != f_up:
            counterexample = {"kind": "cyclic-vector"}
    return _report(
        "embedding",
        "L_z^(n) is an isometric embedding intertwining Reg^n and Reg^(n+1)|S(2n)",
        n,
        {"z": z},
        counterexample,
        cases,
    )


def embedded_norm2(z, n: int, f: dict[Matching, ExactScalar]) -> Fraction:
    """``||L_z f||^2`` under the uniform measure on ``X(n+1)``."""
    image = apply_embedding(z, n, f)
    return embedding_scale(z, n) * sum((ExactScalar.coerce(v).abs2() for v in image.values()), Fraction(0)) / len(image)
