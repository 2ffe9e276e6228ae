import itertools
import random
from fractions import Fraction
from functools import lru_cache
from math import factorial

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from zmeasures.errors import CapacityError, LevelMismatchError
from zmeasures.groups import (
    SignedPermutation,
    act,
    character,
    character_table,
    check_cocycle_additivity,
    check_cocycle_stability,
    check_quasi_invariance,
    class_size,
    cocycle,
    coset_representative,
    coset_type,
    identity,
    iter_hyperoctahedral,
    iter_symmetric_group,
    t_breve,
    transpositions,
)
from zmeasures.matchings import (
    Matching,
    canonical_projection,
    cycle_count,
    cycle_decomposition,
    enumerate_matchings,
    signed_domain,
)
from zmeasures.partitions import centralizer_size, dimension, enumerate_partitions

# H(2) as listed, one-line images of (-2, -1, 1, 2)
H2_LISTED = [
    (-2, -1, 1, 2), (2, -1, 1, -2), (-2, 1, -1, 2), (2, 1, -1, -2),
    (-1, -2, 2, 1), (1, -2, 2, -1), (-1, 2, -2, 1), (1, 2, -2, -1),
]


def perms(n):
    dom = signed_domain(n)
    return st.permutations(dom).map(lambda images: SignedPermutation(n, tuple(images)))


level_and_triple = st.integers(1, 4).flatmap(
    lambda n: st.tuples(st.sampled_from(enumerate_matchings(n)), perms(n), perms(n))
)


@lru_cache(maxsize=None)
def _frobenius_polys(m):
    """``a_delta * p_rho`` in ``m`` variables for every ``rho``, as sympy polynomials."""
    xs = sympy.symbols(f"x0:{m}")
    vandermonde = sympy.Poly(sympy.prod(xs[i] - xs[j] for i in range(m) for j in range(i + 1, m)), *xs)
    out = {}
    for rho in enumerate_partitions(m):
        poly = vandermonde
        for r in rho:
            poly = poly * sympy.Poly(sum(x**r for x in xs), *xs)
        out[rho] = poly
    return xs, out


def _frobenius_character(lam, rho):
    """Coefficient of x^(lam + delta) in a_delta * p_rho."""
    m = sum(lam)
    xs, polys = _frobenius_polys(m)
    padded = list(lam) + [0] * (m - len(lam))
    exps = [padded[i] + m - 1 - i for i in range(m)]
    return polys[rho].coeff_monomial(sympy.prod(x**e for x, e in zip(xs, exps)))


def test_group_laws():
    for n in (1, 2, 3):
        e = identity(n)
        for g in itertools.islice(iter_symmetric_group(n), 200):
            assert g * g.inverse() == e == g.inverse() * g
        assert t_breve(n) * t_breve(n) == e
    g = SignedPermutation.transposition(1, 2, 2)
    with pytest.raises(LevelMismatchError):
        g * identity(3)
    with pytest.raises(ValueError):
        SignedPermutation(2, (1, 1, 2, -2))


def test_composition_is_left_to_right():
    g = SignedPermutation.transposition(1, 2, 2)
    h = SignedPermutation.transposition(2, -1, 2)
    assert (g * h)(1) == h(g(1)) == -1


def test_hyperoctahedral_two_matches_listing():
    assert {g.images for g in iter_hyperoctahedral(2)} == set(H2_LISTED)
    tb = t_breve(2)
    assert tb.images == (2, 1, -1, -2)
    for images in H2_LISTED:
        g = SignedPermutation(2, images)
        assert g * tb == tb * g
    # the involution printed alongside the listing, (-2,-1)(1,2), is not centralized by all of them
    printed = SignedPermutation.from_mapping({-2: -1, -1: -2, 1: 2, 2: 1}, 2)
    assert any(SignedPermutation(2, im) * printed != printed * SignedPermutation(2, im) for im in H2_LISTED)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_hyperoctahedral_is_centralizer(n):
    tb = t_breve(n)
    centralizer = {g for g in iter_symmetric_group(n) if g * tb == tb * g}
    predicate = {g for g in iter_symmetric_group(n) if g.is_hyperoctahedral()}
    listed = set(iter_hyperoctahedral(n))
    assert centralizer == predicate == listed
    assert len(listed) == 2**n * factorial(n)


def test_symmetric_group_capacity():
    with pytest.raises(CapacityError):
        next(iter_symmetric_group(5))


@pytest.mark.parametrize("n", [1, 2])
def test_right_action_exhaustive(n):
    group = list(iter_symmetric_group(n))
    for x in enumerate_matchings(n):
        assert act(x, identity(n)) == x
        for g, h in itertools.product(group, group):
            assert act(act(x, g), h) == act(x, g * h)


@settings(max_examples=200, deadline=None)
@given(level_and_triple)
def test_right_action_random(triple):
    x, g, h = triple
    assert act(act(x, g), h) == act(x, g * h)
    assert cocycle(x, g * h) == cocycle(act(x, g), h) + cocycle(x, g)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_transitive_and_stabilizer(n):
    e = Matching.identity(n)
    orbit = {act(e, g) for g in iter_symmetric_group(n)}
    assert orbit == set(enumerate_matchings(n))
    if n <= 3:
        assert {g for g in iter_symmetric_group(n) if act(e, g) == e} == set(iter_hyperoctahedral(n))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_projection_equivariance(n):
    for g in iter_symmetric_group(n):
        g_up = g.embed(n + 1)
        for x in enumerate_matchings(n + 1):
            assert canonical_projection(act(x, g_up)) == act(canonical_projection(x), g)


def test_coset_type_examples():
    assert coset_type(identity(3)) == (1, 1, 1)
    assert coset_type(SignedPermutation.transposition(1, 2, 2)) == (2,)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_coset_types_cover_partitions(n):
    assert {coset_type(g) for g in iter_symmetric_group(n)} == set(enumerate_partitions(n))


def test_coset_types_level_five():
    assert {coset_type(coset_representative(rho)) for rho in enumerate_partitions(5)} == set(enumerate_partitions(5))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_coset_type_constant_on_double_cosets(n):
    hyper = list(iter_hyperoctahedral(n))
    for g in iter_symmetric_group(n):
        rho = coset_type(g)
        assert all(coset_type(h * g) == rho for h in hyper)
        assert all(coset_type(g * h) == rho for h in hyper)
        # and it agrees with the cycle type of the moved identity matching
        assert rho == cycle_decomposition(act(Matching.identity(n), g)).type


def test_coset_representatives():
    for n in range(1, 7):
        for rho in enumerate_partitions(n):
            g = coset_representative(rho)
            assert g.n == n and all(g(k) == k for k in range(1, n + 1))
            if n <= 4:
                assert coset_type(g) == rho


def test_cocycle_examples():
    x = Matching.from_pairs([(1, 3), (-2, 5), (2, -1), (-3, -5), (4, -6), (-4, 6)], 6)
    assert cocycle(x, identity(6)) == 0
    assert cocycle(Matching.identity(2), SignedPermutation.transposition(1, 2, 2)) == -1


@pytest.mark.parametrize("n", [2, 3, 4])
def test_cocycle_transposition_cases(n):
    for x in enumerate_matchings(n):
        cycles = [set(c) for c in cycle_decomposition(x).cycles]
        where = {a: k for k, c in enumerate(cycles) for a in c}
        for g in transpositions(n):
            i, j = (a for a in signed_domain(n) if g(a) != a)
            c = cocycle(x, g)
            if where[i] != where[j]:
                assert c == -1
            else:
                assert c in (0, 1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_cocycle_checks_exhaustive(n):
    assert check_cocycle_stability(n).status
    report = check_cocycle_additivity(n)
    assert report.status and report.cases == len(enumerate_matchings(n)) * factorial(2 * n) ** 2


def test_cocycle_checks_random():
    assert check_cocycle_stability(4, samples=2000, seed=3).status
    assert check_cocycle_additivity(4, samples=2000, seed=3).status


def test_cocycle_range():
    rng = random.Random(0)
    for n in (2, 3, 4):
        xs = enumerate_matchings(n)
        for _ in range(300):
            g = SignedPermutation(n, tuple(rng.sample(signed_domain(n), 2 * n)))
            assert abs(cocycle(rng.choice(xs), g)) <= n - 1


@pytest.mark.parametrize("t", [Fraction(1, 2), Fraction(1), Fraction(2)])
def test_quasi_invariance(t):
    for n in (1, 2, 3):
        assert check_quasi_invariance(t, n).status


def test_quasi_invariance_haar_and_hyperoctahedral():
    from zmeasures.matchings import ewens_weight

    xs = enumerate_matchings(3)
    # t = 1: every g preserves the uniform measure
    assert all(ewens_weight(1, act(x, g)) == ewens_weight(1, x) for x in xs for g in transpositions(3))
    # g in H(n) fixes the identity matching, so the cocycle vanishes there
    e = Matching.identity(3)
    assert all(cocycle(e, h) == 0 for h in iter_hyperoctahedral(3))


def test_characters_spot_values():
    table = character_table(4)
    # rows (4), (3,1), (2,2), (2,1,1), (1^4); columns in the same order
    assert table.row((3, 1)) == [-1, 0, -1, 1, 3]
    assert table.row((2, 2)) == [0, -1, 2, 0, 2]
    assert table.row((1, 1, 1, 1)) == [-1, 1, 1, -1, 1]


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_characters_match_frobenius(m):
    for lam in enumerate_partitions(m):
        for rho in enumerate_partitions(m):
            assert character(lam, rho) == _frobenius_character(lam, rho)


@pytest.mark.parametrize("m", range(1, 11))
def test_character_orthogonality(m):
    parts = enumerate_partitions(m)
    table = character_table(m)
    for mu in parts:
        assert table((m,), mu) == 1
        assert table(mu, (1,) * m) == dimension(mu)
        for nu in parts:
            s = sum(Fraction(table(mu, rho) * table(nu, rho), centralizer_size(rho)) for rho in parts)
            assert s == (1 if mu == nu else 0)
    assert sum(class_size(rho) for rho in parts) == factorial(m)


@given(st.integers(1, 4).flatmap(perms))
def test_one_line_round_trip(g):
    assert SignedPermutation.from_json(g.to_json()) == g
    assert SignedPermutation.from_mapping(g.as_dict(), g.n) == g
