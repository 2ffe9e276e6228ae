import itertools
from collections import Counter
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st
from scipy.stats import chisquare

from zmeasures.errors import CapacityError
from zmeasures.matchings import (
    Matching,
    canonical_projection,
    check_ewens_normalization,
    check_pushforward,
    cycle_count,
    cycle_decomposition,
    double_factorial_odd,
    enumerate_matchings,
    ewens_weight,
    iter_matchings,
    parse_cycles,
    preimage,
    render_cycles,
    sample_matching,
    sample_matchings,
    signed_domain,
)

FIG_EXAMPLE = [(1, 3), (-2, 5), (2, -1), (-3, -5), (4, -6), (-4, 6)]


def _brute_matchings(n):
    dom = signed_domain(n)
    seen = set()
    for perm in itertools.permutations(dom):
        seen.add(frozenset(frozenset(perm[i : i + 2]) for i in range(0, 2 * n, 2)))
    return seen


def _graph_cycles(x: Matching) -> int:
    # pair edges plus {a, -a} edges: a union of two perfect matchings, one component per cycle
    g = nx.MultiGraph()
    g.add_edges_from(x.pairs)
    g.add_edges_from((-k, k) for k in range(1, x.n + 1))
    return nx.number_connected_components(g)


def _as_sets(x: Matching):
    return frozenset(frozenset(p) for p in x.pairs)


matchings_upto_5 = st.integers(1, 5).flatmap(lambda n: st.sampled_from(enumerate_matchings(n)))


def test_small_levels():
    assert enumerate_matchings(1) == [Matching.from_pairs([(-1, 1)])]
    # the three pairings of {-2,-1,1,2}; the third is printed with a typo in the source
    listed = [[(-2, -1), (1, 2)], [(-2, 1), (-1, 2)], [(-2, 2), (-1, 1)]]
    assert {_as_sets(x) for x in enumerate_matchings(2)} == {_as_sets(Matching.from_pairs(p)) for p in listed}
    assert len(enumerate_matchings(5)) == 945


@pytest.mark.parametrize("n", range(1, 6))
def test_enumeration_matches_brute_force(n):
    ours = enumerate_matchings(n)
    assert len(ours) == len(set(ours)) == double_factorial_odd(n)
    assert {_as_sets(x) for x in ours} == _brute_matchings(n)


def test_canonical_form():
    x = Matching.from_pairs([(2, -1), (1, -2)])
    assert x.pairs == ((-1, 2), (1, -2))
    assert x == Matching.from_pairs([(-2, 1), (-1, 2)])
    with pytest.raises(ValueError):
        Matching.from_pairs([(1, 2), (1, -1)])
    with pytest.raises(ValueError):
        Matching.from_pairs([(1, -1, 2)])


def test_capacity():
    with pytest.raises(CapacityError):
        enumerate_matchings(9)


def test_cycle_examples():
    one = cycle_decomposition(Matching.identity(1))
    assert one.cycle_count == 1 and one.cycles == ((1, -1),)
    assert cycle_decomposition(Matching.from_pairs([(-2, 2), (-1, 1)])).cycle_count == 2
    fig = cycle_decomposition(Matching.from_pairs(FIG_EXAMPLE, 6))
    assert fig.type == (4, 2) and fig.cycle_count == 2
    assert fig.cycles == ((1, 3, -3, -5, 5, -2, 2, -1), (4, -6, 6, -4))


@pytest.mark.parametrize("n", range(1, 6))
def test_cycle_count_against_graph(n):
    for x in enumerate_matchings(n):
        dec = cycle_decomposition(x)
        assert dec.cycle_count == cycle_count(x) == _graph_cycles(x) == len(dec.type)
        assert sum(dec.type) == n
        assert dec.to_matching(n) == x


@pytest.mark.parametrize("n", range(1, 7))
def test_identity_is_unique_maximizer(n):
    best = [x for x in iter_matchings(n) if cycle_count(x) == n]
    assert best == [Matching.identity(n)]


def test_projection_examples():
    assert canonical_projection(Matching.from_pairs([(-2, 2), (-1, 1)])) == Matching.identity(1)
    assert canonical_projection(Matching.from_pairs([(-2, 1), (-1, 2)])) == Matching.identity(1)


@pytest.mark.parametrize("n", range(1, 6))
def test_preimages(n):
    fibres = Counter(canonical_projection(y) for y in enumerate_matchings(n + 1))
    for x in enumerate_matchings(n):
        pre = preimage(x)
        assert len(pre) == len(set(pre)) == 2 * n + 1 == fibres[x]
        assert all(canonical_projection(y) == x for y in pre)
        assert x.lift() in pre


def test_ewens_examples():
    t = Fraction(7, 3)
    assert ewens_weight(t, Matching.identity(1)) == 1
    weights = [ewens_weight(t, x) for x in enumerate_matchings(2)]
    # enumeration order: identity first, then the two single-cycle matchings
    assert weights == [t / (t + 2), 1 / (t + 2), 1 / (t + 2)]


@pytest.mark.parametrize("t", [Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(5)])
def test_ewens_structure(t):
    for n in range(1, 6):
        assert check_ewens_normalization(t, n).status
        assert check_pushforward(t, n).status
    assert check_ewens_normalization(t, 7).status


def test_pushforward_detects_wrong_measure(monkeypatch):
    import zmeasures.matchings as mod

    monkeypatch.setattr(mod, "ewens_weight", lambda t, x: Fraction(t) ** cycle_count(x) / 7)
    assert not mod.check_pushforward(Fraction(1, 2), 2).status


def test_pushforward_capacity():
    with pytest.raises(CapacityError):
        check_pushforward(1, 8)


def test_render_examples():
    assert render_cycles(Matching.identity(1)) == "X(1)\ncircle 1: 1:cw"
    fig = render_cycles(Matching.from_pairs(FIG_EXAMPLE, 6))
    assert fig.splitlines()[1:] == ["circle 1: 1:cw 3:ccw 5:cw 2:cw", "circle 2: 4:cw 6:cw"]


@given(matchings_upto_5)
def test_render_round_trip(x):
    assert parse_cycles(render_cycles(x)) == x
    assert Matching.from_json(x.to_json(), x.n) == x


def test_sampler_examples():
    assert all(sample_matching(Fraction(5, 2), 1, seed=s) == Matching.identity(1) for s in range(5))
    assert sample_matchings(1, 3, 0, seed=0) == []
    a = sample_matchings(Fraction(3, 2), 4, 200, seed=5)
    assert a == sample_matchings(Fraction(3, 2), 4, 200, seed=5)


@pytest.mark.parametrize("t, expected", [(1, [1 / 3] * 3), (2, [1 / 2, 1 / 4, 1 / 4])])
def test_sampler_level_two(t, expected):
    draws = Counter(sample_matchings(t, 2, 30_000, seed=7))
    observed = [draws[x] for x in enumerate_matchings(2)]
    assert chisquare(observed, [30_000 * p for p in expected]).pvalue > 0.001


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 6), st.integers(0, 2**32))
def test_sampler_support_and_projection(n, seed):
    # projecting a level-n draw gives a level-(n-1) matching: the growth is level-by-level
    xs = sample_matchings(Fraction(2, 3), n, 20, seed)
    assert all(x.n == n for x in xs)
    assert all(canonical_projection(x) in set(iter_matchings(n - 1)) for x in xs)
