import csv
import io
import json
from fractions import Fraction
from math import factorial

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from zmeasures.errors import PoleError
from zmeasures.partitions import dimension, enumerate_partitions, transpose
from zmeasures.scalar import ExactScalar
from zmeasures.zmeasure import (
    Plancherel,
    Series,
    ZMeasureParams,
    check_normalization,
    check_transposition_symmetry,
    classify_parameters,
    plancherel_table,
    plancherel_weight,
    sample_partitions,
    zmeasure_table,
    zmeasure_weight,
)

I = ExactScalar(0, 1)
GRID = [
    (z, zp, theta)
    for z in (ExactScalar(2), ExactScalar(Fraction(5, 3)), 1 + I)
    for zp in (ExactScalar(3), None)
    for theta in (Fraction(1, 2), Fraction(1), Fraction(2))
]


def _params(z, zp, theta, n):
    return ZMeasureParams(z, z.conjugate() if zp is None else zp, theta, n)


def _sym(s: ExactScalar):
    return sympy.Rational(s.re.numerator, s.re.denominator) + sympy.I * sympy.Rational(s.im.numerator, s.im.denominator)


def _oracle(z, zp, theta, lam):
    """The defining formula evaluated box by box in sympy."""
    z, zp, th = _sym(z), _sym(zp), sympy.Rational(theta.numerator, theta.denominator)
    n = sum(lam)
    conj = transpose(lam)
    num, H, Hp = sympy.Integer(1), sympy.Integer(1), sympy.Integer(1)
    for i, row in enumerate(lam, start=1):
        for j in range(1, row + 1):
            num *= (z + (j - 1) - (i - 1) * th) * (zp + (j - 1) - (i - 1) * th)
            arm, leg = row - j, conj[j - 1] - i
            H *= arm + leg * th + 1
            Hp *= arm + leg * th + th
    t = z * zp / th
    return sympy.expand(factorial(n) * num / (sympy.rf(t, n) * H * Hp))


def test_spec_examples():
    p = ZMeasureParams(2, 3, 1, 2)
    assert zmeasure_weight(p, (2,)) == Fraction(6, 7)
    assert zmeasure_weight(p, (1, 1)) == Fraction(1, 7)
    assert zmeasure_table(p).entries == {(2,): Fraction(6, 7), (1, 1): Fraction(1, 7)}
    for z, zp, theta in GRID:
        assert zmeasure_table(_params(z, zp, theta, 1)).entries == {(1,): 1}


def test_t_is_derived():
    p = ZMeasureParams(1 + I, 1 - I, Fraction(1, 2), 3)
    assert p.t == 4
    with pytest.raises(AttributeError):
        p.t = 5


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_weights_match_sympy_oracle(n):
    for z, zp, theta in GRID:
        p = _params(z, zp, theta, n)
        for lam in enumerate_partitions(n):
            assert _sym(zmeasure_weight(p, lam)) == _oracle(p.z, p.zp, theta, lam)


@pytest.mark.parametrize("t", [0, -1, -2])
def test_pole(t):
    # z z' / theta = t with theta = 1
    with pytest.raises(PoleError):
        zmeasure_table(ZMeasureParams(ExactScalar(t), 1, 1, 3))


@pytest.mark.parametrize("n", range(1, 13))
def test_normalization_on_grid(n):
    for z, zp, theta in GRID:
        assert check_normalization(_params(z, zp, theta, n)).status


@pytest.mark.parametrize("n", range(1, 8))
def test_transposition_symmetry(n):
    for z, zp, theta in GRID:
        assert check_transposition_symmetry(_params(z, zp, theta, n)).status


def test_transposition_theta_one_self_symmetry():
    p = ZMeasureParams(Fraction(7, 2), Fraction(1, 3), 1, 6)
    left = zmeasure_table(p)
    right = zmeasure_table(ZMeasureParams(-p.z, -p.zp, 1, 6))
    assert all(left[lam] == right[transpose(lam)] for lam in left.entries)


def test_plancherel_examples():
    assert plancherel_weight(1, 2, (2,)) == Fraction(1, 2)
    assert plancherel_weight(1, 2, (1, 1)) == Fraction(1, 2)
    for n in range(1, 9):
        for lam in enumerate_partitions(n):
            assert plancherel_weight(1, n, lam) == Fraction(dimension(lam) ** 2, factorial(n))
    for theta in (Fraction(1, 2), Fraction(3, 5), 2):
        assert plancherel_table(theta, 7).normalized


@pytest.mark.parametrize("theta", [Fraction(1, 2), Fraction(1), Fraction(2)])
def test_plancherel_limit(theta):
    # first order in 1/z the relative error is 2|sum over boxes of (j-1)-(i-1)theta| / z,
    # at most max(1, theta) n(n-1) / z; the flat 10 n / z bound only holds for theta <= 1 here
    big = ExactScalar(10**6)
    for n in (2, 5, 8):
        table = zmeasure_table(ZMeasureParams(big, big, theta, n))
        for lam, w in table.entries.items():
            ref = plancherel_weight(theta, n, lam)
            rel = abs(w.re - ref) / ref
            assert rel <= Fraction(101, 100) * max(1, theta) * n * (n - 1) / big.re
            if theta <= 1:
                assert rel <= Fraction(10 * n, 10**6)


@pytest.mark.parametrize(
    "z, zp, theta, series",
    [
        (1 + I, 1 - I, Fraction(1, 2), Series.PRINCIPAL),
        (Fraction(1, 3), Fraction(1, 4), Fraction(1, 2), Series.COMPLEMENTARY),
        (Fraction(3, 2), Fraction(7, 5), Fraction(1, 2), Series.DEGENERATE),
        (ExactScalar(-2), Fraction(1, 2), Fraction(1), Series.NON_ADMISSIBLE),
        (1 + I, ExactScalar(3), Fraction(1), Series.NON_ADMISSIBLE),
        (ExactScalar(-2), Fraction(-5, 2), Fraction(1), Series.DEGENERATE),
    ],
)
def test_classify_examples(z, zp, theta, series):
    assert classify_parameters(z, zp, theta).series is series


def test_principal_excludes_cone():
    # z = -1 + 2 theta lies in Z_{<=0} + Z_{>=0} theta
    assert classify_parameters(0, 0, Fraction(1, 2)).series is not Series.PRINCIPAL
    assert classify_parameters(Fraction(1, 3), Fraction(1, 3), 1).series is Series.PRINCIPAL


def test_degenerate_readings_differ():
    # as printed, z' = -2 with z < 1 is "degenerate", but the n = 2 measure is not positive
    z, zp, theta = Fraction(1, 3), -2, 1
    printed = classify_parameters(z, zp, theta, degenerate_reading="as-printed")
    corrected = classify_parameters(z, zp, theta)
    assert printed.series is Series.DEGENERATE and printed.reading == "as-printed"
    assert corrected.series is Series.NON_ADMISSIBLE
    assert not zmeasure_table(ZMeasureParams(z, zp, theta, 2)).is_probability()


def _degenerate_params():
    thetas = [Fraction(1, 2), Fraction(1), Fraction(2), Fraction(2, 3)]
    reals = [Fraction(k, 6) for k in range(-30, 31)]
    for theta in thetas:
        for a in reals:
            for b in reals:
                cls = classify_parameters(a, b, theta)
                if cls.series in (Series.DEGENERATE, Series.COMPLEMENTARY) and a * b:
                    yield a, b, theta


def test_admissible_series_are_nonnegative():
    # every degenerate/complementary point of a lattice of real parameters; several n
    checked = 0
    for a, b, theta in _degenerate_params():
        for n in (2, 3, 5):
            p = ZMeasureParams(a, b, theta, n)
            if p.t == 0 or (p.t.re < 0 and p.t.re.denominator == 1 and -p.t.re < n):
                continue
            assert zmeasure_table(p).is_probability(), (a, b, theta, n)
            checked += 1
    assert checked > 100


@settings(max_examples=40, deadline=None)
@given(
    st.fractions(min_value=-5, max_value=5, max_denominator=7),
    st.fractions(min_value=-5, max_value=5, max_denominator=7).filter(bool),
    st.sampled_from([Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3, 5)]),
    st.integers(1, 12),
)
def test_principal_series_positive(re, im, theta, n):
    z = ExactScalar(re, im)
    p = ZMeasureParams(z, z.conjugate(), theta, n)
    assert classify_parameters(p.z, p.zp, theta).series is Series.PRINCIPAL
    table = zmeasure_table(p)
    assert table.is_probability() and table.normalized


@settings(max_examples=30, deadline=None)
@given(
    st.fractions(min_value=-4, max_value=4, max_denominator=5),
    st.fractions(min_value=-4, max_value=4, max_denominator=5),
    st.sampled_from([Fraction(1, 2), Fraction(1), Fraction(3, 2)]),
    st.integers(1, 8),
)
def test_normalization_any_parameters(z, zp, theta, n):
    p = ZMeasureParams(z, zp, theta, n)
    t = p.t.re
    if t.denominator == 1 and -n < t <= 0:
        with pytest.raises(PoleError):
            zmeasure_table(p)
    else:
        assert zmeasure_table(p).total == 1


def test_csv_and_json():
    table = zmeasure_table(ZMeasureParams(2, 3, 1, 2))
    rows = list(csv.DictReader(io.StringIO(table.to_csv())))
    assert [r["partition"] for r in rows] == ["(2)", "(1,1)"]
    assert (rows[0]["numerator"], rows[0]["denominator"]) == ("6", "7")
    assert float(rows[1]["decimal"]) == pytest.approx(1 / 7)
    doc = json.loads(table.to_json())
    assert doc["normalized"] is True and doc["entries"][0]["weight"] == "6/7"
    complex_table = zmeasure_table(ZMeasureParams(1 + I, 3, 1, 2))
    assert "imag_numerator" in complex_table.to_csv().splitlines()[0]


def test_sampler_basics():
    p = ZMeasureParams(2, 3, 1, 4)
    assert sample_partitions(p, 0, seed=1) == []
    a = sample_partitions(p, 500, seed=11)
    assert a == sample_partitions(p, 500, seed=11)
    assert a != sample_partitions(p, 500, seed=12)
    assert set(a) <= set(enumerate_partitions(4))
    with pytest.raises(ValueError, match="non-admissible"):
        sample_partitions(ZMeasureParams(1 + I, 3, 1, 2), 5, seed=0)


def test_sampler_frequencies():
    draws = sample_partitions(ZMeasureParams(2, 3, 1, 2), 70_000, seed=1)
    freq = draws.count((2,)) / len(draws)
    sigma = (6 / 49 / 70_000) ** 0.5
    assert abs(freq - 6 / 7) < 3 * sigma
    draws = sample_partitions(Plancherel(1, 2), 40_000, seed=3)
    assert abs(draws.count((2,)) / 40_000 - 0.5) < 3 * (0.25 / 40_000) ** 0.5
