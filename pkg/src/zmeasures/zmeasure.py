"""z-measures on partitions with a general Jack parameter.

For ``lam`` a partition of ``n``::

    M(lam) = n! (z)_{lam,theta} (z')_{lam,theta} / ((t)_n H(lam,theta) H'(lam,theta)),
    t = z z' / theta.

``z`` and ``z'`` are Gaussian rationals, ``theta`` a positive rational, so
every weight is computed exactly. For non-admissible parameters the weights
may be negative or complex; they still sum to one.
"""
from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Union

import numpy as np

from .errors import PoleError
from .partitions import (
    MAX_PARTITION_SIZE,
    Partition,
    enumerate_partitions,
    hook_products,
    pochhammer,
    transpose,
)
from .reports import CheckReport
from .scalar import ExactScalar, format_scalar


@dataclass(frozen=True)
class ZMeasureParams:
    z: ExactScalar
    zp: ExactScalar
    theta: Fraction
    n: int

    def __post_init__(self):
        object.__setattr__(self, "z", ExactScalar.coerce(self.z))
        object.__setattr__(self, "zp", ExactScalar.coerce(self.zp))
        theta = Fraction(self.theta)
        if theta <= 0:
            raise ValueError(f"theta must be positive, got {theta}")
        object.__setattr__(self, "theta", theta)
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")

    @property
    def t(self) -> ExactScalar:
        return self.z * self.zp / self.theta

    def with_n(self, n: int) -> ZMeasureParams:
        return ZMeasureParams(self.z, self.zp, self.theta, n)

    def transposed(self) -> ZMeasureParams:
        """Parameters ``(-z/theta, -z'/theta, 1/theta)`` of the mirrored measure."""
        return ZMeasureParams(-self.z / self.theta, -self.zp / self.theta, 1 / self.theta, self.n)

    def as_dict(self) -> dict[str, str]:
        return {
            "z": format_scalar(self.z),
            "zp": format_scalar(self.zp),
            "theta": str(self.theta),
            "n": self.n,
        }


@dataclass(frozen=True)
class Plancherel:
    """The ``z, z' -> infinity`` limit of the z-measures at Jack parameter ``theta``."""

    theta: Fraction
    n: int

    def __post_init__(self):
        theta = Fraction(self.theta)
        if theta <= 0:
            raise ValueError(f"theta must be positive, got {theta}")
        object.__setattr__(self, "theta", theta)

    def as_dict(self) -> dict[str, str]:
        return {"theta": str(self.theta), "n": self.n, "plancherel": True}


@dataclass
class MeasureTable:
    n: int
    entries: dict[Partition, ExactScalar]
    meta: dict[str, Any] = field(default_factory=dict)

    @property
    def total(self) -> ExactScalar:
        return sum(self.entries.values(), ExactScalar(0))

    @property
    def normalized(self) -> bool:
        return self.total == 1

    def __getitem__(self, lam: Partition) -> ExactScalar:
        return self.entries[lam]

    def is_probability(self) -> bool:
        return all(w.im == 0 and w.re >= 0 for w in self.entries.values())

    def to_csv(self) -> str:
        complex_rows = any(w.im for w in self.entries.values())
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        header = ["partition", "numerator", "denominator", "decimal"]
        if complex_rows:
            header += ["imag_numerator", "imag_denominator", "imag_decimal"]
        writer.writerow(header)
        for lam, w in self.entries.items():
            row = [format_partition(lam), w.re.numerator, w.re.denominator, _decimal(w.re)]
            if complex_rows:
                row += [w.im.numerator, w.im.denominator, _decimal(w.im)]
            writer.writerow(row)
        return buf.getvalue()

    def to_json_obj(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "meta": self.meta,
            "normalized": self.normalized,
            "entries": [
                {"partition": list(lam), "weight": format_scalar(w), "decimal": _decimal(w.re)}
                | ({"imag_decimal": _decimal(w.im)} if w.im else {})
                for lam, w in self.entries.items()
            ],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_json_obj(), **kwargs)


def format_partition(lam: Partition) -> str:
    return "(" + ",".join(map(str, lam)) + ")"


def _decimal(x: Fraction, digits: int = 17) -> str:
    return f"{float(x):.{digits}g}"


# ---------------------------------------------------------------------------
# weights


@lru_cache(maxsize=None)
def _hook_pair_product(lam: Partition, theta: Fraction) -> Fraction:
    h, hp = hook_products(lam, theta)
    return h * hp


@lru_cache(maxsize=None)
def _hook_pair_integer(lam: Partition, theta: Fraction) -> int:
    """``H H' q^(2n)`` for ``theta = p/q``: an integer."""
    return int(_hook_pair_product(lam, theta) * theta.denominator ** (2 * sum(lam)))


class _RowPochhammer:
    """Caches ``(z - i*theta)_m`` so each generalized Pochhammer costs one product per row.

    Everything is scaled by the common denominator ``d`` of ``z`` and
    ``theta``, so rows are products of Gaussian integers ``(re, im)``;
    :meth:`__call__` returns the numerator of ``(z)_{lam,theta} * d^|lam|``.
    """

    def __init__(self, z: ExactScalar, theta: Fraction, d: int):
        self.re = int(z.re * d)
        self.im = int(z.im * d)
        self.step = int(theta * d)
        self.d = d
        self._rows: dict[int, list[tuple[int, int]]] = {}

    def row(self, i: int, m: int) -> tuple[int, int]:
        vals = self._rows.setdefault(i, [(1, 0)])
        start = self.re - i * self.step
        while len(vals) <= m:
            a, b = vals[-1]
            c = start + (len(vals) - 1) * self.d
            vals.append((a * c - b * self.im, a * self.im + b * c))
        return vals[m]

    def __call__(self, lam: Partition) -> tuple[int, int]:
        a, b = 1, 0
        for i, part in enumerate(lam):
            c, e = self.row(i, part)
            a, b = a * c - b * e, a * e + b * c
        return a, b


def _common_denominator(*values) -> int:
    d = 1
    for v in values:
        for part in (v.re, v.im) if isinstance(v, ExactScalar) else (v,):
            d = math.lcm(d, Fraction(part).denominator)
    return d


def _normalizer(params: ZMeasureParams) -> ExactScalar:
    tn = pochhammer(params.t, params.n)
    if tn == 0:
        raise PoleError(
            f"(t)_n = 0 for t = {format_scalar(params.t)}, n = {params.n}: "
            "t lies in {0, -1, ..., -(n-1)}"
        )
    return tn


def _weight_function(params: ZMeasureParams):
    tn = _normalizer(params)
    d = _common_denominator(params.z, params.zp, params.theta)
    rz = _RowPochhammer(params.z, params.theta, d)
    rzp = rz if params.zp == params.z else _RowPochhammer(params.zp, params.theta, d)
    # M = n! num_z num_z' / (d^(2n) (t)_n H H'), where H H' = hh / q^(2n)
    q2n = params.theta.denominator ** (2 * params.n)
    scale = ExactScalar(math.factorial(params.n) * q2n, 0) / (tn * d ** (2 * params.n))

    def weight(lam: Partition) -> ExactScalar:
        a, b = rz(lam)
        c, e = rzp(lam)
        hh = _hook_pair_integer(lam, params.theta)
        return scale * ExactScalar(Fraction(a * c - b * e, hh), Fraction(a * e + b * c, hh))

    return weight


def zmeasure_weight(params: ZMeasureParams, lam: Partition) -> ExactScalar:
    """Exact weight ``M^(n)_{z,z',theta}(lam)``."""
    if sum(lam) != params.n:
        raise ValueError(f"partition {lam} does not have {params.n} boxes")
    return _weight_function(params)(tuple(lam))


def zmeasure_table(params: ZMeasureParams, max_n: int = MAX_PARTITION_SIZE) -> MeasureTable:
    """Weights over all partitions of ``n``; ``meta['normalized']`` records the exact sum check."""
    parts = enumerate_partitions(params.n, max_n=max_n)
    weight = _weight_function(params)
    entries = {lam: weight(lam) for lam in parts}
    table = MeasureTable(params.n, entries, {"measure": "z-measure", **params.as_dict()})
    table.meta["normalized"] = table.normalized
    return table


def plancherel_weight(theta, n: int, lam: Partition) -> Fraction:
    """``n! theta^n / (H H')``."""
    theta = Fraction(theta)
    if sum(lam) != n:
        raise ValueError(f"partition {lam} does not have {n} boxes")
    return math.factorial(n) * theta**n / _hook_pair_product(lam, theta)


def plancherel_table(theta, n: int, max_n: int = MAX_PARTITION_SIZE) -> MeasureTable:
    theta = Fraction(theta)
    entries = {
        lam: ExactScalar(plancherel_weight(theta, n, lam))
        for lam in enumerate_partitions(n, max_n=max_n)
    }
    table = MeasureTable(n, entries, {"measure": "plancherel", "theta": str(theta), "n": n})
    table.meta["normalized"] = table.normalized
    return table


# ---------------------------------------------------------------------------
# classification


class Series(str, enum.Enum):
    PRINCIPAL = "principal"
    COMPLEMENTARY = "complementary"
    DEGENERATE = "degenerate"
    NON_ADMISSIBLE = "non-admissible"


DEGENERATE_READINGS = ("as-printed", "corrected")


@dataclass(frozen=True)
class Classification:
    series: Series
    branch: str = ""
    # set only when the questionable "z' = -m" degenerate branch decided the result
    reading: str | None = None

    @property
    def admissible(self) -> bool:
        return self.series is not Series.NON_ADMISSIBLE

    def __str__(self):
        return self.series.value


def _in_cone(x: Fraction, theta: Fraction) -> bool:
    """Is ``x`` in ``Z_{<=0} + Z_{>=0} theta``?"""
    q = theta.denominator
    b0 = max(0, math.ceil(x / theta))
    return any((x - b * theta).denominator == 1 for b in range(b0, b0 + q))


def _positive_integer(x: Fraction) -> int | None:
    if x.denominator == 1 and x >= 1:
        return int(x)
    return None


def classify_parameters(z, zp, theta, degenerate_reading: str = "corrected") -> Classification:
    """Sort ``(z, z', theta)`` into principal / complementary / degenerate / non-admissible.

    ``degenerate_reading`` picks the form of the second degenerate family's
    ``z' = -m`` branch: ``"corrected"`` (default) uses ``z < -m + 1``, mirroring
    the ``z = -m`` branch; ``"as-printed"`` uses ``z < m - 1``. The latter admits
    parameters with negative weights (e.g. ``z = 1/3, z' = -2, theta = 1`` at
    ``n = 2``), so it is kept only for comparison.
    """
    if degenerate_reading not in DEGENERATE_READINGS:
        raise ValueError(f"degenerate_reading must be one of {DEGENERATE_READINGS}")
    z = ExactScalar.coerce(z)
    zp = ExactScalar.coerce(zp)
    theta = Fraction(theta)
    if theta <= 0:
        raise ValueError("theta must be positive")

    if zp == z.conjugate() and not (z.im == 0 and _in_cone(z.re, theta)):
        return Classification(Series.PRINCIPAL, "z' = conj(z)")

    if z.im or zp.im:
        return Classification(Series.NON_ADMISSIBLE)
    a, b = z.re, zp.re

    # Z + Z*theta is the lattice (1/q)Z for theta = p/q in lowest terms
    q = theta.denominator
    if (a * q).denominator != 1 and (b * q).denominator != 1:
        if math.floor(a * q) == math.floor(b * q):
            return Classification(Series.COMPLEMENTARY, f"in ({math.floor(a * q)}/{q}, {math.floor(a * q) + 1}/{q})")

    for x, y, name in ((a, b, "z"), (b, a, "z'")):
        m = _positive_integer(x / theta)
        if m is not None and y > (m - 1) * theta:
            return Classification(Series.DEGENERATE, f"{name} = {m}*theta")

    m = _positive_integer(-a)
    if m is not None and b < -m + 1:
        return Classification(Series.DEGENERATE, f"z = -{m}")
    m = _positive_integer(-b)
    if m is not None:
        bound = m - 1 if degenerate_reading == "as-printed" else -m + 1
        if a < bound:
            return Classification(Series.DEGENERATE, f"z' = -{m}", reading=degenerate_reading)
        if a < m - 1:
            # the readings disagree here; say so rather than decide silently
            return Classification(Series.NON_ADMISSIBLE, f"z' = -{m}; degenerate under as-printed", reading=degenerate_reading)
    return Classification(Series.NON_ADMISSIBLE)


# ---------------------------------------------------------------------------
# checks


def check_transposition_symmetry(params: ZMeasureParams) -> CheckReport:
    """Compare ``M_{z,z',theta}(lam)`` with ``M_{-z/theta,-z'/theta,1/theta}(lam')`` for all ``lam``."""
    left = zmeasure_table(params)
    right = zmeasure_table(params.transposed())
    counterexample = None
    for lam, w in left.entries.items():
        if right.entries[transpose(lam)] != w:
            counterexample = {"partition": list(lam), "lhs": w, "rhs": right.entries[transpose(lam)]}
            break
    return CheckReport(
        identity="transposition",
        anchor="M_{z,z',theta}(lam) = M_{-z/theta,-z'/theta,1/theta}(lam')",
        n=params.n,
        params=params.as_dict(),
        status=counterexample is None,
        counterexample=counterexample,
        cases=len(left.entries),
    )


def check_normalization(params: ZMeasureParams) -> CheckReport:
    table = zmeasure_table(params)
    total = table.total
    return CheckReport(
        identity="normalization",
        anchor="sum over partitions of n of M_{z,z',theta} = 1",
        n=params.n,
        params=params.as_dict(),
        status=total == 1,
        counterexample=None if total == 1 else {"sum": total},
        cases=len(table.entries),
    )


# ---------------------------------------------------------------------------
# sampling

_RESOLUTION_BITS = 63


def sample_from_table(table: MeasureTable, count: int, seed: int) -> list[Partition]:
    """Inverse-CDF draws from an exact nonnegative table.

    Uniform integers ``k`` in ``[0, 2^63)`` are compared against the exact
    thresholds ``ceil(2^63 * cdf)``, so no weight is ever rounded to a float.
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    if not table.is_probability():
        raise ValueError("table has negative or complex weights; cannot sample")
    keys = list(table.entries)
    scale = 1 << _RESOLUTION_BITS
    thresholds, acc = [], Fraction(0)
    for lam in keys:
        acc += table.entries[lam].re
        thresholds.append(-((-acc * scale) // 1))  # ceil
    if acc != 1:
        raise ValueError("table is not normalized")
    if count == 0:
        return []
    rng = np.random.default_rng(seed)
    draws = rng.integers(0, scale, size=count, dtype=np.uint64)
    idx = np.searchsorted(np.array(thresholds, dtype=np.uint64), draws, side="right")
    return [keys[i] for i in idx]


def sample_partitions(
    params: Union[ZMeasureParams, Plancherel],
    count: int,
    seed: int,
    degenerate_reading: str = "corrected",
) -> list[Partition]:
    """``count`` i.i.d. partitions from a z-measure or a Plancherel measure."""
    if isinstance(params, Plancherel):
        table = plancherel_table(params.theta, params.n)
    else:
        cls = classify_parameters(params.z, params.zp, params.theta, degenerate_reading)
        if not cls.admissible:
            raise ValueError(
                f"parameters z={params.z}, z'={params.zp}, theta={params.theta} are {cls.series.value}; "
                "the z-measure is not a probability measure"
            )
        table = zmeasure_table(params)
    return sample_from_table(table, count, seed)
