"""Young-diagram primitives.

Partitions are plain tuples of positive integers in weakly decreasing order;
``()`` is the empty partition. Boxes are indexed ``(i, j)`` with 1-based row
``i`` and column ``j``. Everything here is exact: functions accept ``int``,
``Fraction`` or :class:`~zmeasures.scalar.ExactScalar` parameters and return
values of the same kind.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Iterator

from .errors import CapacityError

Partition = tuple[int, ...]

MAX_PARTITION_SIZE = 60


def is_partition(parts) -> bool:
    return (
        isinstance(parts, tuple)
        and all(isinstance(p, int) and p > 0 for p in parts)
        and all(parts[i] >= parts[i + 1] for i in range(len(parts) - 1))
    )


def as_partition(parts) -> Partition:
    """Normalize a sequence into a partition, dropping trailing zeros."""
    lam = tuple(int(p) for p in parts if int(p) != 0)
    if not is_partition(lam):
        raise ValueError(f"not a partition: {parts!r}")
    return lam


def iter_partitions(n: int) -> Iterator[Partition]:
    """Partitions of ``n`` in reverse-lexicographic order: ``(n)`` first, ``(1^n)`` last."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        yield ()
        return
    # standard "next partition" step on a multiset of parts
    parts = [n]
    while True:
        yield tuple(parts)
        rem = 0
        while parts and parts[-1] == 1:
            parts.pop()
            rem += 1
        if not parts:
            return
        k = parts.pop() - 1
        rem += 1
        parts.append(k)
        while rem > k:
            parts.append(k)
            rem -= k
        if rem:
            parts.append(rem)


@lru_cache(maxsize=None)
def _partitions_cached(n: int) -> tuple[Partition, ...]:
    return tuple(iter_partitions(n))


def enumerate_partitions(n: int, max_n: int = MAX_PARTITION_SIZE) -> list[Partition]:
    """All partitions of ``n``, reverse-lexicographic.

    Raises :class:`CapacityError` when ``n > max_n``.
    """
    if n > max_n:
        raise CapacityError(f"partition enumeration bounded by n <= {max_n}, got n = {n}")
    return list(_partitions_cached(n))


def transpose(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for part in lam if part >= j) for j in range(1, lam[0] + 1))


def boxes(lam: Partition) -> Iterator[tuple[int, int]]:
    for i, part in enumerate(lam, start=1):
        for j in range(1, part + 1):
            yield i, j


def arm_leg(lam: Partition) -> Iterator[tuple[int, int]]:
    """``(arm, leg)`` for every box, row by row."""
    lamt = transpose(lam)
    for i, part in enumerate(lam, start=1):
        for j in range(1, part + 1):
            yield part - j, lamt[j - 1] - i


def pochhammer(a, n: int):
    """Rising factorial ``a (a+1) ... (a+n-1)``; equals 1 for ``n = 0``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    result = a ** 0
    for k in range(n):
        result = result * (a + k)
    return result


def generalized_pochhammer(z, lam: Partition, theta):
    """Product over boxes of ``z + (j-1) - (i-1)*theta``."""
    theta = _positive(theta)
    result = Fraction(1)
    for i, part in enumerate(lam):
        start = z - i * theta
        for j in range(part):
            result = (start + j) * result
    return result


def hook_products(lam: Partition, theta) -> tuple:
    """The pair ``(H(lam, theta), H'(lam, theta))``.

    ``H`` multiplies ``arm + leg*theta + 1`` over the boxes and ``H'``
    multiplies ``arm + leg*theta + theta``.
    """
    theta = _positive(theta)
    # with theta = p/q every factor is (integer)/q: multiply integers, divide once
    p, q = theta.numerator, theta.denominator
    h = hp = 1
    for arm, leg in arm_leg(lam):
        base = arm * q + leg * p
        h *= base + q
        hp *= base + p
    scale = q ** sum(lam)
    return Fraction(h, scale), Fraction(hp, scale)


def hook_length_product(lam: Partition) -> int:
    return prod(arm + leg + 1 for arm, leg in arm_leg(lam))


def dimension(lam: Partition) -> int:
    """Number of standard Young tableaux of shape ``lam`` (hook length formula)."""
    n = sum(lam)
    q, r = divmod(factorial(n), hook_length_product(lam))
    if r:
        raise ArithmeticError(f"hook length formula not exact for {lam}; hook computation is broken")
    return q


def double(lam: Partition) -> Partition:
    """``2*lam = (2*lam_1, 2*lam_2, ...)``."""
    return tuple(2 * p for p in lam)


def multiplicities(lam: Partition) -> Counter:
    return Counter(lam)


def centralizer_size(rho: Partition) -> int:
    """``z_rho = prod_i i^{m_i} m_i!``, the centralizer order of a permutation of cycle type ``rho``."""
    return prod(i**m * factorial(m) for i, m in Counter(rho).items())


def dominates(lam: Partition, mu: Partition) -> bool:
    """True when ``lam >= mu`` in dominance order (same size assumed)."""
    a = b = 0
    for k in range(max(len(lam), len(mu))):
        a += lam[k] if k < len(lam) else 0
        b += mu[k] if k < len(mu) else 0
        if a < b:
            return False
    return True


def _positive(theta):
    theta = Fraction(theta)
    if theta <= 0:
        raise ValueError(f"Jack parameter must be positive, got {theta}")
    return theta
