"""The groups ``S(2n)`` and ``H(n)`` acting on matchings, plus symmetric-group characters.

Permutations act on the signed domain ``{-n, ..., -1, 1, ..., n}``. Products
compose left to right: ``(g * h)(a) = h(g(a))``. With this convention the
action ``x . g = {{g(i1), g(i2)}, ...}`` on matchings is a right action,
``(x . g) . h = x . (g * h)``.

Serialization uses one-line notation over the signed domain: the list
``[g(-n), ..., g(-1), g(1), ..., g(n)]``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterator

import numpy as np

from .errors import CapacityError, LevelMismatchError
from .matchings import (
    MAX_MATCHING_LEVEL,
    Matching,
    cycle_count,
    cycle_decomposition,
    ewens_weight,
    iter_matchings,
    signed_domain,
)
from .partitions import Partition, centralizer_size, enumerate_partitions
from .reports import CheckReport

MAX_GROUP_LEVEL = 4  # |S(8)| = 40320


def _index(a: int, n: int) -> int:
    return a + n if a < 0 else a + n - 1


@dataclass(frozen=True, slots=True)
class SignedPermutation:
    n: int
    images: tuple[int, ...]  # one-line: images of -n..-1, 1..n

    def __post_init__(self):
        if sorted(self.images) != signed_domain(self.n):
            raise ValueError(f"not a bijection of the signed domain of level {self.n}: {self.images}")

    @classmethod
    def from_mapping(cls, mapping: dict[int, int], n: int) -> SignedPermutation:
        return cls(n, tuple(mapping.get(a, a) for a in signed_domain(n)))

    @classmethod
    def identity(cls, n: int) -> SignedPermutation:
        return cls(n, tuple(signed_domain(n)))

    @classmethod
    def transposition(cls, i: int, j: int, n: int) -> SignedPermutation:
        return cls.from_mapping({i: j, j: i}, n)

    def __call__(self, a: int) -> int:
        return self.images[_index(a, self.n)]

    def as_dict(self) -> dict[int, int]:
        return dict(zip(signed_domain(self.n), self.images))

    def __mul__(self, other: SignedPermutation) -> SignedPermutation:
        """``self`` first, then ``other``."""
        if not isinstance(other, SignedPermutation):
            return NotImplemented
        _same_level(self, other)
        return SignedPermutation(self.n, tuple(other(a) for a in self.images))

    def inverse(self) -> SignedPermutation:
        inv = {b: a for a, b in zip(signed_domain(self.n), self.images)}
        return SignedPermutation(self.n, tuple(inv[a] for a in signed_domain(self.n)))

    def embed(self, m: int) -> SignedPermutation:
        """The same permutation inside ``S(2m)``, fixing the new points."""
        if m < self.n:
            raise LevelMismatchError(f"cannot embed level {self.n} into level {m}")
        mapping = self.as_dict()
        return SignedPermutation.from_mapping(mapping, m)

    def is_hyperoctahedral(self) -> bool:
        """``g(-k) = -g(k)`` for every ``k``."""
        return all(self(-k) == -self(k) for k in range(1, self.n + 1))

    def cycle_type(self) -> Partition:
        """Cycle type as a partition of ``2n``."""
        mapping = self.as_dict()
        seen = set()
        lengths = []
        for a in mapping:
            if a in seen:
                continue
            length = 0
            b = a
            while b not in seen:
                seen.add(b)
                b = mapping[b]
                length += 1
            lengths.append(length)
        return tuple(sorted(lengths, reverse=True))

    def to_json_obj(self) -> list[int]:
        return list(self.images)

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_one_line(cls, images) -> SignedPermutation:
        images = tuple(int(a) for a in images)
        if len(images) % 2:
            raise ValueError("one-line notation over the signed domain has even length")
        return cls(len(images) // 2, images)

    @classmethod
    def from_json(cls, text: str) -> SignedPermutation:
        return cls.from_one_line(json.loads(text))


def _same_level(*objs) -> int:
    levels = {o.n for o in objs}
    if len(levels) != 1:
        raise LevelMismatchError(f"objects live on different levels: {sorted(levels)}")
    return levels.pop()


def compose(g: SignedPermutation, h: SignedPermutation) -> SignedPermutation:
    return g * h


def invert(g: SignedPermutation) -> SignedPermutation:
    return g.inverse()


def identity(n: int) -> SignedPermutation:
    return SignedPermutation.identity(n)


def t_breve(n: int) -> SignedPermutation:
    """The fixed-point-free involution ``(-n n) ... (-1 1)``."""
    return SignedPermutation(n, tuple(-a for a in signed_domain(n)))


def iter_symmetric_group(n: int, max_n: int = MAX_GROUP_LEVEL) -> Iterator[SignedPermutation]:
    """All of ``S(2n)``."""
    if n > max_n:
        raise CapacityError(f"S(2n) enumeration bounded by n <= {max_n}, got n = {n}")
    for images in itertools.permutations(signed_domain(n)):
        yield SignedPermutation(n, images)


def iter_hyperoctahedral(n: int) -> Iterator[SignedPermutation]:
    """All ``2^n n!`` signed permutations."""
    for perm in itertools.permutations(range(1, n + 1)):
        for signs in itertools.product((1, -1), repeat=n):
            mapping = {}
            for k, (image, s) in enumerate(zip(perm, signs), start=1):
                mapping[k] = s * image
                mapping[-k] = -s * image
            yield SignedPermutation.from_mapping(mapping, n)


def transpositions(n: int) -> Iterator[SignedPermutation]:
    dom = signed_domain(n)
    for i, j in itertools.combinations(dom, 2):
        yield SignedPermutation.transposition(i, j, n)


# ---------------------------------------------------------------------------
# action on matchings


def act(x: Matching, g: SignedPermutation) -> Matching:
    """Right action ``x . g``."""
    _same_level(x, g)
    return Matching.from_pairs([(g(a), g(b)) for a, b in x.pairs], x.n)


def coset_type(g: SignedPermutation) -> Partition:
    """Partition of ``n`` labelling the double coset ``H(n) g H(n)``.

    Read off as the cycle type of the identity matching moved by ``g``.
    """
    return cycle_decomposition(act(Matching.identity(g.n), g)).type


def coset_representative(rho: Partition) -> SignedPermutation:
    """A canonical ``g`` with ``coset_type(g) == rho``.

    Each part ``r`` takes the next block of labels ``a_1 < ... < a_r`` and
    maps ``-a_i`` to ``-a_{i+1}`` cyclically, fixing the positive labels, so
    the identity matching becomes ``{a_1,-a_2}, {a_2,-a_3}, ..., {a_r,-a_1}``:
    a single cycle through ``r`` pairs.
    """
    n = sum(rho)
    mapping = {}
    start = 1
    for r in rho:
        block = list(range(start, start + r))
        for i, a in enumerate(block):
            mapping[-a] = -block[(i + 1) % r]
        start += r
    return SignedPermutation.from_mapping(mapping, n)


def cocycle(x: Matching, g: SignedPermutation) -> int:
    """``c(x; g) = [x . g] - [x]``."""
    return cycle_count(act(x, g)) - cycle_count(x)


def random_permutation(n: int, rng: np.random.Generator) -> SignedPermutation:
    dom = signed_domain(n)
    return SignedPermutation(n, tuple(dom[i] for i in rng.permutation(len(dom))))


def check_cocycle_stability(n: int, samples: int | None = None, seed: int = 0) -> CheckReport:
    """``c(p(x); g) == c(x; g)`` for ``x`` in ``X(n+1)`` and ``g`` in ``S(2n)`` (embedded).

    Exhaustive over ``X(n+1) x S(2n)`` unless ``samples`` is given, in which
    case that many random pairs are drawn.
    """
    from .matchings import canonical_projection

    if samples is None:
        pairs = itertools.product(iter_matchings(n + 1), iter_symmetric_group(n))
    else:
        rng = np.random.default_rng(seed)
        xs = list(iter_matchings(n + 1))
        pairs = ((xs[rng.integers(len(xs))], random_permutation(n, rng)) for _ in range(samples))
    counterexample = None
    cases = 0
    for x, g in pairs:
        cases += 1
        if cocycle(canonical_projection(x), g) != cocycle(x, g.embed(n + 1)):
            counterexample = {"matching": x, "g": g}
            break
    return CheckReport(
        identity="cocycle-stability",
        anchor="[p(x).g]_n - [p(x)]_n = [x.g]_(n+1) - [x]_(n+1) for g in S(2n)",
        n=n,
        params={"mode": "exhaustive" if samples is None else f"random:{samples}", "seed": seed},
        status=counterexample is None,
        counterexample=counterexample,
        cases=cases,
    )


def _additivity_tables(n: int):
    """Exhaustive ``(G, G, X)`` arrays of ``c(x; g h)`` and ``c(x.g; h) + c(x; g)``."""
    group = list(iter_symmetric_group(n))
    xs = list(iter_matchings(n))
    x_index = {x: i for i, x in enumerate(xs)}
    counts = np.array([cycle_count(x) for x in xs], dtype=np.int8)
    action = np.array([[x_index[act(x, g)] for x in xs] for g in group])  # x.g
    cocycles = counts[action] - counts[None, :]  # c(x; g)
    # one-line images as positions 0..2n-1; (g * h)(a) = h(g(a))
    images = np.array([[_index(b, n) for b in g.images] for g in group])
    size = 2 * n
    weights = size ** np.arange(size)
    lookup = np.full(size**size, -1)
    lookup[images @ weights] = np.arange(len(group))
    g_idx = np.arange(len(group))
    products = images[g_idx[None, :, None], images[:, None, :]]  # products[g, h] = g * h
    gh = lookup[products @ weights]
    lhs = cocycles[gh]
    rhs = cocycles[g_idx[None, :, None], action[:, None, :]] + cocycles[:, None, :]
    return group, xs, lhs, rhs


def check_cocycle_additivity(n: int, samples: int | None = None, seed: int = 0) -> CheckReport:
    """``c(x; g h) == c(x.g; h) + c(x; g)``.

    Exhaustive over ``X(n) x S(2n) x S(2n)`` (vectorized) unless ``samples``
    is given, in which case that many random triples are drawn.
    """
    counterexample = None
    if samples is None:
        group, xs, lhs, rhs = _additivity_tables(n)
        cases = lhs.size
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            g, h, x = bad[0]
            counterexample = {"matching": xs[x], "g": group[g], "h": group[h]}
    else:
        rng = np.random.default_rng(seed)
        xs = list(iter_matchings(n))
        cases = 0
        for _ in range(samples):
            cases += 1
            x = xs[rng.integers(len(xs))]
            g, h = random_permutation(n, rng), random_permutation(n, rng)
            if cocycle(x, g * h) != cocycle(act(x, g), h) + cocycle(x, g):
                counterexample = {"matching": x, "g": g, "h": h}
                break
    return CheckReport(
        identity="cocycle-additivity",
        anchor="c(x; g1 g2) = c(x.g1; g2) + c(x; g1)",
        n=n,
        params={"mode": "exhaustive" if samples is None else f"random:{samples}", "seed": seed},
        status=counterexample is None,
        counterexample=counterexample,
        cases=int(cases),
    )


def check_quasi_invariance(t, n: int, max_n: int = MAX_MATCHING_LEVEL) -> CheckReport:
    """``mu_t({y . g}) == t^{c(y; g)} mu_t({y})`` for all ``y`` and all transpositions ``g``."""
    t = Fraction(t)
    if n > max_n:
        raise CapacityError(f"quasi-invariance check bounded by n <= {max_n}, got n = {n}")
    gens = list(transpositions(n))
    counterexample = None
    cases = 0
    for y in iter_matchings(n, max_n):
        wy = ewens_weight(t, y)
        for g in gens:
            cases += 1
            yg = act(y, g)
            if ewens_weight(t, yg) != t ** cocycle(y, g) * wy:
                counterexample = {"matching": y, "g": g}
                break
        if counterexample:
            break
    return CheckReport(
        identity="quasi-invariance",
        anchor="mu_t^(n)({y.g}) = t^([y.g]-[y]) mu_t^(n)({y})",
        n=n,
        params={"t": t, "generators": "all transpositions"},
        status=counterexample is None,
        counterexample=counterexample,
        cases=cases,
    )


# ---------------------------------------------------------------------------
# characters (Murnaghan-Nakayama on beta-sets)


def _beta_set(mu: Partition, length: int) -> tuple[int, ...]:
    padded = list(mu) + [0] * (length - len(mu))
    return tuple(p + length - 1 - i for i, p in enumerate(padded))


def _from_beta(beta: list[int]) -> Partition:
    beta = sorted(beta, reverse=True)
    L = len(beta)
    return tuple(b - (L - 1 - i) for i, b in enumerate(beta) if b - (L - 1 - i) > 0)


@lru_cache(maxsize=None)
def _mn(mu: Partition, rho: Partition) -> int:
    if not rho:
        return 1 if not mu else 0
    r, rest = rho[0], rho[1:]
    beta = _beta_set(mu, len(mu))
    occupied = set(beta)
    total = 0
    for b in beta:
        nb = b - r
        if nb < 0 or nb in occupied:
            continue
        height = sum(1 for c in beta if nb < c < b)
        new = _from_beta([nb if c == b else c for c in beta])
        total += (-1) ** height * _mn(new, rest)
    return total


def character(mu: Partition, rho: Partition) -> int:
    """Irreducible character ``chi^mu`` on the class of cycle type ``rho``."""
    if sum(mu) != sum(rho):
        raise ValueError(f"|mu| = {sum(mu)} differs from |rho| = {sum(rho)}")
    return _mn(tuple(mu), tuple(sorted(rho, reverse=True)))


@dataclass(frozen=True)
class CharacterTable:
    degree: int
    values: dict[tuple[Partition, Partition], int]

    def __call__(self, mu: Partition, rho: Partition) -> int:
        return self.values[(mu, rho)]

    def row(self, mu: Partition) -> list[int]:
        return [self.values[(mu, rho)] for rho in enumerate_partitions(self.degree)]


def character_table(m: int) -> CharacterTable:
    parts = enumerate_partitions(m)
    return CharacterTable(m, {(mu, rho): character(mu, rho) for mu in parts for rho in parts})


def class_size(rho: Partition) -> int:
    return factorial(sum(rho)) // centralizer_size(rho)


# ---------------------------------------------------------------------------
# functions on double cosets


@dataclass
class ClassFunctionOnCosets:
    """A bi-``H(n)``-invariant function, stored by coset type."""

    n: int
    values: dict[Partition, object]

    def __call__(self, arg):
        if isinstance(arg, SignedPermutation):
            return self.values[coset_type(arg)]
        if isinstance(arg, Matching):
            return self.values[cycle_decomposition(arg).type]
        return self.values[tuple(arg)]
