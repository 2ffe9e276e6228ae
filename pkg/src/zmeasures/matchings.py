"""Perfect matchings of the signed domain ``{-n, ..., -1, 1, ..., n}``.

A matching is an element of ``X(n)``, the coset space of the hyperoctahedral
group in ``S(2n)``. Its cycle structure comes from alternating two moves:
jump to the pair partner, then negate. ``[x]_n`` is the number of cycles and
drives the Ewens-type measures::

    mu_t(x) = t^[x] / (t (t+2) ... (t+2n-2)).
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .errors import CapacityError, LevelMismatchError
from .partitions import Partition
from .reports import CheckReport

MAX_MATCHING_LEVEL = 8

Pair = tuple[int, int]


def _key(a: int) -> tuple[int, int]:
    # order by absolute value, negative before positive
    return (abs(a), a)


def signed_domain(n: int) -> list[int]:
    """``[-n, ..., -1, 1, ..., n]``, the one-line order used for serialization."""
    return list(range(-n, 0)) + list(range(1, n + 1))


@dataclass(frozen=True, slots=True)
class Matching:
    n: int
    pairs: tuple[Pair, ...]

    @classmethod
    def from_pairs(cls, pairs: Sequence[Sequence[int]], n: int | None = None) -> Matching:
        """Validate and canonicalize. ``n`` defaults to the largest absolute label."""
        flat = [a for pair in pairs for a in pair]
        if any(len(pair) != 2 for pair in pairs):
            raise ValueError("every block of a matching must have exactly two elements")
        if n is None:
            n = max((abs(a) for a in flat), default=0)
        if sorted(flat) != sorted(signed_domain(n)):
            raise ValueError(f"pairs do not cover {{-{n},...,-1,1,...,{n}}} exactly once: {pairs!r}")
        canon = sorted((tuple(sorted(pair, key=_key)) for pair in pairs), key=lambda p: _key(p[0]))
        return cls(n, tuple(canon))

    @classmethod
    def identity(cls, n: int) -> Matching:
        """The matching ``{{-k, k}}`` fixed by the hyperoctahedral group."""
        return cls(n, tuple((-k, k) for k in range(1, n + 1)))

    def partner_map(self) -> dict[int, int]:
        out = {}
        for a, b in self.pairs:
            out[a] = b
            out[b] = a
        return out

    def partner(self, a: int) -> int:
        for u, v in self.pairs:
            if u == a:
                return v
            if v == a:
                return u
        raise KeyError(a)

    def lift(self) -> Matching:
        """Embed into ``X(n+1)`` by adding the pair ``{-(n+1), n+1}``."""
        return Matching(self.n + 1, self.pairs + ((-(self.n + 1), self.n + 1),))

    def to_json_obj(self) -> list[list[int]]:
        return [list(p) for p in self.pairs]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json(cls, text: str, n: int | None = None) -> Matching:
        return cls.from_pairs(json.loads(text), n)

    def __str__(self):
        return "{" + ", ".join("{%d,%d}" % p for p in self.pairs) + "}"


# ---------------------------------------------------------------------------
# enumeration


def _pairings(items: list[int]) -> Iterator[tuple[Pair, ...]]:
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for i, other in enumerate(rest):
        remaining = rest[:i] + rest[i + 1 :]
        for tail in _pairings(remaining):
            yield ((first, other),) + tail


def iter_matchings(n: int, max_n: int = MAX_MATCHING_LEVEL) -> Iterator[Matching]:
    """All of ``X(n)`` lazily, in a fixed order; pairs come out already canonical."""
    if n > max_n:
        raise CapacityError(f"matching enumeration bounded by n <= {max_n}, got n = {n}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    items = sorted(signed_domain(n), key=_key)
    for pairs in _pairings(items):
        yield Matching(n, pairs)


def enumerate_matchings(n: int, max_n: int = MAX_MATCHING_LEVEL) -> list[Matching]:
    return list(iter_matchings(n, max_n))


def double_factorial_odd(n: int) -> int:
    """``1 * 3 * ... * (2n-1)``, the size of ``X(n)``."""
    out = 1
    for k in range(1, 2 * n, 2):
        out *= k
    return out


# ---------------------------------------------------------------------------
# cycles


@dataclass(frozen=True)
class CycleDecomposition:
    # each cycle lists the visited elements: start, partner, -partner, partner, ...
    cycles: tuple[tuple[int, ...], ...]

    @property
    def cycle_count(self) -> int:
        return len(self.cycles)

    @property
    def type(self) -> Partition:
        return tuple(sorted((len(c) // 2 for c in self.cycles), reverse=True))

    def points(self) -> list[list[int]]:
        """For each cycle the sequence ``j_1, j_2, ...`` (every other visited element)."""
        return [list(c[0::2]) for c in self.cycles]

    def to_matching(self, n: int) -> Matching:
        pairs = []
        for c in self.cycles:
            pairs.extend((c[k], c[k + 1]) for k in range(0, len(c), 2))
        return Matching.from_pairs(pairs, n)


def _cycles(partner: dict[int, int], n: int) -> list[list[int]]:
    seen: set[int] = set()
    cycles = []
    for start in range(1, n + 1):
        if start in seen:
            continue
        cyc = []
        a = start
        while True:
            b = partner[a]
            cyc.append(a)
            cyc.append(b)
            seen.add(a)
            seen.add(b)
            a = -b
            if a == start:
                break
        cycles.append(cyc)
    return cycles


def cycle_decomposition(x: Matching) -> CycleDecomposition:
    return CycleDecomposition(tuple(tuple(c) for c in _cycles(x.partner_map(), x.n)))


def cycle_count(x: Matching) -> int:
    """``[x]_n``."""
    partner = x.partner_map()
    seen = set()
    count = 0
    for start in range(1, x.n + 1):
        if start in seen:
            continue
        count += 1
        a = start
        while True:
            b = partner[a]
            seen.add(a)
            seen.add(b)
            a = -b
            if a == start:
                break
    return count


def cycle_type(x: Matching) -> Partition:
    return cycle_decomposition(x).type


# ---------------------------------------------------------------------------
# projections


def canonical_projection(x: Matching) -> Matching:
    """``p_{n,n+1}``: drop ``+-(n+1)``, joining their partners if they were not paired together."""
    top = x.n
    if top < 2:
        raise ValueError("canonical projection needs a matching of level >= 2")
    partner = x.partner_map()
    if partner[top] == -top:
        pairs = [p for p in x.pairs if p != (-top, top)]
    else:
        a, b = partner[-top], partner[top]
        pairs = [p for p in x.pairs if top not in p and -top not in p]
        pairs.append((a, b))
    return Matching.from_pairs(pairs, top - 1)


def preimage(x: Matching) -> list[Matching]:
    """All ``x'`` in ``X(n+1)`` projecting onto ``x``; there are ``2n+1`` of them."""
    top = x.n + 1
    out = [x.lift()]
    for k, (a, b) in enumerate(x.pairs):
        rest = x.pairs[:k] + x.pairs[k + 1 :]
        for u, v in ((a, b), (b, a)):
            out.append(Matching.from_pairs(rest + ((u, -top), (v, top)), top))
    return out


# ---------------------------------------------------------------------------
# Ewens-type measures


def _as_t(t) -> Fraction:
    t = Fraction(t)
    if t <= 0:
        raise ValueError(f"t must be positive, got {t}")
    return t


def ewens_normalizer(t, n: int) -> Fraction:
    """``t (t+2) ... (t+2n-2)``."""
    t = Fraction(t)
    out = Fraction(1)
    for k in range(n):
        out *= t + 2 * k
    return out


def ewens_weight(t, x: Matching) -> Fraction:
    t = _as_t(t)
    return t ** cycle_count(x) / ewens_normalizer(t, x.n)


def check_ewens_normalization(t, n: int, max_n: int = MAX_MATCHING_LEVEL) -> CheckReport:
    t = _as_t(t)
    counts: dict[int, int] = {}
    for x in iter_matchings(n, max_n):
        c = cycle_count(x)
        counts[c] = counts.get(c, 0) + 1
    total = sum(m * t**c for c, m in counts.items()) / ewens_normalizer(t, n)
    return CheckReport(
        identity="ewens-normalization",
        anchor="sum over X(n) of mu_t^(n) = 1",
        n=n,
        params={"t": t},
        status=total == 1,
        counterexample=None if total == 1 else {"sum": total},
        cases=sum(counts.values()),
    )


def check_pushforward(t, n: int, max_n: int = MAX_MATCHING_LEVEL) -> CheckReport:
    """``mu_t^(n+1)(p^{-1}{x}) == mu_t^(n)(x)`` for every ``x`` in ``X(n)``."""
    t = _as_t(t)
    if n + 1 > max_n:
        raise CapacityError(f"pushforward check needs X(n+1) with n+1 <= {max_n}, got n = {n}")
    mass: dict[Matching, Fraction] = {}
    for xp in iter_matchings(n + 1, max_n):
        px = canonical_projection(xp)
        mass[px] = mass.get(px, Fraction(0)) + ewens_weight(t, xp)
    counterexample = None
    cases = 0
    for x in iter_matchings(n, max_n):
        cases += 1
        if mass.get(x, 0) != ewens_weight(t, x):
            counterexample = {"matching": x, "pushforward": mass.get(x, 0), "weight": ewens_weight(t, x)}
            break
    return CheckReport(
        identity="pushforward",
        anchor="p_{n,n+1} pushes mu_t^(n+1) forward to mu_t^(n)",
        n=n,
        params={"t": t},
        status=counterexample is None,
        counterexample=counterexample,
        cases=cases,
    )


# ---------------------------------------------------------------------------
# sampling


def sample_matchings(t, n: int, count: int, seed: int) -> list[Matching]:
    """``count`` independent draws from ``mu_t^(n)``, grown one level at a time.

    Going from level ``k`` to ``k+1`` the new pair ``{-(k+1), k+1}`` opens a
    new cycle with probability ``t / (t + 2k)``; otherwise ``+-(k+1)`` are
    spliced into one of the ``k`` existing pairs with one of two
    orientations, each of the ``2k`` choices having probability
    ``1 / (t + 2k)``. With ``t = p/q`` each level uses a single uniform
    integer in ``[0, p + 2kq)``, so the law is exact.
    """
    t = _as_t(t)
    if n < 1:
        raise ValueError("n must be >= 1")
    if count < 0:
        raise ValueError("count must be nonnegative")
    rng = np.random.default_rng(seed)
    p, q = t.numerator, t.denominator
    states: list[list[list[int]]] = [[[-1, 1]] for _ in range(count)]
    for k in range(1, n):
        top = k + 1
        draws = rng.integers(0, p + 2 * k * q, size=count)
        for pairs, r in zip(states, draws.tolist()):
            if r < p:
                pairs.append([-top, top])
                continue
            pos = (r - p) // q
            a, b = pairs[pos // 2]
            if pos % 2:
                a, b = b, a
            pairs[pos // 2] = [a, -top]
            pairs.append([b, top])
    return [Matching.from_pairs(pairs, n) for pairs in states]


def sample_matching(t, n: int, seed: int) -> Matching:
    return sample_matchings(t, n, 1, seed)[0]


# ---------------------------------------------------------------------------
# text rendering

CW, CCW = "cw", "ccw"
_CIRCLE_RE = re.compile(r"^circle\s+\d+:\s*(.*)$")


def render_cycles(x: Matching) -> str:
    """One line per circle: the points ``|j_k|`` with their arrow directions.

    The first arrow of each circle is clockwise and the direction flips
    whenever the sign of ``j`` changes, so with a positive starting point
    ``cw`` marks a positive ``j`` and ``ccw`` a negative one.
    """
    lines = [f"X({x.n})"]
    for idx, points in enumerate(cycle_decomposition(x).points(), start=1):
        marks = []
        direction = CW
        for k, j in enumerate(points):
            if k and (j > 0) != (points[k - 1] > 0):
                direction = CCW if direction == CW else CW
            marks.append(f"{abs(j)}:{direction}")
        lines.append(f"circle {idx}: " + " ".join(marks))
    return "\n".join(lines)


def parse_cycles(text: str) -> Matching:
    """Inverse of :func:`render_cycles`."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    m = re.match(r"^X\((\d+)\)$", lines[0])
    if not m:
        raise ValueError("rendering must start with a 'X(n)' header line")
    n = int(m.group(1))
    pairs = []
    for line in lines[1:]:
        cm = _CIRCLE_RE.match(line)
        if not cm:
            raise ValueError(f"bad circle line: {line!r}")
        js = []
        for token in cm.group(1).split():
            label, direction = token.split(":")
            js.append(int(label) if direction == CW else -int(label))
        # the cycle runs j_1 -> -j_2 -> j_2 -> ... -> -j_1, so {j_k, -j_{k+1}} are pairs
        pairs.extend((js[k], -js[(k + 1) % len(js)]) for k in range(len(js)))
    return Matching.from_pairs(pairs, n)


def check_level(*objs) -> int:
    levels = {o.n for o in objs}
    if len(levels) != 1:
        raise LevelMismatchError(f"objects live on different levels: {sorted(levels)}")
    return levels.pop()
