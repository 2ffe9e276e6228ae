"""Degree-n symmetric functions in the power-sum and monomial bases.

Jack polynomials ``J_lam^(alpha)`` are built by Gram-Schmidt over the
monomial basis, processed in a linear extension of dominance order, and
normalized to the integral form (coefficient of ``m_{1^n}`` equal to ``n!``).
The scalar product is ``(p_rho, p_sigma) = delta * alpha^{l(rho)} z_rho``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Callable, Iterable

from .errors import CapacityError
from .groups import ClassFunctionOnCosets
from .partitions import (
    Partition,
    boxes,
    centralizer_size,
    dominates,
    enumerate_partitions,
    hook_length_product,
    double,
)
from .reports import CheckReport
from .scalar import ExactScalar, format_scalar

MAX_SYMFUNC_DEGREE = 12
POWER, MONOMIAL = "p", "m"


@dataclass
class SymFunc:
    degree: int
    basis: str
    coeffs: dict[Partition, object]

    def __post_init__(self):
        if self.basis not in (POWER, MONOMIAL):
            raise ValueError(f"unknown basis {self.basis!r}")
        for lam in self.coeffs:
            if sum(lam) != self.degree:
                raise ValueError(f"term {lam} is not of degree {self.degree}")
        self.coeffs = {lam: c for lam, c in self.coeffs.items() if c != 0}

    @classmethod
    def p(cls, rho: Partition, coeff=1) -> SymFunc:
        return cls(sum(rho), POWER, {tuple(rho): Fraction(coeff)})

    @classmethod
    def m(cls, mu: Partition, coeff=1) -> SymFunc:
        return cls(sum(mu), MONOMIAL, {tuple(mu): Fraction(coeff)})

    def to(self, basis: str) -> SymFunc:
        return convert_basis(self, basis)

    def __getitem__(self, lam: Partition):
        return self.coeffs.get(tuple(lam), 0)

    def _aligned(self, other: SymFunc) -> SymFunc:
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return other.to(self.basis)

    def __add__(self, other: SymFunc) -> SymFunc:
        other = self._aligned(other)
        out = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            out[lam] = out.get(lam, 0) + c
        return SymFunc(self.degree, self.basis, out)

    def __sub__(self, other: SymFunc) -> SymFunc:
        return self + (-1) * other

    def __rmul__(self, scalar) -> SymFunc:
        return SymFunc(self.degree, self.basis, {lam: scalar * c for lam, c in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, SymFunc):
            return NotImplemented
        if other.degree != self.degree:
            return False
        return self.coeffs == self._aligned(other).coeffs

    def to_json_obj(self) -> dict:
        terms = []
        for lam, c in self.coeffs.items():
            c = ExactScalar.coerce(c)
            term = [list(lam), c.re.numerator, c.re.denominator]
            if c.im:
                term += [c.im.numerator, c.im.denominator]
            terms.append(term)
        return {"basis": "power-sum" if self.basis == POWER else "monomial", "degree": self.degree, "terms": terms}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json(cls, text: str) -> SymFunc:
        obj = json.loads(text)
        basis = POWER if obj["basis"] == "power-sum" else MONOMIAL
        coeffs = {}
        for term in obj["terms"]:
            re_ = Fraction(term[1], term[2])
            c = ExactScalar(re_, Fraction(term[3], term[4])) if len(term) > 3 else re_
            coeffs[tuple(term[0])] = c
        return cls(obj["degree"], basis, coeffs)


# ---------------------------------------------------------------------------
# transition matrices


def _check_degree(n: int, bound: int = MAX_SYMFUNC_DEGREE):
    if n > bound:
        raise CapacityError(f"symmetric functions bounded by degree <= {bound}, got {n}")


def _merge_count(rho: Partition, mu: Partition) -> int:
    """Number of maps from the parts of ``rho`` onto the rows of ``mu`` with matching row sums.

    This is the coefficient of ``m_mu`` in ``p_rho``.
    """

    @lru_cache(maxsize=None)
    def count(i: int, remaining: tuple[int, ...]) -> int:
        if i == len(rho):
            return 1 if not any(remaining) else 0
        total = 0
        for k, r in enumerate(remaining):
            if r >= rho[i]:
                total += count(i + 1, remaining[:k] + (r - rho[i],) + remaining[k + 1 :])
        return total

    return count(0, tuple(mu))


@lru_cache(maxsize=None)
def p_to_m_matrix(n: int) -> dict[Partition, dict[Partition, int]]:
    """``p_rho = sum_mu R[rho][mu] m_mu``."""
    _check_degree(n)
    parts = enumerate_partitions(n)
    out = {}
    for rho in parts:
        row = {}
        for mu in parts:
            if dominates(mu, rho):
                c = _merge_count(rho, mu)
                if c:
                    row[mu] = c
        out[rho] = row
    return out


@lru_cache(maxsize=None)
def m_to_p_matrix(n: int) -> dict[Partition, dict[Partition, Fraction]]:
    """Inverse of :func:`p_to_m_matrix`: ``m_mu = sum_rho A[mu][rho] p_rho``.

    ``p_rho`` involves ``m_rho`` (coefficient ``prod m_i!``) plus strictly
    dominating terms, so solving from the top of the order downwards works.
    """
    R = p_to_m_matrix(n)
    parts = enumerate_partitions(n)  # reverse-lex: dominating shapes come first
    A: dict[Partition, dict[Partition, Fraction]] = {}
    for rho in parts:
        # m_rho = (p_rho - sum_{mu > rho} R[rho][mu] m_mu) / R[rho][rho]
        expansion = {rho: Fraction(1)}
        for mu, c in R[rho].items():
            if mu == rho:
                continue
            for sigma, a in A[mu].items():
                expansion[sigma] = expansion.get(sigma, 0) - c * a
        diag = R[rho][rho]
        A[rho] = {s: v / diag for s, v in expansion.items() if v}
    return A


def convert_basis(f: SymFunc, target: str) -> SymFunc:
    if target == f.basis:
        return SymFunc(f.degree, f.basis, dict(f.coeffs))
    _check_degree(f.degree)
    M = p_to_m_matrix(f.degree) if f.basis == POWER else m_to_p_matrix(f.degree)
    out: dict[Partition, object] = {}
    for lam, c in f.coeffs.items():
        for mu, r in M[lam].items():
            out[mu] = out.get(mu, 0) + c * r
    return SymFunc(f.degree, target, out)


# ---------------------------------------------------------------------------
# scalar product and Jack polynomials


def power_sum_norm(rho: Partition, alpha) -> Fraction:
    """``(p_rho, p_rho) = alpha^{l(rho)} z_rho``."""
    return Fraction(alpha) ** len(rho) * centralizer_size(rho)


def jack_inner_product(f: SymFunc, g: SymFunc, alpha) -> object:
    """Bilinear form with ``(p_rho, p_sigma) = delta_{rho sigma} alpha^{l(rho)} z_rho``."""
    if f.degree != g.degree:
        raise ValueError("degree mismatch")
    fp, gp = f.to(POWER), g.to(POWER)
    total = 0
    for rho, c in fp.coeffs.items():
        d = gp.coeffs.get(rho)
        if d:
            total = total + c * d * power_sum_norm(rho, alpha)
    return total


@lru_cache(maxsize=None)
def _monomial_gram(n: int, alpha: Fraction) -> dict[tuple[Partition, Partition], Fraction]:
    A = m_to_p_matrix(n)
    parts = enumerate_partitions(n)
    G = {}
    for i, mu in enumerate(parts):
        for nu in parts[i:]:
            s = sum(
                (c * A[nu].get(rho, 0) * power_sum_norm(rho, alpha) for rho, c in A[mu].items()),
                Fraction(0),
            )
            G[(mu, nu)] = G[(nu, mu)] = s
    return G


def dominance_extension(n: int) -> list[Partition]:
    """Lexicographically increasing partitions of ``n``: a linear extension of dominance."""
    return list(reversed(enumerate_partitions(n)))


def conjugate_dominance_extension(n: int) -> list[Partition]:
    """Another linear extension of dominance: order by the transpose, lexicographically decreasing."""
    from .partitions import transpose

    return sorted(enumerate_partitions(n), key=transpose, reverse=True)


def _jack_family(n: int, alpha: Fraction, order: list[Partition]) -> dict[Partition, dict[Partition, Fraction]]:
    """Gram-Schmidt on monomials in ``order``; returns monic ``P_lam`` in the monomial basis."""
    G = _monomial_gram(n, alpha)

    def ip(u: dict, v: dict) -> Fraction:
        return sum((a * b * G[(mu, nu)] for mu, a in u.items() for nu, b in v.items()), Fraction(0))

    done: list[tuple[dict, Fraction]] = []
    family = {}
    for lam in order:
        vec = {lam: Fraction(1)}
        for prev, norm in done:
            c = ip(vec, prev) / norm
            if c:
                for mu, a in prev.items():
                    vec[mu] = vec.get(mu, 0) - c * a
        vec = {mu: a for mu, a in vec.items() if a}
        done.append((vec, ip(vec, vec)))
        family[lam] = vec
    return family


@lru_cache(maxsize=None)
def _jack_basis(n: int, alpha: Fraction, order_name: str) -> dict[Partition, SymFunc]:
    _check_degree(n, 10)
    order = dominance_extension(n) if order_name == "lex" else conjugate_dominance_extension(n)
    ones = (1,) * n
    out = {}
    for lam, vec in _jack_family(n, alpha, order).items():
        scale = Fraction(factorial(n)) / vec[ones]
        out[lam] = SymFunc(n, MONOMIAL, {mu: scale * a for mu, a in vec.items()})
    return out


@dataclass(frozen=True)
class JackPolynomial:
    lam: Partition
    alpha: Fraction
    expansion: SymFunc  # monomial basis

    def to_power_sums(self) -> SymFunc:
        return self.expansion.to(POWER)


def jack_polynomial(lam: Partition, alpha, order: str = "lex") -> JackPolynomial:
    """Integral-form Jack polynomial; ``order`` names the linear extension used ("lex" or "conjugate")."""
    lam = tuple(lam)
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if not lam:
        return JackPolynomial(lam, alpha, SymFunc(0, MONOMIAL, {(): Fraction(1)}))
    return JackPolynomial(lam, alpha, _jack_basis(sum(lam), alpha, order)[lam])


def specialize_ones(f: SymFunc, m) -> object:
    """Value at ``m`` variables equal to one, via ``p_k -> m`` (``m`` may be any rational)."""
    fp = f.to(POWER)
    m = Fraction(m)
    return sum((c * m ** len(rho) for rho, c in fp.coeffs.items()), Fraction(0))


def jack_ones_product(lam: Partition, N) -> Fraction:
    """``prod over boxes of (N + 2(j-1) - (i-1))``: the alpha=2 value at ``N`` ones."""
    N = Fraction(N)
    return prod((N + 2 * (j - 1) - (i - 1) for i, j in boxes(lam)), start=Fraction(1))


def schur_function(lam: Partition) -> SymFunc:
    """``s_lam = sum_rho chi^lam(rho) / z_rho p_rho``."""
    from .groups import character

    n = sum(lam)
    return SymFunc(
        n,
        POWER,
        {rho: Fraction(character(lam, rho), centralizer_size(rho)) for rho in enumerate_partitions(n)},
    )


# ---------------------------------------------------------------------------
# the characteristic map on bi-H(n)-invariant functions


def hyperoctahedral_order(n: int) -> int:
    return 2**n * factorial(n)


def characteristic_map(f: ClassFunctionOnCosets) -> SymFunc:
    """``ch''(f) = |H(n)| sum_rho z_rho^{-1} 2^{-l(rho)} f(rho) p_rho``."""
    h = hyperoctahedral_order(f.n)
    coeffs = {}
    for rho in enumerate_partitions(f.n):
        coeffs[rho] = f.values[rho] * Fraction(h, centralizer_size(rho) * 2 ** len(rho))
    return SymFunc(f.n, POWER, coeffs)


def inverse_characteristic_map(F: SymFunc) -> ClassFunctionOnCosets:
    """Read the coset-type values back off a power-sum expansion."""
    Fp = F.to(POWER)
    h = hyperoctahedral_order(F.degree)
    return ClassFunctionOnCosets(
        F.degree,
        {rho: Fp[rho] * Fraction(centralizer_size(rho) * 2 ** len(rho), h) for rho in enumerate_partitions(F.degree)},
    )


# ---------------------------------------------------------------------------
# polynomial expansion in finitely many variables


Polynomial = dict[tuple[int, ...], object]


def monomial_in_variables(mu: Partition, m: int) -> Polynomial:
    """``m_mu(x_1, ..., x_m)`` as an exponent-vector dictionary."""
    if len(mu) > m:
        return {}
    padded = tuple(mu) + (0,) * (m - len(mu))
    return {e: Fraction(1) for e in set(itertools.permutations(padded))}


def expand_in_variables(f: SymFunc, m: int) -> Polynomial:
    fm = f.to(MONOMIAL)
    out: Polynomial = {}
    for mu, c in fm.coeffs.items():
        for e in monomial_in_variables(mu, m):
            out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def _compositions(n: int, m: int):
    if m == 1:
        yield (n,)
        return
    for k in range(n + 1):
        for rest in _compositions(n - k, m - 1):
            yield (k,) + rest


def binomial_series_component(N, n: int, m: int) -> Polynomial:
    """Degree-``n`` part of ``prod_{i<=m} (1 - x_i)^{-N/2}``."""
    a = Fraction(N) / 2
    out = {}
    for e in _compositions(n, m):
        c = Fraction(1)
        for k in e:
            for r in range(k):
                c *= (a + r) / (r + 1)
        if c:
            out[e] = c
    return out


def check_generating_identity(N, n: int, m: int) -> CheckReport:
    """``{prod (1-x_i)^{-N/2}}_n == sum_{|lam|=n} J_lam^(2)(x) prod(N+2(j-1)-(i-1)) / h(2 lam)`` in ``m`` variables."""
    if m < n:
        raise ValueError("need at least n variables")
    _check_degree(n, 10)
    lhs = binomial_series_component(N, n, m)
    rhs: Polynomial = {}
    for lam in enumerate_partitions(n):
        w = jack_ones_product(lam, N) / hook_length_product(double(lam))
        for e, c in expand_in_variables(jack_polynomial(lam, 2).expansion, m).items():
            rhs[e] = rhs.get(e, 0) + w * c
    rhs = {e: c for e, c in rhs.items() if c}
    counterexample = None
    if lhs != rhs:
        e = next(e for e in set(lhs) | set(rhs) if lhs.get(e, 0) != rhs.get(e, 0))
        counterexample = {"exponent": list(e), "lhs": lhs.get(e, 0), "rhs": rhs.get(e, 0)}
    return CheckReport(
        identity="generating-identity",
        anchor="{prod (1-x_i)^(-N/2)}_n = sum J_lam^(2)(x) J_lam^(2)(1^N) / h(2lam)",
        n=n,
        params={"N": Fraction(N), "variables": m},
        status=counterexample is None,
        counterexample=counterexample,
        cases=len(lhs),
    )


def check_jack_orthogonality(n: int, alpha=2) -> CheckReport:
    """Off-diagonal ``(J_lam, J_mu)_alpha`` vanish; at ``alpha = 2`` the diagonal is ``h(2 lam)``.

    Also checks dominance triangularity and that the two linear extensions
    of dominance give the same family.
    """
    alpha = Fraction(alpha)
    parts = enumerate_partitions(n)
    jacks = {lam: jack_polynomial(lam, alpha).expansion for lam in parts}
    counterexample = None
    cases = 0
    for lam in parts:
        cases += 1
        if any(not dominates(lam, mu) for mu in jacks[lam].coeffs):
            counterexample = {"lam": list(lam), "issue": "not dominance-triangular"}
            break
        if jack_polynomial(lam, alpha, order="conjugate").expansion != jacks[lam]:
            counterexample = {"lam": list(lam), "issue": "depends on the processing order"}
            break
        for mu in parts:
            cases += 1
            ip = jack_inner_product(jacks[lam], jacks[mu], alpha)
            if lam != mu and ip != 0:
                counterexample = {"lam": list(lam), "mu": list(mu), "inner": ip}
            elif lam == mu and alpha == 2 and ip != hook_length_product(double(lam)):
                counterexample = {"lam": list(lam), "inner": ip, "expected": hook_length_product(double(lam))}
            if counterexample:
                break
        if counterexample:
            break
    return CheckReport(
        identity="jack-orthogonality",
        anchor="(J_lam^(2), J_mu^(2)) = delta_{lam,mu} h(2lam)",
        n=n,
        params={"alpha": alpha},
        status=counterexample is None,
        counterexample=counterexample,
        cases=cases,
    )


def check_jack_specialization(n: int, N) -> CheckReport:
    """``J_lam^(2)`` at ``N`` ones equals ``prod (N + 2(j-1) - (i-1))``."""
    N = Fraction(N)
    counterexample = None
    parts = enumerate_partitions(n)
    for lam in parts:
        value = specialize_ones(jack_polynomial(lam, 2).expansion, N)
        expected = jack_ones_product(lam, N)
        if value != expected:
            counterexample = {"lam": list(lam), "value": value, "expected": expected}
            break
    return CheckReport(
        identity="jack-specialization",
        anchor="J_lam^(2)(1,...,1) = prod (N + 2(j-1) - (i-1)) with N ones",
        n=n,
        params={"N": N},
        status=counterexample is None,
        counterexample=counterexample,
        cases=len(parts),
    )
