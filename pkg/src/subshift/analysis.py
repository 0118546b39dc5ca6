"""Finiteness of Cantor factors of substitution subshifts.

The general test runs on the transposed incidence matrix M of a proper
substitution.  Let r be the largest i with e, Me, ..., M^i e linearly
independent (e the all-ones vector) and Q(X) = X^{r+1} + a_r X^r + ... + a_0
the characteristic polynomial of M restricted to their span.  With
g = gcd(a_0, ..., a_r), a prime p has all its powers in the periodic
spectrum exactly when p divides g.  Hence:

* the Cantor factors are finitely many iff g = 1;
* the non-periodic Cantor factors are finitely many iff g has at most one
  prime divisor.

Constant-length substitutions go through Dekking's height instead.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd

from .exactlinalg import IntegerMatrix, IntPolynomial, KrylovRelation, det, krylov, ones
from .morphism import (PeriodicityStatus, Substitution, constant_length, fixed_point_prefix,
                       incidence_matrix, is_proper, periodicity_probe, require_primitive,
                       seeded_power)
from .properize import ProperizationResult, properize
from .words import occurrences

log = logging.getLogger(__name__)


class IntegralityError(ArithmeticError):
    pass


class NotProperError(ValueError):
    pass


def prime_factors(n: int) -> list[int]:
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]


def transposed_matrix(s: Substitution) -> IntegerMatrix:
    """Row c counts the letters of s(c); (M^k e)_c = |s^k(c)|."""
    return incidence_matrix(s).T


@dataclass(frozen=True)
class RestrictedPolynomial:
    r: int
    Q: IntPolynomial
    relation: KrylovRelation

    @property
    def g(self) -> int:
        """gcd(|a_0|, ..., |a_r|), with gcd(0, x) = |x|."""
        out = 0
        for a in self.Q.coeffs[:self.r + 1]:
            out = gcd(out, a)
        return out


def restricted_char_poly(m: IntegerMatrix) -> RestrictedPolynomial:
    rel = krylov(m, ones(m.shape[0]))
    coeffs = [-c for c in rel.coefficients] + [Fraction(1)]
    if any(c.denominator != 1 for c in coeffs):
        raise IntegralityError(f"restricted characteristic polynomial is not integral: {coeffs}")
    return RestrictedPolynomial(rel.r, IntPolynomial([int(c) for c in coeffs]), rel)


@dataclass(frozen=True)
class PowerCheck:
    n: int
    holds: bool
    witness: int | None  # smallest m with M^m e = 0 mod p^n
    bound: int


def krylov_divisibility(m: IntegerMatrix, p: int, n_max: int, r: int | None = None) -> list[PowerCheck]:
    """For n = 1..n_max: is M^m e = 0 mod p^n for some m <= n(r+1) + r + 1?

    Once p divides every a_i (i <= r), the recurrence
    M^{r+1+i} e = -(a_r M^{r+i} e + ... + a_0 M^i e) raises the p-adic
    valuation of M^k e by at least one every r+1 steps, which gives the bound.
    """
    if r is None:
        r = krylov(m, ones(m.shape[0])).r
    top = n_max * (r + 1) + r + 1
    vectors = [ones(m.shape[0])]
    for _ in range(top):
        vectors.append(m.apply(vectors[-1]))
    out = []
    for n in range(1, n_max + 1):
        mod = p ** n
        bound = n * (r + 1) + r + 1
        witness = next((k for k in range(bound + 1) if all(x % mod == 0 for x in vectors[k])), None)
        out.append(PowerCheck(n, witness is not None, witness, bound))
    return out


def p_valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def spectrum_depth(m: IntegerMatrix, p: int) -> int:
    """A power n of p at which a single bounded search is decisive.

    Write M^k e = B y_k with B = [e, Me, ..., M^r e] and y_k integral.  If
    p^v bounds the denominators of a rational left inverse of B (v = the
    p-adic valuation of the gcd of the maximal minors of B), then
    M^k e = 0 mod p^(v+1) forces y_k = 0 mod p, which happens only when p
    divides every a_i.  So p | g iff the search of krylov_divisibility
    succeeds at n = v + 1.
    """
    rel = krylov(m, ones(m.shape[0]))
    basis = rel.vectors[:rel.r + 1]
    minors = 0
    for rows in combinations(range(m.shape[0]), rel.r + 1):
        minors = gcd(minors, det(IntegerMatrix(tuple(tuple(v[i] for v in basis) for i in rows))))
    return p_valuation(minors, p) + 1


def power_in_spectrum(sigma: Substitution, p: int, n_max: int) -> list[PowerCheck]:
    """Per n <= n_max, whether p^n divides every |sigma^m(c)| for some m in the bound."""
    if is_proper(sigma) is None:
        raise NotProperError("power_in_spectrum needs a proper substitution; properize() first")
    require_primitive(sigma)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return krylov_divisibility(transposed_matrix(sigma), p, n_max)


def spectrum_prime_candidates(sigma: Substitution) -> frozenset[int] | None:
    """Primes dividing |u|·|det M_sigma| (u the first return word to the seed).

    Every prime in the periodic spectrum is among them.  None when det = 0.
    """
    require_primitive(sigma)
    d = det(incidence_matrix(sigma))
    if d == 0:
        return None
    _, s = seeded_power(sigma)
    x = fixed_point_prefix(s, 64)
    n = 64
    while len(occurrences(x[:1], x)) < 2:
        n *= 2
        x = fixed_point_prefix(s, n)
    first_return = occurrences(x[:1], x)[1]
    return frozenset(prime_factors(first_return * d))


def factor_count_bound(K: int) -> int:
    """((2K(2K+1)^2)^(4K^2))^(K(K+1)^2), exactly."""
    if K < 1:
        raise ValueError("K must be at least 1")
    base = 2 * K * (2 * K + 1) ** 2
    return base ** (4 * K * K * K * (K + 1) ** 2)


@dataclass(frozen=True)
class OdometerBase:
    h: int
    l: int

    def __post_init__(self):
        if self.h < 1 or self.l < 2:
            raise ValueError("odometer base needs h >= 1 and l >= 2")

    def terms(self, n: int = 5) -> tuple[int, ...]:
        return (self.h,) + (self.l,) * (n - 1)

    def __str__(self):
        return f"({self.h}, {self.l}, {self.l}, ...)"


@dataclass(frozen=True)
class DekkingHeight:
    h: int
    occurrence_gcd: int
    stabilized_at: int


def dekking_h(sigma: Substitution, l: int, start: int = 16, limit: int = 1 << 20) -> DekkingHeight:
    """Largest divisor of gcd{i > 0 : x_i = x_0} coprime to l.

    The gcd is read off fixed-point prefixes of doubling length and accepted
    once a doubling leaves it unchanged.
    """
    _, s = seeded_power(sigma)
    n = start
    prev = None
    while n <= limit:
        x = fixed_point_prefix(s, n)
        g = 0
        for i in occurrences(x[:1], x)[1:]:
            g = gcd(g, i)
        if g and g == prev:
            break
        prev = g
        n *= 2
    else:
        raise ValueError("occurrence gcd did not stabilize")
    h = g
    for p in prime_factors(l):
        while h % p == 0:
            h //= p
    return DekkingHeight(h, g, n // 2)


@dataclass(frozen=True)
class ConstantLengthData:
    l: int
    height: DekkingHeight

    @property
    def h(self) -> int:
        return self.height.h

    @property
    def odometer(self) -> OdometerBase:
        return OdometerBase(self.h, self.l)


@dataclass(frozen=True)
class Verdict:
    substitution: Substitution
    periodicity: PeriodicityStatus
    path: str                      # "constant-length", "proper" or "properized"
    matrix: IntegerMatrix
    restricted: RestrictedPolynomial
    f_finite: bool
    fstar_finite: bool
    spectrum_primes: tuple[int, ...]
    candidate_primes: frozenset[int] | None
    seed_power: int = 1
    properization: ProperizationResult | None = None
    constant_length: ConstantLengthData | None = None
    warnings: tuple[str, ...] = field(default=())

    @property
    def r(self) -> int:
        return self.restricted.r

    @property
    def Q(self) -> IntPolynomial:
        return self.restricted.Q

    @property
    def g(self) -> int:
        return self.restricted.g

    @property
    def valid(self) -> bool:
        return not self.periodicity.periodic


def _fstar_finite(n: int) -> bool:
    # at most one prime p with all powers p^k in the periodic spectrum
    return len(prime_factors(n)) <= 1


def constant_length_verdict(sigma: Substitution, l: int | None = None,
                            periodicity: PeriodicityStatus | None = None) -> Verdict:
    require_primitive(sigma)
    if l is None:
        l = constant_length(sigma)
    if l is None or constant_length(sigma) != l:
        raise ValueError("substitution is not of constant length")
    periodicity = periodicity or periodicity_probe(sigma)
    warnings = _periodic_warning(periodicity)
    M = transposed_matrix(sigma)
    restricted = restricted_char_poly(M)
    height = dekking_h(sigma, l)
    return Verdict(
        substitution=sigma,
        periodicity=periodicity,
        path="constant-length",
        matrix=M,
        restricted=restricted,
        f_finite=False,
        fstar_finite=_fstar_finite(l),
        spectrum_primes=tuple(prime_factors(l)),
        candidate_primes=spectrum_prime_candidates(sigma),
        seed_power=seeded_power(sigma)[0],
        constant_length=ConstantLengthData(l, height),
        warnings=warnings,
    )


def _periodic_warning(status: PeriodicityStatus) -> tuple[str, ...]:
    if status.periodic:
        msg = f"fixed point looks periodic with period {status.period}; the finiteness criteria assume a non-periodic subshift"
        log.warning(msg)
        return (msg,)
    return ()


def cantor_factor_verdict(sigma: Substitution, horizon: int = 50) -> Verdict:
    require_primitive(sigma)
    periodicity = periodicity_probe(sigma, horizon)
    l = constant_length(sigma)
    if l is not None:
        return constant_length_verdict(sigma, l, periodicity)
    warnings = _periodic_warning(periodicity)
    prop = properize(sigma)
    M = transposed_matrix(prop.zeta)
    restricted = restricted_char_poly(M)
    g = restricted.g
    if g < 1:
        raise IntegralityError("gcd of the restricted polynomial vanished; not a substitution matrix")
    if prop.escalations:
        warnings += tuple(prop.escalations)
    return Verdict(
        substitution=sigma,
        periodicity=periodicity,
        path="proper" if prop.pass_through else "properized",
        matrix=M,
        restricted=restricted,
        f_finite=g == 1,
        fstar_finite=_fstar_finite(g),
        spectrum_primes=tuple(prime_factors(g)),
        candidate_primes=spectrum_prime_candidates(sigma),
        seed_power=prop.seed_power,
        properization=prop,
        warnings=warnings,
    )
