"""Proper substitution generating a subshift isomorphic to a given one.

For sigma with seed letter ``a`` and derived substitution tau (so that
sigma∘theta = theta∘tau), the new alphabet is

    B = {(j, p) : j a return-word index, 1 <= p <= |theta(j)|}

with phi(j, p) = p-th letter of theta(j), psi(j) = (j,1)(j,2)...(j,|theta(j)|),
and, once tau is raised to a power k with |tau^k(j)| >= |theta(j)|,

    zeta(j, p) = psi(tau^k(j)_p)                        for p < |theta(j)|
    zeta(j, p) = psi(tau^k(j)[|theta(j)| .. |tau^k(j)|]) for p = |theta(j)|.

By construction zeta∘psi = psi∘tau^k, so phi maps the fixed point of zeta
onto the fixed point of sigma.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .morphism import (Morphism, Substitution, apply, compose, fixed_point_prefix, identity,
                       is_primitive, is_proper, power, require_primitive, seeded_power)
from .returnwords import DerivedSubstitution, return_words_closure
from .words import Alphabet, Word

log = logging.getLogger(__name__)

MAX_POWER_RETRIES = 2


class ProperizationError(ValueError):
    pass


def pair_token(j: str, p: int) -> str:
    return f"({j},{p})"


@dataclass(frozen=True)
class ProperizationResult:
    sigma: Substitution
    B: Alphabet
    zeta: Substitution
    phi: Morphism            # B -> A, every image a single letter
    psi: Morphism            # R_a -> B+
    k: int                   # tau replaced by tau^k
    pass_through: bool
    derived: DerivedSubstitution | None = None
    seed_power: int = 1      # sigma replaced by sigma^seed_power before deriving
    zeta_power: int = 1      # 2 when the fallback zeta∘zeta was needed
    escalations: tuple[str, ...] = field(default=())

    @property
    def proper_letter(self) -> str:
        letter = is_proper(self.zeta)
        assert letter is not None
        return letter

    def phi_psi_ok(self) -> bool:
        if self.pass_through:
            return True
        return compose(self.phi, self.psi) == self.derived.coding.theta


def _build_zeta(theta: Morphism, tau_k: Substitution, B: Alphabet, psi: Morphism) -> Substitution:
    images = []
    for j, w, t in zip(theta.domain, theta.images, tau_k.images):
        n = len(w)
        for p in range(1, n + 1):
            piece = t[p - 1:p] if p < n else t[n - 1:]
            images.append(apply(psi, piece))
    return Substitution(B, images)


def _check_conservation(theta: Morphism, tau_k: Substitution, zeta: Substitution, psi: Morphism):
    lengths = dict(zip(zeta.domain, zeta.lengths))
    for j, w, t in zip(theta.domain, theta.images, tau_k.images):
        total = sum(lengths[pair_token(j, p)] for p in range(1, len(w) + 1))
        if total != len(apply(psi, t)):
            raise ProperizationError(f"image-length conservation fails at {j}")


def properize(sigma: Substitution) -> ProperizationResult:
    require_primitive(sigma)
    if is_proper(sigma) is not None:
        ident = identity(sigma.alphabet)
        return ProperizationResult(sigma, sigma.alphabet, sigma, ident, ident, 1, True)

    seed_k, s = seeded_power(sigma)
    derived = return_words_closure(s)
    theta, tau = derived.coding.theta, derived.tau
    R = theta.domain
    B = Alphabet.of(pair_token(j, p) for j, w in zip(R, theta.images) for p in range(1, len(w) + 1))
    phi = Morphism(B, s.alphabet, tuple(
        s.alphabet.word([tok]) for w in theta.images for tok in w.tokens))
    psi = Morphism(R, B, tuple(
        B.word([pair_token(j, p) for p in range(1, len(w) + 1)]) for j, w in zip(R, theta.images)))
    if compose(phi, psi) != theta:
        raise ProperizationError("phi∘psi differs from theta")

    k = 1
    while any(len(t) < len(w) for t, w in zip(power(tau, k).images, theta.images)):
        k += 1
    escalations = []
    first_zeta = None
    for attempt in range(MAX_POWER_RETRIES + 1):
        tau_k = power(tau, k)
        zeta = _build_zeta(theta, tau_k, B, psi)
        _check_conservation(theta, tau_k, zeta, psi)
        if first_zeta is None:
            first_zeta = (k, zeta)
        if is_proper(zeta) is not None:
            break
        escalations.append(f"zeta with tau^{k} is not proper")
        k += 1
    else:
        # zeta(c) begins with some (m,1), and zeta(m,1) begins with psi(1),
        # so zeta∘zeta always begins with (1,1)
        k, zeta = first_zeta
        zeta = Substitution.from_morphism(compose(zeta, zeta))
        escalations.append(f"using zeta∘zeta built from tau^{k}")
        log.info("properization of %s needed the zeta∘zeta fallback", sigma)
        return _verified(ProperizationResult(sigma, B, zeta, phi, psi, k, False, derived, seed_k, 2,
                                             tuple(escalations)))
    return _verified(ProperizationResult(sigma, B, zeta, phi, psi, k, False, derived, seed_k, 1,
                                         tuple(escalations)))


def _verified(result: ProperizationResult) -> ProperizationResult:
    if is_proper(result.zeta) is None:
        raise ProperizationError("zeta is not proper")
    if not is_primitive(result.zeta):
        raise ProperizationError("zeta is not primitive")
    return result


def zeta_fixed_point_image(result: ProperizationResult, n: int) -> Word:
    """phi applied to the first n letters of zeta's fixed point."""
    return apply(result.phi, fixed_point_prefix(result.zeta, n))
