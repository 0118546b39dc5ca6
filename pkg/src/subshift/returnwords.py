"""Return words, derived substitutions and recodings between anchors.

Return words to an anchor ``u`` (a prefix of the sequence) are numbered
1, 2, ... in the order of their first appearance, and ``theta`` maps those
numbers back to the words.  Only :func:`return_words_closure` produces a
complete (certified) set; scans of a finite prefix are marked
``certified=False``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .morphism import (Morphism, Substitution, apply, compose, fixed_point_prefix, power,
                       require_primitive)
from .words import Alphabet, Word, occurrences

log = logging.getLogger(__name__)


class DecompositionError(ValueError):
    pass


class PrefixTooShort(ValueError):
    def __init__(self, message: str, required: int):
        super().__init__(message)
        self.required = required


def return_alphabet(n: int) -> Alphabet:
    return Alphabet.of(str(i) for i in range(1, n + 1))


@dataclass(frozen=True)
class ReturnCoding:
    u: Word
    theta: Morphism
    derived_word: Word | None = None
    certified: bool = False

    @property
    def size(self) -> int:
        return len(self.theta.domain)

    @property
    def return_words(self) -> tuple[Word, ...]:
        return self.theta.images

    def code_of(self, w: Word) -> str | None:
        """Letter j with theta(j) == w, or None."""
        for j, img in zip(self.theta.domain, self.theta.images):
            if img == w:
                return j
        return None

    def decode(self, coded: Word) -> Word:
        return apply(self.theta, coded)


@dataclass(frozen=True)
class DerivedSubstitution:
    """``sigma^power ∘ theta == theta ∘ tau`` with tau proper (begins with 1)."""

    coding: ReturnCoding
    tau: Substitution
    sigma: Substitution
    power: int = 1

    def check(self) -> bool:
        s = self.sigma if self.power == 1 else power(self.sigma, self.power)
        return compose(s, self.coding.theta) == compose(self.coding.theta, self.tau)


@dataclass(frozen=True)
class Recoding:
    """``lam`` with ``outer.theta ∘ lam == inner.theta``; inner anchor extends the outer one."""

    lam: Morphism
    inner: ReturnCoding
    outer: ReturnCoding

    def check(self) -> bool:
        return compose(self.outer.theta, self.lam) == self.inner.theta


def split_at_anchor(w: Word, anchor: Word) -> list[Word]:
    """Cut ``w`` into return words to ``anchor``.

    ``w`` must begin with ``anchor`` and be followed by ``anchor`` in the
    sequence; cuts are the occurrences of ``anchor`` in ``w·anchor`` that
    start inside ``w``.
    """
    if len(w) == 0:
        return []
    extended = w + anchor
    cuts = [i for i in occurrences(anchor, extended) if i < len(w)]
    if not cuts or cuts[0] != 0:
        raise DecompositionError(f"{w} does not begin with the anchor {anchor}")
    bounds = cuts + [len(w)]
    return [w[i:j] for i, j in zip(bounds, bounds[1:])]


def _coding(u: Word, words: list[Word], derived: list[int] | None, certified: bool) -> ReturnCoding:
    R = return_alphabet(len(words))
    theta = Morphism(R, u.alphabet, tuple(words))
    dw = Word(R, tuple(derived)) if derived is not None else None
    return ReturnCoding(u, theta, dw, certified)


def return_words_in_prefix(prefix: Word, u: Word) -> ReturnCoding:
    """Return words to ``u`` observed between consecutive occurrences in ``prefix``.

    The result is not certified: a short prefix may miss return words.
    """
    if not len(u):
        raise ValueError("anchor must be non-empty")
    occ = occurrences(u, prefix)
    if not occ or occ[0] != 0:
        raise ValueError(f"anchor {u} is not a prefix of the scanned word")
    if len(occ) < 2:
        raise PrefixTooShort(f"anchor {u} occurs once in a prefix of length {len(prefix)}; "
                             "no return word is observable", required=2 * len(prefix))
    index: dict[str, int] = {}
    words: list[Word] = []
    derived = []
    for i, j in zip(occ, occ[1:]):
        key = prefix.key[i:j]
        if key not in index:
            index[key] = len(words)
            words.append(prefix[i:j])
        derived.append(index[key])
    return _coding(u, words, derived, certified=False)


def return_words_closure(sigma: Substitution, a: str | None = None) -> DerivedSubstitution:
    """Complete return words to the letter ``a`` and the derived substitution.

    Starts from the return words visible in sigma^m(a) for the first m in
    which ``a`` recurs, then closes the set under "cut sigma(theta(j)) at
    the occurrences of a".  A closed set contains every return word of the
    fixed point, which certifies the result.  If tau fails to be proper, it
    is replaced by its smallest proper power (and sigma by the same power).
    """
    require_primitive(sigma)
    a = a if a is not None else sigma.seed
    if a is None:
        raise ValueError("substitution has no seed letter; take seeded_power() first")
    A = sigma.alphabet
    anchor = A.letter(a)
    if sigma.image(a).letter_at(0) != a:
        raise ValueError(f"image of {a!r} does not begin with {a!r}")

    w = anchor
    while len(occurrences(anchor, w)) < 2:
        nxt = apply(sigma, w)
        if len(nxt) == len(w):
            raise DecompositionError(f"letter {a!r} does not recur in the fixed point")
        w = nxt
    occ = occurrences(anchor, w)
    index: dict[str, int] = {}
    words: list[Word] = []

    def code(seg: Word) -> int:
        if seg.key not in index:
            index[seg.key] = len(words)
            words.append(seg)
        return index[seg.key]

    for i, j in zip(occ, occ[1:]):
        code(w[i:j])
    tau_images: list[list[int]] = []
    j = 0
    while j < len(words):
        tau_images.append([code(seg) for seg in split_at_anchor(apply(sigma, words[j]), anchor)])
        j += 1

    if tau_images[0][0] != 0:
        raise DecompositionError("sigma(theta(1)) does not begin with theta(1)")
    order = _first_appearance(tau_images)
    if len(order) != len(words):
        raise DecompositionError("some return words are not reachable from theta(1) under tau")
    rank = {old: new for new, old in enumerate(order)}
    words = [words[old] for old in order]
    R = return_alphabet(len(words))
    tau = Substitution(R, [Word(R, tuple(rank[c] for c in tau_images[old])) for old in order])

    k = _properness_power(tau)
    if k > 1:
        log.info("tau is not proper; using tau^%d and sigma^%d", k, k)
        tau = power(tau, k)
    coding = _coding(anchor, words, None, certified=True)
    derived = DerivedSubstitution(coding, tau, sigma, k)
    if not derived.check():
        raise DecompositionError("certificate sigma∘theta == theta∘tau failed")
    return derived


def _first_appearance(images: list[list[int]]) -> list[int]:
    """Letters in order of first appearance in the fixed point of images from 0."""
    # images[0] starts with 0, so each iterate is a prefix of the next
    y = [0]
    while len(set(y)) < len(images) and len(y) < 10 ** 6:
        nxt = [c for s in y for c in images[s]]
        if len(nxt) == len(y):
            break
        y = nxt
    return list(dict.fromkeys(y))


def _properness_power(tau: Substitution) -> int:
    first = [img.symbols[0] for img in tau.images]
    steps = 1
    for j in range(len(first)):
        c, k = first[j], 1
        while c != 0:
            c, k = first[c], k + 1
            if k > len(first) + 1:
                raise DecompositionError("tau has no proper power")
        steps = max(steps, k)
    return steps


def derived_recoding(inner: ReturnCoding, outer: ReturnCoding) -> Recoding:
    """lambda with outer.theta ∘ lambda == inner.theta.

    ``outer.u`` must be a non-empty prefix of ``inner.u``; each return word
    to ``inner.u`` is cut into return words to ``outer.u``.
    """
    u, v = inner.u, outer.u
    if not len(v) or not v.is_prefix_of(u):
        raise ValueError(f"{v} is not a non-empty prefix of {u}")
    R_v = outer.theta.domain
    images = []
    for w in inner.return_words:
        codes = []
        for seg in split_at_anchor(w, v):
            j = outer.code_of(seg)
            if j is None:
                raise DecompositionError(f"segment {seg} is not a known return word to {v}")
            codes.append(R_v.index(j))
        images.append(Word(R_v, tuple(codes)))
    rec = Recoding(Morphism(inner.theta.domain, R_v, tuple(images)), inner, outer)
    if not rec.check():
        raise DecompositionError("recoding identity failed")
    return rec


@dataclass(frozen=True)
class SadicDecomposition:
    alpha: int
    codings: tuple[ReturnCoding, ...]      # anchors of length alpha^n, n = 0..depth
    recodings: tuple[Recoding, ...]        # lambda_1 .. lambda_depth
    reconstruction: Word                   # lambda_0 lambda_1 ... lambda_depth (1)
    reconstruction_ok: bool

    @property
    def lambdas(self) -> tuple[Morphism, ...]:
        """lambda_0 = theta_0 followed by lambda_1 .. lambda_depth."""
        return (self.codings[0].theta,) + tuple(r.lam for r in self.recodings)


def sadic_required_length(K: int, depth: int) -> int:
    """Prefix length that contains every return word to the deepest anchor.

    For an LR sequence with constant K a return occurrence w·u has length at
    most (K+1)|u| and every such word occurs in every window of length
    (K+1)^2 |u|.
    """
    alpha = K * K * (K + 1)
    return (K + 1) ** 2 * alpha ** depth


def sadic_decomposition(prefix: Word, K: int, depth: int) -> SadicDecomposition:
    if K < 1 or depth < 0:
        raise ValueError("K must be positive and depth non-negative")
    alpha = K * K * (K + 1)
    required = sadic_required_length(K, depth)
    if len(prefix) < required:
        raise PrefixTooShort(f"prefix of length {len(prefix)} is too short for K={K}, depth={depth}; "
                             f"need at least {required}", required)
    codings = []
    for n in range(depth + 1):
        try:
            codings.append(return_words_in_prefix(prefix, prefix[:alpha ** n]))
        except PrefixTooShort:
            raise PrefixTooShort(f"anchor of length {alpha ** n} does not recur in the prefix; "
                                 f"need at least {required}", required) from None
    recodings = tuple(derived_recoding(codings[n], codings[n - 1]) for n in range(1, depth + 1))
    R = codings[-1].theta.domain
    w = R.letter("1")
    for rec in reversed(recodings):
        w = apply(rec.lam, w)
    w = apply(codings[0].theta, w)
    return SadicDecomposition(alpha, tuple(codings), recodings, w, w.is_prefix_of(prefix))


def min_return_length_profile(prefix: Word, max_anchor: int) -> list[tuple[int, int]]:
    """(|u|, min return length) for prefix anchors of doubling length.

    On aperiodic inputs the minimum should not decrease; a decrease is logged,
    not raised, since a finite prefix can under-sample return words.
    """
    out = []
    n = 1
    while n <= max_anchor:
        try:
            c = return_words_in_prefix(prefix, prefix[:n])
        except PrefixTooShort:
            break
        out.append((n, min(len(w) for w in c.return_words)))
        n *= 2
    for (n0, m0), (n1, m1) in zip(out, out[1:]):
        if m1 < m0:
            log.warning("min return length dropped from %d to %d between anchors %d and %d",
                        m0, m1, n0, n1)
    return out
