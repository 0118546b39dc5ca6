"""Morphisms of free monoids and substitutions.

A :class:`Morphism` maps each letter of its domain to a non-empty word over
its codomain; a :class:`Substitution` is a morphism of an alphabet into
itself.  Incidence matrices follow the usual convention: entry ``(i, j)``
counts occurrences of letter ``i`` in the image of letter ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .exactlinalg import IntegerMatrix
from .words import Alphabet, AlphabetMismatch, Word, complexity


class NotPrimitiveError(ValueError):
    pass


@dataclass(frozen=True)
class Morphism:
    domain: Alphabet
    codomain: Alphabet
    images: tuple[Word, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if len(images) != len(self.domain):
            raise ValueError(f"expected {len(self.domain)} images, got {len(images)}")
        for c, img in zip(self.domain, images):
            if img.alphabet != self.codomain:
                raise AlphabetMismatch(f"image of {c!r} is not over the codomain")
            if not len(img):
                raise ValueError(f"image of {c!r} is empty")
        object.__setattr__(self, "images", images)

    @classmethod
    def from_dict(cls, rules: Mapping[str, str | Sequence[str]],
                  domain: Alphabet | None = None, codomain: Alphabet | None = None) -> "Morphism":
        domain = domain or Alphabet.of(rules)
        if codomain is None:
            seen: list[str] = []
            for rhs in rules.values():
                for t in (list(rhs) if isinstance(rhs, str) else rhs):
                    if t not in seen:
                        seen.append(t)
            codomain = Alphabet.of(seen)
        missing = [c for c in domain if c not in rules]
        if missing:
            raise ValueError(f"no image for letters {missing}")
        return cls(domain, codomain, tuple(codomain.word(rules[c]) for c in domain))

    def image(self, letter: str) -> Word:
        return self.images[self.domain.index(letter)]

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def __matmul__(self, other: "Morphism") -> "Morphism":
        return compose(self, other)

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(w) for w in self.images)

    def as_dict(self) -> dict[str, str]:
        return {c: img.spaced() for c, img in zip(self.domain, self.images)}

    def __str__(self):
        return "; ".join(f"{c} -> {img}" for c, img in zip(self.domain, self.images))


class Substitution(Morphism):
    """An endomorphism of a single alphabet."""

    def __init__(self, alphabet: Alphabet, images: Sequence[Word]):
        super().__init__(alphabet, alphabet, tuple(images))

    @classmethod
    def from_dict(cls, rules: Mapping[str, str | Sequence[str]],
                  alphabet: Alphabet | None = None) -> "Substitution":
        m = Morphism.from_dict(rules, alphabet, alphabet or Alphabet.of(rules))
        return cls(m.domain, m.images)

    @classmethod
    def from_morphism(cls, m: Morphism) -> "Substitution":
        if m.domain != m.codomain:
            raise AlphabetMismatch("substitution needs domain == codomain")
        return cls(m.domain, m.images)

    @property
    def alphabet(self) -> Alphabet:
        return self.domain

    @property
    def seed(self) -> str | None:
        """Smallest letter (alphabet order) whose image begins with itself."""
        for c, img in zip(self.domain, self.images):
            if img.letter_at(0) == c:
                return c
        return None

    def __pow__(self, k: int) -> "Substitution":
        return power(self, k)

    def __repr__(self):
        return f"Substitution({self.as_dict()})"


def identity(alphabet: Alphabet) -> Substitution:
    return Substitution(alphabet, [alphabet.letter(c) for c in alphabet])


def apply(m: Morphism, w: Word) -> Word:
    if w.alphabet != m.domain:
        raise AlphabetMismatch(f"word over {w.alphabet.letters} given to a morphism on {m.domain.letters}")
    keys = [img.key for img in m.images]
    return Word._from_key(m.codomain, "".join(keys[s] for s in w.symbols))


def compose(m1: Morphism, m2: Morphism) -> Morphism:
    """The morphism c -> m1(m2(c))."""
    if m2.codomain != m1.domain:
        raise AlphabetMismatch("cannot compose: codomain of the right factor differs from domain of the left")
    images = tuple(apply(m1, img) for img in m2.images)
    if m1.domain == m1.codomain == m2.domain:
        return Substitution(m2.domain, images)
    return Morphism(m2.domain, m1.codomain, images)


def power(s: Substitution, k: int) -> Substitution:
    if k < 0:
        raise ValueError("negative power")
    result: Morphism = identity(s.alphabet)
    for _ in range(k):
        result = compose(s, result)
    return Substitution.from_morphism(result)


def incidence_matrix(m: Morphism) -> IntegerMatrix:
    d_out = len(m.codomain)
    cols = []
    for img in m.images:
        col = [0] * d_out
        for sym in img.symbols:
            col[sym] += 1
        cols.append(col)
    return IntegerMatrix(tuple(zip(*cols))) if cols else IntegerMatrix(())


def wielandt_bound(d: int) -> int:
    return (d - 1) ** 2 + 1


def is_primitive(s: Substitution) -> bool:
    """True iff M^N is entrywise positive for some N >= (d-1)^2+1 (Wielandt).

    Positivity persists past the Wielandt exponent, so squaring the zero
    pattern until the exponent passes the bound decides primitivity.
    """
    d = len(s.alphabet)
    full = (1 << d) - 1
    rows = [sum(1 << j for j, x in enumerate(row) if x) for row in incidence_matrix(s).rows]
    n = 1
    while n < wielandt_bound(d):
        rows = [_bool_row_product(r, rows) for r in rows]
        n *= 2
    return all(r == full for r in rows)


def _bool_row_product(row: int, rows: list[int]) -> int:
    out = 0
    t = 0
    while row:
        if row & 1:
            out |= rows[t]
        row >>= 1
        t += 1
    return out


def require_primitive(s: Substitution):
    if not is_primitive(s):
        raise NotPrimitiveError(f"substitution is not primitive: {s}")


def is_proper(s: Substitution) -> str | None:
    """The letter every image starts with, or None."""
    firsts = {img.letter_at(0) for img in s.images}
    return firsts.pop() if len(firsts) == 1 else None


def constant_length(s: Substitution) -> int | None:
    lengths = set(s.lengths)
    return lengths.pop() if len(lengths) == 1 else None


def seeded_power(s: Substitution) -> tuple[int, Substitution]:
    """Smallest k >= 1 such that s^k has a seed letter, together with s^k.

    Under s^k the first letter of c's image is f^k(c) where f is the
    first-letter map, so k is the shortest cycle length of f (at most d).
    """
    first = [img.symbols[0] for img in s.images]
    best = None
    for start in range(len(first)):
        seen = {}
        c, step = start, 0
        while c not in seen:
            seen[c] = step
            c, step = first[c], step + 1
        cycle = step - seen[c]
        best = cycle if best is None else min(best, cycle)
    return best, (s if best == 1 else power(s, best))


def fixed_point_prefix(s: Substitution, n: int) -> Word:
    """First ``n`` letters of the fixed point grown from the seed letter.

    Substitutions without a seed are replaced by their smallest seeded power
    (same subshift).
    """
    if n < 0:
        raise ValueError("negative prefix length")
    if max(s.lengths) < 2:
        raise ValueError("substitution has no growing image (all images have length 1)")
    _, t = seeded_power(s)
    w = t.alphabet.letter(t.seed)
    for _ in range(n + 64):
        if len(w) >= n:
            return w[:n]
        nxt = apply(t, w)
        if len(nxt) == len(w):
            raise ValueError("fixed point iteration does not grow from the seed letter")
        w = nxt
    raise AssertionError("unreachable: length grows each iteration")


@dataclass(frozen=True)
class PeriodicityStatus:
    """Outcome of :func:`periodicity_probe`.

    ``periodic`` results are backed by the prefix data; otherwise the
    result is evidence only: p(n) >= n+1 was checked for n <= ``checked_depth``
    on a prefix of ``prefix_length`` letters.
    """

    periodic: bool
    period: Word | None
    checked_depth: int
    prefix_length: int

    @property
    def label(self) -> str:
        if self.periodic:
            return f"periodic({self.period})"
        return f"aperiodic-evidence(depth={self.checked_depth})"


def smallest_period(w: Word) -> int:
    """Smallest q >= 1 with w[i] == w[i+q] for all valid i (prefix function)."""
    t = w.key
    n = len(t)
    if n == 0:
        return 0
    pi = [0] * n
    for i in range(1, n):
        k = pi[i - 1]
        while k and t[i] != t[k]:
            k = pi[k - 1]
        if t[i] == t[k]:
            k += 1
        pi[i] = k
    return n - pi[-1]


def periodicity_probe(s: Substitution, horizon: int = 50) -> PeriodicityStatus:
    if horizon < 1:
        raise ValueError("horizon must be positive")
    long_len = 64 * horizon
    long = fixed_point_prefix(s, long_len)
    short = long[:4 * horizon]
    q = smallest_period(short)
    if q <= horizon and complexity(long, q) <= q:
        return PeriodicityStatus(True, short[:q], 0, long_len)
    depth = 0
    for n in range(1, horizon + 1):
        if complexity(long, n) >= n + 1:
            depth = n
        else:
            break
    return PeriodicityStatus(False, None, depth, long_len)
