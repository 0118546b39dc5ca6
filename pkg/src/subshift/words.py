"""Finite words over explicit alphabets.

Letters are opaque string tokens, so composite letters such as ``(1,2)``
are as good as ``a``.  A :class:`Word` stores letter indices against its
:class:`Alphabet`; mixing words over different alphabets raises
:class:`AlphabetMismatch`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


class AlphabetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    letters: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        letters = tuple(str(c) for c in self.letters)
        if not letters:
            raise ValueError("alphabet must be non-empty")
        if len(set(letters)) != len(letters):
            dup = sorted({c for c in letters if letters.count(c) > 1})
            raise ValueError(f"duplicate letters in alphabet: {dup}")
        if any(not c or c.isspace() for c in letters):
            raise ValueError("letters must be non-empty tokens")
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "_index", {c: i for i, c in enumerate(letters)})

    @classmethod
    def of(cls, letters: Iterable[str]) -> "Alphabet":
        """``Alphabet.of("ab")`` or ``Alphabet.of(["(1,1)", "(1,2)"])``."""
        return cls(tuple(letters))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __contains__(self, letter):
        return letter in self._index

    def index(self, letter: str) -> int:
        try:
            return self._index[letter]
        except KeyError:
            raise AlphabetMismatch(f"letter {letter!r} not in alphabet {self.letters}") from None

    @property
    def single_char(self) -> bool:
        return all(len(c) == 1 for c in self.letters)

    def word(self, text: str | Sequence[str]) -> "Word":
        """Build a word from a string or a sequence of tokens.

        A plain string is split into characters when every letter is a single
        character, and on whitespace otherwise.
        """
        if isinstance(text, str):
            tokens = list(text) if self.single_char else text.split()
        else:
            tokens = list(text)
        return Word(self, tuple(self.index(t) for t in tokens))

    def letter(self, letter: str) -> "Word":
        return Word(self, (self.index(letter),))

    def empty(self) -> "Word":
        return Word(self, ())


@dataclass(frozen=True)
class Word:
    alphabet: Alphabet
    symbols: tuple[int, ...]

    def __post_init__(self):
        symbols = tuple(self.symbols)
        n = len(self.alphabet)
        for s in symbols:
            if not 0 <= s < n:
                raise AlphabetMismatch(f"index {s} out of range for alphabet of size {n}")
        object.__setattr__(self, "symbols", symbols)

    @property
    def key(self) -> str:
        # one character per letter; lets str.find / slicing do the scanning
        k = self.__dict__.get("_key")
        if k is None:
            k = "".join(map(chr, self.symbols))
            object.__setattr__(self, "_key", k)
        return k

    @classmethod
    def _from_key(cls, alphabet: Alphabet, key: str) -> "Word":
        w = cls.__new__(cls)
        object.__setattr__(w, "alphabet", alphabet)
        object.__setattr__(w, "symbols", tuple(map(ord, key)))
        object.__setattr__(w, "_key", key)
        return w

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word._from_key(self.alphabet, self.key[item])
        return self.symbols[item]

    def __add__(self, other: "Word") -> "Word":
        _check_same(self, other)
        return Word._from_key(self.alphabet, self.key + other.key)

    def __mul__(self, k: int) -> "Word":
        return Word._from_key(self.alphabet, self.key * k)

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.alphabet == other.alphabet and self.symbols == other.symbols

    def __hash__(self):
        return hash((self.alphabet.letters, self.symbols))

    @property
    def tokens(self) -> tuple[str, ...]:
        return tuple(self.alphabet.letters[s] for s in self.symbols)

    def letter_at(self, i: int) -> str:
        return self.alphabet.letters[self.symbols[i]]

    def is_prefix_of(self, other: "Word") -> bool:
        _check_same(self, other)
        return other.key.startswith(self.key)

    def __str__(self):
        return "".join(self.tokens)

    def __repr__(self):
        return f"Word({str(self)!r})"

    def spaced(self) -> str:
        return " ".join(self.tokens)


def _check_same(u: Word, w: Word):
    if u.alphabet != w.alphabet:
        raise AlphabetMismatch(f"words over different alphabets: {u.alphabet.letters} vs {w.alphabet.letters}")


def occurrences(u: Word, w: Word) -> list[int]:
    """All start indices of ``u`` in ``w`` (overlaps included), ascending."""
    _check_same(u, w)
    if not len(u):
        raise ValueError("cannot scan for the empty word")
    key, text = u.key, w.key
    out = []
    i = text.find(key)
    while i != -1:
        out.append(i)
        i = text.find(key, i + 1)
    return out


def gaps(u: Word, w: Word) -> list[int]:
    """Differences between successive occurrences of ``u`` in ``w``."""
    occ = occurrences(u, w)
    return [j - i for i, j in zip(occ, occ[1:])]


def factor_set(w: Word, n: int) -> set[Word]:
    """Distinct length-``n`` factors of ``w``; ``len`` of the result is p(n)."""
    if n <= 0:
        raise ValueError("factor length must be positive")
    if n > len(w):
        raise ValueError(f"factor length {n} exceeds word length {len(w)}")
    return {Word._from_key(w.alphabet, k) for k in _factor_keys(w.key, n)}


def _factor_keys(text: str, n: int) -> set[str]:
    return {text[i:i + n] for i in range(len(text) - n + 1)}


def complexity(w: Word, n: int) -> int:
    return len(_factor_keys(w.key, n))


def factor_positions(w: Word, n: int) -> dict[str, list[int]]:
    """Map each length-``n`` factor key to its ascending occurrence list."""
    text = w.key
    pos: dict[str, list[int]] = {}
    for i in range(len(text) - n + 1):
        pos.setdefault(text[i:i + n], []).append(i)
    return pos


def max_power(u: Word, w: Word) -> int:
    """Largest k such that u repeated k times is a factor of w."""
    occ = occurrences(u, w)
    if not occ:
        return 0
    step = len(u)
    present = set(occ)
    best = 0
    for i in occ:
        if i - step in present:
            continue  # not the start of a run
        k = 1
        while i + k * step in present:
            k += 1
        best = max(best, k)
    return best
