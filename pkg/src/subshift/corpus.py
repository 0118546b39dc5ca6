"""Built-in substitutions used by the CLI, the tests and the acceptance suite."""

from __future__ import annotations

from .morphism import Substitution
from .words import Alphabet

EX = Substitution.from_dict({"a": "aba", "b": "baab"})
FIB = Substitution.from_dict({"a": "ab", "b": "a"})
TM = Substitution.from_dict({"a": "ab", "b": "ba"})
PER = Substitution.from_dict({"a": "ab", "b": "ab"})

PERIOD_DOUBLING = Substitution.from_dict({"a": "ab", "b": "aa"})
LENGTH_THREE = Substitution.from_dict({"a": "aab", "b": "bba"})


def _height_three() -> Substitution:
    # Thue-Morse with a Z/3 position counter: the letter at index n carries n mod 3
    A = Alphabet.of(f"{c}{i}" for c in "ab" for i in range(3))
    tm = {"a": "ab", "b": "ba"}
    rules = {f"{c}{i}": [f"{tm[c][0]}{2 * i % 3}", f"{tm[c][1]}{(2 * i + 1) % 3}"]
             for c in "ab" for i in range(3)}
    return Substitution.from_dict(rules, A)


HEIGHT_THREE = _height_three()

CORPUS = {
    "EX": EX,
    "FIB": FIB,
    "TM": TM,
    "PER": PER,
    "PD": PERIOD_DOUBLING,
    "L3": LENGTH_THREE,
    "H3": HEIGHT_THREE,
}
CONSTANT_LENGTH_EXTRAS = ("PD", "L3", "H3")
