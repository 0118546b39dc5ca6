"""S-adic sequences, Sturmian words and empirical linear-recurrence checks.

Sturmian sequences are generated two independent ways: as S-adic limits of
tau^{i1} sigma^{i2} tau^{i3} ... (00...) over

    tau(0) = 0, tau(1) = 10,   sigma(0) = 01, sigma(1) = 1,

with [0; i1 + 1, i2, i3, ...] the continued fraction of alpha, and as the
coding of the rotation by alpha, computed exactly from a convergent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .exactlinalg import IntegerMatrix
from .morphism import Morphism, apply, incidence_matrix
from .words import Alphabet, Word, complexity, factor_positions, factor_set

BINARY = Alphabet.of("01")
TAU = Morphism.from_dict({"0": "0", "1": "10"}, BINARY, BINARY)
SIGMA = Morphism.from_dict({"0": "01", "1": "1"}, BINARY, BINARY)
STURMIAN_MORPHISMS = {"tau": TAU, "sigma": SIGMA}


class DirectiveTooShort(ValueError):
    def __init__(self, message: str, required: int | None = None):
        super().__init__(message)
        self.required = required


class InsufficientPrecision(ValueError):
    def __init__(self, message: str, required_q: int):
        super().__init__(message)
        self.required_q = required_q


@dataclass(frozen=True)
class DirectiveSequence:
    """sigma_0 sigma_1 ... sigma_last, each a name in ``morphisms``."""

    morphisms: Mapping[str, Morphism]
    directive: tuple[str, ...]
    seed: str

    def __post_init__(self):
        object.__setattr__(self, "directive", tuple(self.directive))
        unknown = [d for d in self.directive if d not in self.morphisms]
        if unknown:
            raise ValueError(f"unknown morphisms in directive: {sorted(set(unknown))}")
        seq = self.sequence
        for i, (left, right) in enumerate(zip(seq, seq[1:])):
            if right.codomain != left.domain:
                raise ValueError(f"directive positions {i} and {i + 1} are not composable")
        if seq and self.seed not in seq[-1].domain:
            raise ValueError(f"seed {self.seed!r} is not a letter of the last domain")

    @property
    def sequence(self) -> list[Morphism]:
        return [self.morphisms[d] for d in self.directive]

    def __len__(self):
        return len(self.directive)

    @property
    def prefix_compatible(self) -> bool:
        """Every morphism maps the seed to a word beginning with the seed."""
        return all(self.seed in m.domain and m.image(self.seed).letter_at(0) == self.seed
                   for m in self.sequence)

    def run_lengths(self) -> list[tuple[str, int]]:
        runs: list[tuple[str, int]] = []
        for d in self.directive:
            if runs and runs[-1][0] == d:
                runs[-1] = (d, runs[-1][1] + 1)
            else:
                runs.append((d, 1))
        return runs


def sadic_prefix(d: DirectiveSequence, n: int) -> Word:
    """First n letters of lim sigma_0 ... sigma_k (seed seed ...)."""
    if not d.prefix_compatible:
        raise ValueError("some morphism does not map the seed to a word starting with it")
    if not len(d):
        raise DirectiveTooShort("empty directive")
    w = d.sequence[-1].domain.letter(d.seed)
    for m in reversed(d.sequence):
        w = apply(m, w)
    if len(w) < n:
        raise DirectiveTooShort(f"directive yields only {len(w)} letters, {n} requested; extend it")
    return w[:n]


def primitive_window_check(d: DirectiveSequence, s0: int) -> list[bool]:
    """For r = 0 .. last - s0: does every letter occur in every sigma_{r+1}..sigma_{r+s0} image?"""
    if s0 < 1:
        raise ValueError("s0 must be positive")
    if len(d) < s0 + 1:
        raise DirectiveTooShort(f"need at least {s0 + 1} morphisms for s0={s0}", s0 + 1)
    mats = [incidence_matrix(m) for m in d.sequence]
    out = []
    for r in range(len(d) - s0):
        prod = mats[r + 1]
        for m in mats[r + 2:r + s0 + 1]:
            prod = prod @ m
        out.append(prod.is_positive())
    return out


@dataclass(frozen=True)
class ContinuedFraction:
    """[a_0; a_1, a_2, ...] truncated to finitely many coefficients."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(a) for a in self.coefficients)
        if not c:
            raise ValueError("empty continued fraction")
        if c[0] < 0 or any(a < 1 for a in c[1:]):
            raise ValueError("need a_0 >= 0 and a_k >= 1 for k >= 1")
        object.__setattr__(self, "coefficients", c)

    @classmethod
    def parse(cls, text: str) -> "ContinuedFraction":
        return cls(tuple(int(t) for t in text.replace(";", ",").split(",") if t.strip()))

    def convergents(self) -> list[tuple[int, int]]:
        p0, q0, p1, q1 = 1, 0, self.coefficients[0], 1
        out = [(p1, q1)]
        for a in self.coefficients[1:]:
            p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
            out.append((p1, q1))
        return out

    @property
    def bound(self) -> int:
        return max(self.coefficients[1:], default=0)

    def __str__(self):
        head, *tail = self.coefficients
        return f"[{head}; {', '.join(map(str, tail))}]"


def sturmian_exponents(cf: ContinuedFraction) -> list[int]:
    """i_1 = a_1 - 1, i_k = a_k for k >= 2."""
    c = cf.coefficients
    if c[0] != 0 or len(c) < 2:
        raise ValueError("need a continued fraction [0; a_1, ...] with a_1 >= 1")
    return [c[1] - 1] + list(c[2:])


def sturmian_directive(cf: ContinuedFraction, target_length: int) -> DirectiveSequence:
    """tau^{i1} sigma^{i2} tau^{i3} ..., cut once the prefix reaches target_length."""
    names: list[str] = []
    lengths = IntegerMatrix.identity(2)
    for k, i in enumerate(sturmian_exponents(cf)):
        name = "tau" if k % 2 == 0 else "sigma"
        block = incidence_matrix(STURMIAN_MORPHISMS[name])
        for _ in range(i):
            names.append(name)
            lengths = lengths @ block
        if sum(row[0] for row in lengths.rows) >= target_length:
            return DirectiveSequence(STURMIAN_MORPHISMS, tuple(names), "0")
    raise DirectiveTooShort(
        f"continued fraction {cf} yields only {sum(row[0] for row in lengths.rows)} letters; "
        f"more coefficients needed for {target_length}")


def rotation_coding_prefix(cf: ContinuedFraction, n: int) -> Word:
    """s_k = floor((k+1)p/q) - floor(kp/q), k < n, with p/q the last convergent.

    For q > n these are the first n letters of the coding of the orbit of 0
    under rotation by any alpha with this continued-fraction prefix.
    """
    p, q = cf.convergents()[-1]
    if q <= n:
        raise InsufficientPrecision(
            f"convergent denominator {q} does not exceed {n}; add coefficients", n + 1)
    return BINARY.word("".join(str((k + 1) * p // q - k * p // q) for k in range(n)))


def sturmian_language_check(cf: ContinuedFraction, length: int, max_n: int = 12) -> dict[int, bool]:
    """Per n <= max_n: do S-adic and rotation prefixes have equal length-n factor sets?"""
    x = sadic_prefix(sturmian_directive(cf, length), length)
    y = rotation_coding_prefix(cf, length)
    return {n: factor_set(x, n) == factor_set(y, n) for n in range(1, max_n + 1)}


@dataclass(frozen=True)
class AnchorDetail:
    anchor: str
    occurrences: int
    card: int
    min_return: int
    max_return: int


@dataclass(frozen=True)
class LrEstimate:
    """Largest observed |w|/|u| over return words w to anchors u; prefix-limited."""

    max_ratio: float
    witness: str | None
    anchor_range: tuple[int, int]
    prefix_length: int
    anchors: tuple[AnchorDetail, ...]
    skipped: int
    certified: bool = False


def _anchor_details(prefix: Word, n: int, min_occ: int = 3):
    letters = prefix.alphabet.letters
    text = prefix.key
    skipped = 0
    out = []
    for key, occ in factor_positions(prefix, n).items():
        if len(occ) < min_occ:
            skipped += 1
            continue
        returns = {text[i:j] for i, j in zip(occ, occ[1:])}
        lens = [len(w) for w in returns]
        out.append(AnchorDetail("".join(letters[ord(ch)] for ch in key), len(occ), len(returns),
                                min(lens), max(lens)))
    return out, skipped


def lr_estimate(prefix: Word, max_anchor: int) -> LrEstimate:
    best, witness, skipped = 0.0, None, 0
    details: list[AnchorDetail] = []
    for n in range(1, max_anchor + 1):
        if n > len(prefix):
            break
        found, sk = _anchor_details(prefix, n)
        skipped += sk
        details.extend(found)
        for a in found:
            ratio = a.max_return / n
            if ratio > best:
                best, witness = ratio, a.anchor
    return LrEstimate(best, witness, (1, max_anchor), len(prefix), tuple(details), skipped)


@dataclass(frozen=True)
class PropertyCheck:
    name: str
    passed: bool
    witness: str | None = None


@dataclass(frozen=True)
class LrDiagnostics:
    K: int
    max_n: int
    checks: tuple[PropertyCheck, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> PropertyCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _power_witness(prefix: Word, exponent: int, max_period: int) -> str | None:
    """Leftmost u^exponent with |u| <= max_period (shortest period first)."""
    text = prefix.key
    N = len(text)
    letters = prefix.alphabet.letters
    for q in range(1, max_period + 1):
        need = (exponent - 1) * q  # matches text[i] == text[i+q] in a row
        if exponent * q > N:
            break
        run = 0
        for i in range(N - q):
            run = run + 1 if text[i] == text[i + q] else 0
            if run >= need:
                start = i - need + 1
                return "".join(letters[ord(ch)] for ch in text[start:start + exponent * q])
    return None


def _window_witness(prefix: Word, K: int, n: int) -> str | None:
    """A length-n factor missing from some length-(K+1)n window, if any."""
    N = len(prefix)
    W = (K + 1) * n
    if W > N:
        return None
    s_max = N - W
    reach = K * n  # window at s holds an occurrence iff one starts in [s, s + Kn]
    letters = prefix.alphabet.letters
    for key, occ in factor_positions(prefix, n).items():
        bad = None
        if occ[0] > reach:
            bad = 0
        else:
            for i, j in zip(occ, occ[1:]):
                if j - i > reach + 1 and i + 1 <= s_max:
                    bad = i + 1
                    break
            if bad is None and occ[-1] + 1 <= s_max:
                bad = occ[-1] + 1
        if bad is not None:
            return f"{''.join(letters[ord(c)] for c in key)} missing from window at {bad}"
    return None


def lr_diagnostics(prefix: Word, K: int, max_n: int) -> LrDiagnostics:
    """Necessary conditions for linear recurrence with constant K, for n <= max_n."""
    if K < 1:
        raise ValueError("K must be positive")
    max_n = min(max_n, len(prefix))
    checks = []

    bad = next((n for n in range(1, max_n + 1) if complexity(prefix, n) > K * n), None)
    checks.append(PropertyCheck("complexity", bad is None,
                                None if bad is None else f"p({bad}) = {complexity(prefix, bad)} > {K * bad}"))

    w = _power_witness(prefix, K + 1, max_n)
    checks.append(PropertyCheck("power_free", w is None, w))

    w = next((x for x in (_window_witness(prefix, K, n) for n in range(1, max_n + 1)) if x), None)
    checks.append(PropertyCheck("window_occurrence", w is None, w))

    card_bad = upper_bad = lower_bad = None
    limit = K * (K + 1) ** 2
    for n in range(1, max_n + 1):
        found, _ = _anchor_details(prefix, n)
        for a in found:
            if card_bad is None and a.card > limit:
                card_bad = f"{a.anchor}: {a.card} return words > {limit}"
            if upper_bad is None and a.max_return > K * n:
                upper_bad = f"{a.anchor}: return length {a.max_return} > {K * n}"
            if lower_bad is None and K * a.min_return <= n:
                lower_bad = f"{a.anchor}: return length {a.min_return} <= {n}/{K}"
    checks.append(PropertyCheck("return_card", card_bad is None, card_bad))
    checks.append(PropertyCheck("return_upper", upper_bad is None, upper_bad))
    checks.append(PropertyCheck("return_lower", lower_bad is None, lower_bad))
    return LrDiagnostics(K, max_n, tuple(checks))
