"""Exact integer/rational linear algebra for alphabet-sized matrices.

Everything here is exact: Python ints and :class:`fractions.Fraction`, no
floating point.  Determinants and characteristic polynomials use
fraction-free (Bareiss) elimination; Krylov relations use plain rational
Gaussian elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence


class NonSquareMatrixError(ValueError):
    pass


@dataclass(frozen=True)
class IntegerMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, d: int) -> "IntegerMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(d)) for i in range(d)))

    @classmethod
    def zeros(cls, n: int, m: int) -> "IntegerMatrix":
        return cls(tuple((0,) * m for _ in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    @property
    def is_square(self) -> bool:
        n, m = self.shape
        return n == m

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(tuple(zip(*self.rows)))

    @property
    def T(self) -> "IntegerMatrix":
        return self.transpose()

    def __matmul__(self, other):
        if isinstance(other, IntegerMatrix):
            if self.shape[1] != other.shape[0]:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = list(zip(*other.rows))
            return IntegerMatrix(tuple(
                tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows))
        return self.apply(other)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.shape[1]:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.rows)

    def __add__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        return IntegerMatrix(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def scale(self, c: int) -> "IntegerMatrix":
        return IntegerMatrix(tuple(tuple(c * a for a in r) for r in self.rows))

    def __pow__(self, k: int) -> "IntegerMatrix":
        if not self.is_square:
            raise NonSquareMatrixError("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative power")
        result = IntegerMatrix.identity(self.shape[0])
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def is_positive(self) -> bool:
        return all(x > 0 for r in self.rows for x in r)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __str__(self):
        width = max((len(str(x)) for r in self.rows for x in r), default=1)
        return "\n".join("[" + " ".join(str(x).rjust(width) for x in r) + "]" for r in self.rows)


def ones(d: int) -> tuple[int, ...]:
    return (1,) * d


class IntPolynomial:
    """Polynomial with integer coefficients, stored lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int]):
        if any(Fraction(x).denominator != 1 for x in coeffs):
            raise ValueError("non-integral coefficient")
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def X(cls) -> "IntPolynomial":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial([self[i] + other[i] for i in range(n)])

    def __neg__(self):
        return IntPolynomial([-a for a in self.coeffs])

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial([other * a for a in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def exact_div(self, other: "IntPolynomial") -> "IntPolynomial":
        """Quotient when ``other`` divides ``self`` in Z[X]; raises otherwise."""
        q, r = poly_divmod(self.coeffs, other.coeffs)
        if any(r) or any(x.denominator != 1 for x in q):
            raise ArithmeticError("inexact polynomial division")
        return IntPolynomial([int(x) for x in q])

    def __call__(self, x):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def at_matrix(self, m: IntegerMatrix) -> IntegerMatrix:
        """Horner evaluation at a square matrix."""
        d = m.shape[0]
        acc = IntegerMatrix.zeros(d, d)
        eye = IntegerMatrix.identity(d)
        for a in reversed(self.coeffs):
            acc = acc @ m + eye.scale(a)
        return acc

    def content(self) -> int:
        g = 0
        for a in self.coeffs:
            g = gcd(g, a)
        return g

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[i]
            if a == 0:
                continue
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if i == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("X" if i == 1 else f"X^{i}")
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def poly_divmod(num: Sequence, den: Sequence) -> tuple[list[Fraction], list[Fraction]]:
    """Division in Q[X] on low-first coefficient lists."""
    den = list(den)
    while den and den[-1] == 0:
        den.pop()
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(x) for x in num]
    while r and r[-1] == 0:
        r.pop()
    q = [Fraction(0)] * max(len(r) - len(den) + 1, 0)
    lead = Fraction(den[-1])
    while len(r) >= len(den) and r:
        shift = len(r) - len(den)
        c = r[-1] / lead
        q[shift] = c
        for i, b in enumerate(den):
            r[shift + i] -= c * b
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return q, r


def det(m: IntegerMatrix) -> int:
    """Determinant by Bareiss fraction-free elimination."""
    if not m.is_square:
        raise NonSquareMatrixError(f"determinant of a {m.shape} matrix")
    n = m.shape[0]
    if n == 0:
        return 1
    a = [list(r) for r in m.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def char_poly(m: IntegerMatrix) -> IntPolynomial:
    """det(X·I - M), computed by Bareiss elimination over Z[X].

    The k-th Bareiss pivot is the leading principal k×k minor of X·I - M,
    a monic polynomial of degree k, so no pivoting is ever needed and every
    division is exact.
    """
    if not m.is_square:
        raise NonSquareMatrixError(f"characteristic polynomial of a {m.shape} matrix")
    n = m.shape[0]
    if n == 0:
        return IntPolynomial((1,))
    X = IntPolynomial.X()
    a = [[(X if i == j else IntPolynomial(())) - IntPolynomial((m[i, j],)) for j in range(n)]
         for i in range(n)]
    prev = IntPolynomial((1,))
    for k in range(n - 1):
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    return a[n - 1][n - 1]


def rank(vectors: Sequence[Sequence]) -> int:
    """Rank over Q of a list of vectors."""
    return len(_echelon([list(map(Fraction, v)) for v in vectors]))


def _echelon(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    basis: list[tuple[int, list[Fraction]]] = []
    for v in rows:
        v = _reduce(v, basis)
        piv = next((i for i, x in enumerate(v) if x != 0), None)
        if piv is not None:
            basis.append((piv, v))
    return [v for _, v in basis]


def _reduce(v: list[Fraction], basis: list[tuple[int, list[Fraction]]]) -> list[Fraction]:
    v = list(v)
    for piv, b in basis:
        if v[piv] != 0:
            c = v[piv] / b[piv]
            v = [x - c * y for x, y in zip(v, b)]
    return v


def solve_rational(columns: Sequence[Sequence], target: Sequence) -> tuple[Fraction, ...]:
    """Solve sum_i c_i * columns[i] = target for a full-column-rank system.

    Raises ValueError when the columns are dependent or the system is
    inconsistent.
    """
    k = len(columns)
    d = len(target)
    # augmented d x (k+1) matrix
    a = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(d)]
    row = 0
    pivots = []
    for col in range(k):
        p = next((i for i in range(row, d) if a[i][col] != 0), None)
        if p is None:
            raise ValueError("columns are linearly dependent")
        a[row], a[p] = a[p], a[row]
        inv = 1 / a[row][col]
        a[row] = [x * inv for x in a[row]]
        for i in range(d):
            if i != row and a[i][col] != 0:
                c = a[i][col]
                a[i] = [x - c * y for x, y in zip(a[i], a[row])]
        pivots.append(col)
        row += 1
    if any(a[i][k] != 0 for i in range(row, d)):
        raise ValueError("inconsistent system")
    return tuple(a[i][k] for i in range(k))


@dataclass(frozen=True)
class KrylovRelation:
    """M^{r+1} e = sum_{i<=r} c_i M^i e with e, ..., M^r e independent."""

    r: int
    coefficients: tuple[Fraction, ...]
    vectors: tuple[tuple[int, ...], ...]  # e, Me, ..., M^{r+1} e


def krylov(m: IntegerMatrix, e: Sequence[int] | None = None) -> KrylovRelation:
    if not m.is_square:
        raise NonSquareMatrixError("Krylov sequence of a non-square matrix")
    d = m.shape[0]
    v = tuple(e) if e is not None else ones(d)
    vectors = [v]
    basis: list[tuple[int, list[Fraction]]] = []
    while True:
        reduced = _reduce([Fraction(x) for x in vectors[-1]], basis)
        piv = next((i for i, x in enumerate(reduced) if x != 0), None)
        if piv is None:
            break
        basis.append((piv, reduced))
        vectors.append(m.apply(vectors[-1]))
    r = len(vectors) - 2
    if r < 0:
        raise ValueError("starting vector is zero")
    coeffs = solve_rational(vectors[:-1], vectors[-1])
    return KrylovRelation(r, coeffs, tuple(vectors))
