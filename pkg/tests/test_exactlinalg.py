from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from subshift.exactlinalg import (IntegerMatrix, IntPolynomial, NonSquareMatrixError, char_poly,
                                  det, krylov, ones, poly_divmod, rank, solve_rational)
from tests.oracles import cofactor_det, sympy_charpoly, sympy_restricted


def square(max_d=5, lo=-6, hi=6):
    return st.integers(min_value=1, max_value=max_d).flatmap(
        lambda d: st.lists(st.lists(st.integers(lo, hi), min_size=d, max_size=d), min_size=d, max_size=d))


nonneg = square(max_d=4, lo=0, hi=3)

EX_M = IntegerMatrix(((1, 1, 0), (2, 2, 1), (1, 1, 1)))


def test_ex_matrix_krylov():
    rel = krylov(EX_M)
    assert rel.vectors[:3] == ((1, 1, 1), (2, 5, 3), (7, 17, 10))
    assert rel.r == 2
    assert rel.coefficients == (0, -2, 4)


def test_char_poly_formatting():
    assert str(char_poly(EX_M)) == "X^3 - 4X^2 + 2X"
    assert str(IntPolynomial([-1, -1, 1])) == "X^2 - X - 1"
    assert str(IntPolynomial([])) == "0"


def test_non_square_rejected():
    m = IntegerMatrix(((1, 2, 3), (4, 5, 6)))
    with pytest.raises(NonSquareMatrixError):
        det(m)
    with pytest.raises(NonSquareMatrixError):
        char_poly(m)


def test_det_needs_row_swap():
    assert det(IntegerMatrix(((0, 1), (1, 0)))) == -1
    assert det(IntegerMatrix(((0, 0), (1, 1)))) == 0


def test_poly_rejects_fractions():
    with pytest.raises(ValueError):
        IntPolynomial([Fraction(1, 2), 1])


def test_exact_div():
    a = IntPolynomial([-1, 0, 1])
    assert a.exact_div(IntPolynomial([1, 1])) == IntPolynomial([-1, 1])
    with pytest.raises(ArithmeticError):
        a.exact_div(IntPolynomial([2, 1]))


@given(square())
def test_bareiss_det_matches_cofactor_and_sympy(rows):
    m = IntegerMatrix(rows)
    d = det(m)
    assert d == cofactor_det(rows)
    assert d == int(sympy.Matrix(rows).det())


@given(square())
def test_char_poly_matches_sympy(rows):
    cp = char_poly(IntegerMatrix(rows))
    assert list(cp.coeffs) == sympy_charpoly(rows)
    assert cp.is_monic and cp.degree == len(rows)


@given(square(max_d=4))
def test_cayley_hamilton(rows):
    m = IntegerMatrix(rows)
    assert char_poly(m).at_matrix(m).is_zero()


@given(square(max_d=4))
def test_power_is_repeated_product(a):
    m = IntegerMatrix(a)
    assert m ** 3 == m @ m @ m
    assert (m ** 0) == IntegerMatrix.identity(len(a))


@given(nonneg)
def test_krylov_matches_sympy(rows):
    m = IntegerMatrix(rows)
    rel = krylov(m)
    r, q = sympy_restricted(rows)
    assert rel.r == r
    assert [-c for c in rel.coefficients] + [1] == [Fraction(int(sympy.numer(c)), int(sympy.denom(c))) for c in q]
    # the relation holds exactly
    lhs = rel.vectors[-1]
    rhs = [sum(c * v[i] for c, v in zip(rel.coefficients, rel.vectors)) for i in range(len(rows))]
    assert list(lhs) == rhs


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=5))
def test_rank_matches_sympy(vectors):
    assert rank(vectors) == sympy.Matrix(vectors).rank()


def test_solve_rational():
    assert solve_rational([(1, 0), (1, 1)], (3, 1)) == (2, 1)
    with pytest.raises(ValueError):
        solve_rational([(1, 1), (2, 2)], (1, 1))
    with pytest.raises(ValueError):
        solve_rational([(1, 0, 0)], (0, 1, 0))


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=6),
       st.lists(st.integers(-5, 5), min_size=1, max_size=4).filter(lambda c: any(c)))
def test_poly_divmod_reconstructs(num, den):
    q, r = poly_divmod(num, den)
    n = max(len(num), len(q) + len(den), 1)
    prod = [Fraction(0)] * n
    for i, a in enumerate(q):
        for j, b in enumerate(den):
            prod[i + j] += a * b
    for i, x in enumerate(r):
        prod[i] += x
    assert prod == [Fraction(num[i]) if i < len(num) else 0 for i in range(n)]
    while den and den[-1] == 0:
        den = den[:-1]
    assert len(r) < len(den)


def test_ones():
    assert ones(3) == (1, 1, 1)
