"""
Tests for the exact arithmetic core.

Run with:
    pytest tests/test_exact_core.py
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy

from fuchsian_app.services.exact_core import (
    ExactMatrix,
    Poly,
    QuadraticScalar,
    det,
    factor_rational,
    laurent_coefficients,
    laurent_jet,
    left_nullspace,
    nullspace,
    poly_eval,
    quadratic_roots,
    quadratic_sqrt,
    rank,
    solve,
    split_square,
)
from fuchsian_app.types import DuplicateNode, FieldMismatch, Inconsistent, NotSquare, ZeroDenominator

F = Fraction


def _random_matrix(rng: random.Random, nrows: int, ncols: int) -> ExactMatrix:
    return ExactMatrix(
        [[F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(ncols)] for _ in range(nrows)],
        ncols,
    )


def _sympy_det(matrix: ExactMatrix) -> Fraction:
    value = sympy.Matrix(
        [[sympy.Rational(x.numerator, x.denominator) for x in row] for row in matrix.rows()]
    ).det()
    value = sympy.Rational(value)
    return F(int(value.p), int(value.q))


# ---------------------------------------------------------------------------
# Polynomials and Laurent jets
# ---------------------------------------------------------------------------

def test_poly_eval_zero_polynomial():
    assert poly_eval(Poly(), F(5)) == 0
    assert Poly().degree == -1


def test_poly_eval_at_a_root():
    p = Poly.from_roots([F(1), F(2)])
    assert poly_eval(p, F(1)) == 0
    assert p.coeffs == (F(2), F(-3), F(1))


def test_poly_eval_by_hand():
    assert poly_eval(Poly([1, 2, 3]), F(1, 2)) == F(11, 4)


def test_degree_of_product_adds():
    p = Poly([1, F(1, 3), 2])
    q = Poly([F(-2, 7), 0, 0, 5])
    assert (p * q).degree == p.degree + q.degree


def test_taylor_and_order_at():
    p = Poly.from_roots([F(3), F(3), F(1, 2)])
    assert p.order_at(F(3)) == 2
    assert p.order_at(F(0)) == 0
    assert Poly(p.taylor(F(3)))(F(1)) == p(F(4))


def test_laurent_jet_simple_pole():
    q = F(7, 3)
    jet = laurent_jet(Poly([1]), Poly([-q, 1]), q, 2)
    assert jet.lowest_order == -1
    assert jet.coefficients == (F(1), F(0))


def test_laurent_jet_cancels_common_factor():
    c = F(-2, 5)
    num = Poly([1, 4, F(1, 2)])
    den = Poly.from_roots([c, c, F(3)])
    shift = Poly([-c, 1])
    assert laurent_jet(num * shift, den * shift, c, 4) == laurent_jet(num, den, c, 4)


def test_laurent_jet_coefficients_match_direct_expansion():
    # 1/(z(z-1)) at 0 is -1/z - 1 - z - ...
    coefficients = laurent_coefficients(Poly([1]), Poly([0, -1, 1]), F(0), -2, 2)
    assert coefficients == [0, -1, -1, -1, -1]


def test_laurent_jet_raises_on_zero_denominator():
    with pytest.raises(ZeroDenominator):
        laurent_jet(Poly([1]), Poly(), F(0), 1)


def test_laurent_jet_coefficient_above_range():
    jet = laurent_jet(Poly([1]), Poly([0, 1]), F(0), 1)
    assert jet.coefficient(-5) == 0
    with pytest.raises(IndexError):
        jet.coefficient(3)


def test_laurent_window_below_true_order_is_zero():
    # z^2 vanishes to order 2 at 0, so every order up to 1 is zero
    assert laurent_coefficients(Poly([0, 0, 1]), Poly([1]), F(0), 0, 0) == [0]
    assert laurent_coefficients(Poly([0, 0, 1]), Poly([0, 1]), F(0), -3, 0) == [0, 0, 0, 0]
    assert laurent_coefficients(Poly([0, 0, 1]), Poly([1]), F(0), -1, 2) == [0, 0, 0, 1]


def test_laurent_jet_with_no_orders_is_empty():
    jet = laurent_jet(Poly([0, 0, 1]), Poly([0, 1]), F(0), 0)
    assert jet.lowest_order == 1
    assert jet.coefficients == ()


def test_interpolation_recovers_polynomial():
    p = Poly([F(1, 3), -2, 0, 7])
    xs = [F(x) for x in range(4)]
    assert Poly.interpolate(xs, [p(x) for x in xs]) == p


def test_interpolation_rejects_duplicate_nodes():
    with pytest.raises(DuplicateNode):
        Poly.interpolate([F(1), F(1)], [F(0), F(1)])


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------

def test_det_identity():
    assert det(ExactMatrix.identity(5)) == 1


def test_det_two_by_two_vandermonde():
    a, b = F(2, 3), F(-5, 4)
    assert det(ExactMatrix([[1, a], [1, b]])) == b - a


def test_det_requires_square():
    with pytest.raises(NotSquare):
        det(ExactMatrix.zeros(2, 3))


@pytest.mark.parametrize("size", [1, 2, 3, 5, 8])
def test_det_agrees_with_sympy(size):
    rng = random.Random(size)
    for _ in range(5):
        matrix = _random_matrix(rng, size, size)
        assert det(matrix) == _sympy_det(matrix)


def test_det_of_singular_matrix():
    matrix = ExactMatrix([[1, 2, 3], [2, 4, 6], [F(1, 2), 0, 1]])
    assert det(matrix) == 0
    assert rank(matrix) == 2


def test_zero_matrix_rank_and_nullspace():
    matrix = ExactMatrix.zeros(3, 4)
    assert rank(matrix) == 0
    assert len(nullspace(matrix)) == 4


def test_nullspace_vectors_are_annihilated():
    rng = random.Random(3)
    matrix = _random_matrix(rng, 3, 6)
    basis = nullspace(matrix)
    assert len(basis) == 6 - rank(matrix)
    for vector in basis:
        assert all(x == 0 for x in matrix.mul_vector(vector))
    for vector in left_nullspace(matrix.transpose()):
        assert all(x == 0 for x in matrix.mul_vector(vector))


def test_solve_unique_has_zero_residual():
    rng = random.Random(11)
    matrix = _random_matrix(rng, 6, 6)
    rhs = [F(rng.randint(-9, 9), 7) for _ in range(6)]
    solution = solve(matrix, rhs)
    assert solution.is_unique
    assert list(matrix.mul_vector(solution.particular)) == rhs


def test_solve_underdetermined_returns_family():
    matrix = ExactMatrix([[1, 1, 0], [0, 1, 1]])
    solution = solve(matrix, [F(1), F(2)])
    assert solution.free_columns == [2]
    assert len(solution.null_basis) == 1
    member = [x + 5 * d for x, d in zip(solution.particular, solution.null_basis[0])]
    assert list(matrix.mul_vector(member)) == [1, 2]


def test_solve_inconsistent():
    matrix = ExactMatrix([[1, 2], [2, 4]])
    with pytest.raises(Inconsistent):
        solve(matrix, [F(1), F(3)])


def test_det_over_quadratic_field():
    r = QuadraticScalar(0, 1, 2)
    matrix = ExactMatrix([[1, r], [r, 3]])
    assert det(matrix) == 1


# ---------------------------------------------------------------------------
# Quadratic scalars
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("a, b, d", [(F(1, 2), F(3), 5), (F(-7, 3), F(2, 9), 3), (F(0), F(1), -1)])
def test_quadratic_norm(a, b, d):
    x = QuadraticScalar(a, b, d)
    assert x * x.conjugate() == a * a - b * b * d


def test_quadratic_division_round_trip():
    x = QuadraticScalar(F(1, 3), F(-2), 7)
    y = QuadraticScalar(F(5), F(1, 4), 7)
    assert (x / y) * y == x
    assert (1 / x) * x == 1


def test_quadratic_mixing_radicands_fails():
    with pytest.raises(FieldMismatch):
        QuadraticScalar(1, 1, 2) + QuadraticScalar(1, 1, 3)


def test_quadratic_equals_rational_when_irrational_part_vanishes():
    assert QuadraticScalar(F(3, 4), 0, 5) == F(3, 4)
    assert hash(QuadraticScalar(F(3, 4), 0, 5)) == hash(F(3, 4))


def test_split_square():
    assert split_square(12) == (2, 3)
    assert split_square(-50) == (5, -2)
    assert split_square(49) == (7, 1)


def test_quadratic_sqrt():
    root = quadratic_sqrt(F(8, 9))
    assert root * root == F(8, 9)
    assert quadratic_sqrt(F(4, 9)) == F(2, 3)


def test_quadratic_roots_lie_in_one_field():
    p = Poly([-2, 0, 1])
    r1, r2 = quadratic_roots(p)
    assert r1.d == r2.d == 2
    assert p(r1) == 0 and p(r2) == 0


def test_factor_rational():
    p = Poly.from_roots([F(1, 2)]) * Poly([-2, 0, 1])
    content, factors = factor_rational(p)
    assert sorted(f.degree for f, _ in factors) == [1, 2]
    product = Poly([content])
    for factor, multiplicity in factors:
        product = product * factor ** multiplicity
    assert product == p
