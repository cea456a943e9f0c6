"""
Exact arithmetic core: rational and quadratic-extension scalars, dense polynomials,
truncated Laurent jets and dense matrices with fraction-free elimination.

Nothing in this module ever touches a float. Rational work is done with
`fractions.Fraction`; values in Q(sqrt(d)) use `QuadraticScalar`. sympy is used only
for factoring over Q, rational root isolation and radicand normalization.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt, lcm
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, Union

import sympy

from ..constants import RADICAND_TRIAL_BOUND
from ..types import DuplicateNode, FieldMismatch, Inconsistent, NotSquare, ZeroDenominator

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Scalars
# ---------------------------------------------------------------------------

class QuadraticScalar:
    """a + b*sqrt(d) with rational a, b and a fixed square-free integer radicand d."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d: int = 0):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = int(d)

    # -- field bookkeeping -------------------------------------------------

    def _common(self, other):
        if isinstance(other, QuadraticScalar):
            if self.d == other.d or other.b == 0:
                return self.d, other.a, other.b
            if self.b == 0:
                return other.d, other.a, other.b
            raise FieldMismatch(f"cannot combine sqrt({self.d}) with sqrt({other.d})")
        if isinstance(other, (int, Fraction)):
            return self.d, Fraction(other), Fraction(0)
        return None

    def is_rational(self) -> bool:
        return self.b == 0

    def conjugate(self) -> "QuadraticScalar":
        return QuadraticScalar(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        common = self._common(other)
        if common is None:
            return NotImplemented
        d, c, e = common
        return QuadraticScalar(self.a + c, self.b + e, d)

    __radd__ = __add__

    def __sub__(self, other):
        common = self._common(other)
        if common is None:
            return NotImplemented
        d, c, e = common
        return QuadraticScalar(self.a - c, self.b - e, d)

    def __rsub__(self, other):
        common = self._common(other)
        if common is None:
            return NotImplemented
        d, c, e = common
        return QuadraticScalar(c - self.a, e - self.b, d)

    def __mul__(self, other):
        common = self._common(other)
        if common is None:
            return NotImplemented
        d, c, e = common
        return QuadraticScalar(self.a * c + self.b * e * d, self.a * e + self.b * c, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        common = self._common(other)
        if common is None:
            return NotImplemented
        d, c, e = common
        if c == 0 and e == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(d))")
        norm = c * c - e * e * d
        if norm == 0:
            raise FieldMismatch(f"radicand {d} is a perfect square")
        return QuadraticScalar((self.a * c - self.b * e * d) / norm, (self.b * c - self.a * e) / norm, d)

    def __rtruediv__(self, other):
        common = self._common(other)
        if common is None:
            return NotImplemented
        d, c, e = common
        return QuadraticScalar(c, e, d) / self

    def __neg__(self):
        return QuadraticScalar(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return (1 / self) ** (-exponent)
        result: Scalar = QuadraticScalar(1, 0, self.d)
        base: Scalar = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __eq__(self, other):
        if isinstance(other, QuadraticScalar):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __repr__(self):
        return f"QuadraticScalar({self.a!s}, {self.b!s}, {self.d})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}*sqrt({self.d})"


Scalar = Union[Fraction, QuadraticScalar]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_scalar(value) -> Scalar:
    """Coerce ints to Fraction and collapse rational QuadraticScalars. Floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, QuadraticScalar):
        return value.a if value.b == 0 else value
    raise TypeError(f"{type(value).__name__} is not an exact scalar")


def is_rational(value: Scalar) -> bool:
    return isinstance(value, (int, Fraction)) or (isinstance(value, QuadraticScalar) and value.b == 0)


def radicand_of(value: Scalar) -> Optional[int]:
    if isinstance(value, QuadraticScalar) and value.b != 0:
        return value.d
    return None


def split_square(m: int) -> Tuple[int, int]:
    """Return (s, d) with m == s*s*d and d free of square factors below the trial bound."""
    if m == 0:
        return 0, 0
    sign = -1 if m < 0 else 1
    s, d = 1, 1
    factors = sympy.factorint(abs(m), limit=RADICAND_TRIAL_BOUND, use_rho=False, use_pm1=False)
    for prime, power in factors.items():
        s *= int(prime) ** (power // 2)
        d *= int(prime) ** (power % 2)
    # the unfactored cofactor may itself be a square
    root = isqrt(d)
    if root * root == d:
        s *= root
        d = 1
    return s, sign * d


def quadratic_sqrt(value: Fraction) -> Scalar:
    """Exact square root of a rational: a Fraction when it is a square, else c*sqrt(d)."""
    value = Fraction(value)
    if value == 0:
        return ZERO
    # sqrt(num/den) = sqrt(num*den)/den
    s, d = split_square(value.numerator * value.denominator)
    coefficient = Fraction(s, value.denominator)
    if d == 1:
        return coefficient
    return QuadraticScalar(0, coefficient, d)


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

ZERO_DEGREE = -1


class Poly:
    """Dense univariate polynomial, coefficients in ascending order with no trailing zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        values = [as_scalar(c) for c in coeffs]
        while values and values[-1] == 0:
            values.pop()
        self.coeffs: Tuple[Scalar, ...] = tuple(values)

    @classmethod
    def constant(cls, value) -> "Poly":
        return cls([value])

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar]) -> "Poly":
        result = cls([1])
        for root in roots:
            result = result * cls([-root, 1])
        return result

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_rational(self) -> bool:
        return all(is_rational(c) for c in self.coeffs)

    def coefficient(self, k: int) -> Scalar:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return ZERO

    @property
    def leading_coefficient(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else ZERO

    def __call__(self, x) -> Scalar:
        acc: Scalar = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        size = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.coefficient(k) + other.coefficient(k) for k in range(size))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Poly()
        out: List[Scalar] = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = Poly([1])
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"

    def derivative(self, order: int = 1) -> "Poly":
        coeffs = list(self.coeffs)
        for _ in range(order):
            coeffs = [k * coeffs[k] for k in range(1, len(coeffs))]
        return Poly(coeffs)

    def taylor(self, center, count: Optional[int] = None) -> List[Scalar]:
        """First `count` coefficients of the expansion in powers of (z - center)."""
        work = list(self.coeffs)
        total = len(work) if count is None else count
        out: List[Scalar] = []
        for _ in range(total):
            if not work:
                out.append(ZERO)
                continue
            acc: Scalar = ZERO
            quotient: List[Scalar] = [ZERO] * (len(work) - 1)
            for i in range(len(work) - 1, -1, -1):
                acc = acc * center + work[i]
                if i > 0:
                    quotient[i - 1] = acc
            out.append(acc)
            work = quotient
        return out

    def order_at(self, center) -> int:
        """Multiplicity of `center` as a root (0 when it is not a root)."""
        if self.is_zero():
            raise ValueError("the zero polynomial has no finite order")
        order = 0
        for value in self.taylor(center):
            if value != 0:
                return order
            order += 1
        return order

    @staticmethod
    def interpolate(xs: Sequence[Scalar], ys: Sequence[Scalar]) -> "Poly":
        """Newton divided differences through the points (xs[i], ys[i])."""
        if len(xs) != len(ys):
            raise ValueError("interpolation needs as many values as nodes")
        if len(set(xs)) != len(xs):
            raise DuplicateNode("interpolation nodes must be distinct")
        size = len(xs)
        coef = [as_scalar(y) for y in ys]
        for j in range(1, size):
            for i in range(size - 1, j - 1, -1):
                coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
        result = Poly()
        for i in range(size - 1, -1, -1):
            result = result * Poly([-xs[i], 1]) + Poly([coef[i]])
        return result


def _as_poly(value) -> Optional[Poly]:
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction, QuadraticScalar)):
        return Poly([value])
    return None


def poly_eval(poly: Poly, x) -> Scalar:
    return poly(x)


# ---------------------------------------------------------------------------
# Laurent jets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LaurentJet:
    """Coefficients c_k of num/den = sum_k c_k (z - center)^k for k >= lowest_order."""
    center: Scalar
    lowest_order: int
    coefficients: Tuple[Scalar, ...]

    @property
    def highest_order(self) -> int:
        return self.lowest_order + len(self.coefficients) - 1

    def coefficient(self, order: int) -> Scalar:
        if order < self.lowest_order:
            return ZERO
        index = order - self.lowest_order
        if index >= len(self.coefficients):
            raise IndexError(f"jet carries orders up to {self.highest_order}, asked for {order}")
        return self.coefficients[index]


def laurent_jet(num: Poly, den: Poly, center, orders: int) -> LaurentJet:
    """First `orders` Laurent coefficients of num/den at `center`, from the true pole order on."""
    if den.is_zero():
        raise ZeroDenominator("denominator polynomial is identically zero")
    if orders < 0:
        raise ValueError("orders must be non-negative")
    den_order = den.order_at(center)
    if num.is_zero():
        return LaurentJet(center, -den_order, tuple([ZERO] * orders))
    num_order = num.order_at(center)
    a = num.taylor(center, num_order + orders)[num_order:]
    b = den.taylor(center, den_order + max(orders, 1))[den_order:]
    lead = b[0]
    c: List[Scalar] = []
    for k in range(orders):
        acc = a[k]
        for i in range(1, k + 1):
            if b[i] != 0:
                acc = acc - b[i] * c[k - i]
        c.append(acc / lead)
    return LaurentJet(center, num_order - den_order, tuple(c))


def laurent_coefficients(num: Poly, den: Poly, center, lowest: int, highest: int) -> List[Scalar]:
    """Laurent coefficients of num/den at `center` for orders lowest..highest (zeros below the pole order)."""
    if den.is_zero():
        raise ZeroDenominator("denominator polynomial is identically zero")
    if num.is_zero():
        return [ZERO] * (highest - lowest + 1)
    true_lowest = num.order_at(center) - den.order_at(center)
    if highest < true_lowest:
        return [ZERO] * (highest - lowest + 1)
    jet = laurent_jet(num, den, center, max(0, highest - true_lowest + 1))
    return [jet.coefficient(order) for order in range(lowest, highest + 1)]


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------

class ExactMatrix:
    """Immutable dense matrix of exact scalars."""

    __slots__ = ("_rows", "_ncols")

    def __init__(self, rows: Sequence[Sequence], ncols: Optional[int] = None):
        data = tuple(tuple(as_scalar(x) for x in row) for row in rows)
        width = ncols if ncols is not None else (len(data[0]) if data else 0)
        if any(len(row) != width for row in data):
            raise ValueError("all rows must have the same length")
        self._rows = data
        self._ncols = width

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "ExactMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, size: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(size)] for i in range(size)], size)

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self._ncols

    def __getitem__(self, index: Tuple[int, int]) -> Scalar:
        i, j = index
        return self._rows[i][j]

    def row(self, i: int) -> Tuple[Scalar, ...]:
        return self._rows[i]

    def column(self, j: int) -> Tuple[Scalar, ...]:
        return tuple(row[j] for row in self._rows)

    def rows(self) -> List[List[Scalar]]:
        return [list(row) for row in self._rows]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix([self.column(j) for j in range(self._ncols)], self.nrows)

    def submatrix(self, row_indices: Sequence[int], col_indices: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix([[self._rows[i][j] for j in col_indices] for i in row_indices], len(col_indices))

    def delete_columns(self, *indices: int) -> "ExactMatrix":
        drop = set(indices)
        keep = [j for j in range(self._ncols) if j not in drop]
        return self.submatrix(range(self.nrows), keep)

    def delete_rows(self, *indices: int) -> "ExactMatrix":
        drop = set(indices)
        keep = [i for i in range(self.nrows) if i not in drop]
        return self.submatrix(keep, range(self._ncols))

    def insert_column(self, position: int, values: Sequence[Scalar]) -> "ExactMatrix":
        if len(values) != self.nrows:
            raise ValueError("column length does not match the number of rows")
        return ExactMatrix(
            [row[:position] + (values[i],) + row[position:] for i, row in enumerate(self._rows)],
            self._ncols + 1,
        )

    def mul_vector(self, vector: Sequence[Scalar]) -> Tuple[Scalar, ...]:
        if len(vector) != self._ncols:
            raise ValueError("vector length does not match the number of columns")
        out = []
        for row in self._rows:
            acc: Scalar = ZERO
            for a, x in zip(row, vector):
                if a != 0 and x != 0:
                    acc = acc + a * x
            out.append(acc)
        return tuple(out)

    def is_rational(self) -> bool:
        return all(isinstance(x, Fraction) for row in self._rows for x in row)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self._ncols == other._ncols and self._rows == other._rows

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self._ncols})"


@dataclass
class LinearSolution:
    """particular + span(null_basis). Free variables are zero in `particular`."""
    particular: Tuple[Scalar, ...]
    null_basis: List[Tuple[Scalar, ...]]
    pivot_columns: List[int]
    free_columns: List[int]

    @property
    def is_unique(self) -> bool:
        return not self.null_basis


def _integer_rows(rows: List[List[Scalar]]) -> Tuple[Optional[List[List[int]]], Fraction]:
    """Scale each rational row by the lcm of its denominators. Returns (rows, product of scales)."""
    out: List[List[int]] = []
    scale = 1
    for row in rows:
        if not all(isinstance(x, Fraction) for x in row):
            return None, ONE
        factor = lcm(*(x.denominator for x in row)) if row else 1
        out.append([x.numerator * (factor // x.denominator) for x in row])
        scale *= factor
    return out, Fraction(scale)


def _echelon(rows: List[List], exact_div: Callable) -> Tuple[List[List], List[int], int]:
    """
    Fraction-free (Bareiss) row echelon form. Pivots are the first nonzero entry of each
    column, scanning rows top-down. Returns (rows, pivot columns, permutation sign).
    """
    a = [list(row) for row in rows]
    m = len(a)
    width = len(a[0]) if m else 0
    pivots: List[int] = []
    sign = 1
    prev = 1
    r = 0
    for c in range(width):
        if r == m:
            break
        p = next((i for i in range(r, m) if a[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
            sign = -sign
        pivot_row = a[r]
        pivot = pivot_row[c]
        for i in range(r + 1, m):
            row = a[i]
            factor = row[c]
            for j in range(c + 1, width):
                if factor == 0:
                    row[j] = exact_div(row[j] * pivot, prev)
                else:
                    row[j] = exact_div(row[j] * pivot - factor * pivot_row[j], prev)
            row[c] = 0
        prev = pivot
        pivots.append(c)
        r += 1
    return a, pivots, sign


def _int_div(x: int, y: int) -> int:
    return x // y


def _field_div(x, y):
    return x / y


def _echelon_exact(rows: List[List[Scalar]]) -> Tuple[List[List], List[int], int, Fraction]:
    int_rows, scale = _integer_rows(rows)
    if int_rows is not None:
        echelon, pivots, sign = _echelon(int_rows, _int_div)
        return echelon, pivots, sign, scale
    echelon, pivots, sign = _echelon(rows, _field_div)
    return echelon, pivots, sign, ONE


def det(matrix: ExactMatrix) -> Scalar:
    """Exact determinant by Bareiss elimination; rational input is scaled to integers first."""
    if matrix.nrows != matrix.ncols:
        raise NotSquare(f"determinant of a {matrix.nrows}x{matrix.ncols} matrix")
    size = matrix.nrows
    if size == 0:
        return ONE
    echelon, pivots, sign, scale = _echelon_exact(matrix.rows())
    if len(pivots) < size:
        return ZERO
    return as_scalar(sign * as_scalar(echelon[size - 1][size - 1]) / scale)


def rank(matrix: ExactMatrix) -> int:
    if matrix.nrows == 0 or matrix.ncols == 0:
        return 0
    _, pivots, _, _ = _echelon_exact(matrix.rows())
    return len(pivots)


def _back_substitute(echelon: List[List], pivots: List[int], ncols: int,
                     rhs_column: Optional[int], free_values: dict) -> Tuple[Scalar, ...]:
    x: List[Scalar] = [ZERO] * ncols
    for column, value in free_values.items():
        x[column] = value
    for i in range(len(pivots) - 1, -1, -1):
        row = echelon[i]
        c = pivots[i]
        acc: Scalar = as_scalar(row[rhs_column]) if rhs_column is not None else ZERO
        for j in range(c + 1, ncols):
            if row[j] != 0 and x[j] != 0:
                acc = acc - row[j] * x[j]
        x[c] = as_scalar(acc / as_scalar(row[c]))
    return tuple(x)


def _null_basis(echelon: List[List], pivots: List[int], ncols: int) -> Tuple[List[Tuple[Scalar, ...]], List[int]]:
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    basis = []
    for f in free:
        values = {g: (ONE if g == f else ZERO) for g in free}
        basis.append(_back_substitute(echelon, pivots, ncols, None, values))
    return basis, free


def nullspace(matrix: ExactMatrix) -> List[Tuple[Scalar, ...]]:
    """Basis of the right kernel; vector i has 1 at the i-th free column and 0 at the others."""
    if matrix.ncols == 0:
        return []
    if matrix.nrows == 0:
        return [tuple(ONE if i == j else ZERO for i in range(matrix.ncols)) for j in range(matrix.ncols)]
    echelon, pivots, _, _ = _echelon_exact(matrix.rows())
    basis, _ = _null_basis(echelon, pivots, matrix.ncols)
    return basis


def left_nullspace(matrix: ExactMatrix) -> List[Tuple[Scalar, ...]]:
    return nullspace(matrix.transpose())


def solve(matrix: ExactMatrix, rhs: Sequence[Scalar]) -> LinearSolution:
    """All solutions of M x = b, or Inconsistent when rank(M) < rank([M|b])."""
    if len(rhs) != matrix.nrows:
        raise ValueError("right-hand side length does not match the number of rows")
    ncols = matrix.ncols
    augmented = [list(row) + [as_scalar(b)] for row, b in zip(matrix.rows(), rhs)]
    echelon, pivots, _, _ = _echelon_exact(augmented)
    if pivots and pivots[-1] == ncols:
        raise Inconsistent(f"rank(M) = {len(pivots) - 1} < rank([M|b]) = {len(pivots)}")
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    particular = _back_substitute(echelon, pivots, ncols, ncols, {f: ZERO for f in free})
    basis, _ = _null_basis(echelon, pivots, ncols)
    logger.debug("solve: %d pivots, %d free columns", len(pivots), len(free))
    return LinearSolution(particular=particular, null_basis=basis, pivot_columns=list(pivots), free_columns=free)


def binomial(j: int, k: int) -> int:
    return comb(j, k) if 0 <= k <= j else 0


# ---------------------------------------------------------------------------
# Factoring over Q (sympy)
# ---------------------------------------------------------------------------

_X = sympy.Symbol("x")


def _to_sympy_rational(value: Scalar) -> sympy.Rational:
    value = as_scalar(value)
    if not isinstance(value, Fraction):
        raise FieldMismatch("factoring over Q needs rational coefficients")
    return sympy.Rational(value.numerator, value.denominator)


def _from_sympy_rational(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def to_sympy_poly(poly: Poly, symbol: sympy.Symbol = _X) -> sympy.Poly:
    coeffs = [_to_sympy_rational(c) for c in reversed(poly.coeffs)] or [sympy.Integer(0)]
    return sympy.Poly(coeffs, symbol, domain=sympy.QQ)


def from_sympy_poly(poly: sympy.Poly) -> Poly:
    return Poly(_from_sympy_rational(c) for c in reversed(poly.all_coeffs()))


def factor_rational(poly: Poly) -> Tuple[Fraction, List[Tuple[Poly, int]]]:
    """Irreducible factorization over Q: (content, [(factor, multiplicity), ...])."""
    content, factors = to_sympy_poly(poly).factor_list()
    return _from_sympy_rational(content), [(from_sympy_poly(f), int(m)) for f, m in factors]


def rational_roots(poly: Poly) -> List[Fraction]:
    """Distinct rational roots, ascending."""
    if poly.degree <= 0:
        return []
    _, factors = factor_rational(poly)
    roots = [-f.coefficient(0) / f.coefficient(1) for f, _ in factors if f.degree == 1]
    return sorted(set(roots))


def real_root_intervals(poly: Poly) -> List[Tuple[Fraction, Fraction]]:
    """Disjoint rational isolating intervals for the real roots."""
    if poly.degree <= 0:
        return []
    return [(_from_sympy_rational(lo), _from_sympy_rational(hi)) for (lo, hi), _ in to_sympy_poly(poly).intervals()]


def quadratic_roots(poly: Poly) -> Tuple[Scalar, Scalar]:
    if poly.degree != 2:
        raise ValueError(f"expected a quadratic, got degree {poly.degree}")
    c, b, a = poly.coeffs
    root = quadratic_sqrt(b * b - 4 * a * c)
    return as_scalar((-b + root) / (2 * a)), as_scalar((-b - root) / (2 * a))
