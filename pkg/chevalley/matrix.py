"""
Chevalley - Exact Square Matrices

Square matrices of rationals stored as read-only numpy object arrays of
``Fraction``. Provides exact arithmetic, Gauss-Jordan inversion, the
Faddeev-LeVerrier characteristic polynomial, the minimal polynomial,
polynomial evaluation at a matrix and nilpotency testing.
"""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from .exceptions import AlgebraError, DimensionMismatchError, FormatError, SingularMatrixError
from .polynomial import Polynomial, Scalar, format_rational, parse_rational

logger = logging.getLogger(__name__)


def _canonical(array: np.ndarray) -> np.ndarray:
    """Copy into a read-only object array of Fractions"""
    out = np.empty(array.shape, dtype=object)
    for index, value in np.ndenumerate(array):
        out[index] = Fraction(value)
    out.flags.writeable = False
    return out


@dataclass(frozen=True, eq=False)
class SquareMatrix:
    """
    Immutable n x n matrix over the rationals (n >= 1)

    Args:
        entries: Anything numpy can turn into a 2-D array of integers or
                 Fractions (nested lists, tuples or an ndarray)

    Raises:
        DimensionMismatchError: If the entries are not a non-empty square array

    Examples:
        >>> j = SquareMatrix([[2, 1], [0, 2]])
        >>> (j @ j).rows
        ((Fraction(4, 1), Fraction(4, 1)), (Fraction(0, 1), Fraction(4, 1)))
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        array = np.asarray(self.entries, dtype=object)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise DimensionMismatchError(f"matrix must be square, got shape {array.shape}")
        if array.shape[0] < 1:
            raise DimensionMismatchError("matrix dimension must be at least 1")
        object.__setattr__(self, "entries", _canonical(array))

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> SquareMatrix:
        return cls.scalar(n, 1)

    @classmethod
    def zeros(cls, n: int) -> SquareMatrix:
        return cls.scalar(n, 0)

    @classmethod
    def scalar(cls, n: int, value: Scalar) -> SquareMatrix:
        return cls([[value if i == j else 0 for j in range(n)] for i in range(n)])

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    @property
    def dimension(self) -> int:
        return int(self.entries.shape[0])

    @property
    def rows(self) -> Tuple[Tuple[Fraction, ...], ...]:
        return tuple(tuple(row) for row in self.entries)

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        return self.entries[index]

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.entries.flat)

    def trace(self) -> Fraction:
        return sum(np.diagonal(self.entries), Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return self.entries.shape == other.entries.shape and bool(
            np.array_equal(self.entries, other.entries)
        )

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"SquareMatrix(n={self.dimension})"

    def __str__(self) -> str:
        return format_matrix(self)

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def _check(self, other: SquareMatrix) -> None:
        if self.dimension != other.dimension:
            raise DimensionMismatchError(
                f"dimension mismatch: {self.dimension} vs {other.dimension}"
            )

    def __add__(self, other: SquareMatrix) -> SquareMatrix:
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        self._check(other)
        return SquareMatrix(self.entries + other.entries)

    def __sub__(self, other: SquareMatrix) -> SquareMatrix:
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        self._check(other)
        return SquareMatrix(self.entries - other.entries)

    def __neg__(self) -> SquareMatrix:
        return SquareMatrix(-self.entries)

    def __matmul__(self, other: SquareMatrix) -> SquareMatrix:
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        self._check(other)
        return SquareMatrix(self.entries.dot(other.entries))

    def __mul__(self, factor: Scalar) -> SquareMatrix:
        if not isinstance(factor, (int, Fraction)):
            return NotImplemented
        return SquareMatrix(self.entries * Fraction(factor))

    __rmul__ = __mul__


# ============================================
# Named operations
# ============================================


def mat_add(a: SquareMatrix, b: SquareMatrix) -> SquareMatrix:
    return a + b


def mat_sub(a: SquareMatrix, b: SquareMatrix) -> SquareMatrix:
    return a - b


def mat_mul(a: SquareMatrix, b: SquareMatrix) -> SquareMatrix:
    return a @ b


def mat_pow(m: SquareMatrix, exponent: int) -> SquareMatrix:
    """Non-negative integer power by repeated squaring"""
    if exponent < 0:
        raise AlgebraError(f"exponent must be non-negative, got {exponent}")
    result = SquareMatrix.identity(m.dimension)
    base = m
    while exponent:
        if exponent & 1:
            result = result @ base
        base = base @ base
        exponent >>= 1
    return result


def block_diag(a: SquareMatrix, b: SquareMatrix) -> SquareMatrix:
    """Block-diagonal matrix diag(a, b)"""
    n, k = a.dimension, b.dimension
    out = np.zeros((n + k, n + k), dtype=object)
    out[:n, :n] = a.entries
    out[n:, n:] = b.entries
    return SquareMatrix(out)


def mat_inverse(m: SquareMatrix) -> SquareMatrix:
    """
    Exact inverse by Gauss-Jordan elimination on ``[M | I]``

    Raises:
        SingularMatrixError: If no nonzero pivot exists in some column
    """
    n = m.dimension
    work = np.hstack((m.entries, SquareMatrix.identity(n).entries))

    for i in range(n):
        for j in range(i, n):
            if work[j, i] != 0:
                if i != j:
                    work[[i, j]] = work[[j, i]]
                break
        else:
            raise SingularMatrixError(f"matrix is singular (no pivot in column {i})")

        pivot = work[i, i]
        work[i, :] = work[i, :] / pivot
        for j in range(n):
            factor = work[j, i]
            if j != i and factor != 0:
                work[j, :] = work[j, :] - factor * work[i, :]

    return SquareMatrix(work[:, n:])


def char_poly(m: SquareMatrix) -> Polynomial:
    """
    Characteristic polynomial det(xI - M) by the Faddeev-LeVerrier recurrence

    ``M_1 = I``, ``M_k = A M_{k-1} + c_{n-k+1} I`` and
    ``c_{n-k} = -tr(A M_k) / k``; only divisions by the integers k occur.
    """
    n = m.dimension
    a = m.entries
    identity = SquareMatrix.identity(n).entries
    coeffs: List[Fraction] = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)

    product = np.zeros((n, n), dtype=object)
    for k in range(1, n + 1):
        mk = product + coeffs[n - k + 1] * identity
        product = a.dot(mk)
        coeffs[n - k] = -sum(np.diagonal(product), Fraction(0)) / k

    return Polynomial(tuple(coeffs))


def char_poly_cofactor(m: SquareMatrix) -> Polynomial:
    """
    det(xI - M) by cofactor expansion over k[x]

    Exponential in n; kept as an independent check for small matrices.
    """
    n = m.dimension
    x = Polynomial.x()
    entries = [
        [(x if i == j else Polynomial.zero()) - m[i, j] for j in range(n)] for i in range(n)
    ]
    return _poly_det(entries)


def _poly_det(rows: List[List[Polynomial]]) -> Polynomial:
    if len(rows) == 1:
        return rows[0][0]
    total = Polynomial.zero()
    for j, entry in enumerate(rows[0]):
        if entry.is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
        term = entry * _poly_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def min_poly(m: SquareMatrix) -> Polynomial:
    """
    Minimal polynomial from the first linear dependency among I, M, M^2, ...

    Each power is flattened and reduced against an echelon basis that also
    tracks which combination of powers produced it.
    """
    n = m.dimension
    basis: List[Tuple[int, List[Fraction], List[Fraction]]] = []
    power = SquareMatrix.identity(n)

    for k in range(n + 1):
        vector = list(power.entries.flat)
        combination = [Fraction(0)] * k + [Fraction(1)]
        for pivot, base_vector, base_combination in basis:
            factor = vector[pivot]
            if factor == 0:
                continue
            vector = [v - factor * b for v, b in zip(vector, base_vector)]
            for i, c in enumerate(base_combination):
                combination[i] -= factor * c

        lead = next((i for i, v in enumerate(vector) if v != 0), None)
        if lead is None:
            result = Polynomial(tuple(combination))
            logger.debug(f"Minimal polynomial of degree {result.degree} (n={n})")
            return result

        scale = vector[lead]
        basis.append(
            (lead, [v / scale for v in vector], [c / scale for c in combination])
        )
        power = power @ m

    # Cayley-Hamilton guarantees a dependency by k = n
    raise AssertionError("no linear dependency among the first n+1 powers")


def eval_poly_at_matrix(p: Polynomial, m: SquareMatrix) -> SquareMatrix:
    """
    Evaluate p at M by Horner's rule

    Denominators are cleared first: with ``M = A/d`` (A integral) and
    ``L`` the lcm of the coefficient denominators, the Horner loop runs on
    Python integers and the result is divided once by ``L * d**deg(p)``.
    """
    n = m.dimension
    if p.is_zero():
        return SquareMatrix.zeros(n)

    d = math.lcm(*(v.denominator for v in m.entries.flat))
    lcm_coeffs = math.lcm(*(c.denominator for c in p.coefficients))
    degree = len(p.coefficients) - 1

    scaled = np.empty((n, n), dtype=object)
    for index, value in np.ndenumerate(m.entries):
        scaled[index] = int(value * d)
    int_coeffs = [
        int(c * lcm_coeffs) * d ** (degree - i) for i, c in enumerate(p.coefficients)
    ]

    result = np.zeros((n, n), dtype=object)
    diagonal = np.arange(n)
    for c in reversed(int_coeffs):
        result = result.dot(scaled)
        result[diagonal, diagonal] += c

    denominator = lcm_coeffs * d**degree
    return SquareMatrix(result * Fraction(1, denominator))


def is_nilpotent(m: SquareMatrix) -> Optional[int]:
    """
    Nilpotency index: smallest k >= 1 with M^k = 0, or None

    Powers up to n decide the question.
    """
    power = m
    for k in range(1, m.dimension + 1):
        if power.is_zero():
            return k
        power = power @ m
    return None


# ============================================
# Text form
# ============================================

_TOKEN_RE = re.compile(r"\s*(?:(\[)|(\])|(,)|(-?\d+(?:/\d+)?))", re.ASCII)


def format_matrix(m: SquareMatrix) -> str:
    """
    Render as nested bracketed rows, one row per line

    Examples:
        >>> format_matrix(SquareMatrix([[1, 2], [3, 4]]))
        '[[1, 2],\\n [3, 4]]'
    """
    return format_rows([[format_rational(v) for v in row] for row in m.entries])


def format_rows(rows: List[List[str]]) -> str:
    lines = []
    for i, row in enumerate(rows):
        opening = "[[" if i == 0 else " ["
        closing = "]]" if i == len(rows) - 1 else "],"
        lines.append(f"{opening}{', '.join(row)}{closing}")
    return "\n".join(lines)


def _tokenize(text: str) -> List[str]:
    tokens: List[str] = []
    position = 0
    stripped = text.rstrip()
    while position < len(stripped):
        match = _TOKEN_RE.match(stripped, position)
        if match is None:
            raise FormatError(f"unexpected character at offset {position}: {stripped[position]!r}")
        tokens.append(next(g for g in match.groups() if g is not None))
        position = match.end()
    return tokens


def parse_matrix(text: str) -> SquareMatrix:
    """
    Parse a matrix document: an array of n rows of n rational literals

    Raises:
        FormatError: On a syntax error, ragged rows or a non-square shape
    """
    tokens = _tokenize(text)
    if not tokens:
        raise FormatError("empty matrix document")

    position = 0

    def expect(token: str) -> None:
        nonlocal position
        if position >= len(tokens) or tokens[position] != token:
            found = tokens[position] if position < len(tokens) else "end of document"
            raise FormatError(f"expected {token!r}, found {found!r}")
        position += 1

    rows: List[List[Fraction]] = []
    expect("[")
    while True:
        expect("[")
        row: List[Fraction] = []
        while True:
            if position >= len(tokens) or tokens[position] in "[],":
                raise FormatError("expected a rational literal")
            row.append(parse_rational(tokens[position]))
            position += 1
            if position < len(tokens) and tokens[position] == ",":
                position += 1
                continue
            break
        expect("]")
        rows.append(row)
        if position < len(tokens) and tokens[position] == ",":
            position += 1
            continue
        break
    expect("]")
    if position != len(tokens):
        raise FormatError("trailing content after matrix")

    n = len(rows)
    if any(len(row) != n for row in rows):
        raise FormatError(f"matrix is not square: {n} rows of lengths {[len(r) for r in rows]}")
    return SquareMatrix(rows)
