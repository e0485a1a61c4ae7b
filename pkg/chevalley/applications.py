"""
Chevalley - Applications of the Decomposition

Exact matrix powers through the binomial splitting ``A^m = sum C(m,j) D^(m-j) N^j``
and the exact nilpotent factor ``e^{tN} = sum t^j/j! N^j`` of the matrix
exponential. The semi-simple factor ``e^{tD}`` needs eigenvalues and is left
to the caller: ``e^{tA} = e^{tD} e^{tN}``.
"""

import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from .core import jordan_chevalley
from .exceptions import AlgebraError, DimensionMismatchError, FormatError, NotNilpotentError
from .matrix import SquareMatrix, format_rows, is_nilpotent, mat_pow
from .polynomial import (
    Polynomial,
    Scalar,
    format_polynomial_expression,
    parse_polynomial_expression,
    poly_derivative,
)

logger = logging.getLogger(__name__)

PARAMETER = "t"


@dataclass(frozen=True)
class PolyMatrix:
    """
    Square matrix whose entries are polynomials in a formal parameter t

    Raises:
        DimensionMismatchError: If the rows do not form a non-empty square
    """

    entries: Tuple[Tuple[Polynomial, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(entry for entry in row) for row in self.entries)
        n = len(rows)
        if n < 1 or any(len(row) != n for row in rows):
            raise DimensionMismatchError("polynomial matrix must be a non-empty square")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_coefficients(cls, coefficients: Sequence[SquareMatrix]) -> "PolyMatrix":
        """Build ``sum_j coefficients[j] * t^j``"""
        if not coefficients:
            raise DimensionMismatchError("at least one coefficient matrix is required")
        n = coefficients[0].dimension
        if any(c.dimension != n for c in coefficients):
            raise DimensionMismatchError("coefficient matrices differ in dimension")
        return cls(
            tuple(
                tuple(Polynomial(tuple(c[i, j] for c in coefficients)) for j in range(n))
                for i in range(n)
            )
        )

    @property
    def dimension(self) -> int:
        return len(self.entries)

    @property
    def degree(self) -> Union[int, float]:
        return max(entry.degree for row in self.entries for entry in row)

    def coefficient(self, j: int) -> SquareMatrix:
        """Matrix of the t^j coefficients"""
        return SquareMatrix([[entry[j] for entry in row] for row in self.entries])

    def evaluate(self, t: Scalar) -> SquareMatrix:
        return SquareMatrix([[entry(t) for entry in row] for row in self.entries])

    def derivative(self) -> "PolyMatrix":
        """Entrywise derivative in t"""
        return PolyMatrix(tuple(tuple(poly_derivative(e) for e in row) for row in self.entries))

    def left_multiply(self, m: SquareMatrix) -> "PolyMatrix":
        """The product ``m * self``"""
        if m.dimension != self.dimension:
            raise DimensionMismatchError(
                f"dimension mismatch: {m.dimension} vs {self.dimension}"
            )
        n = self.dimension
        return PolyMatrix(
            tuple(
                tuple(
                    sum(
                        (self.entries[k][j] * m[i, k] for k in range(n)),
                        Polynomial.zero(),
                    )
                    for j in range(n)
                )
                for i in range(n)
            )
        )

    def __str__(self) -> str:
        return format_poly_matrix(self)


def matrix_power(u: SquareMatrix, exponent: int) -> SquareMatrix:
    """
    ``u**exponent`` from one decomposition and the binomial sum

    The sum stops at ``min(k - 1, exponent)`` where k is the nilpotency index
    of N.

    Raises:
        AlgebraError: If exponent is negative
    """
    if exponent < 0:
        raise AlgebraError(f"exponent must be non-negative, got {exponent}")
    decomposition = jordan_chevalley(u)
    index = is_nilpotent(decomposition.n)
    if index is None:
        raise AlgebraError("nilpotent part of the decomposition is not nilpotent")

    result = SquareMatrix.zeros(u.dimension)
    n_power = SquareMatrix.identity(u.dimension)
    for j in range(min(index - 1, exponent) + 1):
        term = mat_pow(decomposition.d, exponent - j) @ n_power
        result = result + term * math.comb(exponent, j)
        n_power = n_power @ decomposition.n

    logger.debug(f"Power {exponent} of {u.dimension}x{u.dimension} matrix, index {index}")
    return result


def exp_nilpotent_factor(n: SquareMatrix) -> PolyMatrix:
    """
    ``e^{tN}`` for nilpotent N as a polynomial matrix in t

    Raises:
        NotNilpotentError: If n is not nilpotent
    """
    index = is_nilpotent(n)
    if index is None:
        raise NotNilpotentError("exponential factor requires a nilpotent matrix")

    coefficients: List[SquareMatrix] = []
    power = SquareMatrix.identity(n.dimension)
    for j in range(index):
        coefficients.append(power * Fraction(1, math.factorial(j)))
        power = power @ n
    return PolyMatrix.from_coefficients(coefficients)


# ============================================
# Text form
# ============================================

_ROW_RE = re.compile(r"\[([^\[\]]*)\]")


def format_poly_matrix(pm: PolyMatrix, variable: str = PARAMETER) -> str:
    """Matrix layout with each entry written as a polynomial in ``variable``"""
    return format_rows(
        [[format_polynomial_expression(e, variable) for e in row] for row in pm.entries]
    )


def parse_poly_matrix(text: str, variable: str = PARAMETER) -> PolyMatrix:
    """
    Parse the form written by format_poly_matrix

    Raises:
        FormatError: On malformed brackets, entries or a non-square shape
    """
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise FormatError("polynomial matrix must be enclosed in brackets")
    inner = body[1:-1]
    rows = _ROW_RE.findall(inner)
    leftover = _ROW_RE.sub("", inner).replace(",", "").strip()
    if not rows or leftover:
        raise FormatError("malformed polynomial matrix rows")

    parsed = [
        tuple(parse_polynomial_expression(cell, variable) for cell in row.split(","))
        for row in rows
    ]
    if any(len(row) != len(parsed) for row in parsed):
        raise FormatError("polynomial matrix is not square")
    return PolyMatrix(tuple(parsed))

