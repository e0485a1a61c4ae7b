"""
Chevalley - Exact Rationals and Univariate Polynomials

Dense polynomials over the rationals with Euclidean division, monic gcd,
Bezout cofactors, separable part, modular inverse and composition modulo a
polynomial. Scalars are ``fractions.Fraction`` values, which are always kept
in canonical form (positive denominator, reduced, zero as 0/1).
"""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, NamedTuple, Tuple, Union

from .exceptions import (
    ConstantPolynomialError,
    FormatError,
    NotCoprimeError,
    ZeroPolynomialError,
)

logger = logging.getLogger(__name__)

Rational = Fraction
Scalar = Union[int, Fraction]

# Degree of the zero polynomial; compares below every integer degree.
DEGREE_OF_ZERO: float = -math.inf

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:/(\d+))?\s*$", re.ASCII)


# ============================================
# Rational literals
# ============================================


def parse_rational(text: str) -> Fraction:
    """
    Parse a rational literal ``['-'] digits ['/' digits]``

    Args:
        text: Literal such as ``-5634`` or ``-164777/6153698``

    Returns:
        Canonical Fraction

    Raises:
        FormatError: If the literal does not follow the grammar or the
                     denominator is zero
    """
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise FormatError(f"invalid rational literal {text!r}")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise FormatError(f"zero denominator in rational literal {text!r}")
    return Fraction(numerator, denominator)


def format_rational(value: Scalar) -> str:
    """Render a rational in the literal grammar (``a`` or ``a/b``)"""
    return str(Fraction(value))


# ============================================
# Polynomial
# ============================================


@dataclass(frozen=True)
class Polynomial:
    """
    Dense univariate polynomial over the rationals

    ``coefficients[i]`` is the coefficient of ``x**i``. Trailing zeros are
    stripped on construction, so the zero polynomial has no coefficients and
    two equal polynomials always compare equal.

    Examples:
        >>> p = Polynomial((43486, -5634, -1873, -245, -9, 1))
        >>> p.degree
        5
        >>> poly_derivative(p).coefficients[0]
        Fraction(-5634, 1)
    """

    coefficients: Tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        coeffs = [Fraction(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls) -> Polynomial:
        return cls(())

    @classmethod
    def one(cls) -> Polynomial:
        return cls((1,))

    @classmethod
    def x(cls) -> Polynomial:
        return cls((0, 1))

    @classmethod
    def constant(cls, value: Scalar) -> Polynomial:
        return cls((value,))

    @classmethod
    def monomial(cls, coefficient: Scalar, exponent: int) -> Polynomial:
        if exponent < 0:
            raise ValueError(f"exponent must be non-negative, got {exponent}")
        return cls((0,) * exponent + (coefficient,))

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar]) -> Polynomial:
        """Monic polynomial with the given roots (repeated as listed)"""
        result = cls.one()
        for root in roots:
            result = result * cls((-Fraction(root), 1))
        return result

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    @property
    def degree(self) -> Union[int, float]:
        """Degree, or DEGREE_OF_ZERO for the zero polynomial"""
        if not self.coefficients:
            return DEGREE_OF_ZERO
        return len(self.coefficients) - 1

    @property
    def leading_coefficient(self) -> Fraction:
        if not self.coefficients:
            return Fraction(0)
        return self.coefficients[-1]

    def is_zero(self) -> bool:
        return not self.coefficients

    def is_constant(self) -> bool:
        return len(self.coefficients) <= 1

    def is_monic(self) -> bool:
        return self.leading_coefficient == 1

    def __getitem__(self, exponent: int) -> Fraction:
        if exponent < 0:
            raise IndexError("negative exponent")
        if exponent >= len(self.coefficients):
            return Fraction(0)
        return self.coefficients[exponent]

    def __bool__(self) -> bool:
        return bool(self.coefficients)

    def __len__(self) -> int:
        return len(self.coefficients)

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    @staticmethod
    def _coerce(other) -> Polynomial:
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial((other,))
        return NotImplemented

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        return Polynomial(tuple(a[i] + b[i] if i < len(b) else a[i] for i in range(len(a))))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return Polynomial.zero()
        product = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                product[i + j] += ca * cb
        return Polynomial(tuple(product))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> Polynomial:
        if exponent < 0:
            raise ValueError(f"exponent must be non-negative, got {exponent}")
        result = Polynomial.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __divmod__(self, other) -> Tuple[Polynomial, Polynomial]:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return poly_divrem(self, other)

    def __floordiv__(self, other) -> Polynomial:
        return divmod(self, other)[0]

    def __mod__(self, other) -> Polynomial:
        return divmod(self, other)[1]

    def scale(self, factor: Scalar) -> Polynomial:
        factor = Fraction(factor)
        return Polynomial(tuple(c * factor for c in self.coefficients))

    def monic(self) -> Polynomial:
        """Return the polynomial divided by its leading coefficient"""
        if self.is_zero():
            raise ZeroPolynomialError("the zero polynomial has no monic associate")
        return self.scale(1 / self.leading_coefficient)

    def __call__(self, value: Scalar) -> Fraction:
        """Evaluate at a rational by Horner's rule"""
        value = Fraction(value)
        result = Fraction(0)
        for c in reversed(self.coefficients):
            result = result * value + c
        return result

    # ------------------------------------------------------------------
    # Rendering
    # ------------------------------------------------------------------

    def __str__(self) -> str:
        return format_polynomial_expression(self, "x")

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)})"


# ============================================
# Core operations
# ============================================


def poly_derivative(p: Polynomial) -> Polynomial:
    """Formal derivative; constants map to zero"""
    return Polynomial(tuple(i * c for i, c in enumerate(p.coefficients) if i > 0))


def poly_divrem(a: Polynomial, b: Polynomial) -> Tuple[Polynomial, Polynomial]:
    """
    Euclidean division ``a = q*b + r`` with ``degree(r) < degree(b)``

    Raises:
        ZeroPolynomialError: If b is the zero polynomial
    """
    if b.is_zero():
        raise ZeroPolynomialError("division by the zero polynomial")
    divisor = b.coefficients
    db = len(divisor) - 1
    if len(a.coefficients) <= db:
        return Polynomial.zero(), a

    remainder = list(a.coefficients)
    lead = divisor[-1]
    quotient = [Fraction(0)] * (len(remainder) - db)
    for k in range(len(remainder) - 1, db - 1, -1):
        c = remainder[k] / lead
        if c == 0:
            continue
        quotient[k - db] = c
        for i in range(db + 1):
            remainder[k - db + i] -= c * divisor[i]
    return Polynomial(tuple(quotient)), Polynomial(tuple(remainder[:db]))


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """
    Monic greatest common divisor by Euclid's algorithm

    Raises:
        ZeroPolynomialError: If both arguments are zero
    """
    if a.is_zero() and b.is_zero():
        raise ZeroPolynomialError("gcd(0, 0) is undefined")
    while b:
        a, b = b, a % b
    return a.monic()


class ExtendedGcd(NamedTuple):
    gcd: Polynomial
    u: Polynomial
    v: Polynomial


def poly_extended_gcd(a: Polynomial, b: Polynomial) -> ExtendedGcd:
    """
    Extended Euclid: ``u*a + v*b = g`` with g the monic gcd

    The cofactors are the minimal-degree ones produced by the remainder
    sequence: ``degree(u) < degree(b/g)`` and ``degree(v) < degree(a/g)``.

    Raises:
        ZeroPolynomialError: If both arguments are zero
    """
    if a.is_zero() and b.is_zero():
        raise ZeroPolynomialError("extended gcd(0, 0) is undefined")
    s, s1 = Polynomial.one(), Polynomial.zero()
    t, t1 = Polynomial.zero(), Polynomial.one()
    while b:
        q, r = poly_divrem(a, b)
        a, b = b, r
        s, s1 = s1, s - q * s1
        t, t1 = t1, t - q * t1
    lead = a.leading_coefficient
    return ExtendedGcd(a.scale(1 / lead), s.scale(1 / lead), t.scale(1 / lead))


class SeparablePart(NamedTuple):
    p_tilde: Polynomial
    p_bar: Polynomial
    multiplicity: int


def separable_part(p: Polynomial) -> SeparablePart:
    """
    Squarefree part of p over a field of characteristic zero

    Returns ``(p_tilde, p_bar, m)`` with ``p_tilde = p / gcd(p, p')`` made
    monic, ``p_bar = p / p_tilde`` and m the largest root multiplicity, so
    that p divides ``p_tilde**m`` but not ``p_tilde**(m - 1)``.

    The multiplicity follows the gcd chain ``r <- r / gcd(r, p_tilde)``,
    which strips one power of every remaining factor per step.

    Raises:
        ConstantPolynomialError: If p is constant
    """
    if p.is_constant():
        raise ConstantPolynomialError(f"separable part of constant polynomial {p!r}")
    g = poly_gcd(p, poly_derivative(p))
    p_tilde = (p // g).monic()
    p_bar = p // p_tilde

    multiplicity = 0
    remainder = p
    while not remainder.is_constant():
        remainder = remainder // poly_gcd(remainder, p_tilde)
        multiplicity += 1

    logger.debug(
        f"Separable part: degree {p.degree} -> {p_tilde.degree}, multiplicity {multiplicity}"
    )
    return SeparablePart(p_tilde, p_bar, multiplicity)


def is_separable(p: Polynomial) -> bool:
    """Nonconstant and coprime to its derivative"""
    if p.is_constant():
        return False
    return poly_gcd(p, poly_derivative(p)) == Polynomial.one()


def poly_mod_inverse(a: Polynomial, modulus: Polynomial) -> Polynomial:
    """
    Inverse of a modulo a nonconstant modulus

    Returns:
        q with ``q*a = 1 mod modulus`` and ``degree(q) < degree(modulus)``

    Raises:
        ZeroPolynomialError: If modulus is zero
        ConstantPolynomialError: If modulus is a nonzero constant
        NotCoprimeError: If gcd(a, modulus) is not 1
    """
    if modulus.is_zero():
        raise ZeroPolynomialError("inverse modulo the zero polynomial")
    if modulus.is_constant():
        raise ConstantPolynomialError("inverse modulo a constant polynomial is not defined")
    g, u, _ = poly_extended_gcd(a % modulus, modulus)
    if g != Polynomial.one():
        raise NotCoprimeError(
            f"{a!r} is not invertible modulo {modulus!r} (gcd degree {g.degree})", gcd=g
        )
    return u % modulus


def poly_compose_mod(f: Polynomial, g: Polynomial, modulus: Polynomial) -> Polynomial:
    """
    ``f(g) mod modulus`` by Horner's rule, reducing after every step

    Raises:
        ConstantPolynomialError: If modulus is constant
    """
    if modulus.is_constant():
        raise ConstantPolynomialError("composition modulo a constant polynomial")
    g = g % modulus
    result = Polynomial.zero()
    for c in reversed(f.coefficients):
        result = (result * g + c) % modulus
    return result


# ============================================
# Text forms
# ============================================


def format_polynomial(p: Polynomial) -> str:
    """Coefficient list, lowest degree first; the zero polynomial is ``0``"""
    if p.is_zero():
        return "0"
    return ", ".join(format_rational(c) for c in p.coefficients)


def parse_polynomial(text: str) -> Polynomial:
    """
    Parse the coefficient-list text form

    Raises:
        FormatError: On an empty document or a malformed literal
    """
    stripped = text.strip()
    if not stripped:
        raise FormatError("empty polynomial")
    return Polynomial(tuple(parse_rational(part) for part in stripped.split(",")))


def format_polynomial_expression(p: Polynomial, variable: str = "x") -> str:
    """
    Human-readable form, lowest degree first

    Examples:
        >>> format_polynomial_expression(Polynomial((1, 3, Fraction(1, 2))), "t")
        '1 + 3*t + 1/2*t^2'
    """
    terms = []
    for exponent, c in enumerate(p.coefficients):
        if c == 0:
            continue
        magnitude = abs(c)
        if exponent == 0:
            body = format_rational(magnitude)
        else:
            power = variable if exponent == 1 else f"{variable}^{exponent}"
            body = power if magnitude == 1 else f"{format_rational(magnitude)}*{power}"
        if not terms:
            terms.append(f"-{body}" if c < 0 else body)
        else:
            terms.append(f"{'-' if c < 0 else '+'} {body}")
    return " ".join(terms) if terms else "0"


def _term_pattern(variable: str) -> "re.Pattern[str]":
    var = re.escape(variable)
    return re.compile(
        rf"(?P<sign>[+-]?)(?:(?P<coef>\d+(?:/\d+)?)(?:\*(?P<v1>{var})(?:\^(?P<e1>\d+))?)?"
        rf"|(?P<v2>{var})(?:\^(?P<e2>\d+))?)",
        re.ASCII,
    )


def parse_polynomial_expression(text: str, variable: str = "x") -> Polynomial:
    """
    Parse the form written by format_polynomial_expression

    Raises:
        FormatError: If the text is not a sum of ``c``, ``c*v^k`` or ``v^k`` terms
    """
    compact = "".join(text.split())
    if not compact:
        raise FormatError("empty polynomial expression")
    pattern = _term_pattern(variable)

    coefficients: Dict[int, Fraction] = {}
    position = 0
    while position < len(compact):
        match = pattern.match(compact, position)
        if (
            match is None
            or match.end() == position
            or (match.group("coef") is None and match.group("v2") is None)
        ):
            raise FormatError(f"cannot parse polynomial expression {text!r}")
        if position > 0 and not match.group("sign"):
            raise FormatError(f"missing operator in polynomial expression {text!r}")

        if match.group("v1") is not None:
            exponent = int(match.group("e1") or 1)
        elif match.group("v2") is not None:
            exponent = int(match.group("e2") or 1)
        else:
            exponent = 0
        value = parse_rational(match.group("coef")) if match.group("coef") else Fraction(1)
        if match.group("sign") == "-":
            value = -value
        coefficients[exponent] = coefficients.get(exponent, Fraction(0)) + value
        position = match.end()

    top = max(coefficients)
    return Polynomial(tuple(coefficients.get(i, Fraction(0)) for i in range(top + 1)))
