"""
Chevalley - Core Decomposition Engine

Jordan-Chevalley decomposition ``U = D + N`` of exact rational matrices by
Chevalley's Newton iteration, without computing eigenvalues. The default
engine runs the iteration in the quotient ring ``k[x]/(p)`` and evaluates
the resulting certificate polynomial once at U; the matrix engine iterates
on matrices directly and serves as an independent path.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, NamedTuple, Optional, Tuple

from .exceptions import (
    AlgebraError,
    ConfigurationError,
    ConstantPolynomialError,
    ConvergenceError,
    DimensionMismatchError,
    DuplicateRootError,
    InvalidAnnihilatorError,
    SingularMatrixError,
)
from .matrix import (
    SquareMatrix,
    char_poly,
    eval_poly_at_matrix,
    is_nilpotent,
    mat_inverse,
    min_poly,
)
from .polynomial import (
    Polynomial,
    Scalar,
    poly_compose_mod,
    poly_derivative,
    poly_extended_gcd,
    poly_mod_inverse,
    separable_part,
)

logger = logging.getLogger(__name__)

ENGINES = ("quotient", "matrix")
ANNIHILATORS = ("characteristic", "minimal")


def iteration_bound(multiplicity: int) -> int:
    """
    Smallest N >= 0 with ``2**N >= multiplicity``

    Raises:
        AlgebraError: If multiplicity < 1
    """
    if multiplicity < 1:
        raise AlgebraError(f"multiplicity must be at least 1, got {multiplicity}")
    return (multiplicity - 1).bit_length()


@dataclass(frozen=True)
class Decomposition:
    """
    Additive Jordan-Chevalley decomposition of a matrix

    Args:
        d: Absolutely semi-simple part
        n: Nilpotent part, commuting with d
        h: Certificate polynomial with ``h(U) = d``, reduced mod the annihilator
        iterations: Newton steps actually executed
        annihilator: The polynomial p used, monic with ``p(U) = 0``
        p_tilde: Separable part of the annihilator
        p_bar: ``annihilator / p_tilde``
        multiplicity: Largest root multiplicity m of the annihilator

    Raises:
        DimensionMismatchError: If d and n differ in dimension
        AlgebraError: On a negative iteration count or multiplicity < 1
    """

    d: SquareMatrix
    n: SquareMatrix
    h: Polynomial
    iterations: int
    annihilator: Polynomial
    p_tilde: Polynomial
    p_bar: Polynomial
    multiplicity: int

    def __post_init__(self):
        if self.d.dimension != self.n.dimension:
            raise DimensionMismatchError(
                f"d is {self.d.dimension}x{self.d.dimension} but n is "
                f"{self.n.dimension}x{self.n.dimension}"
            )
        if self.iterations < 0:
            raise AlgebraError(f"iterations must be non-negative, got {self.iterations}")
        if self.multiplicity < 1:
            raise AlgebraError(f"multiplicity must be at least 1, got {self.multiplicity}")

    @property
    def u(self) -> SquareMatrix:
        """The decomposed matrix ``d + n``"""
        return self.d + self.n

    @property
    def dimension(self) -> int:
        return self.d.dimension


@dataclass(frozen=True)
class NewtonTrace:
    """
    Full record of one quotient-ring Newton run

    ``q`` is None when the annihilator is already separable (m = 1), in
    which case ``iterates`` holds only ``x mod p``.
    """

    p: Polynomial
    p_tilde: Polynomial
    p_bar: Polynomial
    multiplicity: int
    q: Optional[Polynomial]
    iterates: Tuple[Polynomial, ...] = field(default_factory=tuple)

    @property
    def h(self) -> Polynomial:
        return self.iterates[-1]

    @property
    def iterations(self) -> int:
        return len(self.iterates) - 1

    @property
    def bound(self) -> int:
        return iteration_bound(self.multiplicity)


def _monic_annihilator(p: Polynomial) -> Polynomial:
    if p.is_constant():
        raise ConstantPolynomialError(f"annihilator must be nonconstant, got {p!r}")
    if not p.is_monic():
        logger.warning(f"Annihilator {p!r} is not monic; dividing by its leading coefficient")
        return p.monic()
    return p


def newton_quotient_trace(p: Polynomial) -> NewtonTrace:
    """
    Run ``h_{k+1} = h_k - p~(h_k) q(h_k) mod p`` from ``h_0 = x``

    q is the inverse of p~' modulo p-bar, computed once. The loop stops as
    soon as ``p~(h_k) = 0 mod p``, which happens within iteration_bound(m)
    steps.

    Raises:
        ConstantPolynomialError: If p is constant
        ConvergenceError: If the bound is overrun (inconsistent arithmetic)
    """
    p = _monic_annihilator(p)
    p_tilde, p_bar, multiplicity = separable_part(p)
    bound = iteration_bound(multiplicity)
    h = Polynomial.x() % p

    if multiplicity == 1:
        logger.debug(f"Annihilator of degree {p.degree} is separable; no Newton steps")
        return NewtonTrace(p, p_tilde, p_bar, multiplicity, None, (h,))

    q = poly_mod_inverse(poly_derivative(p_tilde), p_bar)
    iterates: List[Polynomial] = [h]
    while True:
        residual = poly_compose_mod(p_tilde, h, p)
        if residual.is_zero():
            break
        if len(iterates) - 1 >= bound:
            raise ConvergenceError(
                f"p~(h) still nonzero mod p after {bound} steps (m={multiplicity})",
                iterations=len(iterates) - 1,
                bound=bound,
            )
        h = (h - residual * poly_compose_mod(q, h, p)) % p
        iterates.append(h)
        logger.debug(f"Newton step {len(iterates) - 1}: degree(h) = {h.degree}")

    return NewtonTrace(p, p_tilde, p_bar, multiplicity, q, tuple(iterates))


def newton_quotient(p: Polynomial) -> Tuple[Polynomial, int]:
    """
    Certificate polynomial h and the number of Newton steps taken

    Examples:
        >>> newton_quotient(Polynomial((0, 0, 1)))
        (Polynomial(0), 1)
    """
    trace = newton_quotient_trace(p)
    return trace.h, trace.iterations


def resolve_annihilator(
    u: SquareMatrix, annihilator: Optional[Polynomial], kind: str
) -> Polynomial:
    """The supplied annihilator (checked, made monic) or the one named by kind"""
    if annihilator is not None:
        p = _monic_annihilator(annihilator)
        if not eval_poly_at_matrix(p, u).is_zero():
            raise InvalidAnnihilatorError(f"{annihilator!r} does not annihilate the input matrix")
        return p
    if kind == "characteristic":
        return char_poly(u)
    if kind == "minimal":
        return min_poly(u)
    raise ConfigurationError(f"Unknown annihilator kind '{kind}'. Available: {list(ANNIHILATORS)}")


def jordan_chevalley(
    u: SquareMatrix,
    annihilator: Optional[Polynomial] = None,
    *,
    engine: str = "quotient",
    annihilator_kind: str = "characteristic",
    check_iterates: bool = False,
) -> Decomposition:
    """
    Decompose u as ``D + N`` with D absolutely semi-simple, N nilpotent, DN = ND

    Args:
        u: Matrix to decompose
        annihilator: Optional polynomial with ``p(u) = 0``; checked when given
        engine: ``quotient`` (default) or ``matrix``
        annihilator_kind: ``characteristic`` or ``minimal`` when none is given
        check_iterates: Matrix engine only; assert ``p(D_k) = 0`` every step

    Raises:
        InvalidAnnihilatorError: If the supplied polynomial does not annihilate u
        ConfigurationError: On an unknown engine or annihilator kind

    Examples:
        >>> dec = jordan_chevalley(SquareMatrix([[2, 1], [0, 2]]))
        >>> dec.d == SquareMatrix.scalar(2, 2)
        True
    """
    if engine not in ENGINES:
        raise ConfigurationError(f"Unknown engine '{engine}'. Available: {list(ENGINES)}")
    p = resolve_annihilator(u, annihilator, annihilator_kind)

    if engine == "matrix":
        return newton_matrix(u, p, check_iterates=check_iterates)

    trace = newton_quotient_trace(p)
    d = eval_poly_at_matrix(trace.h, u)
    decomposition = Decomposition(
        d=d,
        n=u - d,
        h=trace.h,
        iterations=trace.iterations,
        annihilator=trace.p,
        p_tilde=trace.p_tilde,
        p_bar=trace.p_bar,
        multiplicity=trace.multiplicity,
    )
    logger.info(
        f"Decomposed {u.dimension}x{u.dimension} matrix: m={trace.multiplicity}, "
        f"{trace.iterations} Newton step(s)"
    )
    return decomposition


def newton_matrix(
    u: SquareMatrix,
    annihilator: Polynomial,
    *,
    invert_derivative: bool = False,
    check_iterates: bool = False,
) -> Decomposition:
    """
    Iterate ``D_{k+1} = D_k - p~(D_k) q(D_k)`` on matrices from ``D_0 = u``

    With ``invert_derivative`` the correction uses ``p~'(D_k)^{-1}`` instead
    of the fixed q. D is computed without the certificate; the returned
    ``h`` comes from the quotient run on the same annihilator.

    Raises:
        InvalidAnnihilatorError: If the annihilator does not annihilate u
        ConvergenceError: If the bound is overrun or an iterate stops being
            annihilated while ``check_iterates`` is on
    """
    p = _monic_annihilator(annihilator)
    if not eval_poly_at_matrix(p, u).is_zero():
        raise InvalidAnnihilatorError(f"{annihilator!r} does not annihilate the input matrix")

    p_tilde, p_bar, multiplicity = separable_part(p)
    bound = iteration_bound(multiplicity)
    p_tilde_prime = poly_derivative(p_tilde)
    q = None if multiplicity == 1 or invert_derivative else poly_mod_inverse(p_tilde_prime, p_bar)

    d = u
    iterations = 0
    while True:
        residual = eval_poly_at_matrix(p_tilde, d)
        if residual.is_zero():
            break
        if iterations >= bound:
            raise ConvergenceError(
                f"p~(D) still nonzero after {bound} matrix steps (m={multiplicity})",
                iterations=iterations,
                bound=bound,
            )
        if q is None:
            correction = mat_inverse(eval_poly_at_matrix(p_tilde_prime, d))
        else:
            correction = eval_poly_at_matrix(q, d)
        d = d - residual @ correction
        iterations += 1
        logger.debug(f"Matrix Newton step {iterations}")

        if check_iterates and not eval_poly_at_matrix(p, d).is_zero():
            raise ConvergenceError(
                f"iterate {iterations} is no longer annihilated by p",
                iterations=iterations,
                bound=bound,
            )

    h = newton_quotient_trace(p).h
    return Decomposition(
        d=d,
        n=u - d,
        h=h,
        iterations=iterations,
        annihilator=p,
        p_tilde=p_tilde,
        p_bar=p_bar,
        multiplicity=multiplicity,
    )


@dataclass(frozen=True)
class CrtSystem:
    """
    Congruences ``h = lambda_j mod (x - lambda_j)**n_j`` over distinct rational roots

    Raises:
        AlgebraError: If empty or a multiplicity is below 1
        DuplicateRootError: If a root is listed twice
    """

    pairs: Tuple[Tuple[Fraction, int], ...]

    def __post_init__(self):
        pairs = tuple((Fraction(root), int(mult)) for root, mult in self.pairs)
        if not pairs:
            raise AlgebraError("a congruence system needs at least one root")
        seen = set()
        for root, mult in pairs:
            if mult < 1:
                raise AlgebraError(f"multiplicity of root {root} must be at least 1, got {mult}")
            if root in seen:
                raise DuplicateRootError(f"root {root} appears more than once")
            seen.add(root)
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[Scalar, int]]) -> CrtSystem:
        return cls(tuple(pairs))

    def modulus(self) -> Polynomial:
        """Product of the ``(x - lambda_j)**n_j``"""
        result = Polynomial.one()
        for root, mult in self.pairs:
            result = result * Polynomial.from_roots([root] * mult)
        return result

    @property
    def degree(self) -> int:
        return sum(mult for _, mult in self.pairs)


def crt_solve(system: CrtSystem) -> Polynomial:
    """
    Unique h with ``degree(h) < sum(n_j)`` solving the system

    Built incrementally: with ``a*M + b*M_k = 1``, the update
    ``h <- h + (lambda_k - h) * a * M mod M*M_k`` keeps the earlier
    congruences and adds the new one.

    Examples:
        >>> crt_solve(CrtSystem.from_pairs([(0, 1), (1, 1)]))
        Polynomial(0, 1)
    """
    (root, mult), *rest = system.pairs
    h = Polynomial.constant(root)
    modulus = Polynomial.from_roots([root] * mult)
    for root, mult in rest:
        factor = Polynomial.from_roots([root] * mult)
        _, a, _ = poly_extended_gcd(modulus, factor)
        combined = modulus * factor
        h = (h + (Polynomial.constant(root) - h) * a * modulus) % combined
        modulus = combined
    return h


class MultiplicativeDecomposition(NamedTuple):
    d: SquareMatrix
    v: SquareMatrix


def multiplicative(u: SquareMatrix, **options) -> MultiplicativeDecomposition:
    """
    ``U = D V`` with ``V = I + D^{-1} N`` unipotent and commuting with D

    Keyword options are passed to jordan_chevalley.

    Raises:
        SingularMatrixError: If u (equivalently D) is not invertible
    """
    decomposition = jordan_chevalley(u, **options)
    try:
        d_inverse = mat_inverse(decomposition.d)
    except SingularMatrixError as e:
        raise SingularMatrixError(
            f"multiplicative decomposition needs an invertible matrix: {e}"
        ) from e
    v = SquareMatrix.identity(u.dimension) + d_inverse @ decomposition.n
    return MultiplicativeDecomposition(decomposition.d, v)


def is_absolutely_semisimple(u: SquareMatrix) -> bool:
    """True when the separable part of the characteristic polynomial annihilates u"""
    p_tilde = separable_part(char_poly(u)).p_tilde
    return eval_poly_at_matrix(p_tilde, u).is_zero()


def is_unipotent(v: SquareMatrix) -> bool:
    """True when ``v - I`` is nilpotent"""
    return is_nilpotent(v - SquareMatrix.identity(v.dimension)) is not None
