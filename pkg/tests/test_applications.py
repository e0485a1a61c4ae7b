"""
Tests for matrix powers and the nilpotent exponential factor
"""

from fractions import Fraction

import pytest

from chevalley.applications import (
    PolyMatrix,
    exp_nilpotent_factor,
    format_poly_matrix,
    matrix_power,
    parse_poly_matrix,
)
from chevalley.core import jordan_chevalley
from chevalley.exceptions import AlgebraError, DimensionMismatchError, FormatError, NotNilpotentError
from chevalley.matrix import SquareMatrix, mat_pow
from chevalley.polynomial import Polynomial

SAMPLE_POINTS = (Fraction(0), Fraction(1), Fraction(-2), Fraction(3, 2), Fraction(-1, 3))


def repeated_product(u: SquareMatrix, exponent: int) -> SquareMatrix:
    result = SquareMatrix.identity(u.dimension)
    for _ in range(exponent):
        result = result @ u
    return result


class TestMatrixPower:
    """Test matrix_power"""

    @pytest.mark.parametrize("exponent", range(21))
    def test_jordan_block(self, exponent):
        """Test a 3x3 Jordan block for every exponent up to 20"""
        u = SquareMatrix([[2, 1, 0], [0, 2, 1], [0, 0, 2]])
        assert matrix_power(u, exponent) == repeated_product(u, exponent)

    @pytest.mark.parametrize("exponent", [0, 1, 2, 5, 13, 20])
    def test_generated(self, generated, exponent):
        """Test against repeated multiplication on random fixtures"""
        assert matrix_power(generated.u, exponent) == repeated_product(generated.u, exponent)

    def test_exponent_law(self, generated):
        """Test A^(a+b) = A^a A^b"""
        u = generated.u
        assert matrix_power(u, 7) == matrix_power(u, 3) @ matrix_power(u, 4)

    @pytest.mark.slow
    def test_fixture(self, paper_u):
        """Test the 15x15 fixture"""
        assert matrix_power(paper_u, 6) == mat_pow(paper_u, 6)

    def test_negative_exponent(self):
        """Test negative exponents are rejected"""
        with pytest.raises(AlgebraError):
            matrix_power(SquareMatrix.identity(2), -1)


class TestExpNilpotentFactor:
    """Test exp_nilpotent_factor"""

    def test_shift_2x2(self):
        """Test e^{tN} = I + tN for the 2x2 shift"""
        exp = exp_nilpotent_factor(SquareMatrix([[0, 1], [0, 0]]))
        assert format_poly_matrix(exp) == "[[1, t],\n [0, 1]]"

    def test_shift_3x3(self):
        """Test the t^2/2 corner for the 3x3 shift"""
        exp = exp_nilpotent_factor(SquareMatrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]]))
        assert exp.degree == 2
        assert str(exp) == "[[1, t, 1/2*t^2],\n [0, 1, t],\n [0, 0, 1]]"

    def test_zero_matrix(self):
        """Test e^{t0} = I"""
        exp = exp_nilpotent_factor(SquareMatrix.zeros(3))
        assert exp.degree == 0
        assert exp.evaluate(5) == SquareMatrix.identity(3)

    def test_initial_value(self, generated):
        """Test E(0) = I"""
        exp = exp_nilpotent_factor(generated.n)
        assert exp.evaluate(0) == SquareMatrix.identity(generated.n.dimension)

    def test_differential_equation(self, generated):
        """Test dE/dt = N E as a polynomial identity"""
        exp = exp_nilpotent_factor(generated.n)
        assert exp.derivative() == exp.left_multiply(generated.n)

    def test_group_law(self, generated):
        """Test E(t) E(s) = E(t + s)"""
        exp = exp_nilpotent_factor(generated.n)
        for t in SAMPLE_POINTS:
            for s in SAMPLE_POINTS:
                assert exp.evaluate(t) @ exp.evaluate(s) == exp.evaluate(t + s)

    def test_fixture_nilpotent_part(self, paper_decomposition):
        """Test the 15x15 nilpotent part has a quadratic exponential"""
        exp = exp_nilpotent_factor(paper_decomposition.n)
        assert exp.degree == 2
        assert exp.coefficient(1) == paper_decomposition.n

    def test_not_nilpotent(self):
        """Test non-nilpotent input is rejected"""
        with pytest.raises(NotNilpotentError):
            exp_nilpotent_factor(SquareMatrix([[1, 1], [0, 1]]))

    def test_full_exponential_split(self):
        """Test the nilpotent factor of a Jordan block"""
        dec = jordan_chevalley(SquareMatrix([[3, 1], [0, 3]]))
        exp = exp_nilpotent_factor(dec.n)
        assert exp.coefficient(0) == SquareMatrix.identity(2)
        assert exp.coefficient(1) == dec.n


class TestPolyMatrix:
    """Test PolyMatrix and its text form"""

    def test_from_coefficients(self):
        """Test coefficient matrices become entry polynomials"""
        pm = PolyMatrix.from_coefficients(
            [SquareMatrix.identity(2), SquareMatrix([[0, 2], [0, 0]])]
        )
        assert pm.entries[0][1] == Polynomial((0, 2))
        assert pm.evaluate(Fraction(1, 2)) == SquareMatrix([[1, 1], [0, 1]])

    def test_rejects_non_square(self):
        """Test shape validation"""
        with pytest.raises(DimensionMismatchError):
            PolyMatrix(((Polynomial.one(), Polynomial.zero()),))
        with pytest.raises(DimensionMismatchError):
            PolyMatrix.from_coefficients([])

    def test_parse_formatted(self):
        """Test the printed form parses back"""
        text = "[[1, t, 1/2*t^2],\n [0, 1, t],\n [0, 0, 1]]"
        pm = parse_poly_matrix(text)
        assert pm.entries[0][2] == Polynomial((0, 0, Fraction(1, 2)))
        assert format_poly_matrix(pm) == text

    def test_parse_negative_terms(self):
        """Test signs and a custom variable"""
        pm = parse_poly_matrix("[[1 - s, -s^2], [0, 1]]", variable="s")
        assert pm.entries[0][0] == Polynomial((1, -1))
        assert pm.entries[0][1] == Polynomial((0, 0, -1))

    @pytest.mark.parametrize("text", ["", "[[1, t], [0]]", "[[1, q]]", "[[1, t] [0, 1]] x"])
    def test_malformed(self, text):
        """Test malformed polynomial matrices are rejected"""
        with pytest.raises(FormatError):
            parse_poly_matrix(text)
