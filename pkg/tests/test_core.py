"""
Tests for the decomposition engine
"""

import random
from fractions import Fraction

import pytest
from conftest import conjugated_blocks

from chevalley.core import (
    CrtSystem,
    Decomposition,
    crt_solve,
    is_absolutely_semisimple,
    is_unipotent,
    iteration_bound,
    jordan_chevalley,
    multiplicative,
    newton_matrix,
    newton_quotient,
    newton_quotient_trace,
)
from chevalley.exceptions import (
    AlgebraError,
    ConfigurationError,
    ConstantPolynomialError,
    DimensionMismatchError,
    DuplicateRootError,
    InvalidAnnihilatorError,
    SingularMatrixError,
)
from chevalley.matrix import (
    SquareMatrix,
    block_diag,
    char_poly,
    eval_poly_at_matrix,
    is_nilpotent,
    mat_inverse,
)
from chevalley.polynomial import Polynomial, poly_compose_mod, poly_gcd

X = Polynomial.x()

H2_CONSTANT = Fraction(
    1040926769591787693101439601278755401419987857,
    769212296509752781928441418448233724128471364,
)
H2_LEADING = Fraction(
    -164777455994373388396328621588559,
    6153698372078022255427531347585869793027770912,
)


class TestIterationBound:
    """Test iteration_bound"""

    @pytest.mark.parametrize(
        "multiplicity,expected", [(1, 0), (2, 1), (3, 2), (4, 2), (5, 3), (8, 3), (9, 4)]
    )
    def test_values(self, multiplicity, expected):
        """Test smallest N with 2^N >= m"""
        assert iteration_bound(multiplicity) == expected

    def test_rejects_zero(self):
        """Test m < 1 is rejected"""
        with pytest.raises(AlgebraError):
            iteration_bound(0)


class TestNewtonQuotient:
    """Test the quotient-ring Newton iteration"""

    def test_fixture_certificate(self, paper_p, paper_h2):
        """Test the degree-14 certificate in exactly two steps"""
        h, iterations = newton_quotient(paper_p)
        assert iterations == 2
        assert h.degree == 14
        assert h[0] == H2_CONSTANT
        assert h[14] == H2_LEADING
        assert h == paper_h2

    def test_fixture_trace(self, paper_p, paper_p_tilde, paper_h2):
        """Test the recorded run data"""
        trace = newton_quotient_trace(paper_p)
        assert trace.p_tilde == paper_p_tilde
        assert trace.multiplicity == 3
        assert trace.bound == 2
        assert trace.iterates[0] == X
        assert trace.iterates[-1] == paper_h2
        assert len(trace.iterates) == 3

    def test_squarefree(self):
        """Test a separable annihilator returns x with no steps"""
        assert newton_quotient(Polynomial.from_roots([1, 2, 3])) == (X, 0)

    def test_linear(self):
        """Test p = x - 3 gives the constant 3"""
        assert newton_quotient(Polynomial.from_roots([3])) == (Polynomial.constant(3), 0)

    def test_double_root_at_zero(self):
        """Test p = x^2 gives h = 0 after one step"""
        assert newton_quotient(Polynomial((0, 0, 1))) == (Polynomial.zero(), 1)

    def test_non_monic_input(self):
        """Test a scaled annihilator gives the same certificate"""
        p = Polynomial.from_roots([1, 1, 2])
        assert newton_quotient(p * 7) == newton_quotient(p)

    def test_constant_rejected(self):
        """Test constant annihilators are rejected"""
        with pytest.raises(ConstantPolynomialError):
            newton_quotient(Polynomial.constant(2))

    def test_quadratic_lifting_on_fixture(self, paper_p, paper_p_tilde):
        """Test p~(h_k) mod p is divisible by p~^min(2^k, m)"""
        trace = newton_quotient_trace(paper_p)
        for k, h in enumerate(trace.iterates):
            residual = poly_compose_mod(paper_p_tilde, h, paper_p)
            power = paper_p_tilde ** min(2**k, trace.multiplicity)
            assert (residual % power).is_zero()


class TestJordanChevalley:
    """Test jordan_chevalley on fixed examples"""

    def test_fixture_parts_exact(self, paper_decomposition, paper_d, paper_n):
        """Test all 450 entries of D and N and the step count"""
        assert paper_decomposition.d == paper_d
        assert paper_decomposition.n == paper_n
        assert paper_decomposition.iterations == 2
        assert paper_decomposition.multiplicity == 3

    def test_jordan_block(self):
        """Test a 2x2 Jordan block splits as lambda*I plus the shift"""
        lam = Fraction(5, 3)
        dec = jordan_chevalley(SquareMatrix([[lam, 1], [0, lam]]))
        assert dec.d == SquareMatrix.scalar(2, lam)
        assert dec.n == SquareMatrix([[0, 1], [0, 0]])

    def test_diagonal(self):
        """Test a diagonal matrix is its own semi-simple part"""
        u = SquareMatrix([[1, 0, 0], [0, 2, 0], [0, 0, 1]])
        dec = jordan_chevalley(u)
        assert dec.d == u
        assert dec.n.is_zero()
        assert dec.multiplicity == 2
        assert jordan_chevalley(u, annihilator_kind="minimal").iterations == 0

    def test_simple_and_double_eigenvalue(self):
        """Test D = l2*I + (U - l2*I)^2 / (l1 - l2)"""
        l1, l2 = Fraction(4), Fraction(-1)
        p = SquareMatrix([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
        u = mat_inverse(p) @ SquareMatrix([[l1, 0, 0], [0, l2, 1], [0, 0, l2]]) @ p
        shifted = u - SquareMatrix.scalar(3, l2)
        expected = SquareMatrix.scalar(3, l2) + (shifted @ shifted) * (1 / (l1 - l2))
        assert jordan_chevalley(u).d == expected

    def test_supplied_annihilator(self):
        """Test a valid supplied annihilator is used"""
        u = SquareMatrix([[2, 1], [0, 2]])
        dec = jordan_chevalley(u, Polynomial.from_roots([2, 2, 7]))
        assert dec.d == SquareMatrix.scalar(2, 2)
        assert dec.annihilator == Polynomial.from_roots([2, 2, 7])

    def test_invalid_annihilator(self):
        """Test a non-annihilating polynomial is rejected"""
        with pytest.raises(InvalidAnnihilatorError):
            jordan_chevalley(SquareMatrix([[2, 1], [0, 2]]), Polynomial.from_roots([2]))

    def test_minimal_annihilator(self):
        """Test the minimal polynomial gives the same parts"""
        u = block_diag(SquareMatrix([[3, 1], [0, 3]]), SquareMatrix.scalar(2, 3))
        by_char = jordan_chevalley(u)
        by_min = jordan_chevalley(u, annihilator_kind="minimal")
        assert by_min.d == by_char.d
        assert by_min.annihilator == Polynomial.from_roots([3, 3])

    def test_unknown_options(self):
        """Test unknown engine or annihilator kinds are configuration errors"""
        with pytest.raises(ConfigurationError):
            jordan_chevalley(SquareMatrix.identity(2), engine="eigen")
        with pytest.raises(ConfigurationError):
            jordan_chevalley(SquareMatrix.identity(2), annihilator_kind="jordan")

    def test_decomposition_validation(self):
        """Test Decomposition rejects inconsistent fields"""
        with pytest.raises(DimensionMismatchError):
            Decomposition(
                d=SquareMatrix.identity(2),
                n=SquareMatrix.zeros(3),
                h=X,
                iterations=0,
                annihilator=X,
                p_tilde=X,
                p_bar=Polynomial.one(),
                multiplicity=1,
            )


class TestNewtonMatrix:
    """Test the matrix Newton iteration"""

    def test_fixture_paths_agree(self, paper_u, paper_p, paper_decomposition):
        """Test the matrix path reproduces D and N on the fixture"""
        dec = newton_matrix(paper_u, paper_p, check_iterates=True)
        assert dec.d == paper_decomposition.d
        assert dec.n == paper_decomposition.n
        assert dec.iterations == 2

    @pytest.mark.slow
    def test_fixture_inverse_derivative_form(self, paper_u, paper_p, paper_d):
        """Test the inverse-derivative correction reaches the same D"""
        assert newton_matrix(paper_u, paper_p, invert_derivative=True).d == paper_d

    def test_diagonalizable(self):
        """Test diagonalizable input stops immediately"""
        u = SquareMatrix([[1, 1], [0, 2]])
        dec = newton_matrix(u, char_poly(u))
        assert dec.d == u
        assert dec.iterations == 0

    def test_invalid_annihilator(self):
        """Test the matrix path checks the annihilator"""
        with pytest.raises(InvalidAnnihilatorError):
            newton_matrix(SquareMatrix.identity(2), Polynomial.from_roots([2]))

    def test_engine_option(self, paper_u, paper_d):
        """Test jordan_chevalley dispatches to the matrix engine"""
        assert jordan_chevalley(paper_u, engine="matrix").d == paper_d


class TestCrt:
    """Test CrtSystem and crt_solve"""

    def test_single_pair(self):
        """Test one root gives a constant"""
        assert crt_solve(CrtSystem.from_pairs([(Fraction(7, 2), 3)])) == Polynomial.constant(
            Fraction(7, 2)
        )

    def test_simple_and_double(self):
        """Test {(l1,1),(l2,2)} gives l2 + (x - l2)^2 / (l1 - l2)"""
        l1, l2 = Fraction(3), Fraction(-2)
        h = crt_solve(CrtSystem.from_pairs([(l1, 1), (l2, 2)]))
        shifted = X - l2
        assert h == shifted * shifted * (1 / (l1 - l2)) + l2

    def test_lagrange_line(self):
        """Test two simple roots give the line through them"""
        assert crt_solve(CrtSystem.from_pairs([(0, 1), (1, 1)])) == X

    def test_congruences_hold(self):
        """Test every congruence by division"""
        system = CrtSystem.from_pairs([(1, 2), (-1, 3), (Fraction(1, 2), 1)])
        h = crt_solve(system)
        assert h.degree < system.degree
        for root, mult in system.pairs:
            assert ((h - root) % Polynomial.from_roots([root] * mult)).is_zero()
        assert system.modulus().degree == 6

    def test_duplicate_root(self):
        """Test repeated roots are rejected"""
        with pytest.raises(DuplicateRootError):
            CrtSystem.from_pairs([(1, 1), (1, 2)])

    def test_bad_multiplicity(self):
        """Test empty systems and multiplicity zero"""
        with pytest.raises(AlgebraError):
            CrtSystem.from_pairs([(1, 0)])
        with pytest.raises(AlgebraError):
            CrtSystem.from_pairs([])


class TestMultiplicative:
    """Test the multiplicative decomposition U = DV"""

    def test_identity(self):
        """Test I = I * I"""
        d, v = multiplicative(SquareMatrix.identity(3))
        assert d == SquareMatrix.identity(3)
        assert v == SquareMatrix.identity(3)

    def test_jordan_block(self):
        """Test a Jordan block gives V = [[1, 1/l], [0, 1]]"""
        lam = Fraction(-4)
        d, v = multiplicative(SquareMatrix([[lam, 1], [0, lam]]))
        assert d == SquareMatrix.scalar(2, lam)
        assert v == SquareMatrix([[1, 1 / lam], [0, 1]])

    def test_fixture(self, paper_u, paper_d):
        """Test DV = VD = U and V unipotent on the fixture"""
        d, v = multiplicative(paper_u)
        assert d == paper_d
        assert d @ v == paper_u
        assert v @ d == paper_u
        assert is_unipotent(v)

    def test_singular(self):
        """Test singular input is rejected"""
        with pytest.raises(SingularMatrixError):
            multiplicative(SquareMatrix([[0, 1], [0, 0]]))


class TestPredicates:
    """Test is_absolutely_semisimple and is_unipotent"""

    def test_semisimple(self, paper_u, paper_d):
        """Test D is absolutely semi-simple and U is not"""
        assert is_absolutely_semisimple(paper_d)
        assert not is_absolutely_semisimple(paper_u)

    def test_rotation_is_semisimple(self):
        """Test a matrix without rational eigenvalues"""
        assert is_absolutely_semisimple(SquareMatrix([[0, -1], [1, 0]]))

    def test_unipotent(self):
        """Test unipotent predicate"""
        assert is_unipotent(SquareMatrix([[1, 5], [0, 1]]))
        assert not is_unipotent(SquareMatrix([[2, 0], [0, 1]]))


class TestDecompositionProperties:
    """Randomized invariants on conjugated Jordan-block matrices"""

    def test_invariants(self, generated):
        """Test D + N = U, DN = ND, p~(D) = 0, N^m = 0 and h(U) = D"""
        dec = jordan_chevalley(generated.u)
        assert dec.d + dec.n == generated.u
        assert dec.d @ dec.n == dec.n @ dec.d
        assert eval_poly_at_matrix(dec.p_tilde, dec.d).is_zero()
        index = is_nilpotent(dec.n)
        assert index is not None and index <= dec.multiplicity
        assert eval_poly_at_matrix(dec.h, generated.u) == dec.d
        assert dec.h.degree < dec.annihilator.degree
        assert dec.iterations <= iteration_bound(dec.multiplicity)

    def test_matches_construction(self, generated):
        """Test the parts equal the conjugated diagonal and nilpotent blocks"""
        dec = jordan_chevalley(generated.u)
        assert dec.d == generated.d
        assert dec.n == generated.n
        assert is_nilpotent(dec.n) == generated.largest_block

    def test_path_equivalence(self, generated):
        """Test the matrix and quotient engines agree"""
        quotient = jordan_chevalley(generated.u)
        matrix = newton_matrix(generated.u, quotient.annihilator, check_iterates=True)
        assert matrix.d == quotient.d
        assert matrix.n == quotient.n

    def test_crt_matches_newton(self, generated):
        """Test the CRT certificate equals the Newton certificate"""
        h, _ = newton_quotient(char_poly(generated.u))
        system = CrtSystem.from_pairs(generated.root_multiplicities)
        assert crt_solve(system) == h

    def test_quadratic_lifting(self, generated):
        """Test p~(h_k) mod p is divisible by gcd(p~^min(2^k, m), p)"""
        trace = newton_quotient_trace(char_poly(generated.u))
        for k, h in enumerate(trace.iterates):
            residual = poly_compose_mod(trace.p_tilde, h, trace.p)
            if residual.is_zero():
                continue
            divisor = poly_gcd(trace.p_tilde ** min(2**k, trace.multiplicity), trace.p)
            assert (residual % divisor).is_zero()

    def test_root_fixing(self, generated):
        """Test every iterate fixes every eigenvalue"""
        trace = newton_quotient_trace(char_poly(generated.u))
        for h in trace.iterates:
            for root, _ in generated.root_multiplicities:
                assert h(root) == root

    def test_conjugation_equivariance(self, generated):
        """Test decomposing P^-1 U P gives P^-1 D P and P^-1 N P"""
        rng = random.Random(generated.u.dimension)
        p = conjugated_blocks(rng, generated.u.dimension).p
        p_inverse = mat_inverse(p)
        dec = jordan_chevalley(generated.u)
        conjugated = jordan_chevalley(p_inverse @ generated.u @ p)
        assert conjugated.d == p_inverse @ dec.d @ p
        assert conjugated.n == p_inverse @ dec.n @ p

    @pytest.mark.parametrize("seed", range(10))
    def test_block_functoriality(self, seed):
        """Test the decomposition of diag(A, B) is diag of the decompositions"""
        rng = random.Random(1000 + seed)
        a = conjugated_blocks(rng, rng.randint(2, 4)).u
        b = conjugated_blocks(rng, rng.randint(2, 4)).u
        dec = jordan_chevalley(block_diag(a, b))
        dec_a, dec_b = jordan_chevalley(a), jordan_chevalley(b)
        assert dec.d == block_diag(dec_a.d, dec_b.d)
        assert dec.n == block_diag(dec_a.n, dec_b.n)
