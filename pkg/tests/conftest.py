"""
Pytest configuration and fixtures
"""

import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import List, Tuple

import pytest

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from chevalley.fixtures import load_matrix, load_polynomial  # noqa: E402
from chevalley.matrix import SquareMatrix, block_diag, mat_inverse  # noqa: E402

EIGENVALUE_POOL = (-2, -1, 0, 1, 2, 3, Fraction(1, 2), Fraction(-3, 2))
PROPERTY_SEEDS = range(120)


@dataclass(frozen=True)
class ConjugatedBlocks:
    """
    ``U = P^-1 J P`` with J block diagonal of Jordan blocks

    ``blocks`` lists (eigenvalue, block size); d and n are the conjugated
    diagonal and strictly upper parts of J.
    """

    u: SquareMatrix
    d: SquareMatrix
    n: SquareMatrix
    p: SquareMatrix
    blocks: Tuple[Tuple[Fraction, int], ...]

    @property
    def root_multiplicities(self) -> List[Tuple[Fraction, int]]:
        totals: dict = {}
        for value, size in self.blocks:
            totals[value] = totals.get(value, 0) + size
        return sorted(totals.items())

    @property
    def largest_block(self) -> int:
        return max(size for _, size in self.blocks)


def jordan_block(value, size: int) -> SquareMatrix:
    return SquareMatrix(
        [[value if i == j else (1 if j == i + 1 else 0) for j in range(size)] for i in range(size)]
    )


def random_unimodular(rng: random.Random, dimension: int) -> SquareMatrix:
    """Product of integer shears and a permutation; determinant +-1"""
    rows = [[1 if i == j else 0 for j in range(dimension)] for i in range(dimension)]
    for _ in range(dimension + 2):
        i, j = rng.sample(range(dimension), 2)
        factor = rng.choice((-2, -1, 1, 2))
        rows[i] = [a + factor * b for a, b in zip(rows[i], rows[j])]
    rng.shuffle(rows)
    return SquareMatrix(rows)


def conjugated_blocks(rng: random.Random, dimension: int) -> ConjugatedBlocks:
    """Random matrix with known decomposition and rational eigenvalues"""
    sizes: List[int] = []
    remaining = dimension
    while remaining:
        size = rng.randint(1, min(remaining, 4))
        sizes.append(size)
        remaining -= size
    values = rng.sample(EIGENVALUE_POOL, min(len(sizes), rng.randint(1, 3)))
    blocks = tuple((Fraction(rng.choice(values)), size) for size in sizes)

    j = jordan_block(*blocks[0])
    diagonal = SquareMatrix.scalar(blocks[0][1], blocks[0][0])
    for value, size in blocks[1:]:
        j = block_diag(j, jordan_block(value, size))
        diagonal = block_diag(diagonal, SquareMatrix.scalar(size, value))

    p = random_unimodular(rng, dimension)
    p_inverse = mat_inverse(p)
    return ConjugatedBlocks(
        u=p_inverse @ j @ p,
        d=p_inverse @ diagonal @ p,
        n=p_inverse @ (j - diagonal) @ p,
        p=p,
        blocks=blocks,
    )


@pytest.fixture
def rng():
    """Seeded random source"""
    return random.Random(20240611)


@pytest.fixture(params=list(PROPERTY_SEEDS))
def generated(request):
    """One conjugated Jordan-block matrix per seed, dimensions 2..8"""
    rng = random.Random(request.param)
    return conjugated_blocks(rng, rng.randint(2, 8))


@pytest.fixture(scope="session")
def paper_u():
    return load_matrix("u_paper_15x15")


@pytest.fixture(scope="session")
def paper_d():
    return load_matrix("d_paper_15x15")


@pytest.fixture(scope="session")
def paper_n():
    return load_matrix("n_paper_15x15")


@pytest.fixture(scope="session")
def paper_p():
    return load_polynomial("p_paper")


@pytest.fixture(scope="session")
def paper_p_tilde():
    return load_polynomial("p_tilde_paper")


@pytest.fixture(scope="session")
def paper_h2():
    return load_polynomial("h2_paper")


@pytest.fixture(scope="session")
def paper_decomposition(paper_u):
    from chevalley.core import jordan_chevalley

    return jordan_chevalley(paper_u)


@pytest.fixture
def temp_config(tmp_path):
    """Create temporary config file for testing"""
    import yaml

    config_data = {
        "global": {"log_level": "INFO"},
        "decomposition": {"engine": "matrix", "check_iterates": True},
    }
    path = tmp_path / "chevalley.yaml"
    path.write_text(yaml.safe_dump(config_data), encoding="utf-8")
    return path


# Markers for different test categories
def pytest_configure(config):
    """Configure custom pytest markers"""
    config.addinivalue_line("markers", "slow: mark test as slow running")
    config.addinivalue_line("markers", "integration: mark test as integration test")
