"""
Shipped example data: a 15x15 integer matrix with characteristic polynomial
``p~**3`` (p~ a separable quintic), its expected semi-simple and nilpotent
parts, and the polynomials of its Newton run. See PROVENANCE.md.
"""

from pathlib import Path

from ..matrix import SquareMatrix, parse_matrix
from ..polynomial import Polynomial, parse_polynomial

FIXTURE_DIR = Path(__file__).parent

MATRICES = ("u_paper_15x15", "d_paper_15x15", "n_paper_15x15")
POLYNOMIALS = ("p_paper", "gcd_paper", "p_tilde_paper", "p_tilde_derivative_paper", "h2_paper")


def fixture_path(name: str) -> Path:
    """Path of a shipped fixture by stem name, e.g. ``u_paper_15x15``"""
    path = FIXTURE_DIR / f"{name}.txt"
    if not path.exists():
        raise FileNotFoundError(f"no fixture named {name!r}")
    return path


def load_matrix(name: str) -> SquareMatrix:
    return parse_matrix(fixture_path(name).read_text(encoding="utf-8"))


def load_polynomial(name: str) -> Polynomial:
    return parse_polynomial(fixture_path(name).read_text(encoding="utf-8"))
