"""
Chevalley - Exact Jordan-Chevalley decomposition

Splits a square matrix over the rationals into commuting absolutely
semi-simple and nilpotent parts with Chevalley's Newton iteration, in exact
arithmetic and without computing eigenvalues.
"""

import logging
from typing import Optional

from .applications import PolyMatrix, exp_nilpotent_factor, matrix_power
from .config import CliConfig, ConfigManager
from .core import (
    CrtSystem,
    Decomposition,
    MultiplicativeDecomposition,
    NewtonTrace,
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
from .exceptions import (
    AlgebraError,
    ChevalleyException,
    ConfigurationError,
    ConvergenceError,
    FormatError,
)
from .matrix import (
    SquareMatrix,
    char_poly,
    eval_poly_at_matrix,
    is_nilpotent,
    mat_add,
    mat_inverse,
    mat_mul,
    mat_sub,
    min_poly,
)
from .polynomial import (
    Polynomial,
    Rational,
    is_separable,
    poly_compose_mod,
    poly_derivative,
    poly_divrem,
    poly_extended_gcd,
    poly_gcd,
    poly_mod_inverse,
    separable_part,
)
from .verification import VerificationReport, verify_decomposition

__version__ = "1.0.0"
__license__ = "MIT"
__all__ = [
    # Exact arithmetic
    "Rational",
    "Polynomial",
    "poly_derivative",
    "poly_divrem",
    "poly_gcd",
    "poly_extended_gcd",
    "poly_mod_inverse",
    "poly_compose_mod",
    "separable_part",
    "is_separable",
    # Matrices
    "SquareMatrix",
    "mat_add",
    "mat_sub",
    "mat_mul",
    "mat_inverse",
    "char_poly",
    "min_poly",
    "eval_poly_at_matrix",
    "is_nilpotent",
    # Decomposition
    "Decomposition",
    "NewtonTrace",
    "CrtSystem",
    "MultiplicativeDecomposition",
    "iteration_bound",
    "newton_quotient",
    "newton_quotient_trace",
    "jordan_chevalley",
    "newton_matrix",
    "crt_solve",
    "multiplicative",
    "is_absolutely_semisimple",
    "is_unipotent",
    "VerificationReport",
    "verify_decomposition",
    # Applications
    "PolyMatrix",
    "matrix_power",
    "exp_nilpotent_factor",
    # Config & errors
    "CliConfig",
    "ConfigManager",
    "ChevalleyException",
    "ConfigurationError",
    "FormatError",
    "AlgebraError",
    "ConvergenceError",
]


LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def get_version() -> str:
    """Return the current version"""
    return __version__


def configure_logging(
    level: int = logging.INFO,
    handler: Optional[logging.Handler] = None,
    fmt: str = LOG_FORMAT,
) -> logging.Handler:
    """
    Configure logging for Chevalley

    Replaces the handler installed by an earlier call, so repeated calls do
    not duplicate output.

    Args:
        level: Logging level (logging.DEBUG, logging.INFO, etc.)
        handler: Custom logging handler (default: StreamHandler on stderr)
        fmt: Format for the default handler

    Returns:
        The installed handler
    """
    logger = logging.getLogger("chevalley")
    logger.setLevel(level)

    if handler is None:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(fmt))

    for previous in [h for h in logger.handlers if h.get_name() == "chevalley"]:
        logger.removeHandler(previous)
    handler.set_name("chevalley")
    logger.addHandler(handler)
    return handler
