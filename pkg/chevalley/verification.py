"""
Chevalley - Decomposition Verification

Independent checks of a claimed decomposition ``U = D + N``. Failures are
recorded in the report, never raised.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional, Tuple

from .core import Decomposition
from .exceptions import ChevalleyException
from .matrix import SquareMatrix, eval_poly_at_matrix, is_nilpotent
from .polynomial import is_separable

logger = logging.getLogger(__name__)

CHECK_ORDER = ("sum", "commutation", "nilpotency", "separability", "certificate")


@dataclass(frozen=True)
class VerificationReport:
    """
    Outcome of verify_decomposition

    Args:
        checks: Check name -> result, in CHECK_ORDER
        nilpotency_index: Smallest k with N^k = 0, or None if N is not nilpotent
        multiplicity: The bound m the nilpotency index was compared against
    """

    checks: Dict[str, bool] = field(default_factory=dict)
    nilpotency_index: Optional[int] = None
    multiplicity: int = 1

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(self.checks.values())

    @property
    def failures(self) -> Tuple[str, ...]:
        return tuple(name for name, ok in self.checks.items() if not ok)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "checks": dict(self.checks),
            "nilpotency_index": self.nilpotency_index,
            "multiplicity": self.multiplicity,
        }


def _guarded(check: Callable[[], bool]) -> Callable[[], bool]:
    def run() -> bool:
        try:
            return check()
        except ChevalleyException as e:
            logger.debug(f"Verification check raised {type(e).__name__}: {e}")
            return False

    return run


def verify_decomposition(
    u: SquareMatrix,
    decomposition: Decomposition,
    *,
    parallel: bool = False,
    max_workers: int = 4,
) -> VerificationReport:
    """
    Check sum, commutation, nilpotency, separability and certificate

    - sum: ``D + N = U``
    - commutation: ``DN = ND``
    - nilpotency: N nilpotent with index at most m
    - separability: p~ coprime to p~' and ``p~(D) = 0``
    - certificate: ``h(U) = D`` and ``degree(h) < degree(annihilator)``

    Args:
        u: The original matrix
        decomposition: The claimed decomposition
        parallel: Run the checks on a thread pool
        max_workers: Pool size when parallel

    Returns:
        VerificationReport whose checks are always in CHECK_ORDER
    """
    d, n = decomposition.d, decomposition.n
    index_holder: Dict[str, Optional[int]] = {"index": None}

    def check_nilpotency() -> bool:
        index = is_nilpotent(n)
        index_holder["index"] = index
        return index is not None and index <= decomposition.multiplicity

    checks: Dict[str, Callable[[], bool]] = {
        "sum": lambda: d + n == u,
        "commutation": lambda: d @ n == n @ d,
        "nilpotency": check_nilpotency,
        "separability": lambda: is_separable(decomposition.p_tilde)
        and eval_poly_at_matrix(decomposition.p_tilde, d).is_zero(),
        "certificate": lambda: decomposition.h.degree < decomposition.annihilator.degree
        and eval_poly_at_matrix(decomposition.h, u) == d,
    }

    if parallel:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            futures = {name: pool.submit(_guarded(checks[name])) for name in CHECK_ORDER}
            results = {name: futures[name].result() for name in CHECK_ORDER}
    else:
        results = {name: _guarded(checks[name])() for name in CHECK_ORDER}

    report = VerificationReport(
        checks=results,
        nilpotency_index=index_holder["index"],
        multiplicity=decomposition.multiplicity,
    )
    if report.passed:
        logger.info("Decomposition verified")
    else:
        logger.info(f"Decomposition failed checks: {', '.join(report.failures)}")
    return report
