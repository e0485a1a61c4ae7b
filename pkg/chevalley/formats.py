"""
Chevalley - Output Documents

Structured YAML documents emitted and consumed by the command line. Matrix
fields are literal blocks holding the matrix text form, so the block content
is byte-for-byte the matrix document; polynomials use the coefficient-list
text form.
"""

import logging
from typing import Any, Dict, Mapping, Optional

import yaml

from .core import Decomposition, MultiplicativeDecomposition, NewtonTrace
from .exceptions import AlgebraError, FormatError
from .matrix import SquareMatrix, format_matrix, parse_matrix
from .polynomial import Polynomial, format_polynomial, parse_polynomial, separable_part
from .verification import VerificationReport

logger = logging.getLogger(__name__)

DECOMPOSITION_FIELDS = (
    "d",
    "n",
    "h",
    "annihilator",
    "p_tilde",
    "p_bar",
    "iterations",
    "verification",
)

_WIDTH = 2**30


class LiteralBlock(str):
    """String emitted in YAML literal block style"""


class DocumentDumper(yaml.SafeDumper):
    pass


def _represent_literal(dumper: yaml.SafeDumper, data: LiteralBlock) -> yaml.ScalarNode:
    return dumper.represent_scalar("tag:yaml.org,2002:str", str(data), style="|")


DocumentDumper.add_representer(LiteralBlock, _represent_literal)


def matrix_block(m: SquareMatrix) -> LiteralBlock:
    """Matrix text form with its trailing newline, ready for a literal block"""
    return LiteralBlock(format_matrix(m) + "\n")


def dump_document(document: Mapping[str, Any]) -> str:
    """Serialize a document mapping, keeping field order"""
    return yaml.dump(
        dict(document),
        Dumper=DocumentDumper,
        sort_keys=False,
        default_flow_style=False,
        allow_unicode=True,
        width=_WIDTH,
    )


def load_document(text: str, source: str = "") -> Dict[str, Any]:
    """
    Parse a YAML document that must be a mapping

    Raises:
        FormatError: On invalid YAML or a non-mapping top level
    """
    try:
        document = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise FormatError(f"invalid YAML document: {exc}", source) from exc
    if not isinstance(document, dict):
        raise FormatError("document must be a mapping", source)
    return document


# ============================================
# Builders
# ============================================


def trace_intermediates(trace: NewtonTrace) -> Dict[str, Any]:
    return {
        "p": format_polynomial(trace.p),
        "p_tilde": format_polynomial(trace.p_tilde),
        "p_bar": format_polynomial(trace.p_bar),
        "q": None if trace.q is None else format_polynomial(trace.q),
        "iterates": [format_polynomial(h) for h in trace.iterates],
    }


def decomposition_document(
    decomposition: Decomposition,
    report: Optional[VerificationReport] = None,
    trace: Optional[NewtonTrace] = None,
) -> Dict[str, Any]:
    """Fixed fields first, then ``intermediates`` when a trace is given"""
    document: Dict[str, Any] = {
        "d": matrix_block(decomposition.d),
        "n": matrix_block(decomposition.n),
        "h": format_polynomial(decomposition.h),
        "annihilator": format_polynomial(decomposition.annihilator),
        "p_tilde": format_polynomial(decomposition.p_tilde),
        "p_bar": format_polynomial(decomposition.p_bar),
        "iterations": decomposition.iterations,
        "verification": None if report is None else report.to_dict(),
    }
    if trace is not None:
        document["intermediates"] = trace_intermediates(trace)
    return document


def poly_document(
    trace: NewtonTrace, gcd: Polynomial, emit_intermediates: bool = False
) -> Dict[str, Any]:
    document: Dict[str, Any] = {
        "p": format_polynomial(trace.p),
        "gcd": format_polynomial(gcd),
        "p_tilde": format_polynomial(trace.p_tilde),
        "p_bar": format_polynomial(trace.p_bar),
        "q": None if trace.q is None else format_polynomial(trace.q),
        "multiplicity": trace.multiplicity,
        "iteration_bound": trace.bound,
    }
    if emit_intermediates:
        document["iterates"] = [format_polynomial(h) for h in trace.iterates]
    return document


def multiplicative_document(result: MultiplicativeDecomposition) -> Dict[str, Any]:
    return {"d": matrix_block(result.d), "v": matrix_block(result.v)}


def verification_document(report: VerificationReport) -> Dict[str, Any]:
    return {"verification": report.to_dict()}


# ============================================
# Readers
# ============================================


def _field(document: Mapping[str, Any], name: str, source: str) -> Any:
    if name not in document or document[name] is None:
        raise FormatError(f"missing field '{name}'", source)
    return document[name]


def _polynomial_field(document: Mapping[str, Any], name: str, source: str) -> Polynomial:
    try:
        return parse_polynomial(str(_field(document, name, source)))
    except FormatError as exc:
        raise FormatError(f"field '{name}': {exc}", source) from exc


def _matrix_field(document: Mapping[str, Any], name: str, source: str) -> SquareMatrix:
    try:
        return parse_matrix(str(_field(document, name, source)))
    except FormatError as exc:
        raise FormatError(f"field '{name}': {exc}", source) from exc


def read_decomposition(text: str, source: str = "") -> Decomposition:
    """
    Rebuild a Decomposition from its document

    The multiplicity is recomputed from the annihilator.

    Raises:
        FormatError: On a missing, malformed or inconsistent field
    """
    document = load_document(text, source)
    iterations = _field(document, "iterations", source)
    if isinstance(iterations, bool) or not isinstance(iterations, int):
        raise FormatError(f"field 'iterations' must be an integer, got {iterations!r}", source)

    annihilator = _polynomial_field(document, "annihilator", source)
    try:
        multiplicity = separable_part(annihilator).multiplicity
        decomposition = Decomposition(
            d=_matrix_field(document, "d", source),
            n=_matrix_field(document, "n", source),
            h=_polynomial_field(document, "h", source),
            iterations=iterations,
            annihilator=annihilator,
            p_tilde=_polynomial_field(document, "p_tilde", source),
            p_bar=_polynomial_field(document, "p_bar", source),
            multiplicity=multiplicity,
        )
    except AlgebraError as exc:
        raise FormatError(f"inconsistent decomposition document: {exc}", source) from exc
    logger.debug(f"Read {decomposition.dimension}x{decomposition.dimension} decomposition")
    return decomposition
