"""
Chevalley - Command Line Interface

Batch front-end: read a matrix file, run a decomposition or one of its
applications, and emit the result as a text document. Documents go to
standard output (or ``--output``); messages and logs go to standard error.

Exit codes:
    0  success
    1  verification failure
    2  parse, format, configuration or file error
    3  mathematical precondition failure
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import configure_logging, get_version
from .applications import exp_nilpotent_factor, format_poly_matrix, matrix_power
from .config import CliConfig, ConfigManager
from .core import (
    jordan_chevalley,
    multiplicative,
    newton_quotient_trace,
    resolve_annihilator,
)
from .exceptions import ChevalleyException, ConfigurationError, FormatError
from .formats import (
    decomposition_document,
    dump_document,
    multiplicative_document,
    poly_document,
    read_decomposition,
    verification_document,
)
from .matrix import SquareMatrix, format_matrix, parse_matrix
from .polynomial import Polynomial, parse_polynomial, poly_derivative, poly_gcd
from .verification import verify_decomposition

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_FORMAT_ERROR = 2
EXIT_ALGEBRA_ERROR = 3


# ============================================
# CLI Utilities
# ============================================


class Colors:
    """ANSI color codes for terminal output"""

    GREEN = "\033[92m"
    RED = "\033[91m"
    END = "\033[0m"


def print_success(message: str) -> None:
    """Print success message"""
    print(f"{Colors.GREEN}✓{Colors.END} {message}", file=sys.stderr)


def print_error(message: str) -> None:
    """Print error message"""
    print(f"{Colors.RED}✗{Colors.END} {message}", file=sys.stderr)


def read_text(path: Path) -> str:
    """
    Read a UTF-8 input file, with or without a byte order mark

    Raises:
        FormatError: If the file cannot be read or decoded
    """
    try:
        return path.read_text(encoding="utf-8-sig")
    except (OSError, UnicodeDecodeError) as exc:
        raise FormatError(f"cannot read file: {exc}", str(path)) from exc


# ============================================
# CLI Command Handlers
# ============================================


class ChevalleyCLI:
    """Command-line interface for Chevalley"""

    def __init__(self, config: Optional[ConfigManager] = None):
        self.config = config or ConfigManager()

    def run(self, invocation: CliConfig) -> int:
        """Dispatch one invocation and return its exit status"""
        handlers = {
            "decompose": self.run_decompose,
            "poly": self.run_poly,
            "verify": self.run_verify,
            "power": self.run_power,
            "multiplicative": self.run_multiplicative,
            "exp-nilpotent": self.run_exp_nilpotent,
        }
        return handlers[invocation.command](invocation)

    # ------------------------------------------------------------------
    # Inputs and outputs
    # ------------------------------------------------------------------

    def _load_matrix(self, invocation: CliConfig) -> SquareMatrix:
        path = invocation.input_path
        try:
            u = parse_matrix(read_text(path))
        except FormatError as exc:
            raise FormatError(str(exc), str(path)) from exc
        logger.info(f"Loaded {u.dimension}x{u.dimension} matrix from {path}")
        return u

    def _load_annihilator(self, invocation: CliConfig) -> Optional[Polynomial]:
        path = invocation.annihilator_path
        if path is None:
            return None
        try:
            return parse_polynomial(read_text(path))
        except FormatError as exc:
            raise FormatError(str(exc), str(path)) from exc

    def _emit(self, text: str, invocation: CliConfig) -> None:
        if invocation.output_path is None:
            sys.stdout.write(text)
            sys.stdout.flush()
            return
        try:
            invocation.output_path.parent.mkdir(parents=True, exist_ok=True)
            invocation.output_path.write_text(text, encoding="utf-8")
        except OSError as exc:
            raise FormatError(f"cannot write file: {exc}", str(invocation.output_path)) from exc
        print_success(f"Wrote {invocation.output_path}")

    # ------------------------------------------------------------------
    # Commands
    # ------------------------------------------------------------------

    def run_decompose(self, invocation: CliConfig) -> int:
        """Decompose the input and emit the decomposition document"""
        u = self._load_matrix(invocation)
        annihilator = self._load_annihilator(invocation)
        decomposition = jordan_chevalley(
            u, annihilator, **self.config.get_decomposition_options()
        )
        report = verify_decomposition(
            u, decomposition, **self.config.get_verification_options()
        )
        trace = (
            newton_quotient_trace(decomposition.annihilator)
            if invocation.emit_intermediates
            else None
        )
        self._emit(dump_document(decomposition_document(decomposition, report, trace)), invocation)
        if not report.passed:
            print_error(f"Decomposition failed checks: {', '.join(report.failures)}")
            return EXIT_VERIFICATION_FAILED
        return EXIT_OK

    def run_poly(self, invocation: CliConfig) -> int:
        """Emit the polynomial data of the Newton run"""
        u = self._load_matrix(invocation)
        p = resolve_annihilator(
            u, self._load_annihilator(invocation), self.config.get("decomposition.annihilator")
        )
        trace = newton_quotient_trace(p)
        gcd = poly_gcd(trace.p, poly_derivative(trace.p))
        self._emit(
            dump_document(poly_document(trace, gcd, invocation.emit_intermediates)), invocation
        )
        return EXIT_OK

    def run_verify(self, invocation: CliConfig) -> int:
        """Verify a supplied or freshly computed decomposition"""
        u = self._load_matrix(invocation)
        if invocation.decomposition_path is not None:
            path = invocation.decomposition_path
            decomposition = read_decomposition(read_text(path), str(path))
        else:
            decomposition = jordan_chevalley(
                u, self._load_annihilator(invocation), **self.config.get_decomposition_options()
            )
        report = verify_decomposition(
            u, decomposition, **self.config.get_verification_options()
        )
        self._emit(dump_document(verification_document(report)), invocation)
        if not report.passed:
            print_error(f"Verification failed: {', '.join(report.failures)}")
            return EXIT_VERIFICATION_FAILED
        print_success("Decomposition verified")
        return EXIT_OK

    def run_power(self, invocation: CliConfig) -> int:
        """Emit the input raised to the requested exponent"""
        u = self._load_matrix(invocation)
        assert invocation.exponent is not None  # nosec
        self._emit(format_matrix(matrix_power(u, invocation.exponent)) + "\n", invocation)
        return EXIT_OK

    def run_multiplicative(self, invocation: CliConfig) -> int:
        """Emit D and V with U = DV"""
        u = self._load_matrix(invocation)
        result = multiplicative(u, **self.config.get_decomposition_options())
        self._emit(dump_document(multiplicative_document(result)), invocation)
        return EXIT_OK

    def run_exp_nilpotent(self, invocation: CliConfig) -> int:
        """Emit the polynomial matrix exp(tN) of a nilpotent input"""
        n = self._load_matrix(invocation)
        self._emit(format_poly_matrix(exp_nilpotent_factor(n)) + "\n", invocation)
        return EXIT_OK


# ============================================
# Main Entry Point
# ============================================


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chevalley",
        description="Chevalley - Exact Jordan-Chevalley decomposition of rational matrices",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Decompose a matrix and write the document to a file
  chevalley decompose u.txt -o decomposition.yaml

  # Show p, gcd(p, p'), the separable part, m and the Newton bound
  chevalley poly u.txt --emit-intermediates

  # Check a decomposition document against its matrix
  chevalley verify u.txt --decomposition decomposition.yaml

  # Exact powers and exponential factors
  chevalley power u.txt -m 20
  chevalley multiplicative u.txt
  chevalley exp-nilpotent n.txt
        """,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {get_version()}")
    parser.add_argument("--config", metavar="FILE", help="YAML configuration file")
    parser.add_argument("--verbose", "-v", action="store_true", help="Enable verbose logging")

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    def command(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("input", help="Matrix file")
        sub.add_argument("--output", "-o", metavar="FILE", help="Output file (default: stdout)")
        return sub

    decompose_parser = command("decompose", "Compute U = D + N")
    poly_parser = command("poly", "Show the polynomial data of the Newton run")
    verify_parser = command("verify", "Verify a decomposition")
    power_parser = command("power", "Compute U^m through the decomposition")
    command("multiplicative", "Compute U = DV with V unipotent")
    command("exp-nilpotent", "Compute exp(tN) for nilpotent N")

    for sub in (decompose_parser, poly_parser, verify_parser):
        sub.add_argument(
            "--annihilator", metavar="FILE", help="Polynomial file overriding the annihilator"
        )
    for sub in (decompose_parser, poly_parser):
        sub.add_argument(
            "--emit-intermediates",
            action="store_true",
            help="Include p, p~, p-bar, q and every Newton iterate",
        )
    verify_parser.add_argument(
        "--decomposition", metavar="FILE", help="Decomposition document to verify"
    )
    power_parser.add_argument(
        "--exponent", "-m", type=int, required=True, help="Non-negative exponent"
    )
    return parser


def main(argv: Optional[Sequence[str]] = None) -> None:
    """Main CLI entry point"""
    parser = build_parser()
    args = parser.parse_args(argv)

    # Setup logging
    if args.verbose:
        configure_logging(logging.DEBUG)
    else:
        configure_logging(logging.WARNING, fmt="%(levelname)s: %(message)s")

    if not args.command:
        parser.print_help(sys.stderr)
        sys.exit(EXIT_FORMAT_ERROR)

    try:
        config = ConfigManager(args.config)
        if not args.verbose:
            logging.getLogger("chevalley").setLevel(config.log_level)

        invocation = CliConfig(
            command=args.command,
            input_path=args.input,
            output_path=args.output,
            exponent=getattr(args, "exponent", None),
            emit_intermediates=getattr(args, "emit_intermediates", False),
            annihilator_path=getattr(args, "annihilator", None),
            decomposition_path=getattr(args, "decomposition", None),
        )
        status = ChevalleyCLI(config).run(invocation)

    except (FormatError, ConfigurationError) as e:
        print_error(f"Error: {e}")
        status = EXIT_FORMAT_ERROR
    except ChevalleyException as e:
        # AlgebraError and ConvergenceError
        print_error(f"Error: {e}")
        status = EXIT_ALGEBRA_ERROR

    sys.exit(status)


if __name__ == "__main__":
    main()
