"""
Custom exceptions for Chevalley
"""


class ChevalleyException(Exception):
    """Base exception for all Chevalley errors"""

    pass


class ConfigurationError(ChevalleyException):
    """Raised when there's a configuration or command-line error"""

    pass


class FormatError(ChevalleyException):
    """Raised when a rational literal, polynomial or matrix document cannot be parsed"""

    def __init__(self, message: str, source: str = ""):
        super().__init__(f"{source}: {message}" if source else message)
        self.source = source


class AlgebraError(ChevalleyException):
    """Raised when a mathematical precondition of an operation does not hold"""

    pass


class ZeroPolynomialError(AlgebraError, ZeroDivisionError):
    """Raised on division by the zero polynomial or gcd(0, 0)"""

    pass


class ConstantPolynomialError(AlgebraError):
    """Raised when an operation needs a nonconstant polynomial"""

    pass


class NotCoprimeError(AlgebraError):
    """Raised when a modular inverse is requested for a non-unit"""

    def __init__(self, message: str, gcd=None):
        super().__init__(message)
        self.gcd = gcd


class DimensionMismatchError(AlgebraError):
    """Raised when matrix dimensions do not agree"""

    pass


class SingularMatrixError(AlgebraError, ZeroDivisionError):
    """Raised when a singular matrix is inverted"""

    pass


class InvalidAnnihilatorError(AlgebraError):
    """Raised when a supplied polynomial does not annihilate the matrix"""

    pass


class NotNilpotentError(AlgebraError):
    """Raised when a nilpotent matrix is required"""

    pass


class DuplicateRootError(AlgebraError):
    """Raised when a congruence system lists the same root twice"""

    pass


class ConvergenceError(ChevalleyException):
    """Raised when the Newton iteration overruns its guaranteed step bound"""

    def __init__(self, message: str, iterations: int = 0, bound: int = 0):
        super().__init__(message)
        self.iterations = iterations
        self.bound = bound
