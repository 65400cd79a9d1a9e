"""Positive real zeros of Birch-type polynomial systems via circuit polynomials.

Exact rational polynomials and Newton polytopes, AM-GM circuit certificates,
monomial normalizations, and a certifier that decides which existence result
(if any) applies to a given system.
"""

from .certify import BirchSystem, Certificate, RecognitionError, Verdict, certify, recognize, validate
from .circuit import CircuitCover, CircuitPolynomial, NotCircuitError, cover_decompose
from .minimize import Conclusion, MinimizeReport, check_and_minimize
from .orthant import OrthantVerdict, Status, decide
from .poly import ParseError, Polynomial, descartes_bound, parse
from .polytope import NewtonPolytope, hull

__version__ = "0.1.0"

__all__ = [
    "BirchSystem",
    "Certificate",
    "CircuitCover",
    "CircuitPolynomial",
    "Conclusion",
    "MinimizeReport",
    "NewtonPolytope",
    "NotCircuitError",
    "OrthantVerdict",
    "ParseError",
    "Polynomial",
    "RecognitionError",
    "Status",
    "Verdict",
    "certify",
    "check_and_minimize",
    "cover_decompose",
    "decide",
    "descartes_bound",
    "hull",
    "parse",
    "recognize",
    "validate",
]
