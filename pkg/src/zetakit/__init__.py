"""Exact and high-precision tools for even zeta values, Bernoulli-type numbers,
layered determinants, Ramanujan polynomials and Li coefficients."""
from __future__ import annotations

from .exactcore import PiScaled, RatPoly, RatSeries, format_rational, parse_rational
from .hpnum import HPComplex, PrecisionError
from .report import Case, Report

__version__ = "0.1.0"

__all__ = [
    "Case",
    "HPComplex",
    "PiScaled",
    "PrecisionError",
    "RatPoly",
    "RatSeries",
    "Report",
    "format_rational",
    "parse_rational",
]
