"""Koornwinder-Macdonald multivariable Askey-Wilson polynomials, built from
their commuting difference operators and checked exactly over the rationals."""

from .params import ConfigError, ParameterSet, dual, is_self_dual, spectral_point, validate
from .polys import Family, PolynomialRecord

__all__ = [
    "ConfigError",
    "ParameterSet",
    "validate",
    "dual",
    "is_self_dual",
    "spectral_point",
    "Family",
    "PolynomialRecord",
]
