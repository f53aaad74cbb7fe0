"""Exact arithmetic: sparse polynomials and canonical rational functions."""

from . import poly
from .poly import VARS, BACKEND
from .rational import RationalFunction, ZERO, ONE, normalize
from .parse import parse, format_rational, ParseError
from .poles import (
    Pole, PoleDecomposition, UnsupportedPoleError, find_poles, partial_fractions,
    residue, pole_base, current_pole_base,
)

Scalar = RationalFunction


def serialize(r):
    return format_rational(r)


def substitute(r, mapping):
    return RationalFunction.coerce(r).substitute(mapping)


__all__ = [
    "poly", "VARS", "BACKEND", "RationalFunction", "Scalar", "ZERO", "ONE", "normalize",
    "parse", "serialize", "format_rational", "ParseError", "Pole", "PoleDecomposition",
    "UnsupportedPoleError", "find_poles", "partial_fractions", "residue", "pole_base",
    "current_pole_base", "substitute",
]
