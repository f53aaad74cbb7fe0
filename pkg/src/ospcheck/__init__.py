"""Exact checks of the R-matrix / Drinfeld current correspondence for U_q(osp(1|2)^(1))."""

from .arith import BACKEND, RationalFunction, parse

__version__ = "0.1.0"

__all__ = ["BACKEND", "RationalFunction", "parse", "__version__"]
