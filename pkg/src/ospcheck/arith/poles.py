"""Pole finding, partial fractions and residues in one variable.

Poles must sit at ``var = 0`` or ``var = ±b^k * r`` where ``b`` is the pole
base (the symbol ``t`` unless a numeric specialisation is active) and ``r``
is ``1`` or another variable.  Anything else raises UnsupportedPoleError.
"""

import contextlib
import contextvars
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from . import poly as P
from .rational import RationalFunction, ONE, ZERO

_POLE_BASE = contextvars.ContextVar("pole_base", default=None)


class UnsupportedPoleError(ValueError):
    """Denominator has a factor outside the supported pole geometry."""


@contextlib.contextmanager
def pole_base(value):
    """Use a numeric pole base while t is specialised to ``value``."""
    tok = _POLE_BASE.set(None if value is None else Fraction(value))
    try:
        yield
    finally:
        _POLE_BASE.reset(tok)


def current_pole_base():
    return _POLE_BASE.get()


@dataclass(frozen=True)
class Pole:
    location: RationalFunction
    order: int
    coefficient: RationalFunction


@dataclass(frozen=True)
class PoleDecomposition:
    var: str
    polynomial: RationalFunction
    poles: tuple

    def recombine(self):
        v = RationalFunction.var(self.var)
        out = self.polynomial
        for p in self.poles:
            out = out + p.coefficient / (v - p.location) ** p.order
        return out

    def locations(self):
        seen = []
        for p in self.poles:
            if p.location not in seen:
                seen.append(p.location)
        return seen


_PRIMES = [1009, 1013, 1019, 1021, 1031, 1033, 1039, 1049]


def _candidate_factor(i, sign, k, r, base):
    """Integer polynomial vanishing exactly at var_i = sign * base^k * r."""
    v = P.variable(P.VARS[i])
    rp = P.ONE if r is None else P.variable(r)
    if base is None:
        tk = P.variable("t", abs(k)) if k else P.ONE
        if k >= 0:
            return P.sub(v, P.scale(P.mul(tk, rp), sign))
        return P.sub(P.mul(tk, v), P.scale(rp, sign))
    bk = base ** k
    return P.sub(P.scale(v, bk.denominator), P.scale(rp, sign * bk.numerator))


def _location(sign, k, r, base):
    rr = ONE if r is None else RationalFunction.var(r)
    if base is None:
        return RationalFunction.var("t", k) * rr * sign
    return RationalFunction.from_fraction(sign * base ** k) * rr


def find_poles(den, var):
    """Return ([(location, multiplicity)], cofactor) for a denominator polynomial.

    The location 0 is included when var divides den.  The cofactor is free of var.
    """
    i = P.var_index(var)
    if P.deg_in(den, i) <= 0:
        return [], den
    base = _POLE_BASE.get()
    out = []
    e0 = P.mindeg_in(den, i)
    if e0 > 0:
        out.append((ZERO, e0))
        den = P.unshift(den, e0 << (8 * i))
    if P.deg_in(den, i) <= 0:
        return out, den
    others = [P.VARS[j] for j in P.used_vars(den) if j != i and P.VARS[j] != "t"]
    point = [Fraction(_PRIMES[j]) for j in range(8)]
    tidx = P.VAR_INDEX["t"]
    if base is None:
        kmax = max(P.deg_in(den, tidx), 0) + 2
    else:
        kmax = _numeric_kmax(den, base)
    tval = point[tidx] if base is None else None

    def univariate(d):
        pt = list(point)
        pt[i] = Fraction(0)
        uni = {}
        for e, c in P.coeffs_in(d, i).items():
            uni[e] = P.evaluate_all(c, pt)
        return [uni.get(e, 0) for e in range(max(uni) + 1)]

    uni = univariate(den)
    for r in [None] + others:
        rval = Fraction(1) if r is None else point[P.VAR_INDEX[r]]
        for k in range(-kmax, kmax + 1):
            for sign in (1, -1):
                if len(uni) <= 1:
                    return out, den
                scale = (tval ** k) if base is None else base ** k
                rho = sign * scale * rval
                acc = Fraction(0)
                for c in reversed(uni):
                    acc = acc * rho + c
                if acc != 0:
                    continue
                fac = P.primitive(_candidate_factor(i, sign, k, r, base))[1]
                mult = 0
                while True:
                    q = P.divexact(den, fac)
                    if q is None:
                        break
                    den = q
                    mult += 1
                if mult:
                    out.append((_location(sign, k, r, base), mult))
                    uni = univariate(den)
    if P.deg_in(den, i) > 0:
        from .parse import format_poly
        raise UnsupportedPoleError(
            "denominator factor %s is not of the form %s - c*r" % (format_poly(den), var))
    return out, den


def _numeric_kmax(den, base):
    b = abs(base)
    if b == 1:
        return 0
    # crude bound from coefficient sizes
    big = max(abs(c) for c in den.values())
    k = 1
    lim = Fraction(big) ** 2 * 4
    while b ** k < lim and (1 / b) ** k < lim and k < 400:
        k += 1
    return k


def partial_fractions(r, var):
    """Decompose r as a polynomial in var plus sum c / (var - p)^k."""
    r = RationalFunction.coerce(r)
    i = P.var_index(var)
    poles, _ = find_poles(r.den, var)
    v = RationalFunction.var(var)
    out = []
    rest = r
    for loc, mult in poles:
        g = r * (v - loc) ** mult
        deriv = g
        for j in range(mult):
            c = deriv.substitute({var: loc}) / factorial(j) if j else deriv.substitute({var: loc})
            order = mult - j
            if c:
                out.append(Pole(loc, order, c))
                rest = rest - c / (v - loc) ** order
            if j + 1 < mult:
                deriv = deriv.derivative(var)
    if P.deg_in(rest.den, i) > 0:
        raise ArithmeticError("partial fraction remainder still has poles in %s" % var)
    out.sort(key=lambda p: (str(p.location), p.order))
    return PoleDecomposition(var, rest, tuple(out))


def residue(r, var, pole, order=1):
    """Coefficient of (var - pole)^(-order) in the Laurent expansion at pole."""
    pole = RationalFunction.coerce(pole)
    for p in partial_fractions(r, var).poles:
        if p.location == pole and p.order == order:
            return p.coefficient
    return ZERO
