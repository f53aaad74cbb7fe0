"""Canonical rational functions with integer coefficients."""

from fractions import Fraction
import math

from . import poly as P


class RationalFunction:
    """num/den in lowest terms, den with positive leading coefficient.

    Two equal rational functions always have identical (num, den), so
    equality and hashing are structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _canonical=False):
        if den is None:
            den = P.ONE
        if not _canonical:
            num, den = _canonicalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def from_int(cls, n):
        return cls(P.const(n), P.ONE, _canonical=True)

    @classmethod
    def from_fraction(cls, q):
        q = Fraction(q)
        return cls(P.const(q.numerator), P.const(q.denominator), _canonical=True)

    @classmethod
    def var(cls, name, power=1):
        if power >= 0:
            return cls(P.variable(name, power), P.ONE, _canonical=True)
        return cls(P.ONE, P.variable(name, -power), _canonical=True)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, int):
            return cls.from_int(x)
        if isinstance(x, Fraction):
            return cls.from_fraction(x)
        if isinstance(x, str):
            from .parse import parse
            return parse(x)
        raise TypeError("cannot convert %r to RationalFunction" % (x,))

    # predicates ---------------------------------------------------------
    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_one(self):
        return self.num == P.ONE and self.den == P.ONE

    def is_constant(self):
        return P.is_const(self.num) and P.is_const(self.den)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("%s is not constant" % self)
        return Fraction(self.num.get(0, 0), self.den[0])

    def free_symbols(self):
        return P.free_symbols(self.num) | P.free_symbols(self.den)

    def depends_on(self, var):
        i = P.var_index(var)
        return P.deg_in(self.num, i) > 0 or P.deg_in(self.den, i) > 0

    def is_laurent_in(self, vars_):
        """True when the denominator is a monomial in vars_ times a factor free of them."""
        idx = [P.var_index(v) for v in vars_]
        if not any(P.deg_in(self.den, i) > 0 for i in idx):
            return True
        m = P.monomial_gcd(self.den)
        rest = P.unshift(self.den, m)
        return not any(P.deg_in(rest, i) > 0 for i in idx)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        a, b, c, d = self.num, self.den, other.num, other.den
        if b == d:
            return RationalFunction(P.add(a, c), b)
        if P.is_const(b) and P.is_const(d):
            bv, dv = b[0], d[0]
            g = math.gcd(bv, dv)
            num = P.add(P.scale(a, dv // g), P.scale(c, bv // g))
            return RationalFunction(num, P.const(bv // g * dv))
        g = P.gcd(b, d)
        if g == P.ONE:
            num = P.add(P.mul(a, d), P.mul(c, b))
            if not num:
                return ZERO
            return RationalFunction(num, P.mul(b, d), _canonical=True)
        bg = P.divexact(b, g)
        dg = P.divexact(d, g)
        num = P.add(P.mul(a, dg), P.mul(c, bg))
        if not num:
            return ZERO
        den = P.mul(bg, d)
        h = P.gcd(num, g)
        if h != P.ONE:
            num, den = P.divexact(num, h), P.divexact(den, h)
        return RationalFunction(num, den, _canonical=True)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(P.neg(self.num), self.den, _canonical=True)

    def __sub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return ZERO
        if other.is_one():
            return self
        if self.is_one():
            return other
        a, b, c, d = self.num, self.den, other.num, other.den
        g1 = P.gcd(a, d)
        g2 = P.gcd(c, b)
        if g1 != P.ONE:
            a, d = P.divexact(a, g1), P.divexact(d, g1)
        if g2 != P.ONE:
            c, b = P.divexact(c, g2), P.divexact(b, g2)
        num = P.mul(a, c)
        den = P.mul(b, d)
        if P.leading_coeff(den) < 0:
            num, den = P.neg(num), P.neg(den)
        return RationalFunction(num, den, _canonical=True)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        num, den = self.den, self.num
        if P.leading_coeff(den) < 0:
            num, den = P.neg(num), P.neg(den)
        return RationalFunction(num, den, _canonical=True)

    def __truediv__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        num = P.power(self.num, n)
        den = P.power(self.den, n)
        return RationalFunction(num, den, _canonical=True)

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            other = _lift(other)
            if other is NotImplemented:
                return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.num.items()), frozenset(self.den.items())))
        return self._hash

    # calculus and substitution -----------------------------------------
    def derivative(self, var):
        i = P.var_index(var)
        dn = P.derivative(self.num, i)
        dd = P.derivative(self.den, i)
        if not dd:
            return RationalFunction(dn, self.den)
        num = P.sub(P.mul(dn, self.den), P.mul(self.num, dd))
        return RationalFunction(num, P.mul(self.den, self.den))

    def substitute(self, mapping):
        """Simultaneous substitution {var: RationalFunction or number}."""
        items = [(P.var_index(v), RationalFunction.coerce(r)) for v, r in mapping.items()]
        items = [(i, r) for i, r in items if P.deg_in(self.num, i) > 0 or P.deg_in(self.den, i) > 0]
        if not items:
            return self
        if len(items) == 1:
            i, r = items[0]
            n, dn = P.substitute(self.num, i, r.num, r.den)
            d, dd = P.substitute(self.den, i, r.num, r.den)
            # n / den^dn divided by d / den^dd
            if dn >= dd:
                return RationalFunction(n, P.mul(d, P.power(r.den, dn - dd)))
            return RationalFunction(P.mul(n, P.power(r.den, dd - dn)), d)
        # simultaneous: rename targets to fresh slots first is not possible
        # with a fixed variable set, so evaluate term by term
        return _subs_terms(self.num, items) / _subs_terms(self.den, items)

    def rename(self, mapping):
        """Rename variables simultaneously, e.g. {"z": "w", "w": "z"}."""
        perm = {P.var_index(a): P.var_index(b) for a, b in mapping.items() if a != b}
        if not perm:
            return self
        present = {P.var_index(v) for v in self.free_symbols()}
        if any(j in present and j not in perm for j in perm.values()):
            return self.substitute({a: RationalFunction.var(b) for a, b in mapping.items()})
        num = P.rename_key_map(self.num, perm)
        den = P.rename_key_map(self.den, perm)
        if P.leading_coeff(den) < 0:
            num, den = P.neg(num), P.neg(den)
        return RationalFunction(num, den, _canonical=True)

    def denominator_symbols(self):
        """Variables occurring in the non-monomial part of the denominator."""
        rest = P.unshift(self.den, P.monomial_gcd(self.den))
        return P.free_symbols(rest)

    def evaluate(self, values):
        """Exact value at a point {var: Fraction}; raises on a pole."""
        vals = [Fraction(0)] * 8
        for v, x in values.items():
            vals[P.var_index(v)] = Fraction(x)
        d = P.evaluate_all(self.den, vals)
        if d == 0:
            raise ZeroDivisionError("pole at %r" % (values,))
        return Fraction(P.evaluate_all(self.num, vals)) / d

    def numerator(self):
        return RationalFunction(self.num, P.ONE, _canonical=True)

    def denominator(self):
        return RationalFunction(self.den, P.ONE, _canonical=True)

    # text ---------------------------------------------------------------
    def __str__(self):
        from .parse import format_rational
        return format_rational(self)

    def __repr__(self):
        return "RationalFunction(%r)" % str(self)


def _subs_terms(p, items):
    out = ZERO
    imap = dict(items)
    for k, c in p.items():
        term = RationalFunction.from_int(c)
        rest = k
        for i, e in enumerate(P.unpack(k)):
            if e and i in imap:
                term = term * imap[i] ** e
                rest -= e << (8 * i)
        out = out + term * RationalFunction({rest: 1}, P.ONE, _canonical=True)
    return out


def _lift(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, int):
        return RationalFunction.from_int(x)
    if isinstance(x, Fraction):
        return RationalFunction.from_fraction(x)
    return NotImplemented


def _canonicalize(num, den):
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return {}, P.ONE
    if P.is_const(den):
        g = math.gcd(P.content(num), den[0])
        if den[0] < 0:
            g = -g
        if g != 1:
            num = {k: c // g for k, c in num.items()}
            den = {0: den[0] // g}
        return num, den
    g = P.gcd(num, den)
    if g != P.ONE:
        num = P.divexact(num, g)
        den = P.divexact(den, g)
    if P.leading_coeff(den) < 0:
        num, den = P.neg(num), P.neg(den)
    return num, den


ZERO = RationalFunction({}, P.ONE, _canonical=True)
ONE = RationalFunction(P.ONE, P.ONE, _canonical=True)


def normalize(num, den=None):
    """Canonical form of num/den given as polynomial dicts or rational functions."""
    if isinstance(num, RationalFunction) or isinstance(den, RationalFunction):
        num = RationalFunction.coerce(num)
        return num if den is None else num / RationalFunction.coerce(den)
    return RationalFunction(num, den)
