"""The 9x9 trigonometric R-matrix on V (x) V, V of parity (0,1,0).

Everything is written in t with q = t^2, so the half-integer powers of q
that appear in the entries are ordinary powers of t.  Entries are functions
of the two spectral variables z, w and depend on them only through z/w.
"""

from fractions import Fraction

from .arith import RationalFunction, parse
from .linalg import V3, GradedMatrix, embed, graded_flip

ENTRY_NAMES = ("a", "b", "c", "d", "e", "f", "g", "r", "s")

# q = t^2, q^(1/2) = t, D = (z q^2 - w)(z q^3 - w)
_D = "((z*t^4 - w)*(z*t^6 - w))"
ENTRY_TEXT = {
    "a": "t^2*(z - w)/(z*t^4 - w)",
    "b": "w*(t^4 - 1)/(z*t^4 - w)",
    "c": "t*w*(t^4 - 1)*(z - w)/" + _D,
    "d": "t^4*(z - w)*(z*t^2 - w)/" + _D,
    "e": "t^2*(z - w)/(z*t^4 - w) - z*w*(t^4 - 1)*(t^6 - 1)/" + _D,
    "f": "z*(t^4 - 1)/(z*t^4 - w)",
    "g": "-t^5*z*(t^4 - 1)*(z - w)/" + _D,
    "r": "w*(t^4 - 1)*(t^6*z + t^2*(z - w) - w)/" + _D,
    "s": "z*(t^4 - 1)*(t^6*z + t^4*(z - w) - w)/" + _D,
}

# nonzero pattern, rows and columns indexed 3*(i-1)+k
LAYOUT = (
    ((0, 0), "1"),
    ((1, 1), "a"), ((1, 3), "b"),
    ((2, 2), "d"), ((2, 4), "c"), ((2, 6), "r"),
    ((3, 1), "f"), ((3, 3), "a"),
    ((4, 2), "g"), ((4, 4), "e"), ((4, 6), "c"),
    ((5, 5), "a"), ((5, 7), "b"),
    ((6, 2), "s"), ((6, 4), "g"), ((6, 6), "d"),
    ((7, 5), "f"), ((7, 7), "a"),
    ((8, 8), "1"),
)

V9 = V3.tensor(V3)


def check_t_value(t):
    """Reject specialisations where q - 1/q or t vanishes."""
    t = Fraction(t)
    if t in (0, 1, -1):
        raise ValueError("t = %s is a degenerate value (t must avoid 0 and +-1)" % t)
    return t


def entries(t=None, overrides=None):
    """The nine entry functions, optionally with t specialised."""
    out = {}
    for name in ENTRY_NAMES:
        f = parse(ENTRY_TEXT[name])
        if overrides and name in overrides:
            f = RationalFunction.coerce(overrides[name])
        if t is not None:
            f = f.substitute({"t": Fraction(t)})
        out[name] = f
    return out


def build_r(t=None, overrides=None):
    """The R-matrix as an even GradedMatrix on V (x) V in variables z, w."""
    ent = entries(t, overrides)
    ent["1"] = RationalFunction.from_int(1)
    return GradedMatrix(V9, V9, {pos: ent[name] for pos, name in LAYOUT}, parity=0)


def at(m, z, w):
    """Substitute the spectral pair (z, w) simultaneously."""
    return m.substitute({"z": z, "w": w})


def of_ratio(m, x):
    """R(x) in the one-argument convention, i.e. R(z = x, w = 1)."""
    return at(m, x, 1)


def flip():
    return graded_flip(V3, V3)


def r21(m):
    p = flip()
    return p * m * p


def ybe_residual(m):
    """R12(z) R13(zw) R23(w) - R23(w) R13(zw) R12(z) on V^3."""
    z = RationalFunction.var("z")
    w = RationalFunction.var("w")
    spaces = [V3, V3, V3]
    r_z = of_ratio(m, z)
    r_zw = of_ratio(m, z * w)
    r_w = of_ratio(m, w)
    r12 = embed(r_z, (1, 2), spaces)
    r13 = embed(r_zw, (1, 3), spaces)
    r23 = embed(r_w, (2, 3), spaces)
    return r12 * r13 * r23 - r23 * r13 * r12


def unitarity_residual(m):
    """R21(z/w) R(w/z) - 1."""
    swapped = at(m, RationalFunction.var("w"), RationalFunction.var("z"))
    return r21(m) * swapped - GradedMatrix.identity(V9)


def parity_check(m):
    """True when every nonzero entry connects basis vectors of equal parity."""
    return m.homogeneous_parity() == 0


def zero_pattern(m):
    return sorted(m.entries)


def expected_pattern():
    return sorted(pos for pos, _ in LAYOUT)


def equal_argument_residual(m):
    """R(z, z) - P."""
    return at(m, RationalFunction.var("z"), RationalFunction.var("z")) - flip()


def classical_limit_residual(m):
    """R at q = 1 minus the identity."""
    return m.substitute({"t": 1}) - GradedMatrix.identity(V9)


def ratio_residual(m):
    """R(u z, u w) - R(z, w)."""
    u = RationalFunction.var("u")
    return at(m, u * RationalFunction.var("z"), u * RationalFunction.var("w")) - m


def corrupt(name, mode="scale", t=None):
    """R with one entry function altered: scaled by 2 or set to zero."""
    if name not in ENTRY_NAMES:
        raise ValueError("unknown entry %r" % name)
    f = entries()[name]
    new = f * 2 if mode == "scale" else RationalFunction.from_int(0)
    return build_r(t, overrides={name: new})
