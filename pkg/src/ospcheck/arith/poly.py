"""Sparse multivariate integer polynomials over a fixed variable set.

A polynomial is a plain dict ``{key: coeff}``; keys pack one exponent per
byte in the order of ``VARS``.  Values are treated as immutable once built.
The multiply and exact-divide kernels come from the compiled extension when
it is importable, unless ``OSPCHECK_PURE_PYTHON`` is set.
"""

import math
import os

from . import _pykernel

VARS = ("t", "z", "w", "x", "z1", "z2", "z3", "u")
VAR_INDEX = {v: i for i, v in enumerate(VARS)}
MAXEXP = 127

BACKEND = "python"
if not os.environ.get("OSPCHECK_PURE_PYTHON"):
    try:
        from . import _ckernel as _kernel
        BACKEND = "compiled"
    except ImportError:  # pragma: no cover - depends on the build
        _kernel = _pykernel
else:
    _kernel = _pykernel

mul = _kernel.mul
divexact = _kernel.divexact
degree = _pykernel.degree

ZERO = {}
ONE = {0: 1}


def use_backend(name):
    """Switch kernels at runtime ("python" or "compiled"); used by benchmarks."""
    global mul, divexact, BACKEND
    if name == "compiled":
        from . import _ckernel as k
    elif name == "python":
        k = _pykernel
    else:
        raise ValueError("unknown backend %r" % name)
    mul, divexact, BACKEND = k.mul, k.divexact, name


def var_index(name):
    try:
        return VAR_INDEX[name]
    except KeyError:
        raise ValueError("unknown variable %r (allowed: %s)" % (name, ", ".join(VARS)))


def monomial_key(exps):
    """Pack a mapping {var: exponent} into a key."""
    k = 0
    for v, e in exps.items():
        if e < 0 or e > MAXEXP:
            raise OverflowError("exponent %d of %s out of range" % (e, v))
        k |= e << (8 * var_index(v))
    return k


def unpack(key):
    return tuple(key.to_bytes(8, "little"))


def exponent(key, i):
    return (key >> (8 * i)) & 0xFF


def const(c):
    return {0: c} if c else {}


def variable(name, power=1):
    return {monomial_key({name: power}): 1}


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for k, c in b.items():
        v = out.get(k, 0) + c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def neg(a):
    return {k: -c for k, c in a.items()}


def sub(a, b):
    return add(a, neg(b))


def scale(a, c):
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def shift(a, key):
    """Multiply by the monomial with the given key."""
    out = {k + key: c for k, c in a.items()}
    if any(k & _pykernel.GUARD for k in out):
        raise OverflowError("exponent exceeds 127")
    return out


def power(a, n):
    result = ONE
    base = a
    while n:
        if n & 1:
            result = mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result


def is_const(a):
    return not a or (len(a) == 1 and 0 in a)


def const_value(a):
    return a.get(0, 0) if is_const(a) else None


def leading_key(a):
    return max(a, key=lambda k: (degree(k), k))


def leading_coeff(a):
    return a[leading_key(a)]


def content(a):
    g = 0
    for c in a.values():
        g = math.gcd(g, c)
        if g == 1:
            break
    return g


def primitive(a):
    g = content(a)
    if g in (0, 1):
        return g, a
    return g, {k: c // g for k, c in a.items()}


def max_norm(a):
    return max((abs(c) for c in a.values()), default=0)


def used_vars(a):
    mask = 0
    for k in a:
        mask |= k
    return [i for i in range(8) if (mask >> (8 * i)) & 0xFF]


def free_symbols(a):
    return {VARS[i] for i in used_vars(a)}


def deg_in(a, i):
    return max((exponent(k, i) for k in a), default=-1)


def mindeg_in(a, i):
    return min((exponent(k, i) for k in a), default=-1)


def coeffs_in(a, i):
    """Split a into {e: coefficient poly} with respect to variable index i."""
    out = {}
    sh = 8 * i
    mask = ~(0xFF << sh)
    for k, c in a.items():
        e = (k >> sh) & 0xFF
        out.setdefault(e, {})[k & mask] = c
    return out


def monomial_gcd(a):
    """Key of the largest monomial dividing every term of a."""
    mins = None
    for k in a:
        b = k.to_bytes(8, "little")
        mins = list(b) if mins is None else [min(x, y) for x, y in zip(mins, b)]
    if mins is None:
        return 0
    return int.from_bytes(bytes(mins), "little")


def unshift(a, key):
    return {k - key: c for k, c in a.items()}


def evaluate(a, i, value):
    """Substitute an integer for variable i."""
    sh = 8 * i
    mask = ~(0xFF << sh)
    out = {}
    pw = {}
    for k, c in a.items():
        e = (k >> sh) & 0xFF
        p = pw.get(e)
        if p is None:
            p = pw[e] = value ** e
        kk = k & mask
        v = out.get(kk, 0) + c * p
        if v:
            out[kk] = v
        else:
            out.pop(kk, None)
    return out


def evaluate_all(a, values):
    """Evaluate at a full point {var index: number}; works with Fractions."""
    total = 0
    for k, c in a.items():
        term = c
        for i, e in enumerate(unpack(k)):
            if e:
                term *= values[i] ** e
        total += term
    return total


def derivative(a, i):
    sh = 8 * i
    unit = 1 << sh
    out = {}
    for k, c in a.items():
        e = (k >> sh) & 0xFF
        if e:
            out[k - unit] = c * e
    return out


def substitute(a, i, num, den):
    """Substitute num/den for variable i.

    Returns (p, d) with a(num/den) = p / den**d and d the degree in i.
    """
    parts = coeffs_in(a, i)
    d = max(parts)
    out = {}
    npow = [ONE]
    dpow = [ONE]
    for _ in range(d):
        npow.append(mul(npow[-1], num))
        dpow.append(mul(dpow[-1], den))
    for e, c in parts.items():
        out = add(out, mul(c, mul(npow[e], dpow[d - e])))
    return out, d


def rename_key_map(a, perm):
    """Move exponents between variables: perm maps old index to new index."""
    out = {}
    for k, c in a.items():
        b = unpack(k)
        nb = [0] * 8
        for old, e in enumerate(b):
            if e:
                new = perm.get(old, old)
                nb[new] += e
        kk = int.from_bytes(bytes(nb), "little")
        out[kk] = out.get(kk, 0) + c
    return {k: c for k, c in out.items() if c}


def sort_keys(a):
    """Keys in descending graded-lex order."""
    return sorted(a, key=lambda k: (degree(k), k), reverse=True)


def equal(a, b):
    return a == b


# ---------------------------------------------------------------- gcd

class HeuristicGCDFailed(ArithmeticError):
    pass


def _symmetric_mod(c, m):
    r = c % m
    if r > m // 2:
        r -= m
    return r


def _interpolate(h, x, i):
    out = {}
    e = 0
    sh = 8 * i
    while h:
        g = {}
        for k, c in h.items():
            r = _symmetric_mod(c, x)
            if r:
                g[k] = r
        for k, c in g.items():
            out[k | (e << sh)] = c
        nh = {}
        for k, c in h.items():
            v = (c - g.get(k, 0)) // x
            if v:
                nh[k] = v
        h = nh
        e += 1
        if e > MAXEXP:
            raise HeuristicGCDFailed("interpolation degree overflow")
    return out


def _heugcd(f, g, vs):
    """Heuristic gcd of primitive-or-not polys in the variables vs."""
    if not vs:
        a, b = const_value(f), const_value(g)
        h = math.gcd(a, b)
        return {0: h}
    cf, f = primitive(f)
    cg, g = primitive(g)
    c = math.gcd(cf, cg)
    i = vs[0]
    rest = vs[1:]
    fn, gn = max_norm(f), max_norm(g)
    lf = abs(leading_coeff(coeffs_in(f, i)[deg_in(f, i)]))
    lg = abs(leading_coeff(coeffs_in(g, i)[deg_in(g, i)]))
    b = 2 * min(fn, gn) + 29
    x = max(min(b, 99 * math.isqrt(b)), 2 * min(fn // lf, gn // lg) + 4)
    for _ in range(8):
        ff = evaluate(f, i, x)
        gg = evaluate(g, i, x)
        if ff and gg:
            hv = _heugcd(ff, gg, [j for j in rest if deg_in(ff, j) > 0 or deg_in(gg, j) > 0])
            h = primitive(_interpolate(hv, x, i))[1]
            if h and divexact(f, h) is not None and divexact(g, h) is not None:
                return scale(h, c)
            for src, val in ((f, ff), (g, gg)):
                q = divexact(val, hv)
                if not q:
                    continue
                cof = _interpolate(q, x, i)
                h = divexact(src, cof) if cof else None
                if not h:
                    continue
                h = primitive(h)[1]
                if divexact(f, h) is not None and divexact(g, h) is not None:
                    return scale(h, c)
        x = 73794 * x * math.isqrt(math.isqrt(x)) // 27011
    raise HeuristicGCDFailed("heuristic gcd did not converge")


def _fallback_gcd(f, g):
    import sympy
    syms = sympy.symbols(VARS)

    def to_expr(p):
        return sympy.Add(*[c * sympy.Mul(*[s ** e for s, e in zip(syms, unpack(k))]) for k, c in p.items()])

    h = sympy.Poly(sympy.gcd(to_expr(f), to_expr(g)), *syms)
    out = {}
    for monom, c in h.terms():
        out[int.from_bytes(bytes(monom), "little")] = int(c)
    return out


def gcd(f, g):
    """Greatest common divisor over the integers, with positive leading coefficient."""
    if not f:
        return _normalize_sign(g) if g else {}
    if not g:
        return _normalize_sign(f)
    if is_const(f) or is_const(g):
        return {0: math.gcd(content(f), content(g))}
    mf, mg = monomial_gcd(f), monomial_gcd(g)
    mk = int.from_bytes(bytes(min(x, y) for x, y in zip(unpack(mf), unpack(mg))), "little")
    if mf:
        f = unshift(f, mf)
    if mg:
        g = unshift(g, mg)
    if len(f) == 1 or len(g) == 1:
        h = {0: math.gcd(content(f), content(g))}
    else:
        vs = sorted(set(used_vars(f)) | set(used_vars(g)))
        try:
            h = _heugcd(f, g, vs)
        except HeuristicGCDFailed:
            h = _fallback_gcd(f, g)
    if mk:
        h = shift(h, mk)
    return _normalize_sign(h)


def _normalize_sign(h):
    if h and h[leading_key(h)] < 0:
        return neg(h)
    return h
