"""Independent sympy model of the evaluation module at a numeric t.

It shares only the entry formulas and the nonzero pattern with the package.
Slicing, Gauss elimination and residues are redone here with sympy matrices,
and every current is represented as {pole p: M_p} meaning sum_p M_p z^-1 delta(p/z).
"""

from functools import lru_cache

import sympy

from ospcheck import rmatrix

t_, z_, w_ = sympy.symbols("t z w")
PAR = (0, 1, 0)
G = sympy.diag(1, -1, 1)


def r_matrix(tv):
    vals = {"1": sympy.Integer(1)}
    for name, text in rmatrix.ENTRY_TEXT.items():
        expr = sympy.sympify(text.replace("^", "**"), locals={"t": t_, "z": z_, "w": w_})
        vals[name] = expr.subs({t_: tv, w_: 1})
    m = sympy.zeros(9, 9)
    for (i, j), name in rmatrix.LAYOUT:
        m[i, j] = vals[name]
    return m


def blocks(tv):
    """L_ij as 3x3 operators: slices of R(z, 1), odd slices multiplied by G on the left."""
    r = r_matrix(tv)
    out = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            b = r[3 * i:3 * i + 3, 3 * j:3 * j + 3]
            out[i][j] = G * b if (PAR[i] + PAR[j]) % 2 else b
    return out


def _simp(m):
    return m.applyfunc(sympy.cancel)


def _sg(i, k, j):
    return -1 if ((PAR[i] + PAR[k]) * (PAR[k] + PAR[j])) % 2 else 1


@lru_cache(maxsize=None)
def gauss(tv):
    """Super Gauss factors of L: k_i, e_ji (j > i), f_ij (i < j)."""
    b = blocks(tv)
    k, e, f = [], {}, {}
    for i in range(3):
        acc = b[i][i]
        for m in range(i):
            acc = acc - _sg(i, m, i) * e[(i, m)] * k[m] * f[(m, i)]
        k.append(_simp(acc))
        kinv = _simp(k[i].inv())
        for j in range(i + 1, 3):
            up, low = b[i][j], b[j][i]
            for m in range(i):
                up = up - _sg(i, m, j) * e[(i, m)] * k[m] * f[(m, j)]
                low = low - _sg(j, m, i) * e[(j, m)] * k[m] * f[(m, i)]
            f[(i, j)] = _simp(kinv * up)
            e[(j, i)] = _simp(low * kinv)
    return k, e, f


def residues(mat):
    """{p: Res_{z=p} mat(z)} over nonzero poles; the difference of the two expansions."""
    out = {}
    for i in range(3):
        for j in range(3):
            f = sympy.cancel(mat[i, j])
            if f == 0:
                continue
            _, den = sympy.fraction(f)
            for p in sympy.roots(sympy.Poly(den, z_)):
                if p == 0:
                    continue
                out.setdefault(p, sympy.zeros(3))
                out[p][i, j] += sympy.residue(f, z_, p)
    return {p: m for p, m in out.items() if m != sympy.zeros(3)}


def currents(tv):
    """X+_i = residues of f_{i,i+1}; X-_i = minus residues of e_{i+1,i}."""
    k, e, f = gauss(tv)
    xp = {1: residues(f[(0, 1)]), 2: residues(f[(1, 2)])}
    xm = {1: {p: -m for p, m in residues(e[(1, 0)]).items()},
          2: {p: -m for p, m in residues(e[(2, 1)]).items()}}
    return xp, xm


def shifted(x, s):
    """X(z s) from X(z): pole p moves to p/s and the weight picks up 1/s."""
    return {sympy.nsimplify(p / s): m / s for p, m in x.items()}


def proportionality(a, b):
    """kappa with a = kappa * b (both pole dictionaries), or None."""
    if set(a) != set(b) or not b:
        return None
    kappa = None
    for p in b:
        for idx in range(9):
            if b[p][idx] != 0:
                kappa = sympy.nsimplify(a[p][idx] / b[p][idx])
                break
        if kappa is not None:
            break
    ok = all(_simp(a[p] - kappa * b[p]) == sympy.zeros(3) for p in b)
    return kappa if ok else None


def y_kappa(tv, sign):
    """kappa with X_2(z) = kappa X_1(z/q)."""
    xp, xm = currents(tv)
    x = xp if sign == "+" else xm
    return proportionality(x[2], shifted(x[1], sympy.Rational(1) / sympy.Rational(tv) ** 2))


def phi_psi(tv):
    k, _, _ = gauss(tv)
    q = sympy.Rational(tv) ** 2
    alpha = 1 + 1 / sympy.Rational(tv) - sympy.Rational(tv)
    phi1 = _simp(k[1] * k[0].inv())
    phi2 = _simp(k[2] * k[1].inv()).subs(z_, z_ * q)
    return _simp(alpha * phi1 - phi2), _simp(phi1 - alpha * phi2)


def add(a, b):
    out = dict(a)
    for p, m in b.items():
        out[p] = out[p] + m if p in out else m
    return {p: m for p, m in out.items() if m != sympy.zeros(3)}


def combined_kappa(tv, sign):
    """kappa with (q - 1/q)[X_1(z) + X_2(zq)] = kappa X_1(z)."""
    xp, xm = currents(tv)
    x = xp if sign == "+" else xm
    q = sympy.Rational(tv) ** 2
    total = {p: (q - 1 / q) * m for p, m in add(x[1], shifted(x[2], q)).items()}
    return proportionality(total, x[1])
