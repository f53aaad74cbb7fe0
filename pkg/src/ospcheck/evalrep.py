"""The level-zero evaluation representation on V.

L(z) acts on V_aux (x) V_quantum.  Its rational matrix is the R-matrix at
(z, 1) in one of two slice conventions; L+ is its expansion in |z| >> 1 and
L- the expansion in |z| << 1.  The convention is not assumed: both RLL
relations are checked as distribution identities and exactly one convention
must pass.

Blocks of L are operators on V indexed by auxiliary indices.  Writing
L = sum E_ij (x) L_ij with Koszul signs gives L_ij = G^([i]+[j]) * block_ij
with G = diag(1, -1, 1) the grading operator, and the product of two such
matrices is (AB)_ij = sum_k (-1)^(([i]+[k])([k]+[j])) A_ik B_kj.
"""

from contextlib import nullcontext
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import RationalFunction, ONE, pole_base
from .dist import Distribution, Region, region_difference
from .linalg import V3, GradedMatrix, embed, graded_flip, graded_kron, invert
from . import rmatrix

CONVENTIONS = ("aux-first", "aux-second")
SIGNS = ("+", "-")
PAR = V3.parities
G = GradedMatrix(V3, V3, {(0, 0): 1, (1, 1): -1, (2, 2): 1})


class ConventionError(RuntimeError):
    """Neither or both slice conventions satisfy the RLL relations."""


class GaussError(ArithmeticError):
    pass


def q_of(t):
    """q = t^2 as a rational function (or constant when t is numeric)."""
    return RationalFunction.var("t") ** 2 if t is None else RationalFunction.from_fraction(Fraction(t) ** 2)


def t_of(t):
    return RationalFunction.var("t") if t is None else RationalFunction.from_fraction(Fraction(t))


def pole_context(t):
    """Pole-finding context matching the specialisation of t."""
    return nullcontext() if t is None else pole_base(Fraction(t))


def region_for(sign, var="z"):
    return Region((var, "1")) if sign == "+" else Region(("1", var))


def l_matrix(r, convention):
    """Rational matrix of L(z) on V_aux (x) V_quantum."""
    m = rmatrix.at(r, RationalFunction.var("z"), ONE)
    if convention == "aux-second":
        p = graded_flip(V3, V3)
        m = p * m * p
    elif convention != "aux-first":
        raise ValueError("unknown convention %r" % convention)
    return m


@dataclass(frozen=True)
class LOperator:
    sign: str
    matrix: GradedMatrix
    convention: str

    @property
    def region(self):
        return region_for(self.sign)

    def block(self, i, j):
        """Operator L_ij on V (0-based auxiliary indices)."""
        b = self.matrix.block(i, j, 3, V3)
        return G * b if (PAR[i] + PAR[j]) % 2 else b

    def blocks(self):
        return [[self.block(i, j) for j in range(3)] for i in range(3)]

    def as_distribution(self, var="z"):
        m = self.matrix if var == "z" else self.matrix.rename({"z": var})
        return Distribution.rational(m, region_for(self.sign, var))


def rll_residual(r, convention, signs):
    """R12(z/w) L1(z) L2(w) - L2(w) L1(z) R12(z/w) on V_aux (x) V_aux (x) V_quantum.

    R is expanded in |z| >> |w|, which both relations allow at level zero.
    """
    s1, s2 = signs
    lm = l_matrix(r, convention)
    spaces = [V3, V3, V3]
    r12 = Distribution.rational(embed(r, (1, 2), spaces), Region(("z", "w")))
    l1 = Distribution.rational(embed(lm, (1, 3), spaces), region_for(s1, "z"))
    l2 = Distribution.rational(embed(lm.rename({"z": "w"}), (2, 3), spaces), region_for(s2, "w"))
    return r12 * l1 * l2 - l2 * l1 * r12


RLL_PAIRS = (("+", "+"), ("-", "-"), ("+", "-"))


@dataclass
class ConventionReport:
    selected: str
    outcomes: dict = field(default_factory=dict)   # convention -> {pair: bool}
    residuals: dict = field(default_factory=dict)  # (convention, pair) -> Distribution


def validate_convention(r=None, t=None):
    """Check both RLL relations for each slice convention; exactly one must pass."""
    r = rmatrix.build_r(t) if r is None else r
    rep = ConventionReport(selected=None)
    with pole_context(t):
        for conv in CONVENTIONS:
            rep.outcomes[conv] = {}
            for pair in RLL_PAIRS:
                res = rll_residual(r, conv, pair)
                rep.residuals[(conv, pair)] = res
                ok = rep.outcomes[conv]["".join(pair)] = res.is_zero()
                if not ok:
                    break  # one failing relation rules the convention out
    passing = [c for c in CONVENTIONS if all(rep.outcomes[c].values())]
    if len(passing) != 1:
        raise ConventionError("RLL relations hold for %d slice conventions (%s); expected exactly one"
                              % (len(passing), ", ".join(passing) or "none"))
    rep.selected = passing[0]
    return rep


def build_L(sign, r=None, t=None, convention=None):
    """L+(z) or L-(z).  Without an explicit convention the validator picks one."""
    if sign not in SIGNS:
        raise ValueError("sign must be '+' or '-'")
    r = rmatrix.build_r(t) if r is None else r
    if convention is None:
        convention = validate_convention(r, t).selected
    return LOperator(sign, l_matrix(r, convention), convention)


# Gauss decomposition ---------------------------------------------------------

def _sgn(i, k, j):
    return -1 if ((PAR[i] + PAR[k]) * (PAR[k] + PAR[j])) % 2 else 1


@dataclass(frozen=True)
class GaussFactors:
    """L = (lower unitriangular) (diagonal) (upper unitriangular), 0-based keys."""

    sign: str
    k: tuple            # k[i], i = 0, 1, 2
    e: dict             # e[(i, j)], i > j
    f: dict             # f[(i, j)], i < j

    @property
    def region(self):
        return region_for(self.sign)

    def lower(self, i, j):
        if i == j:
            return GradedMatrix.identity(V3)
        return self.e.get((i, j), GradedMatrix.zero(V3))

    def upper(self, i, j):
        if i == j:
            return GradedMatrix.identity(V3)
        return self.f.get((i, j), GradedMatrix.zero(V3))

    def reconstruct(self):
        """The 3x3 block matrix lower * diag(k) * upper under the super product."""
        out = {}
        for i in range(3):
            for j in range(3):
                acc = GradedMatrix.zero(V3)
                for m in range(min(i, j) + 1):
                    term = self.lower(i, m) * self.k[m] * self.upper(m, j)
                    acc = acc + (term if _sgn(i, m, j) > 0 else -term)
                out[(i, j)] = acc
        return out


def gauss(lop):
    """Gauss decomposition of an L-operator by block elimination."""
    L = lop.blocks()
    k, kinv, e, f = [], [], {}, {}
    for i in range(3):
        acc = L[i][i]
        for m in range(i):
            term = e[(i, m)] * k[m] * f[(m, i)]
            acc = acc - (term if _sgn(i, m, i) > 0 else -term)
        k.append(acc)
        try:
            kinv.append(invert(acc))
        except ZeroDivisionError:
            raise GaussError("leading block %d of L%s is singular" % (i + 1, lop.sign))
        for j in range(i + 1, 3):
            up = L[i][j]
            low = L[j][i]
            for m in range(i):
                tu = e[(i, m)] * k[m] * f[(m, j)]
                tl = e[(j, m)] * k[m] * f[(m, i)]
                up = up - (tu if _sgn(i, m, j) > 0 else -tu)
                low = low - (tl if _sgn(j, m, i) > 0 else -tl)
            f[(i, j)] = kinv[i] * up
            e[(j, i)] = low * kinv[i]
    return GaussFactors(lop.sign, tuple(k), e, f)


def reconstruction_residual(lop, g):
    """Blocks of L minus the reconstructed product; all zero when exact."""
    rec = g.reconstruct()
    return {ij: lop.block(*ij) - rec[ij] for ij in rec}


# currents -------------------------------------------------------------------

def _at(m, var, scale):
    return m.substitute({"z": scale * RationalFunction.var(var)})


@dataclass
class CurrentFamily:
    """Drinfeld-type currents of the evaluation module at level zero."""

    t: object
    convention: str
    plus: GaussFactors
    minus: GaussFactors
    level: int = 0

    def gauss_for(self, sign):
        return self.plus if sign == "+" else self.minus

    @property
    def q(self):
        return q_of(self.t)

    @property
    def sqrt_q(self):
        return t_of(self.t)

    @property
    def alpha(self):
        """1 + q^(-1/2) - q^(1/2)."""
        h = self.sqrt_q
        return ONE + h.inverse() - h

    # rational building blocks (matrices in z)
    def k_matrix(self, sign, i):
        return self.gauss_for(sign).k[i - 1]

    def k_inverse(self, sign, i):
        return invert(self.k_matrix(sign, i))

    def f_matrix(self, i):
        """f_{i,i+1}; identical rational data for both signs."""
        return self.plus.f[(i - 1, i)]

    def e_matrix(self, i):
        return self.plus.e[(i, i - 1)]

    def phi_i_matrix(self, sign, i):
        """k_{i+1} k_i^{-1} for the given sign (phi_i for +, psi_i for -)."""
        return self.k_matrix(sign, i + 1) * self.k_inverse(sign, i)

    def phi_matrix(self):
        q = self.q
        return self.phi_i_matrix("+", 1).scale(self.alpha) - _at(self.phi_i_matrix("+", 2), "z", q)

    def psi_matrix(self):
        q = self.q
        return self.phi_i_matrix("-", 1) - _at(self.phi_i_matrix("-", 2), "z", q).scale(self.alpha)

    # distributions
    def rational(self, m, sign, var="z", scale=ONE):
        return Distribution.rational(_at(m, var, scale), region_for(sign, var))

    def k(self, sign, i, var="z", scale=ONE):
        return self.rational(self.k_matrix(sign, i), sign, var, scale)

    def k_inv(self, sign, i, var="z", scale=ONE):
        return self.rational(self.k_inverse(sign, i), sign, var, scale)

    def phi(self, var="z", scale=ONE):
        return self.rational(self.phi_matrix(), "+", var, scale)

    def psi(self, var="z", scale=ONE):
        return self.rational(self.psi_matrix(), "-", var, scale)

    def X_i(self, sign, i, var="z", scale=ONE):
        """X+_i = f+_{i,i+1} - f-_{i,i+1};  X-_i = e-_{i+1,i} - e+_{i+1,i}."""
        if sign == "+":
            m = _at(self.f_matrix(i), var, scale)
            return region_difference(m, region_for("+", var), region_for("-", var))
        m = _at(self.e_matrix(i), var, scale)
        return region_difference(m, region_for("-", var), region_for("+", var))

    def X(self, sign, var="z", scale=ONE):
        """(q - 1/q) [X_1(z) + X_2(zq)]."""
        q = self.q
        total = self.X_i(sign, 1, var, scale) + self.X_i(sign, 2, var, scale * q)
        return total * (q - q.inverse())

    def X_current(self, sign, index, var="z", scale=ONE):
        """index 1, 2, or None for the combined current."""
        if index is None:
            return self.X(sign, var, scale)
        return self.X_i(sign, index, var, scale)

    def Y(self, sign, var="z"):
        """X2(z) - (-+ q^(-+1/2) X1(z/q)) with the original coefficients."""
        h = self.sqrt_q
        c = -h.inverse() if sign == "+" else h
        return self.X_i(sign, 2, var) - self.X_i(sign, 1, var, self.q.inverse()) * c

    def central_matrix(self, sign):
        """k2 k1^{-1} (k3(zq) k2(zq)^{-1})^{-1}."""
        q = self.q
        inner = _at(self.phi_i_matrix(sign, 2), "z", q)
        return self.phi_i_matrix(sign, 1) * invert(inner)

    def h1_matrix(self, sign):
        """k1(z) k3(z q^3)."""
        return self.k_matrix(sign, 1) * _at(self.k_matrix(sign, 3), "z", self.q ** 3)

    def h2_matrix(self, sign, variant="original"):
        """k2(z) (k1(z/q) k1(z/q^2)^{-1})^{-1}, or the k3 reading of the second factor."""
        q = self.q
        if variant == "original":
            inner = _at(self.k_matrix(sign, 1), "z", q.inverse()) * \
                _at(self.k_inverse(sign, 1), "z", q ** -2)
        elif variant == "k3":
            inner = _at(self.k_matrix(sign, 1), "z", q.inverse()) * \
                _at(self.k_inverse(sign, 3), "z", q ** -2)
        else:
            raise ValueError("unknown variant %r" % variant)
        return self.k_matrix(sign, 2) * invert(inner)


def build_family(r=None, t=None, convention=None):
    """Build L+, L-, their Gauss factors and the current family."""
    if t is not None:
        t = rmatrix.check_t_value(t)
    r = rmatrix.build_r(t) if r is None else r
    with pole_context(t):
        if convention is None:
            convention = validate_convention(r, t).selected
        gp = gauss(build_L("+", r, t, convention))
        gm = gauss(build_L("-", r, t, convention))
    return CurrentFamily(t, convention, gp, gm)


# level-zero Hopf structure ---------------------------------------------------

def coproduct(lm):
    """Delta(L)(z) on V_aux (x) V_1 (x) V_2: L_{12}(z) L_{13}(z)."""
    spaces = [V3, V3, V3]
    return embed(lm, (1, 2), spaces) * embed(lm, (1, 3), spaces)


def _embed4(op3, first):
    """Put an operator on aux (x) q1 (x) q2 into slots (first, 3, 4) of aux (x) aux (x) q1 (x) q2."""
    spaces = [V3, V3, V3, V3]
    ident = GradedMatrix.identity(V3)
    if first == 1:
        # aux1 (x) aux2 (x) q1 (x) q2 from (aux1 (x) q1 (x) q2) by moving aux2 in front of q1
        big = graded_kron(ident, op3)       # aux2 (x) aux1 (x) q1 (x) q2
        swap = embed(graded_flip(V3, V3), (1, 2), spaces)
        return swap * big * swap
    return graded_kron(ident, op3)


def coproduct_rll_residual(r, convention):
    """RLL residual for Delta(L) on the doubled quantum space, as a rational matrix."""
    lm = l_matrix(r, convention)
    d1 = _embed4(coproduct(lm), 1)
    d2 = _embed4(coproduct(lm.rename({"z": "w"})), 2)
    r12 = embed(r, (1, 2), [V3, V3, V3, V3])
    return r12 * d1 * d2 - d2 * d1 * r12


def coassociativity_residual(lm):
    """(Delta (x) 1) Delta(L) - (1 (x) Delta) Delta(L) on aux (x) V^3."""
    spaces = [V3, V3, V3, V3]
    a = embed(lm, (1, 2), spaces)
    b = embed(lm, (1, 3), spaces)
    c = embed(lm, (1, 4), spaces)
    return (a * b) * c - a * (b * c)


def antipode_residual(lm):
    """L(z) S(L(z)) - Id with S(L) = L^{-1}."""
    return lm * invert(lm) - GradedMatrix.identity(lm.rows)
