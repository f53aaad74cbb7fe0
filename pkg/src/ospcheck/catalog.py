"""Individually addressable checks of every identity in scope.

Each catalog entry builds one or more residuals (left side minus right side)
in the level-zero evaluation module.  A distribution residual holds when its
canonical form is empty and its truncated series vanishes; a matrix residual
holds when every entry is the zero rational function.
"""

import time
from dataclasses import dataclass, field
from typing import Callable

from .arith import ONE, RationalFunction, UnsupportedPoleError, parse
from .dist import Distribution, DistributionError, Region, RegionError
from .dist.series import DEFAULT_ORDER
from .linalg import V3, GradedMatrix, invert
from . import evalrep, rmatrix

SUITES = ("rmatrix", "frts", "drinfeld", "hidden", "serre", "hopf")
HOLDS, VIOLATED, NOT_APPLICABLE = "holds", "violated", "not-applicable-at-level-0"


class ConfigError(ValueError):
    """Invalid configuration, e.g. an unknown relation or a missing region assignment."""


@dataclass(frozen=True)
class RelationId:
    key: str
    locus: str
    arity: int
    variant: str = "original"


@dataclass(frozen=True)
class Relation:
    rid: RelationId
    suite: str
    kind: str                 # "distribution", "matrix" or "fit"
    build: Callable
    asserted: bool = True
    level0: bool = False
    note: str = ""


@dataclass
class CatalogConfig:
    t: object = None          # None for symbolic, else a Fraction
    order: int = DEFAULT_ORDER
    serre_regions: str = None  # "monomial" or "fixed:<chain>"
    r_override: object = field(default=None, repr=False)
    r_override_symbolic: object = field(default=None, repr=False)

    def __post_init__(self):
        if self.t is not None:
            try:
                self.t = rmatrix.check_t_value(self.t)
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        if self.order < 4:
            raise ConfigError("series order must be at least 4")
        if self.serre_regions is not None:
            parse_serre_regions(self.serre_regions)


@dataclass
class RelationReport:
    key: str
    locus: str
    arity: int
    variant: str
    suite: str
    asserted: bool
    verdict: str
    method: str
    witness: str = ""
    notes: list = field(default_factory=list)
    exact: bool = None
    series: bool = None
    elapsed: float = 0.0

    @property
    def holds(self):
        return self.verdict == HOLDS

    def to_dict(self):
        return {
            "key": self.key, "locus": self.locus, "arity": self.arity, "variant": self.variant,
            "suite": self.suite, "asserted": self.asserted, "verdict": self.verdict,
            "method": self.method, "witness": self.witness, "notes": list(self.notes),
            "exact": self.exact, "series": self.series, "elapsed": self.elapsed,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


# helpers ----------------------------------------------------------------------

def qexpr(text, t=None):
    """Parse an expression written in q (q = t^2), specialising t if given."""
    r = parse(text.replace("q", "(t^2)"))
    return r if t is None else r.substitute({"t": t})


def chain(*entries):
    """Region with '+' variables above 1 and '-' variables below, in the given order."""
    top = [v for v, s in entries if s == "+"]
    bottom = [v for v, s in entries if s == "-"]
    return Region(tuple(top) + ("1",) + tuple(bottom))


def spectral_region(sign):
    """Expansion of g(z/w) next to a current in z of the given sign.

    Plus currents are series in 1/z, so g is expanded for z large against w;
    minus currents are series in z, so g is expanded for w large against z.
    """
    return Region(("z", "w")) if sign == "+" else Region(("w", "z"))


def other(sign):
    return "-" if sign == "+" else "+"


def commutator(a, b):
    return a * b - b * a


def anticommutator(a, b):
    return a * b + b * a


def unit_delta(var, root):
    """delta(root/var) = var * delta_0(var, root) as a distribution."""
    return Distribution.delta(var, RationalFunction.var(root)) * RationalFunction.var(var)


def parse_serre_regions(spec):
    if spec == "monomial":
        return ("monomial", None)
    if spec.startswith("fixed:"):
        try:
            region = Region.parse(spec[len("fixed:"):])
        except RegionError as exc:
            raise ConfigError(str(exc))
        if {"z1", "z2", "z3"} - region.symbols():
            raise ConfigError("fixed Serre region must order z1, z2 and z3")
        return ("fixed", region)
    raise ConfigError("Serre region assignment must be 'monomial' or 'fixed:<chain>', got %r" % spec)


def _entries(c):
    return c.entries if isinstance(c, GradedMatrix) else ({None: c} if c else {})


def fit_scalar(a, b):
    """kappa with a = kappa * b as distributions, or None."""
    cb = b.canonical()
    if cb.is_zero():
        return None
    ca = a.canonical()
    tb = cb.terms[0]
    match = [t for t in ca.terms if t.atoms == tb.atoms and t.region == tb.region]
    if not match:
        return None
    ea, eb = _entries(match[0].coef), _entries(tb.coef)
    key = min(eb, key=str)
    if key not in ea:
        return None
    kappa = ea[key] / eb[key]
    if (a - b * kappa).is_zero():
        return kappa
    return None


# relation builders ------------------------------------------------------------
# Each builder takes (family, config) and returns a list of (label, residual).

def _k_pair(fam, i, si, inv_i, j, sj, inv_j, prefactor=None):
    """prefactor * [k_i^si(z)^(+-1), k_j^sj(w)^(+-1)] with the prefactor in the side's region."""
    ki = (fam.k_inv if inv_i else fam.k)(si, i, "z")
    kj = (fam.k_inv if inv_j else fam.k)(sj, j, "w")
    res = commutator(ki, kj)
    if prefactor is not None:
        pre = Distribution.rational(qexpr(prefactor, fam.t), chain(("z", si), ("w", sj)))
        res = pre * res
    return res


def _k_relation(i, inv_i, j, inv_j, mixed, prefactor=None, signs="+-"):
    def build(fam, cfg):
        out = []
        for s in signs:
            sj = other(s) if mixed else s
            out.append(("%s%s" % (s, sj), _k_pair(fam, i, s, inv_i, j, sj, inv_j, prefactor)))
        return out
    return build


def _kx_relation(i, sign_x, coefficient):
    """k_i(z) X-(w) k_i(z)^-1 = g X-(w)  or  k_i(z)^-1 X+(w) k_i(z) = g X+(w)."""
    def build(fam, cfg):
        out = []
        for s in "+-":
            x = fam.X(sign_x, "w")
            if sign_x == "-":
                lhs = fam.k(s, i, "z") * x * fam.k_inv(s, i, "z")
            else:
                lhs = fam.k_inv(s, i, "z") * x * fam.k(s, i, "z")
            g = Distribution.rational(qexpr(coefficient, fam.t), spectral_region(s))
            out.append((s, lhs - g * x))
        return out
    return build


def _xx_relation(sign, coef_zw, coef_wz):
    """coef_zw X(z) X(w) + coef_wz X(w) X(z), each coefficient in its monomial's region."""
    def build(fam, cfg):
        xz = fam.X(sign, "z")
        xw = fam.X(sign, "w")
        a = Distribution.rational(qexpr(coef_zw, fam.t), Region(("z", "w")))
        b = Distribution.rational(qexpr(coef_wz, fam.t), Region(("w", "z")))
        return [(sign, a * (xz * xw) + b * (xw * xz))]
    return build


def _anticommutator_frts(fam, cfg):
    """{X-(w), X+(z)} = -1/(q-1/q) [delta(z/w) phi(z) - delta(z/w) psi(w)] at c = 0."""
    q = fam.q
    lhs = anticommutator(fam.X("-", "w"), fam.X("+", "z"))
    d = unit_delta("w", "z")
    rhs = (d * fam.phi("z") - d * fam.psi("w")) * (-(q - q.inverse()).inverse())
    return [("", lhs - rhs)]


def _anticommutator_drinfeld(fam, cfg):
    """{X+(z), X-(w)} = 1/(q-1/q) [delta(w/z) psi(w) - delta(w/z) phi(z)] at c = 0."""
    q = fam.q
    lhs = anticommutator(fam.X("+", "z"), fam.X("-", "w"))
    d = unit_delta("w", "z")
    rhs = (d * fam.psi("w") - d * fam.phi("z")) * (q - q.inverse()).inverse()
    return [("", lhs - rhs)]


def _anticommutator_fit(fam, cfg):
    """kappa with {X-(w), X+(z)} = kappa delta(z/w) [phi(z) + psi(w)].

    phi and psi coincide up to sign as rational matrices here, so this is the
    only combination of the original shape that can be supported on z = w.
    """
    lhs = anticommutator(fam.X("-", "w"), fam.X("+", "z"))
    d = unit_delta("w", "z")
    kappa = fit_scalar(lhs, d * fam.phi("z") + d * fam.psi("w"))
    return [("{X-(w), X+(z)} = kappa delta(z/w) [phi(z) + psi(w)]", kappa)]


def _phi_psi_sign(fam, cfg):
    """phi + psi as a rational matrix (zero means psi = -phi)."""
    return [("phi + psi", fam.phi_matrix() + fam.psi_matrix())]


def _phiphi(kind):
    def build(fam, cfg):
        f = fam.phi if kind == "phi" else fam.psi
        return [("", commutator(f("z"), f("w")))]
    return build


def _phipsi(fam, cfg):
    """phi(z) psi(w) phi(z)^-1 psi(w)^-1 = g(z/w) / g(z/w) = 1 at level zero."""
    phi_inv = Distribution.rational(invert(fam.phi_matrix()), evalrep.region_for("+", "z"))
    psi_inv = Distribution.rational(invert(fam.psi_matrix()).rename({"z": "w"}),
                                    evalrep.region_for("-", "w"))
    lhs = fam.phi("z") * fam.psi("w") * phi_inv * psi_inv
    ident = GradedMatrix.identity(V3)
    return [("", lhs - Distribution.rational(ident, Region(("z", "1", "w"))))]


_GAMMA = "(z-w*q^2)*(z*q-w)/((z*q^2-w)*(z-w*q))"


def _conj_relation(kind, sign_x):
    """phi X- phi^-1, phi^-1 X+ phi, psi X- psi^-1, psi^-1 X+ psi against the same factor."""
    def build(fam, cfg):
        s = "+" if kind == "phi" else "-"
        m = fam.phi_matrix() if kind == "phi" else fam.psi_matrix()
        a = fam.rational(m, s, "z")
        a_inv = fam.rational(invert(m), s, "z")
        x = fam.X(sign_x, "w")
        lhs = a * x * a_inv if sign_x == "-" else a_inv * x * a
        g = Distribution.rational(qexpr(_GAMMA, fam.t), spectral_region(s))
        return [("", lhs - g * x)]
    return build


def _rll(pair):
    def build(fam, cfg):
        return [("".join(pair), evalrep.rll_residual(cfg_r(cfg), fam.convention, pair))]
    return build


def _gauss_reconstruction(fam, cfg):
    r = cfg_r(cfg)
    out = []
    for s in "+-":
        lop = evalrep.LOperator(s, evalrep.l_matrix(r, fam.convention), fam.convention)
        g = fam.gauss_for(s)
        for ij, m in sorted(evalrep.reconstruction_residual(lop, g).items()):
            out.append(("%s (%d,%d)" % (s, ij[0] + 1, ij[1] + 1), m))
    return out


def _k_invertible(fam, cfg):
    out = []
    for s in "+-":
        for i in (1, 2, 3):
            k = fam.k_matrix(s, i)
            try:
                res = k * invert(k) - GradedMatrix.identity(V3)
            except ZeroDivisionError:
                res = GradedMatrix.identity(V3)
            out.append(("k%s_%d" % (s, i), res))
    return out


def _h_commutes(which, variant="original"):
    def build(fam, cfg):
        out = []
        for s in "+-":
            m = fam.h1_matrix(s) if which == 1 else fam.h2_matrix(s, variant)
            h = fam.rational(m, s, "z")
            for sx in "+-":
                for i in (1, 2):
                    out.append(("H%s X%s_%d" % (s, sx, i), commutator(h, fam.X_i(sx, i, "w"))))
        return out
    return build


def _central(fam, cfg):
    out = []
    for s in "+-":
        res = fam.central_matrix(s) - GradedMatrix.identity(V3)
        out.append((s, fam.rational(res, s, "z")))
    return out


def _y_original(fam, cfg):
    return [(s, fam.Y(s, "z")) for s in "+-"]


def _y_fit(fam, cfg):
    out = []
    for s in "+-":
        kappa = fit_scalar(fam.X_i(s, 2, "z"), fam.X_i(s, 1, "z", fam.q.inverse()))
        out.append(("X%s_2(z) = kappa X%s_1(z/q)" % (s, s), kappa))
    return out


def _proportionality_coefficient(fam, sign):
    q, h = fam.q, fam.sqrt_q
    c = -h.inverse() if sign == "+" else h
    return (q - q.inverse()) * (ONE + c)


def _proportionality_original(fam, cfg):
    out = []
    for s in "+-":
        out.append((s, fam.X(s, "z") - fam.X_i(s, 1, "z") * _proportionality_coefficient(fam, s)))
    return out


def _proportionality_fit(fam, cfg):
    out = []
    for s in "+-":
        kappa = fit_scalar(fam.X(s, "z"), fam.X_i(s, 1, "z"))
        out.append(("X%s(z) = kappa X%s_1(z)" % (s, s), kappa))
    return out


SERRE_PLUS = (
    (("z3", "z1", "z2"), "(z3-z1*q^-1)*(z3-z1*q^3)*(z1-z2*q^2)/(z3-z1*q)"),
    (("z3", "z2", "z1"),
     "(z2-z1*q^2)*(z2-z1*q^-1)*(z3-z1*q^-1)*(z3-z1*q^3)/((z1-z2*q^-1)*(z3-z1*q))"),
    (("z1", "z2", "z3"),
     "-(z1-z3*q^2)*(z1-z3*q)*(z1*q-z3*q^-1)*(z1-z2*q^2)/((z1-z3)*(z3-z1*q^2))"),
    (("z2", "z1", "z3"),
     "-(z1-z3*q^2)*(z1-z3*q)*(z1*q-z3*q^-1)*(z2-z1*q^2)*(z2-z1*q^-1)"
     "/((z1-z3)*(z3-z1*q^2)*(z1-z2*q^-1))"),
)
SERRE_MINUS = (
    (("z3", "z1", "z2"), "(z3-z1*q)*(z3-z1*q^-3)*(z1-z2*q^-2)/(z3-z1*q^-1)"),
    (("z3", "z2", "z1"),
     "(z2-z1*q^-2)*(z2-z1*q)*(z3-z1*q)*(z3-z1*q^-3)/((z1-z2*q)*(z3-z1*q^-1))"),
    (("z1", "z2", "z3"),
     "-(z1-z3*q^-2)*(z1-z3*q^-1)*(z1*q-z3*q)*(z1-z2*q^-2)/((z1-z3)*(z3-z1*q^-2))"),
    (("z2", "z1", "z3"),
     "-(z1-z3*q^-2)*(z1-z3*q^-1)*(z1*q-z3*q)*(z2-z1*q^-2)*(z2-z1*q)"
     "/((z1-z3)*(z3-z1*q^-2)*(z1-z2*q))"),
)


def serre_residual(fam, sign, index, regions, order_of_product="left"):
    """Sum of the four coefficient * X X X terms of the q-Serre relation."""
    mode, fixed = parse_serre_regions(regions)
    table = SERRE_PLUS if sign == "+" else SERRE_MINUS
    xs = {v: fam.X_current(sign, index, v) for v in ("z1", "z2", "z3")}
    total = Distribution.zero()
    for monomial, text in table:
        region = Region(monomial) if mode == "monomial" else fixed
        coef = Distribution.rational(qexpr(text, fam.t), region)
        a, b, c = (xs[v] for v in monomial)
        prod = (a * b) * c if order_of_product == "left" else a * (b * c)
        total = total + coef * prod
    return total


def _serre(sign, index):
    def build(fam, cfg):
        if cfg.serre_regions is None:
            raise ConfigError("the q-Serre checks need a region assignment")
        return [("", serre_residual(fam, sign, index, cfg.serre_regions))]
    return build


def _rmatrix_check(name):
    def build(fam, cfg):
        if name == "classical-limit":
            return [("", rmatrix.classical_limit_residual(cfg_r(cfg, symbolic=True)))]
        r = cfg_r(cfg)
        fn = {
            "ybe": rmatrix.ybe_residual,
            "unitarity": rmatrix.unitarity_residual,
            "equal-argument": rmatrix.equal_argument_residual,
            "ratio": rmatrix.ratio_residual,
        }.get(name)
        if fn is not None:
            return [("", fn(r))]
        if name == "parity":
            bad = {pos: v for pos, v in r.entries.items()
                   if (r.rows.parity(pos[0]) + r.cols.parity(pos[1])) % 2}
            return [("", GradedMatrix(r.rows, r.cols, bad))]
        if name == "inverse":
            z, w = RationalFunction.var("z"), RationalFunction.var("w")
            swapped = rmatrix.at(r, w, z)
            return [("", invert(swapped) - rmatrix.r21(r))]
        raise KeyError(name)
    return build


def cfg_r(cfg, symbolic=False):
    """The R-matrix for a configuration (possibly corrupted for mutation runs)."""
    if cfg.r_override is not None:
        return cfg.r_override_symbolic if symbolic else cfg.r_override
    return rmatrix.build_r(None if symbolic else cfg.t)


def _hopf(name):
    def build(fam, cfg):
        r = cfg_r(cfg)
        lm = evalrep.l_matrix(r, fam.convention)
        if name == "coproduct-rll":
            return [("", evalrep.coproduct_rll_residual(r, fam.convention))]
        if name == "antipode":
            return [("", evalrep.antipode_residual(lm))]
        return [("", evalrep.coassociativity_residual(lm))]
    return build


# the catalog --------------------------------------------------------------------

def _rel(key, locus, arity, suite, kind, build, variant="original", asserted=True,
         level0=False, note=""):
    return Relation(RelationId(key, locus, arity, variant), suite, kind, build,
                    asserted, level0, note)


def _catalog():
    out = []
    add = out.append
    # R-matrix
    for name, locus in (("ybe", "graded Yang-Baxter equation"),
                        ("unitarity", "unitarity R21(z/w) R(w/z) = 1"),
                        ("inverse", "R21(z/w) = R(w/z)^-1 via matrix inversion"),
                        ("equal-argument", "R(z, z) = P"),
                        ("classical-limit", "R at q = 1 is the identity"),
                        ("parity", "parity conservation of R"),
                        ("ratio", "R depends on z/w only")):
        add(_rel("rmatrix/" + name, locus, 2 if name in ("ybe",) else 1, "rmatrix", "matrix",
                 _rmatrix_check(name)))
    # FRTS relations and the Gauss decomposition
    for pair in evalrep.RLL_PAIRS:
        add(_rel("rll/%s" % "".join(pair), "RLL relation L%s L%s" % pair, 2, "frts",
                 "distribution", _rll(pair), level0=pair[0] != pair[1]))
    add(_rel("gauss/reconstruction", "Gauss decomposition of L+-", 1, "frts", "matrix",
             _gauss_reconstruction))
    add(_rel("gauss/k-invertible", "k+-_i invertible", 1, "frts", "matrix", _k_invertible))
    kk = (
        ("2.12/k1k1-samesign", 1, False, 1, False, False, None),
        ("2.12/k1k1-mixed", 1, False, 1, False, True, None),
        ("2.12/k2k2-samesign", 2, False, 2, False, False, None),
        ("2.12/k3k3-samesign", 3, False, 3, False, False, None),
        ("2.12/k3k3-mixed", 3, False, 3, False, True, None),
        ("2.12/k1k2-samesign", 1, False, 2, False, False, None),
        ("2.12/k1k2-mixed", 1, False, 2, False, True, "(z-w)/(z*q^2-w)"),
        ("2.12/k1k3inv-samesign", 1, False, 3, True, False, None),
        ("2.12/k1k3inv-mixed", 1, False, 3, True, True,
         "(z-w)*(z*q-w)/((z*q^2-w)*(z*q^3-w))"),
        ("2.12/k2k2-mixed", 2, False, 2, False, True, "(z-w*q)/(z*q-w)"),
        ("2.12/k2invk3inv-samesign", 2, True, 3, True, False, None),
        ("2.12/k2invk3inv-mixed", 2, True, 3, True, True, "(z-w)/(z*q^2-w)"),
    )
    for key, i, ii, j, ij, mixed, pre in kk:
        signs = "+" if key in ("2.12/k1k1-mixed", "2.12/k3k3-mixed") else "+-"
        add(_rel(key, "Cartan current exchange", 2, "frts",
                 "distribution", _k_relation(i, ii, j, ij, mixed, pre, signs), level0=mixed))
    kx = (
        ("2.13/k1-xminus", 1, "-", "(z*q^2-w)/(q*(z-w))"),
        ("2.13/k1-xplus", 1, "+", "(z*q^2-w)/(q*(z-w))"),
        ("2.13/k2-xminus", 2, "-", "(z-w*q^2)*(z*q-w)/(q*(z-w)*(z-w*q))"),
        ("2.13/k2-xplus", 2, "+", "(z-w*q^2)*(z*q-w)/(q*(z-w)*(z-w*q))"),
        ("2.13/k3-xminus", 3, "-", "(z-w*q^3)/(q*(z-w*q))"),
        ("2.13/k3-xplus", 3, "+", "(z-w*q^3)/(q*(z-w*q))"),
    )
    for key, i, sx, g in kx:
        add(_rel(key, "Cartan-current conjugation of X%s" % sx, 2, "frts", "distribution",
                 _kx_relation(i, sx, g), level0=True))
    add(_rel("2.14/xminus-xminus", "X-X- exchange, original form", 2, "frts", "distribution",
             _xx_relation("-", "(z-w*q)/(z*q-w)", "(z-w*q^2)/(z*q^2-w)"), asserted=False,
             note="original form; compared with the corrected form, no expectation asserted"))
    add(_rel("2.14/xplus-xplus", "X+X+ exchange, original form", 2, "frts", "distribution",
             _xx_relation("+", "(z-w*q^2)/(z*q^2-w)", "(z-w*q)/(z*q-w)"), asserted=False,
             note="original form; compared with the corrected form, no expectation asserted"))
    add(_rel("2.15/anticommutator", "{X-(w), X+(z)} in the FRTS form", 2, "frts",
             "distribution", _anticommutator_frts, level0=True))
    add(_rel("2.15/anticommutator-fit", "scalar kappa for the anticommutator with psi sign-flipped",
             2, "frts", "fit", _anticommutator_fit, variant="fitted", asserted=False,
             level0=True, note="diagnostic for the anticommutator; no expectation asserted"))
    # Drinfeld relations
    add(_rel("thm2/phi-plus-psi", "phi(z) + psi(z) = 0 as rational matrices", 1, "drinfeld",
             "matrix", _phi_psi_sign, variant="diagnostic", asserted=False,
             note="observed relation between the two Cartan currents; no expectation asserted"))
    add(_rel("thm2/phi-phi", "phi(z) phi(w) = phi(w) phi(z)", 2, "drinfeld", "distribution",
             _phiphi("phi")))
    add(_rel("thm2/psi-psi", "psi(z) psi(w) = psi(w) psi(z)", 2, "drinfeld", "distribution",
             _phiphi("psi")))
    add(_rel("thm2/phi-psi", "phi psi phi^-1 psi^-1 exchange factor", 2, "drinfeld",
             "distribution", _phipsi, level0=True))
    for kind in ("phi", "psi"):
        for sx in "-+":
            add(_rel("thm2/%s-x%s" % (kind, "minus" if sx == "-" else "plus"),
                     "%s conjugation of X%s" % (kind, sx), 2, "drinfeld", "distribution",
                     _conj_relation(kind, sx), level0=True))
    add(_rel("2.17/anticommutator", "{X+(z), X-(w)} in the Drinfeld form", 2, "drinfeld",
             "distribution", _anticommutator_drinfeld, level0=True))
    add(_rel("2.18/xminus-xminus", "Drinfeld X-X- exchange, original form", 2, "drinfeld",
             "distribution", _xx_relation("-", "(z-w*q)/(z*q-w)", "(z-w*q^2)/(z*q^2-w)"),
             asserted=False, note="original form; no expectation asserted"))
    add(_rel("2.18/xplus-xplus", "Drinfeld X+X+ exchange, original form", 2, "drinfeld",
             "distribution", _xx_relation("+", "(z-w*q^2)/(z*q^2-w)", "(z-w*q)/(z*q-w)"),
             asserted=False, note="original form; no expectation asserted"))
    # hidden symmetry
    add(_rel("prop1/h1-commutes", "k1(z) k3(zq^3) commutes with X_i", 2, "hidden",
             "distribution", _h_commutes(1)))
    add(_rel("prop1/h2-commutes", "k2(z) (k1(z/q) k1(z/q^2)^-1)^-1 commutes with X_i", 2,
             "hidden", "distribution", _h_commutes(2)))
    add(_rel("prop1/h2-commutes/k3-variant", "k2(z) (k1(z/q) k3(z/q^2)^-1)^-1 commutes with X_i",
             2, "hidden", "distribution", _h_commutes(2, "k3"), variant="typo-alternative",
             asserted=False, note="reading of the repeated k1 factor as k3"))
    add(_rel("prop2/central", "central current equals the identity", 1, "hidden",
             "distribution", _central))
    add(_rel("prop3/y-zero", "Y(z) = 0 on V, original coefficients", 1, "hidden", "distribution",
             _y_original))
    add(_rel("prop3/y-fit", "scalar kappa with X_2(z) = kappa X_1(z/q)", 1, "hidden", "fit",
             _y_fit, variant="fitted", asserted=False))
    add(_rel("prop5/xminus-xminus", "corrected X-X- exchange", 2, "hidden", "distribution",
             _xx_relation("-", "(z*q^2-w)*(z-w*q)", "(z*q-w)*(z-w*q^2)"), variant="corrected"))
    add(_rel("prop5/xplus-xplus", "corrected X+X+ exchange", 2, "hidden", "distribution",
             _xx_relation("+", "(z*q-w)*(z-w*q^2)", "(z*q^2-w)*(z-w*q)"), variant="corrected"))
    add(_rel("thm3/proportionality", "X(z) = (q-1/q)(1 -+ q^(-+1/2)) X_1(z)", 1, "hidden",
             "distribution", _proportionality_original))
    add(_rel("thm3/proportionality-fit", "scalar kappa with X(z) = kappa X_1(z)", 1, "hidden",
             "fit", _proportionality_fit, variant="fitted", asserted=False))
    # q-Serre
    for sign, name in (("+", "plus"), ("-", "minus")):
        for index, label in ((1, "1"), (2, "2"), (None, "empty")):
            note = "i = empty read as the combined current X" if index is None else ""
            add(_rel("prop6/serre-%s/i=%s" % (name, label), "q-Serre relation for X%s" % sign,
                     3, "serre", "distribution", _serre(sign, index), note=note))
    # Hopf structure at level zero
    add(_rel("hopf/coproduct-rll", "RLL for the coproduct on V (x) V", 2, "hopf", "matrix",
             _hopf("coproduct-rll")))
    add(_rel("hopf/antipode", "L(z) S(L(z)) = 1", 1, "hopf", "matrix", _hopf("antipode")))
    add(_rel("hopf/coassociativity", "coassociativity on V (x) V (x) V", 1, "hopf", "matrix",
             _hopf("coassociativity")))
    return out


CATALOG = _catalog()
BY_KEY = {r.rid.key: r for r in CATALOG}
if len(BY_KEY) != len(CATALOG):  # pragma: no cover - guards the table above
    raise RuntimeError("duplicate relation keys")


def select(selection):
    """Relations for a suite name, 'all', a list of keys, or an empty selection."""
    if not selection:
        return []
    if isinstance(selection, str):
        if selection == "all":
            return list(CATALOG)
        if selection in SUITES:
            return [r for r in CATALOG if r.suite == selection]
        if selection in BY_KEY:
            return [BY_KEY[selection]]
        raise ConfigError("unknown suite or relation %r" % selection)
    out = []
    for key in selection:
        if key not in BY_KEY:
            raise ConfigError("unknown relation %r" % key)
        out.append(BY_KEY[key])
    return out


# checking -----------------------------------------------------------------------

def _describe(v):
    if isinstance(v, GradedMatrix):
        for (i, j), x in sorted(v.entries.items()):
            return "entry (%d,%d) = %s" % (i + 1, j + 1, x)
    return str(v)


def decide(residual, order=DEFAULT_ORDER):
    """(exact_zero, series_zero, witness) for a distribution residual."""
    canon = residual.canonical()
    exact = canon.is_zero()
    series = residual.to_series(order)
    ser = series.is_zero()
    witness = ""
    if not exact:
        witness = canon.witness()
    elif not ser:
        witness = "series: " + series.witness()
    return exact, ser, witness


# Computation failures that mean the relation cannot hold as stated; anything
# else is a bug and propagates.
FAILURES = (DistributionError, RegionError, UnsupportedPoleError, ArithmeticError,
            evalrep.GaussError, evalrep.ConventionError)


def check(relation, family, config):
    """Run one catalog entry and return its RelationReport."""
    if isinstance(relation, str):
        if relation not in BY_KEY:
            raise ConfigError("unknown relation %r" % relation)
        relation = BY_KEY[relation]
    rid = relation.rid
    rep = RelationReport(rid.key, rid.locus, rid.arity, rid.variant, relation.suite,
                         relation.asserted, HOLDS, "")
    if relation.note:
        rep.notes.append(relation.note)
    if relation.level0:
        rep.notes.append("level-0 instantiation (q^c = 1)")
    if relation.suite == "serre":
        rep.notes.append("region assignment: %s" % config.serre_regions)
    start = time.perf_counter()
    try:
        with evalrep.pole_context(config.t):
            if relation.suite != "rmatrix" and isinstance(family, Exception):
                raise family
            parts = relation.build(family, config)
            _evaluate(relation, parts, config, rep)
    except ConfigError:
        raise
    except FAILURES as exc:
        rep.verdict = VIOLATED
        rep.method = rep.method or "exact-distribution"
        rep.witness = "%s: %s" % (type(exc).__name__, exc)
        rep.exact = False
    rep.elapsed = round(time.perf_counter() - start, 4)
    return rep


def _evaluate(relation, parts, config, rep):
    if relation.kind == "matrix":
        rep.method = "exact-rational"
        bad = [(label, m) for label, m in parts if not m.is_zero()]
        rep.exact = not bad
        if bad:
            label, m = bad[0]
            rep.verdict = VIOLATED
            rep.witness = ("%s: " % label if label else "") + _describe(m)
        return
    if relation.kind == "fit":
        rep.method = "exact-distribution"
        found = True
        for label, kappa in parts:
            if kappa is None:
                found = False
                rep.notes.append("%s: no scalar fits" % label)
            else:
                rep.notes.append("%s with kappa = %s" % (label, kappa))
        rep.exact = found
        rep.verdict = HOLDS if found else VIOLATED
        return
    rep.method = "both"
    exact_all, series_all = True, True
    for label, res in parts:
        exact, ser, witness = decide(res, config.order)
        exact_all &= exact
        series_all &= ser
        if (not exact or not ser) and not rep.witness:
            rep.witness = ("%s: " % label if label else "") + witness
    rep.exact, rep.series = exact_all, series_all
    if exact_all != series_all:
        rep.notes.append("exact calculus and series oracle disagree")
    rep.verdict = HOLDS if exact_all and series_all else VIOLATED


def build_family_safely(config, convention=None):
    """The current family, or the exception that prevented building it.

    A corrupted R-matrix is used with the explicit aux-first convention, since
    the convention validator would (correctly) reject both readings.
    """
    if config.r_override is not None and convention is None:
        convention = "aux-first"
    try:
        return evalrep.build_family(r=config.r_override, t=config.t, convention=convention)
    except FAILURES as exc:
        return exc


def run_suite(selection, family, config):
    """Check the selected relations in catalog order."""
    rels = select(selection)
    if any(r.suite == "serre" for r in rels) and config.serre_regions is None:
        raise ConfigError("the q-Serre checks need a region assignment")
    return [check(r, family, config) for r in rels]


def aggregate(reports):
    """Conjunction over relations that carry an asserted expectation."""
    return all(r.holds for r in reports if r.asserted)


def compare_forms(weak, strong, family, config):
    """Side-by-side verdicts of an original and a corrected form; nothing asserted."""
    a = check(weak, family, config)
    b = check(strong, family, config)
    return {
        "original": {"key": a.key, "verdict": a.verdict, "witness": a.witness},
        "corrected": {"key": b.key, "verdict": b.verdict, "witness": b.witness},
        "distinguishable": a.verdict != b.verdict,
    }


def mutation_config(name, mode="scale", t=None, order=DEFAULT_ORDER, serre_regions="monomial"):
    """Configuration whose R-matrix has one entry corrupted."""
    return CatalogConfig(t=t, order=order, serre_regions=serre_regions,
                         r_override=rmatrix.corrupt(name, mode, t),
                         r_override_symbolic=rmatrix.corrupt(name, mode, None))
