"""Evaluation module: L-operators, Gauss factors and currents.

Gauss factors and currents are compared with the sympy model in
``sympy_oracle``, which redoes slicing, elimination and residues on its own.
"""

from fractions import Fraction

import pytest
import sympy

import sympy_oracle as O
from ospcheck import evalrep, rmatrix
from ospcheck.arith import RationalFunction, format_rational, parse
from ospcheck.linalg import GradedMatrix, V3

T2 = Fraction(2)


def to_sympy(m):
    out = sympy.zeros(3)
    for (i, j), v in m.entries.items():
        out[i, j] = sympy.sympify(format_rational(v).replace("^", "**"), locals={"z": O.z_})
    return out


def equal(m, ref):
    return O._simp(to_sympy(m) - ref) == sympy.zeros(3)


def current_series(poles, order):
    """sum_p M_p z^-1 delta(p/z) = sum_n M_p p^n z^(-n-1), exponents within the window."""
    out = {}
    for p, m in poles.items():
        for n in range(-order - 1, order + 1):
            if abs(n + 1) > order:
                continue
            for i in range(3):
                for j in range(3):
                    if m[i, j] != 0:
                        key = ((i, j), (-n - 1))
                        out[key] = out.get(key, 0) + m[i, j] * p ** n
    return {k: v for k, v in out.items() if v != 0}


def engine_series(d, order):
    out = {}
    for (entry, mono), v in d.to_series(order).coeffs.items():
        (var, exp), = mono if mono else (("z", 0),)
        assert var == "z"
        c = v.constant_value()
        out[(entry, exp)] = sympy.Rational(c.numerator, c.denominator)
    return out


# conventions ---------------------------------------------------------------------

@pytest.mark.slow
def test_exactly_one_convention_passes():
    rep = evalrep.validate_convention(t=T2)
    assert rep.selected == "aux-first"
    assert all(rep.outcomes["aux-first"].values())
    assert not all(rep.outcomes["aux-second"].values())


def test_validator_rejects_corrupted_matrix():
    bad = rmatrix.corrupt("c", "scale", T2)
    with pytest.raises(evalrep.ConventionError):
        evalrep.validate_convention(bad, T2)


def test_odd_blocks_are_odd(family2):
    lop = evalrep.build_L("+", rmatrix.build_r(T2), T2, family2.convention)
    for i in range(3):
        for j in range(3):
            if (V3.parity(i) + V3.parity(j)) % 2 == 0 and lop.block(i, j).entries:
                assert lop.block(i, j).homogeneous_parity() == 0
    # an odd auxiliary index makes the block an odd operator on the quantum space
    for i, j in ((0, 1), (1, 0), (1, 2), (2, 1)):
        assert lop.block(i, j).homogeneous_parity() == 1


# Gauss factors -------------------------------------------------------------------

def test_gauss_matches_oracle(family2):
    k, e, f = O.gauss(2)
    g = family2.plus
    for i in range(3):
        assert equal(g.k[i], k[i])
    for key in e:
        assert equal(g.e[key], e[key])
    for key in f:
        assert equal(g.f[key], f[key])


@pytest.mark.parametrize("sign", "+-")
def test_reconstruction_is_exact(sign, family2, at_t2):
    lop = evalrep.build_L(sign, rmatrix.build_r(T2), T2, family2.convention)
    res = evalrep.reconstruction_residual(lop, family2.gauss_for(sign))
    assert all(m.is_zero() for m in res.values())


def test_perturbed_factor_breaks_reconstruction(family2, at_t2):
    lop = evalrep.build_L("+", rmatrix.build_r(T2), T2, family2.convention)
    g = family2.plus
    k = list(g.k)
    k[1] = k[1] + GradedMatrix.unit(V3, 0, 0)
    bad = evalrep.GaussFactors(g.sign, tuple(k), g.e, g.f)
    res = evalrep.reconstruction_residual(lop, bad)
    assert not all(m.is_zero() for m in res.values())


def test_gauss_of_identity_is_trivial():
    ident = GradedMatrix.identity(V3.tensor(V3))
    lop = evalrep.LOperator("+", ident, "aux-first")
    g = evalrep.gauss(lop)
    assert all(m == GradedMatrix.identity(V3) for m in g.k)
    assert all(m.is_zero() for m in g.e.values())
    assert all(m.is_zero() for m in g.f.values())


def test_singular_leading_block_raises():
    lop = evalrep.LOperator("+", GradedMatrix.zero(V3.tensor(V3)), "aux-first")
    with pytest.raises(evalrep.GaussError):
        evalrep.gauss(lop)


def test_k_factors_are_even_and_invertible(family2):
    for sign in "+-":
        for i in (1, 2, 3):
            k = family2.k_matrix(sign, i)
            assert k.homogeneous_parity() == 0
            assert k * family2.k_inverse(sign, i) == GradedMatrix.identity(V3)


# currents ----------------------------------------------------------------------------

@pytest.mark.parametrize("sign,index", [("+", 1), ("+", 2), ("-", 1), ("-", 2)])
def test_currents_match_oracle_series(sign, index, family2, at_t2):
    xp, xm = O.currents(2)
    poles = (xp if sign == "+" else xm)[index]
    d = family2.X_i(sign, index, "z")
    assert engine_series(d, 6) == current_series(poles, 6)


@pytest.mark.parametrize("sign,index", [("+", 1), ("+", 2), ("-", 1), ("-", 2)])
def test_currents_are_delta_supported(sign, index, family2, at_t2):
    d = family2.X_i(sign, index, "z").canonical()
    assert d.terms
    assert all(len(term.atoms) == 1 and term.atoms[0].order == 0 for term in d.terms)


def test_phi_equals_minus_psi(family2):
    # oracle first: the rational matrices are negatives of each other
    phi, psi = O.phi_psi(2)
    assert O._simp(phi + psi) == sympy.zeros(3)
    assert equal(family2.phi_matrix(), phi)
    assert equal(family2.psi_matrix(), psi)


def test_central_element_is_identity(family2):
    for sign in "+-":
        assert family2.central_matrix(sign) == GradedMatrix.identity(V3)


# fitted constants (frozen from the sympy oracle at t = 2 and t = 3) --------------------

Y_KAPPA = {2: {"+": 2, "-": Fraction(-1, 2)}, 3: {"+": 3, "-": Fraction(-1, 3)}}
COMBINED_KAPPA = {2: {"+": Fraction(45, 4), "-": Fraction(15, 8)},
                  3: {"+": Fraction(320, 9), "-": Fraction(160, 27)}}


@pytest.mark.parametrize("tv", [2, 3])
def test_oracle_fitted_constants(tv):
    for s in "+-":
        assert O.y_kappa(tv, s) == Y_KAPPA[tv][s]
        assert O.combined_kappa(tv, s) == COMBINED_KAPPA[tv][s]


@pytest.mark.parametrize("tv", [2, 3])
def test_fitted_constants_follow_closed_forms(tv):
    q = Fraction(tv) ** 2
    for s, c in (("+", Fraction(tv)), ("-", Fraction(-1, tv))):
        assert Y_KAPPA[tv][s] == c
        assert COMBINED_KAPPA[tv][s] == (q - 1 / q) * (1 + c)


def test_engine_fits_match_frozen_values(family2, config2, at_t2):
    from ospcheck import catalog
    y = dict(zip("+-", (k for _, k in catalog._y_fit(family2, config2))))
    th = dict(zip("+-", (k for _, k in catalog._proportionality_fit(family2, config2))))
    for s in "+-":
        assert y[s] == RationalFunction.from_fraction(Fraction(Y_KAPPA[2][s]))
        assert th[s].constant_value() == COMBINED_KAPPA[2][s]


@pytest.mark.slow
def test_engine_fits_symbolic(family_symbolic, config_symbolic):
    from ospcheck import catalog
    y = dict(zip("+-", (k for _, k in catalog._y_fit(family_symbolic, config_symbolic))))
    th = dict(zip("+-", (k for _, k in catalog._proportionality_fit(family_symbolic, config_symbolic))))
    assert y["+"] == parse("t")
    assert y["-"] == parse("-1/t")
    assert th["+"] == parse("(t^2 - t^-2)*(1 + t)")
    assert th["-"] == parse("(t^2 - t^-2)*(1 - 1/t)")


# Hopf structure -----------------------------------------------------------------------

def test_hopf_residuals_vanish(family2):
    lm = evalrep.l_matrix(rmatrix.build_r(T2), family2.convention)
    assert evalrep.coassociativity_residual(lm).is_zero()
    assert evalrep.antipode_residual(lm).is_zero()


@pytest.mark.slow
def test_coproduct_preserves_rll():
    r = rmatrix.build_r(T2)
    assert evalrep.coproduct_rll_residual(r, "aux-first").is_zero()
