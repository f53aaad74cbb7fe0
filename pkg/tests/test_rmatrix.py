"""The R-matrix, with an independent numeric oracle for the Yang-Baxter equation.

The oracle evaluates the entry formulas with sympy at random rational points
and applies the graded embeddings index by index, without going through the
package's tensor-product code.
"""

import random
from fractions import Fraction

import pytest
import sympy

from ospcheck import rmatrix
from ospcheck.arith import RationalFunction
from ospcheck.linalg import V3

PAR = (0, 1, 0)
T, Z, W = sympy.symbols("t z w")


def oracle_r(tv, x):
    """R(x) at t = tv as a dict {(row, col): Fraction} using sympy evaluation."""
    vals = {"1": sympy.Integer(1)}
    for name, text in rmatrix.ENTRY_TEXT.items():
        expr = sympy.sympify(text.replace("^", "**"), locals={"t": T, "z": Z, "w": W})
        vals[name] = expr.subs({T: tv, Z: x, W: 1})
    return {pos: sympy.Rational(vals[name]) for pos, name in rmatrix.LAYOUT}


def apply_on_pair(r, slots, vec):
    """Act with an even operator r on tensor slots (a, b) of a 3-fold vector."""
    a, b = slots
    out = {}
    for idx, c in vec.items():
        i = [idx[a], idx[b]]
        # Koszul sign for moving slot b past the slots strictly between a and b
        between = sum(PAR[idx[k]] for k in range(a + 1, b))
        for (row, col), v in r.items():
            if col != 3 * i[0] + i[1]:
                continue
            ni = (row // 3, row % 3)
            sign = (-1) ** ((PAR[i[1]] + PAR[ni[1]]) * between) if b - a > 1 else 1
            new = list(idx)
            new[a], new[b] = ni
            key = tuple(new)
            out[key] = out.get(key, 0) + sign * v * c
    return {k: v for k, v in out.items() if v != 0}


def ybe_oracle(tv, x, y):
    r_x, r_xy, r_y = oracle_r(tv, x), oracle_r(tv, x * y), oracle_r(tv, y)
    for basis in [(i, j, k) for i in range(3) for j in range(3) for k in range(3)]:
        v = {basis: 1}
        left = apply_on_pair(r_x, (0, 1), apply_on_pair(r_xy, (0, 2), apply_on_pair(r_y, (1, 2), v)))
        right = apply_on_pair(r_y, (1, 2), apply_on_pair(r_xy, (0, 2), apply_on_pair(r_x, (0, 1), v)))
        keys = set(left) | set(right)
        if any(sympy.simplify(left.get(k, 0) - right.get(k, 0)) != 0 for k in keys):
            return False
    return True


@pytest.mark.parametrize("seed", range(3))
def test_ybe_oracle_at_random_points(seed):
    rng = random.Random(seed)
    tv = sympy.Rational(rng.randint(2, 5), rng.randint(1, 3))
    x = sympy.Rational(rng.randint(2, 9), rng.randint(2, 7))
    y = sympy.Rational(rng.randint(2, 9), rng.randint(2, 7))
    assert ybe_oracle(tv, x, y)


def test_ybe_oracle_detects_corruption(monkeypatch):
    bad = dict(rmatrix.ENTRY_TEXT)
    bad["c"] = "2*(" + bad["c"] + ")"
    monkeypatch.setattr(rmatrix, "ENTRY_TEXT", bad)
    assert not ybe_oracle(sympy.Integer(2), sympy.Rational(3, 5), sympy.Rational(7, 2))


def test_engine_ybe_numeric():
    assert rmatrix.ybe_residual(rmatrix.build_r(2)).is_zero()


@pytest.mark.slow
def test_engine_ybe_symbolic():
    assert rmatrix.ybe_residual(rmatrix.build_r()).is_zero()


def test_unitarity_and_inverse():
    r = rmatrix.build_r()
    assert rmatrix.unitarity_residual(r).is_zero()
    z, w = RationalFunction.var("z"), RationalFunction.var("w")
    from ospcheck.linalg import invert
    assert invert(rmatrix.at(r, w, z)) == rmatrix.r21(r)


def test_specialisations():
    r = rmatrix.build_r()
    assert rmatrix.equal_argument_residual(r).is_zero()
    assert rmatrix.classical_limit_residual(r).is_zero()
    assert rmatrix.ratio_residual(r).is_zero()


def test_parity_and_pattern():
    r = rmatrix.build_r()
    assert rmatrix.parity_check(r)
    assert rmatrix.zero_pattern(r) == rmatrix.expected_pattern()
    assert r.rows == V3.tensor(V3)


def test_engine_agrees_with_oracle_entries():
    r = rmatrix.build_r(Fraction(3, 2))
    x = Fraction(5, 7)
    got = rmatrix.of_ratio(r, x)
    want = oracle_r(sympy.Rational(3, 2), sympy.Rational(5, 7))
    for pos, v in want.items():
        assert got[pos].constant_value() == Fraction(int(v.p), int(v.q))


@pytest.mark.parametrize("t", [0, 1, -1])
def test_degenerate_t_rejected(t):
    with pytest.raises(ValueError):
        rmatrix.check_t_value(t)


@pytest.mark.parametrize("name", rmatrix.ENTRY_NAMES)
def test_single_corruption_breaks_ybe_or_unitarity(name):
    bad = rmatrix.corrupt(name, "scale", 2)
    assert not (rmatrix.ybe_residual(bad).is_zero() and rmatrix.unitarity_residual(bad).is_zero())


def test_corrupt_rejects_unknown_entry():
    with pytest.raises(ValueError):
        rmatrix.corrupt("zz")
