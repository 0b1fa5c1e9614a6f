import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from einstein_su.algebra_core import FlagSpec
from einstein_su.einstein_solver import (MultiPoly, SYMBOLS, EinsteinSolution, eliminate, mori_polynomial,
                                         normalized_vector, solve, solve_generic_newton, solve_stiefel_general,
                                         solve_stiefel_small, solve_su_l1_m2, solve_su_mori, solve_su_small,
                                         stiefel_factors, symbolic_components)
from einstein_su.poly import _evaluate_list
from einstein_su.ricci import GROUP, STIEFEL, certify


@pytest.fixture(scope="module")
def su5():
    return solve_su_l1_m2(2)


@pytest.fixture(scope="module")
def v4c6():
    return solve_stiefel_small("V4C6")


def test_every_solution_is_certified_by_brute_force(su5, v4c6):
    for s in list(su5) + list(v4c6):
        lam, res = certify(s.spec, s.metric)
        assert res < 1e-9 and lam > 0
        assert all(v > 0 for v in s.metric.values().values())


@pytest.mark.parametrize("t", [0.5, 2.0])
def test_scaling_covariance(su5, t):
    for s in su5:
        _, res = certify(s.spec, s.metric.scaled(t), s.lam / t)
        assert res < 1e-9


def test_su5_contains_bi_invariant_and_published_pair(su5):
    vecs = [normalized_vector(s.metric) for s in su5]
    assert any(max(abs(v - 1) for v in vec[:-1]) < 1e-12 for vec in vecs)
    pairs = [(s.metric.x6, s.metric.x8) for s in su5]
    for target in [(1.887796062233598, 1.815613725084982), (0.5297182359925161, 0.9617636996958176)]:
        assert any(abs(a - target[0]) < 1e-9 and abs(b - target[1]) < 1e-9 for a, b in pairs)


def test_su5_bi_invariant_lambda(su5):
    bi = [s for s in su5 if s.classification.nr_case == "bi-invariant"]
    assert len(bi) == 1 and bi[0].lam == pytest.approx(0.25)


def test_elimination_is_exact():
    """Substituting the solved coefficients back into the component differences
    gives the zero polynomial on the equations used and keeps the rest."""
    spec = FlagSpec(2, 2, 2)
    el = eliminate(spec, GROUP, {"x8": 1}, {"u2": "u1"}, gauge_free=False)
    comps, _ = symbolic_components(spec, GROUP)
    subs = {"u2": MultiPoly.var("u1", SYMBOLS), "x8": 1, "g": 0}
    vals = [comps[k].substitute(subs) for k in sorted(comps)]
    diffs = [(a - b).clear_monomial() for a, b in zip(vals, vals[1:])]
    zero = 0
    for d in diffs:
        for v in el.unknowns:
            d = d.substitute_ratio(v, el.numerators[v], el.det).clear_monomial()
        zero += d.is_zero()
    assert zero >= len(el.unknowns)


@pytest.mark.parametrize("n", [2, 5])
def test_mori_closed_forms(n):
    res = solve_su_mori(n)
    for s in res:
        if s.classification.naturally_reductive:
            continue
        m, x = s.metric, s.metric.x6
        assert m.u1 == pytest.approx(2 * x * (n * x * x + 5) / (n * n * x ** 4 + 10 * n * x * x + 22), abs=1e-12)
        assert m.v5 == pytest.approx((n ** 3 * x ** 7 + 18 * n * n * x ** 5 + 96 * n * x ** 3 + 146 * x) /
                                     (n ** 3 * x ** 6 + 15 * n * n * x ** 4 + 72 * n * x * x + 110), abs=1e-12)
        v4 = ((n * x * x + 4) * (n ** 3 * x ** 6 + 18 * n * n * x ** 4 + 96 * n * x * x + 146) /
              ((n + 4) * x * (n * x * x + 5) * (n * n * x ** 4 + 10 * n * x * x + 22)))
        assert m.v4 == pytest.approx(v4, abs=1e-12)
        assert s.lam == pytest.approx(m.v4 / 4, abs=1e-12)
        assert m.u2 == pytest.approx(m.u1, abs=1e-12)


def test_mori_polynomial_n2_has_published_factor():
    F = mori_polynomial(2)
    # F(x, 2) = (x - 1) * (84 x^15 - 332 x^14 + ...)
    assert _evaluate_list(F, 1) == 0
    quotient_top = [84, -332]
    assert [int(c) for c in F[::-1][:2]] == [quotient_top[0], quotient_top[1] - quotient_top[0]]


@pytest.mark.parametrize("n", [2, 3, 7, 15, 40])
def test_mori_F_signs(n):
    d = solve_su_mori(n).diagnostics["mori"]
    assert d["F_degree"] == 16
    assert d["F_at_2_positive"]
    if n >= 3:
        assert d["F_at_1"] < 0


def test_small_cases():
    su3, su4 = solve_su_small("SU3"), solve_su_small("SU4")
    assert len(su3) == 1 and len(su4) == 2
    v2 = solve_stiefel_small("V2C4")
    assert sorted(s.exact_form["x6"] for s in v2) == ["(4+sqrt(6))/4", "(4-sqrt(6))/4"]
    for s in v2:
        x = s.metric.x6
        assert s.metric.v4 == pytest.approx((x * x + 1) / (2 * x), abs=1e-12)
    with pytest.raises(ValueError):
        solve_su_small("SU5")


def test_v4c6_exact_pair(v4c6):
    exact = {s.exact_form["v4"]: s.exact_form for s in v4c6 if s.exact_form}
    assert exact["3/2"]["x6"] == "1/2" and exact["17/18"]["x6"] == "3/2"


@pytest.mark.parametrize("m,n", [(2, 2), (3, 2), (8, 4)])
def test_stiefel_factor_A_and_jensen_roots(m, n):
    A, B = stiefel_factors(m, n)
    # A is proportional to 2mn (x-1)^2 + n^2 x^2 - 2 n^2 x + 1
    ref = [2 * m * n + 1, -4 * m * n - 2 * n * n, 2 * m * n + n * n]
    ratio = Fraction(ref[2]) / Fraction(A[2])
    assert [Fraction(c) * ratio for c in A] == ref
    disc = math.sqrt(2 * m * n ** 3 - 2 * m * n + n ** 4 - n ** 2)
    for sgn in (-1, 1):
        x = (2 * m * n + n * n + sgn * disc) / (2 * m * n + n * n)
        assert abs(float(_evaluate_list(A, Fraction(x)))) < 1e-9 * max(abs(float(c)) for c in A)


def test_stiefel_B_at_zero_matches_published_constant():
    # B_{2,2}: leading coefficient 144 and constant term 2628 up to a common factor
    _, B = stiefel_factors(2, 2)
    assert Fraction(int(B[-1]), int(B[0])) == Fraction(144, 2628)
    for m, n in [(2, 3), (4, 3)]:
        _, B = stiefel_factors(m, n)
        assert B[0] > 0
        assert Fraction(4 * (5 * m ** 4 - 2 * m ** 2 + 1) * (2 * m * n + 1), int(B[0])).denominator == 1


def test_newton_is_deterministic_and_finds_bi_invariant():
    spec = FlagSpec(1, 1, 3)
    a = solve_generic_newton(spec, GROUP, starts=64, seed=7)
    b = solve_generic_newton(spec, GROUP, starts=64, seed=7)
    assert [normalized_vector(s.metric) for s in a] == [normalized_vector(s.metric) for s in b]
    assert any(s.classification.nr_case == "bi-invariant" for s in a)
    assert a.diagnostics["newton"]["converged"] + a.diagnostics["newton"]["failures"] == 64


def test_newton_recovers_su5_pair(su5):
    found = solve_generic_newton(FlagSpec(1, 2, 2), GROUP, starts=256, seed=0)
    vecs = [np.array(normalized_vector(s.metric)) for s in found]
    for s in su5:
        assert any(np.abs(np.array(normalized_vector(s.metric)) - v).max() < 1e-6 for v in vecs)


def test_dispatch():
    assert len(solve(FlagSpec(1, 1, 1), GROUP)) == 1
    with pytest.raises(ValueError):
        solve(FlagSpec(1, 1, 1), GROUP, pipeline="homotopy")


def test_solution_dict_lists_present_blocks_only(su5):
    d = su5[0].to_dict()
    assert "u1" not in d["params"] and {"u2", "u3", "v4", "v5", "x6", "x7", "x8"} <= set(d["params"])
    assert d["residual"] < 1e-9 and "classification" in d


@settings(max_examples=5, deadline=None)
@given(st.sampled_from([0.5, 2.0]))
def test_stiefel_scaling(t):
    for s in solve_stiefel_small("V3C5"):
        _, res = certify(s.spec, s.metric.scaled(t), s.lam / t)
        assert res < 1e-9
