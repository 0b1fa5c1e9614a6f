import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from einstein_su.algebra_core import FlagSpec, GaugeParams, build_decomposition
from einstein_su.structure_constants import (Surd, b_constants_brute, b_constants_closed, bracket_sparse,
                                             bracket_tensor, q_constants_brute, q_constants_closed, surd)

SPECS = [FlagSpec(l, m, n) for l, m, n in [(1, 1, 1), (1, 1, 2), (1, 2, 2), (2, 2, 2), (1, 2, 3), (2, 3, 3)]]


@pytest.mark.parametrize("spec", SPECS, ids=str)
def test_b_constants_exact(spec):
    closed, brute = b_constants_closed(spec), b_constants_brute(build_decomposition(spec))
    for key in closed.keys_all():
        assert Fraction(brute[key]).limit_denominator(10 ** 6) == closed[key], key


@pytest.mark.parametrize("spec", SPECS, ids=str)
def test_sparse_tensor_matches_dense(spec):
    C, S = bracket_tensor(spec), bracket_sparse(spec)
    D = np.zeros_like(C)
    np.add.at(D, (S.a, S.b, S.c), S.val)
    assert np.abs(C - D).max() < 1e-14


def test_b_table_symmetry_and_sum_rule():
    # sum_{i,j} [k;ij] = d_k for every non-center block: the Casimir of B is one
    for spec in SPECS:
        t = b_constants_closed(spec)
        dims = spec.dims
        for k in (1, 2, 3, 6, 7, 8):
            if dims[k]:
                total = sum(t[(k, i, j)] for i in range(1, 9) for j in range(1, 9))
                assert total == dims[k], (spec, k)


gauges = st.tuples(st.floats(0.3, 2), st.floats(-1, 1), st.floats(-1, 1), st.floats(0.3, 2)).filter(
    lambda g: abs(g[0] * g[3] - g[1] * g[2]) > 0.1)


@given(gauges, st.sampled_from(SPECS[:5]))
def test_q_constants_random_gauge(g, spec):
    gauge = GaugeParams(*g)
    closed, brute = q_constants_closed(spec, gauge), q_constants_brute(build_decomposition(spec), gauge)
    assert max(abs(float(closed[k]) - brute[k]) for k in closed.keys_all()) < 1e-9


def test_q_equals_b_at_identity_gauge():
    for spec in SPECS:
        q, b = q_constants_closed(spec), b_constants_closed(spec)
        for k in q.keys_all():
            assert float(q[k]) == pytest.approx(float(b[k]), abs=1e-14)


fracs = st.fractions(min_value=-20, max_value=20, max_denominator=50)


@given(fracs, fracs, fracs, fracs, st.sampled_from([2, 3, Fraction(4, 5), 7]))
def test_surd_arithmetic_matches_floats(a, b, c, d, D):
    x, y = Surd(a, b, D), Surd(c, d, D)
    fx, fy = float(x), float(y)
    assert float(x + y) == pytest.approx(fx + fy, abs=1e-9)
    assert float(x * y) == pytest.approx(fx * fy, rel=1e-9, abs=1e-9)
    if y:
        assert float(x / y) == pytest.approx(fx / fy, rel=1e-9, abs=1e-9)
        assert (x / y) * y == x


def test_surd_of_spec():
    assert surd(FlagSpec(1, 4, 4)) == Fraction(4, 3)
    assert surd(FlagSpec(1, 2, 2)) == pytest.approx(math.sqrt(4 / 5))
