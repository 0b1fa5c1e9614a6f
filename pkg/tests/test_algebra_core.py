import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from einstein_su.algebra_core import (CapacityError, FlagSpec, GaugeParams, MAX_N, bracket,
                                      build_decomposition, center_basis, coordinates,
                                      is_skew_hermitian, killing_B)

SMALL = [FlagSpec(l, m, n) for l, m, n in [(1, 1, 1), (1, 1, 2), (1, 2, 2), (2, 2, 2), (1, 2, 3)]]


def ad_matrix(dec, X):
    E, _ = dec.basis()
    return np.array([coordinates(dec, bracket(X, Y)) for Y in E]).T


@pytest.mark.parametrize("spec", SMALL, ids=str)
def test_basis_is_B_orthonormal_and_complete(spec):
    dec = build_decomposition(spec)
    E, slices = dec.basis()
    assert len(E) == spec.N ** 2 - 1
    gram = np.array([[killing_B(spec, X, Y) for Y in E] for X in E])
    assert np.abs(gram - np.eye(len(E))).max() < 1e-12
    assert all(is_skew_hermitian(X) and abs(np.trace(X)) < 1e-12 for X in E)
    assert {k: s.stop - s.start for k, s in slices.items()} == spec.dims


@pytest.mark.parametrize("spec", SMALL[:3], ids=str)
def test_B_is_minus_killing_form(spec):
    # the Killing form tr(ad X ad Y) computed from the adjoint action
    dec = build_decomposition(spec)
    E, _ = dec.basis()
    rng = np.random.default_rng(0)
    X = np.tensordot(rng.normal(size=len(E)), E, 1)
    Y = np.tensordot(rng.normal(size=len(E)), E, 1)
    killing = np.trace(ad_matrix(dec, X) @ ad_matrix(dec, Y))
    assert killing == pytest.approx(-killing_B(spec, X, Y), rel=1e-10)


def test_blocks_are_the_expected_subspaces():
    spec = FlagSpec(1, 2, 3)
    dec = build_decomposition(spec)
    E, sl = dec.basis()
    rows = {1: range(0, 1), 2: range(1, 3), 3: range(3, 6)}
    pattern = {6: (2, 1), 7: (3, 1), 8: (3, 2)}
    for k, (r, c) in pattern.items():
        for X in E[sl[k]]:
            support = np.argwhere(np.abs(X) > 0)
            assert all((i in rows[r] and j in rows[c]) or (i in rows[c] and j in rows[r]) for i, j in support)
    for k in (4, 5):
        X = E[sl[k]][0]
        assert np.abs(X - np.diag(np.diag(X))).max() == 0


def test_center_gauge_relation():
    spec = FlagSpec(1, 2, 2)
    g = GaugeParams(1.5, 0.2, -0.4, 0.8)
    cb = center_basis(spec, g)
    # (H4~, H5~) = (V4, V5) G
    assert np.abs(cb.H4_tilde - (g.a * cb.V4 + g.c * cb.V5)).max() < 1e-14
    assert np.abs(cb.H5_tilde - (g.b * cb.V4 + g.d * cb.V5)).max() < 1e-14


def test_invalid_inputs():
    with pytest.raises(ValueError):
        FlagSpec(0, 1, 1)
    with pytest.raises(ValueError):
        GaugeParams(1, 2, 2, 4)
    with pytest.raises(CapacityError):
        build_decomposition(FlagSpec(1, 1, MAX_N))


@given(st.lists(st.floats(-1, 1), min_size=24, max_size=24))
def test_bracket_antisymmetry_and_jacobi(coeffs):
    spec = FlagSpec(1, 2, 2)
    E, _ = build_decomposition(spec).basis()
    c = np.array(coeffs)
    X, Y, Z = (np.tensordot(c[i::3][:8], E[8 * i:8 * i + 8], 1) for i in range(3))
    assert np.abs(bracket(X, Y) + bracket(Y, X)).max() < 1e-12
    jac = bracket(X, bracket(Y, Z)) + bracket(Y, bracket(Z, X)) + bracket(Z, bracket(X, Y))
    assert np.abs(jac).max() < 1e-12


@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3))
def test_B_is_ad_invariant(l, m, n):
    spec = FlagSpec(l, m, n)
    E, _ = build_decomposition(spec).basis()
    rng = np.random.default_rng(l * 100 + m * 10 + n)
    X, Y, Z = (np.tensordot(rng.normal(size=len(E)), E, 1) for _ in range(3))
    assert killing_B(spec, bracket(X, Y), Z) == pytest.approx(-killing_B(spec, Y, bracket(X, Z)), abs=1e-10)
