import numpy as np
import pytest
from hypothesis import given, strategies as st

from einstein_su.algebra_core import FlagSpec, GaugeParams, build_decomposition
from einstein_su.ricci import (GROUP, PARAM_NAMES, STIEFEL, MetricParams, brute_components, certify,
                               einstein_residual, ricci_closed)

SPECS = [FlagSpec(l, m, n) for l, m, n in [(1, 1, 1), (1, 1, 2), (1, 2, 2), (2, 2, 2), (1, 2, 3)]]
coeff = st.floats(0.3, 3.0)
metrics = st.fixed_dictionaries({k: coeff for k in PARAM_NAMES})
gauges = st.tuples(st.floats(0.3, 2), st.floats(-1, 1), st.floats(-1, 1), st.floats(0.3, 2)).filter(
    lambda g: abs(g[0] * g[3] - g[1] * g[2]) > 0.1)


@given(metrics, gauges, st.sampled_from(SPECS), st.sampled_from([GROUP, STIEFEL]))
def test_closed_matches_brute(kw, g, spec, space):
    metric = MetricParams(gauge=GaugeParams(*g), space=space, **kw)
    closed = ricci_closed(spec, metric)
    brute, off = brute_components(build_decomposition(spec), metric)
    scale = max(abs(v) for v in brute.r.values())
    assert abs(closed.r0 - brute.r0) < 1e-9 * scale
    for k, v in brute.r.items():
        assert closed.r[k] == pytest.approx(v, rel=1e-8, abs=1e-12 * scale)
    assert off < 1e-10


@pytest.mark.parametrize("N", range(3, 9))
def test_bi_invariant_quarter(N):
    spec = FlagSpec(1, 1, N - 2)
    comps, off = brute_components(build_decomposition(spec), MetricParams())
    assert off < 1e-12 and abs(comps.r0) < 1e-12
    assert all(abs(v - 0.25) < 1e-12 for v in comps.r.values())
    closed = ricci_closed(spec, MetricParams())
    assert all(abs(float(v) - 0.25) < 1e-12 for v in closed.r.values())


@given(metrics, st.sampled_from([0.5, 2.0, 3.7]))
def test_ricci_is_scale_invariant(kw, t):
    # Ric(t g) = Ric(g), so the components r_k = Ric/g scale by 1/t
    spec = FlagSpec(1, 2, 2)
    metric = MetricParams(gauge=GaugeParams(1, 0, 0.3, 1), **kw)
    a, b = ricci_closed(spec, metric), ricci_closed(spec, metric.scaled(t))
    for k in a.r:
        assert b.r[k] == pytest.approx(a.r[k] / t, rel=1e-10)


def test_stiefel_drops_block_three():
    spec = FlagSpec(1, 2, 2)
    m = MetricParams(u3=5.0, space=STIEFEL)
    assert m.u3 is None
    assert 3 not in ricci_closed(spec, m).r


def test_metric_validation_and_roundtrip():
    spec = FlagSpec(1, 2, 2)
    with pytest.raises(ValueError):
        MetricParams(x6=-1.0).check_positive(spec)
    with pytest.raises(ValueError):
        MetricParams(space="torus")
    m = MetricParams(u2=0.5, v4=1.5, gauge=GaugeParams(1, 0, 0.2, 1))
    assert MetricParams.from_dict(m.to_dict()) == m


def test_residual_of_bi_invariant_metric():
    spec = FlagSpec(1, 2, 2)
    lam, res = certify(spec, MetricParams())
    assert lam == pytest.approx(0.25) and res < 1e-12
    assert np.abs(einstein_residual(spec, MetricParams(x6=2.0), 0.25)).max() > 1e-3
