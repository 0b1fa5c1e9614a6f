import numpy as np
import pytest

from einstein_su.algebra_core import FlagSpec, GaugeParams
from einstein_su.classify import classify, classify_jensen, classify_natural_reductivity
from einstein_su.einstein_solver import solve_stiefel_small, solve_su_l1_m2, solve_su_small
from einstein_su.ricci import GROUP, STIEFEL, MetricParams, certify


@pytest.fixture(scope="module")
def solutions():
    return {"SU4": solve_su_small("SU4"), "SU5": solve_su_l1_m2(2),
            "V3C5": solve_stiefel_small("V3C5"), "V4C6": solve_stiefel_small("V4C6")}


def regauged(metric, rng):
    """Same metric on the center written with another gauge and another (v4, v5)."""
    G = metric.gauge.matrix
    v = np.array([metric.v4, metric.v5])
    th = rng.uniform(0, 2 * np.pi)
    R = np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]])
    w = rng.uniform(0.5, 2.0, 2)
    G2 = np.diag(1 / np.sqrt(w)) @ R @ np.diag(np.sqrt(v)) @ G
    kw = {k: getattr(metric, k) for k in ("u1", "u2", "u3", "x6", "x7", "x8")}
    return MetricParams(v4=w[0], v5=w[1], gauge=GaugeParams(*G2.ravel()), space=metric.space, **kw)


def test_all_ones_is_bi_invariant():
    c = classify_natural_reductivity(FlagSpec(1, 2, 2), MetricParams())
    assert c.naturally_reductive and c.nr_case == "bi-invariant"


def test_su4_and_su5(solutions):
    assert all(s.classification.naturally_reductive for s in solutions["SU4"])
    special = [s for s in solutions["SU4"] if s.classification.nr_case != "bi-invariant"]
    assert [s.classification.nr_case for s in special] == ["case-1i"]
    non_nr = [s for s in solutions["SU5"] if not s.classification.naturally_reductive]
    xs = sorted(round(s.metric.x6, 4) for s in non_nr)
    assert xs == [0.5297, 1.8878]


def test_jensen_counts(solutions):
    assert sum(s.classification.jensen_type for s in solutions["V3C5"]) == 2
    assert sum(s.classification.jensen_type for s in solutions["V4C6"]) == 2
    exact = [s for s in solutions["V4C6"] if s.exact_form and s.exact_form["x6"] == "1/2"]
    assert classify_jensen(exact[0].spec, exact[0].metric)


def test_mode_checks():
    with pytest.raises(ValueError):
        classify_jensen(FlagSpec(1, 1, 1), MetricParams())
    with pytest.raises(ValueError):
        classify_natural_reductivity(FlagSpec(1, 1, 1), MetricParams(space=STIEFEL))


@pytest.mark.parametrize("case", ["SU4", "SU5", "V3C5", "V4C6"])
def test_invariance_under_scaling_and_gauge(solutions, case):
    rng = np.random.default_rng(3)
    for s in solutions[case]:
        base = classify(s.spec, s.metric)
        assert classify(s.spec, s.metric.scaled(2.0)) == base
        for _ in range(10):
            m2 = regauged(s.metric, rng)
            assert np.allclose(m2.center_matrix(), s.metric.center_matrix())
            assert classify(s.spec, m2) == base
        _, res = certify(s.spec, m2)
        assert res < 1e-9


def test_case_two_shape():
    m = MetricParams(u1=0.3, u2=0.7, u3=2.0, v4=1.1, v5=0.4, x6=1.3, x7=1.3, x8=1.3,
                     gauge=GaugeParams(1, 0, 0.5, 1))
    assert classify(FlagSpec(2, 2, 2), m).nr_case == "case-2"
    assert classify(FlagSpec(2, 2, 2), MetricParams(x6=1.3, x7=1.0, x8=0.7)).naturally_reductive is False
