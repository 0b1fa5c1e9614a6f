"""Natural reductivity and Jensen-type tests for certified metrics.

A left-invariant metric on SU(N) is naturally reductive with respect to
SU(N) x L iff it equals x B on the B-complement of l and is Ad(L)-invariant
on l.  For the subgroups L that contain the isotropy torus this reduces to
shape tests on the coefficients:

* S(U(l) U(m) U(n)):   x6 = x7 = x8                                  (case-2)
* S(U(l+m) U(n)):      x7 = x8, su(l+m) a single B-multiple           (case-1i)
* S(U(l) U(m+n)):      x6 = x7, su(m+n) a single B-multiple           (case-1ii)
* S(U(l+n) U(m)):      x6 = x8, su(l+n) a single B-multiple           (case-1iii)

"su(p+q) a single B-multiple" includes the center direction of su(p+q)
lying in the 2-dimensional center h0: it must be an eigenvector of the
metric on h0 with the same eigenvalue as the other fiber coefficients.
The direction is computed numerically from the algebra basis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra_core import FlagSpec, center_basis, killing_B
from .ricci import BLOCK_PARAM, GROUP, STIEFEL, MetricParams

DEFAULT_TOL = 1e-6

# subgroup -> (equal base coefficients, fiber blocks, diagonal of the fiber center direction)
_SHAPES = {
    "case-1i": (("x7", "x8"), (1, 2, 6), lambda l, m, n: [m] * l + [-l] * m + [0] * n),
    "case-1ii": (("x6", "x7"), (2, 3, 8), lambda l, m, n: [0] * l + [n] * m + [-m] * n),
    "case-1iii": (("x6", "x8"), (1, 3, 7), lambda l, m, n: [n] * l + [0] * m + [-l] * n),
}
_NAMES = {1: "u1", 2: "u2", 3: "u3", 6: "x6", 7: "x7", 8: "x8"}


@dataclass(frozen=True)
class Classification:
    naturally_reductive: bool | None
    nr_case: str | None
    jensen_type: bool | None
    tolerance_used: float

    def to_dict(self):
        return {"naturally_reductive": self.naturally_reductive, "nr_case": self.nr_case,
                "jensen_type": self.jensen_type, "tolerance_used": self.tolerance_used}


def _direction(spec: FlagSpec, diag) -> np.ndarray:
    """Unit vector (B-norm) of diag(i * diag) in the B-orthonormal center basis."""
    cb = center_basis(spec)
    W = np.diag(1j * np.asarray(diag, dtype=float))
    w = np.array([killing_B(spec, W, cb.H4_tilde), killing_B(spec, W, cb.H5_tilde)])
    return w / np.linalg.norm(w)


def _normalized(metric: MetricParams):
    """Coefficients and center matrix scaled so x7 = 1."""
    t = 1.0 / float(metric.x7)
    vals = {BLOCK_PARAM[k]: float(v) * t for k, v in metric.values().items()}
    return vals, metric.center_matrix() * t


def _fiber_multiple(spec, vals, M, blocks, diag, tol):
    """True iff the fiber subalgebra carries a single multiple of B."""
    w = _direction(spec, diag(spec.l, spec.m, spec.n))
    mu = float(w @ M @ w)
    if np.linalg.norm(M @ w - mu * w) >= tol:
        return False
    dims = spec.dims
    return all(abs(vals[_NAMES[k]] - mu) < tol for k in blocks if dims[k] > 0 and _NAMES[k] in vals)


def _shape(spec, vals, M, name, tol):
    equal, blocks, diag = _SHAPES[name]
    if abs(vals[equal[0]] - vals[equal[1]]) >= tol:
        return False
    return _fiber_multiple(spec, vals, M, blocks, diag, tol)


def classify_natural_reductivity(spec: FlagSpec, metric: MetricParams, tol: float = DEFAULT_TOL) -> Classification:
    if metric.space != GROUP:
        raise ValueError("natural reductivity test applies to the group SU(N) only")
    vals, M = _normalized(metric)
    coeffs = [vals[_NAMES[k]] for k in (1, 2, 3, 6, 7, 8) if spec.dims[k] > 0]
    if max(coeffs) - min(coeffs) < tol and np.abs(M - np.eye(2)).max() < tol:
        return Classification(True, "bi-invariant", None, tol)
    if abs(vals["x6"] - vals["x7"]) < tol and abs(vals["x7"] - vals["x8"]) < tol:
        return Classification(True, "case-2", None, tol)
    for name in _SHAPES:
        if _shape(spec, vals, M, name, tol):
            return Classification(True, name, None, tol)
    return Classification(False, None, None, tol)


def classify_jensen(spec: FlagSpec, metric: MetricParams, tol: float = DEFAULT_TOL) -> bool:
    """Jensen type on SU(l+m+n)/SU(n): B on the base, one multiple on the
    su(l+m) fiber, the remaining center direction free."""
    if metric.space != STIEFEL:
        raise ValueError("Jensen test applies to the Stiefel quotient only")
    vals, M = _normalized(metric)
    return _shape(spec, vals, M, "case-1i", tol)


def classify(spec: FlagSpec, metric: MetricParams, tol: float = DEFAULT_TOL) -> Classification:
    if metric.space == STIEFEL:
        return Classification(None, None, classify_jensen(spec, metric, tol), tol)
    return classify_natural_reductivity(spec, metric, tol)


def attach_classification(solution, tol: float = DEFAULT_TOL):
    solution.classification = classify(solution.spec, solution.metric, tol)
    return solution
