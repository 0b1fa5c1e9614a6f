"""Ricci tensor of invariant metrics on SU(N) and on SU(N)/SU(n).

Two independent routes:

* ``ricci_brute`` evaluates the general homogeneous Ricci formula

      r(X, Y) = -1/2 sum_i <[X, X_i]_p, [Y, X_i]_p> + 1/2 B(X, Y)
                + 1/4 sum_ij <[X_i, X_j]_p, X> <[X_i, X_j]_p, Y>

  over an explicit metric-orthonormal basis {X_i} of p (all of su(N) for the
  group, su(N) minus su(n) for the quotient).
* ``ricci_closed`` assembles the eight diagonal components and the off-diagonal
  center entry from the structure-constant tables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np
from scipy import sparse

from .algebra_core import (CENTER, Decomposition, FlagSpec, GaugeParams,
                      IDENTITY_GAUGE, build_decomposition)
from .structure_constants import (bracket_sparse, center_cross, change_basis_sparse,
                        q_constants_closed, surd)

GROUP = "group"
STIEFEL = "stiefel"
SPACES = (GROUP, STIEFEL)
PARAM_NAMES = ("u1", "u2", "u3", "v4", "v5", "x6", "x7", "x8")
BLOCK_PARAM = {1: "u1", 2: "u2", 3: "u3", 4: "v4", 5: "v5", 6: "x6", 7: "x7", 8: "x8"}


@dataclass(frozen=True)
class MetricParams:
    u1: float = 1.0
    u2: float = 1.0
    u3: float | None = 1.0
    v4: float = 1.0
    v5: float = 1.0
    x6: float = 1.0
    x7: float = 1.0
    x8: float = 1.0
    gauge: GaugeParams = field(default=IDENTITY_GAUGE)
    space: str = GROUP

    def __post_init__(self):
        if self.space not in SPACES:
            raise ValueError(f"unknown space {self.space!r}")
        if self.space == STIEFEL and self.u3 is not None:
            object.__setattr__(self, "u3", None)

    def coefficient(self, k: int):
        return getattr(self, BLOCK_PARAM[k])

    def values(self) -> dict:
        return {k: self.coefficient(k) for k in BLOCK_PARAM if self.coefficient(k) is not None}

    def check_positive(self, spec: FlagSpec):
        for k in spec.present(self.space == STIEFEL):
            v = self.coefficient(k)
            if v is None or not v > 0:
                raise ValueError(f"metric coefficient {BLOCK_PARAM[k]} must be positive, got {v}")

    def scaled(self, t):
        kw = {name: (None if getattr(self, name) is None else t * getattr(self, name))
              for name in PARAM_NAMES}
        return replace(self, **kw)

    def center_matrix(self) -> np.ndarray:
        """Inner product on the center in the B-orthonormal basis (H4~, H5~)."""
        G = self.gauge.matrix
        return G.T @ np.diag([float(self.v4), float(self.v5)]) @ G

    def to_dict(self) -> dict:
        d = {name: getattr(self, name) for name in PARAM_NAMES if getattr(self, name) is not None}
        return {**{k: float(v) for k, v in d.items()}, "gauge": [float(g) for g in self.gauge.as_tuple()],
                "space": self.space}

    @classmethod
    def from_dict(cls, d: dict) -> "MetricParams":
        gauge = GaugeParams(*d.get("gauge", (1.0, 0.0, 0.0, 1.0)))
        kw = {k: d[k] for k in PARAM_NAMES if k in d}
        space = d.get("space", GROUP)
        if space == STIEFEL:
            kw["u3"] = None
        return cls(gauge=gauge, space=space, **kw)


def is_stiefel(metric: MetricParams) -> bool:
    return metric.space == STIEFEL


@dataclass(frozen=True)
class RicciComponents:
    r0: float
    r: dict  # block id -> component
    lambda_candidate: float | None = None

    def __getitem__(self, k):
        return self.r0 if k == 0 else self.r[k]

    def as_dict(self):
        return {"r0": self.r0, **{f"r{k}": v for k, v in sorted(self.r.items())}}


def _metric_basis(spec, metric, slices, d):
    """Scale vector and center maps for the metric-orthonormal basis."""
    scale = np.ones(d)
    for k, sl in slices.items():
        if k in CENTER or sl.stop == sl.start or metric.coefficient(k) is None:
            continue
        scale[sl] = 1.0 / math.sqrt(float(metric.coefficient(k)))
    G = metric.gauge.matrix
    sv = np.sqrt([float(metric.v4), float(metric.v5)])
    lower = np.linalg.inv(G) @ np.diag(1.0 / sv)
    upper = np.diag(sv) @ G
    return scale, lower, upper


def ricci_brute(dec: Decomposition, metric: MetricParams):
    """Ricci form in the metric-orthonormal basis of p.

    Returns (matrix, slices) where slices maps block id to its rows.
    """
    spec = dec.spec
    metric.check_positive(spec)
    S = bracket_sparse(spec)
    _, slices = dec.basis()
    d = S.dim
    scale, lower, upper = _metric_basis(spec, metric, slices, d)
    c = change_basis_sparse(S, slices, scale, lower, upper)
    keep = np.ones(d, dtype=bool)
    if is_stiefel(metric):
        keep[slices[3]] = False
    idx = np.flatnonzero(keep)
    new = np.full(d, -1)
    new[idx] = np.arange(len(idx))
    ok = keep[c.a] & keep[c.b] & keep[c.c]
    a, b, k, val = new[c.a[ok]], new[c.b[ok]], new[c.c[ok]], c.val[ok]
    p = len(idx)
    # B(X_p, X_q) for the new basis vectors
    T = np.diag(scale)
    c4, c5 = slices[4].start, slices[5].start
    T[np.ix_([c4, c5], [c4, c5])] = lower
    gram = (T.T @ T)[np.ix_(idx, idx)]
    by_first = sparse.csr_matrix((val, (a, b * p + k)), shape=(p, p * p))
    by_last = sparse.csr_matrix((val, (a * p + b, k)), shape=(p * p, p))
    ric = (-0.5 * (by_first @ by_first.T) + 0.25 * (by_last.T @ by_last)).toarray() + 0.5 * gram
    new_slices, pos = {}, 0
    for kk, sl in slices.items():
        if is_stiefel(metric) and kk == 3:
            new_slices[kk] = slice(pos, pos)
            continue
        new_slices[kk] = slice(pos, pos + (sl.stop - sl.start))
        pos += sl.stop - sl.start
    return ric, new_slices


def brute_components(dec: Decomposition, metric: MetricParams):
    """Diagonal block components, r0, and the largest entry that should vanish.

    The last value measures how far the brute-force form is from being
    block-scalar (Schur) with a single off-diagonal center entry.
    """
    ric, slices = ricci_brute(dec, metric)
    comps, expected = {}, np.zeros_like(ric)
    for k, sl in slices.items():
        if sl.stop == sl.start:
            continue
        block = ric[sl, sl]
        comps[k] = float(np.trace(block)) / block.shape[0]
        expected[sl, sl] = comps[k] * np.eye(block.shape[0])
    c4, c5 = slices[4].start, slices[5].start
    r0 = float(ric[c4, c5])
    expected[c4, c5] = expected[c5, c4] = r0
    off = float(np.abs(ric - expected).max())
    return RicciComponents(r0, comps), off


def diagonal_components(spec: FlagSpec, present, y, q, exact=False):
    """Generic diagonal Ricci components of a non-center block k:

        r_k = 1/(2 y_k) + 1/(4 d_k) sum_ij y_k/(y_i y_j) {k;ij}
              - 1/(2 d_k) sum_ij y_j/(y_k y_i) {j;ki}

    ``q`` maps (k, i, j) to a structure constant; ``y`` maps block ids to
    metric coefficients.  Works with any field-like values; with ``exact``
    false the rational weights are converted to floats first.
    """
    dims = spec.dims
    conv = (lambda w: w) if exact else float
    out = {}
    for k in present:
        if k in CENTER:
            continue
        dk = dims[k]
        total = 1 / (2 * y[k])
        for i in present:
            for j in present:
                a = q(k, i, j)
                if a:
                    total = total + conv(Fraction(1, 4 * dk) * a) * y[k] / (y[i] * y[j])
                b = q(j, k, i)
                if b:
                    total = total - conv(Fraction(1, 2 * dk) * b) * y[j] / (y[k] * y[i])
        out[k] = total
    return out


def center_components(present, y, row4, row5, cross):
    """r4, r5 and the scaled cross term sum_j cross_j / x_j^2.

    r0 equals sqrt(v4 v5)/4 times the returned cross sum.
    """
    r4 = r5 = cr = 0
    for j in (6, 7, 8):
        if j not in present:
            continue
        w = 1 / (y[j] * y[j])
        r4 = r4 + row4[j] * w
        r5 = r5 + row5[j] * w
        cr = cr + cross[j] * w
    return y[4] * r4 / 4, y[5] * r5 / 4, cr


def ricci_closed(spec: FlagSpec, metric: MetricParams, s=None) -> RicciComponents:
    """Closed-form components; accepts float, Fraction or numpy-array coefficients."""
    stiefel = is_stiefel(metric)
    present = spec.present(stiefel)
    if s is None:
        s = surd(spec)
    table = q_constants_closed(spec, metric.gauge, s)

    def q(k, i, j):
        if stiefel and 3 in (k, i, j):
            return 0
        return table[(k, i, j)]

    y = {k: metric.coefficient(k) for k in present}
    exact = all(isinstance(v, (int, Fraction)) for v in y.values())
    comps = diagonal_components(spec, present, y, q, exact)
    row4 = {j: table[(4, j, j)] for j in (6, 7, 8)}
    row5 = {j: table[(5, j, j)] for j in (6, 7, 8)}
    cross = center_cross(spec, metric.gauge, s)
    if not exact:
        row4, row5 = ({j: float(v) for j, v in r.items()} for r in (row4, row5))
        cross = {j: float(v) for j, v in cross.items()}
    r4, r5, cr = center_components(present, y, row4, row5, cross)
    comps[4], comps[5] = r4, r5
    v45 = metric.v4 * metric.v5
    root = np.sqrt(v45) if isinstance(v45, np.ndarray) else math.sqrt(float(v45))
    r0 = root * cr / 4
    return RicciComponents(r0, dict(sorted(comps.items())))


def einstein_residual(spec: FlagSpec, metric: MetricParams, lam, brute: bool = True) -> np.ndarray:
    """Vector (r0, r_k - lam for present blocks k)."""
    if brute:
        comps, off = brute_components(build_decomposition(spec), metric)
    else:
        comps, off = ricci_closed(spec, metric), 0.0
    vals = [comps.r0] + [comps.r[k] - lam for k in spec.present(is_stiefel(metric))]
    return np.array([float(v) for v in vals] + [off])


def einstein_constant(spec: FlagSpec, metric: MetricParams, brute: bool = True) -> float:
    """Mean of the diagonal components (the natural Einstein constant candidate)."""
    if brute:
        comps, _ = brute_components(build_decomposition(spec), metric)
    else:
        comps = ricci_closed(spec, metric)
    vals = [float(comps.r[k]) for k in spec.present(is_stiefel(metric))]
    return sum(vals) / len(vals)


def certify(spec: FlagSpec, metric: MetricParams, lam=None):
    """(lambda, max-norm residual) against the brute-force Ricci form."""
    if lam is None:
        lam = einstein_constant(spec, metric)
    res = einstein_residual(spec, metric, lam)
    return float(lam), float(np.abs(res).max())
