"""Matrix model of su(l+m+n) split into eight blocks.

Block ids follow a fixed numbering used everywhere in the package:

    1, 2, 3   su(l), su(m), su(n) sitting on the diagonal
    4, 5      the two-dimensional center of s(u(l)+u(m)+u(n))
    6, 7, 8   off-diagonal pieces between (l,m), (l,n), (m,n)

The inner product is B(X, Y) = -2N tr(XY), the negative of the Killing form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

MAX_N = 64
BLOCKS = (1, 2, 3, 4, 5, 6, 7, 8)
CENTER = (4, 5)


class CapacityError(ValueError):
    pass


@dataclass(frozen=True)
class FlagSpec:
    l: int
    m: int
    n: int

    def __post_init__(self):
        for name in ("l", "m", "n"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")

    @property
    def N(self) -> int:
        return self.l + self.m + self.n

    @property
    def dims(self) -> dict[int, int]:
        l, m, n = self.l, self.m, self.n
        return {1: l * l - 1, 2: m * m - 1, 3: n * n - 1, 4: 1, 5: 1,
                6: 2 * l * m, 7: 2 * l * n, 8: 2 * m * n}

    def present(self, stiefel: bool = False) -> tuple[int, ...]:
        """Block ids with nonzero dimension (block 3 dropped for the Stiefel quotient)."""
        d = self.dims
        return tuple(k for k in BLOCKS if d[k] > 0 and not (stiefel and k == 3))

    def as_tuple(self):
        return (self.l, self.m, self.n)


@dataclass(frozen=True)
class GaugeParams:
    """Change of basis (H4~, H5~) = (V4, V5) @ [[a, b], [c, d]] on the center."""

    a: float = 1
    b: float = 0
    c: float = 0
    d: float = 1

    def __post_init__(self):
        if self.det == 0:
            raise ValueError("singular gauge: ad - bc = 0")

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=float)

    @property
    def inverse(self) -> tuple:
        """Entries (p, q, r, s) of the inverse matrix [[p, q], [r, s]]."""
        det = self.det
        if all(isinstance(v, (int, Fraction)) for v in self.as_tuple()):
            det = Fraction(det)
        return (self.d / det, -self.b / det, -self.c / det, self.a / det)

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d)


IDENTITY_GAUGE = GaugeParams()


def block_ranges(spec: FlagSpec):
    l, m = spec.l, spec.m
    return range(0, l), range(l, l + m), range(l + m, spec.N)


def _unit(N, i, j):
    E = np.zeros((N, N), dtype=complex)
    E[i, j] = 1.0
    return E


def weyl_pair(N: int, i: int, j: int):
    """Scaled A_ij = E_ij - E_ji and B_ij = sqrt(-1)(E_ij + E_ji), each of B-norm one."""
    mu = 1.0 / (2.0 * math.sqrt(N))
    A = _unit(N, i, j) - _unit(N, j, i)
    B = 1j * (_unit(N, i, j) + _unit(N, j, i))
    return mu * A, mu * B


def _cartan(N: int, idx: range):
    """B-orthonormal basis of the diagonal part of su(k) embedded on the index range."""
    out = []
    idx = list(idx)
    for r in range(1, len(idx)):
        h = np.zeros(N)
        h[idx[:r]] = 1.0
        h[idx[r]] = -float(r)
        h /= math.sqrt(2 * N * float(h @ h))
        out.append(np.diag(1j * h))
    return out


def _su_block(N: int, idx: range):
    basis = []
    idx = list(idx)
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            basis.extend(weyl_pair(N, idx[b], idx[a]))
    basis.extend(_cartan(N, idx))
    return basis


def _off_block(N: int, rows: range, cols: range):
    basis = []
    for i in rows:
        for j in cols:
            basis.extend(weyl_pair(N, i, j))
    return basis


def center_constants(spec: FlagSpec) -> tuple[float, float]:
    l, m, n, N = spec.l, spec.m, spec.n, spec.N
    c1 = math.sqrt((l + m) * n) / (N * math.sqrt(2))
    c2 = math.sqrt(l * m) / (math.sqrt(2 * N) * math.sqrt(l + m))
    return c1, c2


def raw_center(spec: FlagSpec) -> tuple[np.ndarray, np.ndarray]:
    l, m, n = spec.l, spec.m, spec.n
    h4 = np.concatenate([np.full(l + m, 1.0 / (l + m)), np.full(n, -1.0 / n)])
    h5 = np.concatenate([np.full(l, 1.0 / l), np.full(m, -1.0 / m), np.zeros(n)])
    return np.diag(1j * h4), np.diag(1j * h5)


@dataclass(frozen=True)
class CenterBasis:
    H4: np.ndarray
    H5: np.ndarray
    H4_tilde: np.ndarray
    H5_tilde: np.ndarray
    V4: np.ndarray
    V5: np.ndarray
    c1: float
    c2: float


def center_basis(spec: FlagSpec, gauge: GaugeParams = IDENTITY_GAUGE) -> CenterBasis:
    H4, H5 = raw_center(spec)
    c1, c2 = center_constants(spec)
    T4, T5 = c1 * H4, c2 * H5
    p, q, r, s = gauge.inverse
    # (V4, V5) = (T4, T5) @ inverse(gauge)
    V4 = p * T4 + r * T5
    V5 = q * T4 + s * T5
    return CenterBasis(H4, H5, T4, T5, V4, V5, c1, c2)


@dataclass(frozen=True, eq=False)
class Decomposition:
    spec: FlagSpec
    blocks: dict = field(repr=False)
    matrices: np.ndarray = field(repr=False)
    slices: dict = field(repr=False)

    def basis(self) -> tuple[np.ndarray, dict[int, slice]]:
        """All basis matrices stacked in block order, plus the slice of each block."""
        return self.matrices, self.slices


@lru_cache(maxsize=None)
def build_decomposition(spec: FlagSpec) -> Decomposition:
    N = spec.N
    if N > MAX_N:
        raise CapacityError(f"N = {N} exceeds the supported bound {MAX_N}")
    I1, I2, I3 = block_ranges(spec)
    cb = center_basis(spec)
    blocks = {
        1: _su_block(N, I1),
        2: _su_block(N, I2),
        3: _su_block(N, I3),
        4: [cb.H4_tilde],
        5: [cb.H5_tilde],
        6: _off_block(N, I2, I1),
        7: _off_block(N, I3, I1),
        8: _off_block(N, I3, I2),
    }
    mats, slices, pos = [], {}, 0
    for k in BLOCKS:
        assert len(blocks[k]) == spec.dims[k], (k, len(blocks[k]))
        slices[k] = slice(pos, pos + len(blocks[k]))
        mats.extend(blocks[k])
        pos += len(blocks[k])
    E = np.array(mats).reshape(pos, N, N)
    E.setflags(write=False)
    return Decomposition(spec, {k: tuple(v) for k, v in blocks.items()}, E, slices)


def is_skew_hermitian(X: np.ndarray, tol: float = 1e-9) -> bool:
    X = np.asarray(X)
    scale = max(1.0, float(np.abs(X).max(initial=0.0)))
    return bool(np.abs(X + X.conj().T).max(initial=0.0) <= tol * scale
                and abs(np.trace(X)) <= tol * scale * X.shape[0])


def killing_B(spec: FlagSpec, X: np.ndarray, Y: np.ndarray) -> float:
    """B(X, Y) = -2N tr(XY) for X, Y in su(N)."""
    X, Y = np.asarray(X), np.asarray(Y)
    if X.shape != (spec.N, spec.N) or Y.shape != X.shape:
        raise ValueError("matrices must be N x N")
    if not (is_skew_hermitian(X) and is_skew_hermitian(Y)):
        raise ValueError("arguments must be traceless skew-Hermitian")
    return float((-2 * spec.N * np.trace(X @ Y)).real)


def bracket(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    X, Y = np.asarray(X), np.asarray(Y)
    if X.shape != Y.shape or X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise ValueError(f"incompatible shapes {X.shape} and {Y.shape}")
    return X @ Y - Y @ X


def coordinates(dec: Decomposition, X: np.ndarray) -> np.ndarray:
    """Coefficients of X in the stacked B-orthonormal basis."""
    E, _ = dec.basis()
    N = dec.spec.N
    return 2 * N * np.real(np.asarray(X).reshape(-1) @ E.reshape(len(E), -1).conj().T)
