"""Structure constants [k;ij] (for B) and {k;ij} (for the gauge-dependent Q).

[k;ij] is the sum of B([e_a, e_b], e_c)^2 over B-orthonormal bases of blocks
i, j and k.  {k;ij} is the same sum taken in the basis where the center is
spanned by V4, V5 and projections onto the center use the gauge-dual
coordinates.  The closed forms below are checked entrywise against the
brute-force sums in the test-suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

import numpy as np
from scipy import sparse

from .algebra_core import (BLOCKS, CENTER, Decomposition, FlagSpec, GaugeParams,
                      IDENTITY_GAUGE, build_decomposition)

OFF_DIAGONAL = (6, 7, 8)
# sign of the H4~/H5~ cross term on each off-diagonal block
CROSS_SIGN = {6: 0, 7: 1, 8: -1}


class TripleTable:
    """Map from (k, i, j) to a nonnegative number, stored under a canonical key."""

    def __init__(self, spec: FlagSpec, kind: str, entries=None, gauge=None):
        if kind not in ("B", "Q"):
            raise ValueError(kind)
        self.spec = spec
        self.kind = kind
        self.gauge = gauge
        self.entries = {}
        for key, val in (entries or {}).items():
            self.entries[self.canonical(*key)] = val

    def canonical(self, k, i, j):
        if self.kind == "B":
            return tuple(sorted((k, i, j)))
        return (k, min(i, j), max(i, j))

    def __getitem__(self, key):
        return self.entries.get(self.canonical(*key), 0)

    def __setitem__(self, key, val):
        self.entries[self.canonical(*key)] = val

    def nonzero(self, tol=0.0):
        return {k: v for k, v in self.entries.items() if abs(v) > tol}

    def keys_all(self):
        return [(k, i, j) for k in BLOCKS for i in BLOCKS for j in BLOCKS]

    def to_json(self):
        def enc(v):
            if isinstance(v, Fraction):
                return {"value": float(v), "exact": str(v)}
            return {"value": float(v)}
        return {"kind": self.kind, "l": self.spec.l, "m": self.spec.m, "n": self.spec.n,
                "gauge": None if self.gauge is None else list(map(float, self.gauge.as_tuple())),
                "entries": [{"k": k, "i": i, "j": j, **enc(v)}
                            for (k, i, j), v in sorted(self.entries.items()) if v != 0]}


class Surd:
    """r + t*sqrt(D) with r, t in any commutative ring containing the rationals."""

    __slots__ = ("r", "t", "D")

    def __init__(self, r, t, D):
        self.r, self.t, self.D = r, t, D

    def _coerce(self, other):
        if isinstance(other, Surd):
            return other
        return Surd(other, 0, self.D)

    def __add__(self, other):
        o = self._coerce(other)
        return Surd(self.r + o.r, self.t + o.t, self.D)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.r, -self.t, self.D)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return Surd(self.r * o.r + self.t * o.t * self.D, self.r * o.t + self.t * o.r, self.D)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Surd):
            if other.t:
                return self * other.inverse()
            other = other.r
        return Surd(self.r / other, self.t / other, self.D)

    def inverse(self):
        norm = self.r * self.r - self.t * self.t * self.D
        if not norm:
            raise ZeroDivisionError("surd has zero norm")
        return Surd(self.r / norm, -self.t / norm, self.D)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = Surd(1, 0, self.D), self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __float__(self):
        return float(self.r) + float(self.t) * math.sqrt(self.D)

    def __bool__(self):
        return bool(self.r) or bool(self.t)

    def __eq__(self, other):
        o = self._coerce(other)
        return not (self - o)

    def rational(self):
        """The rational part, after checking that the surd part vanishes."""
        if self.t:
            raise ValueError("value is not rational")
        return self.r

    def __repr__(self):
        return f"({self.r}) + ({self.t})*sqrt({self.D})"


def surd(spec: FlagSpec):
    """sqrt(l m n / N): exact when the radicand is a rational square, else a float."""
    l, m, n, N = spec.l, spec.m, spec.n, spec.N
    q = Fraction(l * m * n, N)
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return math.sqrt(l * m * n / N)


def b_constants_closed(spec: FlagSpec) -> TripleTable:
    l, m, n, N = spec.l, spec.m, spec.n, spec.N
    F = Fraction
    vals = {
        (1, 1, 1): F(l * (l * l - 1), N),
        (2, 2, 2): F(m * (m * m - 1), N),
        (3, 3, 3): F(n * (n * n - 1), N),
        (6, 1, 6): F(m * (l * l - 1), N),
        (7, 1, 7): F(n * (l * l - 1), N),
        (6, 2, 6): F(l * (m * m - 1), N),
        (8, 2, 8): F(n * (m * m - 1), N),
        (7, 3, 7): F(l * (n * n - 1), N),
        (8, 3, 8): F(m * (n * n - 1), N),
        (6, 4, 6): F(0),
        (7, 4, 7): F(l, l + m),
        (8, 4, 8): F(m, l + m),
        (6, 5, 6): F(l + m, N),
        (7, 5, 7): F(m * n, N * (l + m)),
        (8, 5, 8): F(l * n, N * (l + m)),
        (8, 6, 7): F(l * m * n, N),
    }
    return TripleTable(spec, "B", {k: v for k, v in vals.items() if v != 0})


def _center_row(spec: FlagSpec, x, y, s):
    """Sum over block j of (x B(., H4~) + y B(., H5~))^2, for j = 6, 7, 8."""
    l, m, n, N = spec.l, spec.m, spec.n, spec.N
    return {
        6: y * y * Fraction(l + m, N),
        7: x * x * Fraction(l, l + m) + y * y * Fraction(m * n, N * (l + m)) + 2 * x * y * s / (l + m),
        8: x * x * Fraction(m, l + m) + y * y * Fraction(l * n, N * (l + m)) - 2 * x * y * s / (l + m),
    }


def center_cross(spec: FlagSpec, gauge: GaugeParams, s=None):
    """Sum over block j of the product of the V4- and V5-coordinates of brackets."""
    l, m, n, N = spec.l, spec.m, spec.n, spec.N
    a, b, c, d = gauge.as_tuple()
    if s is None:
        s = surd(spec)
    return {
        6: b * d * Fraction(l + m, N),
        7: (l * a * c + s * (a * d + c * b) + b * d * Fraction(m * n, N)) / (l + m),
        8: (m * a * c - s * (a * d + c * b) + b * d * Fraction(l * n, N)) / (l + m),
    }


def q_constants_closed(spec: FlagSpec, gauge: GaugeParams = IDENTITY_GAUGE, s=None) -> TripleTable:
    if s is None:
        s = surd(spec)
    table = TripleTable(spec, "Q", gauge=gauge)
    for key, val in b_constants_closed(spec).entries.items():
        if any(i in CENTER for i in key):
            continue
        for k, i, j in set(permutations(key)):
            table[(k, i, j)] = val
    a, b, c, d = gauge.as_tuple()
    p, q, r, t = gauge.inverse
    rows = {4: _center_row(spec, a, b, s), 5: _center_row(spec, c, d, s)}
    # V4 = p H4~ + r H5~, V5 = q H4~ + t H5~ act on block j by these weights
    acting = {4: _center_row(spec, p, r, s), 5: _center_row(spec, q, t, s)}
    dims = spec.dims
    for h in CENTER:
        for j in OFF_DIAGONAL:
            if dims[j] == 0:
                continue
            table[(h, j, j)] = rows[h][j]
            table[(j, h, j)] = acting[h][j]
    return table


# brute force ------------------------------------------------------------------

@lru_cache(maxsize=16)
def bracket_tensor(spec: FlagSpec) -> np.ndarray:
    """C[a, b, c] = B([e_a, e_b], e_c) over the stacked B-orthonormal basis."""
    dec = build_decomposition(spec)
    E, _ = dec.basis()
    d, N = len(E), spec.N
    flat = E.reshape(d, N * N)
    C = np.empty((d, d, d))
    for a in range(d):
        br = np.matmul(E[a], E) - np.matmul(E, E[a])
        C[a] = 2 * N * np.real(br.reshape(d, N * N) @ flat.conj().T)
    C.setflags(write=False)
    return C


@dataclass(frozen=True)
class SparseBrackets:
    """Nonzero entries C[a, b, c] = B([e_a, e_b], e_c) as coordinate arrays."""
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    val: np.ndarray
    dim: int


@lru_cache(maxsize=8)
def bracket_sparse(spec: FlagSpec) -> SparseBrackets:
    """Same tensor as ``bracket_tensor`` without dense d^3 storage."""
    dec = build_decomposition(spec)
    E, _ = dec.basis()
    d, N = len(E), spec.N
    flat = sparse.csr_matrix(E.reshape(d, N * N))
    dual = (2 * N * flat.conj()).T.tocsc()
    stacked_rows = sparse.csr_matrix(E.reshape(d * N, N))              # E_b stacked vertically
    stacked_cols = sparse.csr_matrix(np.concatenate(list(E), axis=1))  # E_b side by side
    A, B, Cc, V = [], [], [], []
    for a in range(d):
        Ea = sparse.csr_matrix(E[a])
        left = (Ea @ stacked_cols).tocoo()     # (i, b*N + j) -> row b, column i*N + j
        right = (stacked_rows @ Ea).tocoo()    # (b*N + i, j) -> row b, column i*N + j
        rows = np.concatenate([left.col // N, right.row // N])
        cols = np.concatenate([left.row * N + left.col % N, (right.row % N) * N + right.col])
        data = np.concatenate([left.data, -right.data])
        brackets = sparse.csr_matrix((data, (rows, cols)), shape=(d, N * N))
        coords = (brackets @ dual).real.tocoo()
        keep = np.abs(coords.data) > 1e-13
        A.append(np.full(keep.sum(), a))
        B.append(coords.row[keep])
        Cc.append(coords.col[keep])
        V.append(coords.data[keep])
    out = [np.concatenate(x) for x in (A, B, Cc, V)]
    for x in out:
        x.setflags(write=False)
    return SparseBrackets(*out, d)


def change_basis_sparse(S: SparseBrackets, slices, scale, lower, upper) -> SparseBrackets:
    """Sparse analogue of ``change_basis``."""
    c4, c5 = slices[4].start, slices[5].start
    s = np.asarray(scale, dtype=float).copy()
    s[[c4, c5]] = 1.0
    idx = [S.a.copy(), S.b.copy(), S.c.copy()]
    val = S.val * s[idx[0]] * s[idx[1]] / s[idx[2]]
    for axis, M in ((0, lower.T), (1, lower.T), (2, upper)):
        # new index i gets sum_old M[i, old] * entry[old]
        hit = (idx[axis] == c4) | (idx[axis] == c5)
        old = np.where(idx[axis][hit] == c4, 0, 1)
        parts_idx = [[x[~hit]] for x in idx]
        parts_val = [val[~hit]]
        for new, pos in ((0, c4), (1, c5)):
            for k in range(3):
                parts_idx[k].append(np.full(hit.sum(), pos) if k == axis else idx[k][hit])
            parts_val.append(val[hit] * M[new, old])
        idx = [np.concatenate(p) for p in parts_idx]
        val = np.concatenate(parts_val)
    d = S.dim
    key = (idx[0] * d + idx[1]) * d + idx[2]
    key, inv = np.unique(key, return_inverse=True)
    summed = np.zeros(len(key))
    np.add.at(summed, inv, val)
    a, rest = np.divmod(key, d * d)
    b, c = np.divmod(rest, d)
    return SparseBrackets(a, b, c, summed, d)


def change_basis(C, slices, scale, lower, upper):
    """Structure constants after a block-diagonal change of basis.

    New non-center vectors are scale[i] * e_i; new center vectors are the
    columns of (H4~, H5~) @ lower, and center coordinates map by upper.
    """
    c4, c5 = slices[4].start, slices[5].start
    s = np.asarray(scale, dtype=float).copy()
    s[[c4, c5]] = 1.0
    out = C * s[:, None, None] * s[None, :, None] / s[None, None, :]
    idx = [c4, c5]
    out[idx] = np.einsum("ai,ajk->ijk", lower, out[idx])
    out[:, idx] = np.einsum("bj,ibk->ijk", lower, out[:, idx])
    out[:, :, idx] = np.einsum("kg,ijg->ijk", upper, out[:, :, idx])
    return out


def block_sums(C2, slices, blocks=BLOCKS):
    """Sum a (d, d, d) array over every (block_k, block_i, block_j) cell."""
    res = {}
    for k in blocks:
        for i in blocks:
            for j in blocks:
                sk, si, sj = slices[k], slices[i], slices[j]
                if si.stop == si.start or sj.stop == sj.start or sk.stop == sk.start:
                    continue
                res[(k, i, j)] = float(C2[si, sj, sk].sum())
    return res


def b_constants_brute(dec: Decomposition) -> TripleTable:
    C = bracket_tensor(dec.spec)
    sums = block_sums(C * C, dec.slices)
    return TripleTable(dec.spec, "B", sums)


def q_constants_brute(dec: Decomposition, gauge: GaugeParams = IDENTITY_GAUGE) -> TripleTable:
    C = bracket_tensor(dec.spec)
    G = np.array(gauge.matrix, dtype=float)
    Cq = change_basis(C, dec.slices, np.ones(len(C)), np.linalg.inv(G), G)
    sums = block_sums(Cq * Cq, dec.slices)
    return TripleTable(dec.spec, "Q", sums, gauge=gauge)
