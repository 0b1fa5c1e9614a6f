"""Exact polynomial arithmetic over the rationals.

``MultiPoly`` is a sparse multivariate polynomial with rational coefficients
(gmpy2 ``mpq``).  Negative exponents are tolerated by the ring operations so
Laurent expressions can be built and then cleared with ``clear_monomial``.

Univariate algorithms (gcd, squarefree part, Sturm sequences, real-root
isolation) work on dense integer coefficient lists, lowest degree first.
Resultants come from the Sylvester matrix, evaluated by fraction-free
Bareiss elimination, with an evaluation-interpolation route when the entries
are univariate polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpq, mpz

MAX_SYLVESTER = 40


class ResultantTooLarge(ValueError):
    """Sylvester matrix larger than the exact-elimination guard."""


class NotDivisible(ArithmeticError):
    pass


def Q(x) -> mpq:
    if isinstance(x, mpq):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, float):
        return mpq(Fraction(x))
    return mpq(x)


def to_fraction(x) -> Fraction:
    x = Q(x)
    return Fraction(int(x.numerator), int(x.denominator))


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, variables, terms=None):
        self.vars = tuple(variables)
        t = {}
        for e, c in (terms or {}).items():
            if c:
                t[tuple(e)] = Q(c)
        self.terms = t

    # construction ----------------------------------------------------------
    @classmethod
    def const(cls, c, variables):
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, name, variables):
        variables = tuple(variables)
        e = [0] * len(variables)
        e[variables.index(name)] = 1
        return cls(variables, {tuple(e): 1})

    @classmethod
    def from_coeffs(cls, coeffs, var="x"):
        """Univariate polynomial from coefficients, lowest degree first."""
        return cls((var,), {(i,): c for i, c in enumerate(coeffs) if c})

    def _lift(self, other):
        if not isinstance(other, (MultiPoly, int, Fraction, float, type(mpq(0)), type(mpz(0)))):
            return NotImplemented
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")
            return other
        return MultiPoly.const(other, self.vars)

    # ring operations ---------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return _raw(self.vars, t)

    __radd__ = __add__

    def __neg__(self):
        return _raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if self._lift(other) is NotImplemented:
                return NotImplemented
            c0 = Q(other)
            if not c0:
                return _raw(self.vars, {})
            return _raw(self.vars, {e: c * c0 for e, c in self.terms.items()})
        other = self._lift(other)
        t = {}
        get = t.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = get(e, 0) + c1 * c2
        return _raw(self.vars, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            if other.is_constant():
                other = other.constant_value()
            elif len(other.terms) == 1:
                (e, c), = other.terms.items()
                return _raw(self.vars, {tuple(a - b for a, b in zip(e1, e)): c1 / c
                                        for e1, c1 in self.terms.items()})
            else:
                return divide_exact(self, other)
        c0 = Q(other)
        return _raw(self.vars, {e: c / c0 for e, c in self.terms.items()})

    def __rtruediv__(self, other):
        if len(self.terms) != 1:
            raise ValueError("only monomials can be inverted")
        return (self ** -1) * other

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("negative power of a non-monomial")
            (e, c), = self.terms.items()
            return _raw(self.vars, {tuple(a * k for a in e): c ** k})
        result = MultiPoly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(other, self.vars)
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        return self.terms.get((0,) * len(self.vars), mpq(0))

    # inspection --------------------------------------------------------------
    def degree(self, var=None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def min_degree(self, var) -> int:
        i = self.vars.index(var)
        return min(e[i] for e in self.terms)

    def used_vars(self):
        return tuple(v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms))

    def coeffs_in(self, var) -> list:
        """Coefficients as polynomials (same variable list), lowest power first."""
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            e2 = e[:i] + (0,) + e[i + 1:]
            out.setdefault(k, {})[e2] = c
        if not out:
            return []
        top = max(out)
        return [_raw(self.vars, out.get(k, {})) for k in range(top + 1)]

    def leading_term(self):
        e = max(self.terms)
        return e, self.terms[e]

    # transformations ---------------------------------------------------------
    def with_vars(self, variables):
        """Re-embed in another variable list containing every used variable."""
        variables = tuple(variables)
        pos = [variables.index(v) if v in variables else None for v in self.vars]
        t = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for i, k in enumerate(e):
                if k:
                    if pos[i] is None:
                        raise ValueError(f"variable {self.vars[i]} still in use")
                    ne[pos[i]] = k
            t[tuple(ne)] = c
        return MultiPoly(variables, t)

    def drop_unused(self):
        return self.with_vars(self.used_vars())

    def derivative(self, var):
        i = self.vars.index(var)
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
                t[e2] = c * e[i]
        return _raw(self.vars, t)

    def substitute(self, assignments: dict):
        """Replace variables by rationals or by polynomials over the same variables."""
        idx = {self.vars.index(v): val for v, val in assignments.items()}
        powers = {i: {} for i in idx}

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                val = idx[i]
                if isinstance(val, MultiPoly):
                    cache[k] = val ** k
                else:
                    cache[k] = Q(val) ** k
            return cache[k]

        out = MultiPoly(self.vars)
        groups = {}
        for e, c in self.terms.items():
            rest = tuple(0 if i in idx else k for i, k in enumerate(e))
            key = tuple(e[i] for i in sorted(idx))
            groups.setdefault(key, {})[rest] = c
        order = sorted(idx)
        for key, tdict in groups.items():
            factor = mpq(1)
            polyfactor = None
            for i, k in zip(order, key):
                if k == 0:
                    continue
                p = power(i, k)
                if isinstance(p, MultiPoly):
                    polyfactor = p if polyfactor is None else polyfactor * p
                else:
                    factor *= p
            base = _raw(self.vars, tdict) * factor
            if polyfactor is not None:
                base = base * polyfactor
            out = out + base
        return out

    def substitute_ratio(self, var, num: "MultiPoly", den: "MultiPoly"):
        """den^k * P(var -> num/den) where k is the degree of P in var."""
        cs = self.coeffs_in(var)
        k = len(cs) - 1
        out = MultiPoly(self.vars)
        npow = [MultiPoly.const(1, self.vars)]
        dpow = [MultiPoly.const(1, self.vars)]
        for _ in range(k):
            npow.append(npow[-1] * num)
            dpow.append(dpow[-1] * den)
        for i, c in enumerate(cs):
            if c:
                out = out + c * npow[i] * dpow[k - i]
        return out

    def evaluate(self, point: dict):
        """Exact value at a rational point covering every used variable."""
        vals = [Q(point[v]) if v in point else None for v in self.vars]
        total = mpq(0)
        for e, c in self.terms.items():
            term = c
            for v, k in zip(vals, e):
                if k:
                    term *= v ** k
            total += term
        return total

    def evaluate_float(self, point: dict) -> float:
        vals = [float(point[v]) if v in point else 0.0 for v in self.vars]
        total = 0.0
        for e, c in self.terms.items():
            term = float(c)
            for v, k in zip(vals, e):
                if k:
                    term *= v ** k
            total += term
        return total

    def clear_monomial(self, keep=()):
        """Multiply by the monomial making the minimum exponent of each variable zero.

        Variables in ``keep`` are only shifted when their exponents go negative.
        """
        if not self.terms:
            return self
        mins = [min(e[i] for e in self.terms) for i in range(len(self.vars))]
        mins = [min(k, 0) if v in keep else k for v, k in zip(self.vars, mins)]
        return _raw(self.vars, {tuple(a - b for a, b in zip(e, mins)): c for e, c in self.terms.items()})

    def primitive(self):
        """Integer coefficients with gcd 1 and positive leading coefficient."""
        if not self.terms:
            return self
        den = mpz(1)
        for c in self.terms.values():
            den = gmpy2.lcm(den, c.denominator)
        g = mpz(0)
        for c in self.terms.values():
            g = gmpy2.gcd(g, c.numerator * (den // c.denominator))
        _, lc = self.leading_term()
        if lc < 0:
            g = -g
        return _raw(self.vars, {e: mpq(c.numerator * (den // c.denominator), g) for e, c in self.terms.items()})

    # conversion ------------------------------------------------------------
    def univariate_coeffs(self, var=None) -> list:
        used = self.used_vars()
        if var is None:
            if len(used) > 1:
                raise ValueError(f"not univariate: {used}")
            var = used[0] if used else self.vars[0]
        elif any(v != var for v in used):
            raise ValueError(f"not univariate in {var}: {used}")
        i = self.vars.index(var)
        if not self.terms:
            return []
        out = [mpq(0)] * (self.degree(var) + 1)
        for e, c in self.terms.items():
            out[e[i]] = c
        return out

    def to_json(self):
        return {"vars": list(self.vars),
                "terms": [[list(e), str(c)] for e, c in sorted(self.terms.items())]}

    @classmethod
    def from_json(cls, d):
        return cls(d["vars"], {tuple(e): mpq(c) for e, c in d["terms"]})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"{v}^{k}" if k != 1 else v for v, k in zip(self.vars, e) if k)
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def _raw(variables, terms):
    p = MultiPoly.__new__(MultiPoly)
    p.vars = variables
    p.terms = terms
    return p


def divide_exact(P: MultiPoly, D: MultiPoly) -> MultiPoly:
    """Quotient P / D, raising NotDivisible if D does not divide P (lex order)."""
    if D.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if P.vars != D.vars:
        raise ValueError("variable mismatch")
    ed, cd = D.leading_term()
    rem = dict(P.terms)
    quot = {}
    dterms = list(D.terms.items())
    while rem:
        er = max(rem)
        cr = rem[er]
        shift = tuple(a - b for a, b in zip(er, ed))
        if any(s < 0 for s in shift):
            raise NotDivisible("leading term not divisible")
        f = cr / cd
        quot[shift] = f
        for e, c in dterms:
            e2 = tuple(a + b for a, b in zip(e, shift))
            v = rem.get(e2, 0) - f * c
            if v:
                rem[e2] = v
            else:
                rem.pop(e2, None)
    return _raw(P.vars, quot)


def try_divide(P: MultiPoly, D: MultiPoly):
    try:
        return divide_exact(P, D)
    except NotDivisible:
        return None


def strip_factor(P: MultiPoly, D: MultiPoly):
    """Divide out D as often as possible; returns (quotient, multiplicity)."""
    k = 0
    while True:
        q = try_divide(P, D)
        if q is None:
            return P, k
        P, k = q, k + 1


def poly_substitute(P: MultiPoly, assignments: dict) -> MultiPoly:
    return P.substitute(assignments)


# dense univariate helpers (integer or rational lists, low degree first) -------

def _trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def _primitive_list(a):
    a = _trim(a)
    if not a:
        return a
    den = mpz(1)
    for c in a:
        den = gmpy2.lcm(den, mpq(c).denominator)
    ints = [mpz(mpq(c) * den) for c in a]
    g = mpz(0)
    for c in ints:
        g = gmpy2.gcd(g, c)
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def _prem(a, b):
    """Pseudo-remainder |lc(b)|^(da-db+1) * a mod b (keeps the sign of a mod b)."""
    a, b = list(a), list(b)
    db = len(b) - 1
    lc = b[-1]
    alc = abs(lc)
    sgn = 1 if lc > 0 else -1
    while len(a) - 1 >= db and a:
        k = len(a) - 1 - db
        coef = a[-1]
        # a <- |lc| * a - sgn * coef * x^k * b
        a = [alc * c for c in a]
        for i, c in enumerate(b):
            a[i + k] -= sgn * coef * c
        a = _trim(a)
    return a


def _evaluate_list(a, x):
    v = mpq(0)
    for c in reversed(a):
        v = v * x + c
    return v


def _derivative_list(a):
    return [c * i for i, c in enumerate(a)][1:]


def gcd_list(a, b):
    a, b = _primitive_list(a), _primitive_list(b)
    while b:
        r = _prem(a, b)
        a, b = b, _primitive_list(r)
    return _primitive_list(a)


def squarefree_list(a):
    a = _primitive_list(a)
    if len(a) <= 2:
        return a
    g = gcd_list(a, _derivative_list(a))
    if len(g) <= 1:
        return a
    return _primitive_list(_divide_list(a, g))


def squarefree_decomposition(a):
    """Yun's algorithm: [(factor, multiplicity)] with a = const * prod factor^multiplicity."""
    a = _primitive_list(a)
    out = []
    if len(a) <= 1:
        return out
    da = _derivative_list(a)
    g = gcd_list(a, da)
    b, c = _divide_list(a, g), _divide_list(da, g)
    i = 1
    while len(_trim(b)) > 1:
        d = _trim([x - y for x, y in _pad(c, _derivative_list(b))])
        f = gcd_list(b, d) if d else _primitive_list(b)
        if len(f) > 1:
            out.append((_primitive_list(f), i))
        b = _divide_list(b, f)
        c = _divide_list(d, f) if d else []
        i += 1
    return out


def _pad(a, b):
    n = max(len(a), len(b))
    return zip(list(a) + [0] * (n - len(a)), list(b) + [0] * (n - len(b)))


def _divide_list(a, b):
    a = [mpq(c) for c in a]
    q = [mpq(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        f = a[-1] / b[-1]
        q[k] = f
        for i, c in enumerate(b):
            a[i + k] -= f * c
        a = _trim(a)
    if a:
        raise NotDivisible("nonzero remainder")
    return q


def sturm_sequence(a):
    """Sturm chain of a squarefree polynomial; members rescaled by positive constants."""
    p0 = _primitive_list(a)
    seq = [p0]
    p1 = _primitive_list(_derivative_list(p0))
    if p1:
        seq.append(p1)
    while len(seq) > 1 and len(seq[-1]) > 1:
        r = _trim(_prem(seq[-2], seq[-1]))
        if not r:
            break
        seq.append(_negate_primitive(r))
    return seq


def _negate_primitive(r):
    r = _trim(r)
    den = mpz(1)
    for c in r:
        den = gmpy2.lcm(den, mpq(c).denominator)
    ints = [mpz(mpq(c) * den) for c in r]
    g = mpz(0)
    for c in ints:
        g = gmpy2.gcd(g, c)
    return [-(c // g) for c in ints]


def _sign(v):
    return (v > 0) - (v < 0)


def sign_variations(seq, x) -> int:
    signs = [_sign(_evaluate_list(p, x)) for p in seq]
    signs = [s for s in signs if s]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def _sign_at_infinity(seq, positive=True):
    signs = []
    for p in seq:
        lc = _sign(p[-1])
        deg = len(p) - 1
        signs.append(lc if positive or deg % 2 == 0 else -lc)
    signs = [s for s in signs if s]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def cauchy_bound(a) -> mpq:
    a = _trim(a)
    lc = abs(mpq(a[-1]))
    return 1 + max(abs(mpq(c)) / lc for c in a[:-1]) if len(a) > 1 else mpq(1)


@dataclass(frozen=True)
class RootInterval:
    lo: Fraction
    hi: Fraction
    multiplicity_hint: int = 1

    @property
    def mid(self) -> float:
        return float((self.lo + self.hi) / 2)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


def count_real_roots(P, lo=None, hi=None) -> int:
    """Distinct real roots in (lo, hi] by the Sturm sign-variation count."""
    a = squarefree_list(_as_list(P))
    if len(a) <= 1:
        return 0
    seq = sturm_sequence(a)
    vlo = _sign_at_infinity(seq, False) if lo is None else sign_variations(seq, Q(lo))
    vhi = _sign_at_infinity(seq, True) if hi is None else sign_variations(seq, Q(hi))
    return vlo - vhi


def _as_list(P):
    if isinstance(P, MultiPoly):
        return P.univariate_coeffs()
    return list(P)


def isolate_real_roots(P, lo=None, hi=None, positive_only=False):
    """Isolating intervals for the distinct real roots of P in [lo, hi].

    With no bounds the whole real line is covered; ``positive_only`` restricts
    to the open half-line (0, inf).  Each interval contains exactly one root;
    exact rational roots come back as degenerate intervals.
    """
    a = _as_list(P)
    if not _trim(a):
        raise ValueError("zero polynomial has no isolated roots")
    a = squarefree_list(a)
    if len(a) <= 1:
        return []
    B = cauchy_bound(a)
    lo = Q(-B if lo is None else lo)
    hi = Q(B if hi is None else hi)
    if positive_only:
        lo = max(lo, mpq(0))
    seq = sturm_sequence(a)
    out = []
    if _evaluate_list(a, lo) == 0 and not (positive_only and lo == 0):
        out.append(RootInterval(to_fraction(lo), to_fraction(lo)))
    stack = [(lo, hi, sign_variations(seq, lo), sign_variations(seq, hi))]
    while stack:
        l, h, vl, vh = stack.pop()
        k = vl - vh
        if k == 0:
            continue
        if _evaluate_list(a, h) == 0:
            if k == 1:
                out.append(RootInterval(to_fraction(h), to_fraction(h)))
                continue
        if k == 1 and _evaluate_list(a, h) != 0 and _sign(_evaluate_list(a, l)) * _sign(_evaluate_list(a, h)) < 0:
            out.append(RootInterval(to_fraction(l), to_fraction(h)))
            continue
        mid = (l + h) / 2
        vm = sign_variations(seq, mid)
        stack.append((mid, h, vm, vh))
        stack.append((l, mid, vl, vm))
    out.sort(key=lambda r: r.lo)
    return out


def refine_root(P, iv: RootInterval, width=Fraction(1, 10 ** 15)) -> RootInterval:
    """Bisect an isolating interval (sign change) until it is narrower than width."""
    a = squarefree_list(_as_list(P))
    lo, hi = Q(iv.lo), Q(iv.hi)
    if lo == hi:
        return iv
    flo = _sign(_evaluate_list(a, lo))
    w = Q(width)
    while hi - lo > w:
        mid = (lo + hi) / 2
        fm = _sign(_evaluate_list(a, mid))
        if fm == 0:
            return RootInterval(to_fraction(mid), to_fraction(mid))
        if fm == flo:
            lo = mid
        else:
            hi = mid
    return RootInterval(to_fraction(lo), to_fraction(hi))


def real_roots(P, lo=None, hi=None, positive_only=False, width=Fraction(1, 10 ** 18)):
    """Float approximations of the isolated roots (refined exactly first)."""
    return [refine_root(P, iv, width).mid for iv in isolate_real_roots(P, lo, hi, positive_only)]


# determinants and resultants ---------------------------------------------------

def bareiss_det(M):
    """Fraction-free determinant; entries rationals or MultiPoly (exact division)."""
    n = len(M)
    if n == 0:
        return mpq(1)
    A = [list(row) for row in M]
    sign = 1
    prev = mpq(1)
    for k in range(n - 1):
        if not A[k][k]:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return _zero_like(A[0][0])
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[i][j] * A[k][k] - A[i][k] * A[k][j]
                A[i][j] = _exact_div(num, prev)
        prev = A[k][k]
    det = A[n - 1][n - 1]
    return det if sign > 0 else -det


def _zero_like(x):
    return MultiPoly(x.vars) if isinstance(x, MultiPoly) else mpq(0)


def _exact_div(num, den):
    if isinstance(num, MultiPoly):
        if isinstance(den, MultiPoly):
            if den.is_constant():
                return num / den.constant_value()
            return divide_exact(num, den)
        return num / den
    if isinstance(den, MultiPoly):
        den = den.constant_value()
    return num / den


def sylvester_matrix(p: list, q: list):
    """Sylvester matrix from coefficient lists (lowest first) in the eliminated variable."""
    dp, dq = len(p) - 1, len(q) - 1
    n = dp + dq
    zero = _zero_like(p[0])
    rows = []
    for i in range(dq):
        row = [zero] * n
        for j, c in enumerate(reversed(p)):
            row[i + j] = c
        rows.append(row)
    for i in range(dp):
        row = [zero] * n
        for j, c in enumerate(reversed(q)):
            row[i + j] = c
        rows.append(row)
    return rows


def sylvester_resultant(P: MultiPoly, Qp: MultiPoly, var: str, max_dim=MAX_SYLVESTER) -> MultiPoly:
    """Res_var(P, Q) as a polynomial over the same variable list (var absent)."""
    dp, dq = P.degree(var), Qp.degree(var)
    if dp <= 0 or dq <= 0:
        raise ValueError(f"both polynomials need positive degree in {var}")
    if dp + dq > max_dim:
        raise ResultantTooLarge(f"Sylvester dimension {dp + dq} exceeds {max_dim}")
    pc, qc = P.coeffs_in(var), Qp.coeffs_in(var)
    others = [v for v in set(P.used_vars()) | set(Qp.used_vars()) if v != var]
    if not others:
        M = sylvester_matrix([c.constant_value() for c in pc], [c.constant_value() for c in qc])
        return MultiPoly.const(bareiss_det(M), P.vars)
    if len(others) == 1:
        return _resultant_interpolate(pc, qc, others[0], P.vars)
    return bareiss_det(sylvester_matrix(pc, qc))


def _resultant_interpolate(pc, qc, y, variables):
    """Resultant with univariate coefficient polynomials in y by evaluation-interpolation."""
    pcl = [c.univariate_coeffs(y) if c else [] for c in pc]
    qcl = [c.univariate_coeffs(y) if c else [] for c in qc]
    dp, dq = len(pc) - 1, len(qc) - 1
    degy_p = max(len(c) - 1 for c in pcl)
    degy_q = max(len(c) - 1 for c in qcl)
    bound = dq * degy_p + dp * degy_q
    xs, ys = [], []
    t = 0
    while len(xs) < bound + 1:
        pv = [_evaluate_list(c, t) if c else mpq(0) for c in pcl]
        qv = [_evaluate_list(c, t) if c else mpq(0) for c in qcl]
        t += 1
        if not pv[-1] or not qv[-1]:
            continue  # leading coefficient degenerates here
        xs.append(mpq(t - 1))
        ys.append(bareiss_det(sylvester_matrix(pv, qv)))
    coeffs = _newton_interpolate(xs, ys)
    i = variables.index(y)
    terms = {}
    for k, c in enumerate(coeffs):
        if c:
            e = [0] * len(variables)
            e[i] = k
            terms[tuple(e)] = c
    return MultiPoly(variables, terms)


def _newton_interpolate(xs, ys):
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [mpq(0)] * n
    for i in range(n - 1, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        new = [mpq(0)] * n
        for k in range(n - 1):
            new[k + 1] += poly[k]
            new[k] -= poly[k] * xs[i]
        new[0] += coef[i]
        poly = new
    return _trim(poly)


def content_in(P: MultiPoly, var: str):
    """gcd over Q[var] of the coefficients of P seen as a polynomial in the other variables.

    Only meaningful for bivariate input; returns a primitive univariate polynomial in var.
    """
    others = [v for v in P.used_vars() if v != var]
    if len(others) != 1:
        if not others:
            return P.primitive()
        raise ValueError("content_in expects a bivariate polynomial")
    g = []
    for c in P.coeffs_in(others[0]):
        if c:
            g = c.univariate_coeffs(var) if not g else gcd_list(g, c.univariate_coeffs(var))
            if len(_trim(g)) == 1:
                break
    i = P.vars.index(var)
    terms = {}
    for k, c in enumerate(_primitive_list(g)):
        if c:
            e = [0] * len(P.vars)
            e[i] = k
            terms[tuple(e)] = c
    return MultiPoly(P.vars, terms)
