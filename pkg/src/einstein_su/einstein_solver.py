"""Einstein metrics on SU(l+m+n) and SU(l+m+n)/SU(n).

Exact route: the closed-form Ricci components are built as Laurent
polynomials in the metric coefficients with x7 = 1 and the center gauge
(a, b, c, d) = (1, 0, c, 1), where c = g * sqrt(l m n / N).  The r0 = 0
equation is linear in g; the coefficients that appear linearly are solved by
Cramer's rule; what is left is a system in x6 and x8, solved by resultants
and Sturm isolation.  Points where the Cramer determinant vanishes on a
rational line (x8 = 1 and the like) are re-solved with that value fixed.

Newton route: damped Newton over many random starts on the full residual in
log-coordinates, used as an independent cross-check.

Every solution is certified against the brute-force Ricci form.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .algebra_core import FlagSpec, GaugeParams
from .poly import (MultiPoly, Q, RootInterval, ResultantTooLarge, _evaluate_list,
                   _divide_list, _primitive_list, _trim, bareiss_det, content_in, count_real_roots,
                   divide_exact, gcd_list, isolate_real_roots, refine_root,
                   squarefree_decomposition, squarefree_list, strip_factor, sylvester_resultant, to_fraction)
from .ricci import (GROUP, STIEFEL, MetricParams, certify, center_components,
                    diagonal_components)
from .structure_constants import Surd, center_cross, q_constants_closed

SYMBOLS = ("u1", "u2", "u3", "v4", "v5", "x6", "x8", "g")
LINEAR_CANDIDATES = ("u1", "u2", "u3", "v4", "v5")
FREE = ("x6", "x8")
BLOCK_NAME = {1: "u1", 2: "u2", 3: "u3", 4: "v4", 5: "v5", 6: "x6", 7: "x7", 8: "x8"}

RESIDUAL_TOL = 1e-9
DPS = 60


class EliminationError(RuntimeError):
    """The exact pipeline does not apply; callers fall back to Newton."""


@dataclass
class EinsteinSolution:
    spec: FlagSpec
    space: str
    metric: MetricParams
    lam: float
    residual: float
    exact_form: dict | None = None
    classification: object = None
    branch: str = ""

    def key(self):
        return tuple(round(v, 8) for v in normalized_vector(self.metric))

    def to_dict(self):
        present = {BLOCK_NAME[k] for k in self.spec.present(self.space == STIEFEL)}
        return {"params": {k: v for k, v in self.metric.to_dict().items() if k in present},
                "gauge": [float(x) for x in self.metric.gauge.as_tuple()],
                "lambda": self.lam, "residual": self.residual,
                "exact_form": self.exact_form, "branch": self.branch,
                "classification": None if self.classification is None else self.classification.to_dict()}


class SolveResult(list):
    """List of solutions with the rejected candidates and diagnostics attached."""

    def __init__(self, solutions=(), rejected=(), diagnostics=None):
        super().__init__(solutions)
        self.rejected = list(rejected)
        self.diagnostics = dict(diagnostics or {})


def normalized_vector(metric: MetricParams):
    """Coefficients scaled so x7 = 1, followed by the gauge entry c."""
    t = 1.0 / float(metric.x7)
    vals = [float(v) * t for v in metric.values().values()]
    return vals + [float(metric.gauge.c) / float(metric.gauge.d)]


# symbolic components ------------------------------------------------------------

class _SymbolicGauge:
    """Gauge (1, 0, c, 1) whose entry c is a surd with polynomial coefficient."""

    def __init__(self, c):
        self.a, self.b, self.c, self.d = 1, 0, c, 1
        self.inverse = (1, 0, -c, 1)

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d)


def symbolic_components(spec: FlagSpec, space: str):
    """Ricci components as Laurent polynomials in SYMBOLS, plus the r0 factor.

    r0 vanishes iff the returned polynomial does (it is the surd part of
    the center cross sum; its rational part is identically zero).
    """
    stiefel = space == STIEFEL
    radicand = Fraction(spec.l * spec.m * spec.n, spec.N)
    V = {v: MultiPoly.var(v, SYMBOLS) for v in SYMBOLS}
    s = Surd(0, 1, radicand)
    gauge = _SymbolicGauge(Surd(0, V["g"], radicand))
    table = q_constants_closed(spec, gauge, s)
    present = spec.present(stiefel)

    def q(k, i, j):
        if stiefel and 3 in (k, i, j):
            return 0
        v = table[(k, i, j)]
        return v.rational() if isinstance(v, Surd) else v

    one = MultiPoly.const(1, SYMBOLS)
    y = {1: V["u1"], 2: V["u2"], 3: V["u3"], 4: V["v4"], 5: V["v5"],
         6: V["x6"], 7: one, 8: V["x8"]}
    y = {k: y[k] for k in present}
    comps = diagonal_components(spec, present, y, q, exact=True)
    row4 = {j: q(4, j, j) for j in (6, 7, 8)}
    row5 = {j: q(5, j, j) for j in (6, 7, 8)}
    cross = center_cross(spec, gauge, s)
    r4, r5, cr = center_components(present, y, row4, row5, cross)
    comps[4], comps[5] = r4, r5
    if isinstance(cr, Surd):
        if cr.r:
            raise EliminationError("rational part of the cross sum does not vanish")
        cr = cr.t
    return comps, cr


# elimination ----------------------------------------------------------------------

@dataclass
class Elimination:
    spec: FlagSpec
    space: str
    fixed: dict
    ties: dict
    gauge_ratio: tuple | None      # (num, den) with g = num / den; None when c = 0
    unknowns: tuple                # solved linearly
    det: MultiPoly                 # common Cramer denominator
    numerators: dict               # unknown -> numerator polynomial
    reduced: list                  # polynomial equations left in x6, x8
    free: tuple                    # which of x6, x8 are still unknown


def _is_linear(e: MultiPoly, idx):
    return all(sum(ex[i] for i in idx) <= 1 for ex in e.terms)


def eliminate(spec: FlagSpec, space: str, fixed=None, ties=None, gauge_free=True) -> Elimination:
    """Reduce the Einstein system to polynomial equations in x6 and x8.

    ``fixed`` maps symbols to rationals; ``ties`` maps a symbol to another
    (e.g. u2 -> u1).  With ``gauge_free`` false the gauge is diagonal (c = 0).
    """
    fixed = {k: Fraction(v) for k, v in (fixed or {}).items()}
    ties = dict(ties or {})
    if not gauge_free:
        fixed["g"] = Fraction(0)
    comps, cr = symbolic_components(spec, space)
    subs = {k: MultiPoly.var(v, SYMBOLS) for k, v in ties.items()}
    subs.update(fixed)
    order = [k for k in (1, 2, 3, 4, 5, 6, 7, 8) if k in comps]
    vals = [comps[k].substitute(subs) if subs else comps[k] for k in order]
    eqs = [(a - b).clear_monomial(keep=("g",)) for a, b in zip(vals, vals[1:])]
    cr = (cr.substitute(subs) if subs else cr).clear_monomial(keep=("g",))
    gauge_ratio = None
    if gauge_free:
        cs = cr.coeffs_in("g")
        if len(cs) != 2:
            raise EliminationError("r0 is not linear in the gauge parameter")
        gnum, gden = -cs[0], cs[1]
        gauge_ratio = (gnum, gden)
        eqs = [e.substitute_ratio("g", gnum, gden).clear_monomial() for e in eqs]
    elif cr:
        eqs.append(cr)
    eqs = [e.primitive() for e in eqs if e]
    unknowns = tuple(v for v in LINEAR_CANDIDATES if any(v in e.used_vars() for e in eqs))
    idx = [SYMBOLS.index(v) for v in unknowns]
    linear = [e for e in eqs if _is_linear(e, idx)]
    zero = MultiPoly(SYMBOLS)

    def row(e, solved):
        coeffs = []
        for v in solved:
            cs = e.coeffs_in(v)
            coeffs.append(cs[1] if len(cs) > 1 else zero)
        return coeffs, e.substitute({v: 0 for v in solved})

    # solve as many unknowns as there are linear equations; the rest stay free
    size = min(len(unknowns), len(linear))
    chosen = None
    for solved in itertools.combinations(unknowns, size):
        rows = [row(e, solved) for e in linear]
        for sub in reversed(list(itertools.combinations(range(len(linear)), size))):
            D = bareiss_det([rows[i][0] for i in sub])
            if D:
                chosen = sub
                break
        if chosen is not None:
            break
    if chosen is None:
        raise EliminationError("linear part is singular")
    numerators = {}
    for j, v in enumerate(solved):
        M = [[(-rows[i][1] if jj == j else rows[i][0][jj]) for jj in range(size)] for i in chosen]
        numerators[v] = bareiss_det(M)
    rest = [linear[i] for i in range(len(linear)) if i not in chosen]
    rest += [e for e in eqs if not _is_linear(e, idx)]
    core = _bivariate_core(D)
    lines = univariate_factors(D)
    reduced = []
    for e in rest:
        for v in solved:
            e = e.substitute_ratio(v, numerators[v], D)
        e = e.clear_monomial()
        if core is not None:
            e, _ = strip_factor(e, core)
        for v, c in lines.items():
            e = _strip_univariate(e, c, v)
        if e:
            reduced.append(e.primitive())
    free = [v for v in unknowns if v not in solved] + [v for v in FREE if v not in fixed]
    if len(free) > 2:
        raise EliminationError(f"{len(free)} unknowns left after the linear step")
    # order as (eliminated, kept): keep x8 when present, else x6
    keep = "x8" if "x8" in free else "x6"
    if len(free) == 2 and keep in free:
        free = [v for v in free if v != keep] + [keep]
    free = tuple(free)
    unknowns = solved
    return Elimination(spec, space, fixed, ties, gauge_ratio, unknowns, D, numerators, reduced, free)


def _strip_univariate(e: MultiPoly, c: MultiPoly, var: str):
    """Divide e by every factor it shares with the univariate polynomial c."""
    cl = c.univariate_coeffs(var)
    while e and var in e.used_vars() and len(e.used_vars()) <= 2:
        g = gcd_list(content_in(e, var).univariate_coeffs(var), cl)
        if len(g) <= 1:
            break
        e = divide_exact(e, MultiPoly.from_coeffs(g, var).with_vars(e.vars))
    return e


def _bivariate_core(D: MultiPoly):
    """D with monomial and univariate factors removed (None if nothing is left)."""
    D = D.clear_monomial()
    used = D.used_vars()
    if len(used) < 2:
        return None
    for v in used:
        c = content_in(D, v)
        if not c.is_constant():
            D = divide_exact(D, c)
    D = D.primitive()
    return None if D.is_constant() else D


def univariate_factors(D: MultiPoly):
    """Univariate content factors of a polynomial in x6, x8: {var: primitive poly}."""
    D = D.clear_monomial()
    used = D.used_vars()
    out = {}
    if len(used) == 1:
        out[used[0]] = D.primitive()
    elif len(used) == 2:
        for v in used:
            c = content_in(D, v)
            if not c.is_constant():
                out[v] = c
    return out


# reduced-system solving --------------------------------------------------------------

@dataclass
class Point:
    """A solution (x6, x8) of the reduced system.

    values hold mpmath numbers; exact maps a variable to a Fraction or a
    Surd (r + t sqrt(q)) when the coordinate is known in closed form.
    """
    values: dict
    exact: dict = field(default_factory=dict)


def _poly_list(P: MultiPoly, var):
    return [Q(c) for c in P.univariate_coeffs(var)] if P else []


def _rational_root(a, iv: RootInterval):
    """The root in iv if it is rational (small denominator), else None."""
    if iv.lo == iv.hi:
        return Fraction(iv.lo)
    fine = refine_root(a, iv, Fraction(1, 10 ** 40))
    if fine.lo == fine.hi:
        return Fraction(fine.lo)
    r = Fraction((fine.lo + fine.hi) / 2).limit_denominator(10 ** 9)
    if iv.lo <= r <= iv.hi and _evaluate_list(a, Q(r)) == 0:
        return r
    return None


def _quadratic_root(a, iv: RootInterval, value):
    """If the root is quadratic irrational, return it as Surd(r, t, q)."""
    with mpmath.workdps(DPS):
        coeffs = mpmath.findpoly(value, 2, maxcoeff=10 ** 8)
    if not coeffs or len(coeffs) != 3:
        return None
    A, B, C = (int(c) for c in coeffs)
    quad = [Q(C), Q(B), Q(A)]
    try:
        rem = _remainder(a, quad)
    except ZeroDivisionError:
        return None
    if rem:
        return None
    disc = B * B - 4 * A * C
    if disc <= 0:
        return None
    sq, free = _split_square(disc)
    r, t = Fraction(-B, 2 * A), Fraction(sq, 2 * A)
    plus = float(r) + float(t) * math.sqrt(free)
    minus = float(r) - float(t) * math.sqrt(free)
    t = t if abs(plus - float(value)) < abs(minus - float(value)) else -t
    return Surd(r, t, free)


def _remainder(a, b):
    a = [Q(c) for c in _trim(a)]
    b = [Q(c) for c in _trim(b)]
    while len(a) >= len(b) and a:
        f = a[-1] / b[-1]
        k = len(a) - len(b)
        for i, c in enumerate(b):
            a[i + k] -= f * c
        a = _trim(a)
    return a


def _split_square(n: int):
    """n = sq^2 * free with free squarefree."""
    sq, free, p = 1, 1, 2
    m = n
    while p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
            sq *= p
        p += 1
    return sq, m * free


def _exact_value(a, iv: RootInterval):
    """(mp value, exact value or None) of the root of a in iv."""
    r = _rational_root(a, iv)
    if r is not None:
        with mpmath.workdps(DPS):
            return mpmath.mpf(r.numerator) / r.denominator, r
    fine = refine_root(a, iv, Fraction(1, 2 ** (4 * DPS)))
    with mpmath.workdps(DPS):
        value = (mpmath.mpf(fine.lo.numerator) / fine.lo.denominator
                 + mpmath.mpf(fine.hi.numerator) / fine.hi.denominator) / 2
    return value, _quadratic_root(a, iv, value)


def _positive_roots(a):
    """Positive real roots of a rational univariate list: [(mp value, exact or None)]."""
    a = _trim(a)
    if len(a) <= 1:
        return []
    sf = squarefree_list(a)
    return [_exact_value(sf, iv) for iv in isolate_real_roots(sf, positive_only=True)]


def _mp(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


def _eval_mp(P: MultiPoly, point: dict):
    vals = [point.get(v) for v in P.vars]
    total = mpmath.mpf(0)
    for e, c in P.terms.items():
        term = mpmath.mpf(int(c.numerator)) / int(c.denominator)
        for v, k in zip(vals, e):
            if k:
                term *= v ** k
        total += term
    return total


def _eval_exact(P: MultiPoly, point: dict):
    """Value of P at a point whose coordinates are Fractions or Surds over one radicand."""
    radicands = {p.D for p in point.values() if isinstance(p, Surd)}
    if len(radicands) > 1:
        return None
    D = radicands.pop() if radicands else 1
    vals = [point.get(v) for v in P.vars]
    cache = {}
    total = Surd(Fraction(0), Fraction(0), D)
    for e, c in P.terms.items():
        term = Surd(to_fraction(c), Fraction(0), D)
        for i, k in enumerate(e):
            if k:
                key = (i, k)
                if key not in cache:
                    cache[key] = Surd(vals[i], 0, D) ** k if not isinstance(vals[i], Surd) else vals[i] ** k
                term = term * cache[key]
        total = total + term
    return total


def _univariate_mp(P: MultiPoly, var, other, value):
    """Coefficients (low first) of P in `other` after setting var = value (mp)."""
    cs = P.coeffs_in(other)
    return [_eval_mp(c, {var: value}) if c else mpmath.mpf(0) for c in cs]


def _roots_mp(polys, scale_tol=mpmath.mpf(10) ** -25):
    """Positive real common roots of mp-coefficient polynomials."""
    polys = [p for p in polys if p and max(abs(c) for c in p) > 0]
    live = []
    for p in polys:
        mag = max(abs(c) for c in p)
        q = [c / mag for c in p]
        while len(q) > 1 and abs(q[-1]) < scale_tol:
            q.pop()
        if len(q) > 1:
            live.append(q)
        elif abs(q[0]) > scale_tol:
            return []
    if not live:
        return None  # every equation vanishes: a curve of solutions
    live.sort(key=len)
    base = live[0]
    roots = mpmath.polyroots(base[::-1], maxsteps=500, extraprec=4 * DPS)
    out = []
    for z in roots:
        if abs(mpmath.im(z)) > mpmath.mpf(10) ** -20 * max(1, abs(z)):
            continue
        x = mpmath.re(z)
        if x <= 0:
            continue
        ok = True
        for p in live[1:]:
            val = abs(mpmath.polyval(p[::-1], x))
            size = sum(abs(c) * x ** i for i, c in enumerate(p))
            if val > mpmath.mpf(10) ** -20 * size:
                ok = False
                break
        if ok:
            out.append(x)
    return out


def _solve_other(reduced, var, other, value, exact):
    """Points with var = value (mp, plus optional exact) solving the reduced system."""
    pts = []
    if isinstance(exact, Fraction):
        lists = [_trim(_poly_list(e.substitute({var: exact}), other)) for e in reduced]
        lists = [a for a in lists if a]
        if any(len(a) == 1 for a in lists):
            return [], False
        if not lists:
            return [], True
        g = lists[0]
        for a in lists[1:]:
            g = gcd_list(g, a)
            if len(g) <= 1:
                return [], False
        for v, ex in _positive_roots(g):
            pts.append(Point({var: value, other: v}, {var: exact, **({other: ex} if ex is not None else {})}))
        return pts, False
    with mpmath.workdps(DPS):
        lists = [_univariate_mp(e, var, other, value) for e in reduced]
        roots = _roots_mp(lists)
    if roots is None:
        return [], True
    for v in roots:
        pts.append(Point({var: value, other: v}, {var: exact} if exact is not None else {}))
    return pts, False


def solve_reduced(reduced, free, max_dim=None, skip=()):
    """Positive solutions of the reduced equations in the free unknowns.

    ``free`` is (eliminated, kept) for two unknowns.  Values listed in
    ``skip`` as (var, Fraction) are left to a separate branch.  Returns
    (points, info); info records the eliminant, its positive root count and
    how many one-parameter families (curves) were met.
    """
    info = {"curves": 0}
    if not free:
        return ([Point({})] if not reduced else []), info
    if len(free) == 1:
        (v,) = free
        lists = [_trim(_poly_list(e, v)) for e in reduced]
        lists = [a for a in lists if a]
        if not lists:
            info["curves"] += 1
            return [], info
        if any(len(a) == 1 for a in lists):
            return [], info
        g = lists[0]
        for a in lists[1:]:
            g = gcd_list(g, a)
        info["eliminant"] = MultiPoly.from_coeffs(g, v)
        info["positive_roots"] = count_real_roots(g, 0, None) if len(g) > 1 else 0
        pts = [Point({v: x}, {v: ex} if ex is not None else {}) for x, ex in _positive_roots(g)
               if (v, ex) not in skip]
        return pts, info
    elim, keep = free
    cores, cands_keep, cands_elim = [], [], []
    for e in reduced:
        core = e.clear_monomial()
        for v, c in univariate_factors(e).items():
            core = divide_exact(core, c)
            (cands_keep if v == keep else cands_elim).append(c)
        if set(core.used_vars()) == {elim, keep}:
            cores.append(core.primitive())
    if len(cores) >= 2:
        R = None
        for a, b in itertools.combinations(cores, 2):
            try:
                kw = {} if max_dim is None else {"max_dim": max_dim}
                R = sylvester_resultant(a, b, elim, **kw)
            except ResultantTooLarge as exc:
                raise EliminationError(str(exc)) from exc
            if R:
                break
        if not R:
            info["curves"] += 1
        else:
            R = R.clear_monomial().primitive()
            info["eliminant"] = R.drop_unused()
            info["resultant_degree"] = R.degree(keep)
            info["positive_roots"] = count_real_roots(R.univariate_coeffs(keep), 0, None)
            cands_keep.append(R)
    elif len(cores) == 1:
        info["curves"] += 1
    pts = []
    for var, other, cands in ((keep, elim, cands_keep), (elim, keep, cands_elim)):
        seen = set()
        for c in cands:
            for val, ex in _positive_roots(_poly_list(c.clear_monomial(), var)):
                key = mpmath.nstr(val, 30)
                if key in seen or (var, ex) in skip:
                    continue
                seen.add(key)
                got, curve = _solve_other(reduced, var, other, val, ex)
                info["curves"] += curve
                pts.extend(got)
    return pts, info


# back-substitution --------------------------------------------------------------------

def _dedup_points(points):
    out, seen = [], set()
    for p in points:
        key = tuple(mpmath.nstr(p.values[v], 20) for v in sorted(p.values))
        if key not in seen:
            seen.add(key)
            out.append(p)
    return out


def _format_value(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Surd):
        if not x.t:
            return str(Fraction(x.r))
        r, t = Fraction(x.r), Fraction(x.t)
        den = math.lcm(r.denominator, t.denominator)
        a, b = int(r * den), int(t * den)
        rad = f"sqrt({x.D})"
        core = (f"{a}{'+' if b > 0 else '-'}" if a else ("-" if b < 0 else "")) + \
            (f"{abs(b)}*{rad}" if abs(b) != 1 else rad)
        return f"({core})/{den}" if den != 1 else (f"({core})" if a else core)
    return None


def back_substitute(el: Elimination, pt: Point):
    """Full metric (as mp numbers) and exact values for a reduced-system point.

    Returns (values dict, exact dict or None, reason or None).
    """
    with mpmath.workdps(DPS):
        point = {v: _mp(x) for v, x in el.fixed.items()}
        point.update(pt.values)
        exact = {v: x for v, x in el.fixed.items()}
        exact.update(pt.exact)
        have_exact = all(v in exact for v in el.free)
        D = _eval_mp(el.det, point)
        scale = sum(abs(_eval_mp(MultiPoly(el.det.vars, {e: abs(c)}), point)) for e, c in el.det.terms.items())
        if abs(D) <= mpmath.mpf(10) ** -30 * scale:
            return None, None, "linear system singular at this point"
        vals = dict(point)
        ex = dict(exact) if have_exact else None
        if el.gauge_ratio is not None:
            gn, gd = el.gauge_ratio
            den = _eval_mp(gd, point)
            if den == 0:
                return None, None, "gauge denominator vanishes"
            vals["g"] = _eval_mp(gn, point) / den
            if ex is not None:
                a, b = _eval_exact(gn, exact), _eval_exact(gd, exact)
                ex["g"] = None if a is None or b is None else a / b
        for v in el.unknowns:
            vals[v] = _eval_mp(el.numerators[v], point) / D
            if ex is not None:
                num, den = _eval_exact(el.numerators[v], exact), _eval_exact(el.det, exact)
                ex[v] = None if num is None or den is None else num / den
        for k, v in el.ties.items():
            vals[k] = vals[v]
            if ex is not None:
                ex[k] = ex.get(v)
    return vals, ex, None


def _metric_from(spec, space, vals):
    s = math.sqrt(spec.l * spec.m * spec.n / spec.N)
    g = float(vals.get("g", 0))
    kw = {}
    for k, name in BLOCK_NAME.items():
        if name == "x7":
            kw[name] = 1.0
        elif name in vals:
            kw[name] = float(vals[name])
    if space == STIEFEL:
        kw["u3"] = None
    return MetricParams(gauge=GaugeParams(1.0, 0.0, g * s, 1.0), space=space, **kw)


def _exact_strings(spec, ex, present):
    if ex is None:
        return None
    out = {}
    for k in present:
        name = BLOCK_NAME[k]
        if name == "x7":
            out[name] = "1"
            continue
        s = _format_value(ex.get(name))
        if s is None:
            return None
        out[name] = s
    g = ex.get("g", Fraction(0))
    gs = _format_value(g)
    if gs is None:
        return None
    radicand = Fraction(spec.l * spec.m * spec.n, spec.N)
    out["c"] = "0" if gs == "0" else f"({gs})*sqrt({radicand})"
    return out


def finish(spec, space, candidates, branch):
    """Positivity filter and brute-force certification of (vals, exact) candidates."""
    present = spec.present(space == STIEFEL)
    sols, rejected = [], []
    for vals, ex in candidates:
        metric = _metric_from(spec, space, vals)
        bad = [BLOCK_NAME[k] for k in present if not metric.coefficient(k) > 0]
        if bad:
            rejected.append({"params": metric.to_dict(), "branch": branch,
                             "reason": "non-positive " + ",".join(bad)})
            continue
        lam, res = certify(spec, metric)
        if res >= RESIDUAL_TOL or not lam > 0:
            rejected.append({"params": metric.to_dict(), "branch": branch,
                             "reason": f"residual {res:.3e}"})
            continue
        sols.append(EinsteinSolution(spec, space, metric, lam, res,
                                     _exact_strings(spec, ex, present), None, branch))
    return sols, rejected


def run_elimination(spec, space, fixed=None, ties=None, gauge_free=True, branch="generic",
                    split=True, max_dim=None):
    """Eliminate, solve, back-substitute and certify one branch, plus the
    branches where the Cramer determinant vanishes on a rational line."""
    el = eliminate(spec, space, fixed, ties, gauge_free)
    lines = []
    if split:
        for v, c in univariate_factors(el.det).items():
            if v in el.free:
                lines += [(v, ex) for _, ex in _positive_roots(_poly_list(c, v))
                          if isinstance(ex, Fraction)]
    points, info = solve_reduced(el.reduced, el.free, max_dim, skip=lines)
    candidates, rejected = [], []
    for pt in _dedup_points(points):
        vals, ex, why = back_substitute(el, pt)
        if vals is None:
            rejected.append({"point": {k: float(x) for k, x in pt.values.items()},
                             "branch": branch, "reason": why})
            continue
        candidates.append((vals, ex))
    sols, rej = finish(spec, space, candidates, branch)
    rejected += rej
    diagnostics = {branch: {"unknowns": list(el.unknowns), "free": list(el.free),
                            "equations": len(el.reduced),
                            **{k: v for k, v in info.items() if k != "eliminant"}}}
    eliminants = {branch: info.get("eliminant")}
    for v, r in lines:
        sub = {k: x for k, x in el.fixed.items() if k != "g"}
        sub[v] = r
        name = f"{v}={r}" if branch == "generic" else f"{branch},{v}={r}"
        try:
            res = run_elimination(spec, space, sub, ties, gauge_free, name, split, max_dim)
        except EliminationError as exc:
            diagnostics[name] = {"error": str(exc)}
            continue
        sols += list(res)
        rejected += res.rejected
        diagnostics.update(res.diagnostics)
        eliminants.update(res.eliminants)
    out = SolveResult(dedup(sols), rejected, diagnostics)
    out.eliminants = eliminants
    out.elimination = el
    return out


def dedup(solutions, tol=1e-6):
    out = []
    for s in solutions:
        vec = np.array(normalized_vector(s.metric))
        if any(np.max(np.abs(vec - np.array(normalized_vector(t.metric)))) < tol for t in out):
            continue
        out.append(s)
    out.sort(key=lambda s: tuple(normalized_vector(s.metric)))
    return out


def _merge(*results):
    sols, rejected, diagnostics, eliminants = [], [], {}, {}
    for r in results:
        sols += list(r)
        rejected += r.rejected
        diagnostics.update(r.diagnostics)
        eliminants.update(getattr(r, "eliminants", {}))
    out = SolveResult(dedup(sols), rejected, diagnostics)
    out.eliminants = eliminants
    return out


def _classified(result):
    from .classify import attach_classification
    for s in result:
        attach_classification(s)
    return result


def _branch_eliminant(spec, space, fixed, ties, gauge_free):
    """Univariate eliminant (list, low first) of a branch with one unknown left."""
    el = eliminate(spec, space, fixed, ties, gauge_free)
    if len(el.free) != 1:
        raise EliminationError("branch does not reduce to one unknown")
    _, info = solve_reduced(el.reduced, el.free)
    g = info.get("eliminant")
    return _primitive_list(g.univariate_coeffs(el.free[0])) if g is not None else [1]


# the families ---------------------------------------------------------------------------

def solve_su_l1_m2(n: int) -> SolveResult:
    """SU(3+n) with (l, m, n) = (1, 2, n): every invariant Einstein metric found
    by the resultant route; naturally reductive ones are flagged by classify."""
    if n < 2:
        raise ValueError("n must be at least 2")
    spec = FlagSpec(1, 2, n)
    try:
        res = run_elimination(spec, GROUP)
    except EliminationError as exc:
        res = solve_generic_newton(spec, GROUP)
        res.diagnostics["fallback"] = str(exc)
    return _classified(res)


def mori_polynomial(n: int, result=None):
    """The degree-16 eliminant F(x6) of the u1 = u2, x7 = x8 = 1, c = 0 family
    on SU(4+n), regenerated from the closed forms: the simple part of the
    x6-eliminant with the naturally reductive factor (v5 = x6) removed."""
    spec = FlagSpec(2, 2, n)
    if result is None:
        result = run_elimination(spec, GROUP, {"x8": 1}, {"u2": "u1"}, gauge_free=False, branch="mori")
    R = result.eliminants["mori"]
    simple = [f for f, k in squarefree_decomposition(R.univariate_coeffs("x6")) if k == 1]
    a = [Q(1)]
    for f in simple:
        a = _mul_list(a, f)
    nr = _branch_eliminant(spec, GROUP, {"x8": 1}, {"u2": "u1", "v5": "x6"}, False)
    while len(nr) > 1 and _evaluate_list(nr, Q(1)) == 0:
        nr = _divide_list(nr, [Q(-1), Q(1)])
    g = gcd_list(a, nr)
    if len(g) > 1:
        a = _divide_list(a, g)
    return _primitive_list(a)


def _mul_list(a, b):
    out = [Q(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def solve_su_mori(n: int) -> SolveResult:
    """SU(4+n) with l = m = 2, c = 0, x7 = x8 = 1 and u1 = u2."""
    if n < 2:
        raise ValueError("n must be at least 2")
    spec = FlagSpec(2, 2, n)
    res = run_elimination(spec, GROUP, {"x8": 1}, {"u2": "u1"}, gauge_free=False, branch="mori")
    F = mori_polynomial(n, res)
    el = res.elimination
    roots = []
    for val, ex in _positive_roots(F):
        entry = {"x6": float(val), "u3": None}
        other = [v for v in el.free if v != "x6"]
        pts = _solve_other(el.reduced, "x6", other[0], val, ex)[0] if other else [Point({"x6": val}, {})]
        for pt in pts:
            vals, _, _ = back_substitute(el, pt)
            if vals is not None:
                entry["u3"] = float(vals["u3"])
        roots.append(entry)
    res.diagnostics["mori"].update({
        "F_degree": len(F) - 1,
        "F_positive_roots": count_real_roots(F, 0, None),
        "F_roots": roots,
        "F_at_1": int(_evaluate_list(F, Q(1))),
        "F_at_2_positive": _evaluate_list(F, Q(2)) > 0,
    })
    res.mori_polynomial = F
    return _classified(res)


SMALL_GROUP = {"SU3": (1, 1, 1), "SU4": (1, 1, 2)}
SMALL_STIEFEL = {"V2C4": (1, 1, 2), "V3C5": (1, 2, 2), "V4C6": (2, 2, 2)}


def _small(spec, space):
    generic = run_elimination(spec, space)
    line = run_elimination(spec, space, {"x8": 1}, branch="x8=1")
    res = _merge(generic, line)
    gen = generic.diagnostics.get("generic", {})
    admissible = [s for s in generic if s.branch == "generic" and abs(s.metric.x8 - s.metric.x7) > 1e-9]
    off_line = None
    E = generic.eliminants.get("generic")
    if E is not None and E.used_vars() == ("x8",):
        a = squarefree_list(_primitive_list(E.univariate_coeffs("x8")))
        while _evaluate_list(a, Q(1)) == 0:
            a = _divide_list(a, [Q(-1), Q(1)])
        off_line = count_real_roots(a, 0, None)
    res.diagnostics["x8!=1"] = {"resultant_degree": gen.get("resultant_degree"),
                                "positive_roots": gen.get("positive_roots"),
                                "positive_roots_off_line": off_line,
                                "admissible": len(admissible)}
    return _classified(res)


def solve_su_small(which: str) -> SolveResult:
    if which not in SMALL_GROUP:
        raise ValueError(f"unknown case {which!r}")
    return _small(FlagSpec(*SMALL_GROUP[which]), GROUP)


def solve_stiefel_small(which: str) -> SolveResult:
    if which not in SMALL_STIEFEL:
        raise ValueError(f"unknown case {which!r}")
    return _small(FlagSpec(*SMALL_STIEFEL[which]), STIEFEL)


def stiefel_midpoint(m: int) -> Fraction:
    """Test point separating the two roots of the non-Jensen factor."""
    return Fraction(3, 2) if m >= 4 else Fraction(4, 3)


def stiefel_factors(m: int, n: int, result=None):
    """(A, B) for SU(2m+n)/SU(n) with u1 = u2, x7 = x8 = 1, c = 0: the x6-eliminant
    splits as A * B with A the Jensen factor (u1 = v5 = x6)."""
    spec = FlagSpec(m, m, n)
    if result is None:
        result = run_elimination(spec, STIEFEL, {"x8": 1}, {"u2": "u1"}, gauge_free=False, branch="u1=u2")
    E = _primitive_list(result.eliminants["u1=u2"].univariate_coeffs("x6"))
    jensen = _branch_eliminant(spec, STIEFEL, {"x8": 1}, {"u2": "x6", "u1": "x6", "v5": "x6"}, False)
    A = gcd_list(E, jensen)
    B = _primitive_list(_divide_list(E, A))
    return _primitive_list(A), B


def solve_stiefel_general(m: int, n: int) -> SolveResult:
    """SU(2m+n)/SU(n) with diagonal gauge, x7 = x8 = 1 and u1 = u2."""
    if m < 2 or n < 2:
        raise ValueError("m and n must be at least 2")
    spec = FlagSpec(m, m, n)
    res = run_elimination(spec, STIEFEL, {"x8": 1}, {"u2": "u1"}, gauge_free=False, branch="u1=u2")
    A, B = stiefel_factors(m, n, res)
    mid = stiefel_midpoint(m)
    res.diagnostics["u1=u2"].update({
        "A": [int(c) for c in A], "B": [int(c) for c in B],
        "B_at_0": int(_evaluate_list(B, Q(0))),
        "B_at_mid": float(_evaluate_list(B, Q(mid))), "midpoint": str(mid),
        "B_at_2": int(_evaluate_list(B, Q(2))),
        "A_roots": [float(v) for v, _ in _positive_roots(A)],
        "B_roots": [float(v) for v, _ in _positive_roots(B)],
    })
    res.factors = (A, B)
    return _classified(res)


# multistart Newton ----------------------------------------------------------------------

NEWTON_STARTS = 512
NEWTON_ITERATIONS = 200
NEWTON_HALVINGS = 40
NEWTON_TOL = 1e-15


class _Compiled:
    """Laurent polynomial in SYMBOLS evaluated on a batch of points."""

    def __init__(self, P: MultiPoly):
        self.E = np.array(list(P.terms.keys()), dtype=float).reshape(-1, len(SYMBOLS))
        self.c = np.array([float(v) for v in P.terms.values()])
        self.gi = SYMBOLS.index("g")
        self.pos = [i for i in range(len(SYMBOLS)) if i != self.gi]

    def value_and_grad(self, logx, g):
        """Value, derivative in each log-coordinate, and derivative in g."""
        base = np.exp(logx @ self.E[:, self.pos].T)
        eg = self.E[:, self.gi]
        mon = base * g[:, None] ** eg
        val = mon @ self.c
        dlog = mon @ (self.c[:, None] * self.E[:, self.pos])
        dg = (base * np.where(eg > 0, g[:, None] ** np.maximum(eg - 1, 0), 0)) @ (self.c * eg)
        return val, dlog, dg


class _NewtonSystem:
    """Residual (s * cross, r_k - lambda) in z = (log coefficients, g, lambda)."""

    def __init__(self, spec: FlagSpec, space: str):
        self.spec, self.space = spec, space
        comps, cr = symbolic_components(spec, space)
        self.present = spec.present(space == STIEFEL)
        self.names = [BLOCK_NAME[k] for k in self.present if BLOCK_NAME[k] != "x7"]
        self.cols = [SYMBOLS.index(v) for v in self.names]
        self.s = math.sqrt(spec.l * spec.m * spec.n / spec.N)
        self.cross = _Compiled(cr) if cr else None
        self.comps = [_Compiled(comps[k]) for k in self.present]
        self.size = len(self.names) + 2

    def _unpack(self, z):
        logx = np.zeros((len(z), len(SYMBOLS) - 1))
        pos = [i for i in range(len(SYMBOLS)) if SYMBOLS[i] != "g"]
        for j, col in enumerate(self.cols):
            logx[:, pos.index(col)] = z[:, j]
        return logx, z[:, -2], z[:, -1]

    def __call__(self, z, jacobian=True):
        logx, g, lam = self._unpack(z)
        S, n = len(z), self.size
        F = np.zeros((S, n))
        J = np.zeros((S, n, n))
        pos = [i for i in range(len(SYMBOLS)) if SYMBOLS[i] != "g"]
        sel = [pos.index(c) for c in self.cols]
        rows = ([(self.cross, self.s)] if self.cross else []) + [(c, 1.0) for c in self.comps]
        for r, (P, w) in enumerate(rows):
            val, dlog, dg = P.value_and_grad(logx, g)
            F[:, r] = w * val
            J[:, r, :-2] = w * dlog[:, sel]
            J[:, r, -2] = w * dg
            if P is not self.cross:
                F[:, r] -= lam
                J[:, r, -1] = -1.0
        return (F, J) if jacobian else F

    def metric(self, zrow):
        vals = {v: math.exp(zrow[j]) for j, v in enumerate(self.names)}
        vals["g"] = zrow[-2]
        return _metric_from(self.spec, self.space, vals)


def _newton_batch(system: _NewtonSystem, z):
    """Damped Newton on a batch of starts; returns final points and residual norms."""
    F, J = system(z)
    norm = np.abs(F).max(axis=1)
    active = np.isfinite(norm)
    for _ in range(NEWTON_ITERATIONS):
        active &= norm > NEWTON_TOL
        if not active.any():
            break
        idx = np.flatnonzero(active)
        Ja, Fa = J[idx], F[idx]
        try:
            step = np.linalg.solve(Ja, -Fa[..., None])[..., 0]
        except np.linalg.LinAlgError:
            step = np.einsum("sij,sj->si", np.linalg.pinv(Ja), -Fa)
        alpha = np.ones(len(idx))
        pending = np.ones(len(idx), dtype=bool)
        znew = z[idx].copy()
        for _ in range(NEWTON_HALVINGS):
            trial = z[idx[pending]] + alpha[pending, None] * step[pending]
            with np.errstate(all="ignore"):
                Ft = system(trial, jacobian=False)
            nt = np.abs(Ft).max(axis=1)
            ok = np.isfinite(nt) & (nt < norm[idx[pending]])
            where = np.flatnonzero(pending)
            znew[where[ok]] = trial[ok]
            pending[where[ok]] = False
            alpha[pending] /= 2
            if not pending.any():
                break
        stuck = idx[pending]
        active[stuck] = False
        moved = idx[~pending]
        z[moved] = znew[~pending]
        with np.errstate(all="ignore"):
            Fm, Jm = system(z[moved])
        F[moved], J[moved] = Fm, Jm
        norm[moved] = np.abs(Fm).max(axis=1)
        active &= np.isfinite(norm)
    return z, norm


def _snap_rational(system: _NewtonSystem, z, norm, max_den=1000):
    """Replace points by nearby small-denominator rational points when the
    residual does not grow.  Multiple roots (the bi-invariant metric on the
    group, for instance) stall float Newton about 1e-5 away from the root."""
    cand = z.copy()
    k = len(system.names)
    with np.errstate(all="ignore"):
        for i in np.flatnonzero(np.isfinite(norm) & (norm <= 1e-8)):
            vals = [Fraction(float(x)).limit_denominator(max_den) for x in np.exp(z[i, :k])]
            g = Fraction(float(z[i, k])).limit_denominator(max_den)
            if min(vals) <= 0:
                continue
            cand[i, :k] = np.log([float(v) for v in vals])
            cand[i, k] = float(g)
        F = system(cand, jacobian=False)
        lam_rows = F[:, 1:] if system.cross else F
        cand[:, k + 1] += lam_rows.mean(axis=1)
        cn = np.abs(system(cand, jacobian=False)).max(axis=1)
    better = np.isfinite(cn) & (cn <= np.maximum(norm, 1e-14))
    z = np.where(better[:, None], cand, z)
    return z, np.where(better, cn, norm)


def _thread_count():
    try:
        return max(1, int(os.environ.get("EINSTEIN_THREADS", "1")))
    except ValueError:
        return 1


def solve_generic_newton(spec: FlagSpec, space: str, starts: int = NEWTON_STARTS, seed: int = 0,
                         threads: int | None = None) -> SolveResult:
    """Multistart damped Newton with x7 = 1, lambda and the gauge entry free."""
    system = _NewtonSystem(spec, space)
    rng = np.random.default_rng(seed)
    k = len(system.names)
    z = np.empty((starts, system.size))
    z[:, :k] = rng.uniform(-2.0, 2.0, (starts, k))
    z[:, k] = rng.uniform(-2.0, 2.0, starts)
    z[:, k + 1] = 0.0
    with np.errstate(all="ignore"):
        F = system(z, jacobian=False)
    comps = F[:, 1:] if system.cross else F
    z[:, k + 1] = comps.mean(axis=1)
    threads = threads or _thread_count()
    chunks = np.array_split(np.arange(starts), max(1, min(threads, starts)))
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(lambda ix: (ix, *_newton_batch(system, z[ix].copy())), chunks))
    final = np.empty_like(z)
    norm = np.empty(starts)
    for ix, zz, nn in parts:
        final[ix], norm[ix] = zz, nn
    final, norm = _snap_rational(system, final, norm)
    converged = np.flatnonzero(norm <= 1e-10)
    failures = [{"start": int(i), "residual": float(norm[i])} for i in np.flatnonzero(~(norm <= 1e-10))]
    # dedup before the (costly) brute-force certification
    reps = []
    for i in converged:
        vec = np.array(normalized_vector(system.metric(final[i])))
        if not any(np.max(np.abs(vec - r)) < 1e-6 for r, _ in reps):
            reps.append((vec, i))
    candidates = []
    for _, i in reps:
        metric = system.metric(final[i])
        candidates.append(({BLOCK_NAME[k]: metric.coefficient(k) for k in system.present}
                           | {"g": final[i][-2]}, None))
    sols, rejected = finish(spec, space, candidates, "newton")
    diagnostics = {"newton": {"starts": starts, "seed": seed, "converged": int(len(converged)),
                              "distinct": len(reps), "failures": len(failures)}}
    out = SolveResult(dedup(sols), rejected, diagnostics)
    out.failures = failures
    return _classified(out)


# dispatch -------------------------------------------------------------------------------

PIPELINES = ("auto", "newton")


def solve(spec: FlagSpec, space: str, pipeline: str = "auto", seed: int = 0,
          starts: int = NEWTON_STARTS) -> SolveResult:
    """All certified Einstein metrics found for one (spec, space).

    ``auto`` uses an exact pipeline where one covers the whole case, merges a
    partial exact family with Newton where only a sub-family is exact, and
    uses Newton otherwise.
    """
    if pipeline not in PIPELINES:
        raise ValueError(f"unknown pipeline {pipeline!r}")
    if space not in (GROUP, STIEFEL):
        raise ValueError(f"unknown space {space!r}")
    newton = lambda: solve_generic_newton(spec, space, starts=starts, seed=seed)
    if pipeline == "newton":
        return newton()
    key = spec.as_tuple()
    if space == GROUP:
        for name, t in SMALL_GROUP.items():
            if key == t:
                return solve_su_small(name)
        if key[:2] == (1, 2) and spec.n >= 2:
            return solve_su_l1_m2(spec.n)
        if key[:2] == (2, 2) and spec.n >= 2:
            return _classified(_merge(solve_su_mori(spec.n), newton()))
    else:
        for name, t in SMALL_STIEFEL.items():
            if key == t:
                return solve_stiefel_small(name)
        if spec.l == spec.m >= 2 and spec.n >= 2:
            return _classified(_merge(solve_stiefel_general(spec.m, spec.n), newton()))
    return newton()
