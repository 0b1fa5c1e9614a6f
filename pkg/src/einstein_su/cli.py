"""Command-line interface: constants, ricci, solve, classify, verify, reproduce.

Exit codes: 0 success, 2 usage error, 3 failed check, 4 internal error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import re
import sys
import time
from fractions import Fraction

import numpy as np

from . import __version__
from .algebra_core import FlagSpec, GaugeParams, build_decomposition
from .classify import DEFAULT_TOL, classify
from .einstein_solver import (NEWTON_STARTS, PIPELINES, RESIDUAL_TOL, SolveResult, solve)
from .ricci import GROUP, PARAM_NAMES, SPACES, STIEFEL, MetricParams, brute_components, certify, ricci_closed
from .structure_constants import b_constants_closed, q_constants_closed

EXIT_OK, EXIT_USAGE, EXIT_CHECK, EXIT_INTERNAL = 0, 2, 3, 4
CSV_FIELDS = ("l", "m", "n", "space", *PARAM_NAMES, "a", "b", "c", "d", "lambda", "residual",
              "naturally_reductive", "nr_case", "jensen_type", "branch")


class UsageError(Exception):
    pass


# serialization --------------------------------------------------------------------------

_FLOAT = re.compile(r'"\\u0000F([^"\\]*)\\u0000"')


def _tag_floats(obj):
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return "\0F" + format(x, ".17g") + "\0" if math.isfinite(x) else None
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _tag_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_tag_floats(v) for v in obj]
    return obj


def dumps(obj) -> str:
    """JSON with every float written to 17 significant digits."""
    text = json.dumps(_tag_floats(obj), indent=2, sort_keys=False)
    return _FLOAT.sub(lambda m: m.group(1), text)


def _emit(obj, args):
    text = dumps(obj)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# argument helpers -----------------------------------------------------------------------

def _positive(value: str) -> int:
    try:
        v = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{value!r} is not an integer")
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _gauge(value: str) -> GaugeParams:
    try:
        parts = [float(x) for x in value.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError("gauge must be four numbers a,b,c,d")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("gauge must be four numbers a,b,c,d")
    try:
        return GaugeParams(*parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _metric_values(value: str) -> dict:
    out = {}
    for item in filter(None, value.split(",")):
        if "=" not in item:
            raise argparse.ArgumentTypeError(f"expected name=value, got {item!r}")
        k, v = item.split("=", 1)
        if k.strip() not in PARAM_NAMES:
            raise argparse.ArgumentTypeError(f"unknown coefficient {k!r}")
        out[k.strip()] = float(v)
    return out


def _seed(value: str) -> int:
    v = int(value)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _spec_args(p):
    p.add_argument("--space", choices=SPACES, default=GROUP)
    p.add_argument("--l", type=_positive, required=True)
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--n", type=_positive, required=True)


def _output_args(p):
    p.add_argument("--json", action="store_true", help="JSON output (the default)")
    p.add_argument("--out", help="write JSON to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="einstein-su",
                                     description="Invariant Einstein metrics on SU(N) and SU(N)/SU(n).")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", help="structure-constant tables")
    _spec_args(p)
    p.add_argument("--gauge", type=_gauge, default=GaugeParams())
    _output_args(p)

    p = sub.add_parser("ricci", help="Ricci components of one metric")
    _spec_args(p)
    p.add_argument("--metric", type=_metric_values, default={},
                   help="comma-separated name=value, e.g. u1=1,x6=0.5")
    p.add_argument("--gauge", type=_gauge, default=GaugeParams())
    _output_args(p)

    p = sub.add_parser("solve", help="find certified Einstein metrics")
    _spec_args(p)
    p.add_argument("--pipeline", choices=PIPELINES, default="auto")
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--starts", type=_positive, default=NEWTON_STARTS)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="classification tolerance")
    p.add_argument("--csv", help="also write one CSV row per solution to this path")
    _output_args(p)

    p = sub.add_parser("classify", help="classify the solutions in a solve output file")
    p.add_argument("--solution", required=True)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    _output_args(p)

    p = sub.add_parser("verify", help="re-certify the solutions in a solve output file")
    p.add_argument("path")
    p.add_argument("--tol", type=float, default=RESIDUAL_TOL, help="residual tolerance")
    _output_args(p)

    p = sub.add_parser("reproduce", help="run every reference check")
    p.add_argument("--quick", action="store_true", help="skip the slow sweeps")
    _output_args(p)
    return parser


def _spec(args) -> FlagSpec:
    try:
        spec = FlagSpec(args.l, args.m, args.n)
        build_decomposition(spec)
    except ValueError as exc:
        raise UsageError(str(exc))
    return spec


# commands -------------------------------------------------------------------------------

def cmd_constants(args):
    spec = _spec(args)
    return {"command": "constants", "l": spec.l, "m": spec.m, "n": spec.n,
            "B": b_constants_closed(spec).to_json(),
            "Q": q_constants_closed(spec, args.gauge).to_json()}, EXIT_OK


def cmd_ricci(args):
    spec = _spec(args)
    metric = MetricParams(gauge=args.gauge, space=args.space, **args.metric)
    try:
        metric.check_positive(spec)
    except ValueError as exc:
        raise UsageError(str(exc))
    closed = ricci_closed(spec, metric)
    brute, off = brute_components(build_decomposition(spec), metric)
    lam, res = certify(spec, metric)
    return {"command": "ricci", "l": spec.l, "m": spec.m, "n": spec.n, "space": args.space,
            "metric": metric.to_dict(), "closed": closed.as_dict(), "brute": brute.as_dict(),
            "off_block": off, "mean_component": lam, "einstein_residual": res,
            "einstein": res < RESIDUAL_TOL}, EXIT_OK


def solve_report(spec: FlagSpec, space: str, result: SolveResult) -> dict:
    return {"space": space, "l": spec.l, "m": spec.m, "n": spec.n,
            "solutions": [s.to_dict() for s in result],
            "rejected": result.rejected,
            "diagnostics": result.diagnostics}


def _csv_rows(report):
    for s in report["solutions"]:
        cl = s.get("classification") or {}
        row = {"l": report["l"], "m": report["m"], "n": report["n"], "space": report["space"],
               **{k: s["params"].get(k, "") for k in PARAM_NAMES},
               **dict(zip("abcd", s["gauge"])), "lambda": s["lambda"], "residual": s["residual"],
               "naturally_reductive": cl.get("naturally_reductive"), "nr_case": cl.get("nr_case"),
               "jensen_type": cl.get("jensen_type"), "branch": s.get("branch")}
        yield {k: (format(v, ".17g") if isinstance(v, float) else v) for k, v in row.items()}


def cmd_solve(args):
    spec = _spec(args)
    result = solve(spec, args.space, args.pipeline, args.seed, args.starts)
    if args.tol != DEFAULT_TOL:
        for s in result:
            s.classification = classify(s.spec, s.metric, args.tol)
    report = {"command": "solve", **solve_report(spec, args.space, result)}
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, CSV_FIELDS)
            w.writeheader()
            w.writerows(_csv_rows(report))
    return report, EXIT_OK


def _load_solutions(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(str(exc))
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: {exc}")
    try:
        spec = FlagSpec(int(data["l"]), int(data["m"]), int(data["n"]))
        space = data.get("space", GROUP)
        if space not in SPACES:
            raise ValueError(f"unknown space {space!r}")
        metrics = [MetricParams.from_dict({**s["params"], "gauge": s.get("gauge", (1, 0, 0, 1)),
                                           "space": space}) for s in data.get("solutions", [])]
        lams = [s.get("lambda") for s in data.get("solutions", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"not a solution file: {exc}")
    return spec, space, metrics, lams


def cmd_classify(args):
    spec, space, metrics, _ = _load_solutions(args.solution)
    return {"command": "classify", "l": spec.l, "m": spec.m, "n": spec.n, "space": space,
            "classifications": [classify(spec, m, args.tol).to_dict() for m in metrics]}, EXIT_OK


def cmd_verify(args):
    spec, space, metrics, lams = _load_solutions(args.path)
    checks = []
    for i, (metric, lam) in enumerate(zip(metrics, lams)):
        try:
            metric.check_positive(spec)
            lam_used, res = certify(spec, metric, lam)
            cl = classify(spec, metric).to_dict()
        except ValueError as exc:
            checks.append({"name": f"solution {i}", "expected": f"residual < {args.tol}",
                           "observed": str(exc), "pass": False})
            continue
        checks.append({"name": f"solution {i}", "expected": f"residual < {args.tol}",
                       "observed": res, "lambda": lam_used, "classification": cl,
                       "pass": bool(res < args.tol)})
    ok = all(c["pass"] for c in checks)
    return {"command": "verify", "l": spec.l, "m": spec.m, "n": spec.n, "space": space,
            "checks": checks, "pass": ok}, EXIT_OK if ok else EXIT_CHECK


# reference checks -----------------------------------------------------------------------

# published reference values
SU5_PAIRS = [((1.887796062233598, 1.815613725084982),
              (0.614275909576, 0.790016897212, 1.4193906403596, 1.9248702704348)),
             ((0.5297182359925161, 0.9617636996958176),
              (0.4184863571955, 0.325393151233, 1.3614688261843, 0.5631000275946))]
MORI_ROOT_N2 = 1.17941
MORI_COUNTS = {2: 2, 5: 2, 10: 2, 25: 2, 26: 4, 30: 4}
V3C5_NON_JENSEN = [((0.476191, 0.973092), (0.390148, 1.47889, 0.50248)),
                   ((1.965348, 1.45884), (0.499212, 1.42431, 2.06481))]
V4C6_APPROX = [(0.29693405, 1.0265896, 0.80273874, 1.4899863, 1.2876390, 0.67539547),
               (0.60542236, 0.34843563, 1.451313, 0.52095356, 0.50583947, 0.94334874),
               (0.36936036, 0.64178000, 1.5384701, 0.55223857, 0.53621683, 1.0600534),
               (1.5199830, 0.43964472, 1.1885462, 2.2060946, 1.9064963, 1.4806140)]
STIEFEL_SWEEP = ((2, 2), (2, 3), (3, 2), (4, 3), (6, 4), (8, 4))


def _check(criterion, name, expected, observed, ok):
    return {"criterion": criterion, "name": name, "expected": expected, "observed": observed,
            "pass": bool(ok)}


def _random_gauge(rng):
    while True:
        a, d = rng.uniform(0.5, 2.0, 2)
        b, c = rng.uniform(-1.0, 1.0, 2)
        if abs(a * d - b * c) > 0.2:
            return GaugeParams(a, b, c, d)


def check_structure_constants(quick=False, seed=0):
    from .structure_constants import b_constants_brute, q_constants_brute
    rng = np.random.default_rng(seed)
    specs = [FlagSpec(l, m, n) for l in range(1, 5) for m in range(l, 5) for n in range(m, 5)]
    if quick:
        specs = specs[:4]
    worst_b, worst_q, exact = 0.0, 0.0, True
    for spec in specs:
        dec = build_decomposition(spec)
        closed, brute = b_constants_closed(spec), b_constants_brute(dec)
        for key in closed.keys_all():
            c, b = closed[key], brute[key]
            worst_b = max(worst_b, abs(float(c) - b))
            exact &= Fraction(b).limit_denominator(10 ** 6) == c
        for _ in range(2 if quick else 20):
            g = _random_gauge(rng)
            qc, qb = q_constants_closed(spec, g), q_constants_brute(dec, g)
            worst_q = max(worst_q, max(abs(float(qc[k]) - qb[k]) for k in qc.keys_all()))
    return [_check(1, "B-table closed vs brute (exact rationals)", "identical", worst_b,
                   exact and worst_b < 1e-12),
            _check(1, "Q-table closed vs brute, random gauges", "< 1e-9", worst_q, worst_q < 1e-9)]


def check_ricci(quick=False, seed=0):
    rng = np.random.default_rng(seed)
    specs = [FlagSpec(l, m, n) for l in range(1, 4) for m in range(l, 4) for n in range(m, 4)]
    metrics, gauges = (3, 2) if quick else (50, 10)
    worst_rel, worst_off = 0.0, 0.0
    for spec in specs:
        dec = build_decomposition(spec)
        for space in SPACES:
            for _ in range(metrics):
                kw = {k: float(np.exp(rng.uniform(-1, 1))) for k in PARAM_NAMES}
                for _ in range(gauges):
                    metric = MetricParams(gauge=_random_gauge(rng), space=space, **kw)
                    closed = ricci_closed(spec, metric)
                    brute, off = brute_components(dec, metric)
                    scale = max(abs(v) for v in brute.r.values())
                    err = max([abs(closed.r0 - brute.r0)] +
                              [abs(closed.r[k] - brute.r[k]) for k in brute.r]) / scale
                    worst_rel, worst_off = max(worst_rel, err), max(worst_off, off)
    return [_check(2, "Ricci closed vs brute (relative)", "< 1e-8", worst_rel, worst_rel < 1e-8),
            _check(2, "Ricci off-block entries", "< 1e-10", worst_off, worst_off < 1e-10)]


def check_bi_invariant():
    worst = 0.0
    for N in range(3, 9):
        spec = FlagSpec(1, 1, N - 2)
        comps, off = brute_components(build_decomposition(spec), MetricParams())
        worst = max(worst, off, abs(comps.r0), *(abs(v - 0.25) for v in comps.r.values()))
    return [_check(3, "all-ones metric on SU(N), N=3..8: components = 1/4", "< 1e-12", worst, worst < 1e-12)]


def _match(values, target, tol):
    return max(abs(a - b) for a, b in zip(values, target)) < tol


def check_su5():
    from .einstein_solver import solve_su_l1_m2
    res = solve_su_l1_m2(2)
    non_nr = [s for s in res if not s.classification.naturally_reductive]
    rows = [_check(4, "SU(5): non-naturally-reductive count", 2, len(non_nr), len(non_nr) == 2)]
    for (pair, coeffs) in SU5_PAIRS:
        m = next((s for s in non_nr if _match((s.metric.x6, s.metric.x8), pair, 1e-6)), None)
        ok = m is not None and _match((m.metric.u2, m.metric.u3, m.metric.v4, m.metric.v5), coeffs, 1e-6) \
            and m.residual < 1e-9
        obs = None if m is None else [m.metric.x6, m.metric.x8, m.metric.u2, m.metric.u3,
                                      m.metric.v4, m.metric.v5, m.residual]
        rows.append(_check(4, f"SU(5) solution at (x6, x8) ~ {pair}", list(pair + coeffs), obs, ok))
    return rows, list(res)


def check_mori(quick=False):
    from .einstein_solver import solve_su_mori
    rows, sols = [], []
    for n, count in MORI_COUNTS.items():
        if quick and n > 5:
            continue
        res = solve_su_mori(n)
        d = res.diagnostics["mori"]
        u3_ok = all(r["u3"] is not None and r["u3"] > 0 for r in d["F_roots"])
        rows.append(_check(5, f"SU(4+{n}): positive roots of F (degree {d['F_degree']})", count,
                           d["F_positive_roots"], d["F_positive_roots"] == count and d["F_degree"] == 16 and u3_ok))
        if n == 2:
            near = min((abs(r["x6"] - MORI_ROOT_N2) for r in d["F_roots"]), default=math.inf)
            rows.append(_check(5, "SU(6): nontrivial root of F", MORI_ROOT_N2,
                               [r["x6"] for r in d["F_roots"]], near < 1e-4))
        sols += list(res)
    return rows, sols


def check_small_groups():
    from .einstein_solver import solve_su_small
    su4, su3 = solve_su_small("SU4"), solve_su_small("SU3")
    forms = sorted((s.exact_form or {}).get("v4", "?") for s in su4)
    nr = all(s.classification.naturally_reductive for s in su4)
    special = [s for s in su4 if (s.exact_form or {}).get("v4") == "73/55"]
    shape = bool(special) and all(special[0].exact_form[k] == "5/11" for k in ("x6", "u3", "v5"))
    off = su4.diagnostics["x8!=1"]["positive_roots_off_line"]
    return [_check(6, "SU(4): solution list", ["1", "73/55"], forms,
                   len(su4) == 2 and forms == ["1", "73/55"] and shape and nr),
            _check(6, "SU(4): x8 != 1 branch, positive roots off x8 = 1", 0, off, off == 0),
            _check(6, "SU(3): solution list", 1, len(su3),
                   len(su3) == 1 and su3[0].classification.nr_case == "bi-invariant")], list(su4) + list(su3)


def check_v2c4():
    from .einstein_solver import solve_stiefel_small
    res = solve_stiefel_small("V2C4")
    xs = sorted((s.exact_form or {}).get("x6", "?") for s in res)
    rel = max(abs(s.metric.v4 - (s.metric.x6 ** 2 + 1) / (2 * s.metric.x6)) for s in res)
    ok = (len(res) == 2 and xs == ["(4+sqrt(6))/4", "(4-sqrt(6))/4"] and rel < 1e-12
          and all(s.residual < 1e-10 and s.classification.jensen_type for s in res))
    v4 = sorted((s.exact_form or {}).get("v4", "?") for s in res)
    return [_check(7, "V2C4: two Jensen solutions, x6 = (4 +- sqrt 6)/4", xs, [xs, v4, rel], ok)], list(res)


def check_v3c5():
    from .einstein_solver import solve_stiefel_small
    res = solve_stiefel_small("V3C5")
    rows = [_check(8, "V3C5: solution count", 4, len(res), len(res) == 4)]
    for pair, coeffs in V3C5_NON_JENSEN:
        m = next((s for s in res if _match((s.metric.x6, s.metric.x8), pair, 1e-5)), None)
        ok = m is not None and not m.classification.jensen_type and \
            _match((m.metric.u2, m.metric.v4, m.metric.v5), coeffs, 1e-5)
        obs = None if m is None else [m.metric.x6, m.metric.x8, m.metric.u2, m.metric.v4, m.metric.v5]
        rows.append(_check(8, f"V3C5 non-Jensen at {pair}", list(pair + coeffs), obs, ok))
    jensen = sorted((s.exact_form or {}).get("x6", "?") for s in res if s.classification.jensen_type)
    rows.append(_check(8, "V3C5 Jensen x6", ["(10+sqrt(30))/10", "(10-sqrt(30))/10"], jensen,
                       jensen == ["(10+sqrt(30))/10", "(10-sqrt(30))/10"]))
    return rows, list(res)


def check_v4c6():
    from .einstein_solver import solve_stiefel_small
    res = solve_stiefel_small("V4C6")
    v4 = sorted((s.exact_form or {}).get("v4") for s in res if s.exact_form)
    rows = [_check(9, "V4C6: solution count", 8, len(res), len(res) == 8),
            _check(9, "V4C6: exact pair", ["17/18", "3/2"], v4, v4 == ["17/18", "3/2"])]
    for t in V4C6_APPROX:
        m = next((s for s in res if _match((s.metric.x6, s.metric.x8), t[4:], 1e-5)), None)
        obs = None if m is None else [m.metric.u1, m.metric.u2, m.metric.v4, m.metric.v5, m.metric.x6, m.metric.x8]
        rows.append(_check(9, f"V4C6 solution at (x6, x8) ~ {t[4:]}", list(t), obs,
                           obs is not None and _match(obs, t, 1e-5)))
    jc = sum(1 for s in res if s.classification.jensen_type)
    rows.append(_check(9, "V4C6 Jensen count", 2, jc, jc == 2))
    return rows, list(res)


def check_stiefel_general(quick=False):
    from .einstein_solver import solve_stiefel_general
    rows, sols = [], []
    for m, n in STIEFEL_SWEEP[:2] if quick else STIEFEL_SWEEP:
        res = solve_stiefel_general(m, n)
        d = res.diagnostics["u1=u2"]
        non_jensen = [s for s in res if not s.classification.jensen_type and s.residual < 1e-9]
        disc = math.sqrt(2 * m * n ** 3 - 2 * m * n + n ** 4 - n ** 2)
        roots = [(2 * m * n + n * n + sgn * disc) / (2 * m * n + n * n) for sgn in (-1, 1)]
        jensen_ok = all(any(abs(s.metric.x6 - r) < 1e-9 and s.classification.jensen_type for s in res)
                        for r in roots)
        ok = (d["B_at_0"] > 0 and d["B_at_2"] > 0 and d["B_at_mid"] < 0 and len(non_jensen) >= 2
              and jensen_ok)
        rows.append(_check(10, f"SU({2 * m + n})/SU({n}): B(0)>0, B({d['midpoint']})<0, B(2)>0, "
                               "two non-Jensen, two Jensen",
                           True, {"B(0)": d["B_at_0"], "B(mid)": d["B_at_mid"], "B(2)": d["B_at_2"],
                                  "non_jensen": len(non_jensen), "jensen_roots": roots}, ok))
        sols += list(res)
    return rows, sols


def check_newton(reference: dict, quick=False):
    from .einstein_solver import normalized_vector, solve_generic_newton
    rows = []
    for (spec, space), sols in reference.items():
        found = solve_generic_newton(spec, space, starts=200 if quick else 2000, seed=0)
        vecs = [np.array(normalized_vector(s.metric)) for s in found]
        missing = [s.metric.to_dict() for s in sols
                   if not any(np.abs(np.array(normalized_vector(s.metric)) - v).max() < 1e-6 for v in vecs)]
        rows.append(_check(11, f"Newton superset for {spec.as_tuple()} {space}", len(sols),
                           {"newton": len(found), "missing": missing}, not missing))
    return rows


def check_scaling(solutions):
    worst = 0.0
    for s in solutions:
        _, res = certify(s.spec, s.metric.scaled(2.0), s.lam / 2)
        worst = max(worst, res)
    return [_check(12, f"scaling t=2 on {len(solutions)} certified solutions", "< 1e-9", worst, worst < 1e-9)]


def run_checks(quick=False):
    rows = []
    rows += check_structure_constants(quick)
    rows += check_ricci(quick)
    rows += check_bi_invariant()
    all_solutions, reference = [], {}
    r, s = check_su5()
    rows += r
    all_solutions += s
    reference[(FlagSpec(1, 2, 2), GROUP)] = s
    r, s = check_mori(quick)
    rows += r
    all_solutions += s
    r, s = check_small_groups()
    rows += r
    all_solutions += s
    for fn, spec in ((check_v2c4, (1, 1, 2)), (check_v3c5, (1, 2, 2)), (check_v4c6, (2, 2, 2))):
        r, s = fn()
        rows += r
        all_solutions += s
        reference[(FlagSpec(*spec), STIEFEL)] = s
    r, s = check_stiefel_general(quick)
    rows += r
    all_solutions += s
    rows += check_newton(reference, quick)
    rows += check_scaling(all_solutions)
    return rows


def cmd_reproduce(args):
    start = time.time()
    checks = run_checks(quick=args.quick)
    ok = all(c["pass"] for c in checks)
    report = {"command": "reproduce", "wall_time_seconds": time.time() - start,
              "checks": checks, "pass": ok}
    return report, EXIT_OK if ok else EXIT_CHECK


COMMANDS = {"constants": cmd_constants, "ricci": cmd_ricci, "solve": cmd_solve,
            "classify": cmd_classify, "verify": cmd_verify, "reproduce": cmd_reproduce}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001 - reported as an internal error
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    _emit(report, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
