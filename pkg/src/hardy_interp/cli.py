"""Command-line front end.

A problem file is JSON: {"version": 1, "command": ..., "payload": {...},
"tolerances": {...}}. It is schema-checked (unknown fields are rejected)
and dispatched to one pipeline. The result bundle is written as
``bundle.json`` (plus ``timings.json`` and the requested CSV series) under
``--out``, or printed to stdout.

Exit codes: 0 success, 1 input error, 2 infeasible or uncertified,
3 numerical failure.
"""
import argparse
import csv
import io
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field

import jsonschema
import numpy as np

from . import __version__, kernels
from .boundary_calculus import (
    DEFAULT_GRID,
    KAPPA,
    BoundaryFunction,
    WeightProfile,
    a_h,
    hl_pairing_check,
    max_grid,
    rearrange_decreasing,
)
from .disk_geometry import PointSequence, separation_delta
from .errors import ContractError, DomainError, GridMismatchError, HardyError, InfeasibleError
from .hardy_functions import (
    CERTIFIED,
    HAS_INNER,
    TOL_OUTER,
    UNCERTIFIED,
    function_from_dict,
    outer_deficit,
    outer_from_log_modulus,
)
from .interpolation import (
    SANDWICH_TOL,
    TargetSequence,
    exact_decay_interpolate,
    gap_power_interpolate,
    growth_interpolate,
    outer_interpolate_bounded_below,
    pick_matrix,
    schur_interpolate,
)
from .model_space import (
    CoefficientSequence,
    fourier_decay_fit,
    membership_tests,
    range_description_check,
    sufficient_class_check,
    toeplitz_apply,
)
from .obstructions import (
    TOL_DECAY,
    classify_decay,
    inner_liminf_check,
    mtone_envelope,
    radial_outer_decay_check,
    zero_free_envelope_check,
)
from .quadrature import DEFAULT_ORDER, DEFAULT_PANELS, DEFAULT_RATIO

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INFEASIBLE = 2
EXIT_NUMERIC = 3

COMMANDS = ("sequence", "pick", "construct", "diagnose", "modelspace", "rearrange")
SERIES = ("radial_decay", "a_h_sandwich", "fourier_decay", "growth_ratios", "mtone_margins", "rearrangement")
TOLERANCES = {"decay": TOL_DECAY, "outer": TOL_OUTER, "sandwich": SANDWICH_TOL}

# ---------------------------------------------------------------------------
# schema

_NUM = {"type": "number"}
_COMPLEX = {"oneOf": [_NUM, {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2}]}
_COMPLEX_LIST = {"type": "array", "items": _COMPLEX, "minItems": 1}
_POINTS = {
    "oneOf": [
        {"type": "object", "additionalProperties": False, "required": ["family", "ratio", "count"],
         "properties": {"family": {"const": "exponential"}, "ratio": _NUM,
                        "count": {"type": "integer", "minimum": 1}, "start": {"type": "integer", "minimum": 0}}},
        _COMPLEX_LIST,
    ]
}
_PROFILE = {
    "oneOf": [
        {"type": "object", "additionalProperties": False, "required": ["kind", "alpha"],
         "properties": {"kind": {"const": "power"}, "alpha": _NUM}},
        {"type": "object", "additionalProperties": False, "required": ["kind"],
         "properties": {"kind": {"const": "log_power"}, "C": _NUM, "p": _NUM}},
        {"type": "object", "additionalProperties": False, "required": ["kind", "edges", "values"],
         "properties": {"kind": {"const": "sampled"}, "edges": {"type": "array", "items": _NUM},
                        "values": {"type": "array", "items": _NUM}}},
    ]
}
_TARGET_GEN = {
    "type": "object", "additionalProperties": False, "required": ["kind"],
    "properties": {
        "kind": {"enum": ["exp_neg_c_over_gap", "exp_neg_c_over_gap_sq", "gap_power", "profile_decay", "bounded"]},
        "c": _NUM, "d": {"oneOf": [_NUM, {"type": "array", "items": _NUM}]}, "profile": _PROFILE,
        "m": _NUM, "M": _NUM, "seed": {"type": "integer"}, "scale": _COMPLEX,
    },
}
_TARGETS = {
    "type": "object", "additionalProperties": False,
    "oneOf": [{"required": ["generator"]}, {"required": ["values"]}],
    "properties": {"generator": _TARGET_GEN, "values": _COMPLEX_LIST},
}
_COEFF_GEN = {
    "type": "object", "additionalProperties": False, "required": ["kind"],
    "properties": {"kind": {"enum": ["exp_neg_c_over_gap", "power_decay", "finite_support"]},
                   "c": _NUM, "p": _NUM, "values": _COMPLEX_LIST, "count": {"type": "integer"},
                   "scale": _COMPLEX},
}
_COEFFS = {
    "type": "object", "additionalProperties": False,
    "oneOf": [{"required": ["generator"]}, {"required": ["values"]}],
    "properties": {"generator": _COEFF_GEN, "values": _COMPLEX_LIST},
}
_FUNCTION = {"type": "object", "required": ["type"],
             "properties": {"type": {"enum": ["constant", "inner", "outer", "closed_form", "schur",
                                              "affine", "power", "power_fn", "product"]}}}
_REAL_LIST = {"type": "array", "items": _NUM, "minItems": 1}


def _payload(props, required=()):
    return {"type": "object", "additionalProperties": False, "required": list(required), "properties": props}


PAYLOADS = {
    "sequence": _payload({"points": _POINTS}, ["points"]),
    "pick": _payload({"points": _POINTS, "targets": _TARGETS, "solve": {"type": "boolean"}},
                     ["points", "targets"]),
    "construct": _payload({
        "method": {"enum": ["bounded_below", "positive_real_part", "growth", "exact_decay", "gap_power",
                            "outer_from_profile"]},
        "points": _POINTS, "targets": _TARGETS, "profile": _PROFILE,
        "d": {"oneOf": [_NUM, _REAL_LIST]},
    }, ["method"]),
    "diagnose": _payload({
        "points": _POINTS, "targets": _TARGETS, "function": _FUNCTION, "profile": _PROFILE,
        "radii": _REAL_LIST, "theta": _NUM, "J": {"type": "integer", "minimum": 5},
    }),
    "modelspace": _payload({
        "points": _POINTS, "coeffs": _COEFFS, "profiles": {"type": "array", "items": _PROFILE},
        "test_functions": {"type": "array", "items": _FUNCTION}, "phi": _FUNCTION,
        "c": {"type": "number", "exclusiveMinimum": 0},
    }, ["points", "coeffs"]),
    "rearrange": _payload({"values": _REAL_LIST, "pair": _REAL_LIST}, ["values"]),
}

PROBLEM_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["version", "command", "payload"],
    "properties": {
        "version": {"const": 1},
        "command": {"enum": list(COMMANDS)},
        "payload": {"type": "object"},
        "tolerances": {"type": "object", "additionalProperties": False,
                       "properties": {k: {"type": "number", "exclusiveMinimum": 0} for k in TOLERANCES}},
    },
    "allOf": [
        {"if": {"properties": {"command": {"const": c}}}, "then": {"properties": {"payload": PAYLOADS[c]}}}
        for c in COMMANDS
    ],
}


class InputError(Exception):
    pass


def validate_problem(problem):
    try:
        jsonschema.validate(problem, PROBLEM_SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise InputError(f"schema violation at {path}: {exc.message}") from None


# ---------------------------------------------------------------------------
# bundle


@dataclass
class ResultBundle:
    inputs_echo: dict
    outputs: dict = field(default_factory=dict)
    certificates: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    tool_version: str = __version__
    grid_parameters: dict = field(default_factory=dict)
    series: dict = field(default_factory=dict)
    exit_code: int = EXIT_OK

    def to_dict(self, timings=False):
        out = {
            "tool_version": self.tool_version,
            "exit_code": self.exit_code,
            "inputs_echo": self.inputs_echo,
            "grid_parameters": self.grid_parameters,
            "outputs": self.outputs,
            "certificates": self.certificates,
            "series": sorted(self.series),
        }
        if timings:
            out["timings"] = self.timings
        return jsonable(out)

    def to_json(self, timings=False):
        return json.dumps(self.to_dict(timings), indent=2, allow_nan=False) + "\n"


def jsonable(obj):
    """Plain JSON types; non-finite floats become the strings "inf", "-inf", "nan"."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isfinite(x):
            return x
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    if isinstance(obj, (complex, np.complexfloating)):
        return [jsonable(obj.real), jsonable(obj.imag)]
    return obj


def _fmt(x):
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def emit_plot_data(bundle: ResultBundle, series: str) -> str:
    """CSV text of a named series: header row, rows in stored order, repr floats."""
    if series not in bundle.series:
        raise InputError(f"series {series!r} not in bundle (available: {', '.join(sorted(bundle.series)) or 'none'})")
    header, rows = bundle.series[series]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# payload parsing


def _complex(v):
    return complex(v[0], v[1]) if isinstance(v, list) else complex(v)


def _points(d):
    if isinstance(d, dict):
        return PointSequence.exponential(d["ratio"], d["count"], d.get("start", 1))
    return PointSequence(np.array([_complex(v) for v in d]))


def _targets(d, points):
    if "generator" in d:
        return TargetSequence.from_generator(points, d["generator"])
    return TargetSequence.explicit([_complex(v) for v in d["values"]])


def _coeffs(d, points):
    if "generator" in d:
        gen = dict(d["generator"])
        if "values" in gen:
            gen["values"] = [_complex(v) for v in gen["values"]]
        return CoefficientSequence.from_generator(points, gen)
    return CoefficientSequence.explicit([_complex(v) for v in d["values"]])


def _function(d):
    try:
        return function_from_dict(d)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed function description: {exc}") from None


def _need(payload, *keys):
    for k in keys:
        if k not in payload:
            raise InputError(f"payload needs {k!r} for this request")


# ---------------------------------------------------------------------------
# commands


def _cmd_sequence(p, ctx, b):
    rep = separation_delta(_points(p["points"]))
    b.outputs["separation"] = rep.to_dict()


def _cmd_pick(p, ctx, b):
    seq = _points(p["points"])
    tg = _targets(p["targets"], seq)
    pick = pick_matrix(seq, tg)
    b.outputs["pick"] = pick.to_dict()
    if not pick.psd:
        b.outputs["infeasible"] = f"Pick matrix has eigenvalue {pick.min_eigenvalue:.3e} < 0"
        b.exit_code = EXIT_INFEASIBLE
        return
    if p.get("solve", True):
        f, cert = schur_interpolate(seq, tg)
        b.outputs["function"] = f.to_dict()
        b.certificates["interpolation"] = cert.to_dict()


def _radial_series(b, series):
    b.series["radial_decay"] = (["j", "r", "value"], series.rows())


def _growth_series(b, seq, report):
    b.series["growth_ratios"] = (["n", "gap", "ratio", "lower", "upper"],
                                 [(i + 1, g, r, report.lower, report.upper)
                                  for i, (g, r) in enumerate(zip(seq.gaps, report.ratios))])


def _envelope(b, seq, psi, tg):
    env = mtone_envelope(seq, tg, psi)
    b.outputs["mtone_envelope"] = env.to_dict()
    b.series["mtone_margins"] = (["n", "gap", "margin"],
                                 [(i + 1, g, m) for i, (g, m) in enumerate(zip(seq.gaps, env.margins))])
    return env


def _cmd_construct(p, ctx, b):
    method = p["method"]
    tol = ctx["tolerances"]
    if method == "outer_from_profile":
        _need(p, "profile")
        h = WeightProfile.from_dict(p["profile"])
        f = outer_from_log_modulus(BoundaryFunction.from_profile(h, sign=-1.0, M=ctx["grid"]))
        rep = outer_deficit(f, tol["outer"])
        b.outputs["function"] = f.to_dict()
        b.certificates["outer_deficit"] = rep.to_dict()
        series = radial_outer_decay_check(f, tol=tol["decay"])
        b.outputs["radial_decay"] = series.to_dict()
        _radial_series(b, series)
        status = f.status if rep.certified_outer else UNCERTIFIED
    else:
        _need(p, "points")
        seq = _points(p["points"])
        if method in ("bounded_below", "positive_real_part"):
            _need(p, "targets")
            tg = _targets(p["targets"], seq)
            f, cert = outer_interpolate_bounded_below(seq, tg, positive_real_part=(method == "positive_real_part"))
        elif method == "growth":
            _need(p, "profile")
            h = WeightProfile.from_dict(p["profile"])
            tg = _targets(p["targets"], seq) if "targets" in p else None
            f, report, cert = growth_interpolate(seq, h, tg, tol=tol["sandwich"])
            b.outputs["growth"] = report.to_dict()
            _growth_series(b, seq, report)
            node_targets = tg if tg is not None else TargetSequence.explicit(np.asarray(f.eval(seq.points)))
            env = _envelope(b, seq, f, node_targets)
            b.certificates["mtone_margins_nonnegative"] = bool(env.min_margin >= -1e-8)
        elif method == "exact_decay":
            _need(p, "profile")
            h = WeightProfile.from_dict(p["profile"])
            tg = _targets(p["targets"], seq) if "targets" in p else None
            f, cert = exact_decay_interpolate(seq, h, tg, tol=tol["sandwich"])
        else:
            _need(p, "d")
            f, cert = gap_power_interpolate(seq, p["d"])
        b.outputs["function"] = f.to_dict()
        b.certificates["interpolation"] = cert.to_dict()
        status = cert.outer_status
    b.certificates["status"] = status
    if status in (UNCERTIFIED, HAS_INNER):
        b.exit_code = EXIT_INFEASIBLE


def _cmd_diagnose(p, ctx, b):
    tol = ctx["tolerances"]
    seq = _points(p["points"]) if "points" in p else PointSequence.exponential(0.5, 12)
    if "targets" in p:
        tg = _targets(p["targets"], seq)
        b.outputs["decay"] = classify_decay(seq, tg).to_dict()
    if "function" in p:
        f = _function(p["function"])
        theta = float(p.get("theta", 0.0))
        J = p.get("J")
        b.outputs["outer_deficit"] = outer_deficit(f, tol["outer"]).to_dict()
        series = radial_outer_decay_check(f, theta, J, tol["decay"])
        b.outputs["radial_decay"] = series.to_dict()
        _radial_series(b, series)
        spec = f.inner
        if not spec.blaschke_zeros and f.zero_free:
            b.outputs["zero_free_envelope"] = zero_free_envelope_check(f, theta, J, tol["decay"]).to_dict()
        if not spec.is_trivial:
            b.outputs["inner_liminf"] = inner_liminf_check(seq, f).to_dict()
    if "profile" in p:
        h = WeightProfile.from_dict(p["profile"])
        radii = p.get("radii", [0.9, 0.99, 0.999])
        rows = []
        res = []
        for r in radii:
            a = a_h(r, h)
            res.append(a.to_dict())
            rows.append((a.r, a.lower, a.value, a.upper))
        b.outputs["a_h"] = res
        b.series["a_h_sandwich"] = (["r", "lower", "value", "upper"], rows)
    if not b.outputs:
        raise InputError("diagnose needs at least one of targets, function, profile")


def _cmd_modelspace(p, ctx, b):
    seq = _points(p["points"])
    cs = _coeffs(p["coeffs"], seq)
    profiles = [WeightProfile.from_dict(h) for h in p.get("profiles", [])]
    tests = [_function(f) for f in p.get("test_functions", [])]
    verdict = membership_tests(seq, cs, profiles, tests)
    b.outputs["membership"] = verdict.to_dict()
    fit = verdict.per_test["iv"]
    b.series["fourier_decay"] = (["N", "abs_fhat", "fit"], fit.rows())
    if "c" in p:
        b.outputs["sufficient_class"] = sufficient_class_check(seq, cs, p["c"]).to_dict()
    if "phi" in p:
        phi = _function(p["phi"])
        b.outputs["toeplitz"] = toeplitz_apply(phi, cs, seq).to_dict()
        b.outputs["range"] = range_description_check(phi, seq, cs).to_dict()


def _cmd_rearrange(p, ctx, b):
    f = BoundaryFunction.from_values(np.asarray(p["values"], dtype=float))
    res = rearrange_decreasing(f)
    b.outputs["star_samples"] = res.star_samples
    b.outputs["permutation"] = res.permutation
    b.series["rearrangement"] = (["theta", "value", "star"],
                                 list(zip(f.theta, f.samples, res.star_samples)))
    if "pair" in p:
        g = BoundaryFunction.from_values(np.asarray(p["pair"], dtype=float))
        b.outputs["hardy_littlewood"] = hl_pairing_check(f, g).to_dict()


_DISPATCH = {
    "sequence": _cmd_sequence,
    "pick": _cmd_pick,
    "construct": _cmd_construct,
    "diagnose": _cmd_diagnose,
    "modelspace": _cmd_modelspace,
    "rearrange": _cmd_rearrange,
}


def _grid_parameters(grid):
    return {"default_grid": grid, "max_grid": max_grid(), "kappa": KAPPA,
            "graded_panels": DEFAULT_PANELS, "graded_ratio": DEFAULT_RATIO, "graded_order": DEFAULT_ORDER,
            "kernel_backend": kernels.BACKEND}


def run(problem, tol_override=None, grid=None) -> ResultBundle:
    """Validate and dispatch a problem; errors propagate to the caller."""
    validate_problem(problem)
    tolerances = dict(TOLERANCES)
    tolerances.update(problem.get("tolerances", {}))
    tolerances.update(tol_override or {})
    grid = DEFAULT_GRID if grid is None else int(grid)
    if grid < 64 or grid & (grid - 1) or grid > max_grid():
        raise InputError(f"--grid must be a power of two in [64, {max_grid()}]")
    b = ResultBundle(inputs_echo=problem, grid_parameters=_grid_parameters(grid))
    b.grid_parameters["tolerances"] = tolerances
    t0 = time.perf_counter()
    _DISPATCH[problem["command"]](problem["payload"], {"tolerances": tolerances, "grid": grid}, b)
    b.timings["total_seconds"] = time.perf_counter() - t0
    return b


def _parse_overrides(items):
    out = {}
    for item in items or []:
        key, sep, val = item.partition("=")
        if not sep or key not in TOLERANCES:
            raise InputError(f"--tol-override expects k=v with k in {sorted(TOLERANCES)}; got {item!r}")
        try:
            out[key] = float(val)
        except ValueError:
            raise InputError(f"tolerance {key} is not a number: {val!r}") from None
        if not out[key] > 0:
            raise InputError(f"tolerance {key} must be positive")
    return out


def _classify(exc):
    if isinstance(exc, InfeasibleError):
        return EXIT_INFEASIBLE
    if isinstance(exc, (InputError, DomainError, ContractError, GridMismatchError)):
        return EXIT_INPUT
    return EXIT_NUMERIC


def build_parser():
    ap = argparse.ArgumentParser(prog="hardy-interp", description=__doc__.split("\n\n")[0])
    ap.add_argument("--input", required=True, help="problem file (JSON), or - for stdin")
    ap.add_argument("--out", help="output directory; stdout when omitted")
    ap.add_argument("--emit", action="append", default=[], metavar="SERIES",
                    help=f"CSV series to write ({', '.join(SERIES)}); repeatable")
    ap.add_argument("--tol-override", action="append", default=[], metavar="K=V",
                    help=f"override a tolerance ({', '.join(sorted(TOLERANCES))})")
    ap.add_argument("--grid", type=int, help="boundary grid size M for sampled data")
    ap.add_argument("--version", action="version", version=__version__)
    return ap


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        raw = sys.stdin.read() if args.input == "-" else open(args.input, encoding="utf-8").read()
        problem = json.loads(raw)
        overrides = _parse_overrides(args.tol_override)
        for name in args.emit:
            if name not in SERIES:
                raise InputError(f"unknown series {name!r}")
    except (OSError, ValueError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        bundle = run(problem, overrides, args.grid)
        csvs = {name: emit_plot_data(bundle, name) for name in args.emit}
    except InfeasibleError as exc:
        bundle = ResultBundle(inputs_echo=problem, exit_code=EXIT_INFEASIBLE)
        bundle.outputs["infeasible"] = str(exc)
        bundle.outputs["attempts"] = [getattr(a, "to_dict", lambda a=a: a)() for a in exc.attempts]
        csvs = {}
    except (InputError, HardyError, FloatingPointError, np.linalg.LinAlgError) as exc:
        code = _classify(exc)
        print(f"error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return code
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        _write(os.path.join(args.out, "bundle.json"), bundle.to_json())
        _write(os.path.join(args.out, "timings.json"), json.dumps(jsonable(bundle.timings), indent=2) + "\n")
        for name, text in csvs.items():
            _write(os.path.join(args.out, f"{name}.csv"), text)
    elif csvs:
        sys.stdout.write("".join(csvs[name] for name in args.emit))
    else:
        sys.stdout.write(bundle.to_json())
    return bundle.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
