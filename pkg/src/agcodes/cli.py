"""
Command-line frontend.  JSON in, JSON out; exit codes 0 ok, 2 schema error,
3 mathematical precondition error, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources

from . import __version__, acceptance, fixtures
from .codes import (VerificationError, differential_code_plain, differential_code_rectified,
                    functional_as_strict_differential, functional_code, omega_space_basis,
                    product_code_check, strict_differential_as_functional, theta_positive_part)
from .forms import DifferentialForm
from .geom import Divisor, GeometryError, intersection_scheme, is_transversal_at
from .gf import FieldError
from .parse import ParseError
from .poly import NotRegularError
from .rectify import RectifierError, check_rectifying, construct_rectifier
from .residue import RepresentationError, ResidueContext, verify_residue_theorem
from .scenario import ScenarioError, load_scenario
from .series import NotAUnitError

OK, SCHEMA, MATH, VERIFY = 0, 2, 3, 4

_CODE = {
    "type": "object",
    "properties": {
        "field": {"type": "object", "required": ["p", "m"]},
        "n": {"type": "integer", "minimum": 0},
        "k": {"type": "integer", "minimum": 0},
        "generator_rows": {"type": "array", "items": {"type": "array", "items": {"type": "string"}}},
        "provenance": {"type": ["string", "null"]},
    },
    "required": ["field", "n", "k", "generator_rows"],
}

_RESULT_KEYS = {
    "intersect": ["points", "certified", "bezout"],
    "residue": ["points", "forms"],
    "check-rectifying": ["theta", "overall", "per_point"],
    "synth-rectifier": ["theta", "report"],
    "build-functional": ["field", "n", "k", "generator_rows"],
    "build-differential": ["construction", "code"],
    "verify-duality": ["functional", "differential", "orthogonal"],
    "verify-residue-theorem": ["forms", "holds"],
    "round-trip": [],
    "product-check": ["b_rectifying", "c_residues_multiply", "d_kronecker", "code"],
    "reproduce-example": ["report"],
    "verify-all": ["golden", "criteria", "failures", "all_passed"],
}

# published schema of every report written to standard output
REPORT_SCHEMA = {
    "type": "object",
    "properties": {
        "command": {"enum": sorted(_RESULT_KEYS)},
        "version": {"type": "string"},
        "seed": {"type": "integer"},
        "scenario": {"type": "string", "pattern": "^[0-9a-f]{16}$"},
        "ok": {"type": "boolean"},
        "result": {"type": "object"},
        "error": {
            "type": "object",
            "properties": {"type": {"type": "string"}, "message": {"type": "string"},
                           "exit_code": {"enum": [SCHEMA, MATH, VERIFY]},
                           "path": {"type": ["string", "null"]}},
            "required": ["type", "message", "exit_code"],
        },
    },
    "required": ["command", "version", "seed"],
    "oneOf": [{"required": ["result", "ok"]}, {"required": ["error"]}],
    "allOf": [
        {"if": {"properties": {"command": {"const": c}}, "required": ["result"]},
         "then": {"properties": {"result": {"required": keys}}}}
        for c, keys in sorted(_RESULT_KEYS.items())
    ] + [
        {"if": {"properties": {"command": {"const": "build-functional"}}, "required": ["result"]},
         "then": {"properties": {"result": _CODE}}},
        {"if": {"properties": {"command": {"const": "build-differential"}}, "required": ["result"]},
         "then": {"properties": {"result": {"properties": {"code": _CODE}}}}},
    ],
}


class CliFailure(Exception):
    def __init__(self, code, kind, msg, report=None):
        super().__init__(msg)
        self.code = code
        self.kind = kind
        self.report = report


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _envelope(command, seed, scenario=None):
    out = {"command": command, "version": __version__, "seed": seed}
    if scenario is not None:
        out["scenario"] = scenario.digest()
    return out


def _strs(xs):
    return [str(x) for x in xs]


def _need(sc, *keys):
    for k in keys:
        val = getattr(sc, k)
        if val is None or (isinstance(val, list) and not val):
            raise CliFailure(SCHEMA, "SchemaError", f"scenario needs {k!r} for this command")


def _intersection(sc, args):
    inter = intersection_scheme(sc.variety, sc.divisors, E_max=args.e_max or sc.E_max)
    return inter


def _certified(sc, args):
    inter = _intersection(sc, args)
    if not inter.certified:
        raise CliFailure(MATH, "NotCertified",
                         f"intersection not certified up to field degree {inter.e_searched}")
    return inter


def _theta_H(sc):
    V = sc.variety
    H = sum(sc.divisors, Divisor.zero(V)) - sc.G
    if sc.theta is not None and not sc.theta.is_constant():
        H = H - theta_positive_part(V, sc.theta)
    return H


# -- subcommands ----------------------------------------------------------------

def cmd_intersect(sc, args):
    _need(sc, "divisors")
    inter = _intersection(sc, args)
    ctx = ResidueContext(sc.variety, sc.divisors)
    pts = []
    for P, m in inter:
        pts.append({"point": str(P), "field_degree": P.e, "multiplicity": m,
                    "transversal": is_transversal_at(ctx.frame(P))})
    res = {"bezout": inter.bezout, "certified": inter.certified,
           "field_degrees_searched": inter.e_searched, "points": pts}
    return res, (OK if inter.certified else VERIFY)


def cmd_residue(sc, args):
    _need(sc, "divisors", "points")
    _certified(sc, args)
    V = sc.variety
    ctx = ResidueContext(V, sc.divisors)
    forms = omega_space_basis(V, _theta_H(sc))
    rows = [{"form": str(w), "residues": _strs(ctx.residue_vector(w, sc.points))} for w in forms]
    return {"points": _strs(sc.points), "forms": rows}, OK


def cmd_check_rectifying(sc, args):
    _need(sc, "divisors", "points", "theta")
    inter = _certified(sc, args)
    rep = check_rectifying(sc.theta, sc.divisors, sc.points, inter)
    return rep.to_json(), (OK if rep.is_rectifying else VERIFY)


def cmd_synth_rectifier(sc, args):
    _need(sc, "divisors", "points")
    inter = _certified(sc, args)
    theta, rep = construct_rectifier(sc.divisors, sc.points, inter, seed=args.seed)
    return {"theta": str(theta), "report": rep.to_json()}, OK


def cmd_build_functional(sc, args):
    _need(sc, "points")
    return functional_code(sc.points, sc.G).to_json(sc.digest()), OK


def cmd_build_differential(sc, args):
    _need(sc, "divisors", "points")
    inter = _certified(sc, args)
    if sc.theta is None:
        C = differential_code_plain(sc.divisors, sc.points, sc.G, inter)
        kind = "plain"
    else:
        C = differential_code_rectified(sc.divisors, sc.points, sc.theta, sc.G, inter)
        kind = "rectified"
    return {"construction": kind, "code": C.to_json(sc.digest())}, OK


def cmd_verify_duality(sc, args):
    _need(sc, "divisors", "points")
    inter = _certified(sc, args)
    CL = functional_code(sc.points, sc.G)
    if sc.theta is None:
        C = differential_code_plain(sc.divisors, sc.points, sc.G, inter)
    else:
        C = differential_code_rectified(sc.divisors, sc.points, sc.theta, sc.G, inter,
                                        check_dual=False)
    orth = C.is_orthogonal_to(CL)
    res = {"functional": CL.to_json(), "differential": C.to_json(),
           "orthogonal": orth, "equals_dual": C == CL.dual()}
    return res, (OK if orth else VERIFY)


def cmd_verify_residue_theorem(sc, args):
    _need(sc, "divisors")
    inter = _certified(sc, args)
    V = sc.variety
    out = []
    ok = True
    for w in omega_space_basis(V, sum(sc.divisors, Divisor.zero(V)) - sc.G):
        r = verify_residue_theorem(V, sc.divisors, w, inter)
        ok = ok and not r["total"]
        out.append({"form": str(w), "per_point": r["per_point"], "total": str(r["total"])})
    return {"forms": out, "holds": ok}, (OK if ok else VERIFY)


def cmd_round_trip(sc, args):
    _need(sc, "points")
    res = {}
    ok = True
    if sc.theta is not None:
        _need(sc, "divisors")
        inter = _certified(sc, args)
        r = strict_differential_as_functional(sc.divisors, sc.points, sc.theta, sc.G, inter)
        res["strict_differential_as_functional"] = {
            "eta": str(r["eta"]), "G_prime": str(r["G_prime"]),
            "code": r["functional"].to_json(), "equal": r["equal"]}
        ok = ok and r["equal"]
    r = functional_as_strict_differential(sc.points, sc.G, seed=args.seed)
    res["functional_as_strict_differential"] = {
        "divisors": _strs(r["divisors"]), "theta": str(r["theta"]), "eta": str(r["eta"]),
        "code": r["functional"].to_json(), "equal": r["equal"]}
    ok = ok and r["equal"]
    return res, (OK if ok else VERIFY)


def _factor(sc):
    _need(sc, "divisors", "points")
    return {"divisors": sc.divisors, "points": sc.points, "theta": sc.theta, "G": sc.G}


def cmd_product_check(scs, args):
    if len(scs) != 2:
        raise CliFailure(SCHEMA, "SchemaError", "product-check needs exactly two --scenario files")
    r = product_code_check(_factor(scs[0]), _factor(scs[1]))
    res = {"mu": str(r["mu"]), "b_rectifying": r["b"], "c_residues_multiply": r["c"],
           "d_kronecker": r["d"], "verdict": r["report"].overall,
           "code": r["code_product"].to_json()}
    ok = r["b"] and r["c"] and r["d"]
    return res, (OK if ok else VERIFY)


# -- examples -----------------------------------------------------------------------

def _forms(ex):
    V = ex.variety
    return [DifferentialForm(V, V.standard_chart(), w) for w in ex.omega_coeffs]


def example_report(name, q=4, m=(1, 1)):
    """Deterministic report for one of the worked examples."""
    if name == "3.1":
        ex = fixtures.example_3_1()
        inter = intersection_scheme(ex.variety, ex.divisors)
        ctx = ResidueContext(ex.variety, ex.divisors)
        CL = functional_code(ex.points, ex.G)
        return {
            "example": "3.1",
            "points": _strs(ex.points),
            "residues": [_strs(ctx.residue_vector(w, ex.points)) for w in _forms(ex)],
            "functional_code": CL.to_json(),
            "plain_differential_code": differential_code_plain(
                ex.divisors, ex.points, ex.G, inter).to_json(),
            "rectified_code_P0": differential_code_rectified(
                ex.divisors, ex.P0, ex.theta_strict, ex.G, inter).to_json(),
            "theta_strict": str(ex.theta_strict),
        }
    if name == "3.2":
        ex = fixtures.example_3_2()
        inter = intersection_scheme(ex.variety, ex.divisors)
        ctx = ResidueContext(ex.variety, ex.divisors)
        CL = functional_code(ex.points, ex.G)
        r1 = check_rectifying(ex.theta_1, ex.divisors, ex.points, inter)
        r2 = check_rectifying(ex.theta_strict, ex.divisors, ex.points, inter)
        C1 = differential_code_rectified(ex.divisors, ex.points, ex.theta_1, ex.G, inter, r1)
        C2 = differential_code_rectified(ex.divisors, ex.points, ex.theta_strict, ex.G, inter, r2)
        return {
            "example": "3.2",
            "points": _strs(ex.points),
            "multiplicities": [inter.multiplicity(P) for P in ex.points],
            "residues": [_strs(ctx.residue_vector(w, ex.points)) for w in _forms(ex)],
            "functional_code": CL.to_json(),
            "theta_1": {"theta": str(ex.theta_1), "verdict": r1.overall, "code": C1.to_json()},
            "theta_strict": {"theta": str(ex.theta_strict), "verdict": r2.overall,
                             "code": C2.to_json()},
            "sum_equals_dual": C1 + C2 == CL.dual(),
        }
    if name == "5.3":
        tr = fixtures.tensor_rs(q, tuple(m))
        F = tr.field
        RS = [acceptance.reed_solomon(F, k + 1) for k in tr.m]
        full = acceptance.LinearCode.full(F, tr.q)
        CL = functional_code(tr.points, tr.G)
        codes = {i: differential_code_rectified(D, tr.points, None, tr.G)
                 for i, D in tr.families.items()}
        RSd = [acceptance.reed_solomon(F, tr.q - k - 1) for k in tr.m]
        return {
            "example": "5.3", "q": q, "m": list(tr.m),
            "functional_equals_tensor_RS": CL == RS[0].kronecker(RS[1]),
            "functional_code": CL.to_json(),
            "differential_codes": {
                str(i): {"code": C.to_json(),
                         "equals_RS_x_full": C == RSd[0].kronecker(full),
                         "equals_full_x_RS": C == full.kronecker(RSd[1])}
                for i, C in codes.items()},
            "sum_equals_dual": codes[1] + codes[2] == CL.dual(),
            "wilson_linear_parts": acceptance.wilson_check(tr),
        }
    raise CliFailure(SCHEMA, "UnknownExample", f"unknown example {name!r}")


def golden_name(name, q=4, m=(1, 1)):
    if name == "5.3":
        return f"example_5_3_q{q}_m{'-'.join(map(str, m))}.json"
    return f"example_{name.replace('.', '_')}.json"


def golden_dir():
    return str(resources.files("agcodes") / "golden")


def _check_example(name, q, m, report):
    """Expected verdicts for the worked examples (5.3 as stated in the acceptance criteria)."""
    if name == "5.3":
        d = report["differential_codes"]
        return (report["functional_equals_tensor_RS"] and report["sum_equals_dual"]
                and report["wilson_linear_parts"]
                and d["1"]["equals_full_x_RS"] and d["2"]["equals_RS_x_full"])
    if name == "3.2":
        return report["sum_equals_dual"]
    return True


def cmd_reproduce_example(args):
    m = tuple(int(x) for x in args.m.split(","))
    report = example_report(args.example, args.q, m)
    text = _dump(report)
    path = os.path.join(golden_dir(), golden_name(args.example, args.q, m))
    res = {"report": report}
    code = OK
    if os.path.exists(path):
        with open(path) as fh:
            same = fh.read() == text
        res["golden"] = {"file": os.path.basename(path), "matches": same}
        if not same:
            code = VERIFY
    if not _check_example(args.example, args.q, m, report):
        code = VERIFY
    return res, code


def _golden_params(fname):
    base = fname[:-5]
    if base.startswith("example_5_3"):
        _, _, _, qs, ms = base.split("_")
        return "5.3", int(qs[1:]), tuple(int(x) for x in ms[1:].split("-"))
    return base[len("example_"):].replace("_", "."), 4, (1, 1)


def cmd_verify_all(args):
    d = args.fixtures or golden_dir()
    files = sorted(f for f in os.listdir(d) if f.startswith("example_") and f.endswith(".json")) \
        if os.path.isdir(d) else []
    if not files:
        raise CliFailure(SCHEMA, "NothingToVerify", f"nothing to verify in {d}")
    golden = []
    for f in files:
        name, q, m = _golden_params(f)
        try:
            text = _dump(example_report(name, q, m))
        except CliFailure:
            golden.append({"file": f, "passed": False})
            continue
        with open(os.path.join(d, f)) as fh:
            golden.append({"file": f, "passed": fh.read() == text})
    crit = acceptance.run_all(seed=args.seed, quick=args.quick)
    ok = all(g["passed"] for g in golden) and all(c["passed"] for c in crit)
    failures = [g["file"] for g in golden if not g["passed"]] + \
        [f"criterion {c['id']}" for c in crit if not c["passed"]]
    return {"golden": golden, "criteria": crit, "failures": failures, "all_passed": ok}, \
        (OK if ok else VERIFY)


# -- driver -------------------------------------------------------------------------

SCENARIO_COMMANDS = {
    "intersect": cmd_intersect,
    "residue": cmd_residue,
    "check-rectifying": cmd_check_rectifying,
    "synth-rectifier": cmd_synth_rectifier,
    "build-functional": cmd_build_functional,
    "build-differential": cmd_build_differential,
    "verify-duality": cmd_verify_duality,
    "verify-residue-theorem": cmd_verify_residue_theorem,
    "round-trip": cmd_round_trip,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--e-max", type=int, default=None)
    common.add_argument("--a-max", type=int, default=None)
    common.add_argument("--pretty", action="store_true")
    common.add_argument("--output", default=None)
    p = argparse.ArgumentParser(prog="agcodes", description=__doc__.strip().splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    for name in SCENARIO_COMMANDS:
        s = sub.add_parser(name, parents=[common])
        s.add_argument("--scenario", required=True)
    s = sub.add_parser("product-check", parents=[common])
    s.add_argument("--scenario", action="append", required=True)
    s = sub.add_parser("reproduce-example", parents=[common])
    s.add_argument("example", choices=["3.1", "3.2", "5.3"])
    s.add_argument("--q", type=int, default=4)
    s.add_argument("--m", default="1,1")
    s = sub.add_parser("verify-all", parents=[common])
    s.add_argument("fixtures", nargs="?", default=None)
    s.add_argument("--quick", action="store_true", help="5 random trials instead of 50/100")
    return p


def _pretty(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        if all(not isinstance(x, (dict, list)) for x in obj):
            lines.append(pad + "(" + ", ".join(str(x) for x in obj) + ")")
        else:
            for x in obj:
                lines.extend(_pretty(x, indent + 1) if isinstance(x, dict) else _pretty(x, indent))
                if isinstance(x, dict):
                    lines.append("")
    else:
        lines.append(pad + str(obj))
    return lines


def _emit(out, args):
    text = "\n".join(_pretty(out)) + "\n" if args.pretty else _dump(out)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None):
    args = build_parser().parse_args(argv)
    explicit = args.seed is not None
    if not explicit:
        args.seed = 0
    env = _envelope(args.command, args.seed)
    try:
        if args.command in SCENARIO_COMMANDS:
            sc = load_scenario(args.scenario)
            if not explicit:
                args.seed = sc.seed
            env = _envelope(args.command, args.seed, sc)
            res, code = SCENARIO_COMMANDS[args.command](sc, args)
        elif args.command == "product-check":
            scs = [load_scenario(s) for s in args.scenario]
            res, code = cmd_product_check(scs, args)
        elif args.command == "reproduce-example":
            res, code = cmd_reproduce_example(args)
        else:
            res, code = cmd_verify_all(args)
        env["result"] = res
        env["ok"] = code == OK
    except CliFailure as exc:
        code = exc.code
        env["error"] = {"type": exc.kind, "message": str(exc), "exit_code": code}
    except ScenarioError as exc:
        code = SCHEMA
        env["error"] = {"type": "SchemaError", "message": str(exc), "path": exc.path,
                        "exit_code": code}
    except (ParseError, FieldError) as exc:
        code = SCHEMA
        env["error"] = {"type": type(exc).__name__, "message": str(exc), "exit_code": code}
    except VerificationError as exc:
        code = VERIFY
        env["error"] = {"type": "VerificationError", "message": str(exc), "exit_code": code}
    except (GeometryError, RectifierError, RepresentationError, NotRegularError,
            NotAUnitError) as exc:
        code = MATH
        env["error"] = {"type": type(exc).__name__, "message": str(exc), "exit_code": code}
    _emit(env, args)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
