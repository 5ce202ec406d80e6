"""Command-line front end: ``maass-poincare {kloosterman,coeff,eval,continue,verify}``.

Output is a JSON record ``{schema_version, command, params, results, errors}``
or a CSV table of the results.  Exit codes: 0 on success (and, for
``verify``, every check passing), 1 when a verification fails, 2 for usage
errors and numerical errors (overflow, pole proximity, ...).
"""

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import asdict, dataclass, field

from . import coeffs, continuation, forms, verify
from .arith import kloosterman
from .coeffs import FormParams, Truncation
from .errors import MaassPoincareError
from .forms import HalfPlanePoint

SCHEMA_VERSION = 1
OUTPUT_DIR_ENV = "MAASS_POINCARE_OUTPUT_DIR"
COMMANDS = ("kloosterman", "coeff", "eval", "continue", "verify")


@dataclass
class RunConfig:
    command: str
    form: FormParams | None = None
    trunc: Truncation = field(default_factory=Truncation)
    points: list = field(default_factory=list)
    output_format: str = "json"
    output_path: str | None = None
    suite: list = field(default_factory=list)
    kind: str = "maass"
    n_values: list = field(default_factory=list)
    c_values: list = field(default_factory=list)
    tol: float | None = None


def _int_range(text):
    """``"5"``, ``"0..8"`` or ``"1,2,7"`` to a list of ints."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed integer range {text!r}") from None


def _point(text):
    try:
        u, v = (float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed complex literal {text!r}; expected 'u,v'") from None
    try:
        return HalfPlanePoint(u, v)
    except MaassPoincareError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _build_parser():
    parser = argparse.ArgumentParser(prog="maass-poincare", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, form=True):
        if form:
            p.add_argument("--k", type=int, required=True, help="weight")
            p.add_argument("--m", type=int, required=True, help="index")
            p.add_argument("--level", type=int, default=1)
        p.add_argument("--cmax", type=int, default=None)
        p.add_argument("--nmax", type=int, default=None)
        p.add_argument("--nodes", type=int, default=None, help="contour nodes")
        p.add_argument("--radius-factor", type=float, default=None)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--output", default=None, help="output file (default stdout)")

    p = sub.add_parser("kloosterman", help="table of Kloosterman sums K(m, n; c)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=_int_range, required=True)
    p.add_argument("--c", type=_int_range, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", default=None)

    p = sub.add_parser("coeff", help="Fourier coefficient table")
    p.add_argument("--kind", choices=("maass", "holo"), default="maass")
    p.add_argument("--n", type=_int_range, required=True)
    common(p)

    for name, helptext in (("eval", "evaluate F (upper) or the Eichler combination (lower)"),
                           ("continue", "evaluate H, H+ and H- on either half-plane")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--tau", type=_point, action="append", required=True, help="point 'u,v'; use --tau=-0.4,1.1 for negative u")
        common(p)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", default="all", help="comma-separated suite names or 'all'")
    p.add_argument("--k", type=int, default=-2)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", default=None)
    return parser


def _truncation(args, base):
    changes = {}
    for attr, key in (("cmax", "c_max"), ("nmax", "n_max"), ("nodes", "contour_nodes"), ("radius_factor", "radius_factor")):
        value = getattr(args, attr, None)
        if value is not None:
            changes[key] = value
    return base.replace(**changes)


def parse_args(argv):
    """Parse ``argv`` into a :class:`RunConfig`; usage errors exit with status 2."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(command=args.command, output_format=args.format, output_path=args.output)
    try:
        if args.command == "kloosterman":
            if any(c < 1 for c in args.c):
                parser.error("--c values must be positive")
            cfg.form = None
            cfg.n_values, cfg.c_values = args.n, args.c
            cfg.kind = str(args.m)
            return cfg
        if args.command == "verify":
            names = list(verify.SUITES) if args.suite == "all" else [s.strip() for s in args.suite.split(",") if s.strip()]
            unknown = [s for s in names if s not in verify.SUITES]
            if unknown:
                parser.error(f"unknown suite(s): {', '.join(unknown)}")
            cfg.suite, cfg.tol = names, args.tol
            cfg.form = FormParams(args.k, args.m, args.level)
            return cfg
        cfg.form = FormParams(args.k, args.m, args.level)
        if args.command == "coeff":
            cfg.kind, cfg.n_values = args.kind, args.n
        else:
            cfg.points = args.tau
        base = Truncation(c_max=30) if args.command == "continue" else Truncation(c_max=300, n_max=40)
        cfg.trunc = _truncation(args, base)
    except MaassPoincareError as exc:
        parser.error(str(exc))
    return cfg


def _cplx(z):
    return {"re": float(z.real), "im": float(z.imag)}


def _run_kloosterman(cfg):
    m = int(cfg.kind)
    rows = [{"m": m, "n": n, "c": c, "value": kloosterman(m, n, c)} for c in cfg.c_values for n in cfg.n_values]
    return {"m": m, "n": cfg.n_values, "c": cfg.c_values}, rows


def _run_coeff(cfg):
    f, t = cfg.form, cfg.trunc
    params = {"kind": cfg.kind, "k": f.k, "m": f.m, "level": f.N, "trunc": asdict(t)}
    rows = []
    if cfg.kind == "holo":
        ns = [n for n in cfg.n_values if n >= 1]
        values = coeffs.b_coeffs(f.k, f.m, ns, f.N, t)
        first = values[0] if len(values) and values[0] else float("nan")
        for n, b in zip(ns, values):
            rows.append({"n": n, "part": "holo", "value": float(b), "tail": coeffs.b_tail(f.k, f.m, n, f.N, t.c_max), "ratio": float(b / first)})
        return params, rows
    if f.m < 1:
        raise MaassPoincareError("--kind maass computes F_{k,-m}; pass m >= 1")
    ns = [n for n in cfg.n_values if n >= 1]
    if 0 in cfg.n_values:
        rows.append({"n": 0, "part": "holo", "value": coeffs.a_plus_zero(f.k, f.m, f.N, t), "tail": coeffs.a_plus_zero_tail(f.k, f.m, f.N, t.c_max)})
    for sign, part in (("+", "holo"), ("-", "nonholo")):
        for n, a in zip(ns, coeffs.a_coeffs(f.k, f.m, sign, ns, f.N, t) if ns else []):
            rows.append({"n": n, "part": part, "value": float(a), "tail": coeffs.a_tail(f.k, f.m, n, f.N, t.c_max)})
    return params, rows


def _run_eval(cfg):
    f, t = cfg.form, cfg.trunc
    params = {"k": f.k, "m": f.m, "level": f.N, "trunc": asdict(t)}
    rows = []
    exp = None
    for p in cfg.points:
        if p.plane == "upper":
            exp = exp or coeffs.maass_expansion(f.k, f.m, f.N, t.n_max, t)
            ev = forms.eval_maass_detailed(exp, p)
            rows.append({"tau": _cplx(p.tau), "plane": p.plane, "function": "F", "value": _cplx(ev.value),
                         "n_used": ev.n_used, "last_term": float(ev.last_term), "capped": bool(ev.capped),
                         "max_coefficient_tail": max(exp.tails.values(), default=0.0)})
        else:
            value = forms.theorem_rhs_lower(f.k, f.m, f.N, p, t.n_max, t)
            rows.append({"tau": _cplx(p.tau), "plane": p.plane, "function": "eichler-combination", "value": _cplx(value),
                         "n_used": t.n_max, "max_coefficient_tail": max(coeffs.b_tail(2 - f.k, s * f.m, t.n_max, f.N, t.c_max) for s in (1, -1))})
    return params, rows


def _run_continue(cfg):
    f, t = cfg.form, cfg.trunc
    params = {"k": f.k, "m": f.m, "level": f.N, "trunc": asdict(t)}
    rows = []
    for p in cfg.points:
        fp, tp = continuation.H_plus_terms(f.k, f.m, f.N, p, t)
        fm, tm = continuation.H_minus_terms(f.k, f.m, f.N, p, t)
        hp = complex(fp) + continuation._fsum_complex(tp)
        hm = complex(fm) + continuation._fsum_complex(tm)
        last = abs(tp[-1] + tm[-1]) if tp else 0.0
        rows.append({"tau": _cplx(p.tau), "plane": p.plane, "H": _cplx(hp + hm), "H_plus": _cplx(hp), "H_minus": _cplx(hm),
                     "last_c_term": float(last)})
    return params, rows


def _run_verify(cfg):
    f = cfg.form
    params = {"k": f.k, "m": f.m, "level": f.N, "suite": cfg.suite, "tol": cfg.tol,
              "sample_points_version": verify.sample_points()["version"]}
    reports = [verify.run_suite(name, f.k, f.m, f.N, tol=cfg.tol) for name in cfg.suite]
    return params, [r.to_dict() for r in reports]


_RUNNERS = {"kloosterman": _run_kloosterman, "coeff": _run_coeff, "eval": _run_eval,
            "continue": _run_continue, "verify": _run_verify}


def _flatten(row, prefix=""):
    flat = {}
    for key, value in row.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, name + "."))
        elif isinstance(value, list):
            flat[name] = json.dumps(verify._jsonable(value))
        else:
            flat[name] = value
    return flat


def _csv_rows(command, results):
    if command != "verify":
        return [_flatten(r) for r in results]
    rows = []
    for report in results:
        for res in report["residuals"]:
            rows.append({"check": report["check_name"], "passed": report["passed"], "tolerance": report["tolerance"],
                         "point": json.dumps(res["point"]), "abs_err": res["abs_err"], "rel_err": res["rel_err"],
                         **_flatten({"lhs": res["lhs"], "rhs": res["rhs"]})})
    return rows


def render(cfg, params, results, errors):
    if cfg.output_format == "json":
        record = {"schema_version": SCHEMA_VERSION, "command": cfg.command, "params": params,
                  "results": results, "errors": errors}
        return json.dumps(verify._jsonable(record), indent=2) + "\n"
    buf = io.StringIO()
    rows = _csv_rows(cfg.command, results) if results else []
    fields = []
    for row in rows:
        fields.extend(k for k in row if k not in fields)
    if errors:
        fields = fields or ["error", "message"]
    writer = csv.DictWriter(buf, fieldnames=fields or ["empty"], lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    for err in errors:
        writer.writerow({"error" if "error" in fields else fields[0]: err["type"], **({"message": err["message"]} if "message" in fields else {})})
    return buf.getvalue()


def _destination(path):
    if path is None:
        return None
    outdir = os.environ.get(OUTPUT_DIR_ENV)
    if outdir and not os.path.isabs(path):
        path = os.path.join(outdir, path)
    return path


def run(cfg, stdout=None):
    """Execute ``cfg``; returns the process exit code."""
    stdout = stdout or sys.stdout
    errors, results, params, code = [], [], {}, 0
    try:
        params, results = _RUNNERS[cfg.command](cfg)
    except (MaassPoincareError, ArithmeticError, ValueError) as exc:
        errors.append({"type": type(exc).__name__, "message": str(exc)})
        code = 2
    if code == 0 and cfg.command == "verify" and not all(r["passed"] for r in results):
        code = 1
    text = render(cfg, params, results, errors)
    dest = _destination(cfg.output_path)
    if dest:
        with open(dest, "w", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    if cfg.command == "verify" and cfg.output_format == "json" and dest:
        for r in results:
            print(("PASS " if r["passed"] else "FAIL ") + r["check_name"], file=sys.stderr)
    return code


def main(argv=None):
    cfg = parse_args(sys.argv[1:] if argv is None else argv)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
