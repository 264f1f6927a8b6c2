"""Command-line front end: verification suites, curve export, report printing.

Exit codes: 0 all checks pass, 1 check failure, 2 usage error, 3 I/O error.
Reports are deterministic for a fixed seed (no timestamps, sorted keys).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from . import characters as ch
from . import transforms as tr
from . import waves as wv
from .errors import ConfigurationError
from .models import SampledFunction, build_model, make_grid
from .report import write_csv, write_json_atomic
from .suites import SUITES


def _parse_tols(pairs):
    tols = {}
    for p in pairs or []:
        if "=" not in p:
            raise ConfigurationError(f"--tol expects name=value, got {p!r}")
        k, v = p.split("=", 1)
        tols[k] = float(v)
    return tols


def cmd_verify(args):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    if args.suite not in list(SUITES) + ["all"]:
        print(f"unknown suite {args.suite!r}; choose from {list(SUITES) + ['all']}",
              file=sys.stderr)
        return 2
    try:
        tols = _parse_tols(args.tol)
    except (ConfigurationError, ValueError) as e:
        print(str(e), file=sys.stderr)
        return 2
    grid_cfg = {"xmax": args.xmax, "n": args.nodes}
    suites_out = []
    ok = True
    for name in names:
        rep = SUITES[name](model_filter=args.model, seed=args.seed,
                           grid_cfg=grid_cfg, tols=tols)
        suites_out.append((name, rep))
        ok &= rep.all_pass
        graded = [c for c in rep if c.passed is not None]
        npass = sum(1 for c in graded if c.passed)
        print(f"[{name}] {npass}/{len(graded)} checks passed")
        for c in rep.failures:
            print(f"    FAIL {c.name}: measured {c.measured:.3e}"
                  + (f" vs {c.expected:.3e}" if c.expected is not None else ""))
    payload = {
        "suite": args.suite,
        "model": args.model or "all",
        "seed": args.seed,
        "version": __version__,
        "grid": {"xMax": args.xmax, "n": args.nodes},
        "checks": [dict(c, suite=sname)
                   for sname, rep in suites_out for c in rep.to_dicts()],
    }
    if args.out:
        try:
            write_json_atomic(args.out, payload)
        except OSError as e:
            print(f"cannot write report: {e}", file=sys.stderr)
            return 3
    return 0 if ok else 1


def _curve_character(args, out):
    model = build_model(args.model)
    xs = np.linspace(0.0, args.xmax, 400)
    lam = args.lam
    phi = np.real(ch.phi_closed(model, lam, xs))
    ode = [e.value for e in ch.phi_ode(model.profile, lam, np.maximum(xs, 1e-3))]
    write_csv(out, ["x", "phi_ode", "phi_closed"], [xs, np.real(ode), phi])


def _curve_transform(args, out):
    model = build_model(args.model)
    grid = make_grid(model, xmax=60.0 if args.model == "mehler" else 30.0,
                     panels=48, nodes_per_panel=16)
    fns = {
        "sech3": (lambda x: np.cosh(x / 2) ** -3,
                  lambda l: 8 * l / np.sinh(np.pi * l)),
        "sech5": (lambda x: np.cosh(x / 2) ** -5,
                  lambda l: (32 / 9) * l * (l**2 + 1) / np.sinh(np.pi * l)),
        "gauss": (lambda x: np.exp(-x**2), None),
    }
    if args.f not in fns:
        raise ConfigurationError(f"unknown --f {args.f!r}; choose from {sorted(fns)}")
    fn, ref = fns[args.f]
    lams = np.linspace(0.25, 4.0, 200)
    fh = tr.forward(model, SampledFunction.from_callable(grid, fn), lams)
    cols = [lams, np.real(fh.values)]
    hdr = ["lambda", "fhat"]
    if ref is not None:
        cols.append(ref(lams))
        hdr.append("reference")
    write_csv(out, hdr, cols)


def _curve_wave(args, out):
    model = build_model(args.model)
    grid = make_grid(model, xmax=max(20.0, args.t + 12), panels=40, nodes_per_panel=16)
    h = SampledFunction.from_callable(grid, lambda x: np.exp(-((x - 3.0) / 0.7) ** 2))
    u = wv.cosine_apply(model, args.t, h)
    write_csv(out, ["x", "u"], [grid.nodes, u.values])


def _curve_growth(args, out):
    model = build_model("cosh")
    ts = np.linspace(0.25, 5.0, 20)
    grid = make_grid(model, xmax=20.0, panels=32, nodes_per_panel=16)
    rows, bounds = [], []
    rng = np.random.default_rng(args.seed)
    hs = [wv.random_bump(grid, rng) for _ in range(6)]
    from .models import lp_norm
    for t in ts:
        worst = max(lp_norm(grid, wv.cosine_apply(model, t, h), args.p)
                    / lp_norm(grid, h, args.p) for h in hs)
        rows.append(worst)
        bounds.append(np.cosh(t) ** ((args.p - 2) / args.p))
    write_csv(out, ["t", "ratio", "bound"], [ts, rows, bounds])


def cmd_curve(args):
    out = args.out or f"{args.kind}.csv"
    try:
        {"character": _curve_character, "transform": _curve_transform,
         "wave": _curve_wave, "growth": _curve_growth}[args.kind](args, out)
    except KeyError:
        print(f"unknown curve kind {args.kind!r}", file=sys.stderr)
        return 2
    except ConfigurationError as e:
        print(str(e), file=sys.stderr)
        return 2
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return 3
    return 0


def cmd_report(args):
    try:
        with open(args.path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        print(f"cannot read report: {e}", file=sys.stderr)
        return 3
    checks = data.get("checks", [])
    if not checks:
        print("0 checks")
        return 1
    width = max(len(c["name"]) for c in checks)
    fails = 0
    graded = 0
    for c in checks:
        status = {True: "pass", False: "FAIL", None: "info"}[c["pass"]]
        if c["pass"] is not None:
            graded += 1
            fails += 0 if c["pass"] else 1
        exp = "" if c["expected"] is None else f"  expected {c['expected']:.6g}"
        meas = "nan" if c["measured"] is None else f"{c['measured']:.6g}"
        print(f"{c['name']:<{width}}  {status}  measured {meas}{exp}")
    print(f"{graded - fails}/{graded} checks passed")
    return 0 if fails == 0 else 1


def main(argv=None):
    ap = argparse.ArgumentParser(prog="venturicalc",
                                 description="verification suites and curve export "
                                             "for the hypergroup wave calculus")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True)
    v.add_argument("--model", default=None, choices=["cosh", "mehler", "sl2c", "all"])
    v.add_argument("--xmax", type=float, default=20.0)
    v.add_argument("--nodes", type=int, default=512)
    v.add_argument("--seed", type=int, default=1234)
    v.add_argument("--out", default=None)
    v.add_argument("--tol", action="append", metavar="NAME=VALUE")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("curve", help="export a CSV curve")
    c.add_argument("kind", choices=["character", "transform", "wave", "growth"])
    c.add_argument("--model", default="cosh")
    c.add_argument("--lam", type=float, default=2.0)
    c.add_argument("--t", type=float, default=2.0)
    c.add_argument("--p", type=float, default=4.0)
    c.add_argument("--f", default="sech3")
    c.add_argument("--xmax", type=float, default=10.0)
    c.add_argument("--seed", type=int, default=1234)
    c.add_argument("--out", default=None)
    c.set_defaults(func=cmd_curve)

    r = sub.add_parser("report", help="summarize a JSON report")
    r.add_argument("path")
    r.set_defaults(func=cmd_report)

    args = ap.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
