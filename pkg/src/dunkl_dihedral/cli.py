"""Command-line interface: ``verify`` runs identity suites, ``eval`` evaluates objects.

Exit status: 0 when every check passes, 1 on a verification failure, 2 on a
usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import secrets
import sys

import numpy as np
from numpy.polynomial import Polynomial

from . import harmonics, sieved, verification
from .dunkl import intertwine_ridge_exact, intertwine_ridge_quad, intertwine_z2, ridge
from .errors import InconclusiveConvention, InvalidParameter

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

EVAL_TARGETS = ("sieved", "modified", "harmonic", "poisson-circle", "poisson-interval", "intertwine")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# profile strings such as "t^4" or "1 - 2.5*t + t^3"
# ---------------------------------------------------------------------------

_TERM = re.compile(r"^([+-]?)(\d+(?:\.\d*)?(?:[eE][+-]?\d+)?)?\*?(t(?:\^(\d+))?)?$")


def parse_profile(text: str) -> Polynomial:
    """Parse a polynomial in ``t`` written as a sum of ``c*t^n`` terms."""
    s = text.replace(" ", "").replace("**", "^")
    if not s:
        raise UsageError("empty profile")
    # split before every sign that is not part of an exponent such as 1e-3
    terms = re.split(r"(?<=[^eE+\-^])(?=[+-])", s)
    coef: dict[int, float] = {}
    for term in terms:
        m = _TERM.match(term)
        if not m or (m.group(2) is None and m.group(3) is None):
            raise UsageError(f"cannot parse profile term {term!r}")
        sign = -1.0 if m.group(1) == "-" else 1.0
        c = float(m.group(2)) if m.group(2) else 1.0
        power = (int(m.group(4)) if m.group(4) else 1) if m.group(3) else 0
        coef[power] = coef.get(power, 0.0) + sign * c
    out = np.zeros(max(coef) + 1)
    for power, c in coef.items():
        out[power] = c
    return Polynomial(out)


# ---------------------------------------------------------------------------
# argument parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dunkl-dihedral", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run an identity suite")
    v.add_argument("suite", choices=verification.SUITES + ("all",))
    v.add_argument("--k", type=int, nargs="+")
    v.add_argument("--lambda", dest="lam", type=float, nargs="+")
    v.add_argument("--mu", type=float, nargs="+")
    v.add_argument("--max-degree", type=int)
    v.add_argument("--samples", type=int, help="random points for lemma checks")
    v.add_argument("--mc-samples", type=int, default=1_000_000)
    v.add_argument("--quad-order", type=int)
    v.add_argument("--seed", type=int)
    v.add_argument("--tol", type=float, help="absolute tolerance applied to every deterministic check")
    v.add_argument("--allow-loose", action="store_true", help="permit --tol above the defaults")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--json", action="store_true", help="newline-delimited JSON records")
    v.add_argument("--timing", action="store_true", help="include wall time in the report header")
    v.add_argument("--out", metavar="FILE")

    e = sub.add_parser("eval", help="evaluate a family, kernel or operator")
    e.add_argument("target", choices=EVAL_TARGETS)
    e.add_argument("--family", choices=sieved.TAGS, default="minus")
    e.add_argument("--sign", type=int, choices=(1, -1), default=1, help="modified family: +1 doubled, -1 mirror")
    e.add_argument("--k", type=int, required=True)
    e.add_argument("--lambda", dest="lam", type=float, required=True)
    e.add_argument("--mu", type=float)
    e.add_argument("--n", type=int)
    e.add_argument("--i", type=int, default=1, choices=(1, 2))
    e.add_argument("--p", type=int, default=0)
    e.add_argument("--r", type=float)
    e.add_argument("--t", type=float, nargs="+")
    e.add_argument("--theta", type=float, nargs="+")
    e.add_argument("--x", type=float, nargs="+")
    e.add_argument("--y", type=float, nargs="+")
    e.add_argument("--profile", default="t")
    e.add_argument("--method", choices=("exact", "deterministic", "monte-carlo"), default="exact")
    e.add_argument("--quad-order", type=int)
    e.add_argument("--mc-samples", type=int, default=1_000_000)
    e.add_argument("--seed", type=int)
    e.add_argument("--json", action="store_true", help="newline-delimited JSON rows instead of CSV")
    e.add_argument("--out", metavar="FILE")
    return parser


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _report_lines(report: verification.VerificationReport, as_json: bool, timing: bool) -> list[str]:
    head = report.to_dict(timing)
    records = head.pop("records")
    if as_json:
        dump = lambda obj: json.dumps(verification._plain(obj), sort_keys=True)
        return [dump(dict(head, kind="header"))] + [dump(dict(r, kind="check")) for r in records]
    n_fail = len(report.failures())
    lines = [f"# suite={report.suite} seed={report.seed} checks={len(records)} failed={n_fail}"
             + (f" wall_time={report.wall_time:.2f}s" if timing else "")]
    for r in records:
        status = "PASS" if r["passed"] else "FAIL"
        params = " ".join(f"{k}={v}" for k, v in r["params"].items())
        lines.append(f"{status} {r['identity']:<32} dev={r['max_dev']:.3e} tol={r['tol']:.1e} {params}")
    lines.append("# overall: " + ("PASS" if report.passed else "FAIL"))
    return lines


def run_verify(args) -> int:
    seed = args.seed if args.seed is not None else secrets.randbelow(2**31)
    options = verification.Options(
        ks=tuple(args.k) if args.k else None,
        lams=tuple(args.lam) if args.lam else None,
        mus=tuple(args.mu) if args.mu else None,
        max_degree=args.max_degree, samples=args.samples, mc_samples=args.mc_samples,
        quad_order=args.quad_order, seed=seed, tol=args.tol, allow_loose=args.allow_loose,
        jobs=max(1, args.jobs),
    )
    if options.lams and any(l <= 0 for l in options.lams):
        raise UsageError("--lambda values must be positive")
    report = verification.run_suite(args.suite, options)
    _emit(_report_lines(report, args.json, args.timing), args.out)
    return EXIT_PASS if report.passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------

def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"target {args.target} needs --{name.replace('_', '-')}")


def _eval_rows(args):
    k, lam = args.k, args.lam
    if args.target in ("sieved", "modified"):
        _need(args, "n", "t")
        fam = sieved.family(args.family, k, lam) if args.target == "sieved" else sieved.modified_basis(args.sign, k, lam)
        for t in args.t:
            yield {"family": fam.tag, "k": k, "lambda": lam, "n": args.n, "t": t,
                   "value": float(sieved.sieved_eval(fam, args.n, t))}
    elif args.target == "harmonic":
        _need(args, "n", "theta")
        Y = harmonics.y_basis(args.n, args.i, k, lam)
        for th in args.theta:
            yield {"k": k, "lambda": lam, "n": args.n, "i": args.i, "theta": th,
                   "value": float(Y.on_circle(th))}
    elif args.target == "poisson-circle":
        _need(args, "r", "theta")
        for th in args.theta:
            x = np.array([math.cos(th), math.sin(th)])
            yield {"k": k, "lambda": lam, "p": args.p, "r": args.r, "theta": th,
                   "value": float(harmonics.poisson_closed_vertex(k, lam, args.p, x, args.r))}
    elif args.target == "poisson-interval":
        _need(args, "r", "t")
        fam = sieved.family(args.family, k, lam)
        for t in args.t:
            yield {"family": fam.tag, "k": k, "lambda": lam, "p": args.p, "r": args.r, "t": t,
                   "value": float(sieved.poisson_closed(fam, args.p, t, args.r))}
    elif args.target == "intertwine":
        _need(args, "x", "y")
        if len(args.x) != len(args.y):
            raise UsageError("--x and --y need the same number of values")
        profile = parse_profile(args.profile)
        F = ridge(k, args.p, profile)
        if args.mu is not None:
            yield from _eval_z2(args, profile)
            return
        seed = args.seed if args.seed is not None else secrets.randbelow(2**31)
        rng = np.random.default_rng(seed)
        exact = intertwine_ridge_exact(F, lam) if args.method == "exact" else None
        for x1, x2 in zip(args.x, args.y):
            row = {"k": k, "lambda": lam, "p": args.p, "profile": args.profile, "method": args.method,
                   "x": x1, "y": x2}
            if exact is not None:
                row.update(value=float(exact([x1, x2])), stderr=0.0)
            else:
                res = intertwine_ridge_quad(F, lam, [x1, x2], args.method, order=args.quad_order,
                                            samples=args.mc_samples, rng=rng)
                row.update(value=res.value, stderr=res.stderr)
                if args.method == "monte-carlo":
                    row["seed"] = seed
            yield row


def _eval_z2(args, profile):
    """``I_2`` with separate multiplicities: ``--mu`` for ``x1 -> -x1``, ``--lambda`` for ``x2 -> -x2``."""
    if args.k != 2:
        raise UsageError("--mu selects the I_2 product intertwiner and needs --k 2")
    a = args.p * math.pi / 2
    c, s = math.cos(a), math.sin(a)
    order = args.quad_order or 40
    for x1, x2 in zip(args.x, args.y):
        value = intertwine_z2(lambda S, T: profile(c * S + s * T), args.lam, args.mu, [x1, x2], order)
        yield {"k": 2, "lambda": args.lam, "mu": args.mu, "p": args.p, "profile": args.profile,
               "method": "z2-product", "x": x1, "y": x2, "value": value, "stderr": 0.0}


def _format_rows(rows, as_json: bool) -> list[str]:
    if as_json:
        return [json.dumps(r, sort_keys=True) for r in rows]
    if not rows:
        return []
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in r.items()})
    return buf.getvalue().splitlines()


def run_eval(args) -> int:
    rows = list(_eval_rows(args))
    _emit(_format_rows(rows, args.json), args.out)
    return EXIT_PASS


def _emit(lines, out):
    text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    try:
        if args.command == "verify":
            return run_verify(args)
        return run_eval(args)
    except (UsageError, InvalidParameter, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InconclusiveConvention as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
