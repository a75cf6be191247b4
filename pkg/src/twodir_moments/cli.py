"""Command-line interface.

Usage:
    twodir-moments check example_5_2
    twodir-moments moments example_5_1 --method both --max-order 2
    twodir-moments compare mask.json --max-order 6 --tol 1e-9
    twodir-moments oracle example_5_1 --iterations 12 --level 12 --dump-csv phi.csv
    twodir-moments examples list
    twodir-moments examples export masks/

Exit codes: 0 success, 1 a check failed, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys

import numpy as np

from . import __version__
from .analysis import cascade_samples, compare_moments, quadrature_moment, vanishing_moments
from .discrete import discrete_moment_phi
from .doubling import DEFAULT_ORDER, moments_by_doubling
from .errors import ConditionEError, MaskFormatError, MomentError
from .masks import doubled_mask_at_one
from .maskio import example_names, export_examples, resolve_mask
from .separation import moments_by_separation
from .spectral import DEFAULT_TOL, condition_e

log = logging.getLogger(__name__)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DIGITS = 7


def _fmt(x: float, digits: int = DIGITS) -> str:
    if abs(x) < 0.5 * 10.0**-digits:
        x = 0.0
    return f"{x: .{digits}f}"


def _fmt_vec(v, digits: int = DIGITS) -> str:
    return "[" + ", ".join(_fmt(x, digits) for x in np.asarray(v).ravel()) + "]"


def _fmt_eig(lam: complex, digits: int = DIGITS) -> str:
    if abs(lam.imag) < 10.0**-digits:
        return _fmt(lam.real, digits)
    return f"{lam.real:.{digits}f}{lam.imag:+.{digits}f}j"


def _eig_json(lam: complex):
    return lam.real if lam.imag == 0 else [lam.real, lam.imag]


def _condition_payload(bundle, tol):
    doubled = condition_e(doubled_mask_at_one(bundle.scaling), tol)
    reduced = condition_e(discrete_moment_phi(bundle.scaling, 0).total, tol)
    return doubled, reduced


def cmd_check(args) -> int:
    bundle = resolve_mask(args.mask)
    doubled, reduced = _condition_payload(bundle, args.tol)
    if args.format == "json":
        out = {
            "mask": bundle.name,
            "tolerance": args.tol,
            "satisfied": doubled.satisfied and reduced.satisfied,
        }
        for key, rep in (("doubled", doubled), ("separated", reduced)):
            out[key] = {
                "eigenvalues": [_eig_json(x) for x in rep.eigenvalues],
                "has_simple_one": rep.has_simple_one,
                "spectral_ok": rep.spectral_ok,
                "satisfied": rep.satisfied,
            }
        print(json.dumps(out, indent=2))
    else:
        r = bundle.multiplicity
        print(f"mask: {bundle.name}  d={bundle.dilation}  r={r}")
        for label, rep in ((f"doubled mask at 1 ({2 * r}x{2 * r})", doubled), (f"M_0 ({r}x{r})", reduced)):
            print(f"{label}: {rep.describe()}")
            print("  eigenvalues: " + ", ".join(_fmt_eig(x) for x in rep.eigenvalues))
    return EXIT_OK if doubled.satisfied and reduced.satisfied else EXIT_FAIL


def _moment_rows(result):
    rows = [("m", None, j, v) for j, v in enumerate(result.m_phi)]
    for s in sorted(result.n_psi):
        rows.extend(("n", s, j, v) for j, v in enumerate(result.n_psi[s]))
    return rows


def _run_methods(bundle, args):
    methods = ["doubling", "separation"] if args.method == "both" else [args.method]
    runners = {"doubling": moments_by_doubling, "separation": moments_by_separation}
    return {
        name: runners[name](bundle, args.max_order, tol=args.tol, flip_sign=args.flip_sign) for name in methods
    }


def _vanishing_json(result, tol):
    out = {}
    for s, series in sorted(result.n_psi.items()):
        count, exhausted = vanishing_moments(series, tol)
        out[str(s)] = {"count": count, "exhausted": exhausted}
    return out


def cmd_moments(args) -> int:
    bundle = resolve_mask(args.mask)
    results = _run_methods(bundle, args)
    if args.format == "json":
        out = {"mask": bundle.name, "dilation": bundle.dilation, "multiplicity": bundle.multiplicity, "methods": {}}
        for name, res in results.items():
            entry = {
                "m": [v.tolist() for v in res.m_phi],
                "n": {str(s): [v.tolist() for v in series] for s, series in sorted(res.n_psi.items())},
                "vanishing_moments": _vanishing_json(res, args.vanish_tol),
            }
            if name == "doubling":
                entry["m_doubled"] = [v.tolist() for v in res.m_doubled]
            out["methods"][name] = entry
        print(json.dumps(out, indent=2))
        return EXIT_OK

    print(f"mask: {bundle.name}  d={bundle.dilation}  r={bundle.multiplicity}")
    for name, res in results.items():
        print(f"\nmethod: {name}")
        print(f"{'moment':<8} {'branch':>6} {'j':>3}  value")
        for kind, s, j, v in _moment_rows(res):
            print(f"{kind:<8} {'' if s is None else s:>6} {j:>3}  {_fmt_vec(v)}")
        for s, series in sorted(res.n_psi.items()):
            count, exhausted = vanishing_moments(series, args.vanish_tol)
            more = " (all computed orders vanish; may be more)" if exhausted else ""
            print(f"branch {s}: {count} vanishing moments observed; approximation order {count}{more}")
    return EXIT_OK


def cmd_compare(args) -> int:
    bundle = resolve_mask(args.mask)
    d = moments_by_doubling(bundle, args.max_order, tol=args.tol_eig)
    s = moments_by_separation(bundle, args.max_order, tol=args.tol_eig)
    rep = compare_moments(d, s, args.tol)
    if args.format == "json":
        out = {
            "mask": bundle.name,
            "m_diff": rep.m_diff,
            "n_diff": {str(k): v for k, v in rep.n_diff.items()},
            "overall_max": rep.overall_max,
            "tol": rep.tol,
            "pass": rep.passed,
        }
        print(json.dumps(out, indent=2))
    else:
        print(f"mask: {bundle.name}  doubling vs separation, orders 0..{args.max_order}")
        print(f"{'j':>3}  {'|dm|':>10}  " + "  ".join(f"{'|dn(' + str(k) + ')|':>10}" for k in rep.n_diff))
        for j, dm in enumerate(rep.m_diff):
            cols = "  ".join(f"{rep.n_diff[k][j]:10.3e}" for k in rep.n_diff)
            print(f"{j:>3}  {dm:10.3e}  {cols}")
        print(f"overall max {rep.overall_max:.3e}  tol {rep.tol:.1e}  {'PASS' if rep.passed else 'FAIL'}")
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_oracle(args) -> int:
    bundle = resolve_mask(args.mask)
    ref = moments_by_doubling(bundle, args.max_order, tol=args.tol_eig)
    f = cascade_samples(bundle.scaling, args.iterations, args.level, m0=ref.m_doubled[0], tol=args.tol_eig)
    rows = []
    for j in range(args.max_order + 1):
        quad = quadrature_moment(f, j)
        rows.append((j, quad, ref.m_doubled[j], float(np.abs(quad - ref.m_doubled[j]).max())))
    if args.dump_csv:
        with open(args.dump_csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            width = f.values.shape[1]
            writer.writerow(["x"] + [f"component_{i + 1}" for i in range(width)])
            for x, row in zip(f.grid, f.values):
                writer.writerow([repr(float(x))] + [repr(float(v)) for v in row])
    if args.format == "json":
        out = {
            "mask": bundle.name,
            "iterations": args.iterations,
            "level": args.level,
            "orders": [
                {"j": j, "quadrature": q.tolist(), "recursion": m.tolist(), "max_abs_diff": dev}
                for j, q, m, dev in rows
            ],
        }
        print(json.dumps(out, indent=2))
    else:
        print(f"mask: {bundle.name}  cascade n={args.iterations}, grid spacing {bundle.dilation}^-{args.level}")
        for j, q, m, dev in rows:
            print(f"j={j}  quadrature {_fmt_vec(q)}  recursion {_fmt_vec(m)}  max|diff| {dev:.3e}")
    return EXIT_OK


def cmd_examples(args) -> int:
    if args.action == "list":
        for name in example_names():
            print(name)
        return EXIT_OK
    if not args.directory:
        print("examples export: a target directory is required", file=sys.stderr)
        return EXIT_USAGE
    for path in export_examples(args.directory):
        print(path)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="twodir-moments", description="Moments of two-direction multiscaling functions and multiwavelets."
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def mask_cmd(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("mask", help="mask file path or bundled example name")
        sp.add_argument("--format", choices=["table", "json"], default="table")
        return sp

    sp = mask_cmd("check", "report Condition E for the doubled and the r x r zeroth moment")
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
    sp.set_defaults(func=cmd_check)

    sp = mask_cmd("moments", "continuous moments of phi and psi")
    sp.add_argument("--method", choices=["doubling", "separation", "both"], default="separation")
    sp.add_argument("--max-order", type=int, default=DEFAULT_ORDER)
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL, help="eigenvalue-1 tolerance")
    sp.add_argument("--vanish-tol", type=float, default=1e-10)
    sp.add_argument("--flip-sign", action="store_true", help="negate m_0 (and hence every moment)")
    sp.set_defaults(func=cmd_moments)

    sp = mask_cmd("compare", "doubling vs separation")
    sp.add_argument("--max-order", type=int, default=DEFAULT_ORDER)
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("--tol-eig", type=float, default=DEFAULT_TOL)
    sp.set_defaults(func=cmd_compare)

    sp = mask_cmd("oracle", "cascade-quadrature moments against the recursion")
    sp.add_argument("--iterations", type=int, default=12)
    sp.add_argument("--level", type=int, default=12)
    sp.add_argument("--max-order", type=int, default=2)
    sp.add_argument("--tol-eig", type=float, default=DEFAULT_TOL)
    sp.add_argument("--dump-csv", metavar="PATH")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("examples", help="list or export the bundled masks")
    sp.add_argument("action", choices=["list", "export"])
    sp.add_argument("directory", nargs="?")
    sp.set_defaults(func=cmd_examples)
    return p


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except MaskFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConditionEError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except MomentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
