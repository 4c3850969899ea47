"""Command line front end: ``verify``, ``converge`` and ``eval``.

Exit codes: 0 all identities pass, 1 an identity failed, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .errors import ParameterError
from .verify import (
    CHECKS,
    CONVERGE_DEFAULT_N,
    CONVERGE_KINDS,
    EVAL_OBJECTS,
    SuiteConfig,
    converge_table,
    eval_grid,
    run_suite,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _parse_point(text):
    try:
        return complex(str(text).replace(" ", "").replace("i", "j"))
    except ValueError:
        raise UsageError(f"cannot parse grid point {text!r}") from None


def _parse_list(text, kind):
    items = [t for t in str(text).split(",") if t.strip()]
    try:
        return tuple(kind(t) for t in items)
    except ValueError:
        raise UsageError(f"cannot parse list {text!r}") from None


def _parse_tolerance(item):
    key, sep, value = item.partition("=")
    if not sep:
        raise UsageError(f"--tolerance expects ID=VALUE, got {item!r}")
    try:
        return key.strip(), float(value)
    except ValueError:
        raise UsageError(f"tolerance value for {key!r} is not a number") from None


def _grid_from_config(values):
    return tuple(_parse_point(v) if isinstance(v, str) else complex(*v) if isinstance(v, list) else complex(v) for v in values)


def load_config(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    known = set(SuiteConfig.__dataclass_fields__)
    unknown = set(data) - known
    if unknown:
        raise UsageError(f"unknown config fields: {sorted(unknown)}")
    for key in ("z_grid", "x_grid"):
        if key in data:
            data[key] = _grid_from_config(data[key])
    for key in ("n_list", "a_list"):
        if key in data:
            data[key] = tuple(data[key])
    return data


def build_config(args, n_default=None):
    fields = load_config(args.config) if args.config else {}
    if n_default is not None and "n_list" not in fields:
        fields["n_list"] = n_default
    if args.quad_order is not None:
        fields["quad_order"] = args.quad_order
    if args.n is not None:
        fields["n_list"] = _parse_list(args.n, int)
    if args.a is not None:
        fields["a_list"] = _parse_list(args.a, float)
    if args.grid is not None:
        grid = _parse_list(args.grid, _parse_point)
        fields["z_grid"] = grid
        if all(p.imag == 0 for p in grid):
            fields["x_grid"] = tuple(p.real for p in grid)
    if args.format is not None:
        fields["format"] = args.format
    if args.out is not None:
        fields["out"] = args.out
    if args.allow_unstable:
        fields["allow_unstable"] = True
    tolerances = dict(fields.get("tolerances", {}))
    tolerances.update(_parse_tolerance(t) for t in args.tolerance or [])
    fields["tolerances"] = tolerances
    return SuiteConfig(**fields)


def _fmt(x):
    return repr(float(x))


def _write_csv(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _emit(text, out):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_verify(args):
    cfg = build_config(args)
    cfg.validate()
    report = run_suite(cfg)
    if cfg.format == "json":
        text = json.dumps(report.to_dict(), indent=2) + "\n"
    else:
        # runtime is left out so that the CSV is reproducible byte for byte
        header = ["id", "identity", "max_err", "tolerance", "passed", "amplification"]
        rows = [[e.id, e.identity, _fmt(e.max_err), _fmt(e.tolerance), e.passed, _fmt(e.amplification)] for e in report.entries]
        text = _write_csv(header, rows)
    _emit(text, cfg.out)
    for e in report.failures():
        print(f"FAIL {e.id}: max_err={e.max_err:.3e} > tol={e.tolerance:.1e} ({e.identity})", file=sys.stderr)
    summary = report.summary
    print(f"{summary['passed']}/{summary['total']} identities pass", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_converge(args):
    cfg = build_config(args, n_default=CONVERGE_DEFAULT_N[args.kind])
    if args.a is None and not args.config:
        cfg.a_list = (2.0,)
    # the product form used for the superosc table has no cancellation
    cfg.validate(guarded=args.kind != "superosc")
    grid = None if args.grid is None else cfg.z_grid
    records = []
    for a in cfg.a_list:
        for n, gap in converge_table(args.kind, a, cfg.n_list, grid, allow_unstable=cfg.allow_unstable):
            records.append((args.kind, float(a), n, gap))
    if cfg.format == "json":
        rows = [{"kind": k, "a": a, "n": n, "gap": g} for k, a, n, g in records]
        text = json.dumps({"kind": args.kind, "rows": rows}, indent=2) + "\n"
    else:
        text = _write_csv(["kind", "a", "n", "gap"], [[k, _fmt(a), n, _fmt(g)] for k, a, n, g in records])
    _emit(text, cfg.out)
    return EXIT_OK


def cmd_eval(args):
    cfg = build_config(args)
    # fn and ftilde_n use the product form, which needs no guard
    cfg.validate(guarded=args.object not in ("fn", "ftilde_n"))
    grid = cfg.z_grid
    if args.object in ("ftilde_n", "sigma_n") and args.grid is None:
        grid = cfg.x_grid
    records = []
    for a in cfg.a_list:
        for n in cfg.n_list:
            values = eval_grid(args.object, n, a, grid, k=args.k, allow_unstable=cfg.allow_unstable)
            for point, value in zip(grid, values):
                records.append((n, float(a), args.k, complex(point), complex(value)))
    header = ["n", "a", "k", "z_re", "z_im", "re", "im"]
    if cfg.format == "json":
        rows = [dict(zip(header, [n, a, k, p.real, p.imag, v.real, v.imag])) for n, a, k, p, v in records]
        text = json.dumps({"object": args.object, "rows": rows}, indent=2) + "\n"
    else:
        rows = [[n, _fmt(a), k, _fmt(p.real), _fmt(p.imag), _fmt(v.real), _fmt(v.imag)] for n, a, k, p, v in records]
        text = _write_csv(header, rows)
    _emit(text, cfg.out)
    return EXIT_OK


def _common(parser):
    parser.add_argument("--config", help="JSON file with SuiteConfig fields; flags override it")
    parser.add_argument("--quad-order", type=int, help="Gauss-Hermite order (default 96)")
    parser.add_argument("--n", help="comma-separated n values")
    parser.add_argument("--a", help="comma-separated a values (a > 1)")
    parser.add_argument("--grid", help="comma-separated evaluation points, complex allowed (e.g. 0,1+1j)")
    parser.add_argument("--format", choices=("csv", "json"))
    parser.add_argument("--out", help="output path (default stdout)")
    parser.add_argument("--tolerance", action="append", metavar="ID=VAL", help=f"override a tolerance; ids: {', '.join(CHECKS)}")
    parser.add_argument("--allow-unstable", action="store_true", help="permit a^n above the cancellation guard")


def build_parser():
    parser = argparse.ArgumentParser(prog="superbargmann", description="Superoscillations in the Fock space: identity checks and tables.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("verify", help="run the identity verification suite")
    _common(p)
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("converge", help="emit a supershift convergence table")
    p.add_argument("kind", choices=CONVERGE_KINDS)
    _common(p)
    p.set_defaults(func=cmd_converge)
    p = sub.add_parser("eval", help="evaluate a closed form on a grid")
    p.add_argument("object", choices=EVAL_OBJECTS)
    p.add_argument("--k", type=int, default=0, help="Hermite index for hkn")
    _common(p)
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
