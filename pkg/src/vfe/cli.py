"""Command-line driver.

::

    vfe run --config <path>
    vfe verify {geometry|frenet|dynamics|hasimoto|frames|all}
    vfe generate --name <generator> --out <path> [--kind K] [--K0 x] [--N n] [--param key=value ...]

Exit codes: 0 success, 1 usage error, 2 certification or verification
FAIL, 3 numerical error.  ``VFE_THREADS`` (default 1) caps the number of
convergence levels run concurrently; results do not depend on it.
"""

import argparse
import ast
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from contextlib import nullcontext

import numpy as np

from . import __version__
from .dynamics import max_stable_dt
from .errors import NumericalError, UsageError
from .filament import ClosedFilament, frenet, resample
from .geometry import KINDS, SpaceForm
from .hasimoto import certify_nls, transform_flow
from .initial import GENERATORS, generate_initial
from .io import (
    FLOAT_FMT,
    load_config,
    read_points,
    trajectory_table,
    write_points,
    write_timeseries,
)
from .verification import SUITES, run_suite

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_NUMERICAL = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def thread_count():
    raw = os.environ.get("VFE_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"VFE_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise UsageError(f"VFE_THREADS must be a positive integer, got {raw!r}")
    return n


def _executor():
    n = thread_count()
    return ThreadPoolExecutor(max_workers=n) if n > 1 else nullcontext(None)


def _initial(cfg):
    M = cfg.space_form
    if cfg.name == "file":
        if "path" not in cfg.params:
            raise UsageError("initial_condition name = file needs a path")
        M_file, pts = read_points(cfg.params["path"])
        if M_file != M:
            raise UsageError(f"{cfg.params['path']} holds a {M_file.kind} filament, config asks for {M.kind}")
        f = ClosedFilament(M, pts)
        f = resample(f, cfg.N)
        frenet(f)
        return f
    return generate_initial(cfg.name, cfg.params, M, cfg.N)


def _fmt(x):
    return FLOAT_FMT % x


def _summary(cfg, f, traj, cert):
    lines = [
        f"vfe {__version__}",
        f"space_form kind={cfg.kind} K0={_fmt(cfg.K0)}",
        f"initial_condition name={cfg.name} " + " ".join(f"{k}={v}" for k, v in sorted(cfg.params.items())),
        f"N={cfg.N} dt={_fmt(traj.dt)} T_end={_fmt(cfg.T_end)} steps={traj.t.size - 1}",
        f"length={_fmt(f.L)} ds={_fmt(traj.ds)} dt_bound={_fmt(max_stable_dt(traj.ds))}",
        f"total_torsion={_fmt(traj.theta)}",
        f"max_arc_drift={_fmt(float(np.max(traj.drift)))}",
        f"max_constraint_res={_fmt(float(np.max(traj.constraint)))}",
        f"max_nls_residual={_fmt(float(np.nanmax(traj.residual))) if traj.t.size > 2 else 'nan'}",
    ]
    if cert is not None:
        lines.append("certification")
        lines.extend("  " + ln for ln in cert.summary().splitlines())
    return "\n".join(lines) + "\n"


def cmd_run(args):
    cfg = load_config(args.config)
    f = _initial(cfg)
    bound = max_stable_dt(f.ds)
    if cfg.dt > bound * (1 + 1e-12):
        raise UsageError(f"dt={cfg.dt:.6g} exceeds the stability bound 0.25*ds^2 = {bound:.6g} (ds={f.ds:.6g})")
    traj = transform_flow(f, cfg.T_end, cfg.dt, base_index=cfg.base_index, reproject_every=cfg.reproject_every)
    cert = None
    if cfg.certify:
        with _executor() as ex:
            cert = certify_nls(f, cfg.T_end, cfg.dt, levels=cfg.convergence_levels,
                               base_index=cfg.base_index, executor=ex)
    write_timeseries(cfg.path, trajectory_table(traj, cfg.output_every))
    with open(cfg.summary, "w") as fh:
        fh.write(_summary(cfg, f, traj, cert))
    print(f"wrote {cfg.path} and {cfg.summary}")
    if cert is not None:
        print("certification " + ("PASS" if cert.passed else "FAIL"))
        if not cert.passed:
            return EXIT_FAIL
    return EXIT_OK


def cmd_verify(args):
    if args.suite not in SUITES + ("all",):
        raise UsageError(f"unknown suite {args.suite!r}; valid suites: {', '.join(SUITES + ('all',))}")
    with _executor() as ex:
        checks, seconds = run_suite(args.suite, executor=ex)
    for c in checks:
        print(c.line())
    n_pass = sum(c.passed for c in checks)
    ok = n_pass == len(checks)
    print(f"{'PASS' if ok else 'FAIL'} {args.suite} {n_pass}/{len(checks)} checks in {seconds:.1f}s")
    return EXIT_OK if ok else EXIT_FAIL


def _parse_param(text):
    if "=" not in text:
        raise UsageError(f"--param expects key=value, got {text!r}")
    key, value = text.split("=", 1)
    try:
        return key.strip(), ast.literal_eval(value)
    except (ValueError, SyntaxError):
        raise UsageError(f"--param {key}: cannot parse value {value!r}") from None


def cmd_generate(args):
    if args.name not in GENERATORS:
        raise UsageError(f"unknown generator {args.name!r}; expected one of {sorted(GENERATORS)}")
    M = SpaceForm(args.kind, args.K0) if args.K0 is not None else {
        "euclidean": SpaceForm.euclidean, "spherical": SpaceForm.sphere, "hyperbolic": SpaceForm.hyperbolic
    }[args.kind]()
    params = dict(_parse_param(p) for p in args.param)
    f = generate_initial(args.name, params, M, args.N)
    write_points(args.out, f)
    print(f"wrote {args.out} ({f.N} samples, length {f.L:.12g})")
    return EXIT_OK


def build_parser():
    p = _Parser(prog="vfe", description="Binormal flow of closed filaments in space forms.")
    p.add_argument("--version", action="version", version=f"vfe {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    r = sub.add_parser("run", help="simulate, transform and optionally certify one experiment")
    r.add_argument("--config", required=True)
    r.set_defaults(func=cmd_run)

    v = sub.add_parser("verify", help="run an invariant suite")
    v.add_argument("suite", help="|".join(SUITES + ("all",)))
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("generate", help="write an initial filament to CSV")
    g.add_argument("--name", required=True)
    g.add_argument("--out", required=True)
    g.add_argument("--kind", default="euclidean", choices=KINDS)
    g.add_argument("--K0", type=float, default=None)
    g.add_argument("--N", type=int, default=128)
    g.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    g.set_defaults(func=cmd_generate)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_help(sys.stderr)
            return EXIT_USAGE
        return args.func(args)
    except UsageError as exc:
        print(f"vfe: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"vfe: numerical error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"vfe: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
