"""Command-line front end.

    whichway params CONFIG
    whichway pattern CONFIG [--time T] [--xmin X --xmax X --points N] [--oracle] [--out PATH]
    whichway joint CONFIG [--time T] [--xpoints N --kpoints N ...] [--out PATH]
    whichway info-curve [--methods BE,M,...] [--points N] [--out PATH]

CONFIG is a JSON file, or the name of a bundled config (``bach``).
Data goes out as CSV, reports and manifests as JSON.
"""
from __future__ import annotations

import argparse
import io
import json
import os
import sys
import tempfile
from importlib import resources
from pathlib import Path

import numpy as np

from . import __version__
from . import interference, params, quantum_info
from .numerics import QuadratureError


class CliError(Exception):
    pass


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def _resolve_config(arg: str):
    path = Path(arg)
    if not path.exists() and os.sep not in arg and not arg.endswith(".json"):
        bundled = resources.files("whichway") / "configs" / f"{arg}.json"
        if bundled.is_file():
            text = bundled.read_text(encoding="utf-8")
            return params.ExperimentConfig.from_dict(json.loads(text)), json.loads(text)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read config {arg!r}: {exc.strerror or exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"config {arg!r} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise CliError("config document must be a JSON object")
    try:
        return params.ExperimentConfig.from_dict(raw), raw
    except params.ConfigError as exc:
        raise CliError(f"invalid config (key {exc.key!r}): {exc}") from exc


def _write_atomic(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    target = Path(path)
    directory = target.parent if str(target.parent) else Path(".")
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=f".{target.name}.", suffix=".tmp")
    except OSError as exc:
        raise CliError(f"cannot write {path!r}: {exc.strerror or exc}") from exc
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except OSError as exc:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise CliError(f"cannot write {path!r}: {exc.strerror or exc}") from exc


def _csv(header, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


def _manifest(args, command, raw_config, config, emitted):
    doc = {
        "command": command,
        "tool_version": __version__,
        "options": {k: v for k, v in sorted(vars(args).items())
                    if k not in ("func", "manifest", "config")},
        "emitted_files": list(emitted),
    }
    if config is not None:
        doc["config"] = raw_config
        doc["resolved_config"] = config.to_dict()
        doc["derived_params"] = params.derive(config).to_dict()
    if args.manifest is True:
        base = emitted[0] if emitted and emitted[0] != "-" else command
        path = f"{base}.manifest.json"
    else:
        path = args.manifest
    _write_atomic(path, json.dumps(doc, indent=2) + "\n")


def cmd_params(args):
    config, raw = _resolve_config(args.config)
    derived = params.derive(config)
    report = derived.to_dict()
    report["regime_warnings"] = [w._asdict() for w in params.validate_regime(config)]
    _write_atomic(args.out, json.dumps(report, indent=2) + "\n")
    return [args.out], raw, config


def _time(args, config) -> float:
    return args.time if args.time is not None else config.screen_distance_D / config.velocity


def cmd_pattern(args):
    config, raw = _resolve_config(args.config)
    if args.points < 2:
        raise CliError("--points must be at least 2")
    t = _time(args, config)
    x = interference.default_x_grid(args.points, interference.DEFAULT_HALF_WIDTH)
    if args.xmin is not None or args.xmax is not None:
        lo = args.xmin if args.xmin is not None else -interference.DEFAULT_HALF_WIDTH
        hi = args.xmax if args.xmax is not None else interference.DEFAULT_HALF_WIDTH
        if not hi > lo:
            raise CliError("--xmax must exceed --xmin")
        x = np.linspace(lo, hi, args.points)
    grid = interference.pattern_analytic(config, t, x)
    header = ["x_m", "density_per_m"]
    columns = [grid.x_samples, grid.density]
    if args.oracle:
        oracle = interference.pattern_numeric_oracle(config, t, x)
        header.append("density_oracle_per_m")
        columns.append(oracle.density)
    _write_atomic(args.out, _csv(header, zip(*columns)))
    return [args.out], raw, config


def cmd_joint(args):
    config, raw = _resolve_config(args.config)
    if args.xpoints < 1 or args.kpoints < 1:
        raise CliError("--xpoints and --kpoints must be positive")
    t = _time(args, config)
    default_x = interference.default_x_grid(2, interference.DEFAULT_HALF_WIDTH)
    default_k = interference.default_k_grid(config, 2)
    xlo = args.xmin if args.xmin is not None else default_x[0]
    xhi = args.xmax if args.xmax is not None else default_x[-1]
    klo = args.kmin if args.kmin is not None else default_k[0]
    khi = args.kmax if args.kmax is not None else default_k[-1]
    x = [xlo] if args.xpoints == 1 else np.linspace(xlo, xhi, args.xpoints)
    k = [klo] if args.kpoints == 1 else np.linspace(klo, khi, args.kpoints)
    grid = interference.joint_xk_distribution(config, t, x, k)
    rows = ((xi, kj, grid.density[i, j])
            for i, xi in enumerate(grid.x_samples) for j, kj in enumerate(grid.k_samples))
    _write_atomic(args.out, _csv(["x_m", "k_per_m", "density"], rows))
    return [args.out], raw, config


def cmd_info_curve(args):
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    unknown = [m for m in methods if m not in quantum_info.METHODS]
    if not methods or unknown:
        raise CliError(f"unknown method {unknown[0] if unknown else ''!r}; "
                       f"valid methods: {', '.join(quantum_info.METHODS)}")
    if args.points < 3:
        raise CliError("--points must be at least 3")
    curve = quantum_info.info_curve(methods, args.points)
    columns = [curve.visibility_samples] + [curve.values[m] for m in methods]
    _write_atomic(args.out, _csv(["visibility"] + methods, zip(*columns)))
    return [args.out], None, None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="whichway", description=__doc__.splitlines()[0] if __doc__ else None)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out_default="-"):
        p.add_argument("--out", default=out_default, help="output path, '-' for stdout")
        p.add_argument("--manifest", nargs="?", const=True, default=None,
                       help="write a run manifest (default: <out>.manifest.json)")

    p = sub.add_parser("params", help="derived parameters and regime warnings as JSON")
    p.add_argument("config")
    common(p)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("pattern", help="screen density as CSV")
    p.add_argument("config")
    p.add_argument("--time", type=float, help="evaluation time in s (default D/v)")
    p.add_argument("--xmin", type=float)
    p.add_argument("--xmax", type=float)
    p.add_argument("--points", type=int, default=interference.DEFAULT_POINTS)
    p.add_argument("--oracle", action="store_true", help="add the quadrature-oracle column")
    common(p)
    p.set_defaults(func=cmd_pattern)

    p = sub.add_parser("joint", help="joint electron-position / proton-wavenumber density as CSV")
    p.add_argument("config")
    p.add_argument("--time", type=float)
    p.add_argument("--xmin", type=float)
    p.add_argument("--xmax", type=float)
    p.add_argument("--xpoints", type=int, default=201)
    p.add_argument("--kmin", type=float)
    p.add_argument("--kmax", type=float)
    p.add_argument("--kpoints", type=int, default=201)
    common(p)
    p.set_defaults(func=cmd_joint)

    p = sub.add_parser("info-curve", help="information gain versus visibility as CSV")
    p.add_argument("--methods", default=",".join(quantum_info.METHODS))
    p.add_argument("--points", type=int, default=99)
    common(p)
    p.set_defaults(func=cmd_info_curve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        emitted, raw, config = args.func(args)
        if args.manifest is not None:
            _manifest(args, args.command, raw, config, emitted)
    except CliError as exc:
        print(f"whichway {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (QuadratureError, ValueError) as exc:
        print(f"whichway {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
