"""Command-line interface.

``cmapgeom check --config FILE [--out report.json]``
    run the verification suite; exit 0 when every asserted check passes,
    1 when one fails, 2 when the config cannot be used.

``cmapgeom eval --config FILE --point JSON [--route fs|twistor|both]``
    dump metric matrices at one point (row-major, frozen basis order).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import checks, qk_metric, twistor
from .errors import CMapError, ConfigurationError, OutsideDomainError
from .prepotential import from_config
from .special_kahler import domain_check

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def load_config(path) -> dict:
    try:
        cfg = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(cfg, dict) or "model" not in cfg:
        raise ConfigurationError("config must be a JSON object with a 'model' key")
    version = cfg.get("schema_version", checks.SCHEMA_VERSION)
    if version != checks.SCHEMA_VERSION:
        raise ConfigurationError(f"unsupported schema_version {version}")
    return cfg


def resolve(cfg: dict):
    P = from_config(cfg["model"])
    sweep = {**checks.DEFAULT_SWEEP, **cfg.get("sweep", {})}
    unknown = set(cfg.get("tolerances", {})) - set(checks.DEFAULT_TOLERANCES)
    if unknown:
        raise ConfigurationError(f"unknown tolerances: {sorted(unknown)}")
    tolerances = {**checks.DEFAULT_TOLERANCES, **cfg.get("tolerances", {})}
    enabled = {name: True for name in checks.CHECK_NAMES}
    # curvature stencils grow as dim^4; larger models opt in
    enabled["einstein"] = P.n <= 1
    flags = cfg.get("checks", {})
    unknown = set(flags) - set(checks.CHECK_NAMES)
    if unknown:
        raise ConfigurationError(f"unknown checks: {sorted(unknown)}")
    enabled.update({k: bool(v) for k, v in flags.items()})
    if int(sweep["points"]) < 1:
        raise ConfigurationError("sweep.points must be positive")
    return P, sweep, tolerances, enabled


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_check(args) -> int:
    cfg = load_config(args.config)
    P, sweep, tolerances, enabled = resolve(cfg)
    report = checks.run_suite(P, sweep, tolerances, enabled)
    text = dumps(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    for c in report["checks"]:
        print(f"{c['status']:>7}  {c['name']}", file=sys.stderr)
    return EXIT_OK if report["summary"]["ok"] else EXIT_FAIL


def parse_point(source: str, n: int) -> qk_metric.FSPoint:
    text = Path(source).read_text() if Path(source).is_file() else source
    try:
        d = json.loads(text)
        Z = [complex(re, im) for re, im in d.get("Z", [])]
        pt = qk_metric.FSPoint.make(d["phi"], d["sigma"], d["A"], d["B"], Z)
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ConfigurationError(f"cannot parse point: {exc}") from exc
    if pt.n != n or len(pt.B) != n + 1 or len(pt.Z) != n + 1:
        raise ConfigurationError(f"point dimensions do not match n = {n}")
    return pt


def cmd_eval(args) -> int:
    cfg = load_config(args.config)
    P = from_config(cfg["model"])
    pt = parse_point(args.point, P.n)
    rep = domain_check(P, pt.Z)
    if not rep.ok:
        sys.stdout.write(dumps({"schema_version": checks.SCHEMA_VERSION, "error": "outside_domain",
                                "verdict": rep.failing, "domain": rep.as_dict()}))
        print(f"point outside the positivity domain: {rep.failing}", file=sys.stderr)
        return EXIT_FAIL
    out = {"schema_version": checks.SCHEMA_VERSION, "model": P.describe(),
           "basis": qk_metric.basis_labels(P.n), "point": pt.as_dict()}
    if args.route in ("fs", "both"):
        out["fs_metric"] = qk_metric.fs_metric(P, pt).tolist()
    if args.route in ("twistor", "both"):
        out["twistor_metric"] = twistor.pulled_back_twistor_metric(P, pt).tolist()
    if args.route == "both":
        out["comparison"] = twistor.compare_metrics(P, pt).as_dict()
    sys.stdout.write(dumps(out))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cmapgeom", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check", help="run the verification suite")
    p.add_argument("--config", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_check)
    p = sub.add_parser("eval", help="metric matrices at one point")
    p.add_argument("--config", required=True)
    p.add_argument("--point", required=True, help="JSON object or path to one")
    p.add_argument("--route", choices=("fs", "twistor", "both"), default="fs")
    p.add_argument("--format", choices=("json",), default="json")
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OutsideDomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except CMapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
