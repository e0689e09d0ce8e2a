"""Command line interface: per-curve reports, pencil sweeps and verification.

Exit codes:
  0  success
  1  verification failure
  2  singular input curve
  3  numerical inconsistency
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields

import numpy as np

from . import acceptance
from .autgroup import generate, invariant_subgroup
from .catalog import NAMED, CurveId, build_curve, parse_parameter, pencil_generators
from .polyalg import HomPoly3
from .errors import SingularCurveError, WeierquarticError
from .weierstrass import CurveReport, transitivity_report

log = logging.getLogger("weierquartic")

CONFIG_ENV = "WEIERQUARTIC_CONFIG"
EXIT_OK, EXIT_FAIL, EXIT_SINGULAR, EXIT_NUMERICS = 0, 1, 2, 3


@dataclass
class RunConfig:
    polish_tol: float = 1e-12
    cluster_eps: float = 1e-6
    drop_tol: float = 1e-12
    output_format: str = "json"
    workers: int = 1

    def __post_init__(self):
        for name in ("polish_tol", "cluster_eps", "drop_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.polish_tol * 1e3 > self.cluster_eps:
            raise ValueError("polish_tol must be at least 1e3 times smaller than cluster_eps")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.output_format not in ("json", "csv", "text"):
            raise ValueError(f"unknown output format {self.output_format!r}")

    @classmethod
    def load(cls, path: str | None = None, **overrides) -> "RunConfig":
        """Defaults, then the JSON file at ``path`` (or $WEIERQUARTIC_CONFIG),
        then explicit overrides that are not None."""
        values = {}
        path = path or os.environ.get(CONFIG_ENV)
        if path:
            with open(path) as fh:
                values.update(json.load(fh))
        known = {f.name for f in fields(cls)}
        unknown = set(values) - known
        if unknown:
            raise ValueError(f"unknown config keys {sorted(unknown)}")
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _num(x: float) -> float:
    # 15 significant digits survive a text round trip unchanged
    return float(f"{x:.15g}")


def _complex_pair(c: complex) -> list[float]:
    return [_num(c.real), _num(c.imag)]


def report_to_dict(r: CurveReport) -> dict:
    return {
        "curve_id": r.curve_id,
        "smooth": r.smooth,
        "group_order": r.group_order,
        "wp_count": r.wp_count,
        "weight_histogram": {str(k): v for k, v in r.weight_histogram.items()},
        "orbit_sizes": list(r.orbit_sizes),
        "transitive": r.transitive,
        "signature": {"genus": r.signature.quotient_genus, "periods": list(r.signature.periods)},
        "hurwitz_bound_ok": r.hurwitz_bound_ok,
        "points": [
            {
                "coords": [_complex_pair(c) for c in d.point.coords],
                "weight": d.weight,
                "gaps": list(d.gap_sequence),
                "stabilizer_order": d.stabilizer_order,
                "orbit_id": d.orbit_id,
            }
            for d in r.points
        ],
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2)


def report_text(r: CurveReport) -> str:
    lines = [
        f"curve            {r.curve_id}",
        f"group order      {r.group_order}",
        f"weierstrass pts  {r.wp_count}  weights {r.weight_histogram}",
        f"orbits           {r.orbit_sizes}  transitive={r.transitive}",
        f"signature        {r.signature}",
        f"hurwitz bound    {'ok' if r.hurwitz_bound_ok else 'violated'}",
    ]
    for d in r.points:
        lines.append(f"  {d.point}  w={d.weight} gaps={d.gap_sequence} stab={d.stabilizer_order} orbit={d.orbit_id}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def group_for(cid: CurveId, F):
    G = generate(pencil_generators())
    if cid.pencil_parameter is not None:
        return G
    # the pencil group does not act on the klein and picard models
    return invariant_subgroup(G, F)


def build_report(cid: CurveId, config: RunConfig) -> CurveReport:
    F = build_curve(cid)
    F = HomPoly3(F.degree, F.coeffs, config.drop_tol)
    return transitivity_report(F, group_for(cid, F), str(cid), eps=config.cluster_eps)


def cmd_report(cid: CurveId, config: RunConfig, out=None) -> int:
    out = out or sys.stdout
    try:
        r = build_report(cid, config)
    except SingularCurveError as exc:
        err = {"curve_id": str(cid), "error": "singular", "message": str(exc)}
        if exc.witness is not None:
            err["witness"] = [_complex_pair(c) for c in exc.witness.coords]
        print(dumps(err), file=out)
        return EXIT_SINGULAR
    except WeierquarticError as exc:
        print(dumps({"curve_id": str(cid), "error": "numerics", "message": str(exc)}), file=out)
        log.error("numerical inconsistency: %s", exc)
        return EXIT_NUMERICS
    if config.output_format == "text":
        print(report_text(r), file=out)
    else:
        print(dumps(report_to_dict(r)), file=out)
    return EXIT_OK


SWEEP_COLUMNS = ["re", "im", "smooth", "wp_count", "n_orbits", "transitive", "weight2_count", "status"]


def sweep_row(t: complex, config: RunConfig) -> dict:
    row = {"re": _num(t.real), "im": _num(t.imag)}
    try:
        r = build_report(CurveId.pencil(t), config)
    except SingularCurveError:
        return {**row, "smooth": False, "wp_count": "", "n_orbits": "", "transitive": "", "weight2_count": "", "status": "singular"}
    except WeierquarticError as exc:
        return {**row, "smooth": "", "wp_count": "", "n_orbits": "", "transitive": "", "weight2_count": "", "status": f"error: {type(exc).__name__}"}
    return {
        **row,
        "smooth": True,
        "wp_count": r.wp_count,
        "n_orbits": len(r.orbit_sizes),
        "transitive": r.transitive,
        "weight2_count": r.weight_histogram.get(2, 0),
        "status": "ok",
    }


def _row_worker(args):
    t, config = args
    return sweep_row(t, config)


def cmd_sweep(grid: list[complex], config: RunConfig, out=None) -> int:
    out = out or sys.stdout
    if not grid:
        raise ValueError("empty grid")
    jobs = [(t, config) for t in grid]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            rows = list(pool.map(_row_worker, jobs))
    else:
        rows = [_row_worker(j) for j in jobs]
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    out.write(buf.getvalue())
    return EXIT_OK


def cmd_verify(config: RunConfig, only=None, out=None) -> int:
    out = out or sys.stdout
    settings = acceptance.Settings(eps=config.cluster_eps, polish_tol=config.polish_tol)
    results = []
    for name in acceptance.select(only):
        res = acceptance.run_check(name, settings)
        print(res.line(), file=out, flush=True)
        results.append(res)
    failed = [r.name for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed" + (f"; failed: {', '.join(failed)}" if failed else ""), file=out)
    return EXIT_FAIL if failed else EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _grid(args) -> list[complex]:
    if args.values:
        return [complex(v.replace("i", "j")) for v in args.values]
    re = np.linspace(*args.real[:2], int(args.real[2])) if args.real else np.array([0.0])
    im = np.linspace(*args.imag[:2], int(args.imag[2])) if args.imag else np.array([0.0])
    return [complex(a, b) for b in im for a in re]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="weierquartic",
        description="Weierstrass points and automorphism orbits of plane quartics.",
        epilog="exit codes: 0 ok, 1 verification failed, 2 singular curve, 3 numerical inconsistency. "
        f"A JSON config file may be given with --config or ${CONFIG_ENV}.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("--config", help="JSON file with RunConfig fields")
    p.add_argument("--cluster-eps", type=float)
    p.add_argument("--polish-tol", type=float)
    p.add_argument("--workers", type=int)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("report", help="full report for one curve")
    g = r.add_mutually_exclusive_group(required=True)
    g.add_argument("--pencil", nargs="+", metavar=("RE", "IM"), help="member t = RE + i IM of the pencil")
    g.add_argument("--named", choices=NAMED)
    r.add_argument("--format", choices=("json", "text"), dest="output_format")

    s = sub.add_parser("sweep", help="CSV summary over a grid of pencil parameters")
    s.add_argument("--values", nargs="+", help="explicit parameters such as 1.5 or 0.5+0.5j")
    s.add_argument("--real", nargs=3, type=float, metavar=("START", "STOP", "NUM"))
    s.add_argument("--imag", nargs=3, type=float, metavar=("START", "STOP", "NUM"))

    v = sub.add_parser("verify", help="run the verification checks")
    v.add_argument("--only", nargs="+", help=f"subset of {list(acceptance.CHECKS)} or 'weights'")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        config = RunConfig.load(
            args.config,
            cluster_eps=args.cluster_eps,
            polish_tol=args.polish_tol,
            workers=args.workers,
            output_format=getattr(args, "output_format", None),
        )
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.command == "report":
        if args.pencil:
            if len(args.pencil) > 2:
                print("--pencil takes RE [IM]", file=sys.stderr)
                return EXIT_FAIL
            cid = CurveId.pencil(parse_parameter(*args.pencil))
        else:
            cid = CurveId.named(args.named)
        return cmd_report(cid, config)
    if args.command == "sweep":
        if not (args.values or args.real or args.imag):
            print("sweep needs --values or --real/--imag", file=sys.stderr)
            return EXIT_FAIL
        return cmd_sweep(_grid(args), config)
    try:
        names = acceptance.select(args.only)
    except KeyError as exc:
        print(f"verify: {exc.args[0]}", file=sys.stderr)
        return EXIT_FAIL
    return cmd_verify(config, names)


if __name__ == "__main__":
    sys.exit(main())
