"""Batch command-line front door.

Subcommands: ingest, select-matrix, classify-fiber, select-fiber,
analyze, sweep, serve. Exit codes: 0 success, 1 domain/validation
error, 2 I/O error. Human output rounds to 6 significant decimals;
CSV/JSON outputs carry full precision.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from importlib import resources
from pathlib import Path

from . import __version__
from .fiberclass import (
    CriticalLengthInput,
    EmptyClassError,
    classify,
    critical_length,
    select_fiber,
)
from .fuzzysim import RequirementError, rank_by_similarity, requirement_from_json
from .laminate import (
    LaminateSpecError,
    analyze,
    laminate_spec_from_json,
    report_to_csv,
    report_to_dict,
    sweep_orientations,
    sweep_to_csv,
)
from .matdb import (
    IngestError,
    MaterialDb,
    SchemaError,
    ingest_fibers,
    ingest_polymers,
    load_db,
    save_db,
)


def data_path(name: str) -> Path:
    """Path of a bundled data asset (seed CSVs, layup presets, ...)."""
    return Path(str(resources.files("frpkit").joinpath("data", name)))


def parse_theta_range(expr: str) -> list[float]:
    """Expand a start:stop:step range, inclusive of stop when aligned.

    The range must be ascending (or a single point as in "0:0:1") with a
    positive step.
    """
    parts = expr.split(":")
    if len(parts) != 3:
        raise ValueError(f"malformed range {expr!r} (expected start:stop:step)")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise ValueError(f"malformed range {expr!r}: non-numeric part") from None
    if stop < start:
        raise ValueError(f"malformed range {expr!r}: descending")
    if step <= 0:
        raise ValueError(f"malformed range {expr!r}: step must be > 0")
    if start == stop:
        return [start]
    n = int(math.floor((stop - start) / step + 1e-9))
    return [start + k * step for k in range(n + 1)]


def _read_text(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_db_arg(args) -> MaterialDb:
    if not args.db:
        raise ValueError("this command needs --db")
    return load_db(args.db)


def _print_ranked(results, fmt: str, extra: dict | None = None) -> None:
    if fmt == "json":
        doc = dict(extra or {})
        doc["results"] = [
            {"rank": r.rank, "name": r.record_name, "strength": r.strength}
            for r in results]
        print(json.dumps(doc, indent=2))
        return
    print("rank,name,strength")
    for r in results:
        print(f"{r.rank},{r.record_name},{r.strength:.6f}")


def _cmd_ingest(args) -> int:
    with open(args.polymers, newline="", encoding="utf-8") as fh:
        polymers = ingest_polymers(fh, fmt=args.input_format)
    with open(args.fibers, newline="", encoding="utf-8") as fh:
        fibers = ingest_fibers(fh, fmt=args.input_format)
    db = MaterialDb(polymers=tuple(polymers), fibers=tuple(fibers))
    save_db(db, args.db)
    print(f"polymers ingested: {len(polymers)}")
    print(f"fibers ingested: {len(fibers)}")
    print("rows rejected: 0")
    print(f"db written: {args.db}")
    return 0


def _cmd_select_matrix(args) -> int:
    db = _load_db_arg(args)
    req = requirement_from_json(_read_text(args.requirements))
    if req.schema != "polymer":
        raise ValueError("select-matrix needs a polymer-schema requirement")
    results = rank_by_similarity(req, db.polymers, normalize=args.normalize)
    if args.top is not None:
        results = results[: args.top]
    _print_ranked(results, args.format)
    return 0


def _resolve_classify_inputs(args, db: MaterialDb | None):
    if args.name:
        if db is None:
            raise ValueError("--name needs --db to resolve the fiber")
        fiber = db.fiber(args.name)
        return fiber.tensile_strength, fiber.diameter, fiber.length
    missing = [flag for flag, v in (("--sigma-f", args.sigma_f),
                                    ("--diameter", args.diameter),
                                    ("--length", args.length)) if v is None]
    if missing:
        raise ValueError(f"classify-fiber needs --name or the full triple; "
                         f"missing {', '.join(missing)}")
    return args.sigma_f, args.diameter, args.length


def _cmd_classify_fiber(args) -> int:
    db = load_db(args.db) if args.db else None
    sigma_f, diameter, length = _resolve_classify_inputs(args, db)
    if args.tau_c is None:
        raise ValueError("classify-fiber needs --tau-c")
    l_c = critical_length(CriticalLengthInput(sigma_f=sigma_f, d=diameter,
                                              tau_c=args.tau_c))
    cls = classify(length, l_c)
    if args.format == "json":
        print(json.dumps({"l_c": l_c, "class": cls.value}))
    else:
        print(f"l_c={l_c:.6g} class={cls.value}")
    return 0


def _cmd_select_fiber(args) -> int:
    db = _load_db_arg(args)
    req = requirement_from_json(_read_text(args.requirements))
    matrix = db.polymer(args.matrix) if args.matrix else None
    if matrix is None and args.tau_c is None:
        raise ValueError("select-fiber needs --matrix (or --tau-c to override)")
    fiber_class, results = select_fiber(
        req, db.fibers, matrix, tau_c_override=args.tau_c,
        normalize=args.normalize)
    if args.top is not None:
        results = results[: args.top]
    if args.format == "json":
        _print_ranked(results, "json", extra={"class": fiber_class.value})
    else:
        print(f"# class={fiber_class.value}")
        _print_ranked(results, "csv")
    return 0


def _cmd_analyze(args) -> int:
    spec = laminate_spec_from_json(_read_text(args.laminate))
    report = analyze(spec)
    if args.format == "json":
        payload = json.dumps(report_to_dict(report), indent=2) + "\n"
    else:
        payload = report_to_csv(report)
    Path(args.out).write_text(payload, encoding="utf-8")
    print(f"mean_clme={report.mean_clme:.6g}")
    print(f"mean_ctme={report.mean_ctme:.6g}")
    print(f"report written: {args.out}")
    return 0


def _cmd_sweep(args) -> int:
    spec = laminate_spec_from_json(_read_text(args.laminate))
    thetas = parse_theta_range(args.thetas)
    points = sweep_orientations(spec, thetas)
    if args.format == "json":
        payload = json.dumps(
            [{"theta_deg": p.theta_deg, "mean_clme": p.mean_clme,
              "mean_ctme": p.mean_ctme} for p in points], indent=2) + "\n"
    else:
        payload = sweep_to_csv(points)
    Path(args.out).write_text(payload, encoding="utf-8")
    print(f"sweep rows: {len(points)}")
    print(f"sweep written: {args.out}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    db = _load_db_arg(args)
    host, _, port = args.listen.rpartition(":")
    if not host or not port.isdigit():
        raise ValueError(f"malformed --listen {args.listen!r} (expected host:port)")
    uvicorn.run(create_app(db), host=host, port=int(port))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--db", help="material DB file (JSON)")
    common.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="output format (default csv)")
    common.add_argument("--normalize", action="store_true",
                        help="min-max normalize feature dimensions before ranking")
    common.add_argument("--tau-c", type=float, default=None, dest="tau_c",
                        help="fiber-matrix bond strength override, MPa")

    parser = argparse.ArgumentParser(
        prog="frpkit",
        description="Composite design toolkit: material retrieval, fiber "
                    "classification, and laminate stiffness analysis.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", parents=[common],
                       help="build a material DB from polymer and fiber tables")
    p.add_argument("--polymers", required=True, help="polymer CSV/JSON file")
    p.add_argument("--fibers", required=True, help="fiber CSV/JSON file")
    p.add_argument("--input-format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("select-matrix", parents=[common],
                       help="rank matrix materials against a requirement file")
    p.add_argument("requirements", help="requirement JSON file")
    p.add_argument("--top", type=int, default=None,
                   help="limit output to the top K matches")
    p.set_defaults(func=_cmd_select_matrix)

    p = sub.add_parser("classify-fiber", parents=[common],
                       help="compute critical length and the length class")
    p.add_argument("--name", help="fiber name in the DB")
    p.add_argument("--sigma-f", type=float, dest="sigma_f",
                   help="fiber tensile strength, MPa")
    p.add_argument("--diameter", type=float, help="fiber diameter, mm")
    p.add_argument("--length", type=float, help="fiber length, mm")
    p.set_defaults(func=_cmd_classify_fiber)

    p = sub.add_parser("select-fiber", parents=[common],
                       help="rank fibers of the predicted length class")
    p.add_argument("requirements", help="fiber requirement JSON file")
    p.add_argument("--matrix", help="matrix name supplying the bond strength")
    p.add_argument("--top", type=int, default=None)
    p.set_defaults(func=_cmd_select_fiber)

    p = sub.add_parser("analyze", parents=[common],
                       help="per-plane stiffness report for a laminate spec")
    p.add_argument("laminate", help="laminate spec JSON file")
    p.add_argument("--out", required=True, help="report output file")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("sweep", parents=[common],
                       help="mean stiffness over an orientation range")
    p.add_argument("laminate", help="laminate spec JSON file")
    p.add_argument("--thetas", required=True,
                   help="orientation range start:stop:step, degrees, "
                        "inclusive of stop when aligned")
    p.add_argument("--out", required=True, help="sweep output file")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("serve", parents=[common],
                       help="run the JSON HTTP service on the loaded DB")
    p.add_argument("--listen", default="127.0.0.1:8760", help="host:port")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename or exc}", file=sys.stderr)
        return 2
    except IsADirectoryError as exc:
        print(f"error: not a file: {exc.filename or exc}", file=sys.stderr)
        return 2
    except PermissionError as exc:
        print(f"error: permission denied: {exc.filename or exc}", file=sys.stderr)
        return 2
    except (IngestError, SchemaError, RequirementError, LaminateSpecError,
            EmptyClassError, ValueError, KeyError) as exc:
        message = exc.args[0] if exc.args else str(exc)
        print(f"error: {message}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: I/O failure: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    """Console-script entry point."""
    sys.exit(main())


if __name__ == "__main__":
    run()
