"""Command-line interface.

Subcommands: generate, solve, frontier, benchmark, oracle, serve.  Exit
codes: 0 success, 2 invalid input or configuration, 3 exhaustive-scan guard
rejection, 4 internal failure.  Identical command lines (same seeds)
produce byte-identical output files; ``--no-timestamp`` additionally
suppresses the wall-clock fields in report files so those too are
byte-stable across repeats.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__, formats, instgen, kernels, oracle
from .bench import default_workers, run_benchmark
from .errors import (ConfigError, InfeasibleAssignmentError,
                     InvalidInstanceError, OracleGuardError, SchemaError)
from .neighborhoods import NeighborhoodKind
from .search import Mode, SearchConfig, run_vns


def _load_cli_instance(args):
    if getattr(args, "matrix", False):
        return formats.load_weight_matrix(args.instance, w_max=args.w_max,
                                          normalize=args.normalize)
    return formats.load_instance(args.instance, normalize=args.normalize)


def _add_instance_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("instance", help="instance file (JSON)")
    p.add_argument("--matrix", action="store_true",
                   help="treat the input as a plain weight matrix export")
    p.add_argument("--w-max", type=int, default=None,
                   help="row total for matrix imports (default: first row's sum)")
    p.add_argument("--normalize", action="store_true",
                   help="rescale weight rows to sum to w_max instead of rejecting")


def _parse_targets(text: str) -> list[int]:
    targets: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part:
            lo, hi = part.split("-", 1)
            targets.extend(range(int(lo), int(hi) + 1))
        else:
            targets.append(int(part))
    if not targets:
        raise ConfigError(f"no targets in '{text}'")
    return targets


def _parse_kinds(text: str | None):
    if text is None:
        return None
    kinds = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            kinds.append(NeighborhoodKind(part))
        except ValueError:
            valid = ", ".join(k.value for k in NeighborhoodKind)
            raise ConfigError(f"unknown neighborhood '{part}' (valid: {valid})")
    if not kinds:
        raise ConfigError("no neighborhoods given")
    return tuple(kinds)


def cmd_generate(args) -> int:
    if args.base is not None:
        if args.n_target is None:
            raise ConfigError("--base requires --n-target")
        base = formats.load_instance(args.base)
        inst = instgen.derive_family(base, args.n_target, seed=args.seed)
    else:
        if args.n is None or args.m is None:
            raise ConfigError("need --n and --m (or --base with --n-target)")
        inst = instgen.random_instance(args.n, args.m, w_max=args.w_max,
                                       k=args.groups, seed=args.seed,
                                       favored_topics=args.favored_topics,
                                       favored_share=args.favored_share)
    formats.save_instance(inst, args.out)
    print(f"wrote instance n={inst.n} m={inst.m} w_max={inst.w_max} "
          f"groups={inst.num_groups} to {args.out}")
    return 0


def cmd_solve(args) -> int:
    inst = _load_cli_instance(args)
    config = SearchConfig(mode=Mode(args.mode),
                          neighborhoods=_parse_kinds(args.neighborhoods),
                          max_evaluations=args.evals, seed=args.seed,
                          archive_cap=args.cap)
    archive, report = run_vns(inst, config)
    if args.no_timestamp:
        report.wall_time_s = 0.0
    for kind, reason in report.excluded:
        print(f"excluded {kind.value}: {reason}")
    for out, count, capped in report.best:
        extra = " (cap reached)" if capped else ""
        print(f"utility {out.utility}  imbalance {out.imbalance} "
              f"({float(out.imbalance):.4f})  alternatives {count}{extra}")
    if args.out_archive:
        formats.save_archive(archive, args.out_archive)
        print(f"archive written to {args.out_archive}")
    if args.out_report:
        formats.save_report(report, args.out_report,
                            timestamp=not args.no_timestamp)
        print(f"report written to {args.out_report}")
    return 0


def cmd_frontier(args) -> int:
    inst = _load_cli_instance(args)
    config = SearchConfig(mode=Mode.BI,
                          neighborhoods=_parse_kinds(args.neighborhoods),
                          max_evaluations=args.evals, seed=args.seed,
                          archive_cap=args.cap)
    archive, report = run_vns(inst, config)
    lines = ["utility\timbalance\timbalance_value\talternatives\tcap_reached"]
    for out, count, capped in archive.summary():
        lines.append(f"{out.utility}\t{out.imbalance}\t"
                     f"{float(out.imbalance):.6f}\t{count}\t"
                     f"{'yes' if capped else 'no'}")
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"{len(archive.points)} points written to {args.out}")
    else:
        sys.stdout.write(text)
    if args.out_archive:
        formats.save_archive(archive, args.out_archive)
        print(f"archive written to {args.out_archive}")
    return 0


def cmd_benchmark(args) -> int:
    targets = _parse_targets(args.targets)
    formats.load_instance(args.base)
    workers = args.workers if args.workers is not None else default_workers()

    def progress(done, total):
        if args.quiet:
            return
        sys.stderr.write(f"\r{done}/{total} runs")
        sys.stderr.flush()
        if done == total:
            sys.stderr.write("\n")

    table = run_benchmark(args.base, targets, runs=args.runs,
                          evaluations=args.evals, base_seed=args.seed,
                          workers=workers, progress=progress)
    text = table.to_text()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"table written to {args.out}")
    else:
        sys.stdout.write(text)
    if args.out_json:
        data = {"format_version": formats.FORMAT_VERSION, "kind": "benchmark"}
        data.update(table.as_dict())
        Path(args.out_json).write_text(json.dumps(data, indent=2) + "\n",
                                       encoding="utf-8")
        print(f"benchmark data written to {args.out_json}")
    if not args.quiet:
        sys.stderr.write(f"benchmark wall time {table.wall_time_s:.1f}s "
                         f"with {workers} worker(s)\n")
    return 0


def cmd_oracle(args) -> int:
    inst = _load_cli_instance(args)
    result = oracle.exact_frontier(inst, guard=args.guard)
    data = {
        "format_version": formats.FORMAT_VERSION,
        "kind": "oracle",
        "optimum_utility": result.optimum_utility,
        "optimal_count": result.optimal_count,
        "enumerated": result.enumerated,
        "frontier": [
            {"utility": out.utility,
             "imbalance": f"{out.imbalance.numerator}/{out.imbalance.denominator}",
             "imbalance_value": float(out.imbalance),
             "count": count}
            for out, count in result.frontier
        ],
    }
    text = json.dumps(data, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"oracle result written to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app
    app = create_app(data_dir=args.data_dir, parallel_jobs=args.parallel_jobs,
                     ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seminarassign",
        description="Assign students to seminar topics by reduced variable "
                    "neighborhood search.")
    parser.add_argument("--version", action="version",
                        version=f"seminarassign {__version__} "
                                f"(backend: {kernels.BACKEND})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a synthetic instance")
    p.add_argument("--n", type=int, default=None, help="number of students")
    p.add_argument("--m", type=int, default=None, help="number of topics")
    p.add_argument("--w-max", type=int, default=100, help="per-student weight total")
    p.add_argument("--groups", type=int, default=1, help="number of staff groups")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--favored-topics", type=int, default=2)
    p.add_argument("--favored-share", type=float, default=0.8)
    p.add_argument("--base", default=None,
                   help="resize this base instance instead of sampling fresh")
    p.add_argument("--n-target", type=int, default=None,
                   help="student count for --base resizing")
    p.add_argument("--out", required=True, help="output instance file")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("solve", help="run the search on an instance")
    _add_instance_input(p)
    p.add_argument("--mode", choices=[m.value for m in Mode], default="single")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--evals", type=int, default=100_000)
    p.add_argument("--neighborhoods", default=None,
                   help="comma-separated subset (default: all applicable)")
    p.add_argument("--cap", type=int, default=1000,
                   help="stored solutions per outcome point")
    p.add_argument("--out-archive", default=None)
    p.add_argument("--out-report", default=None)
    p.add_argument("--no-timestamp", action="store_true",
                   help="omit timestamp and wall time from the report file")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("frontier",
                       help="bi-objective run; emit the nondominated points")
    _add_instance_input(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--evals", type=int, default=100_000)
    p.add_argument("--neighborhoods", default=None)
    p.add_argument("--cap", type=int, default=1000)
    p.add_argument("--out", default=None, help="columnar output (default stdout)")
    p.add_argument("--out-archive", default=None)
    p.set_defaults(func=cmd_frontier)

    p = sub.add_parser("benchmark",
                       help="size sweep comparing single neighborhoods to VNS")
    p.add_argument("base", help="base instance file (JSON)")
    p.add_argument("--targets", default="30-45",
                   help="sizes, e.g. '30-45' or '30,34,40'")
    p.add_argument("--runs", type=int, default=25)
    p.add_argument("--evals", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=None,
                   help="parallel processes (default: SEMINARASSIGN_WORKERS "
                        "or the CPU count)")
    p.add_argument("--out", default=None, help="table output (default stdout)")
    p.add_argument("--out-json", default=None)
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_benchmark)

    p = sub.add_parser("oracle",
                       help="exhaustive optimum and frontier (small instances)")
    _add_instance_input(p)
    p.add_argument("--guard", type=int, default=oracle.DEFAULT_GUARD,
                   help="refuse when m^n exceeds this")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("serve", help="start the local HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--data-dir", default="seminarassign-data")
    p.add_argument("--parallel-jobs", type=int, default=1)
    p.add_argument("--ui-dir", default=None,
                   help="directory of built frontend assets to serve")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OracleGuardError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except (SchemaError, InvalidInstanceError, ConfigError,
            InfeasibleAssignmentError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # pragma: no cover - defensive
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
