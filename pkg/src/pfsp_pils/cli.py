"""Command-line interface: ``pfsp-pils {solve,oracle,metrics,sample,experiment,generate}``.

Output files land at ``--out`` when given, otherwise under the directory named
by ``$PFSP_PILS_OUTPUT_DIR`` when set, otherwise JSON goes to stdout.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import harness
from .errors import InvalidInputError, OracleSizeError, ParseError
from .io import (
    JOB_MAJOR,
    LAYOUTS,
    RunRecord,
    archive_to_json,
    format_instance,
    format_vectors,
    generate_due_dates,
    generate_instance,
    parse_instance,
    read_vectors,
    write_front,
    write_instance,
    write_run_record,
)
from .metrics import ReferenceSet, compute_d1_d2
from .model import ObjectiveSet
from .oracle import DEFAULT_LIMIT, exact_front
from .search import ALGORITHMS, SearchConfig, run

log = logging.getLogger("pfsp_pils")
OUTPUT_ENV = "PFSP_PILS_OUTPUT_DIR"


class UsageError(Exception):
    pass


def _objectives(text: str) -> ObjectiveSet:
    try:
        return ObjectiveSet.parse(text)
    except InvalidInputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _out_path(args, default_name: str) -> Path | None:
    if args.out:
        return Path(args.out)
    env = os.environ.get(OUTPUT_ENV)
    if env:
        Path(env).mkdir(parents=True, exist_ok=True)
        return Path(env) / default_name
    return None


def _load(args):
    inst = parse_instance(Path(args.instance), layout=args.layout)
    tf = getattr(args, "tf", None)
    if tf is not None and not inst.has_due_dates:
        inst = generate_due_dates(inst, tf)
    elif not inst.has_due_dates:
        log.warning("%s has no due dates; tardiness is measured against d = 0", args.instance)
    return inst


def cmd_solve(args) -> int:
    inst = _load(args)
    budget = args.budget if args.budget is not None else harness.default_budget(inst.n)
    progress = None
    if args.progress:
        progress = lambda evals, size: log.info("%d evaluations, archive size %d", evals, size)  # noqa: E731
    cfg = SearchConfig(args.algorithm, budget, args.seed, args.objectives, descent=args.descent,
                       mos_restart=args.mos_restart, progress=progress, progress_interval=args.progress or 100_000)
    result = run(inst, cfg)
    record = RunRecord.from_result(result, inst.name)
    out = _out_path(args, f"{inst.name}_{args.algorithm}_s{args.seed}.json")
    if out is None:
        sys.stdout.write(json.dumps(vars(record), indent=2) + "\n")
    else:
        write_run_record(record, out)
    print(f"{args.algorithm}: {len(result.archive)} non-dominated vectors, {result.evaluations} evaluations",
          file=sys.stderr)
    return 0


def cmd_oracle(args) -> int:
    inst = _load(args)
    front = exact_front(inst, args.objectives, limit=args.limit)
    out = _out_path(args, f"{inst.name}_front.json")
    if out is None:
        sys.stdout.write(json.dumps({"instance": inst.name, "objectives": list(args.objectives.criteria),
                                     "archive": archive_to_json(front)}, indent=2) + "\n")
    else:
        write_front(front, args.objectives, out, inst.name)
    print(f"exact front: {len(front)} vectors", file=sys.stderr)
    return 0


def cmd_metrics(args) -> int:
    approx = read_vectors(args.approx)
    ref = ReferenceSet(read_vectors(args.reference))
    rep = compute_d1_d2(approx, ref)
    print(f"D1={rep.d1:.6g} D2={rep.d2:.6g}")
    return 0


def cmd_sample(args) -> int:
    inst = _load(args)
    res = harness.random_sample(inst, args.count, args.seed, args.objectives, bins=args.bins)
    out = _out_path(args, f"{inst.name}_sample.tsv")
    if out is None:
        sys.stdout.write(format_vectors(res.vectors, list(args.objectives.criteria)))
    else:
        res.write(out)
    return 0


def cmd_generate(args) -> int:
    inst = generate_instance(args.jobs, args.machines, args.seed, args.pmax, args.tf)
    if args.out:
        write_instance(inst, args.out)
    else:
        sys.stdout.write(format_instance(inst))
    return 0


def _experiment_instances(cfg: dict, base: Path) -> dict:
    entries = cfg.get("instances")
    if not entries:
        raise UsageError("experiment config needs a non-empty 'instances' list")
    layout = cfg.get("layout", JOB_MAJOR)
    default_tf = cfg.get("tf")
    out = {}
    for entry in entries:
        if isinstance(entry, str):
            entry = {"path": entry}
        tf = entry.get("tf", default_tf)
        if "path" in entry:
            inst = parse_instance(base / entry["path"], layout=entry.get("layout", layout))
        elif "generate" in entry:
            g = entry["generate"]
            inst = generate_instance(int(g["jobs"]), int(g["machines"]), int(g.get("seed", 1)), int(g.get("pmax", 99)))
        else:
            raise UsageError(f"instance entry needs 'path' or 'generate': {entry}")
        if tf is not None and not inst.has_due_dates:
            inst = generate_due_dates(inst, float(tf))
        out[entry.get("name", inst.name)] = inst
    return out


def cmd_experiment(args) -> int:
    path = Path(args.config)
    try:
        cfg = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid experiment config: {exc.msg}", exc.lineno) from None
    instances = _experiment_instances(cfg, path.parent)
    objectives = ObjectiveSet.parse(cfg.get("objectives", "cmax,tsum"))
    options = {k: cfg[k] for k in ("descent", "mos_restart") if k in cfg}
    report = harness.run_experiment(
        instances,
        algorithms=cfg.get("algorithms", list(ALGORITHMS)),
        runs=int(cfg.get("runs", 20)),
        budgets=cfg.get("budget"),
        objectives=objectives,
        oracle_limit=int(cfg.get("oracle_limit", DEFAULT_LIMIT)),
        workers=int(cfg.get("workers", 1)),
        search_options=options,
    )
    out_dir = args.out or cfg.get("out") or os.environ.get(OUTPUT_ENV) or "experiment_out"
    report.write(out_dir)
    if "descent_cost" in cfg:
        dc = cfg["descent_cost"]
        table = harness.measure_descent_cost(instances, int(dc.get("samples", 30)), int(dc.get("seed", 0)), objectives)
        (Path(out_dir) / "descent_cost.tsv").write_text(harness.format_descent_table(table))
    sys.stdout.write(report.format_table())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pfsp-pils", description="Multi-objective permutation flow shop scheduling with PILS and MOS.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def instance_flags(p, tf=True):
        p.add_argument("--instance", required=True, help="instance file (job-major unless --layout says otherwise)")
        p.add_argument("--layout", choices=LAYOUTS, default=JOB_MAJOR, help="orientation of the processing-time block")
        p.add_argument("--objectives", type=_objectives, default=ObjectiveSet.parse("cmax,tsum"),
                       help="comma-separated criteria from cmax,csum,tsum,csum_avg,tsum_avg (default cmax,tsum)")
        if tf:
            p.add_argument("--tf", type=float, help="tardiness factor for due dates when the file has none")
        p.add_argument("--out", help="output file")

    p = sub.add_parser("solve", help="run PILS or MOS once")
    instance_flags(p)
    p.add_argument("--algorithm", choices=ALGORITHMS, default="pils", help="search engine (default pils)")
    p.add_argument("--budget", type=int, help="evaluation budget (default by instance size: 1e6 / 5e6 / 1e7)")
    p.add_argument("--seed", type=int, default=1, help="random seed (default 1)")
    p.add_argument("--descent", choices=("first", "full"), default="first", help="PILS neighborhood scan mode")
    p.add_argument("--mos-restart", choices=("episode", "redraw"), default="episode", help="MOS restart scheme")
    p.add_argument("--progress", type=int, default=0, metavar="N", help="log progress every N evaluations")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="exact Pareto front by enumerating all permutations")
    instance_flags(p)
    p.add_argument("--limit", type=int, default=DEFAULT_LIMIT, help=f"largest n to enumerate (default {DEFAULT_LIMIT})")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("metrics", help="D1/D2 of an approximation against a reference set")
    p.add_argument("--approx", required=True, help="run record, front file or tabular vector file")
    p.add_argument("--reference", required=True, help="run record, front file or tabular vector file")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("sample", help="evaluate uniformly random permutations")
    instance_flags(p)
    p.add_argument("--count", type=int, required=True, help="number of random permutations")
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    p.add_argument("--bins", type=int, default=100, help="histogram bins per axis (default 100)")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("experiment", help="multi-run experiment from a JSON config")
    p.add_argument("--config", required=True, help="JSON experiment description")
    p.add_argument("--out", help="output directory (overrides the config's 'out')")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("generate", help="random instance with uniform processing times")
    p.add_argument("--jobs", type=int, required=True, help="number of jobs n")
    p.add_argument("--machines", type=int, required=True, help="number of machines m")
    p.add_argument("--seed", type=int, default=1, help="random seed (default 1)")
    p.add_argument("--pmax", type=int, default=99, help="largest processing time (default 99)")
    p.add_argument("--tf", type=float, help="also write due dates with this tardiness factor")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (OracleSizeError, ParseError, InvalidInputError, UsageError, OSError, ValueError) as exc:
        print(f"pfsp-pils {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
