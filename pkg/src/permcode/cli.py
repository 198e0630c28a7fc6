"""Command line entry point: ``permcode {run,sweep,bounds,oracle,verify}``."""

import argparse
import sys

from .code_store import CodeFormatError, CodeVerificationError, format_code, read_code, write_code
from .combinatorics import BENCHMARK_INSTANCES, bounds_report
from .config import SearchConfig
from .driver import run
from .experiments import (
    RESULT_FIELDS,
    SUMMARY_FIELDS,
    ExperimentPlan,
    emit_bounds_table,
    run_plan,
    summarize,
    to_csv,
)
from .oracle import InstanceTooLarge, exact_max_code, greedy_clique

RUN_FIELDS = ["n", "d", "variant", "fitness", "seed", "peak_size", "final_size",
              "target", "evals_used", "resets", "wall_ms"]


def _instances(text):
    out = []
    for chunk in text.replace(";", " ").split():
        n, d = chunk.split(",")
        out.append((int(n), int(d)))
    return out


def _csv_list(text):
    return tuple(x.strip() for x in text.split(",") if x.strip())


def _add_search_args(p):
    p.add_argument("--method", choices=["ea", "rs"], default="ea")
    p.add_argument("--fitness", choices=["f1", "f2", "f3", "f4"], default="f3")
    p.add_argument("--pop-size", type=int, default=1000)
    p.add_argument("--tournament", type=int, default=3)
    p.add_argument("--mutation-rate", type=float, default=0.3)
    p.add_argument("--cooling-clock", choices=["global", "since_reset"], default="since_reset")


def build_parser():
    parser = argparse.ArgumentParser(prog="permcode", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="build one code")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    _add_search_args(p)
    p.add_argument("--policy", choices=["plain", "reset"], default="reset")
    p.add_argument("--budget", type=int, default=10**7)
    p.add_argument("--target", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--crossovers", type=_csv_list, default=("pmx", "cx", "ox"))
    p.add_argument("--mutations", type=_csv_list, default=("swap", "inversion", "scramble"))
    p.add_argument("--output", help="write the largest code found to this file")
    p.add_argument("--events", help="write the (evaluations, size) trajectory as CSV")
    p.add_argument("--no-timing", action="store_true", help="omit wall-clock columns")

    p = sub.add_parser("sweep", help="run an experiment plan")
    p.add_argument("--instances", type=_instances, default=None,
                   help="e.g. '6,4;6,5' (default: the 15 benchmark instances)")
    p.add_argument("--variants", type=_csv_list, default=("EA1", "EA2", "RS1", "RS2"))
    p.add_argument("--fitness", type=_csv_list, default=("f1", "f2", "f3", "f4"))
    p.add_argument("--repetitions", type=int, default=None)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--seed", type=int, default=0, help="base seed; repetition i uses seed+i")
    p.add_argument("--pop-size", type=int, default=1000)
    p.add_argument("--tournament", type=int, default=3)
    p.add_argument("--mutation-rate", type=float, default=0.3)
    p.add_argument("--cooling-clock", choices=["global", "since_reset"], default="since_reset")
    p.add_argument("--quick", action="store_true", help="budget 10^5 and 3 repetitions")
    p.add_argument("--workers", type=int, default=None,
                   help="worker processes (default: $PERMCODE_WORKERS or 1)")
    p.add_argument("--output", help="per-run CSV (default: stdout)")
    p.add_argument("--summary", help="per-cell summary CSV")
    p.add_argument("--codes-dir", help="directory for the largest code of every run")
    p.add_argument("--no-timing", action="store_true", help="omit wall-clock columns")

    p = sub.add_parser("bounds", help="bounds on M(n, d)")
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--table", action="store_true", help="CSV for all benchmark instances")

    p = sub.add_parser("oracle", help="exact or greedy codes for tiny n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", default=True)
    mode.add_argument("--greedy", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output")

    p = sub.add_parser("verify", help="check a code file")
    p.add_argument("file")
    return parser


def _write(text, path):
    if path:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_run(args):
    config = SearchConfig(
        args.n, args.d,
        budget=args.budget, method=args.method, policy=args.policy, fitness=args.fitness,
        pop_size=args.pop_size, tournament=args.tournament, mutation_rate=args.mutation_rate,
        target=args.target, seed=args.seed, crossovers=args.crossovers,
        mutations=args.mutations, cooling_clock=args.cooling_clock,
    )
    record = run(config)
    ok, bad = record.peak_code.verify()
    row = {
        "n": config.n, "d": config.d, "variant": config.variant, "fitness": config.fitness,
        "seed": config.seed, "peak_size": record.peak_size, "final_size": record.final_size,
        "target": config.target_size, "evals_used": record.evals_used, "resets": record.resets,
        "wall_ms": round(record.wall_time * 1000),
    }
    sys.stdout.write(to_csv([row], RUN_FIELDS, timing=not args.no_timing))
    if args.output:
        write_code(args.output, record.peak_code,
                   comments=[f"{config.variant} fitness={config.fitness} seed={config.seed}"])
    if args.events:
        rows = [{"evaluations": e.evaluations, "size": e.size, "kind": e.kind}
                for e in record.events]
        _write(to_csv(rows, ["evaluations", "size", "kind"]), args.events)
    if not ok:
        print(f"verification failed: {bad}", file=sys.stderr)
        return 1
    return 0


def cmd_sweep(args):
    kwargs = dict(
        variants=args.variants, fitness=args.fitness, base_seed=args.seed,
        pop_size=args.pop_size, tournament=args.tournament,
        mutation_rate=args.mutation_rate, cooling_clock=args.cooling_clock,
    )
    if args.instances is not None:
        kwargs["instances"] = args.instances
    if args.repetitions is not None:
        kwargs["repetitions"] = args.repetitions
    if args.budget is not None:
        kwargs["budget"] = args.budget
    plan = ExperimentPlan.quick(**kwargs) if args.quick else ExperimentPlan(**kwargs)
    rows = run_plan(plan, workers=args.workers, codes_dir=args.codes_dir)
    timing = not args.no_timing
    _write(to_csv(rows, RESULT_FIELDS, timing=timing), args.output)
    if args.summary:
        _write(to_csv(summarize(rows), SUMMARY_FIELDS), args.summary)
    failed = [r for r in rows if r["error"]]
    for r in failed:
        print(f"run failed: n={r['n']} d={r['d']} {r['variant']} {r['fitness']} "
              f"seed={r['seed']}: {r['error']}", file=sys.stderr)
    return 1 if failed else 0


def cmd_bounds(args):
    if args.table:
        sys.stdout.write(emit_bounds_table(BENCHMARK_INSTANCES))
        return 0
    if args.n is None or args.d is None:
        print("bounds needs --n and --d, or --table", file=sys.stderr)
        return 2
    report = bounds_report(args.n, args.d)
    print(report.CSV_HEADER)
    print(report.csv_row())
    print(report.describe())
    return 0


def cmd_oracle(args):
    try:
        if args.greedy:
            code = greedy_clique(args.n, args.d, args.seed)
            label = "greedy"
        else:
            _, code = exact_max_code(args.n, args.d)
            label = "exact"
    except InstanceTooLarge as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    ok, bad = code.verify()
    print(f"{label} PA({args.n},{args.d}) size {len(code)}")
    if args.output:
        write_code(args.output, code, comments=[f"{label} oracle"])
    else:
        sys.stdout.write(format_code(code))
    return 0 if ok else 1


def cmd_verify(args):
    try:
        code = read_code(args.file)
    except (CodeFormatError, CodeVerificationError, OSError, UnicodeDecodeError) as exc:
        print(f"INVALID {args.file}: {exc}", file=sys.stderr)
        return 1
    print(f"OK {args.file}: PA({code.n},{code.d}) with {len(code)} rows")
    return 0


COMMANDS = {
    "run": cmd_run,
    "sweep": cmd_sweep,
    "bounds": cmd_bounds,
    "oracle": cmd_oracle,
    "verify": cmd_verify,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
