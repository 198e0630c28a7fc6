"""Benchmark sweep: instances x variants x fitness functions x repetitions.

Repetition ``i`` of every cell uses seed ``base_seed + i``, so results do
not depend on the number of workers or on completion order.
"""

import csv
import io
import os
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .code_store import read_code, write_code
from .combinatorics import BENCHMARK_INSTANCES, BoundsReport, bounds_report
from .config import VARIANTS, SearchConfig
from .driver import run

WORKERS_ENV = "PERMCODE_WORKERS"

RESULT_FIELDS = [
    "n", "d", "variant", "method", "policy", "fitness", "seed",
    "peak_size", "final_size", "target", "evals_used", "resets", "wall_ms", "error",
]
TIMING_FIELDS = {"wall_ms"}
SUMMARY_FIELDS = [
    "n", "d", "variant", "fitness", "runs", "failed", "target",
    "min_peak", "median_peak", "max_peak", "mean_peak", "hits",
]


@dataclass
class ExperimentPlan:
    instances: list = field(default_factory=lambda: list(BENCHMARK_INSTANCES))
    variants: tuple = ("EA1", "EA2", "RS1", "RS2")
    fitness: tuple = ("f1", "f2", "f3", "f4")
    repetitions: int = 30
    budget: int = 10**7
    base_seed: int = 0
    pop_size: int = 1000
    tournament: int = 3
    mutation_rate: float = 0.3
    cooling_clock: str = "since_reset"

    def __post_init__(self):
        self.instances = [(int(n), int(d)) for n, d in self.instances]
        for n, d in self.instances:
            if not 1 <= d <= n:
                raise ValueError(f"invalid instance (n={n}, d={d}); need 1 <= d <= n")
        for v in self.variants:
            if v not in VARIANTS:
                raise ValueError(f"unknown variant {v!r}; expected one of {sorted(VARIANTS)}")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")

    @classmethod
    def quick(cls, **kwargs):
        """Desk-scale preset: 10**5 evaluations and 3 repetitions per cell."""
        kwargs.setdefault("budget", 10**5)
        kwargs.setdefault("repetitions", 3)
        return cls(**kwargs)

    def configs(self):
        """One :class:`SearchConfig` per run, in plan order."""
        out = []
        for n, d in self.instances:
            for variant in self.variants:
                method, policy = VARIANTS[variant]
                for fit in self.fitness:
                    for rep in range(self.repetitions):
                        out.append(SearchConfig(
                            n, d,
                            budget=self.budget,
                            method=method,
                            policy=policy,
                            fitness=fit,
                            pop_size=self.pop_size,
                            tournament=self.tournament,
                            mutation_rate=self.mutation_rate,
                            seed=self.base_seed + rep,
                            cooling_clock=self.cooling_clock,
                        ))
        return out


def _execute(args):
    config, codes_dir = args
    row = {
        "n": config.n, "d": config.d, "variant": config.variant,
        "method": config.method, "policy": config.policy, "fitness": config.fitness,
        "seed": config.seed, "target": config.target_size,
        "peak_size": "", "final_size": "", "evals_used": "", "resets": "", "wall_ms": "",
        "error": "",
    }
    try:
        record = run(config)
        row.update(
            peak_size=record.peak_size,
            final_size=record.final_size,
            evals_used=record.evals_used,
            resets=record.resets,
            wall_ms=round(record.wall_time * 1000),
        )
        if codes_dir is not None:
            path = Path(codes_dir) / code_filename(config)
            write_code(path, record.peak_code, comments=[_describe(config, record)])
            read_code(path)  # re-verifies on load
    except Exception as exc:  # recorded per run; the sweep keeps going
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def code_filename(config):
    return f"pa_{config.n}_{config.d}_{config.variant}_{config.fitness}_s{config.seed}.txt"


def _describe(config, record):
    return (
        f"{config.variant} fitness={config.fitness} seed={config.seed} "
        f"peak={record.peak_size} evals={record.evals_used}"
    )


def resolve_workers(workers=None):
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1") or 1)
    return max(1, int(workers))


def run_plan(plan, workers=None, codes_dir=None):
    """Execute every run of ``plan``; rows come back in plan order."""
    jobs = [(config, codes_dir) for config in plan.configs()]
    if codes_dir is not None:
        Path(codes_dir).mkdir(parents=True, exist_ok=True)
    workers = resolve_workers(workers)
    if workers == 1:
        return [_execute(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_execute, jobs, chunksize=1))


def summarize(rows):
    """Min/median/max peak size per (instance, variant, fitness) cell."""
    cells = {}
    for row in rows:
        key = (row["n"], row["d"], row["variant"], row["fitness"])
        cells.setdefault(key, []).append(row)
    out = []
    for (n, d, variant, fit), group in cells.items():
        peaks = [r["peak_size"] for r in group if not r["error"]]
        target = group[0]["target"]
        out.append({
            "n": n, "d": d, "variant": variant, "fitness": fit,
            "runs": len(group),
            "failed": len(group) - len(peaks),
            "target": target,
            "min_peak": min(peaks) if peaks else "",
            "median_peak": statistics.median(peaks) if peaks else "",
            "max_peak": max(peaks) if peaks else "",
            "mean_peak": f"{statistics.fmean(peaks):.3f}" if peaks else "",
            "hits": sum(p >= target for p in peaks),
        })
    return out


def to_csv(rows, fields, timing=True):
    fields = [f for f in fields if timing or f not in TIMING_FIELDS]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def emit_bounds_table(instances=None):
    """CSV of bounds, best known size and search-space size for each instance."""
    instances = BENCHMARK_INSTANCES if instances is None else instances
    lines = [BoundsReport.CSV_HEADER]
    lines.extend(bounds_report(n, d).csv_row() for n, d in instances)
    return "\n".join(lines) + "\n"
