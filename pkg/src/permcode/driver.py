"""Incremental construction of a permutation code.

Start from one random permutation and keep adding compatible permutations
found by the inner search until the target size is reached or the
evaluation budget runs out.  Under the random-reset policy a stretch of
``max(n!, 10**5)`` evaluations without growth removes a random number of
rows, at most ``|P| / 3 * exp(-evals / 10**6)``.
"""

import math
import time
from dataclasses import dataclass, field
from typing import List, Optional

from ._validation import check_length, check_random_state
from .code_store import PermutationCode
from .config import SearchConfig
from .perm_core import random_permutation
from .search import EvalBudget, find_next_permutation

STAGNATION_FLOOR = 10**5
COOLING_DIVISOR = 10**6
COOLING_FRACTION = 1 / 3


def stagnation_threshold(n):
    """Evaluations without growth that trigger a reset: ``max(n!, 10**5)``."""
    n = check_length(n)
    return max(math.factorial(n), STAGNATION_FLOOR)


@dataclass(frozen=True)
class Policy:
    kind: str
    stagnation_threshold: int
    cooling_divisor: float = COOLING_DIVISOR
    cooling_fraction: float = COOLING_FRACTION

    @classmethod
    def for_config(cls, config):
        return cls(config.policy, stagnation_threshold(config.n))

    def max_removal(self, size, evals):
        """Largest removal count ``r`` for a code of ``size`` rows, clamped to ``[1, size - 1]``."""
        r = math.floor(self.cooling_fraction * size * math.exp(-evals / self.cooling_divisor))
        return min(max(r, 1), size - 1)


def reset(code, evals_used, rng, policy=None):
    """Remove between 1 and ``r`` random rows; returns the number removed.

    Codes with a single row are left alone.
    """
    if len(code) < 2:
        return 0
    policy = policy or Policy("reset", stagnation_threshold(code.n))
    r = policy.max_removal(len(code), evals_used)
    count = int(rng.integers(1, r + 1))
    code.remove_random_rows(count, rng)
    return count


@dataclass
class Event:
    evaluations: int
    size: int
    kind: str  # "seed", "add" or "reset"


@dataclass
class RunRecord:
    config: SearchConfig
    seed: Optional[int]
    events: List[Event] = field(default_factory=list)
    final_code: Optional[PermutationCode] = None
    peak_code: Optional[PermutationCode] = None
    evals_used: int = 0
    resets: int = 0
    stage_inits: int = 0
    init_evaluations: int = 0
    ga_steps: int = 0
    rs_steps: int = 0
    wall_time: float = 0.0

    @property
    def peak_size(self):
        return max((e.size for e in self.events), default=0)

    @property
    def final_size(self):
        return len(self.final_code) if self.final_code is not None else 0

    @property
    def reached_target(self):
        return self.peak_size >= self.config.target_size


def run(config, rng=None):
    """Build one code under ``config`` and return its :class:`RunRecord`.

    ``rng`` defaults to a generator seeded with ``config.seed``.
    """
    if not isinstance(config, SearchConfig):
        raise TypeError("config must be a SearchConfig")
    rng = check_random_state(config.seed if rng is None else rng)
    started = time.perf_counter()
    n, d = config.n, config.d
    target = config.target_size
    policy = Policy.for_config(config)
    budget = EvalBudget(config.budget)

    code = PermutationCode(n, d)
    code.add_row(random_permutation(n, rng))
    record = RunRecord(config=config, seed=config.seed)
    record.events.append(Event(0, 1, "seed"))
    peak = code.copy()

    last_growth = 0  # evaluation count at the last size increase or reset
    last_reset = 0
    while len(code) < target and not budget.exhausted:
        stop_at = None
        if policy.kind == "reset":
            stop_at = last_growth + policy.stagnation_threshold
        stage = find_next_permutation(config.method, code, config, budget, rng, stop_at)
        if stage.found:
            code.add_row(stage.perm)
            last_growth = budget.used
            record.events.append(Event(budget.used, len(code), "add"))
            if len(code) > len(peak):
                peak = code.copy()
            continue
        if policy.kind == "reset" and budget.used - last_growth >= policy.stagnation_threshold:
            clock = budget.used if config.cooling_clock == "global" else budget.used - last_reset
            removed = reset(code, clock, rng, policy)
            last_growth = budget.used
            last_reset = budget.used
            if removed:
                record.resets += 1
                record.events.append(Event(budget.used, len(code), "reset"))

    record.final_code = code
    record.peak_code = peak
    record.evals_used = budget.used
    record.stage_inits = budget.stage_inits
    record.init_evaluations = budget.init_evaluations
    record.ga_steps = budget.ga_steps
    record.rs_steps = budget.rs_steps
    record.wall_time = time.perf_counter() - started
    return record
