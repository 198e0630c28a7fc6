"""Search for one more permutation compatible with the current code.

Two methods are available: a steady-state genetic algorithm with tournament
selection and plain random sampling.  Both charge every candidate they score
to a shared :class:`EvalBudget`.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .perm_core import random_permutations
from .fitness import FitnessSpec


@dataclass
class EvalBudget:
    """Global evaluation counter with a hard limit.

    The per-source counters let callers check that ``used`` is exactly the
    sum of what was spent on population initialization, GA steps and random
    draws.
    """

    limit: int
    used: int = 0
    stage_inits: int = 0
    init_evaluations: int = 0
    ga_steps: int = 0
    rs_steps: int = 0

    @property
    def remaining(self):
        return self.limit - self.used

    @property
    def exhausted(self):
        return self.used >= self.limit

    def _charge(self, k):
        if k < 0 or self.used + k > self.limit:
            raise RuntimeError(f"charging {k} evaluations would exceed the budget of {self.limit}")
        self.used += k

    def charge_init(self, k):
        self._charge(k)
        self.stage_inits += 1
        self.init_evaluations += k

    def charge_ga(self, k):
        self._charge(k)
        self.ga_steps += k

    def charge_rs(self, k):
        self._charge(k)
        self.rs_steps += k


@dataclass
class Individual:
    perm: np.ndarray
    fitness: float


class Population:
    """Fixed-size set of permutations with cached fitness and a tracked best.

    The tracked best only changes on a strict improvement, so it never gets
    worse during a stage.
    """

    def __init__(self, perms, fit, spec):
        self.perms = np.ascontiguousarray(perms, dtype=np.int64)
        self.fit = np.ascontiguousarray(fit, dtype=np.float64)
        self.spec = spec
        n = self.perms.shape[1]
        self.best = np.empty(n, dtype=np.int64)
        self.best_fit = np.nan
        if len(self):
            i = int(np.argmax(self.fit) if spec.maximize else np.argmin(self.fit))
            self.best[:] = self.perms[i]
            self.best_fit = float(self.fit[i])

    def __len__(self):
        return self.perms.shape[0]

    def __getitem__(self, i):
        return Individual(self.perms[i].copy(), float(self.fit[i]))

    @property
    def best_individual(self):
        return Individual(self.best.copy(), self.best_fit)


def init_population(n, popsize, code, spec, budget, rng):
    """Draw and score up to ``popsize`` random permutations.

    Fewer are drawn when the budget cannot pay for all of them.
    """
    k = max(0, min(popsize, budget.remaining))
    perms = random_permutations(k, n, rng)
    fit = np.empty(k, dtype=np.float64)
    rows, m = code._raw_rows()
    _kernels.fitness_batch(perms, rows, m, code.d, int(spec.kind), fit)
    if k:
        budget.charge_init(k)
    return Population(perms, fit, spec)


def _run_steps(pop, code, pool, t, budget, rng, nsteps):
    n = pop.perms.shape[1]
    u = rng.random(nsteps * _kernels.step_stride(n, t))
    rows, m = code._raw_rows()
    xo_ids, mut_ids, rate = pool.kernel_args()
    steps, found, best_fit = _kernels.ga_steps(
        pop.perms, pop.fit, rows, m, code.d, int(pop.spec.kind), t,
        xo_ids, mut_ids, rate, u, nsteps, pop.best, pop.best_fit,
    )
    budget.charge_ga(steps)
    pop.best_fit = best_fit
    return found


def ga_step(pop, code, pool, t, spec, budget, rng):
    """One steady-state update.

    ``t`` distinct individuals are drawn, the best two are crossed (and the
    child possibly mutated), and the child replaces the worst of the ``t``
    whatever its fitness.  Costs one evaluation.
    """
    if t < 3:
        raise ValueError(f"tournament size must be >= 3, got {t}")
    if t > len(pop):
        raise ValueError(f"tournament size {t} exceeds population size {len(pop)}")
    if pop.spec != spec:
        raise ValueError("population was scored with a different fitness")
    if budget.exhausted:
        raise RuntimeError("evaluation budget exhausted")
    _run_steps(pop, code, pool, t, budget, rng, 1)
    return pop


def rs_step(code, budget, rng):
    """Draw one uniform permutation and charge one evaluation."""
    if budget.exhausted:
        raise RuntimeError("evaluation budget exhausted")
    p = rng.permutation(code.n).astype(np.int64) + 1
    budget.charge_rs(1)
    return p


@dataclass
class StageResult:
    perm: Optional[np.ndarray]
    evaluations: int

    @property
    def found(self):
        return self.perm is not None


_FIRST_CHUNK = 64
_MAX_CHUNK = 16384


def find_next_permutation(method, code, config, budget, rng, stop_at=None):
    """Search until a permutation compatible with ``code`` turns up.

    The search stops early, returning an empty :class:`StageResult`, once the
    budget is exhausted or ``budget.used`` reaches ``stop_at``.  For the GA
    the initial population is always scored in full when the budget allows,
    even past ``stop_at``.
    """
    start = budget.used
    stop = budget.limit if stop_at is None else min(budget.limit, stop_at)
    if method == "ea":
        perm = _ea_stage(code, config, budget, rng, stop)
    elif method == "rs":
        perm = _rs_stage(code, budget, rng, stop)
    else:
        raise ValueError(f"unknown search method {method!r}")
    return StageResult(perm, budget.used - start)


def _ea_stage(code, config, budget, rng, stop):
    if budget.exhausted:
        return None
    spec = FitnessSpec(config.fitness)
    pool = config.pool
    t = config.tournament
    pop = init_population(code.n, config.pop_size, code, spec, budget, rng)
    if code.is_compatible(pop.best):
        return pop.best.copy()
    if len(pop) < t:
        return None
    chunk = _FIRST_CHUNK
    while budget.used < stop:
        nsteps = min(chunk, stop - budget.used)
        if _run_steps(pop, code, pool, t, budget, rng, nsteps):
            return pop.best.copy()
        chunk = min(2 * chunk, _MAX_CHUNK)
    return None


def _rs_stage(code, budget, rng, stop):
    rows, m = code._raw_rows()
    chunk = _FIRST_CHUNK
    while budget.used < stop:
        k = min(chunk, stop - budget.used)
        batch = random_permutations(k, code.n, rng)
        hit = _kernels.first_compatible(batch, rows, m, code.d)
        if hit >= 0:
            budget.charge_rs(hit + 1)
            return batch[hit].copy()
        budget.charge_rs(k)
        chunk = min(2 * chunk, _MAX_CHUNK)
    return None
