"""Run configuration shared by the search, the driver and the harness."""

import dataclasses
from dataclasses import dataclass
from typing import Optional

from ._validation import check_length_distance
from .combinatorics import default_target
from .fitness import FitnessKind, FitnessSpec
from .variation import OperatorPool

METHODS = ("ea", "rs")
POLICIES = ("plain", "reset")
COOLING_CLOCKS = ("global", "since_reset")

# EA1/EA2/RS1/RS2: search method with plain (1) or random-reset (2) updates
VARIANTS = {
    "EA1": ("ea", "plain"),
    "EA2": ("ea", "reset"),
    "RS1": ("rs", "plain"),
    "RS2": ("rs", "reset"),
}


def variant_name(method, policy):
    return f"{method.upper()}{1 if policy == 'plain' else 2}"


@dataclass(frozen=True)
class SearchConfig:
    n: int
    d: int
    budget: int = 10**7
    method: str = "ea"
    policy: str = "reset"
    fitness: str = "f3"
    pop_size: int = 1000
    tournament: int = 3
    mutation_rate: float = 0.3
    target: Optional[int] = None
    seed: Optional[int] = None
    crossovers: tuple = ("pmx", "cx", "ox")
    mutations: tuple = ("swap", "inversion", "scramble")
    cooling_clock: str = "since_reset"

    def __post_init__(self):
        n, d = check_length_distance(self.n, self.d)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "method", str(self.method).lower())
        object.__setattr__(self, "policy", str(self.policy).lower())
        object.__setattr__(self, "fitness", FitnessKind.parse(self.fitness).label)
        object.__setattr__(self, "crossovers", tuple(self.crossovers))
        object.__setattr__(self, "mutations", tuple(self.mutations))
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.policy not in POLICIES:
            raise ValueError(f"policy must be one of {POLICIES}, got {self.policy!r}")
        if self.cooling_clock not in COOLING_CLOCKS:
            raise ValueError(f"cooling_clock must be one of {COOLING_CLOCKS}, got {self.cooling_clock!r}")
        if self.budget < 0:
            raise ValueError(f"budget must be >= 0, got {self.budget}")
        if self.pop_size < 1:
            raise ValueError(f"pop_size must be >= 1, got {self.pop_size}")
        if self.method == "ea":
            if self.tournament < 3:
                raise ValueError(f"tournament size must be >= 3, got {self.tournament}")
            if self.tournament > self.pop_size:
                raise ValueError(
                    f"tournament size {self.tournament} exceeds pop_size {self.pop_size}"
                )
        if self.target is not None and self.target < 1:
            raise ValueError(f"target must be >= 1, got {self.target}")
        # builds and checks the pool
        self.pool

    @property
    def pool(self):
        return OperatorPool(self.crossovers, self.mutations, self.mutation_rate)

    @property
    def fitness_spec(self):
        return FitnessSpec(self.fitness)

    @property
    def target_size(self):
        return self.target if self.target is not None else default_target(self.n, self.d)

    @property
    def variant(self):
        return variant_name(self.method, self.policy)

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    def to_dict(self):
        out = dataclasses.asdict(self)
        out["crossovers"] = list(self.crossovers)
        out["mutations"] = list(self.mutations)
        return out
