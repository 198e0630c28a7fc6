"""scikit-learn style wrapper around the incremental construction."""

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._validation import check_permutations
from .config import SearchConfig
from .driver import run


class PermutationCodeSearch(BaseEstimator):
    """Evolve a permutation code of length ``n`` and minimum distance ``d``.

    ``fit`` takes no data; it runs one construction and stores the largest
    code seen.  ``predict`` then tells which candidate permutations could be
    added to that code, and ``decision_function`` gives their distance to it.

    Attributes set by ``fit``: ``code_`` (largest code), ``final_code_``,
    ``record_`` (full run record), ``peak_size_``, ``n_evaluations_``.
    """

    def __init__(
        self,
        n=6,
        d=4,
        method="ea",
        policy="reset",
        fitness="f3",
        budget=10**7,
        pop_size=1000,
        tournament=3,
        mutation_rate=0.3,
        target=None,
        crossovers=("pmx", "cx", "ox"),
        mutations=("swap", "inversion", "scramble"),
        cooling_clock="since_reset",
        random_state=None,
    ):
        self.n = n
        self.d = d
        self.method = method
        self.policy = policy
        self.fitness = fitness
        self.budget = budget
        self.pop_size = pop_size
        self.tournament = tournament
        self.mutation_rate = mutation_rate
        self.target = target
        self.crossovers = crossovers
        self.mutations = mutations
        self.cooling_clock = cooling_clock
        self.random_state = random_state

    def _config(self):
        seed = self.random_state if isinstance(self.random_state, (int, np.integer)) else None
        return SearchConfig(
            self.n, self.d,
            budget=self.budget, method=self.method, policy=self.policy, fitness=self.fitness,
            pop_size=self.pop_size, tournament=self.tournament,
            mutation_rate=self.mutation_rate, target=self.target, seed=seed,
            crossovers=self.crossovers, mutations=self.mutations,
            cooling_clock=self.cooling_clock,
        )

    def fit(self, X=None, y=None):
        config = self._config()
        rng = self.random_state if isinstance(self.random_state, np.random.Generator) else None
        record = run(config, rng)
        self.record_ = record
        self.code_ = record.peak_code
        self.final_code_ = record.final_code
        self.peak_size_ = record.peak_size
        self.n_evaluations_ = record.evals_used
        return self

    def decision_function(self, X):
        """Smallest distance from each row of ``X`` to the fitted code."""
        check_is_fitted(self, "code_")
        X = check_permutations(X, self.code_.n)
        rows = self.code_.rows
        return np.array([np.count_nonzero(rows != x, axis=1).min() for x in X], dtype=np.int64)

    def predict(self, X):
        """True for each row of ``X`` that could extend the fitted code."""
        return self.decision_function(X) >= self.code_.d

    def score(self, X=None, y=None):
        """Fraction of the target size reached by the largest code."""
        check_is_fitted(self, "code_")
        return self.peak_size_ / self._config().target_size

    def transform(self, X=None):
        """The fitted code's rows as an ``(m, n)`` array."""
        check_is_fitted(self, "code_")
        return np.array(self.code_.rows)
