"""Generic Cut&Count driver: weight sampling, the W loop, amplification.

All randomness flows through a seeded 64-bit PCG; the seed is recorded in
every answer so runs are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

YES = "yes"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class WeightFunction:
    """Isolation-Lemma weights: iid uniform on {1, ..., N}, N = 2|U|."""

    universe: tuple[Hashable, ...]
    weights: tuple[int, ...]

    @property
    def N(self) -> int:
        return 2 * len(self.universe)

    def __post_init__(self):
        if not self.universe:
            raise ValueError("empty universe")
        if len(self.weights) != len(self.universe):
            raise ValueError("one weight per universe element required")
        if not all(1 <= w <= self.N for w in self.weights):
            raise ValueError("weights must lie in [1, 2|U|]")

    def omega(self, element) -> int:
        return self.weights[self.universe.index(element)]

    def as_dict(self) -> dict:
        return dict(zip(self.universe, self.weights))

    @property
    def w_cap(self) -> int:
        """Largest weight any subset of the universe can reach."""
        return sum(self.weights)


def sample_weights(universe: Sequence[Hashable], rng_seed: int) -> WeightFunction:
    universe = tuple(universe)
    if not universe:
        raise ValueError("empty universe")
    rng = np.random.Generator(np.random.PCG64(rng_seed))
    n = len(universe)
    ws = rng.integers(1, 2 * n + 1, size=n)
    return WeightFunction(universe, tuple(int(w) for w in ws))


@dataclass(frozen=True)
class MonteCarloAnswer:
    verdict: str  # YES or UNKNOWN
    repetitions: int
    seed: int
    witness: object = None

    @property
    def is_yes(self) -> bool:
        return self.verdict == YES


def cut_and_count(
    universe: Sequence[Hashable],
    countc: Callable[[WeightFunction], np.ndarray],
    rng_seed: int,
) -> bool:
    """One Monte-Carlo run: sample weights, return True iff some W has odd parity.

    ``countc`` receives the sampled weight function and returns the GF(2)
    parities of |C_W| for W = 0 .. at most 2|U|^2 (trailing zeroes may be
    trimmed; parities beyond the returned range are zero).
    """
    omega = sample_weights(universe, rng_seed)
    parities = np.asarray(countc(omega))
    limit = 2 * len(universe) ** 2
    assert parities.ndim == 1 and parities.shape[0] <= limit + 1
    return bool(parities.any())


def amplified_solve(
    solve_once: Callable[[int], bool | object],
    repetitions: int,
    rng_seed: int,
) -> MonteCarloAnswer:
    """Repeat a one-sided Monte-Carlo run; YES as soon as any run succeeds.

    ``solve_once(seed)`` returns a falsy value on no-evidence, or a truthy
    witness/flag on success.  False-negative probability is at most 2^-r for
    YES instances; false positives never occur by construction.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    for i in range(repetitions):
        result = solve_once(rng_seed + i)
        if result:
            witness = None if result is True else result
            return MonteCarloAnswer(YES, i + 1, rng_seed, witness)
    return MonteCarloAnswer(UNKNOWN, repetitions, rng_seed)


def isolation_frequency(
    families: Iterable[Sequence[int]], universe_size: int, rng_seed: int
) -> float:
    """Empirical fraction of weight samples isolating each given set family.

    Each family is a sequence of subsets encoded as bitmasks over
    {0, ..., universe_size - 1}; one weight sample is drawn per family.
    """
    universe = tuple(range(universe_size))
    hits = 0
    total = 0
    for i, family in enumerate(families):
        assert family, "families must be nonempty"
        wf = sample_weights(universe, rng_seed + i)
        ws = wf.weights
        best = None
        count = 0
        for mask in family:
            w = sum(ws[j] for j in range(universe_size) if mask >> j & 1)
            if best is None or w < best:
                best, count = w, 1
            elif w == best:
                count += 1
        hits += count == 1
        total += 1
    return hits / total
