import random

import numpy as np
import pytest

from cutcount.engine import (
    MonteCarloAnswer,
    WeightFunction,
    amplified_solve,
    cut_and_count,
    isolation_frequency,
    sample_weights,
)


class TestSampleWeights:
    def test_single_element_range(self):
        for seed in range(20):
            wf = sample_weights(("u",), seed)
            assert wf.weights[0] in (1, 2)

    def test_deterministic(self):
        u = tuple(range(10))
        assert sample_weights(u, 42).weights == sample_weights(u, 42).weights
        assert sample_weights(u, 42).weights != sample_weights(u, 43).weights

    def test_bounds(self):
        u = tuple(range(50))
        wf = sample_weights(u, 7)
        assert all(1 <= w <= 100 for w in wf.weights)
        assert wf.N == 100

    def test_empty_universe(self):
        with pytest.raises(ValueError):
            sample_weights((), 1)


class TestCutAndCount:
    def test_all_zero_countc(self):
        u = tuple(range(4))
        assert not cut_and_count(u, lambda omega: np.zeros(5, dtype=np.uint8), 3)

    def test_planted_parity(self):
        u = tuple(range(4))

        def countc(omega):
            out = np.zeros(2 * len(u) ** 2 + 1, dtype=np.uint8)
            out[omega.weights[0]] = 1
            return out

        assert cut_and_count(u, countc, 11)


class TestAmplify:
    def test_no_instance_stays_unknown(self):
        ans = amplified_solve(lambda seed: False, 5, 9)
        assert ans.verdict == "unknown" and ans.repetitions == 5

    def test_yes_short_circuits(self):
        calls = []

        def once(seed):
            calls.append(seed)
            return len(calls) == 3

        ans = amplified_solve(once, 10, 100)
        assert ans.is_yes and ans.repetitions == 3
        assert calls == [100, 101, 102]

    def test_zero_reps_rejected(self):
        with pytest.raises(ValueError):
            amplified_solve(lambda s: True, 0, 1)


class TestIsolation:
    def test_isolation_rate(self):
        rng = random.Random(2)
        families = []
        for _ in range(300):
            size = rng.randint(1, 60)
            families.append(rng.sample(range(1, 256), min(size, 255)))
        freq = isolation_frequency(families, 8, 1234)
        assert freq >= 1 - 8 / 16 - 0.05
