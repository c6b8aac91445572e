import random

import numpy as np
import pytest

from cutcount.compression import (
    _fvs_evaluations,
    _fvs_query,
    _hull_decomposition,
    cfvs_3k,
    cvc_2k,
    fvs_3k,
)
from cutcount.decomposition import nice_from_graph, validate
from cutcount.engine import sample_weights
from cutcount.graphs import UndirectedGraph
from cutcount.oracle import (
    cfvs_min,
    cvc_min,
    fvs_min,
    is_acyclic_subset,
    is_connected_subset,
    is_vertex_cover,
)
from cutcount.vertex_solvers import _forest_matrix, fvs_universe
from util_instances import cycle_graph, path_graph, random_graph


class TestHullDecomposition:
    def test_valid_and_narrow(self):
        rng = random.Random(3)
        for _ in range(10):
            n = rng.randint(3, 9)
            g = random_graph(rng, n, 0.4)
            opt = fvs_min(g)
            hull = set()
            rest = set(range(n))
            while not is_acyclic_subset(g, rest - hull):
                hull.add(rng.choice(sorted(rest - hull)))
            ntd = _hull_decomposition(g, hull)
            assert validate(ntd, g) == []
            assert ntd.width <= len(hull) + 1


class TestPinnedSweepAgreesWithFullDP:
    def test_fvs_eval_sum_matches_unpinned(self):
        # XOR over all core evaluations equals the full folded table's root
        rng = random.Random(7)
        for trial in range(6):
            n = rng.randint(3, 6)
            g = random_graph(rng, n, 0.5)
            hull_set: set[int] = set()
            while not is_acyclic_subset(g, set(range(n)) - hull_set):
                hull_set.add(rng.choice([v for v in range(n) if v not in hull_set]))
            if not hull_set:
                hull_set = {rng.randrange(n)}
            hull = sorted(hull_set)
            ntd_h = _hull_decomposition(g, set(hull))
            omega = sample_weights(fvs_universe(g), 4000 + trial)
            full = _forest_matrix(omega, nice_from_graph(g), n, set(), False, None, fold=True)
            combined = np.zeros_like(full)
            from cutcount.compression import _fvs_problem, pinned_countc

            wF, wM = omega.weights[:n], omega.weights[n:]
            prob = _fvs_problem(n, wF, wM, set())
            acc = full.shape
            for ev in _fvs_evaluations(hull, set()):
                current = dict(zip(hull, ev))

                def corr(pinned_bag, digits, fbag):
                    da = dw = 0
                    for v, d in zip(fbag, digits):
                        if d in prob.ones:
                            da += 1
                            dw += wF[v]
                    for v in pinned_bag:
                        if current[v] in prob.ones:
                            da += 1
                            dw += wF[v]
                    return (da, n + da, dw)

                combined ^= pinned_countc(ntd_h, current, prob, acc, corr, leaf_acc=(0, n, 0))
            assert np.array_equal(combined, full), (g, hull)


class TestFVS3k:
    def test_triangle(self):
        ans = fvs_3k(cycle_graph(3), 1, repetitions=12, rng_seed=1)
        assert ans.is_yes and len(ans.witness) == 1

    def test_two_triangles_k1(self):
        g = UndirectedGraph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        assert not fvs_3k(g, 1, repetitions=10, rng_seed=1).is_yes

    def test_random_vs_oracle(self):
        rng = random.Random(11)
        for trial in range(12):
            n = rng.randint(3, 8)
            g = random_graph(rng, n, 0.42)
            opt = fvs_min(g)
            k = rng.randint(0, 3)
            ans = fvs_3k(g, k, repetitions=14, rng_seed=5000 + trial)
            assert ans.is_yes == (opt <= k), (g, k, opt)
            if ans.is_yes:
                assert is_acyclic_subset(g, set(range(n)) - set(ans.witness))
                assert len(ans.witness) <= k


class TestCVC2k:
    def test_single_edge(self):
        ans = cvc_2k(UndirectedGraph(2, [(0, 1)]), 1, repetitions=12, rng_seed=1)
        assert ans.is_yes and len(ans.witness) == 1

    def test_c4(self):
        # every size-2 cover of C4 is an opposite, disconnected pair
        assert not cvc_2k(cycle_graph(4), 2, repetitions=12, rng_seed=1).is_yes
        ans = cvc_2k(cycle_graph(4), 3, repetitions=12, rng_seed=1)
        assert ans.is_yes and len(ans.witness) == 3

    def test_disconnected_raises(self):
        with pytest.raises(ValueError):
            cvc_2k(UndirectedGraph(4, [(0, 1), (2, 3)]), 2)

    def test_random_vs_oracle(self):
        rng = random.Random(13)
        for trial in range(10):
            n = rng.randint(2, 7)
            g = random_graph(rng, n, 0.5, connected=True)
            opt = cvc_min(g)
            k = rng.randint(0, 4)
            ans = cvc_2k(g, k, repetitions=14, rng_seed=6000 + trial)
            assert ans.is_yes == (opt is not None and opt <= k), (g, k, opt)
            if ans.is_yes and ans.witness:
                assert is_vertex_cover(g, ans.witness)
                assert is_connected_subset(g, ans.witness)


class TestCFVS3k:
    def test_triangle_with_pendant(self):
        g = UndirectedGraph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
        ans = cfvs_3k(g, 1, repetitions=12, rng_seed=1)
        assert ans.is_yes and len(ans.witness) == 1

    def test_forest_k0(self):
        ans = cfvs_3k(path_graph(4), 0, repetitions=5, rng_seed=1)
        assert ans.is_yes and ans.witness == frozenset()

    def test_random_vs_oracle(self):
        rng = random.Random(17)
        for trial in range(10):
            n = rng.randint(3, 7)
            g = random_graph(rng, n, 0.5, connected=True)
            opt = cfvs_min(g)
            k = rng.randint(0, 3)
            ans = cfvs_3k(g, k, repetitions=14, rng_seed=7000 + trial)
            assert ans.is_yes == (opt is not None and opt <= k), (g, k, opt)
