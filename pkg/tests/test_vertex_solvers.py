import random

import numpy as np
import pytest

from cutcount.decomposition import nice_from_graph
from cutcount.engine import sample_weights
from cutcount.graphs import UndirectedGraph
from cutcount.oracle import cds_min, cfvs_min, coct_min, cvc_min, fvs_min, steiner_min
from cutcount.vertex_solvers import (
    cds_countc,
    cfvs_countc,
    coct_countc,
    coct_universe,
    cvc_countc,
    fvs_countc,
    fvs_universe,
    solve_cds,
    solve_cfvs,
    solve_coct,
    solve_cvc,
    solve_fvs,
    solve_steiner,
    steiner_countc,
    steiner_universe,
)
import reference_counts as ref
from util_instances import cycle_graph, graph_with_width, path_graph, random_graph, star_graph


def _as_map(parities: np.ndarray) -> dict[int, int]:
    return {w: 1 for w in np.nonzero(parities)[0]}


class TestSteiner:
    def test_p3_unique_tree(self):
        g = path_graph(3)
        ntd = nice_from_graph(g)
        assert solve_steiner(g, [0, 2], 3, ntd, repetitions=12, rng_seed=1).is_yes
        assert not solve_steiner(g, [0, 2], 2, ntd, repetitions=12, rng_seed=1).is_yes

    def test_star_center_forced(self):
        g = star_graph(3)
        assert solve_steiner(g, [1, 2, 3], 4, repetitions=12, rng_seed=2).is_yes

    def test_countc_matches_bruteforce_cw(self):
        rng = random.Random(11)
        for trial in range(15):
            n = rng.randint(3, 7)
            g = random_graph(rng, n, 0.45)
            terminals = sorted(rng.sample(range(n), rng.randint(1, min(3, n))))
            k = rng.randint(len(terminals), n)
            ntd = nice_from_graph(g)
            omega = sample_weights(steiner_universe(g), 100 + trial)
            got = _as_map(steiner_countc(omega, ntd, terminals, k))
            assert got == ref.steiner_cw_parities(g, omega, terminals, k)

    def test_sw_equals_cw_parity(self):
        # the cancellation lemma, instantiated by brute force
        rng = random.Random(13)
        for trial in range(10):
            n = rng.randint(3, 6)
            g = random_graph(rng, n, 0.5)
            terminals = sorted(rng.sample(range(n), 2))
            k = rng.randint(2, n)
            omega = sample_weights(steiner_universe(g), 200 + trial)
            assert ref.steiner_cw_parities(g, omega, terminals, k) == ref.steiner_sw_parities(
                g, omega, terminals, k
            )

    def test_random_vs_oracle(self):
        rng = random.Random(17)
        for trial in range(25):
            n = rng.randint(3, 8)
            g, ntd = graph_with_width(rng, n, 0.4, 4)
            terminals = sorted(rng.sample(range(n), rng.randint(1, min(3, n))))
            opt = steiner_min(g, terminals)
            for k in sorted({rng.randint(len(terminals), n), opt or n}):
                ans = solve_steiner(g, terminals, k, ntd, repetitions=14, rng_seed=300 + trial)
                expect = opt is not None and opt <= k
                assert ans.is_yes == expect, (g, terminals, k, opt)


class TestCVC:
    def test_single_edge(self):
        g = UndirectedGraph(2, [(0, 1)])
        assert solve_cvc(g, 1, repetitions=12, rng_seed=1).is_yes

    def test_p4_middle(self):
        g = path_graph(4)
        assert solve_cvc(g, 2, repetitions=12, rng_seed=1).is_yes
        assert not solve_cvc(g, 1, repetitions=12, rng_seed=1).is_yes

    def test_countc_matches_bruteforce_cw(self):
        rng = random.Random(23)
        for trial in range(12):
            n = rng.randint(3, 7)
            g = random_graph(rng, n, 0.45)
            v1 = rng.randrange(n)
            k = rng.randint(1, n)
            ntd = nice_from_graph(g)
            omega = sample_weights(steiner_universe(g), 400 + trial)
            got = _as_map(cvc_countc(omega, ntd, [], k, v1=v1))
            assert got == ref.cvc_cw_parities(g, omega, [], k, v1)

    def test_random_vs_oracle(self):
        rng = random.Random(29)
        for trial in range(20):
            n = rng.randint(3, 8)
            g, ntd = graph_with_width(rng, n, 0.4, 4)
            opt = cvc_min(g)
            k = rng.randint(0, n)
            ans = solve_cvc(g, k, (), ntd, repetitions=14, rng_seed=500 + trial)
            assert ans.is_yes == (opt is not None and opt <= k), (g, k, opt)


class TestCDS:
    def test_star(self):
        g = star_graph(4)
        assert solve_cds(g, 1, repetitions=12, rng_seed=1).is_yes

    def test_p4(self):
        g = path_graph(4)
        assert solve_cds(g, 2, repetitions=12, rng_seed=1).is_yes
        assert not solve_cds(g, 1, repetitions=14, rng_seed=1).is_yes

    def test_countc_matches_bruteforce_cw(self):
        rng = random.Random(31)
        for trial in range(12):
            n = rng.randint(3, 7)
            g = random_graph(rng, n, 0.5)
            v1 = rng.randrange(n)
            k = rng.randint(1, n)
            ntd = nice_from_graph(g)
            omega = sample_weights(steiner_universe(g), 600 + trial)
            got = _as_map(cds_countc(omega, ntd, [], k, v1=v1))
            assert got == ref.cds_cw_parities(g, omega, [], k, v1)

    def test_random_vs_oracle(self):
        rng = random.Random(37)
        for trial in range(20):
            n = rng.randint(2, 8)
            g, ntd = graph_with_width(rng, n, 0.45, 4)
            opt = cds_min(g)
            k = rng.randint(1, n)
            ans = solve_cds(g, k, (), ntd, repetitions=14, rng_seed=700 + trial)
            assert ans.is_yes == (opt is not None and opt <= k), (g, k, opt)


class TestCOCT:
    def test_c5(self):
        g = cycle_graph(5)
        assert solve_coct(g, 1, repetitions=12, rng_seed=1).is_yes

    def test_bipartite_k0(self):
        g = cycle_graph(6)
        assert solve_coct(g, 0, repetitions=5, rng_seed=1).is_yes

    def test_countc_matches_bruteforce_cw(self):
        rng = random.Random(41)
        for trial in range(10):
            n = rng.randint(3, 6)
            g = random_graph(rng, n, 0.5)
            v1 = rng.randrange(n)
            k = rng.randint(1, n)
            ntd = nice_from_graph(g)
            omega = sample_weights(coct_universe(g), 800 + trial)
            got = _as_map(coct_countc(omega, ntd, [], k, v1=v1))
            assert got == ref.coct_cw_parities(g, omega, [], k, v1)

    def test_random_vs_oracle(self):
        rng = random.Random(43)
        for trial in range(15):
            n = rng.randint(3, 7)
            g, ntd = graph_with_width(rng, n, 0.5, 4)
            opt = coct_min(g)
            k = rng.randint(0, n)
            ans = solve_coct(g, k, (), ntd, repetitions=14, rng_seed=900 + trial)
            assert ans.is_yes == (opt is not None and opt <= k), (g, k, opt)


class TestFVS:
    def test_triangle(self):
        g = cycle_graph(3)
        assert solve_fvs(g, 1, repetitions=12, rng_seed=1).is_yes
        assert not solve_fvs(g, 0, repetitions=12, rng_seed=1).is_yes

    def test_forest_k0(self):
        g = path_graph(5)
        assert solve_fvs(g, 0, repetitions=5, rng_seed=1).is_yes

    def test_countc_matches_bruteforce_cw(self):
        rng = random.Random(47)
        for trial in range(10):
            n = rng.randint(3, 6)
            g = random_graph(rng, n, 0.5)
            ntd = nice_from_graph(g)
            omega = sample_weights(fvs_universe(g), 1000 + trial)
            a = rng.randint(0, n)
            b = rng.randint(0, max(n - 1, 0) if n else 0)
            b = min(b, n - 1)
            c = rng.randint(0, a)
            got = _as_map(fvs_countc(omega, ntd, [], a, b, c))
            assert got == ref.fvs_cw_parities(g, omega, [], a, b, c), (g, a, b, c)

    def test_random_vs_oracle(self):
        rng = random.Random(53)
        for trial in range(20):
            n = rng.randint(3, 8)
            g, ntd = graph_with_width(rng, n, 0.5, 4)
            opt = fvs_min(g)
            k = rng.randint(0, min(4, n))
            ans = solve_fvs(g, k, (), ntd, repetitions=14, rng_seed=1100 + trial)
            assert ans.is_yes == (opt <= k), (g, k, opt)


class TestCFVS:
    def test_triangle_with_pendant(self):
        g = UndirectedGraph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
        assert solve_cfvs(g, 1, repetitions=12, rng_seed=1).is_yes

    def test_forest_k0(self):
        g = path_graph(4)
        assert solve_cfvs(g, 0, repetitions=5, rng_seed=1).is_yes

    def test_two_triangles_need_edge(self):
        # two disjoint triangles joined by an edge: the joined endpoints
        # form a connected FVS of size 2
        g = UndirectedGraph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])
        assert cfvs_min(g) == 2
        assert solve_cfvs(g, 2, repetitions=14, rng_seed=3).is_yes
        assert not solve_cfvs(g, 1, repetitions=14, rng_seed=3).is_yes

    def test_countc_matches_bruteforce_cw(self):
        rng = random.Random(59)
        for trial in range(10):
            n = rng.randint(3, 6)
            g = random_graph(rng, n, 0.5)
            v1 = rng.randrange(n)
            ntd = nice_from_graph(g)
            omega = sample_weights(fvs_universe(g), 1200 + trial)
            a = rng.randint(0, n - 1)
            b = min(rng.randint(0, n - 1), n - 1)
            c = rng.randint(0, a)
            got = _as_map(cfvs_countc(omega, ntd, [v1], a, b, c))
            assert got == ref.cfvs_cw_parities(g, omega, [v1], a, b, c, v1), (g, v1, a, b, c)

    def test_random_vs_oracle(self):
        rng = random.Random(61)
        for trial in range(15):
            n = rng.randint(3, 7)
            g, ntd = graph_with_width(rng, n, 0.5, 4, connected=True)
            opt = cfvs_min(g)
            k = rng.randint(0, min(4, n))
            ans = solve_cfvs(g, k, (), ntd, repetitions=14, rng_seed=1300 + trial)
            assert ans.is_yes == (opt is not None and opt <= k), (g, k, opt)
