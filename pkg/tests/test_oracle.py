import random

import pytest

from cutcount.graphs import DirectedGraph, UndirectedGraph
from cutcount.oracle import (
    OracleLimit,
    cds_min,
    cvc_min,
    fvs_min,
    gmtsp_min,
    hamiltonian_cycle,
    longest_path_len,
    min_cycle_cover,
    oracle_solve,
    pcc_feasible,
    spanning_tree_leaf_counts,
    steiner_min,
)
from util_instances import cycle_graph, path_graph, random_graph, star_graph


class TestBasics:
    def test_steiner_p3(self):
        assert steiner_min(path_graph(3), [0, 2]) == 3

    def test_hamcycle_c5(self):
        assert hamiltonian_cycle(cycle_graph(5))
        assert not hamiltonian_cycle(path_graph(5))

    def test_gmtsp_tree(self):
        assert gmtsp_min(path_graph(4)) == 6

    def test_leaf_counts_star(self):
        assert spanning_tree_leaf_counts(star_graph(4)) == {4}

    def test_limits(self):
        g = path_graph(5)
        with pytest.raises(ValueError):
            steiner_min(g, [0], OracleLimit(max_n=3))


class TestIsomorphismInvariance:
    def test_under_relabeling(self):
        rng = random.Random(3)
        for _ in range(50):
            n = rng.randint(3, 7)
            g = random_graph(rng, n, 0.5)
            perm = list(range(n))
            rng.shuffle(perm)
            g2 = UndirectedGraph(n, [(perm[u], perm[v]) for u, v in g.edges])
            assert fvs_min(g) == fvs_min(g2)
            assert cvc_min(g) == cvc_min(g2)
            assert min_cycle_cover(g) == min_cycle_cover(g2)
            assert longest_path_len(g) == longest_path_len(g2)
            t = sorted(rng.sample(range(n), 2))
            assert steiner_min(g, t) == steiner_min(g2, sorted(perm[x] for x in t))


class TestMonotonicity:
    def test_cvc_monotone_in_k(self):
        rng = random.Random(7)
        for _ in range(30):
            n = rng.randint(2, 7)
            g = random_graph(rng, n, 0.5, connected=True)
            opt = cvc_min(g)
            if opt is None:
                continue
            # a feasible cover extends one vertex at a time up to n
            for k in range(opt, n + 1):
                assert oracle_solve("cvc", {"graph": g, "k": k})[0]


class TestDispatch:
    def test_all_problems_reachable(self):
        g = cycle_graph(4)
        d = DirectedGraph(3, [(0, 1), (1, 2), (2, 0)])
        checks = [
            ("steiner", {"graph": g, "terminals": [0, 2], "k": 3}, True),
            ("cvc", {"graph": g, "k": 3}, True),
            ("cds", {"graph": g, "k": 2}, True),
            ("coct", {"graph": g, "k": 0}, True),
            ("fvs", {"graph": g, "k": 1}, True),
            ("cfvs", {"graph": g, "k": 1}, True),
            ("pcc", {"graph": g, "k": 1, "l": 4}, True),
            ("dpcc", {"graph": d, "k": 1, "l": 3}, True),
            ("longest_path", {"graph": g, "k": 3}, True),
            ("hamcycle", {"graph": g}, True),
            ("min_cycle_cover", {"graph": g, "k": 1}, True),
            ("gmtsp", {"graph": g, "k": 4}, True),
            ("kleaf_st", {"graph": g, "k": 2}, True),
            ("kleaf_ob", {"graph": d, "root": 0, "k": 1}, True),
            ("mfdst", {"graph": g, "k": 2}, True),
        ]
        for name, inst, want in checks:
            got, _ = oracle_solve(name, inst)
            assert got == want, name

    def test_unknown_problem(self):
        with pytest.raises(ValueError):
            oracle_solve("nope", {"graph": cycle_graph(3)})
