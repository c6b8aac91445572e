import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cutcount.graphs import (
    DirectedGraph,
    GraphFormatError,
    UndirectedGraph,
    parse_graph,
    serialize_graph,
    subdivide_weighted,
)
from cutcount.oracle import _components


class TestParse:
    def test_pace_path(self):
        g = parse_graph("p tw 3 2\n1 2\n2 3\n", "pace_gr")
        assert g.n == 3 and g.edges == ((0, 1), (1, 2))

    def test_empty_edge_section(self):
        g = parse_graph("c empty\np tw 4 0\n")
        assert g.n == 4 and g.m == 0

    def test_duplicate_edge_rejected(self):
        with pytest.raises(GraphFormatError):
            parse_graph("p tw 2 2\n1 2\n2 1\n")

    def test_malformed_header(self):
        with pytest.raises(GraphFormatError):
            parse_graph("p cnf 3 2\n")

    def test_out_of_range(self):
        with pytest.raises(GraphFormatError):
            parse_graph("p tw 2 1\n1 3\n")

    def test_self_loop(self):
        with pytest.raises(GraphFormatError):
            parse_graph("p tw 2 1\n1 1\n")
        with pytest.raises(GraphFormatError):
            UndirectedGraph(2, [(0, 0)])

    def test_json_directed(self):
        g = parse_graph('{"n": 3, "edges": [[0, 1], [2, 1]], "directed": true}')
        assert isinstance(g, DirectedGraph)
        assert g.arcs == ((0, 1), (2, 1))

    def test_edge_count_mismatch(self):
        with pytest.raises(GraphFormatError):
            parse_graph("p tw 3 5\n1 2\n")


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.data())
def test_roundtrip(n, data):
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    picked = data.draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    g = UndirectedGraph(n, picked)
    for fmt in ("pace_gr", "edge_list_json"):
        g2 = parse_graph(serialize_graph(g, fmt), fmt)
        assert g2.n == g.n and sorted(g2.edges) == sorted(g.edges)


class TestSubdivide:
    def test_weight_one_unchanged(self):
        g = UndirectedGraph(2, [(0, 1)])
        g2, origin = subdivide_weighted(g, {(0, 1): 1})
        assert g2.edges == g.edges and origin == {}

    def test_weight_three(self):
        g = UndirectedGraph(2, [(0, 1)])
        g2, origin = subdivide_weighted(g, {(0, 1): 3})
        assert g2.n == 4 and g2.m == 3
        assert origin == {2: ((0, 1), 0), 3: ((0, 1), 1)}

    def test_triangle_all_twos(self):
        g = UndirectedGraph(3, [(0, 1), (1, 2), (0, 2)])
        g2, _ = subdivide_weighted(g, {e: 2 for e in g.edges})
        assert g2.n == 6 and g2.m == 6

    def test_connectivity_preserved(self):
        g = UndirectedGraph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
        g2, _ = subdivide_weighted(g, {e: w for e, w in zip(g.edges, (1, 2, 3, 4))})
        assert g2.m == 1 + 2 + 3 + 4
        assert len(_components(g2.n, g2.edges)) == 1

    def test_zero_weight_rejected(self):
        g = UndirectedGraph(2, [(0, 1)])
        with pytest.raises(ValueError):
            subdivide_weighted(g, {(0, 1): 0})
