"""CountC dynamic programs for edge/arc-subset problems.

Covered: undirected and directed Partial Cycle Cover (with the Min Cycle
Cover / Longest Path / Longest Cycle / Hamiltonicity wrappers), Graph
Metric TSP, Exact k-Leaf Spanning Tree, Exact k-Leaf Outbranching and
Exact Full Degree Spanning Tree.

Markers live on edges: each edge is introduced exactly once, which gives a
unique place to decide marking.  Colour digits:

* undirected PCC   0=deg0, 1=deg1 left, 2=deg1 right, 3=deg2
* directed PCC     0=00, 1=01_1, 2=01_2, 3=10_2, 4=10_1, 5=11 (in/out bits)
* GMTSP / MFDST    2*(cut side) + degree-parity / missing-edge flag
* k-leaf trees     0=leaf-set deg0, 1=leaf-set deg1, 2=left, 3=right
* outbranching     2*state + indegree bit, state in {leaf-set, left, right}
"""

from __future__ import annotations

import numpy as np

from . import _dp
from ._dp import JoinSpec, forget_digit, introduce_digit, join_tables, new_table, pair_view, shifted, take2
from .decomposition import (
    NiceTreeDecomposition,
    TreeDecomposition,
    heuristic_decompose,
    make_nice,
    nice_from_graph,
)
from .engine import UNKNOWN, YES, MonteCarloAnswer, WeightFunction, sample_weights
from .graphs import DirectedGraph, UndirectedGraph, _norm_edge


class _Handlers:
    def __init__(self, leaf, introduce, edge, forget, join):
        self.leaf_fn, self.intro_fn, self.edge_fn, self.forget_fn, self.join_fn = (
            leaf,
            introduce,
            edge,
            forget,
            join,
        )

    def leaf(self, node):
        return self.leaf_fn(node)

    def introduce(self, node, child):
        return self.intro_fn(node, child)

    def introduce_edge(self, node, child):
        return self.edge_fn(node, child)

    def forget(self, node, child):
        return self.forget_fn(node, child)

    def join(self, node, left, right):
        return self.join_fn(node, left, right)


def _no_corr_factory(naxes):
    zero = (0,) * naxes

    def corr(digits):
        return zero

    return corr


# ---------------------------------------------------------------------------
# Partial Cycle Cover, undirected (4^t) and directed (6^t)


def pcc_universe(g) -> tuple:
    pairs = g.arcs if isinstance(g, DirectedGraph) else g.edges
    return tuple((e, "X") for e in pairs) + tuple((e, "M") for e in pairs)


_PCC_JOIN = JoinSpec(
    4,
    ((0, 0, 0), (0, 1, 1), (0, 2, 2), (0, 3, 3), (1, 0, 1), (2, 0, 2), (3, 0, 3), (1, 1, 3), (2, 2, 3)),
)

_DPCC_JOIN = JoinSpec(
    6,
    tuple((0, d, d) for d in range(6))
    + tuple((d, 0, d) for d in range(1, 6))
    + ((1, 4, 5), (4, 1, 5), (2, 3, 5), (3, 2, 5)),
)


def _pcc_matrix(omega: WeightFunction, ntd: NiceTreeDecomposition, g, k: int, l: int):
    directed = isinstance(g, DirectedGraph)
    pairs = g.arcs if directed else g.edges
    m = len(pairs)
    wX = {e: omega.weights[i] for i, e in enumerate(pairs)}
    wM = {e: omega.weights[m + i] for i, e in enumerate(pairs)}
    w_size = min(omega.w_cap, omega.N * (l + k)) + 1
    acc = (k + 1, l + 1, w_size)
    radix = 6 if directed else 4

    def leaf(node):
        t = new_table(radix, node.bag, acc)
        t[0, 0, 0, 0] = 1
        return t

    def introduce(node, child):
        parts = [child] + [None] * (radix - 1)
        return introduce_digit(child, ntd.nodes[node.children[0]].bag, node.vertex, radix, parts)

    if directed:
        # side j: tail u gains an out-arc (00 -> 01_j, 10_j -> 11), head v
        # gains an in-arc (00 -> 10_j, 01_j -> 11); moves are (from, to)
        u_moves = {1: [(0, 1), (4, 5)], 2: [(0, 2), (3, 5)]}
        v_moves = {1: [(0, 4), (1, 5)], 2: [(0, 3), (2, 5)]}
    else:
        u_moves = {1: [(0, 1), (1, 3)], 2: [(0, 2), (2, 3)]}
        v_moves = u_moves

    arc_set = set(pairs)

    def _apply_arc(child, bag, u, v, key):
        out = child.copy()
        oview, au, av = pair_view(out, bag, u, v, radix)
        cview, _, _ = pair_view(child, bag, u, v, radix)
        for j in (1, 2):
            for mau, msu in u_moves[j]:
                for mav, msv in v_moves[j]:
                    src = take2(cview, au, av, mau, mav)
                    lifted = shifted(src, {-2: 1, -1: wX[key]})
                    if j == 1:
                        lifted = lifted ^ shifted(src, {-3: 1, -2: 1, -1: wX[key] + wM[key]})
                    take2(oview, au, av, msu, msv)[...] ^= lifted
        return out

    def edge(node, child):
        u, v = node.edge
        if not directed:
            key = _norm_edge(u, v)
            return _apply_arc(child, node.bag, u, v, key)
        # antiparallel arcs share one introduce-edge node; apply both
        out = child
        for arc in ((u, v), (v, u)):
            if arc in arc_set:
                out = _apply_arc(out, node.bag, arc[0], arc[1], arc)
        return out

    keep = (0, 5) if directed else (0, 3)

    def forget(node, child):
        parts = forget_digit(child, ntd.nodes[node.children[0]].bag, node.vertex, radix)
        return parts[keep[0]] ^ parts[keep[1]]

    jspec = _DPCC_JOIN if directed else _PCC_JOIN
    corr = _no_corr_factory(3)

    def join(node, left, right):
        return join_tables(left, right, node.bag, jspec, corr)

    root = _dp.run_dp(ntd, _Handlers(leaf, introduce, edge, forget, join))
    return root[0]


def pcc_undirected_countc(omega, ntd, g: UndirectedGraph, k: int, l: int) -> np.ndarray:
    """Parity per W of marked degree-2 edge sets: |X|=l, |M|=k, V(M) left."""
    if not 0 <= k <= l <= g.n:
        raise ValueError("need 0 <= k <= l <= n")
    return _pcc_matrix(omega, ntd, g, k, l)[k, l]


def pcc_directed_countc(omega, ntd, d: DirectedGraph, k: int, l: int) -> np.ndarray:
    if not 0 <= k <= l <= d.n:
        raise ValueError("need 0 <= k <= l <= n")
    return _pcc_matrix(omega, ntd, d, k, l)[k, l]


def solve_pcc(g, k: int, l: int, ntd=None, repetitions: int = 20, rng_seed: int = 0) -> MonteCarloAnswer:
    """At most k vertex-disjoint (directed) cycles covering exactly l vertices."""
    if not 0 <= k <= l <= g.n:
        raise ValueError("need 0 <= k <= l <= n")
    if l == 0:
        return MonteCarloAnswer(YES, 0, rng_seed)
    if k == 0 or g.m == 0:
        return MonteCarloAnswer(UNKNOWN, 0, rng_seed)
    ntd = nice_from_graph(g) if ntd is None else ntd
    universe = pcc_universe(g)
    for i in range(repetitions):
        omega = sample_weights(universe, rng_seed + i)
        if _pcc_matrix(omega, ntd, g, k, l)[k, l].any():
            return MonteCarloAnswer(YES, i + 1, rng_seed)
    return MonteCarloAnswer(UNKNOWN, repetitions, rng_seed)


def solve_min_cycle_cover(g, k: int, ntd=None, repetitions: int = 20, rng_seed: int = 0):
    """Cover all vertices with at most k vertex-disjoint cycles."""
    return solve_pcc(g, min(k, g.n), g.n, ntd, repetitions, rng_seed)


def solve_hamiltonian_cycle(g, ntd=None, repetitions: int = 20, rng_seed: int = 0):
    if g.n == 0:
        return MonteCarloAnswer(UNKNOWN, 0, rng_seed)
    return solve_pcc(g, 1, g.n, ntd, repetitions, rng_seed)


def solve_longest_cycle(g, k: int, ntd=None, repetitions: int = 20, rng_seed: int = 0):
    """Simple (directed) cycle of length exactly k."""
    if k < 2 or k > g.n:
        return MonteCarloAnswer(UNKNOWN, 0, rng_seed)
    return solve_pcc(g, 1, k, ntd, repetitions, rng_seed)


def _augment_for_path(g, s: int, t: int):
    """Attach a t -> s path of length n+1 through fresh vertices."""
    n = g.n
    xs = list(range(n, 2 * n))
    chain = [t] + xs + [s]
    links = list(zip(chain, chain[1:]))
    if isinstance(g, DirectedGraph):
        return DirectedGraph(2 * n, list(g.arcs) + links)
    return UndirectedGraph(2 * n, list(g.edges) + [_norm_edge(a, b) for a, b in links])


def _augment_td(td: TreeDecomposition, g, s: int, t: int) -> TreeDecomposition:
    n = g.n
    xs = list(range(n, 2 * n))
    bags = [b | {s, t} for b in td.bags]
    edges = list(td.tree_edges)
    chain = [frozenset({s, t, xs[0]})]
    chain += [frozenset({s, t, xs[i], xs[i + 1]}) for i in range(len(xs) - 1)]
    base = len(bags)
    prev = 0  # hook the chain onto the first original bag
    for i, bag in enumerate(chain):
        bags.append(bag)
        edges.append((prev, base + i))
        prev = base + i
    return TreeDecomposition(bags, edges)


def longest_path(g, k: int, td: TreeDecomposition | None = None, repetitions: int = 20, rng_seed: int = 0):
    """Simple (directed) path with exactly k edges; works in both orientations.

    A k-edge path exists iff one of length >= k exists, so this also answers
    the at-least-k question.  k >= n is trivially infeasible.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if g.n == 0:
        return MonteCarloAnswer(UNKNOWN, 0, rng_seed)
    if k == 0:
        return MonteCarloAnswer(YES, 0, rng_seed)
    if k >= g.n:
        return MonteCarloAnswer(UNKNOWN, 0, rng_seed)
    td = heuristic_decompose(g) if td is None else td
    directed = isinstance(g, DirectedGraph)
    if directed:
        pairs = [(s, t) for s in range(g.n) for t in range(g.n) if s != t]
    else:
        pairs = [(s, t) for s in range(g.n) for t in range(s + 1, g.n)]
    target = g.n + 1 + k
    prepared = []
    for s, t in pairs:
        aug = _augment_for_path(g, s, t)
        ntd = make_nice(_augment_td(td, g, s, t), aug)
        prepared.append((aug, ntd))
    universe_cache = [pcc_universe(aug) for aug, _ in prepared]
    for i in range(repetitions):
        for (aug, ntd), universe in zip(prepared, universe_cache):
            omega = sample_weights(universe, rng_seed + i)
            if _pcc_matrix(omega, ntd, aug, 1, target)[1, target].any():
                return MonteCarloAnswer(YES, i + 1, rng_seed)
    return MonteCarloAnswer(UNKNOWN, repetitions, rng_seed)


# ---------------------------------------------------------------------------
# Graph Metric TSP (4^t: cut side x degree parity)


def gmtsp_universe(g: UndirectedGraph) -> tuple:
    return tuple((e, 1) for e in g.edges) + tuple((e, 2) for e in g.edges)


_GMTSP_JOIN = JoinSpec(
    4,
    ((0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0), (2, 2, 2), (2, 3, 3), (3, 2, 3), (3, 3, 2)),
)


def gmtsp_countc(omega, ntd, g: UndirectedGraph, budget: int, v1: int = 0) -> np.ndarray:
    """Parities indexed by (i, W): i = total edge multiplicity <= budget."""
    m = g.m
    w1 = {e: omega.weights[i] for i, e in enumerate(g.edges)}
    w2 = {e: omega.weights[m + i] for i, e in enumerate(g.edges)}
    w_size = min(omega.w_cap, omega.N * budget) + 1
    acc = (budget + 1, w_size)
    radix = 4

    def leaf(node):
        t = new_table(radix, node.bag, acc)
        t[0, 0, 0] = 1
        return t

    def introduce(node, child):
        v = node.vertex
        s2 = None if v == v1 else child
        return introduce_digit(
            child, ntd.nodes[node.children[0]].bag, v, radix, [child, None, s2, None]
        )

    def edge(node, child):
        e = _norm_edge(*node.edge)
        u, v = e
        out = child.copy()
        oview, au, av = pair_view(out, node.bag, u, v, radix)
        cview, _, _ = pair_view(child, node.bag, u, v, radix)
        for cu in (0, 2):  # cut side blocks: digits cu+parity
            for pu in (0, 1):
                for pv in (0, 1):
                    src_once = take2(cview, au, av, cu + (pu ^ 1), cu + (pv ^ 1))
                    dst = take2(oview, au, av, cu + pu, cu + pv)
                    dst[...] ^= shifted(src_once, {-2: 1, -1: w1[e]})
                    src_twice = take2(cview, au, av, cu + pu, cu + pv)
                    dst[...] ^= shifted(src_twice, {-2: 2, -1: w2[e]})
        return out

    def forget(node, child):
        parts = forget_digit(child, ntd.nodes[node.children[0]].bag, node.vertex, radix)
        return parts[0] ^ parts[2]

    corr = _no_corr_factory(2)

    def join(node, left, right):
        return join_tables(left, right, node.bag, _GMTSP_JOIN, corr)

    root = _dp.run_dp(ntd, _Handlers(leaf, introduce, edge, forget, join))
    return root[0]


def solve_gmtsp(g: UndirectedGraph, budget: int, ntd=None, repetitions: int = 20, rng_seed: int = 0):
    """Closed walk of length <= budget visiting every vertex."""
    if g.n == 0 or (g.n == 1 and budget >= 0):
        return MonteCarloAnswer(YES, 0, rng_seed)
    if not g.is_connected():
        return MonteCarloAnswer(UNKNOWN, 0, rng_seed)
    budget = min(budget, 2 * (g.n - 1))
    if budget < 2:
        return MonteCarloAnswer(UNKNOWN, 0, rng_seed)
    ntd = nice_from_graph(g) if ntd is None else ntd
    universe = gmtsp_universe(g)
    for i in range(repetitions):
        omega = sample_weights(universe, rng_seed + i)
        if gmtsp_countc(omega, ntd, g, budget).any():
            return MonteCarloAnswer(YES, i + 1, rng_seed)
    return MonteCarloAnswer(UNKNOWN, repetitions, rng_seed)


# ---------------------------------------------------------------------------
# Exact k-Leaf Spanning Tree (4^t) with GF(2) binomial inversion


def kleaf_universe(g: UndirectedGraph) -> tuple:
    return tuple(g.edges)


_KLEAF_JOIN = JoinSpec(
    4,
    ((0, 0, 0), (0, 1, 1), (1, 0, 1), (2, 2, 2), (3, 3, 3)),
    sat_axes=frozenset({2}),
)


def k_leaf_spanning_tree_countc(omega, ntd, g: UndirectedGraph, v1: int) -> np.ndarray:
    """Parities of the degree-one-relaxed family, indexed by (l, W).

    l counts the distinguished degree-one set R; the root slice keeps
    |X| = n-1 and deg(v1) >= 2.
    """
    n = g.n
    w_e = {e: omega.weights[i] for i, e in enumerate(g.edges)}
    w_size = min(omega.w_cap, omega.N * (n - 1)) + 1
    acc = (n, n, 3, w_size)  # (l, m=|X|, deg(v1) capped at 2, w)
    radix = 4

    def leaf(node):
        t = new_table(radix, node.bag, acc)
        t[0, 0, 0, 0, 0] = 1
        return t

    def introduce(node, child):
        v = node.vertex
        in_r = None if v == v1 else shifted(child, {-4: 1})
        s3 = None if v == v1 else child
        return introduce_digit(
            child, ntd.nodes[node.children[0]].bag, v, radix, [in_r, None, child, s3]
        )

    def edge(node, child):
        e = _norm_edge(*node.edge)
        u, v = e
        out = child.copy()
        oview, au, av = pair_view(out, node.bag, u, v, radix)
        cview, _, _ = pair_view(child, node.bag, u, v, radix)

        def lift(src, dv1):
            shifts = {-3: 1, -1: w_e[e]}
            t = shifted(src, shifts)
            if dv1:
                t = _dp.shift_acc(t, t.ndim - 2, 1, saturate=True)
            return t

        for j in (2, 3):
            take2(oview, au, av, j, j)[...] ^= lift(take2(cview, au, av, j, j), u == v1 or v == v1)
            # one endpoint in R at degree one, pulled from degree zero
            take2(oview, au, av, j, 1)[...] ^= lift(take2(cview, au, av, j, 0), u == v1)
            take2(oview, au, av, 1, j)[...] ^= lift(take2(cview, au, av, 0, j), v == v1)
        return out

    def forget(node, child):
        v = node.vertex
        parts = forget_digit(child, ntd.nodes[node.children[0]].bag, v, radix)
        if v == v1:
            keep = parts[2].copy()
            keep[..., :2, :] = 0  # deg(v1) >= 2 required
            return keep
        return parts[1] ^ parts[2] ^ parts[3]

    def join(node, left, right):
        bag = node.bag

        def corr(digits):
            dl = sum(1 for d in digits if d <= 1)
            return (dl, 0, 0, 0)

        return join_tables(left, right, node.bag, _KLEAF_JOIN, corr)

    root = _dp.run_dp(ntd, _Handlers(leaf, introduce, edge, forget, join))
    return root[0][:, n - 1, 2, :]


def k_leaf_invert(relaxed: np.ndarray) -> np.ndarray:
    """Recover exact-count parities from the relaxed table.

    Solves relaxed[l] = sum_k C(k, l) exact[k] over GF(2) (upper triangular
    with unit diagonal) by back-substitution; works along axis 0.
    """
    nl = relaxed.shape[0]
    exact = relaxed.astype(np.uint8).copy()
    for l in range(nl - 1, -1, -1):
        for k in range(l + 1, nl):
            from math import comb

            if comb(k, l) & 1:
                exact[l] ^= exact[k]
    return exact


def solve_kleaf_spanning_tree(
    g: UndirectedGraph, k: int, ntd=None, repetitions: int = 20, rng_seed: int = 0
):
    """Spanning tree with exactly k leaves."""
    if g.n < 3:
        raise ValueError("need at least 3 vertices")
    if not g.is_connected() or not 1 <= k <= g.n - 1:
        return MonteCarloAnswer(UNKNOWN, 0, rng_seed)
    ntd = nice_from_graph(g) if ntd is None else ntd
    universe = kleaf_universe(g)
    order = sorted(range(g.n), key=lambda v: -g.degree(v))
    for i in range(repetitions):
        for v1 in order:
            omega = sample_weights(universe, rng_seed + i)
            relaxed = k_leaf_spanning_tree_countc(omega, ntd, g, v1)
            if k_leaf_invert(relaxed)[k].any():
                return MonteCarloAnswer(YES, i + 1, rng_seed)
    return MonteCarloAnswer(UNKNOWN, repetitions, rng_seed)


# ---------------------------------------------------------------------------
# Exact k-Leaf Outbranching (6^t)


def outbranching_universe(d: DirectedGraph) -> tuple:
    return tuple(d.arcs)


_OB_JOIN = JoinSpec(
    6,
    tuple(
        pair
        for base in (0, 2, 4)
        for pair in ((base, base, base), (base, base + 1, base + 1), (base + 1, base, base + 1))
    ),
)


def k_leaf_outbranching_countc(omega, ntd, d: DirectedGraph, root: int) -> np.ndarray:
    """Relaxed out-degree-zero-set parities indexed by (l, W)."""
    n = d.n
    w_a = {a: omega.weights[i] for i, a in enumerate(d.arcs)}
    w_size = min(omega.w_cap, omega.N * max(n - 1, 1)) + 1
    acc = (n + 1, w_size)
    radix = 6
    v1 = root

    def leaf(node):
        t = new_table(radix, node.bag, acc)
        t[0, 0, 0] = 1
        return t

    def introduce(node, child):
        v = node.vertex
        in_r = shifted(child, {-2: 1})
        s4 = None if v == v1 else child
        return introduce_digit(
            child, ntd.nodes[node.children[0]].bag, v, radix, [in_r, None, child, None, s4, None]
        )

    arc_set = set(d.arcs)

    def _apply_arc(child, bag, u, v):
        if v == v1:
            return child
        out = child.copy()
        oview, au, av = pair_view(out, bag, u, v, radix)
        cview, _, _ = pair_view(child, bag, u, v, radix)
        wav = w_a[(u, v)]
        for su_base, sv_base in ((2, 2), (4, 4), (2, 0), (4, 0)):
            for sin_u in (0, 1):
                src = take2(cview, au, av, su_base + sin_u, sv_base)
                dst = take2(oview, au, av, su_base + sin_u, sv_base + 1)
                dst[...] ^= shifted(src, {-1: wav})
        return out

    def edge(node, child):
        u, v = node.edge
        out = child
        for arc in ((u, v), (v, u)):
            if arc in arc_set:
                out = _apply_arc(out, node.bag, arc[0], arc[1])
        return out

    def forget(node, child):
        v = node.vertex
        parts = forget_digit(child, ntd.nodes[node.children[0]].bag, v, radix)
        if v == v1:
            return parts[0] ^ parts[2]
        return parts[1] ^ parts[3] ^ parts[5]

    def join(node, left, right):
        def corr(digits):
            dl = sum(1 for d in digits if d <= 1)
            return (dl, 0)

        return join_tables(left, right, node.bag, _OB_JOIN, corr)

    root_t = _dp.run_dp(ntd, _Handlers(leaf, introduce, edge, forget, join))
    return root_t[0]


def solve_kleaf_outbranching(
    d: DirectedGraph, root: int, k: int, ntd=None, repetitions: int = 20, rng_seed: int = 0
):
    """Spanning out-branching from ``root`` with exactly k out-degree-0 leaves."""
    if not 0 <= root < d.n:
        raise ValueError("root out of range")
    if d.n == 1:
        return MonteCarloAnswer(YES if k == 0 else UNKNOWN, 0, rng_seed)
    if not 1 <= k <= d.n - 1 or d.m == 0:
        return MonteCarloAnswer(UNKNOWN, 0, rng_seed)
    ntd = nice_from_graph(d) if ntd is None else ntd
    universe = outbranching_universe(d)
    for i in range(repetitions):
        omega = sample_weights(universe, rng_seed + i)
        relaxed = k_leaf_outbranching_countc(omega, ntd, d, root)
        if k_leaf_invert(relaxed)[k].any():
            return MonteCarloAnswer(YES, i + 1, rng_seed)
    return MonteCarloAnswer(UNKNOWN, repetitions, rng_seed)


# ---------------------------------------------------------------------------
# Exact Full Degree Spanning Tree (4^t)


_MFDST_JOIN = JoinSpec(
    4,
    (
        (0, 0, 0),
        (0, 1, 1),
        (1, 0, 1),
        (1, 1, 1),
        (2, 2, 2),
        (2, 3, 3),
        (3, 2, 3),
        (3, 3, 3),
    ),
)


def full_degree_st_countc(omega, ntd, g: UndirectedGraph, v1: int = 0) -> np.ndarray:
    """Parities indexed by (i, b, W): i full-degree vertices, b = |X|."""
    n = g.n
    w_e = {e: omega.weights[i] for i, e in enumerate(g.edges)}
    w_size = min(omega.w_cap, omega.N * max(n - 1, 1)) + 1
    acc = (n + 1, n, w_size)
    radix = 4

    def leaf(node):
        t = new_table(radix, node.bag, acc)
        t[0, 0, 0, 0] = 1
        return t

    def introduce(node, child):
        v = node.vertex
        s2 = None if v == v1 else child
        return introduce_digit(
            child, ntd.nodes[node.children[0]].bag, v, radix, [child, None, s2, None]
        )

    def edge(node, child):
        e = _norm_edge(*node.edge)
        u, v = e
        out = new_table(radix, node.bag, acc)
        oview, au, av = pair_view(out, node.bag, u, v, radix)
        cview, _, _ = pair_view(child, node.bag, u, v, radix)
        for cu in (0, 2):
            for cv in (0, 2):
                if cu == cv:
                    for pu in (0, 1):
                        for pv in (0, 1):
                            src = take2(cview, au, av, cu + pu, cv + pv)
                            take2(oview, au, av, cu + pu, cv + pv)[...] ^= shifted(
                                src, {-2: 1, -1: w_e[e]}
                            )
                # skipping the edge flags both endpoints as degree-deficient
                acc_skip = None
                for pu in (0, 1):
                    for pv in (0, 1):
                        part = take2(cview, au, av, cu + pu, cv + pv)
                        acc_skip = part.copy() if acc_skip is None else acc_skip ^ part
                take2(oview, au, av, cu + 1, cv + 1)[...] ^= acc_skip
        return out

    def forget(node, child):
        parts = forget_digit(child, ntd.nodes[node.children[0]].bag, node.vertex, radix)
        full = shifted(parts[0] ^ parts[2], {-3: 1})
        return full ^ parts[1] ^ parts[3]

    corr = _no_corr_factory(3)

    def join(node, left, right):
        return join_tables(left, right, node.bag, _MFDST_JOIN, corr)

    root = _dp.run_dp(ntd, _Handlers(leaf, introduce, edge, forget, join))
    return root[0]


def solve_full_degree_st(
    g: UndirectedGraph, k: int, ntd=None, repetitions: int = 20, rng_seed: int = 0
):
    """Spanning tree with exactly k vertices keeping their full degree."""
    if g.n == 0 or not g.is_connected():
        return MonteCarloAnswer(UNKNOWN, 0, rng_seed)
    if g.n == 1:
        return MonteCarloAnswer(YES if k == 1 else UNKNOWN, 0, rng_seed)
    ntd = nice_from_graph(g) if ntd is None else ntd
    universe = kleaf_universe(g)
    for i in range(repetitions):
        omega = sample_weights(universe, rng_seed + i)
        if full_degree_st_countc(omega, ntd, g)[k, g.n - 1].any():
            return MonteCarloAnswer(YES, i + 1, rng_seed)
    return MonteCarloAnswer(UNKNOWN, repetitions, rng_seed)
