"""CountC dynamic programs for vertex-subset connectivity problems.

Each problem contributes a ``*_countc`` procedure (GF(2) parity of the
consistently-cut candidate count per total weight W) plus a ``solve_*``
Monte-Carlo wrapper.  Colourings use digits

* Steiner / CVC:  0=out, 1=left side, 2=right side
* CDS:            0=undominated, 1=dominated, 2=left, 3=right
* COCT:           0=left part, 1=right part, 2=left cut, 3=right cut
* FVS / CFVS:     forest side 1/2 plus (CFVS) complement-cut side 0_1/0_2

FVS and CFVS keep accumulators (forest size a, edge count b, marker count
c, weight w); the solve path folds (b, c) into the drift a - b - c, whose
root slice 0 sums exactly the marked-forest slices C = A - B over all B.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _dp
from ._dp import JoinSpec, forget_digit, introduce_digit, join_tables, new_table, pair_view, shifted, take2
from .decomposition import NiceTreeDecomposition, nice_from_graph
from .engine import UNKNOWN, YES, MonteCarloAnswer, WeightFunction, sample_weights
from .graphs import UndirectedGraph


def _diag(radix: int) -> JoinSpec:
    return JoinSpec(radix, tuple((d, d, d) for d in range(radix)))


@dataclass
class _Handlers:
    """Adapter binding per-problem closures to the DP driver."""

    leaf_fn: callable
    introduce_fn: callable
    edge_fn: callable
    forget_fn: callable
    join_fn: callable

    def leaf(self, node):
        return self.leaf_fn(node)

    def introduce(self, node, child):
        return self.introduce_fn(node, child)

    def introduce_edge(self, node, child):
        return self.edge_fn(node, child)

    def forget(self, node, child):
        return self.forget_fn(node, child)

    def join(self, node, left, right):
        return self.join_fn(node, left, right)


def _resolve_ntd(g, ntd):
    return ntd if ntd is not None else nice_from_graph(g)


# ---------------------------------------------------------------------------
# Steiner Tree / Connected Vertex Cover (3 colours, accumulators i, w)


def steiner_universe(g: UndirectedGraph) -> tuple:
    return tuple(range(g.n))


def _three_state_matrix(
    omega: WeightFunction,
    ntd: NiceTreeDecomposition,
    k: int,
    zero_forbidden: set[int],
    v1: int | None,
    edge_rule: str,
) -> np.ndarray:
    """Shared Steiner/CVC table: parities indexed by (|X|, w).

    ``zero_forbidden`` lists vertices that must be in X; ``v1`` is pinned to
    the left cut side.  ``edge_rule`` is "steiner" (no 1_1/1_2 edge) or
    "cover" (additionally no 0/0 edge).
    """
    w_vec = omega.weights
    w_size = min(omega.w_cap, omega.N * max(k, 1)) + 1
    acc = (k + 1, w_size)
    radix = 3
    jspec = _diag(radix)

    def leaf(node):
        t = new_table(radix, node.bag, acc)
        t[0, 0, 0] = 1
        return t

    def introduce(node, child):
        v = node.vertex
        lifted = shifted(child, {1: 1, 2: w_vec[v]})
        s0 = None if v in zero_forbidden else child
        s2 = None if v == v1 else lifted
        return introduce_digit(child, ntd.nodes[node.children[0]].bag, v, radix, [s0, lifted, s2])

    def edge(node, child):
        u, v = node.edge
        out = child.copy()
        view, au, av = pair_view(out, node.bag, u, v, radix)
        for du, dv in ((1, 2), (2, 1)):
            take2(view, au, av, du, dv)[...] = 0
        if edge_rule == "cover":
            take2(view, au, av, 0, 0)[...] = 0
        return out

    def forget(node, child):
        parts = forget_digit(child, ntd.nodes[node.children[0]].bag, node.vertex, radix)
        return parts[0] ^ parts[1] ^ parts[2]

    def join(node, left, right):
        bag = node.bag

        def corr(digits):
            di = dw = 0
            for j, d in enumerate(digits):
                if d:
                    di += 1
                    dw += w_vec[bag[j]]
            return (di, dw)

        return join_tables(left, right, bag, jspec, corr)

    root = _dp.run_dp(ntd, _Handlers(leaf, introduce, edge, forget, join))
    return root[0]


def steiner_countc(
    omega: WeightFunction, ntd: NiceTreeDecomposition, terminals, k: int
) -> np.ndarray:
    """Parity of |C_W| for the exact-size-k Steiner relaxation, per W."""
    t = sorted(set(terminals))
    if not t:
        raise ValueError("terminal set must be nonempty")
    if k < len(t):
        raise ValueError(f"k={k} below |T|={len(t)}")
    mat = _three_state_matrix(omega, ntd, k, set(t), min(t), "steiner")
    return mat[k]


def solve_steiner(
    g: UndirectedGraph, terminals, k: int, ntd=None, repetitions: int = 20, rng_seed: int = 0
) -> MonteCarloAnswer:
    """Is there a connected X with T inside X and |X| <= k?"""
    t = sorted(set(terminals))
    if not t:
        raise ValueError("terminal set must be nonempty")
    ntd = _resolve_ntd(g, ntd)
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    if k < len(t):
        return MonteCarloAnswer(UNKNOWN, 0, rng_seed)
    for i in range(repetitions):
        omega = sample_weights(steiner_universe(g), rng_seed + i)
        mat = _three_state_matrix(omega, ntd, k, set(t), min(t), "steiner")
        if mat[len(t) :].any():
            return MonteCarloAnswer(YES, i + 1, rng_seed)
    return MonteCarloAnswer(UNKNOWN, repetitions, rng_seed)


def cvc_countc(
    omega: WeightFunction, ntd: NiceTreeDecomposition, required, k: int, v1: int | None = None
) -> np.ndarray:
    """Parity per W of consistently-cut vertex covers of exact size k."""
    s = sorted(set(required))
    if v1 is None:
        if not s:
            raise ValueError("required set empty: caller must iterate v1")
        v1 = min(s)
    if k > len(omega.universe):
        raise ValueError("k exceeds |V|")
    mat = _three_state_matrix(omega, ntd, k, set(s) | {v1}, v1, "cover")
    return mat[k]


def solve_cvc(
    g: UndirectedGraph, k: int, required=(), ntd=None, repetitions: int = 20, rng_seed: int = 0
) -> MonteCarloAnswer:
    """Connected vertex cover of size <= k containing ``required``."""
    if k > g.n:
        raise ValueError("k exceeds |V|")
    s = sorted(set(required))
    if not s and g.m == 0:
        return MonteCarloAnswer(YES, 0, rng_seed, witness=frozenset())
    ntd = _resolve_ntd(g, ntd)
    v1s = s[:1] if s else list(range(g.n))
    for i in range(repetitions):
        for v1 in v1s:
            omega = sample_weights(steiner_universe(g), rng_seed + i)
            mat = _three_state_matrix(omega, ntd, k, set(s) | {v1}, v1, "cover")
            lo = max(len(s), 1)
            if mat[lo : k + 1].any():
                return MonteCarloAnswer(YES, i + 1, rng_seed)
    return MonteCarloAnswer(UNKNOWN, repetitions, rng_seed)


# ---------------------------------------------------------------------------
# Connected Dominating Set (4 colours 0_N, 0_Y, 1_1, 1_2)

_CDS_JOIN = JoinSpec(
    4,
    (
        (0, 0, 0),
        (0, 1, 1),
        (1, 0, 1),
        (1, 1, 1),
        (2, 2, 2),
        (3, 3, 3),
    ),
)


def _cds_matrix(omega, ntd, k, required, v1):
    w_vec = omega.weights
    w_size = min(omega.w_cap, omega.N * max(k, 1)) + 1
    acc = (k + 1, w_size)
    radix = 4

    def leaf(node):
        t = new_table(radix, node.bag, acc)
        t[0, 0, 0] = 1
        return t

    def introduce(node, child):
        v = node.vertex
        lifted = shifted(child, {1: 1, 2: w_vec[v]})
        s0 = None if v in required else child
        s3 = None if v == v1 else lifted
        return introduce_digit(child, ntd.nodes[node.children[0]].bag, v, radix, [s0, None, lifted, s3])

    def edge(node, child):
        u, v = node.edge
        out = child.copy()
        view, au, av = pair_view(out, node.bag, u, v, radix)
        cview, _, _ = pair_view(child, node.bag, u, v, radix)
        # a 0_Y next to a chosen endpoint may have just been promoted from 0_N
        for one in (2, 3):
            take2(view, au, av, one, 1)[...] ^= take2(cview, au, av, one, 0)
            take2(view, au, av, 1, one)[...] ^= take2(cview, au, av, 0, one)
        # cut consistency between chosen endpoints; 0_N next to 1_j dies
        for du, dv in ((2, 3), (3, 2), (2, 0), (0, 2), (3, 0), (0, 3)):
            take2(view, au, av, du, dv)[...] = 0
        return out

    def forget(node, child):
        parts = forget_digit(child, ntd.nodes[node.children[0]].bag, node.vertex, radix)
        return parts[1] ^ parts[2] ^ parts[3]

    def join(node, left, right):
        bag = node.bag

        def corr(digits):
            di = dw = 0
            for j, d in enumerate(digits):
                if d >= 2:
                    di += 1
                    dw += w_vec[bag[j]]
            return (di, dw)

        return join_tables(left, right, bag, _CDS_JOIN, corr)

    root = _dp.run_dp(ntd, _Handlers(leaf, introduce, edge, forget, join))
    return root[0]


def cds_countc(omega, ntd, required, k, v1=None) -> np.ndarray:
    s = sorted(set(required))
    if k == 0 and omega.universe:
        raise ValueError("k=0 with a nonempty graph")
    if v1 is None:
        if not s:
            raise ValueError("required set empty: caller must iterate v1")
        v1 = min(s)
    mat = _cds_matrix(omega, ntd, k, set(s), v1)
    return mat[k]


def solve_cds(
    g: UndirectedGraph, k: int, required=(), ntd=None, repetitions: int = 20, rng_seed: int = 0
) -> MonteCarloAnswer:
    if g.n == 0:
        return MonteCarloAnswer(YES, 0, rng_seed, witness=frozenset())
    if k == 0:
        return MonteCarloAnswer(UNKNOWN, 0, rng_seed)
    s = sorted(set(required))
    ntd = _resolve_ntd(g, ntd)
    v1s = s[:1] if s else list(range(g.n))
    for i in range(repetitions):
        for v1 in v1s:
            omega = sample_weights(steiner_universe(g), rng_seed + i)
            mat = _cds_matrix(omega, ntd, k, set(s) | {v1}, v1)
            if mat[max(len(s), 1) : k + 1].any():
                return MonteCarloAnswer(YES, i + 1, rng_seed)
    return MonteCarloAnswer(UNKNOWN, repetitions, rng_seed)


# ---------------------------------------------------------------------------
# Connected Odd Cycle Transversal (4 colours 0_L, 0_R, 1_1, 1_2)


def coct_universe(g: UndirectedGraph) -> tuple:
    return tuple((v, "X") for v in range(g.n)) + tuple((v, "L") for v in range(g.n))


def _coct_matrix(omega, ntd, k, required, v1, n):
    wX = omega.weights[:n]
    wL = omega.weights[n:]
    w_size = min(omega.w_cap, omega.N * (max(k, 1) + n)) + 1
    acc = (k + 1, w_size)
    radix = 4

    def leaf(node):
        t = new_table(radix, node.bag, acc)
        t[0, 0, 0] = 1
        return t

    def introduce(node, child):
        v = node.vertex
        in_x = shifted(child, {1: 1, 2: wX[v]})
        in_l = shifted(child, {2: wL[v]})
        s0 = None if v in required else in_l
        s1 = None if v in required else child
        s3 = None if v == v1 else in_x
        return introduce_digit(child, ntd.nodes[node.children[0]].bag, v, radix, [s0, s1, in_x, s3])

    def edge(node, child):
        u, v = node.edge
        out = child.copy()
        view, au, av = pair_view(out, node.bag, u, v, radix)
        for du, dv in ((2, 3), (3, 2), (0, 0), (1, 1)):
            take2(view, au, av, du, dv)[...] = 0
        return out

    def forget(node, child):
        parts = forget_digit(child, ntd.nodes[node.children[0]].bag, node.vertex, radix)
        return parts[0] ^ parts[1] ^ parts[2] ^ parts[3]

    def join(node, left, right):
        bag = node.bag

        def corr(digits):
            di = dw = 0
            for j, d in enumerate(digits):
                if d >= 2:
                    di += 1
                    dw += wX[bag[j]]
                elif d == 0:
                    dw += wL[bag[j]]
            return (di, dw)

        return join_tables(left, right, bag, _diag(radix), corr)

    root = _dp.run_dp(ntd, _Handlers(leaf, introduce, edge, forget, join))
    return root[0]


def coct_countc(omega, ntd, required, k, v1=None) -> np.ndarray:
    s = sorted(set(required))
    if v1 is None:
        if not s:
            raise ValueError("required set empty: caller must iterate v1")
        v1 = min(s)
    n = len(omega.universe) // 2
    mat = _coct_matrix(omega, ntd, k, set(s), v1, n)
    return mat[k]


def solve_coct(
    g: UndirectedGraph, k: int, required=(), ntd=None, repetitions: int = 20, rng_seed: int = 0
) -> MonteCarloAnswer:
    from .oracle import is_bipartite_subset

    s = sorted(set(required))
    if not s and is_bipartite_subset(g, range(g.n)):
        return MonteCarloAnswer(YES, 0, rng_seed, witness=frozenset())
    if k == 0:
        return MonteCarloAnswer(UNKNOWN, 0, rng_seed)
    ntd = _resolve_ntd(g, ntd)
    v1s = s[:1] if s else list(range(g.n))
    for i in range(repetitions):
        for v1 in v1s:
            omega = sample_weights(coct_universe(g), rng_seed + i)
            mat = _coct_matrix(omega, ntd, k, set(s) | {v1}, v1, g.n)
            if mat[max(len(s), 1) : k + 1].any():
                return MonteCarloAnswer(YES, i + 1, rng_seed)
    return MonteCarloAnswer(UNKNOWN, repetitions, rng_seed)


# ---------------------------------------------------------------------------
# (Connected) Feedback Vertex Set: marked forests


def fvs_universe(g: UndirectedGraph) -> tuple:
    return tuple((v, "F") for v in range(g.n)) + tuple((v, "M") for v in range(g.n))


def _forest_matrix(omega, ntd, n, excluded, connected: bool, v1, fold: bool, b_cap=None):
    """Shared FVS/CFVS table builder.

    Colours: FVS uses 0/1_1/1_2 (radix 3 with 0 = not in forest); CFVS uses
    0_1/0_2/1_1/1_2 (radix 4, complement side carries its own cut).
    Accumulator layout: fold=True -> (a, drift a-b-c offset by n, w);
    fold=False -> (a, b, c, w).
    """
    wF = omega.weights[:n]
    wM = omega.weights[n:]
    radix = 4 if connected else 3
    ones = (2, 3) if connected else (1, 2)
    b_cap = (n if n else 1) if b_cap is None else b_cap
    w_size = min(omega.w_cap, omega.N * 2 * n if n else 1) + 1
    # accumulator axes are addressed from the end so the same shifts apply
    # to whole tables and to digit views alike
    if fold:
        acc = (n + 1, 2 * n + 1, w_size)
        sh_a = {-3: 1, -2: 1}
        sh_b = {-2: -1}
        sh_c = {-2: -1}
    else:
        acc = (n + 1, b_cap, n + 1, w_size)
        sh_a = {-4: 1}
        sh_b = {-3: 1}
        sh_c = {-2: 1}

    def _shift(t, parts):
        out = t
        for ax, d in parts.items():
            if d > 0:
                out = _dp.shift_acc(out, ax if ax >= 0 else out.ndim + ax, d)
            elif d < 0:
                out = _unshift(out, out.ndim + ax, -d)
        return out

    def _unshift(t, axis, delta):
        # inverse direction shift (toward index 0), dropping underflow
        size = t.shape[axis]
        out = np.zeros_like(t)
        src: list = [slice(None)] * t.ndim
        dst: list = [slice(None)] * t.ndim
        src[axis] = slice(delta, size)
        dst[axis] = slice(0, size - delta)
        out[tuple(dst)] = t[tuple(src)]
        return out

    def leaf(node):
        t = new_table(radix, node.bag, acc)
        if fold:
            t[0, 0, n, 0] = 1
        else:
            t[0, 0, 0, 0, 0] = 1
        return t

    def introduce(node, child):
        v = node.vertex
        lifted = _shift(child, {**sh_a, -1: wF[v]} if wF[v] else dict(sh_a))
        one = None if v in excluded else lifted
        if connected:
            s0_1 = child
            s0_2 = None if v == v1 else child
            parts = [s0_1, s0_2, one, one]
        else:
            parts = [child, one, one]
        return introduce_digit(child, ntd.nodes[node.children[0]].bag, v, radix, parts)

    def edge(node, child):
        u, v = node.edge
        out = child.copy()
        view, au, av = pair_view(out, node.bag, u, v, radix)
        if connected:
            for du, dv in ((0, 1), (1, 0), (2, 3), (3, 2)):
                take2(view, au, av, du, dv)[...] = 0
        else:
            for du, dv in ((1, 2), (2, 1)):
                take2(view, au, av, du, dv)[...] = 0
        for one in ones:
            sl = take2(view, au, av, one, one)
            sl[...] = _shift(sl, dict(sh_b))
        return out

    def forget(node, child):
        v = node.vertex
        parts = forget_digit(child, ntd.nodes[node.children[0]].bag, v, radix)
        total = parts[0]
        for p in parts[1:]:
            total = total ^ p
        marker_src = parts[ones[0]]
        marked = _shift(marker_src, dict(sh_c))
        marked = _dp.shift_acc(marked, marked.ndim - 1, wM[v])
        return total ^ marked

    jspec = _diag(radix)

    def join(node, left, right):
        bag = node.bag

        def corr(digits):
            da = dw = 0
            for j, d in enumerate(digits):
                if d in ones:
                    da += 1
                    dw += wF[bag[j]]
            if fold:
                return (da, n + da, dw)
            return (da, 0, 0, dw)

        return join_tables(left, right, bag, jspec, corr)

    root = _dp.run_dp(ntd, _Handlers(leaf, introduce, edge, forget, join))
    return root[0]


def fvs_countc(omega, ntd, required, a: int, b: int, c: int) -> np.ndarray:
    """Parity per W of marked-forest candidates with |X|=a, b edges, c markers.

    ``required`` is the vertex set forced into the deletion side (excluded
    from X).
    """
    n = len(omega.universe) // 2
    if b >= max(n, 1):
        raise ValueError("b must be < |V|")
    mat = _forest_matrix(omega, ntd, n, set(required), False, None, fold=False)
    return mat[a, b, c]


def cfvs_countc(omega, ntd, required, a: int, b: int, c: int) -> np.ndarray:
    n = len(omega.universe) // 2
    if b >= max(n, 1):
        raise ValueError("b must be < |V|")
    s = sorted(set(required))
    if not s:
        raise ValueError("required set empty: caller must iterate v1")
    mat = _forest_matrix(omega, ntd, n, set(s), True, min(s), fold=False)
    return mat[a, b, c]


def _fvs_yes_rows(mat_folded, n, k_max, k_min=0):
    """Odd parity anywhere in the drift-0 slice with a >= n - k_max."""
    sl = mat_folded[max(n - k_max, 0) : n - k_min + 1, n, :]
    return bool(sl.any())


def solve_fvs(
    g: UndirectedGraph, k: int, required=(), ntd=None, repetitions: int = 20, rng_seed: int = 0
) -> MonteCarloAnswer:
    """Feedback vertex set of size <= k containing ``required``."""
    from .oracle import is_acyclic_subset

    s = set(required)
    if k < len(s):
        return MonteCarloAnswer(UNKNOWN, 0, rng_seed)
    if is_acyclic_subset(g, set(range(g.n)) - s):
        return MonteCarloAnswer(YES, 0, rng_seed, witness=frozenset(s))
    ntd = _resolve_ntd(g, ntd)
    for i in range(repetitions):
        omega = sample_weights(fvs_universe(g), rng_seed + i)
        mat = _forest_matrix(omega, ntd, g.n, s, False, None, fold=True)
        if _fvs_yes_rows(mat, g.n, k, len(s)):
            return MonteCarloAnswer(YES, i + 1, rng_seed)
    return MonteCarloAnswer(UNKNOWN, repetitions, rng_seed)


def solve_cfvs(
    g: UndirectedGraph, k: int, required=(), ntd=None, repetitions: int = 20, rng_seed: int = 0
) -> MonteCarloAnswer:
    """Connected feedback vertex set of size <= k containing ``required``."""
    from .oracle import is_forest

    s = sorted(set(required))
    if not s and is_forest(g):
        return MonteCarloAnswer(YES, 0, rng_seed, witness=frozenset())
    if k == 0:
        return MonteCarloAnswer(UNKNOWN, 0, rng_seed)
    ntd = _resolve_ntd(g, ntd)
    v1s = s[:1] if s else list(range(g.n))
    for i in range(repetitions):
        for v1 in v1s:
            omega = sample_weights(fvs_universe(g), rng_seed + i)
            mat = _forest_matrix(omega, ntd, g.n, set(s), True, v1, fold=True)
            if _fvs_yes_rows(mat, g.n, k, max(len(s), 1)):
                return MonteCarloAnswer(YES, i + 1, rng_seed)
    return MonteCarloAnswer(UNKNOWN, repetitions, rng_seed)
