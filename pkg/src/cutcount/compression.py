"""Iterative-compression FPT solvers with explicit witnesses.

fvs_3k, cvc_2k and cfvs_3k maintain a size<=k solution along a vertex or
edge-contraction induction.  Each compression step fixes the hull B inside
every bag and sweeps over core evaluations (colourings of B), so a single
sweep stores only tables over the at most two free vertices per bag:
polynomial space, asserted by a live-cell audit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import _dp
from ._dp import JoinSpec, forget_digit, introduce_digit, join_tables, new_table, pair_view, take2
from .decomposition import (
    FORGET,
    INTRODUCE,
    INTRODUCE_EDGE,
    JOIN,
    LEAF,
    NiceTreeDecomposition,
    TreeDecomposition,
    make_nice,
)
from .engine import UNKNOWN, YES, MonteCarloAnswer, sample_weights
from .graphs import UndirectedGraph, _norm_edge
from .oracle import is_acyclic_subset, is_connected_subset, is_vertex_cover


@dataclass
class SpaceAudit:
    """Tracks live DP cells per core evaluation against a polynomial cap."""

    per_table_cap: int
    live_cap: int
    live: int = 0
    peak: int = 0

    def alloc(self, cells: int) -> None:
        assert cells <= self.per_table_cap, (
            f"core-evaluation table too large: {cells} > {self.per_table_cap}"
        )
        self.live += cells
        self.peak = max(self.peak, self.live)
        assert self.live <= self.live_cap, "core-evaluation live cells exceed polynomial cap"

    def free(self, cells: int) -> None:
        self.live -= cells


@dataclass(frozen=True)
class _Problem:
    """Pinned-DP transition tables for one constrained problem.

    States are digits; ``ones`` are the forest/solution-side states whose
    bag occurrences double-count at joins.  ``intro(v, state)`` returns the
    accumulator shifts for introducing v in that state or None if dead;
    ``edge(su, sv)`` returns shifts (possibly {}) or None to kill;
    ``forget(v, state)`` returns a list of shift dicts (a marker adds one).
    Shift keys are end-relative accumulator axes.
    """

    radix: int
    ones: tuple[int, ...]
    intro: object
    edge: object
    forget: object


def _apply_shifts(table: np.ndarray, shifts: dict[int, int]) -> np.ndarray:
    out = table
    for ax, d in shifts.items():
        axis = out.ndim + ax
        if d > 0:
            out = _dp.shift_acc(out, axis, d)
        elif d < 0:
            size = out.shape[axis]
            res = np.zeros_like(out)
            src: list = [slice(None)] * out.ndim
            dst: list = [slice(None)] * out.ndim
            src[axis] = slice(-d, size)
            dst[axis] = slice(0, size + d)
            res[tuple(dst)] = out[tuple(src)]
            out = res
    return out


def pinned_countc(
    ntd: NiceTreeDecomposition,
    pinned: dict[int, int],
    problem: _Problem,
    acc_shape: tuple[int, ...],
    join_corr,
    audit: SpaceAudit | None = None,
    leaf_acc: tuple[int, ...] | None = None,
) -> np.ndarray:
    """Run one core evaluation: the DP over free digits with B pinned.

    ``join_corr(pinned_ones_in_bag, free_digits, free_bag)`` must return the
    per-axis gather offsets.  Returns the root accumulator table.
    """
    radix = problem.radix
    tables: dict[int, np.ndarray] = {}
    free_bags: dict[int, tuple[int, ...]] = {}

    def track(t: np.ndarray) -> np.ndarray:
        if audit is not None:
            audit.alloc(t.size)
        return t

    def untrack(t: np.ndarray) -> None:
        if audit is not None:
            audit.free(t.size)

    for idx, node in enumerate(ntd.nodes):
        fbag = tuple(v for v in node.bag if v not in pinned)
        free_bags[idx] = fbag
        kids = []
        for c in node.children:
            kids.append(tables.pop(c))
        if node.kind == LEAF:
            t = new_table(radix, (), acc_shape)
            t[(0,) + (leaf_acc or (0,) * len(acc_shape))] = 1
        elif node.kind == INTRODUCE:
            v = node.vertex
            child = kids[0]
            if v in pinned:
                shifts = problem.intro(v, pinned[v])
                t = np.zeros_like(child) if shifts is None else _apply_shifts(child, shifts)
            else:
                parts = []
                for state in range(radix):
                    shifts = problem.intro(v, state)
                    parts.append(None if shifts is None else _apply_shifts(child, shifts))
                t = introduce_digit(child, free_bags[node.children[0]], v, radix, parts)
        elif node.kind == INTRODUCE_EDGE:
            u, v = node.edge
            child = kids[0]
            if u in pinned and v in pinned:
                shifts = problem.edge(pinned[u], pinned[v])
                t = np.zeros_like(child) if shifts is None else _apply_shifts(child, shifts)
            elif u in pinned or v in pinned:
                if v in pinned:
                    u, v = v, u  # u pinned, v free
                pos = fbag.index(v)
                nb = len(fbag)
                view = child.reshape((radix,) * nb + child.shape[1:])
                ax = nb - 1 - pos
                slices = []
                for dv in range(radix):
                    shifts = problem.edge(pinned[u], dv)
                    sl = np.take(view, dv, axis=ax)
                    slices.append(
                        np.zeros_like(sl) if shifts is None else _apply_shifts(sl, shifts)
                    )
                t = np.stack(slices, axis=ax).reshape(child.shape)
            else:
                t = child.copy()
                oview, au, av = pair_view(t, fbag, u, v, radix)
                cview, _, _ = pair_view(child, fbag, u, v, radix)
                for du in range(radix):
                    for dv in range(radix):
                        shifts = problem.edge(du, dv)
                        src = take2(cview, au, av, du, dv)
                        dst = take2(oview, au, av, du, dv)
                        if shifts is None:
                            dst[...] = 0
                        elif shifts:
                            dst[...] = _apply_shifts(src, shifts)
        elif node.kind == FORGET:
            v = node.vertex
            child = kids[0]
            if v in pinned:
                t = None
                for shifts in problem.forget(v, pinned[v]):
                    part = _apply_shifts(child, shifts)
                    t = part if t is None else t ^ part
            else:
                parts = forget_digit(child, free_bags[node.children[0]], v, radix)
                t = None
                for state in range(radix):
                    for shifts in problem.forget(v, state):
                        part = _apply_shifts(parts[state], shifts)
                        t = part if t is None else t ^ part
        else:  # JOIN
            pinned_ones = sum(1 for v in node.bag if v in pinned and pinned[v] in problem.ones)
            pinned_bag = tuple(v for v in node.bag if v in pinned)
            jspec = JoinSpec(radix, tuple((d, d, d) for d in range(radix)))

            def corr(digits, _fb=fbag, _pb=pinned_bag):
                return join_corr(_pb, digits, _fb)

            t = join_tables(kids[0], kids[1], fbag, jspec, corr)
        for kid in kids:
            untrack(kid)
        tables[idx] = track(t)
    out = tables[ntd.root]
    untrack(out)
    return out[(0,) * (out.ndim - len(acc_shape))] if out.ndim > len(acc_shape) else out


def _hull_decomposition(g: UndirectedGraph, hull: set[int]) -> NiceTreeDecomposition:
    """Tree decomposition with ``hull`` in every bag over the forest G - hull."""
    rest = [v for v in range(g.n) if v not in hull]
    rest_set = set(rest)
    parent: dict[int, int | None] = {}
    order: list[int] = []
    seen: set[int] = set()
    for s in rest:
        if s in seen:
            continue
        parent[s] = None
        stack = [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            order.append(x)
            for y in g.adj[x]:
                if y in rest_set and y not in seen:
                    seen.add(y)
                    parent[y] = x
                    stack.append(y)
    bags = []
    index: dict[int, int] = {}
    edges = []
    base = frozenset(hull)
    for v in order:
        index[v] = len(bags)
        bags.append(base | {v, parent[v]} if parent[v] is not None else base | {v})
        if parent[v] is not None:
            edges.append((index[parent[v]], index[v]))
    if not bags:
        bags = [base]
    roots = [i for i, v in enumerate(order) if parent[v] is None]
    edges += [(a, b) for a, b in zip(roots, roots[1:])]
    td = TreeDecomposition(bags, edges)
    return make_nice(td, g)


# ---------------------------------------------------------------------------
# problem configurations


def _fvs_problem(n, weightsF, weightsM, excluded):
    # states: 0 (deleted side), 1 = left forest, 2 = right forest
    # folded accumulators (a, drift a-b-c offset n, w): axes -3, -2, -1
    def intro(v, state):
        if state == 0:
            return {}
        if v in excluded:
            return None
        return {-3: 1, -2: 1, -1: weightsF[v]}

    def edge(su, sv):
        if {su, sv} == {1, 2}:
            return None
        if su == sv != 0:
            return {-2: -1}
        return {}

    def forget(v, state):
        if state == 1:
            return [{}, {-2: -1, -1: weightsM[v]}]
        return [{}]

    return _Problem(3, (1, 2), intro, edge, forget)


def _cfvs_problem(n, weightsF, weightsM, excluded, v1):
    # states: 0 = Y_1, 1 = Y_2, 2 = X_1, 3 = X_2
    def intro(v, state):
        if state == 0:
            return {}
        if state == 1:
            return None if v == v1 else {}
        if v in excluded:
            return None
        return {-3: 1, -2: 1, -1: weightsF[v]}

    def edge(su, sv):
        if {su, sv} == {0, 1} or {su, sv} == {2, 3}:
            return None
        if su == sv and su >= 2:
            return {-2: -1}
        return {}

    def forget(v, state):
        if state == 2:
            return [{}, {-2: -1, -1: weightsM[v]}]
        return [{}]

    return _Problem(4, (2, 3), intro, edge, forget)


def _cvc_problem(weights, required, v1):
    # states: 0 = out, 1 = X_1, 2 = X_2; accumulators (i, w): axes -2, -1
    def intro(v, state):
        if state == 0:
            return None if v in required else {}
        if state == 2 and v == v1:
            return None
        return {-2: 1, -1: weights[v]}

    def edge(su, sv):
        if {su, sv} == {1, 2} or su == sv == 0:
            return None
        return {}

    def forget(v, state):
        return [{}]

    return _Problem(3, (1, 2), intro, edge, forget)


# ---------------------------------------------------------------------------
# core evaluation enumerations


def _fvs_evaluations(hull: list[int], excluded: set[int]):
    pools = [(0,) if v in excluded else (0, 1, 2) for v in hull]
    yield from product(*pools)


def _tree_evaluations(g, hull, options_root, child_options, forced: dict[int, int]):
    """Spanning-tree-guided evaluations over the hull (paper's 2/3-choice rule)."""
    hull_set = set(hull)
    comps: list[list[int]] = []
    seen: set[int] = set()
    adj = {v: [u for u in g.adj[v] if u in hull_set] for v in hull}
    for s in hull:
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        qi = 0
        while qi < len(comp):
            x = comp[qi]
            qi += 1
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
        comps.append(comp)
    big = max(comps, key=len)
    extras = [v for comp in comps if comp is not big for v in comp]
    # BFS tree of the big component, rooted at its first vertex
    tree_order: list[tuple[int, int | None]] = [(big[0], None)]
    seen = {big[0]}
    qi = 0
    while qi < len(tree_order):
        x, _ = tree_order[qi]
        qi += 1
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                tree_order.append((y, x))
    free_nodes = [big[0]] + extras

    def rec(i: int, assignment: dict[int, int]):
        if i == len(tree_order) + len(extras):
            yield tuple(assignment[v] for v in hull)
            return
        if i < len(tree_order):
            v, par = tree_order[i]
            pool = options_root if par is None else child_options[assignment[par]]
        else:
            v = extras[i - len(tree_order)]
            pool = options_root
        if v in forced:
            pool = [s for s in pool if s == forced[v]]
        for s in pool:
            assignment[v] = s
            yield from rec(i + 1, assignment)
        assignment.pop(v, None)

    yield from rec(0, {})


# ---------------------------------------------------------------------------
# constrained one-sided queries


def _fvs_query(g, hull, k, required, repetitions, seed, connected=False, v1_list=(None,)):
    """Does g have a (connected) FVS of size <= k containing ``required``?

    One-sided: True is certain, False may be a false negative.
    """
    n = g.n
    hull_l = sorted(hull)
    ntd = _hull_decomposition(g, set(hull_l))
    universe = tuple((v, "F") for v in range(n)) + tuple((v, "M") for v in range(n))
    req = set(required)
    if len(req) > k:
        return False
    for rep in range(repetitions):
        for v1 in v1_list:
            omega = sample_weights(universe, seed + rep * 7919 + (v1 or 0))
            wF, wM = omega.weights[:n], omega.weights[n:]
            w_size = min(omega.w_cap, omega.N * 2 * n) + 1
            acc = (n + 1, 2 * n + 1, w_size)
            audit = SpaceAudit(
                per_table_cap=(16 if connected else 9) * int(np.prod(acc)),
                live_cap=(n + 3) * (16 if connected else 9) * int(np.prod(acc)),
            )
            if connected:
                prob = _cfvs_problem(n, wF, wM, req, v1)
                forced = {v1: 0} if v1 in set(hull_l) else {}
                evals = _tree_evaluations(
                    g, hull_l, (0, 1, 2, 3), {0: (2, 3, 0), 1: (2, 3, 1), 2: (0, 1, 2), 3: (0, 1, 3)}, forced
                )
            else:
                prob = _fvs_problem(n, wF, wM, req)
                evals = _fvs_evaluations(hull_l, req)

            def corr(pinned_bag, digits, fbag, _wF=wF, _prob=prob):
                da = dw = 0
                for v, d in zip(fbag, digits):
                    if d in _prob.ones:
                        da += 1
                        dw += _wF[v]
                for v in pinned_bag:
                    if current_eval[v] in _prob.ones:
                        da += 1
                        dw += _wF[v]
                return (da, n + da, dw)

            combined = None
            for ev in evals:
                current_eval = dict(zip(hull_l, ev))
                if connected and v1 in current_eval and current_eval[v1] != 0:
                    continue
                if any(current_eval.get(r) in prob.ones for r in req):
                    continue
                root = pinned_countc(ntd, current_eval, prob, acc, corr, audit, leaf_acc=(0, n, 0))
                combined = root if combined is None else combined ^ root
            if combined is None:
                continue
            lo = max(n - k, 0)
            hi = n - len(req) + 1
            if combined[lo:hi, n, :].any():
                return True
    return False


def _cvc_query(g, hull, k, required, repetitions, seed, v1_list):
    n = g.n
    hull_l = sorted(hull)
    ntd = _hull_decomposition(g, set(hull_l))
    universe = tuple(range(n))
    req = set(required)
    if len(req) > k:
        return False
    for rep in range(repetitions):
        for v1 in v1_list:
            omega = sample_weights(universe, seed + rep * 7919 + v1)
            w_size = min(omega.w_cap, omega.N * max(k, 1)) + 1
            acc = (k + 1, w_size)
            audit = SpaceAudit(
                per_table_cap=9 * int(np.prod(acc)), live_cap=(n + 3) * 9 * int(np.prod(acc))
            )
            reqv = req | {v1}
            prob = _cvc_problem(omega.weights, reqv, v1)
            forced = {v1: 1} if v1 in set(hull_l) else {}
            evals = _tree_evaluations(g, hull_l, (0, 1, 2), {0: (1, 2), 1: (0, 1), 2: (0, 2)}, forced)

            def corr(pinned_bag, digits, fbag, _w=omega.weights):
                di = dw = 0
                for v, d in zip(fbag, digits):
                    if d:
                        di += 1
                        dw += _w[v]
                for v in pinned_bag:
                    if current_eval[v]:
                        di += 1
                        dw += _w[v]
                return (di, dw)

            combined = None
            for ev in evals:
                current_eval = dict(zip(hull_l, ev))
                if any(current_eval.get(r) == 0 for r in reqv):
                    continue
                root = pinned_countc(ntd, current_eval, prob, acc, corr, audit)
                combined = root if combined is None else combined ^ root
            if combined is None:
                continue
            if combined[max(len(reqv), 1) : k + 1, :].any():
                return True
    return False


# ---------------------------------------------------------------------------
# drivers


def _candidate_order(g):
    return sorted(range(g.n), key=lambda v: -g.degree(v))


def fvs_3k(g: UndirectedGraph, k: int, repetitions: int = 20, rng_seed: int = 0) -> MonteCarloAnswer:
    """Feedback vertex set of size <= k, by iterative compression."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if is_acyclic_subset(g, range(g.n)):
        return MonteCarloAnswer(YES, 0, rng_seed, witness=frozenset())
    if k == 0:
        return MonteCarloAnswer(UNKNOWN, 0, rng_seed)
    sol: set[int] = set()
    for i in range(1, g.n + 1):
        gi = UndirectedGraph(i, [e for e in g.edges if e[0] < i and e[1] < i])
        hull = sol | {i - 1}
        if len(hull) <= k:
            sol = _shrink_fvs(gi, hull)
            continue
        seed_i = rng_seed + 10007 * i
        if not _fvs_query(gi, hull, k, set(), repetitions, seed_i):
            return MonteCarloAnswer(UNKNOWN, repetitions, rng_seed)
        rebuilt: set[int] = set()
        for v in _candidate_order(gi):
            if is_acyclic_subset(gi, set(range(i)) - rebuilt):
                break
            if v in rebuilt:
                continue
            if _fvs_query(gi, hull, k, rebuilt | {v}, repetitions, seed_i + v + 1):
                rebuilt.add(v)
        if not is_acyclic_subset(gi, set(range(i)) - rebuilt) or len(rebuilt) > k:
            return MonteCarloAnswer(UNKNOWN, repetitions, rng_seed)
        sol = rebuilt
    assert is_acyclic_subset(g, set(range(g.n)) - sol) and len(sol) <= k
    return MonteCarloAnswer(YES, repetitions, rng_seed, witness=frozenset(sol))


def _shrink_fvs(gi, hull):
    """Drop redundant hull vertices greedily (keeps it an FVS)."""
    cur = set(hull)
    for v in sorted(hull):
        if is_acyclic_subset(gi, set(range(gi.n)) - (cur - {v})):
            cur.discard(v)
    return cur


def _contraction_graphs(g: UndirectedGraph):
    """Edge-contraction sequence along a spanning tree, reverse BFS order.

    Yields (graph_i, labels_i) for i = 1..n where labels map original
    vertices onto 0..i-1.
    """
    n = g.n
    parent = {0: None}
    bfs_edges = []
    order = [0]
    qi = 0
    while qi < len(order):
        x = order[qi]
        qi += 1
        for y in g.adj[x]:
            if y not in parent:
                parent[y] = x
                bfs_edges.append((x, y))
                order.append(y)
    assert len(order) == n, "graph must be connected"
    seqs = []
    labels = list(range(n))

    def normalize(lbl):
        uniq = sorted(set(lbl))
        remap = {old: new for new, old in enumerate(uniq)}
        return [remap[x] for x in lbl]

    labels = normalize(labels)
    seqs.append(labels[:])
    for x, y in reversed(bfs_edges):
        tgt = min(labels[x], labels[y])
        src = max(labels[x], labels[y])
        labels = [tgt if l == src else l for l in labels]
        labels = normalize(labels)
        seqs.append(labels[:])
    seqs.reverse()  # seqs[i] has i+1 blobs
    out = []
    for i, lbl in enumerate(seqs, start=1):
        edges = sorted({_norm_edge(lbl[u], lbl[v]) for u, v in g.edges if lbl[u] != lbl[v]})
        out.append((UndirectedGraph(i, edges), lbl))
    return out


def cvc_2k(g: UndirectedGraph, k: int, repetitions: int = 20, rng_seed: int = 0) -> MonteCarloAnswer:
    """Connected vertex cover of size <= k, by iterative compression."""
    if not g.is_connected():
        raise ValueError("input graph must be connected")
    if g.m == 0:
        return MonteCarloAnswer(YES, 0, rng_seed, witness=frozenset())
    if k == 0:
        return MonteCarloAnswer(UNKNOWN, 0, rng_seed)
    chain = _contraction_graphs(g)
    sol: set[int] = set()
    prev_labels = chain[0][1]
    for i in range(1, len(chain)):
        gi, labels = chain[i]
        # map previous solution blobs into the refined graph
        split_groups: dict[int, set[int]] = {}
        for v in range(g.n):
            split_groups.setdefault(prev_labels[v], set()).add(labels[v])
        changed = next(lbl for lbl, grp in split_groups.items() if len(grp) == 2)
        u_new, v_new = sorted(split_groups[changed])
        hull = set()
        for blob in sol:
            if blob == changed:
                continue
            hull |= split_groups[blob]
        hull |= {u_new, v_new}
        if len(hull) <= k and is_vertex_cover(gi, hull) and is_connected_subset(gi, hull):
            sol = _shrink_cvc(gi, hull)
            prev_labels = labels
            continue
        seed_i = rng_seed + 20011 * i
        e0 = gi.edges[0] if gi.edges else None
        v1_list = list(e0) if e0 else [0]
        if not _cvc_query(gi, hull, k, set(), repetitions, seed_i, v1_list):
            return MonteCarloAnswer(UNKNOWN, repetitions, rng_seed)
        rebuilt: set[int] = set()
        for v in _candidate_order(gi):
            if rebuilt and is_vertex_cover(gi, rebuilt) and is_connected_subset(gi, rebuilt):
                break
            if v in rebuilt:
                continue
            if _cvc_query(gi, hull, k, rebuilt | {v}, repetitions, seed_i + 31 * (v + 1), [min(rebuilt | {v})]):
                rebuilt.add(v)
        ok = rebuilt and is_vertex_cover(gi, rebuilt) and is_connected_subset(gi, rebuilt)
        if not ok or len(rebuilt) > k:
            return MonteCarloAnswer(UNKNOWN, repetitions, rng_seed)
        sol = rebuilt
        prev_labels = labels
    assert is_vertex_cover(g, sol) and is_connected_subset(g, sol) and len(sol) <= k
    return MonteCarloAnswer(YES, repetitions, rng_seed, witness=frozenset(sol))


def _shrink_cvc(gi, hull):
    cur = set(hull)
    for v in sorted(hull):
        cand = cur - {v}
        if cand and is_vertex_cover(gi, cand) and is_connected_subset(gi, cand):
            cur = cand
    return cur


def _short_cycle(g: UndirectedGraph) -> list[int]:
    """Vertices of some shortest cycle through each BFS root; [] if forest."""
    best: list[int] = []
    for s in range(g.n):
        par = {s: None}
        dist = {s: 0}
        q = [s]
        qi = 0
        while qi < len(q):
            x = q[qi]
            qi += 1
            for y in g.adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    par[y] = x
                    q.append(y)
                elif par.get(x) != y:
                    # cycle via x-y: climb to the meet point
                    px, py = x, y
                    ax, ay = [px], [py]
                    while dist[px] > dist[py]:
                        px = par[px]
                        ax.append(px)
                    while dist[py] > dist[px]:
                        py = par[py]
                        ay.append(py)
                    while px != py:
                        px, py = par[px], par[py]
                        ax.append(px)
                        ay.append(py)
                    cyc = ax + ay[:-1]
                    if not best or len(set(cyc)) < len(best):
                        best = sorted(set(cyc))
        if best:
            break
    return best


def cfvs_3k(g: UndirectedGraph, k: int, repetitions: int = 20, rng_seed: int = 0) -> MonteCarloAnswer:
    """Connected feedback vertex set of size <= k, by iterative compression."""
    if not g.is_connected():
        raise ValueError("input graph must be connected")
    if is_acyclic_subset(g, range(g.n)):
        return MonteCarloAnswer(YES, 0, rng_seed, witness=frozenset())
    if k == 0:
        return MonteCarloAnswer(UNKNOWN, 0, rng_seed)
    chain = _contraction_graphs(g)
    sol: set[int] = set()
    prev_labels = chain[0][1]
    for i in range(1, len(chain)):
        gi, labels = chain[i]
        split_groups: dict[int, set[int]] = {}
        for v in range(g.n):
            split_groups.setdefault(prev_labels[v], set()).add(labels[v])
        changed = next(lbl for lbl, grp in split_groups.items() if len(grp) == 2)
        u_new, v_new = sorted(split_groups[changed])
        hull = set()
        for blob in sol:
            if blob == changed:
                continue
            hull |= split_groups[blob]
        hull |= {u_new, v_new}

        def _is_cfvs(graph, ys):
            if not is_acyclic_subset(graph, set(range(graph.n)) - ys):
                return False
            return is_connected_subset(graph, ys) if ys else True

        if len(hull) <= k and _is_cfvs(gi, hull):
            sol = _shrink_cfvs(gi, hull)
            prev_labels = labels
            continue
        if is_acyclic_subset(gi, range(gi.n)):
            sol = set()
            prev_labels = labels
            continue
        seed_i = rng_seed + 30013 * i
        v1_list = _short_cycle(gi) or [0]
        if not _fvs_query(gi, hull, k, set(), repetitions, seed_i, connected=True, v1_list=v1_list):
            return MonteCarloAnswer(UNKNOWN, repetitions, rng_seed)
        rebuilt: set[int] = set()
        for v in _candidate_order(gi):
            if rebuilt and _is_cfvs(gi, rebuilt):
                break
            if v in rebuilt:
                continue
            if _fvs_query(
                gi, hull, k, rebuilt | {v}, repetitions, seed_i + 17 * (v + 1),
                connected=True, v1_list=[min(rebuilt | {v})],
            ):
                rebuilt.add(v)
        if not rebuilt or not _is_cfvs(gi, rebuilt) or len(rebuilt) > k:
            return MonteCarloAnswer(UNKNOWN, repetitions, rng_seed)
        sol = rebuilt
        prev_labels = labels
    assert _cfvs_verify(g, sol, k)
    return MonteCarloAnswer(YES, repetitions, rng_seed, witness=frozenset(sol))


def _shrink_cfvs(gi, hull):
    cur = set(hull)
    for v in sorted(hull):
        cand = cur - {v}
        ok = is_acyclic_subset(gi, set(range(gi.n)) - cand)
        if ok and (not cand or is_connected_subset(gi, cand)):
            cur = cand
    return cur


def _cfvs_verify(g, ys, k):
    if len(ys) > k or not is_acyclic_subset(g, set(range(g.n)) - ys):
        return False
    return is_connected_subset(g, ys) if ys else True
