"""CNF -> Weighted Steiner Tree hard-instance generator.

Compiles a CNF formula into the group-gadget matrix construction: one row
of gadgets per variable group, m(5*beta*n' + 1) columns, weights drawn
from {1, N, N^2, N^3, N^4} with N the vertex count, target

    K = a1 N^4 + a2 N^3 + a3 N^2 + a4 N + a5 + a6.

The formula is satisfiable iff the instance has a Steiner tree of total
weight <= K.  A mixed-search sweep yields a path decomposition of width
at most beta n' + 2 beta + 3 <= beta n' + PATHWIDTH_GADGET_FACTOR * 3^beta
(the measured constant is documented below).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import product

from .decomposition import PathDecomposition, validate
from .graphs import Edge, UndirectedGraph, _norm_edge, subdivide_weighted
from .decomposition import pd_after_subdivision

# Measured over beta in {1, 2}: sweep bags hold the 3*beta triple block, the
# clause vertex, root, two auxiliaries and one frontier vertex per group, so
# width <= beta n' + 2 beta + 3; c = 2 covers it for every beta >= 1.
PATHWIDTH_GADGET_FACTOR = 2

# to_unweighted materializes sum(c(e)) edges; refuse clearly beyond this.
MAX_SUBDIVIDED_EDGES = 5_000_000


class InstanceTooLarge(ValueError):
    """Subdivided instance would not fit in memory at desk scale."""


@dataclass(frozen=True)
class CNF:
    num_vars: int
    clauses: tuple[tuple[int, ...], ...]  # DIMACS literals, 1-based, sign = polarity

    def __post_init__(self):
        for cl in self.clauses:
            if not cl:
                raise ValueError("empty clause")
            if any(lit == 0 or abs(lit) > self.num_vars for lit in cl):
                raise ValueError(f"literal out of range in clause {cl}")

    def satisfied_by(self, assignment: dict[int, bool]) -> bool:
        return all(
            any(assignment[abs(l)] == (l > 0) for l in cl) for cl in self.clauses
        )


def parse_dimacs(text: str) -> CNF:
    num_vars = None
    clauses: list[tuple[int, ...]] = []
    cur: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"malformed DIMACS header: {raw!r}")
            num_vars = int(parts[2])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                if cur:
                    clauses.append(tuple(cur))
                    cur = []
            else:
                cur.append(lit)
    if cur:
        clauses.append(tuple(cur))
    if num_vars is None:
        raise ValueError("missing 'p cnf' header")
    return CNF(num_vars, tuple(clauses))


def brute_force_sat(formula: CNF) -> dict[int, bool] | None:
    """Exhaustive satisfiability check; returns an assignment or None."""
    n = formula.num_vars
    if n > 24:
        raise ValueError("brute-force SAT capped at 24 variables")
    for mask in range(1 << n):
        assignment = {v + 1: bool(mask >> v & 1) for v in range(n)}
        if formula.satisfied_by(assignment):
            return assignment
    return None


@dataclass(frozen=True)
class GadgetParams:
    beta: int
    block_vars: int  # floor(log2(3^beta))
    n_groups: int
    a1: int
    a2: int
    a3: int
    a4: int
    a5: int
    a6: int
    N: int

    @property
    def K(self) -> int:
        N = self.N
        return (
            self.a1 * N**4
            + self.a2 * N**3
            + self.a3 * N**2
            + self.a4 * N
            + self.a5
            + self.a6
        )


@dataclass
class HardInstance:
    graph: UndirectedGraph
    weights: dict[Edge, int]
    terminals: tuple[int, ...]
    params: GadgetParams
    formula: CNF
    coords: dict[str, int]
    groups: tuple[tuple[int, ...], ...]  # variables (1-based) per group
    witness_edges: tuple[Edge, ...] | None = None
    path_decomposition: PathDecomposition | None = None

    @property
    def K(self) -> int:
        return self.params.K


def _sequences(beta: int) -> list[tuple[int, ...]]:
    return sorted(product((1, 2, 3), repeat=beta))


def _assignment_sequence(beta: int, block_vars: int, bits: int) -> tuple[int, ...]:
    """Lexicographically ``bits``-th sequence encodes that group assignment."""
    assert 0 <= bits < 1 << block_vars
    return _sequences(beta)[bits]


def _group_satisfies(formula: CNF, group_vars, bits: int, clause) -> bool:
    assignment = {v: bool(bits >> i & 1) for i, v in enumerate(group_vars)}
    return any(abs(l) in assignment and assignment[abs(l)] == (l > 0) for l in clause)


def gen_steiner(formula: CNF, beta: int, assignment: dict[int, bool] | None = None) -> HardInstance:
    """Build the weighted Steiner instance for ``formula``.

    If a satisfying ``assignment`` is supplied, the explicit witness edge
    set is constructed and asserted to sum to exactly K.
    """
    if beta < 1:
        raise ValueError("beta must be >= 1")
    if 3**beta > 729:
        raise ValueError("beta too large for table limits")
    n, m = formula.num_vars, len(formula.clauses)
    if m == 0 or n == 0:
        raise ValueError("formula must have at least one variable and clause")
    block_vars = int(math.floor(math.log2(3**beta)))
    n_groups = -(-n // block_vars)
    groups = tuple(
        tuple(range(g * block_vars + 1, min((g + 1) * block_vars, n) + 1))
        for g in range(n_groups)
    )
    copies_small = 5 * beta * n_groups + 1
    a1 = m * copies_small
    seqs = _sequences(beta)

    coords: dict[str, int] = {}
    counter = 0

    def vid(name: str) -> int:
        nonlocal counter
        if name not in coords:
            coords[name] = counter
            counter += 1
        return coords[name]

    r = vid("r")
    # allocate all vertices first so N is known before weighting edges
    for F in range(n_groups):
        for col in range(1, a1 + 1):
            for i in range(beta):
                for u in (1, 2, 3):
                    vid(f"v:{F}:{col}:{i}:{u}")
                    vid(f"g:{F}:{col}:{i}:{u}")
                for u in (1, 2):
                    vid(f"h:{F}:{col}:{i}:{u}")
            for S in seqs:
                s_str = "".join(map(str, S))
                vid(f"x:{F}:{col}:{s_str}")
                vid(f"xp:{F}:{col}:{s_str}")
        for col in range(1, a1):
            for i in range(beta):
                vid(f"p:{F}:{col}:{i}")
                vid(f"q:{F}:{col}:{i}")
        for i in range(beta):
            vid(f"w:{F}:{i}")
    for j in range(1, m + 1):
        for b in range(copies_small):
            vid(f"c:{j}:{b}")

    N = counter
    params = GadgetParams(
        beta=beta,
        block_vars=block_vars,
        n_groups=n_groups,
        a1=a1,
        a2=3**beta * n_groups * a1,
        a3=beta * n_groups * (4 * a1 - 1),
        a4=2 * beta * n_groups * a1,
        a5=beta * n_groups * a1,
        a6=n_groups * a1,
        N=N,
    )

    weights: dict[Edge, int] = {}
    terminals = {r}

    def add_edge(a: int, b: int, w: int) -> Edge:
        e = _norm_edge(a, b)
        assert e not in weights, f"duplicate edge {e}"
        weights[e] = w
        return e

    for F in range(n_groups):
        for col in range(1, a1 + 1):
            for i in range(beta):
                v1_, v2_, v3_ = (vid(f"v:{F}:{col}:{i}:{u}") for u in (1, 2, 3))
                g1, g2, g3 = (vid(f"g:{F}:{col}:{i}:{u}") for u in (1, 2, 3))
                terminals.update((g1, g2, g3))
                for ga, vv in ((g1, v1_), (g1, v2_), (g2, v1_), (g2, v3_), (g3, v2_), (g3, v3_)):
                    add_edge(ga, vv, N**2)
                for u in (1, 2):
                    h = vid(f"h:{F}:{col}:{i}:{u}")
                    add_edge(h, vid(f"v:{F}:{col}:{i}:{u}"), N)
                    add_edge(h, vid(f"v:{F}:{col}:{i}:{u + 1}"), N)
                    add_edge(r, h, 1)
            for S in seqs:
                s_str = "".join(map(str, S))
                x = vid(f"x:{F}:{col}:{s_str}")
                xp = vid(f"xp:{F}:{col}:{s_str}")
                terminals.add(x)
                add_edge(x, xp, 1)
                add_edge(xp, r, N**3)
                for i in range(beta):
                    add_edge(x, vid(f"v:{F}:{col}:{i}:{S[i]}"), N**3)
        for col in range(1, a1):
            for i in range(beta):
                p = vid(f"p:{F}:{col}:{i}")
                q = vid(f"q:{F}:{col}:{i}")
                terminals.add(p)
                exit_v = vid(f"v:{F}:{col}:{i}:3")
                entry_v = vid(f"v:{F}:{col + 1}:{i}:1")
                add_edge(p, exit_v, N**2)
                add_edge(p, entry_v, N**2)
                add_edge(q, exit_v, N)
                add_edge(q, entry_v, N)
                add_edge(r, q, 1)
        for i in range(beta):
            add_edge(r, vid(f"v:{F}:1:{i}:1"), N)
            w_v = vid(f"w:{F}:{i}")
            add_edge(r, w_v, 1)
            add_edge(w_v, vid(f"v:{F}:{a1}:{i}:3"), N)

    for j, clause in enumerate(formula.clauses, start=1):
        for b in range(copies_small):
            c = vid(f"c:{j}:{b}")
            terminals.add(c)
            col = m * b + j
            for F in range(n_groups):
                for bits in range(1 << len(groups[F]) if groups[F] else 1):
                    if not _group_satisfies(formula, groups[F], bits, clause):
                        continue
                    S = _assignment_sequence(beta, block_vars, bits)
                    s_str = "".join(map(str, S))
                    add_edge(c, vid(f"xp:{F}:{col}:{s_str}"), N**4)

    assert counter == N, "vertex census mismatch"
    graph = UndirectedGraph(N, sorted(weights))
    inst = HardInstance(
        graph=graph,
        weights=weights,
        terminals=tuple(sorted(terminals)),
        params=params,
        formula=formula,
        coords=dict(coords),
        groups=groups,
    )
    if assignment is not None:
        witness = _witness_edges(inst, assignment)
        total = sum(weights[e] for e in witness)
        assert total == params.K, f"witness weight {total} != K {params.K}"
        inst.witness_edges = tuple(sorted(witness))
    inst.path_decomposition = gen_path_decomposition(inst)
    return inst


def _witness_edges(inst: HardInstance, assignment: dict[int, bool]) -> set[Edge]:
    """The explicit optimal tree for a satisfying assignment."""
    if not inst.formula.satisfied_by(assignment):
        raise ValueError("assignment does not satisfy the formula")
    par = inst.params
    beta, a1, n_groups = par.beta, par.a1, par.n_groups
    coords = inst.coords
    weights = inst.weights
    m = len(inst.formula.clauses)
    edges: set[Edge] = set()

    def add(a: str, b: str):
        e = _norm_edge(coords[a], coords[b])
        assert e in weights, f"witness edge {a}-{b} not in graph"
        assert e not in edges, f"witness edge {a}-{b} added twice"
        edges.add(e)

    group_bits = []
    group_seq = []
    for F in range(n_groups):
        bits = sum(assignment[v] << i for i, v in enumerate(inst.groups[F]))
        group_bits.append(bits)
        group_seq.append(_assignment_sequence(beta, par.block_vars, bits))

    for F in range(n_groups):
        S = group_seq[F]
        for i in range(beta):
            s_i = S[i]
            if s_i in (1, 3):
                # h^2 spans {v2, v3}; h^1 spans {v1, v2}
                u = 2 if s_i == 1 else 1
                for col in range(1, a1 + 1):
                    add(f"h:{F}:{col}:{i}:{u}", f"v:{F}:{col}:{i}:{u}")
                    add(f"h:{F}:{col}:{i}:{u}", f"v:{F}:{col}:{i}:{u + 1}")
                    add("r", f"h:{F}:{col}:{i}:{u}")
            else:
                for col in range(1, a1):
                    add(f"q:{F}:{col}:{i}", f"v:{F}:{col}:{i}:3")
                    add(f"q:{F}:{col}:{i}", f"v:{F}:{col + 1}:{i}:1")
                    add("r", f"q:{F}:{col}:{i}")
                add("r", f"v:{F}:1:{i}:1")
                add("r", f"w:{F}:{i}")
                add(f"w:{F}:{i}", f"v:{F}:{a1}:{i}:3")
            # guards pick a spanned neighbour (one not selected by S)
            guard_adj = {1: (1, 2), 2: (1, 3), 3: (2, 3)}
            for col in range(1, a1 + 1):
                for u in (1, 2, 3):
                    tgt = next(x for x in guard_adj[u] if x != s_i)
                    add(f"g:{F}:{col}:{i}:{u}", f"v:{F}:{col}:{i}:{tgt}")
            for col in range(1, a1):
                tgt = f"v:{F}:{col}:{i}:3" if s_i != 3 else f"v:{F}:{col + 1}:{i}:1"
                add(f"p:{F}:{col}:{i}", tgt)
        s_str = "".join(map(str, S))
        for col in range(1, a1 + 1):
            for S0 in _sequences(beta):
                s0_str = "".join(map(str, S0))
                if S0 == S:
                    add(f"x:{F}:{col}:{s_str}", f"xp:{F}:{col}:{s_str}")
                    add(f"xp:{F}:{col}:{s_str}", "r")
                else:
                    i = next(i for i in range(beta) if S0[i] != S[i])
                    add(f"x:{F}:{col}:{s0_str}", f"v:{F}:{col}:{i}:{S0[i]}")

    for j, clause in enumerate(inst.formula.clauses, start=1):
        F = next(
            F
            for F in range(n_groups)
            if _group_satisfies(inst.formula, inst.groups[F], group_bits[F], clause)
        )
        s_str = "".join(map(str, group_seq[F]))
        for b in range(5 * beta * n_groups + 1):
            add(f"c:{j}:{b}", f"xp:{F}:{m * b + j}:{s_str}")
    return edges


def gen_path_decomposition(inst: HardInstance) -> PathDecomposition:
    """Column sweep realizing the mixed-search strategy; validates clean."""
    par = inst.params
    beta, a1, n_groups = par.beta, par.a1, par.n_groups
    m = len(inst.formula.clauses)
    coords = inst.coords
    bags: list[frozenset[int]] = []
    frontier: list[set[int]] = [set() for _ in range(n_groups)]
    r = coords["r"]
    for col in range(1, a1 + 1):
        b, j = divmod(col - 1, m)
        j += 1
        c = coords[f"c:{j}:{b}"]
        for F in range(n_groups):
            others = set().union(*(frontier[Fo] for Fo in range(n_groups) if Fo != F))
            triple = {coords[f"v:{F}:{col}:{i}:{u}"] for i in range(beta) for u in (1, 2, 3)}
            base = {r, c} | others | triple
            bags.append(frozenset(base))
            for i in range(beta):
                for u in (1, 2, 3):
                    bags.append(frozenset(base | {coords[f"g:{F}:{col}:{i}:{u}"]}))
                for u in (1, 2):
                    bags.append(frozenset(base | {coords[f"h:{F}:{col}:{i}:{u}"]}))
            for S in _sequences(beta):
                s_str = "".join(map(str, S))
                bags.append(
                    frozenset(
                        base | {coords[f"x:{F}:{col}:{s_str}"], coords[f"xp:{F}:{col}:{s_str}"]}
                    )
                )
            if col < a1:
                nxt = set()
                for i in range(beta):
                    entry = coords[f"v:{F}:{col + 1}:{i}:1"]
                    nxt.add(entry)
                    bags.append(
                        frozenset(
                            base
                            | nxt
                            | {coords[f"p:{F}:{col}:{i}"], coords[f"q:{F}:{col}:{i}"]}
                        )
                    )
                frontier[F] = nxt
            else:
                for i in range(beta):
                    bags.append(frozenset(base | {coords[f"w:{F}:{i}"]}))
                frontier[F] = set()
    pd = PathDecomposition(bags)
    bad = validate(pd, inst.graph)
    assert not bad, f"hard-instance path decomposition invalid: {bad[:3]}"
    bound = beta * n_groups + PATHWIDTH_GADGET_FACTOR * 3**beta
    assert pd.width <= bound, f"width {pd.width} exceeds {bound}"
    return pd


@dataclass(frozen=True)
class UnweightedInstance:
    graph: UndirectedGraph
    terminals: tuple[int, ...]
    k_nodes: int
    path_decomposition: PathDecomposition
    vertex_origin: dict[int, tuple[Edge, int]]


def to_unweighted(inst: HardInstance) -> UnweightedInstance:
    """Subdivide each edge e c(e)-1 times; Steiner node budget K+1.

    Positive-instance trees of weight K become trees with K edges, i.e.
    K+1 vertices.
    """
    total_edges = sum(inst.weights.values())
    if total_edges > MAX_SUBDIVIDED_EDGES:
        raise InstanceTooLarge(
            f"subdivided instance has {total_edges} edges; "
            f"cap is {MAX_SUBDIVIDED_EDGES}"
        )
    g2, origin = subdivide_weighted(inst.graph, inst.weights)
    pd = inst.path_decomposition or gen_path_decomposition(inst)
    pd2 = pd_after_subdivision(pd, inst.graph, inst.weights)
    return UnweightedInstance(
        graph=g2,
        terminals=inst.terminals,
        k_nodes=inst.K + 1,
        path_decomposition=pd2,
        vertex_origin=origin,
    )


def sidecar_json(inst: HardInstance) -> str:
    data = {
        "num_vars": inst.formula.num_vars,
        "clauses": [list(cl) for cl in inst.formula.clauses],
        "beta": inst.params.beta,
        "block_vars": inst.params.block_vars,
        "n_groups": inst.params.n_groups,
        "a": [
            inst.params.a1,
            inst.params.a2,
            inst.params.a3,
            inst.params.a4,
            inst.params.a5,
            inst.params.a6,
        ],
        "N": inst.params.N,
        "K": inst.K,
        "terminals": list(inst.terminals),
        "width": inst.path_decomposition.width if inst.path_decomposition else None,
        "witness_edges": [list(e) for e in inst.witness_edges] if inst.witness_edges else None,
        "coords": inst.coords,
    }
    return json.dumps(data)
