"""Brute-force reference solvers: ground truth at desk scale.

Everything here enumerates the literal problem definition (vertex subsets,
edge/arc subsets, or edge multiplicity vectors).  No cleverness on purpose.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graphs import DirectedGraph, UndirectedGraph, _norm_edge


@dataclass(frozen=True)
class OracleLimit:
    max_n: int = 14
    max_edges: int = 22

    def check(self, n: int, m: int = 0) -> None:
        if n > self.max_n:
            raise ValueError(f"oracle limit exceeded: n={n} > {self.max_n}")
        if m > self.max_edges:
            raise ValueError(f"oracle limit exceeded: m={m} > {self.max_edges}")


DEFAULT_LIMIT = OracleLimit()


def _components(n: int, edges, vertices=None) -> list[set[int]]:
    verts = set(range(n)) if vertices is None else set(vertices)
    adj: dict[int, list[int]] = {v: [] for v in verts}
    for u, v in edges:
        if u in adj and v in adj:
            adj[u].append(v)
            adj[v].append(u)
    comps = []
    seen: set[int] = set()
    for s in sorted(verts):
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        comps.append(comp)
    return comps


def induced_edges(g: UndirectedGraph, vertices: set[int]):
    return [e for e in g.edges if e[0] in vertices and e[1] in vertices]


def is_connected_subset(g: UndirectedGraph, vertices) -> bool:
    """Connectivity of G[X]; the empty set counts as disconnected unless n=0."""
    vs = set(vertices)
    if not vs:
        return g.n == 0
    return len(_components(g.n, induced_edges(g, vs), vs)) == 1


def is_acyclic_subset(g: UndirectedGraph, vertices) -> bool:
    vs = set(vertices)
    edges = induced_edges(g, vs)
    return len(vs) - len(edges) == len(_components(g.n, edges, vs))


def is_forest(g: UndirectedGraph) -> bool:
    return is_acyclic_subset(g, range(g.n))


def is_bipartite_subset(g: UndirectedGraph, vertices) -> bool:
    vs = set(vertices)
    color: dict[int, int] = {}
    adj: dict[int, list[int]] = {v: [] for v in vs}
    for u, v in induced_edges(g, vs):
        adj[u].append(v)
        adj[v].append(u)
    for s in vs:
        if s in color:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in color:
                    color[y] = color[x] ^ 1
                    stack.append(y)
                elif color[y] == color[x]:
                    return False
    return True


def is_vertex_cover(g: UndirectedGraph, vertices) -> bool:
    vs = set(vertices)
    return all(u in vs or v in vs for u, v in g.edges)


def is_dominating(g: UndirectedGraph, vertices) -> bool:
    vs = set(vertices)
    dominated = set(vs)
    for v in vs:
        dominated.update(g.adj[v])
    return len(dominated) == g.n


def _min_subset(g: UndirectedGraph, required: set[int], predicate, limit=DEFAULT_LIMIT):
    """Smallest superset of ``required`` satisfying ``predicate``, or None."""
    limit.check(g.n)
    rest = [v for v in range(g.n) if v not in required]
    for extra in range(len(rest) + 1):
        for combo in combinations(rest, extra):
            cand = required | set(combo)
            if predicate(cand):
                return len(cand)
    return None


def steiner_min(g: UndirectedGraph, terminals, limit=DEFAULT_LIMIT) -> int | None:
    """Minimum |X| with T inside X and G[X] connected."""
    t = set(terminals)
    if not t:
        raise ValueError("terminal set must be nonempty")
    return _min_subset(g, t, lambda x: is_connected_subset(g, x), limit)


def cvc_min(g: UndirectedGraph, required=(), limit=DEFAULT_LIMIT) -> int | None:
    req = set(required)

    def ok(x):
        return is_vertex_cover(g, x) and (is_connected_subset(g, x) if x else g.m == 0)

    if g.m == 0 and not req:
        return 0
    return _min_subset(g, req, ok, limit)


def cds_min(g: UndirectedGraph, required=(), limit=DEFAULT_LIMIT) -> int | None:
    req = set(required)
    if g.n == 0:
        return 0

    def ok(x):
        return bool(x) and is_dominating(g, x) and is_connected_subset(g, x)

    return _min_subset(g, req, ok, limit)


def coct_min(g: UndirectedGraph, required=(), limit=DEFAULT_LIMIT) -> int | None:
    req = set(required)

    def ok(x):
        rest = set(range(g.n)) - set(x)
        if not is_bipartite_subset(g, rest):
            return False
        return is_connected_subset(g, x) if x else is_bipartite_subset(g, rest)

    if not req and is_bipartite_subset(g, set(range(g.n))):
        return 0
    return _min_subset(g, req, ok, limit)


def fvs_min(g: UndirectedGraph, required=(), limit=DEFAULT_LIMIT) -> int | None:
    req = set(required)
    return _min_subset(g, req, lambda y: is_acyclic_subset(g, set(range(g.n)) - set(y)), limit)


def cfvs_min(g: UndirectedGraph, required=(), limit=DEFAULT_LIMIT) -> int | None:
    req = set(required)

    def ok(y):
        rest = set(range(g.n)) - set(y)
        if not is_acyclic_subset(g, rest):
            return False
        return is_connected_subset(g, y) if y else is_acyclic_subset(g, rest)

    if not req and is_forest(g):
        return 0
    return _min_subset(g, req, ok, limit)


def pcc_table(g: UndirectedGraph, limit=DEFAULT_LIMIT) -> dict[int, int]:
    """Map covered-vertex count l -> minimum number of disjoint cycles covering
    exactly l vertices (only feasible l appear; l=0 maps to 0)."""
    limit.check(g.n, g.m)
    best: dict[int, int] = {0: 0}
    m = g.m
    inc = [0] * g.n
    masks = []
    for i, (u, v) in enumerate(g.edges):
        masks.append((u, v))
        inc[u] |= 1 << i
        inc[v] |= 1 << i
    for sub in range(1, 1 << m):
        deg = [0] * g.n
        ok = True
        covered = []
        for i in range(m):
            if sub >> i & 1:
                u, v = masks[i]
                deg[u] += 1
                deg[v] += 1
        for v in range(g.n):
            if deg[v] not in (0, 2):
                ok = False
                break
            if deg[v] == 2:
                covered.append(v)
        if not ok:
            continue
        edges = [masks[i] for i in range(m) if sub >> i & 1]
        comps = _components(g.n, edges, covered)
        ncyc = len(comps)
        l = len(covered)
        if l not in best or ncyc < best[l]:
            best[l] = ncyc
    return best


def pcc_feasible(g: UndirectedGraph, k: int, l: int, limit=DEFAULT_LIMIT) -> bool:
    table = pcc_table(g, limit)
    return l in table and table[l] <= k


def dpcc_table(d: DirectedGraph, limit=DEFAULT_LIMIT) -> dict[int, int]:
    limit.check(d.n, d.m)
    best: dict[int, int] = {0: 0}
    m = d.m
    for sub in range(1, 1 << m):
        indeg = [0] * d.n
        outdeg = [0] * d.n
        arcs = [d.arcs[i] for i in range(m) if sub >> i & 1]
        for u, v in arcs:
            outdeg[u] += 1
            indeg[v] += 1
        covered = []
        ok = True
        for v in range(d.n):
            if indeg[v] != outdeg[v] or indeg[v] > 1:
                ok = False
                break
            if indeg[v] == 1:
                covered.append(v)
        if not ok:
            continue
        comps = _components(d.n, [(u, v) for u, v in arcs], covered)
        ncyc = len(comps)
        l = len(covered)
        if l not in best or ncyc < best[l]:
            best[l] = ncyc
    return best


def dpcc_feasible(d: DirectedGraph, k: int, l: int, limit=DEFAULT_LIMIT) -> bool:
    table = dpcc_table(d, limit)
    return l in table and table[l] <= k


def longest_path_len(g, limit=DEFAULT_LIMIT) -> int:
    """Maximum edge count of a simple (directed) path, by DFS enumeration."""
    limit.check(g.n)
    directed = isinstance(g, DirectedGraph)
    adj = g.out_adj if directed else g.adj
    best = 0

    def dfs(v, seen, length):
        nonlocal best
        best = max(best, length)
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                dfs(u, seen, length + 1)
                seen.discard(u)

    for s in range(g.n):
        dfs(s, {s}, 0)
    return best


def longest_cycle_len(g, limit=DEFAULT_LIMIT) -> int:
    """Maximum length of a simple (directed) cycle; 0 if acyclic."""
    table = dpcc_table(g, limit) if isinstance(g, DirectedGraph) else pcc_table(g, limit)
    feasible = [l for l, k in table.items() if l > 0 and k == 1]
    return max(feasible, default=0)


def hamiltonian_cycle(g, limit=DEFAULT_LIMIT) -> bool:
    if g.n == 0:
        return False
    if isinstance(g, DirectedGraph):
        return dpcc_feasible(g, 1, g.n, limit)
    return pcc_feasible(g, 1, g.n, limit)


def min_cycle_cover(g, limit=DEFAULT_LIMIT) -> int | None:
    table = dpcc_table(g, limit) if isinstance(g, DirectedGraph) else pcc_table(g, limit)
    if g.n == 0:
        return 0
    return table.get(g.n)


def gmtsp_min(g: UndirectedGraph, limit=DEFAULT_LIMIT) -> int | None:
    """Minimum closed-walk length visiting all vertices: the shortest connected
    spanning even-degree sub-multigraph with multiplicities <= 2."""
    limit.check(g.n, g.m)
    if g.n == 0:
        return 0
    if not g.is_connected():
        return None
    if g.n == 1:
        return 0
    m = g.m
    best = None
    phi = [0] * m

    def rec(i, total):
        nonlocal best
        if best is not None and total >= best:
            return
        if i == m:
            deg = [0] * g.n
            used = []
            for j, mult in enumerate(phi):
                if mult:
                    u, v = g.edges[j]
                    deg[u] += mult
                    deg[v] += mult
                    used.append((u, v))
            if any(d % 2 for d in deg):
                return
            if len(_components(g.n, used)) == 1:
                best = total
            return
        for mult in (0, 1, 2):
            phi[i] = mult
            rec(i + 1, total + mult)
        phi[i] = 0

    rec(0, 0)
    return best


def spanning_tree_leaf_counts(g: UndirectedGraph, limit=DEFAULT_LIMIT) -> set[int]:
    """Set of leaf counts realized by spanning trees of g."""
    limit.check(g.n, g.m)
    out: set[int] = set()
    if g.n == 0 or not g.is_connected():
        return out
    if g.n == 1:
        return {0}
    for combo in combinations(range(g.m), g.n - 1):
        edges = [g.edges[i] for i in combo]
        if len(_components(g.n, edges)) != 1:
            continue
        deg = [0] * g.n
        for u, v in edges:
            deg[u] += 1
            deg[v] += 1
        out.add(sum(1 for d in deg if d == 1))
    return out


def outbranching_leaf_counts(d: DirectedGraph, root: int, limit=DEFAULT_LIMIT) -> set[int]:
    """Leaf counts over all spanning out-branchings rooted at ``root``."""
    limit.check(d.n, d.m)
    if not 0 <= root < d.n:
        raise ValueError("root out of range")
    out: set[int] = set()
    if d.n == 1:
        return {0} if d.m >= 0 else out
    for combo in combinations(range(d.m), d.n - 1):
        arcs = [d.arcs[i] for i in combo]
        indeg = [0] * d.n
        outdeg = [0] * d.n
        for u, v in arcs:
            indeg[v] += 1
            outdeg[u] += 1
        if indeg[root] != 0 or any(indeg[v] != 1 for v in range(d.n) if v != root):
            continue
        if len(_components(d.n, arcs)) != 1:
            continue
        out.add(sum(1 for v in range(d.n) if outdeg[v] == 0))
    return out


def full_degree_counts(g: UndirectedGraph, limit=DEFAULT_LIMIT) -> set[int]:
    """Counts of full-degree vertices realized by spanning trees."""
    limit.check(g.n, g.m)
    out: set[int] = set()
    if g.n == 0 or not g.is_connected():
        return out
    if g.n == 1:
        return {1}
    full_deg = [g.degree(v) for v in range(g.n)]
    for combo in combinations(range(g.m), g.n - 1):
        edges = [g.edges[i] for i in combo]
        if len(_components(g.n, edges)) != 1:
            continue
        deg = [0] * g.n
        for u, v in edges:
            deg[u] += 1
            deg[v] += 1
        out.add(sum(1 for v in range(g.n) if deg[v] == full_deg[v]))
    return out


def oracle_solve(problem: str, instance: dict, limit=DEFAULT_LIMIT):
    """Dispatch facade: exact answer (boolean, or optimum where applicable)."""
    g = instance["graph"]
    if problem == "steiner":
        opt = steiner_min(g, instance["terminals"], limit)
        return opt is not None and opt <= instance["k"], opt
    if problem in ("cvc", "cds", "coct", "fvs", "cfvs"):
        fn = {"cvc": cvc_min, "cds": cds_min, "coct": coct_min, "fvs": fvs_min, "cfvs": cfvs_min}[
            problem
        ]
        opt = fn(g, instance.get("required", ()), limit)
        return opt is not None and opt <= instance["k"], opt
    if problem == "pcc":
        return pcc_feasible(g, instance["k"], instance["l"], limit), None
    if problem == "dpcc":
        return dpcc_feasible(g, instance["k"], instance["l"], limit), None
    if problem == "longest_path":
        opt = longest_path_len(g, limit)
        return opt >= instance["k"], opt
    if problem == "longest_cycle":
        opt = longest_cycle_len(g, limit)
        return instance["k"] in {l for l, c in (
            dpcc_table(g, limit) if isinstance(g, DirectedGraph) else pcc_table(g, limit)
        ).items() if l > 0 and c == 1}, opt
    if problem == "hamcycle":
        return hamiltonian_cycle(g, limit), None
    if problem == "min_cycle_cover":
        opt = min_cycle_cover(g, limit)
        return opt is not None and opt <= instance["k"], opt
    if problem == "gmtsp":
        opt = gmtsp_min(g, limit)
        return opt is not None and opt <= instance["k"], opt
    if problem == "kleaf_st":
        return instance["k"] in spanning_tree_leaf_counts(g, limit), None
    if problem == "kleaf_ob":
        return instance["k"] in outbranching_leaf_counts(g, instance["root"], limit), None
    if problem == "mfdst":
        return instance["k"] in full_degree_counts(g, limit), None
    raise ValueError(f"unknown problem {problem!r}")
