"""Graph containers, parsing and the weighted-edge subdivision transform.

Vertices are dense 0-based integers.  PACE ``.gr`` files use 1-based ids,
which are shifted on parse.  Graphs are immutable after construction and
safe to share between concurrent solver runs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

Edge = tuple[int, int]


class GraphFormatError(ValueError):
    """Raised on malformed graph input."""


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class UndirectedGraph:
    n: int
    edges: tuple[Edge, ...]
    multigraph: bool = False

    def __init__(self, n: int, edges, multigraph: bool = False):
        norm = []
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"vertex id out of range: ({u}, {v}) with n={n}")
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}")
            norm.append(_norm_edge(u, v))
        if not multigraph and len(set(norm)) != len(norm):
            raise GraphFormatError("duplicate edge in simple graph")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(norm))
        object.__setattr__(self, "multigraph", multigraph)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        nbr: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbr[u].append(v)
            nbr[v].append(u)
        return tuple(tuple(sorted(x)) for x in nbr)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in set(self.edges)

    def is_connected(self, vertices=None) -> bool:
        """BFS connectivity of the induced subgraph (whole graph by default).

        The empty vertex set counts as disconnected unless the graph itself
        is empty.
        """
        verts = set(range(self.n)) if vertices is None else set(vertices)
        if not verts:
            return self.n == 0
        verts_s = verts
        start = next(iter(verts_s))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in self.adj[x]:
                if y in verts_s and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen == verts_s


@dataclass(frozen=True)
class DirectedGraph:
    n: int
    arcs: tuple[Edge, ...]

    def __init__(self, n: int, arcs):
        norm = []
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"vertex id out of range: ({u}, {v}) with n={n}")
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}")
            norm.append((u, v))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "arcs", tuple(norm))

    @property
    def m(self) -> int:
        return len(self.arcs)

    @cached_property
    def out_adj(self) -> tuple[tuple[int, ...], ...]:
        nbr: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            nbr[u].append(v)
        return tuple(tuple(sorted(x)) for x in nbr)

    @cached_property
    def in_adj(self) -> tuple[tuple[int, ...], ...]:
        nbr: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            nbr[v].append(u)
        return tuple(tuple(sorted(x)) for x in nbr)

    def underlying_undirected(self) -> UndirectedGraph:
        return UndirectedGraph(self.n, sorted({_norm_edge(u, v) for u, v in self.arcs}))


Graph = UndirectedGraph | DirectedGraph


def parse_graph(text: str, fmt: str = "auto") -> Graph:
    """Parse a graph from PACE ``.gr`` text or the JSON edge-list format.

    ``fmt`` is one of ``pace_gr``, ``edge_list_json`` or ``auto`` (sniffed).
    """
    if fmt == "auto":
        stripped = text.lstrip()
        fmt = "edge_list_json" if stripped.startswith("{") else "pace_gr"
    if fmt == "edge_list_json":
        return _parse_json(text)
    if fmt == "pace_gr":
        return _parse_pace(text)
    raise GraphFormatError(f"unknown graph format {fmt!r}")


def _parse_json(text: str) -> Graph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"bad JSON: {exc}") from exc
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise GraphFormatError('JSON graph needs keys "n" and "edges"')
    n = obj["n"]
    edges = [tuple(e) for e in obj["edges"]]
    if obj.get("directed", False):
        return DirectedGraph(n, edges)
    return UndirectedGraph(n, edges)


def _parse_pace(text: str) -> UndirectedGraph:
    n = m = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None or len(parts) != 4 or parts[1] != "tw":
                raise GraphFormatError(f"malformed header at line {lineno}: {raw!r}")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError as exc:
                raise GraphFormatError(f"malformed header at line {lineno}") from exc
        else:
            if n is None:
                raise GraphFormatError("edge line before 'p tw' header")
            if len(parts) != 2:
                raise GraphFormatError(f"malformed edge at line {lineno}: {raw!r}")
            u, v = int(parts[0]), int(parts[1])
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphFormatError(f"vertex id out of range at line {lineno}")
            edges.append((u - 1, v - 1))
    if n is None:
        raise GraphFormatError("missing 'p tw' header")
    if m is not None and m != len(edges):
        raise GraphFormatError(f"header declares {m} edges, found {len(edges)}")
    return UndirectedGraph(n, edges)


def serialize_graph(g: Graph, fmt: str = "edge_list_json") -> str:
    if fmt == "pace_gr":
        if isinstance(g, DirectedGraph):
            raise GraphFormatError("PACE .gr cannot hold directed graphs")
        lines = [f"p tw {g.n} {g.m}"]
        lines += [f"{u + 1} {v + 1}" for u, v in g.edges]
        return "\n".join(lines) + "\n"
    if fmt == "edge_list_json":
        directed = isinstance(g, DirectedGraph)
        pairs = g.arcs if directed else g.edges
        return json.dumps({"n": g.n, "edges": [list(e) for e in pairs], "directed": directed})
    raise GraphFormatError(f"unknown graph format {fmt!r}")


def subdivide_weighted(
    g: UndirectedGraph, weights: dict[Edge, int]
) -> tuple[UndirectedGraph, dict[int, tuple[Edge, int]]]:
    """Replace every edge e by a path with weights[e] - 1 new internal vertices.

    Returns the subdivided graph together with a map from each new vertex id
    to ``(origin_edge, position)`` with position counted from the lower
    endpoint.  The result has ``g.n + sum(c(e) - 1)`` vertices and
    ``sum(c(e))`` edges.
    """
    for e in g.edges:
        c = weights.get(_norm_edge(*e))
        if c is None:
            raise ValueError(f"missing weight for edge {e}")
        if c < 1:
            raise ValueError(f"non-positive weight {c} for edge {e}")
    new_edges: list[Edge] = []
    origin: dict[int, tuple[Edge, int]] = {}
    nxt = g.n
    for e in g.edges:
        u, v = e
        c = weights[_norm_edge(u, v)]
        if c == 1:
            new_edges.append(e)
            continue
        chain = [u]
        for i in range(c - 1):
            origin[nxt] = (e, i)
            chain.append(nxt)
            nxt += 1
        chain.append(v)
        new_edges.extend(_norm_edge(a, b) for a, b in zip(chain, chain[1:]))
    return UndirectedGraph(nxt, new_edges, multigraph=g.multigraph), origin
