"""Tree and path decompositions: validation, nicification, heuristics.

A nice decomposition is a rooted node sequence with empty root and leaf
bags, node kinds {leaf, introduce_vertex, introduce_edge, forget, join},
and every graph edge introduced by exactly one introduce_edge node.
"""

from __future__ import annotations

import json

from dataclasses import dataclass

from .graphs import DirectedGraph, Edge, Graph, UndirectedGraph, _norm_edge


class DecompositionError(ValueError):
    """Raised when an input decomposition is invalid for the operation."""


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset[int], ...]
    tree_edges: tuple[tuple[int, int], ...]
    root: int | None = None

    def __init__(self, bags, tree_edges, root=None):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in bags))
        object.__setattr__(self, "tree_edges", tuple(tuple(e) for e in tree_edges))
        object.__setattr__(self, "root", root)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1


@dataclass(frozen=True)
class PathDecomposition:
    """Ordered bag list; the underlying tree is the path bag_0 - bag_1 - ..."""

    bags: tuple[frozenset[int], ...]

    def __init__(self, bags):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in bags))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def as_tree(self) -> TreeDecomposition:
        edges = [(i, i + 1) for i in range(len(self.bags) - 1)]
        return TreeDecomposition(self.bags, edges)


LEAF = "leaf"
INTRODUCE = "introduce_vertex"
INTRODUCE_EDGE = "introduce_edge"
FORGET = "forget"
JOIN = "join"


@dataclass(frozen=True)
class NiceNode:
    kind: str
    bag: tuple[int, ...]  # sorted vertex ids
    children: tuple[int, ...] = ()
    vertex: int | None = None
    edge: Edge | None = None


@dataclass(frozen=True)
class NiceTreeDecomposition:
    """Nodes in topological (children-first) order; the root is the last."""

    nodes: tuple[NiceNode, ...]

    @property
    def root(self) -> int:
        return len(self.nodes) - 1

    @property
    def width(self) -> int:
        return max((len(nd.bag) for nd in self.nodes), default=0) - 1

    def to_json(self) -> str:
        out = []
        for nd in self.nodes:
            rec: dict = {"kind": nd.kind, "bag": list(nd.bag), "children": list(nd.children)}
            if nd.vertex is not None:
                rec["vertex"] = nd.vertex
            if nd.edge is not None:
                rec["edge"] = list(nd.edge)
            out.append(rec)
        return json.dumps(out)

    @staticmethod
    def from_json(text: str) -> "NiceTreeDecomposition":
        raw = json.loads(text)
        nodes = [
            NiceNode(
                kind=rec["kind"],
                bag=tuple(rec["bag"]),
                children=tuple(rec["children"]),
                vertex=rec.get("vertex"),
                edge=tuple(rec["edge"]) if "edge" in rec else None,
            )
            for rec in raw
        ]
        return NiceTreeDecomposition(tuple(nodes))


def _graph_edge_set(g: Graph) -> set[Edge]:
    if isinstance(g, DirectedGraph):
        return {_norm_edge(u, v) for u, v in g.arcs}
    return {_norm_edge(u, v) for u, v in g.edges}


def validate(dec, g: Graph) -> list[str]:
    """Check the decomposition axioms; returns a list of violation messages."""
    if isinstance(dec, NiceTreeDecomposition):
        return _validate_nice(dec, g)
    if isinstance(dec, PathDecomposition):
        dec = dec.as_tree()
    return _validate_tree(dec, g)


def _validate_tree(td: TreeDecomposition, g: Graph) -> list[str]:
    bad: list[str] = []
    nb = len(td.bags)
    if nb == 0:
        return ["decomposition has no bags"] if g.n > 0 else []
    adj: list[list[int]] = [[] for _ in range(nb)]
    for i, j in td.tree_edges:
        if not (0 <= i < nb and 0 <= j < nb):
            bad.append(f"tree edge ({i},{j}) out of range")
            continue
        adj[i].append(j)
        adj[j].append(i)
    if len(td.tree_edges) != nb - 1:
        bad.append(f"tree has {len(td.tree_edges)} edges for {nb} bags")
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != nb:
        bad.append("bag tree is disconnected")
        return bad
    covered = set().union(*td.bags) if td.bags else set()
    missing = set(range(g.n)) - covered
    if missing:
        bad.append(f"vertices not covered by any bag: {sorted(missing)}")
    for u, v in sorted(_graph_edge_set(g)):
        if not any(u in b and v in b for b in td.bags):
            bad.append(f"edge ({u},{v}) not covered by any bag")
    for v in range(g.n):
        holding = [i for i, b in enumerate(td.bags) if v in b]
        if not holding:
            continue
        hold = set(holding)
        comp = {holding[0]}
        stack = [holding[0]]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in hold and y not in comp:
                    comp.add(y)
                    stack.append(y)
        if comp != hold:
            bad.append(f"bags containing vertex {v} are not connected in the tree")
    return bad


def _validate_nice(ntd: NiceTreeDecomposition, g: Graph) -> list[str]:
    bad: list[str] = []
    nodes = ntd.nodes
    if not nodes:
        return ["empty nice decomposition"]
    is_child = set()
    for idx, nd in enumerate(nodes):
        for c in nd.children:
            if c >= idx:
                bad.append(f"node {idx} has child {c} not preceding it")
            is_child.add(c)
    roots = [i for i in range(len(nodes)) if i not in is_child]
    if roots != [ntd.root]:
        bad.append(f"expected unique root {ntd.root}, found {roots}")
        return bad
    if nodes[ntd.root].bag != ():
        bad.append("root bag not empty")
    edges_seen: dict[Edge, int] = {}
    forgotten_below: list[set[int]] = []
    for idx, nd in enumerate(nodes):
        bag = set(nd.bag)
        if tuple(sorted(nd.bag)) != nd.bag:
            bad.append(f"node {idx} bag not sorted")
        kids = [nodes[c] for c in nd.children]
        forg = set().union(*(forgotten_below[c] for c in nd.children)) if nd.children else set()
        if bag & forg:
            bad.append(f"node {idx} reintroduces forgotten vertices {sorted(bag & forg)}")
        if nd.kind == LEAF:
            if nd.children or bag:
                bad.append(f"leaf node {idx} must have empty bag and no children")
        elif nd.kind == INTRODUCE:
            if len(kids) != 1 or nd.vertex is None:
                bad.append(f"introduce node {idx} malformed")
            elif set(kids[0].bag) | {nd.vertex} != bag or nd.vertex in kids[0].bag:
                bad.append(f"introduce node {idx} does not add exactly {nd.vertex}")
        elif nd.kind == FORGET:
            if len(kids) != 1 or nd.vertex is None:
                bad.append(f"forget node {idx} malformed")
            elif set(kids[0].bag) - {nd.vertex} != bag or nd.vertex not in kids[0].bag:
                bad.append(f"forget node {idx} does not remove exactly {nd.vertex}")
            else:
                forg = forg | {nd.vertex}
        elif nd.kind == INTRODUCE_EDGE:
            if len(kids) != 1 or nd.edge is None:
                bad.append(f"introduce_edge node {idx} malformed")
            else:
                e = _norm_edge(*nd.edge)
                if set(kids[0].bag) != bag:
                    bad.append(f"introduce_edge node {idx} changes the bag")
                if not (e[0] in bag and e[1] in bag):
                    bad.append(f"introduce_edge node {idx}: endpoints of {e} not in bag")
                edges_seen[e] = edges_seen.get(e, 0) + 1
        elif nd.kind == JOIN:
            if len(kids) != 2 or any(set(k.bag) != bag for k in kids):
                bad.append(f"join node {idx} must have two children with identical bags")
        else:
            bad.append(f"node {idx} has unknown kind {nd.kind!r}")
        forgotten_below.append(forg)
    want = _graph_edge_set(g)
    for e, cnt in edges_seen.items():
        if cnt != 1:
            bad.append(f"edge {e} introduced {cnt} times")
        if e not in want:
            bad.append(f"edge {e} not in the graph")
    for e in sorted(want - set(edges_seen)):
        bad.append(f"edge {e} never introduced")
    uncovered = set(range(g.n)) - set().union(*(set(nd.bag) for nd in nodes))
    if uncovered:
        bad.append(f"vertices not covered: {sorted(uncovered)}")
    return bad


class _Builder:
    def __init__(self):
        self.kind: list[str] = []
        self.bag: list[tuple[int, ...]] = []
        self.children: list[list[int]] = []
        self.vertex: list[int | None] = []
        self.edge: list[Edge | None] = []

    def add(self, kind, bag, children=(), vertex=None, edge=None) -> int:
        self.kind.append(kind)
        self.bag.append(tuple(sorted(bag)))
        self.children.append(list(children))
        self.vertex.append(vertex)
        self.edge.append(edge)
        return len(self.kind) - 1

    def chain_to(self, node: int, src: frozenset, dst: frozenset) -> int:
        """Forget src - dst one by one, then introduce dst - src."""
        cur = set(src)
        for v in sorted(src - dst):
            cur.discard(v)
            node = self.add(FORGET, cur, [node], vertex=v)
        for v in sorted(dst - src):
            cur.add(v)
            node = self.add(INTRODUCE, cur, [node], vertex=v)
        return node

    def finish(self, root: int) -> NiceTreeDecomposition:
        # Re-linearize children-first from the root (edge splices may have
        # broken construction order).
        order: list[int] = []
        state = [(root, False)]
        while state:
            idx, expanded = state.pop()
            if expanded:
                order.append(idx)
            else:
                state.append((idx, True))
                for c in self.children[idx]:
                    state.append((c, False))
        remap = {old: new for new, old in enumerate(order)}
        nodes = [
            NiceNode(
                kind=self.kind[old],
                bag=self.bag[old],
                children=tuple(remap[c] for c in self.children[old]),
                vertex=self.vertex[old],
                edge=self.edge[old],
            )
            for old in order
        ]
        return NiceTreeDecomposition(tuple(nodes))


def make_nice(td: TreeDecomposition, g: Graph) -> NiceTreeDecomposition:
    """Convert a valid tree decomposition into a nice one of equal width."""
    bad = _validate_tree(td, g)
    if bad:
        raise DecompositionError("invalid tree decomposition: " + "; ".join(bad))
    nb = len(td.bags)
    b = _Builder()
    adj: list[list[int]] = [[] for _ in range(nb)]
    for i, j in td.tree_edges:
        adj[i].append(j)
        adj[j].append(i)
    root_bag = td.root if td.root is not None else 0

    # Iterative DFS building, per original bag, a node whose bag equals it.
    built: dict[int, int] = {}
    stack = [(root_bag, -1, False)]
    while stack:
        bag_id, parent, expanded = stack.pop()
        if not expanded:
            stack.append((bag_id, parent, True))
            for c in adj[bag_id]:
                if c != parent:
                    stack.append((c, bag_id, False))
            continue
        target = td.bags[bag_id]
        lifted = []
        for c in adj[bag_id]:
            if c != parent:
                lifted.append(b.chain_to(built[c], td.bags[c], target))
        if not lifted:
            node = b.add(LEAF, ())
            node = b.chain_to(node, frozenset(), target)
        else:
            node = lifted[0]
            for other in lifted[1:]:
                node = b.add(JOIN, target, [node, other])
        built[bag_id] = node

    top = b.chain_to(built[root_bag], td.bags[root_bag], frozenset())

    # Isolated vertices may live in no bag of a sloppy input decomposition;
    # the validator above guarantees coverage, so nothing to patch here.

    # Splice one introduce_edge node per graph edge above the deepest node
    # (first in construction post-order) whose bag holds both endpoints.
    parent_of: dict[int, tuple[int, int]] = {}
    for idx in range(len(b.kind)):
        for slot, c in enumerate(b.children[idx]):
            parent_of[c] = (idx, slot)
    order: list[int] = []
    state = [(top, False)]
    while state:
        idx, expanded = state.pop()
        if expanded:
            order.append(idx)
        else:
            state.append((idx, True))
            for c in reversed(b.children[idx]):
                state.append((c, False))
    for e in sorted(_graph_edge_set(g)):
        u, v = e
        host = next(i for i in order if u in b.bag[i] and v in b.bag[i])
        node = b.add(INTRODUCE_EDGE, b.bag[host], [host], edge=e)
        if host in parent_of:
            p, slot = parent_of[host]
            b.children[p][slot] = node
            parent_of[node] = (p, slot)
        else:
            top = node
        parent_of[host] = (node, 0)

    ntd = b.finish(top)
    bad = _validate_nice(ntd, g)
    assert not bad, f"make_nice produced an invalid decomposition: {bad}"
    assert ntd.width == td.width or g.n == 0
    return ntd


def heuristic_decompose(g: Graph) -> TreeDecomposition:
    """Min-degree elimination ordering; width >= treewidth, no optimality."""
    if isinstance(g, DirectedGraph):
        g = g.underlying_undirected()
    n = g.n
    if n == 0:
        return TreeDecomposition([frozenset()], [])
    nbr: list[set[int]] = [set(g.adj[v]) for v in range(n)]
    alive = set(range(n))
    order: list[int] = []
    cliques: list[frozenset[int]] = []
    while alive:
        v = min(alive, key=lambda x: (len(nbr[x]), x))
        cliques.append(frozenset(nbr[v] | {v}))
        order.append(v)
        for a in nbr[v]:
            nbr[a].discard(v)
            nbr[a].update(nbr[v] - {a})
        for a in nbr[v]:
            nbr[a].discard(v)
        nbr[v] = set()
        alive.discard(v)
    pos = {v: i for i, v in enumerate(order)}
    edges = []
    parentless = []
    for i, v in enumerate(order):
        later = [u for u in cliques[i] if pos[u] > i]
        if later:
            j = min(pos[u] for u in later)
            edges.append((i, j))
        else:
            parentless.append(i)
    # one parentless bag per connected component; chain them together
    edges += [(a, b) for a, b in zip(parentless, parentless[1:])]
    td = TreeDecomposition(cliques, edges)
    bad = _validate_tree(td, g)
    assert not bad, f"heuristic decomposition invalid: {bad}"
    return td


def nice_from_graph(g: Graph) -> NiceTreeDecomposition:
    """Heuristic decomposition followed by nicification."""
    return make_nice(heuristic_decompose(g), g)


def pd_after_subdivision(
    pd: PathDecomposition, g: UndirectedGraph, weights: dict[Edge, int]
) -> PathDecomposition:
    """Widen a path decomposition to cover the subdivided graph.

    For each edge e of weight c >= 2 the bags B(e)+{x_1} and
    B(e)+{x_i, x_i+1} are inserted right after the first bag B(e) covering
    e, so the width grows by at most 2.
    """
    bad = _validate_tree(pd.as_tree(), g)
    if bad:
        raise DecompositionError("invalid path decomposition: " + "; ".join(bad))
    # New-vertex ids must match subdivide_weighted, which numbers them in
    # stored edge order; assign first, then insert chains after host bags.
    nxt = g.n
    chains: dict[int, list[list[frozenset[int]]]] = {}
    for e in g.edges:
        en = _norm_edge(*e)
        c = weights[en]
        if c == 1:
            continue
        xs = list(range(nxt, nxt + c - 1))
        nxt += c - 1
        i = next(i for i, b in enumerate(pd.bags) if en[0] in b and en[1] in b)
        bag = pd.bags[i]
        chain = [bag | {xs[0]}]
        chain += [bag | {a, bnext} for a, bnext in zip(xs, xs[1:])]
        chains.setdefault(i, []).append(chain)
    new_bags: list[frozenset[int]] = []
    for i, bag in enumerate(pd.bags):
        new_bags.append(bag)
        for chain in chains.get(i, []):
            new_bags.extend(chain)
    return PathDecomposition(new_bags)


def parse_td(text: str) -> TreeDecomposition:
    """Parse PACE 2017 .td format (1-based vertex and bag ids)."""
    header = None
    bags: dict[int, frozenset[int]] = {}
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "s":
            if header is not None or len(parts) != 5 or parts[1] != "td":
                raise DecompositionError(f"malformed 's td' line {lineno}")
            header = (int(parts[2]), int(parts[3]), int(parts[4]))
        elif parts[0] == "b":
            bid = int(parts[1])
            bags[bid] = frozenset(int(x) - 1 for x in parts[2:])
        else:
            edges.append((int(parts[0]), int(parts[1])))
    if header is None:
        raise DecompositionError("missing 's td' header")
    nbags = header[0]
    if set(bags) != set(range(1, nbags + 1)):
        raise DecompositionError("bag ids must be 1..#bags")
    bag_list = [bags[i] for i in range(1, nbags + 1)]
    tree = [(i - 1, j - 1) for i, j in edges]
    return TreeDecomposition(bag_list, tree)


def serialize_td(td: TreeDecomposition, n_vertices: int) -> str:
    lines = [f"s td {len(td.bags)} {td.width + 1} {n_vertices}"]
    for i, bag in enumerate(td.bags, 1):
        lines.append("b " + " ".join([str(i)] + [str(v + 1) for v in sorted(bag)]))
    lines += [f"{i + 1} {j + 1}" for i, j in td.tree_edges]
    return "\n".join(lines) + "\n"
