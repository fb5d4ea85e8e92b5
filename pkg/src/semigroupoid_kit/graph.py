"""Finite directed multigraphs and their order-zero combinatorics.

A graph is a finite list of vertex ids plus a finite list of identified
edges ``e : src(e) -> dst(e)``.  Parallel edges and loops are allowed; the
edge id is the identity of the edge.  All functions here are deterministic:
vertex and edge enumerations are sorted by id wherever the input order is
not meaningful.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .errors import GraphFormatError
from .validation import ValidationReport


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    dst: str


@dataclass(frozen=True)
class Graph:
    """Immutable directed multigraph with id-keyed adjacency caches."""

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise GraphFormatError("duplicate vertex ids", vertices=sorted(self.vertices))
        eids = [e.id for e in self.edges]
        if len(set(eids)) != len(eids):
            raise GraphFormatError("duplicate edge ids", edges=sorted(eids))
        for e in self.edges:
            if e.src not in vset or e.dst not in vset:
                raise GraphFormatError(
                    "edge endpoint is not a vertex", edge=e.id, src=e.src, dst=e.dst
                )
        by_id = {e.id: e for e in self.edges}
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        inc: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in sorted(self.edges, key=lambda e: e.id):
            out[e.src].append(e.id)
            inc[e.dst].append(e.id)
        object.__setattr__(self, "_by_id", by_id)
        object.__setattr__(self, "_out", {v: tuple(ids) for v, ids in out.items()})
        object.__setattr__(self, "_in", {v: tuple(ids) for v, ids in inc.items()})

    @staticmethod
    def build(vertices: Iterable[str], edges: Iterable[tuple[str, str, str]]) -> "Graph":
        """Build from (id, src, dst) triples."""
        return Graph(tuple(vertices), tuple(Edge(i, s, d) for i, s, d in edges))

    def edge(self, eid: str) -> Edge:
        try:
            return self._by_id[eid]
        except KeyError:
            raise GraphFormatError("unknown edge id", edge=eid) from None

    def has_vertex(self, v: str) -> bool:
        return v in self._out

    def src(self, eid: str) -> str:
        return self.edge(eid).src

    def dst(self, eid: str) -> str:
        return self.edge(eid).dst

    def out_edges(self, v: str) -> tuple[str, ...]:
        """Ids of edges with source v, sorted."""
        return self._out[v]

    def in_edges(self, v: str) -> tuple[str, ...]:
        """Ids of edges with range v, sorted."""
        return self._in[v]

    def sorted_vertices(self) -> tuple[str, ...]:
        return tuple(sorted(self.vertices))

    def sorted_edge_ids(self) -> tuple[str, ...]:
        return tuple(sorted(e.id for e in self.edges))

    def to_json_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"id": e.id, "src": e.src, "dst": e.dst} for e in self.edges],
        }

    @staticmethod
    def from_json_dict(data: dict) -> "Graph":
        try:
            vertices = list(data["vertices"])
            raw_edges = list(data["edges"])
        except (KeyError, TypeError) as exc:
            raise GraphFormatError(f"graph object needs 'vertices' and 'edges': {exc}")
        triples = []
        for item in raw_edges:
            try:
                triples.append((str(item["id"]), str(item["src"]), str(item["dst"])))
            except (KeyError, TypeError) as exc:
                raise GraphFormatError(f"edge object needs 'id', 'src', 'dst': {exc}")
        return Graph.build([str(v) for v in vertices], triples)


def validate_graph(g: Graph) -> ValidationReport:
    """Structural report for a graph that already passed construction.

    Construction rejects hard format errors; this reports informational
    structure (in-degree regularity, sources, components) used downstream.
    """
    report = ValidationReport()
    regular, degree = is_in_degree_regular(g)
    if regular:
        report.add("in-degree-regular", f"every vertex has in-degree {degree}", severity="info")
    else:
        degrees = {v: len(g.in_edges(v)) for v in g.sorted_vertices()}
        report.add("in-degree-varies", f"in-degrees {degrees}", severity="info")
    sources = [v for v in g.sorted_vertices() if not g.in_edges(v)]
    if sources:
        report.add("sources", f"in-degree-0 vertices: {sources}", severity="info")
    report.add(
        "components",
        f"{len(undirected_components(g))} undirected component(s)",
        severity="info",
    )
    return report


def is_in_degree_regular(g: Graph) -> tuple[bool, int | None]:
    """Whether all in-degrees agree; returns (flag, common degree or None)."""
    degrees = {len(g.in_edges(v)) for v in g.vertices}
    if not degrees:
        return True, None
    if len(degrees) == 1:
        return True, degrees.pop()
    return False, None


def strongly_connected_components(g: Graph) -> list[frozenset[str]]:
    """Tarjan's algorithm, iterative, components listed by least vertex id."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    components: list[frozenset[str]] = []
    counter = 0

    for root in g.sorted_vertices():
        if root in index:
            continue
        work = [(root, iter(g.out_edges(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for eid in it:
                w = g.dst(eid)
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(g.out_edges(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                components.append(frozenset(comp))
    components.sort(key=lambda c: min(c))
    return components


def is_transitive(g: Graph) -> bool:
    """True when every vertex reaches every other (single strongly connected component)."""
    return len(strongly_connected_components(g)) <= 1


def scc_of(g: Graph, v: str) -> frozenset[str]:
    if not g.has_vertex(v):
        raise GraphFormatError("unknown vertex", vertex=v)
    for comp in strongly_connected_components(g):
        if v in comp:
            return comp
    raise AssertionError("vertex missed by SCC computation")


def period(g: Graph, v: str) -> int | None:
    """Gcd of the lengths of cycles through v's strongly connected component.

    None when no cycle passes through v.  Computed from one BFS inside the
    component: the gcd of dist(src)+1-dist(dst) over intra-component edges.
    """
    comp = scc_of(g, v)
    intra = [e for e in g.edges if e.src in comp and e.dst in comp]
    if not intra:
        return None
    dist = {v: 0}
    queue = deque([v])
    out_intra: dict[str, list[Edge]] = {u: [] for u in comp}
    for e in intra:
        out_intra[e.src].append(e)
    while queue:
        u = queue.popleft()
        for e in out_intra[u]:
            if e.dst not in dist:
                dist[e.dst] = dist[u] + 1
                queue.append(e.dst)
    p = 0
    for e in intra:
        p = math.gcd(p, dist[e.src] + 1 - dist[e.dst])
    return p if p > 0 else None


def directed_closure(g: Graph, subset: Iterable[str]) -> frozenset[str]:
    """Smallest vertex set containing ``subset`` and closed under following out-edges."""
    todo = deque()
    seen: set[str] = set()
    for v in subset:
        if not g.has_vertex(v):
            raise GraphFormatError("unknown vertex", vertex=v)
        if v not in seen:
            seen.add(v)
            todo.append(v)
    while todo:
        u = todo.popleft()
        for eid in g.out_edges(u):
            w = g.dst(eid)
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return frozenset(seen)


def induced_subgraph(g: Graph, subset: Iterable[str]) -> Graph:
    """Subgraph on the directed closure of ``subset``.

    Every edge whose source lies in the closure is kept; its range lies in
    the closure automatically.
    """
    keep = directed_closure(g, subset)
    return _restrict(g, keep)


def _restrict(g: Graph, keep: frozenset[str]) -> Graph:
    vertices = tuple(v for v in g.vertices if v in keep)
    edges = tuple(e for e in g.edges if e.src in keep and e.dst in keep)
    return Graph(vertices, edges)


def source_elimination(g: Graph) -> tuple[Graph, list[list[str]], bool]:
    """Iteratively delete in-degree-0 vertices.

    Returns (fixed point graph, removal layers, has_ses) where has_ses means
    the elimination exhausts every vertex.  On finite graphs that happens
    exactly when the graph is acyclic.
    """
    current = g
    layers: list[list[str]] = []
    while True:
        sources = sorted(v for v in current.vertices if not current.in_edges(v))
        if not sources:
            break
        layers.append(sources)
        keep = frozenset(v for v in current.vertices if v not in set(sources))
        current = _restrict(current, keep)
    return current, layers, not current.vertices


def has_ses(g: Graph) -> bool:
    """Whether source elimination exhausts the graph (finite case: acyclicity)."""
    return source_elimination(g)[2]


def undirected_components(g: Graph) -> list[list[str]]:
    """Connected components ignoring orientation, as sorted vertex lists."""
    parent = {v: v for v in g.vertices}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in g.edges:
        a, b = find(e.src), find(e.dst)
        if a != b:
            parent[a] = b
    groups: dict[str, list[str]] = {}
    for v in g.vertices:
        groups.setdefault(find(v), []).append(v)
    comps = [sorted(vs) for vs in groups.values()]
    comps.sort(key=lambda c: c[0])
    return comps


def graph_to_dot(g: Graph, name: str = "G") -> str:
    """GraphViz digraph text with edge ids as labels."""
    lines = [f"digraph {name} {{"]
    for v in g.sorted_vertices():
        lines.append(f'  "{v}";')
    for eid in g.sorted_edge_ids():
        e = g.edge(eid)
        lines.append(f'  "{e.src}" -> "{e.dst}" [label="{e.id}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cycle_graph(n: int, vertex_prefix: str = "v", edge_prefix: str = "e") -> Graph:
    """Directed n-cycle: edges e1: v1 -> v2, ..., en: vn -> v1."""
    if n < 1:
        raise GraphFormatError("cycle length must be at least 1", n=n)
    vertices = [f"{vertex_prefix}{i}" for i in range(1, n + 1)]
    edges = [
        (f"{edge_prefix}{i}", f"{vertex_prefix}{i}", f"{vertex_prefix}{i % n + 1}")
        for i in range(1, n + 1)
    ]
    return Graph.build(vertices, edges)


def looped_triangle() -> Graph:
    """Three-vertex workhorse example: in-degree 2-regular, transitive, aperiodic.

    Vertices t, l, r.  Edges: a loop at t, two parallel edges t -> l, one
    t -> r, one l -> r, one r -> t.
    """
    return Graph.build(
        ["t", "l", "r"],
        [
            ("loop_t", "t", "t"),
            ("tl1", "t", "l"),
            ("tl2", "t", "l"),
            ("tr", "t", "r"),
            ("lr", "l", "r"),
            ("rt", "r", "t"),
        ],
    )
