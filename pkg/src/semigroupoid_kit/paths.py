"""Paths in the free semigroupoid of a directed multigraph.

A path of length n >= 1 is a sequence of composable edges written the way
operator products are: the stored tuple ``(e_n, ..., e_1)`` has the FIRST
applied edge last, so ``edges[i+1]`` feeds into ``edges[i]`` and composing
paths concatenates tuples.  Vertices are the length-0 paths, carried by the
``base`` field.  The source of a nonempty path is the source of its last
stored edge, the range is the range of its first stored edge.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from .errors import GraphFormatError, NotACycle, PathError
from .graph import Graph, scc_of


@dataclass(frozen=True, order=True)
class Path:
    base: str
    edges: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.edges)

    @staticmethod
    def vertex(v: str) -> "Path":
        return Path(v, ())

    @staticmethod
    def of(g: Graph, edges: Iterable[str]) -> "Path":
        """Build from an edge-id sequence in product order, inferring the base."""
        tup = tuple(edges)
        if not tup:
            raise PathError("cannot infer the base vertex of an empty path")
        p = Path(g.src(tup[-1]), tup)
        validate_path(g, p)
        return p


def validate_path(g: Graph, p: Path) -> None:
    """Raise PathError unless p is a path of g (base consistent, edges composable)."""
    if not g.has_vertex(p.base):
        raise PathError("path base is not a vertex", base=p.base)
    for eid in p.edges:
        g.edge(eid)
    for left, right in zip(p.edges, p.edges[1:]):
        if g.src(left) != g.dst(right):
            raise PathError(
                "edges are not composable", left=left, right=right,
                need=g.src(left), got=g.dst(right),
            )
    if p.edges and g.src(p.edges[-1]) != p.base:
        raise PathError(
            "base disagrees with the first applied edge",
            base=p.base, edge=p.edges[-1], src=g.src(p.edges[-1]),
        )


def source(g: Graph, p: Path) -> str:
    """Vertex the path starts from (source of the first applied edge)."""
    return p.base


def path_range(g: Graph, p: Path) -> str:
    """Vertex the path arrives at (range of the last applied edge)."""
    if not p.edges:
        return p.base
    return g.dst(p.edges[0])


def is_cycle(g: Graph, p: Path) -> bool:
    return source(g, p) == path_range(g, p)


def compose(g: Graph, mu: Path, nu: Path) -> Path | None:
    """Product path mu*nu (nu applied first); None when sources do not match."""
    if source(g, mu) != path_range(g, nu):
        return None
    return Path(nu.base, mu.edges + nu.edges)


def enumerate_paths(g: Graph, sources: Iterable[str], max_len: int) -> list[Path]:
    """All paths with source in ``sources`` and length <= max_len.

    Ordered by length, then lexicographically on the stored edge tuple;
    length-0 vertex paths come first, sorted by vertex id.
    """
    if max_len < 0:
        raise PathError("max_len must be nonnegative", max_len=max_len)
    start = sorted(set(sources))
    for v in start:
        if not g.has_vertex(v):
            raise GraphFormatError("unknown vertex", vertex=v)
    result: list[Path] = [Path.vertex(v) for v in start]
    level = list(result)
    for _ in range(max_len):
        nxt = [
            Path(p.base, (eid,) + p.edges)
            for p in level
            for eid in g.out_edges(path_range(g, p))
        ]
        nxt.sort(key=lambda p: p.edges)
        result.extend(nxt)
        level = nxt
    return result


def irreducible_cycles_at(g: Graph, v: str, max_len: int) -> list[Path]:
    """Cycles at v of length in [1, max_len] that do not pass through v internally.

    Interior vertices may repeat; only returning to the base vertex closes
    the walk.  Ordered by length then edge tuple.
    """
    if not g.has_vertex(v):
        raise GraphFormatError("unknown vertex", vertex=v)
    found: list[Path] = []
    # walk holds edge ids in application order (first applied first)
    def extend(at: str, walk: list[str]) -> None:
        if len(walk) >= max_len:
            return
        for eid in g.out_edges(at):
            w = g.dst(eid)
            walk.append(eid)
            if w == v:
                found.append(Path(v, tuple(reversed(walk))))
            else:
                extend(w, walk)
            walk.pop()

    extend(v, [])
    found.sort(key=lambda p: (len(p.edges), p.edges))
    return found


class CycleClass(enum.Enum):
    NO_CYCLE = "NoCycle"
    SIMPLE_CYCLE = "SimpleCycle"
    TWO_PLUS = "TwoPlus"


def vertex_cycle_class(g: Graph, v: str) -> CycleClass:
    """Trichotomy for the cycles through v.

    NoCycle: no cycle passes through v.  SimpleCycle: v's strongly connected
    component is a single vertex-simple cycle, so exactly one irreducible
    cycle passes through v.  TwoPlus: two or more irreducible cycles at v.
    """
    comp = scc_of(g, v)
    intra = [e for e in g.edges if e.src in comp and e.dst in comp]
    if not intra:
        return CycleClass.NO_CYCLE
    out_deg = {u: 0 for u in comp}
    in_deg = {u: 0 for u in comp}
    for e in intra:
        out_deg[e.src] += 1
        in_deg[e.dst] += 1
    simple = len(intra) == len(comp) and all(
        out_deg[u] == 1 and in_deg[u] == 1 for u in comp
    )
    return CycleClass.SIMPLE_CYCLE if simple else CycleClass.TWO_PLUS


def _require_cycle(g: Graph, w: Path) -> None:
    validate_path(g, w)
    if len(w.edges) == 0:
        raise NotACycle("cycle of positive length required", base=w.base)
    if not is_cycle(g, w):
        raise NotACycle(
            "path source and range differ",
            source=source(g, w), range=path_range(g, w),
        )


def primitive_root(g: Graph, w: Path) -> tuple[Path, int]:
    """Write the cycle w as u^p with u primitive and p maximal; returns (u, p)."""
    _require_cycle(g, w)
    seq = w.edges
    k = len(seq)
    for d in range(1, k + 1):
        if k % d != 0:
            continue
        if all(seq[i] == seq[i % d] for i in range(k)):
            return Path(w.base, seq[:d]), k // d
    raise AssertionError("no period found")


def is_primitive(g: Graph, w: Path) -> bool:
    """Whether the cycle w is not a proper power of a shorter cycle."""
    return primitive_root(g, w)[1] == 1


def least_rotation_index(seq: tuple[str, ...]) -> int:
    """Index j such that seq[j:]+seq[:j] is the lexicographically least rotation.

    Booth's failure-function algorithm, linear in len(seq).
    """
    n = len(seq)
    if n <= 1:
        return 0
    s = seq + seq
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = s[j]
        i = f[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k % n


def cyclic_canonical_form(g: Graph, w: Path) -> Path:
    """The lexicographically least rotation of the cycle w.

    Every rotation of a cycle's edge tuple is again a cycle (based at the
    source of its own first applied edge), so the least rotation is a
    canonical representative of the cyclic equivalence class.
    """
    _require_cycle(g, w)
    j = least_rotation_index(w.edges)
    edges = w.edges[j:] + w.edges[:j]
    return Path(g.src(edges[-1]), edges)


def rotations(g: Graph, w: Path) -> list[Path]:
    """All rotations of the cycle w, in rotation-offset order."""
    _require_cycle(g, w)
    out = []
    for j in range(len(w.edges)):
        edges = w.edges[j:] + w.edges[:j]
        out.append(Path(g.src(edges[-1]), edges))
    return out


def cycle_vertices(g: Graph, w: Path) -> list[str]:
    """Vertices visited by the cycle, one per edge, in application order.

    Entry j is the source of the j-th applied edge, so the list starts at
    the base vertex and has the cycle's length.
    """
    _require_cycle(g, w)
    return [g.src(eid) for eid in reversed(w.edges)]
