"""Strong edge colorings and synchronizing words, read backward.

A strong coloring on an in-degree d-regular graph assigns colors 1..d so
that edges sharing a range vertex get distinct colors.  Each vertex then
has exactly one incoming edge of each color, which defines the backward
transition delta(w, j) = source of the color-j edge into w.  A color word
is read left to right starting at the range vertex: the first letter names
the last applied edge, matching the path convention c(e_k ... e_1) =
c(e_k) ... c(e_1).  A word gamma synchronizes for v when the unique
backward gamma-path from every vertex has source v.
"""

from __future__ import annotations

import itertools
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import (
    DomainError,
    EnumerationOverflow,
    GraphFormatError,
    InvalidColoring,
    PartialAutomaton,
)
from .graph import Graph, is_in_degree_regular, is_transitive, period
from .paths import Path
from .validation import ValidationReport

SUBSET_BFS_LIMIT = 20
SEARCH_BUDGET = 10**7


@dataclass(frozen=True)
class Coloring:
    d: int
    color: dict[str, int]

    def of(self, eid: str) -> int:
        try:
            return self.color[eid]
        except KeyError:
            raise InvalidColoring("edge has no color", edge=eid) from None

    def to_json_dict(self) -> dict:
        return {"d": self.d, "color": dict(sorted(self.color.items()))}

    @staticmethod
    def from_json_dict(data: dict) -> "Coloring":
        try:
            d = int(data["d"])
            color = {str(k): int(v) for k, v in data["color"].items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidColoring(f"coloring object needs 'd' and 'color': {exc}")
        return Coloring(d, color)


def validate_coloring(g: Graph, c: Coloring) -> ValidationReport:
    """Strongness report: every edge colored in range, in-fibers all distinct.

    An info finding records whether the coloring is complete (each vertex
    sees every color exactly once on its incoming edges), which is what the
    backward automaton needs to be total.
    """
    report = ValidationReport()
    if c.d < 1 or c.d > 9:
        report.add("bad-d", f"color count d={c.d} outside 1..9")
    edge_ids = {e.id for e in g.edges}
    for eid in sorted(c.color):
        if eid not in edge_ids:
            report.add("unknown-edge", f"color assigned to unknown edge {eid}", eid)
    for eid in sorted(edge_ids):
        if eid not in c.color:
            report.add("uncolored-edge", f"edge {eid} has no color", eid)
        elif not 1 <= c.color[eid] <= c.d:
            report.add(
                "color-out-of-range",
                f"edge {eid} has color {c.color[eid]} outside 1..{c.d}",
                eid,
            )
    complete = True
    for v in g.sorted_vertices():
        seen: dict[int, str] = {}
        for eid in g.in_edges(v):
            col = c.color.get(eid)
            if col is None:
                complete = False
                continue
            if col in seen:
                report.add(
                    "not-strong",
                    f"edges {seen[col]} and {eid} into {v} share color {col}",
                    v,
                )
            seen[col] = eid
        if set(seen) != set(range(1, c.d + 1)):
            complete = False
    report.add(
        "complete",
        "every vertex receives each color exactly once"
        if complete
        else "some vertex misses a color on its incoming edges",
        severity="info",
    )
    return report


@dataclass(frozen=True)
class BackwardAutomaton:
    """Total map (vertex, color) -> (source vertex, edge id) of the color-j in-edge."""

    graph: Graph
    coloring: Coloring
    delta: dict[tuple[str, int], tuple[str, str]]

    def step(self, v: str, j: int) -> tuple[str, str]:
        key = (v, j)
        if key not in self.delta:
            raise PartialAutomaton(
                "no incoming edge of that color", vertex=v, color=j
            )
        return self.delta[key]


def backward_automaton(g: Graph, c: Coloring) -> BackwardAutomaton:
    report = validate_coloring(g, c)
    if not report.valid:
        raise InvalidColoring(
            "coloring is not strong", findings=[f.message for f in report.errors]
        )
    delta: dict[tuple[str, int], tuple[str, str]] = {}
    for v in g.sorted_vertices():
        for eid in g.in_edges(v):
            delta[(v, c.of(eid))] = (g.src(eid), eid)
    return BackwardAutomaton(g, c, delta)


def parse_word(word: str, d: int) -> list[int]:
    letters = []
    for ch in word:
        if not ch.isdigit() or ch == "0":
            raise DomainError("color words use digits 1..9", word=word)
        j = int(ch)
        if j > d:
            raise DomainError("letter exceeds the color count", letter=j, d=d)
        letters.append(j)
    return letters


def color_word(g: Graph, c: Coloring, p: Path) -> str:
    """Word of a path: colors in product order (first letter = last applied edge)."""
    return "".join(str(c.of(eid)) for eid in p.edges)


def follow_backward(g: Graph, c: Coloring, v: str, word: str) -> tuple[str, Path]:
    """Trace the unique path with range v and the given color word.

    Reads the word left to right: the first letter picks the edge into v,
    i.e. the last applied edge of the path.  Returns (source vertex, path).
    """
    if not g.has_vertex(v):
        raise GraphFormatError("unknown vertex", vertex=v)
    auto = backward_automaton(g, c)
    letters = parse_word(word, c.d)
    at = v
    edges: list[str] = []
    for j in letters:
        at, eid = auto.step(at, j)
        edges.append(eid)
    if not edges:
        return at, Path.vertex(v)
    return at, Path(at, tuple(edges))


def is_synchronizing_word(g: Graph, c: Coloring, word: str) -> str | None:
    """The common source vertex when the word synchronizes, else None."""
    sources = {follow_backward(g, c, v, word)[0] for v in g.vertices}
    if len(sources) == 1:
        return sources.pop()
    return None


def _subset_step(
    auto: BackwardAutomaton, subset: frozenset[str], j: int
) -> frozenset[str]:
    return frozenset(auto.step(v, j)[0] for v in subset)


def find_synchronizing_word(g: Graph, c: Coloring) -> str | None:
    """Shortest synchronizing word, or None when no word synchronizes.

    Breadth-first search over the subset automaton for up to 20 vertices
    (exact, shortest); beyond that a pairwise merging heuristic produces a
    synchronizing word that need not be shortest.
    """
    auto = backward_automaton(g, c)
    vertices = frozenset(g.vertices)
    if len(vertices) <= 1:
        return ""
    if len(vertices) <= SUBSET_BFS_LIMIT:
        return _subset_bfs(auto, vertices)
    return _greedy_merge(auto, vertices)


def _subset_bfs(auto: BackwardAutomaton, full: frozenset[str]) -> str | None:
    colors = range(1, auto.coloring.d + 1)
    seen = {full: ""}
    queue = deque([full])
    while queue:
        cur = queue.popleft()
        word = seen[cur]
        for j in colors:
            nxt = _subset_step(auto, cur, j)
            if nxt in seen:
                continue
            seen[nxt] = word + str(j)
            if len(nxt) == 1:
                return seen[nxt]
            queue.append(nxt)
    return None


def _pair_merge_word(auto: BackwardAutomaton, a: str, b: str) -> str | None:
    colors = range(1, auto.coloring.d + 1)
    start = (a, b) if a <= b else (b, a)
    seen = {start: ""}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        word = seen[cur]
        for j in colors:
            na = auto.step(cur[0], j)[0]
            nb = auto.step(cur[1], j)[0]
            if na == nb:
                return word + str(j)
            key = (na, nb) if na <= nb else (nb, na)
            if key not in seen:
                seen[key] = word + str(j)
                queue.append(key)
    return None


def _greedy_merge(auto: BackwardAutomaton, full: frozenset[str]) -> str | None:
    current = full
    word = ""
    while len(current) > 1:
        a, b = sorted(current)[:2]
        piece = _pair_merge_word(auto, a, b)
        if piece is None:
            return None
        word += piece
        for j in parse_word(piece, auto.coloring.d):
            current = _subset_step(auto, current, j)
    return word


def _candidate_colorings(g: Graph, d: int):
    """Deterministic stream of strong colorings, one per candidate index.

    Each in-fiber, sorted by edge id, gets a bijection onto 1..d.  The
    fiber of the least vertex is pinned to the identity assignment: any
    strong coloring is carried to such a candidate by a global color
    permutation, which never changes synchronizability.
    """
    vertices = sorted(g.vertices)
    fibers = [list(g.in_edges(v)) for v in vertices]
    perms = list(itertools.permutations(range(1, d + 1)))
    choices: list[list[tuple[int, ...]]] = []
    for idx, fiber in enumerate(fibers):
        if idx == 0:
            choices.append([tuple(range(1, d + 1))])
        else:
            choices.append(perms)
    total = 1
    for ch in choices:
        total *= len(ch)
        if total > SEARCH_BUDGET:
            raise EnumerationOverflow(
                "coloring search space exceeds the budget",
                budget=SEARCH_BUDGET,
            )
    for combo in itertools.product(*choices):
        color: dict[str, int] = {}
        for fiber, perm in zip(fibers, combo):
            for eid, col in zip(fiber, perm):
                color[eid] = col
        yield Coloring(d, color)


def search_synchronizing_coloring(
    g: Graph, jobs: int = 1
) -> tuple[Coloring, str] | None:
    """First strong coloring (in deterministic enumeration order) that admits
    a synchronizing word, together with a shortest such word.

    Requires an in-degree regular graph.  On an aperiodic, transitive,
    in-degree regular graph a synchronizing coloring always exists, so the
    search succeeds; on a graph with period p > 1 it returns None.
    """
    regular, d = is_in_degree_regular(g)
    if not regular or d is None or d == 0:
        raise DomainError("coloring search needs an in-degree regular graph with d >= 1")
    if d > 9:
        raise DomainError("color words use digits 1..9", d=d)
    candidates = list(_candidate_colorings(g, d))
    if jobs <= 1:
        for cand in candidates:
            word = find_synchronizing_word(g, cand)
            if word is not None:
                return cand, word
        return None
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(lambda cc: find_synchronizing_word(g, cc), candidates))
    for cand, word in zip(candidates, results):
        if word is not None:
            return cand, word
    return None


def obrien_coloring(g: Graph, loop_edge: str) -> tuple[Coloring, str]:
    """Synchronizing coloring built from a loop and a spanning in-tree of color 1.

    Requires a transitive, in-degree regular graph and a loop.  A breadth
    first spanning tree out of the loop vertex is colored 1 together with
    the loop; each remaining in-fiber takes the unused colors in edge-id
    order.  Reading color 1 backward walks every vertex up its tree branch
    to the loop vertex and holds it there, so the word 1^depth synchronizes.
    """
    e = g.edge(loop_edge)
    if e.src != e.dst:
        raise DomainError("edge is not a loop", edge=loop_edge)
    regular, d = is_in_degree_regular(g)
    if not regular or d is None or d == 0:
        raise DomainError("construction needs an in-degree regular graph")
    if not is_transitive(g):
        raise DomainError("construction needs a transitive graph")
    v0 = e.src
    tree_edge: dict[str, str] = {}
    depth = {v0: 0}
    queue = deque([v0])
    while queue:
        u = queue.popleft()
        for eid in g.out_edges(u):
            w = g.dst(eid)
            if w not in depth:
                depth[w] = depth[u] + 1
                tree_edge[w] = eid
                queue.append(w)
    if set(depth) != set(g.vertices):
        raise DomainError("graph is not transitive from the loop vertex", vertex=v0)
    color: dict[str, int] = {}
    for v in g.sorted_vertices():
        ones = loop_edge if v == v0 else tree_edge[v]
        color[ones] = 1
        rest = [eid for eid in g.in_edges(v) if eid != ones]
        for col, eid in enumerate(rest, start=2):
            color[eid] = col
    coloring = Coloring(d, color)
    word = "1" * max(depth.values())
    target = is_synchronizing_word(g, coloring, word)
    if target != v0:
        raise AssertionError("tree coloring failed to synchronize to the loop vertex")
    return coloring, word


@dataclass
class SyncDiagram:
    """Closed path at the synchronizing vertex realizing a prescribed color word."""

    vertex: str
    mu_prime: Path
    mu: Path
    closed: Path

    def color_word(self, g: Graph, c: Coloring) -> str:
        return color_word(g, c, self.closed)


def syncdiag_paths(
    g: Graph, c: Coloring, gamma: str, gamma_prime: str
) -> SyncDiagram:
    """Closed path lambda = mu' mu at the synchronizing vertex of gamma.

    mu' is the unique gamma'-colored path with range v; its source w is then
    pulled back to v by the synchronizing word: mu is the gamma-colored path
    with range w, whose source is v because gamma synchronizes.  The product
    lambda = mu' mu is a cycle at v with color word gamma' gamma.
    """
    v = is_synchronizing_word(g, c, gamma)
    if v is None:
        raise DomainError("word does not synchronize", word=gamma)
    w, mu_prime = follow_backward(g, c, v, gamma_prime)
    back, mu = follow_backward(g, c, w, gamma)
    if back != v:
        raise AssertionError("synchronizing word failed on the pulled-back vertex")
    closed = Path(v, mu_prime.edges + mu.edges)
    return SyncDiagram(v, mu_prime, mu, closed)


def synchronizing_guarantee(g: Graph) -> dict:
    """Testable form of the coloring guarantee: a synchronizing coloring exists
    iff the graph is aperiodic, among transitive in-degree regular graphs.

    Returns the hypotheses and the verdict of the exhaustive search.
    """
    regular, d = is_in_degree_regular(g)
    transitive = is_transitive(g)
    p = period(g, min(g.vertices)) if g.vertices else None
    found = None
    if regular and d:
        found = search_synchronizing_coloring(g)
    return {
        "in_degree_regular": regular,
        "d": d,
        "transitive": transitive,
        "period": p,
        "synchronizing_coloring": found,
    }
