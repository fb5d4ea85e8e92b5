"""Atomic isometric families on a graph and their classification.

An explicit atomic family assigns to each vertex v a finite index set
Lambda_v, to each edge e a partial injection pi_e from Lambda_{s(e)} into
Lambda_{r(e)}, and to each defined pair (e, i) a unimodular phase.  The
family acts on the basis {xi_{v,i}} by S_e xi_{s(e),i} = phase * xi_{r(e),
pi_e(i)}.  The index-level structure is the labeled graph H on the nodes
(v, i): injectivity plus disjointness of the pi-ranges over edges with a
common range vertex make every node have at most one incoming arc, so each
connected component of H contains either a single sourceless node (a root)
or a single directed cycle, never both.

Classification decomposes a family into irreducible atoms: left-regular
atoms named by their root vertex, cycle atoms named by a primitive cycle
with a unimodular eigenvalue phase, and tail atoms named by a primitive
cycle repeated backward forever.  Canonical (symbolic) families describe
the infinite-dimensional cases that no finite explicit family can encode.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Union

from .errors import (
    DomainError,
    EnumerationOverflow,
    NonTotalPresentation,
    NotACycle,
    UnboundedLeftRegularComponent,
)
from .graph import Graph, directed_closure, source_elimination
from .paths import (
    Path,
    cycle_vertices,
    cyclic_canonical_form,
    is_cycle,
    primitive_root,
    validate_path,
)
from .phases import Phase
from .validation import ValidationReport

Node = tuple[str, str]

OMEGA = "omega"
Multiplicity = Union[int, str]


def mult_add(a: Multiplicity, b: Multiplicity) -> Multiplicity:
    if a == OMEGA or b == OMEGA:
        return OMEGA
    return a + b


def mult_scale(a: Multiplicity, k: Multiplicity) -> Multiplicity:
    if a == OMEGA or k == OMEGA:
        return OMEGA
    return a * k


# ---------------------------------------------------------------------------
# explicit data


@dataclass
class ExplicitAtomic:
    """Finite atomic family presented by index sets, partial injections, phases.

    Index labels are scoped to their vertex: the basis node for label i at
    vertex v is the pair (v, i), so index sets at distinct vertices are
    disjoint by construction.  ``pi[e]`` maps source labels to range labels;
    ``phases[(e, i)]`` defaults to 1 when missing.
    """

    graph: Graph
    lam: dict[str, tuple[str, ...]]
    pi: dict[str, dict[str, str]]
    phases: dict[tuple[str, str], Phase] = field(default_factory=dict)

    def labels(self, v: str) -> tuple[str, ...]:
        return self.lam.get(v, ())

    def nodes(self) -> list[Node]:
        out = [(v, i) for v in sorted(self.lam) for i in self.lam[v]]
        return out

    def phase(self, eid: str, i: str) -> Phase:
        return self.phases.get((eid, i), Phase.one())

    def dim(self) -> int:
        return sum(len(ix) for ix in self.lam.values())


def coisometry_flags(a: ExplicitAtomic) -> tuple[bool, bool, list[str], list[str]]:
    """(ck_holds, fully_coisometric, ck_failures, f_failures).

    ck considers vertices with at least one incoming edge: the pi-ranges
    over incoming edges must cover Lambda_v.  The fully coisometric flag
    additionally requires Lambda_v to be empty at in-degree-0 vertices.
    """
    g = a.graph
    ck_fail: list[str] = []
    f_fail: list[str] = []
    for v in g.sorted_vertices():
        labels = set(a.labels(v))
        covered = set()
        for eid in g.in_edges(v):
            covered.update(a.pi.get(eid, {}).values())
        if g.in_edges(v):
            if labels - covered:
                ck_fail.append(v)
                f_fail.append(v)
        elif labels:
            f_fail.append(v)
    return not ck_fail, not (ck_fail or f_fail), ck_fail, f_fail


def validate_atomic(a: ExplicitAtomic, require_total: bool = True) -> ValidationReport:
    """Check the explicit data against the atomic family contract.

    Errors: unknown vertices/edges/labels, non-injective pi_e, overlapping
    pi-ranges among edges with a common range vertex, and (when
    ``require_total``) any source label without an image.  Informational
    findings report which coisometry identities hold.
    """
    g = a.graph
    report = ValidationReport()
    for v, labels in sorted(a.lam.items()):
        if not g.has_vertex(v):
            report.add("unknown-vertex", f"index set attached to unknown vertex {v}", v)
        if len(set(labels)) != len(labels):
            report.add("duplicate-label", f"duplicate index labels at {v}", v)
    known_edges = {e.id for e in g.edges}
    for eid, mapping in sorted(a.pi.items()):
        if eid not in known_edges:
            report.add("unknown-edge", f"pi attached to unknown edge {eid}", eid)
            continue
        src, dst = g.src(eid), g.dst(eid)
        src_labels = set(a.labels(src))
        dst_labels = set(a.labels(dst))
        for i, j in sorted(mapping.items()):
            if i not in src_labels:
                report.add("bad-from", f"pi_{eid} defined on {i} not in Lambda_{src}", eid)
            if j not in dst_labels:
                report.add("bad-to", f"pi_{eid} sends {i} to {j} not in Lambda_{dst}", eid)
        values = list(mapping.values())
        if len(set(values)) != len(values):
            report.add("not-injective", f"pi_{eid} is not injective", eid)
    # ranges over a common range vertex must be pairwise disjoint: that is
    # what gives every node of H at most one incoming arc
    for v in g.sorted_vertices():
        hit: dict[str, str] = {}
        for eid in g.in_edges(v):
            for i, j in sorted(a.pi.get(eid, {}).items()):
                stamp = f"{eid}[{i}]"
                if j in hit:
                    report.add(
                        "overlapping-ranges",
                        f"label {j} at {v} is hit by {hit[j]} and {stamp}",
                        v,
                    )
                else:
                    hit[j] = stamp
    for (eid, i), ph in sorted(a.phases.items(), key=lambda kv: kv[0]):
        if eid not in known_edges:
            report.add("unknown-edge", f"phase attached to unknown edge {eid}", eid)
        elif i not in a.pi.get(eid, {}):
            report.add(
                "phase-without-arc",
                f"phase attached to ({eid}, {i}) but pi_{eid} is undefined there",
                eid,
            )
    missing = [
        (eid, i)
        for eid in sorted(known_edges)
        for i in a.labels(g.src(eid))
        if i not in a.pi.get(eid, {})
    ]
    if missing:
        sample = ", ".join(f"pi_{e}[{i}]" for e, i in missing[:5])
        report.add(
            "non-total",
            f"{len(missing)} undefined image(s), e.g. {sample}",
            severity="error" if require_total else "info",
        )
    ck, fully, ck_fail, f_fail = coisometry_flags(a)
    report.add(
        "ck",
        "CK identity holds at every finite receiver"
        if ck
        else f"CK fails at {ck_fail}",
        severity="info",
    )
    report.add(
        "fully-coisometric",
        "family is fully coisometric" if fully else f"coisometry fails at {f_fail}",
        severity="info",
    )
    report.add("nondegenerate", "vertex projections sum to the identity", severity="info")
    return report


# ---------------------------------------------------------------------------
# the index-level labeled graph H


@dataclass(frozen=True)
class Arc:
    src: Node
    dst: Node
    edge: str
    phase: Phase


@dataclass
class LabeledH:
    nodes: tuple[Node, ...]
    arcs: tuple[Arc, ...]
    pred: dict[Node, Arc | None]
    out: dict[Node, tuple[Arc, ...]]

    def components(self) -> list[list[Node]]:
        """Undirected components of H, each sorted, ordered by least node."""
        parent = {n: n for n in self.nodes}

        def find(x: Node) -> Node:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for arc in self.arcs:
            ra, rb = find(arc.src), find(arc.dst)
            if ra != rb:
                parent[ra] = rb
        groups: dict[Node, list[Node]] = {}
        for n in self.nodes:
            groups.setdefault(find(n), []).append(n)
        comps = [sorted(ns) for ns in groups.values()]
        comps.sort(key=lambda ns: ns[0])
        return comps

    def to_dot(self) -> str:
        lines = ["digraph H {"]
        for v, i in self.nodes:
            lines.append(f'  "{v}:{i}";')
        for arc in self.arcs:
            label = f"{arc.edge} {arc.phase}"
            lines.append(
                f'  "{arc.src[0]}:{arc.src[1]}" -> "{arc.dst[0]}:{arc.dst[1]}" [label="{label}"];'
            )
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_H(a: ExplicitAtomic) -> LabeledH:
    """Labeled graph on basis nodes; requires structurally valid data.

    Totality is not required here so that depth-truncated materializations
    can still be inspected; classification enforces totality separately.
    """
    report = validate_atomic(a, require_total=False)
    if not report.valid:
        raise DomainError(
            "explicit atomic data is structurally invalid",
            findings=[f.message for f in report.errors],
        )
    g = a.graph
    nodes = tuple(a.nodes())
    arcs: list[Arc] = []
    for eid in sorted(a.pi):
        src_v, dst_v = g.src(eid), g.dst(eid)
        for i, j in sorted(a.pi[eid].items()):
            arcs.append(Arc((src_v, i), (dst_v, j), eid, a.phase(eid, i)))
    pred: dict[Node, Arc | None] = {n: None for n in nodes}
    out: dict[Node, list[Arc]] = {n: [] for n in nodes}
    for arc in arcs:
        if pred[arc.dst] is not None:
            raise DomainError("node has two incoming arcs", node=arc.dst)
        pred[arc.dst] = arc
        out[arc.src].append(arc)
    return LabeledH(
        nodes,
        tuple(arcs),
        pred,
        {n: tuple(sorted(lst, key=lambda a: a.edge)) for n, lst in out.items()},
    )


@dataclass(frozen=True)
class RootFound:
    root: Node
    path: Path  # the path carrying the root basis vector onto the queried one


@dataclass(frozen=True)
class CycleFound:
    cycle_nodes: tuple[Node, ...]  # forward order, starting at the entry node
    cycle: Path  # cycle in the host graph based at the entry node's vertex
    phase: Phase  # product of arc phases once around
    entry_offset: int  # backward steps from the queried node to the cycle


def trace_backward(h: LabeledH, node: Node) -> RootFound | CycleFound:
    """Follow the unique predecessor chain from ``node``.

    Ends at an in-degree-0 node (RootFound, with the host-graph path from
    the root to the queried node) or closes up on the unique directed cycle
    of the component (CycleFound).  Finite data admits no third outcome: an
    infinite strictly backward chain would need infinitely many nodes.
    """
    if node not in h.pred:
        raise DomainError("unknown node", node=node)
    walk = [node]
    seen = {node: 0}
    labels: list[Arc] = []
    while True:
        arc = h.pred[walk[-1]]
        if arc is None:
            root = walk[-1]
            edges = tuple(a.edge for a in labels)
            return RootFound(root, Path(root[0], edges))
        labels.append(arc)
        prev = arc.src
        if prev in seen:
            t = seen[prev]
            j = len(walk) - 1
            cyc_arcs = labels[t : j + 1]  # arc into walk[t] .. arc into walk[j]
            nodes_fwd = (walk[t],) + tuple(reversed(walk[t + 1 : j + 1]))
            edges = tuple(a.edge for a in cyc_arcs)
            phase = Phase.one()
            for a in cyc_arcs:
                phase = phase * a.phase
            return CycleFound(nodes_fwd, Path(prev[0], edges), phase, t)
        seen[prev] = len(walk)
        walk.append(prev)


# ---------------------------------------------------------------------------
# canonical (symbolic) families


@dataclass(frozen=True)
class LeftRegular:
    vertex: str


@dataclass(frozen=True)
class CycleType:
    cycle: Path
    phase: Phase


@dataclass(frozen=True)
class TailType:
    cycle: Path  # primitive cycle whose backward-infinite repetition is the tail


@dataclass(frozen=True)
class DirectSum:
    parts: tuple[tuple["CanonicalAtomic", Multiplicity], ...]


CanonicalAtomic = Union[LeftRegular, CycleType, TailType, DirectSum]
AnyFamily = Union[ExplicitAtomic, CanonicalAtomic]


def validate_canonical(g: Graph, fam: CanonicalAtomic) -> None:
    if isinstance(fam, LeftRegular):
        if not g.has_vertex(fam.vertex):
            raise DomainError("unknown vertex", vertex=fam.vertex)
    elif isinstance(fam, CycleType):
        validate_path(g, fam.cycle)
        if not is_cycle(g, fam.cycle) or len(fam.cycle) == 0:
            raise NotACycle("cycle-type family needs a cycle of positive length")
    elif isinstance(fam, TailType):
        validate_path(g, fam.cycle)
        if not is_cycle(g, fam.cycle) or len(fam.cycle) == 0:
            raise NotACycle("tail family needs a cycle of positive length")
        if primitive_root(g, fam.cycle)[1] != 1:
            raise DomainError(
                "tail cycle must be primitive; pass its primitive root",
                cycle=list(fam.cycle.edges),
            )
    elif isinstance(fam, DirectSum):
        for part, mult in fam.parts:
            if isinstance(part, DirectSum):
                raise DomainError("direct sums do not nest; flatten the parts")
            validate_canonical(g, part)
            if mult != OMEGA and (not isinstance(mult, int) or mult < 1):
                raise DomainError("multiplicity must be a positive integer or omega", got=mult)
    else:
        raise DomainError("unknown canonical family", got=type(fam).__name__)


# ---------------------------------------------------------------------------
# atoms and decompositions


@dataclass(frozen=True)
class LeftRegularAtom:
    vertex: str


@dataclass(frozen=True)
class CycleAtom:
    cycle: Path  # canonical rotation of a primitive cycle
    phase: Phase


@dataclass(frozen=True)
class TailAtom:
    cycle: Path  # canonical rotation of the primitive period


Atom = Union[LeftRegularAtom, CycleAtom, TailAtom]


def _atom_sort_key(atom: Atom) -> tuple:
    if isinstance(atom, LeftRegularAtom):
        return (0, atom.vertex, (), 0.0)
    if isinstance(atom, CycleAtom):
        return (1, atom.cycle.base, atom.cycle.edges, atom.phase.sort_key())
    return (2, atom.cycle.base, atom.cycle.edges, 0.0)


@dataclass
class AtomDecomposition:
    atoms: list[tuple[Atom, Multiplicity]]
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        merged: list[tuple[Atom, Multiplicity]] = []
        for atom, mult in sorted(self.atoms, key=lambda am: _atom_sort_key(am[0])):
            if merged and merged[-1][0] == atom:
                merged[-1] = (atom, mult_add(merged[-1][1], mult))
            else:
                merged.append((atom, mult))
        self.atoms = merged

    def alpha(self) -> dict[str, Multiplicity]:
        """Left-regular multiplicities by vertex."""
        out: dict[str, Multiplicity] = {}
        for atom, mult in self.atoms:
            if isinstance(atom, LeftRegularAtom):
                out[atom.vertex] = mult_add(out.get(atom.vertex, 0), mult)
        return out


def atoms_equal(a: Atom, b: Atom, tol: float = 1e-9) -> bool:
    if type(a) is not type(b):
        return False
    if isinstance(a, LeftRegularAtom):
        return a.vertex == b.vertex
    if isinstance(a, CycleAtom):
        return a.cycle == b.cycle and a.phase.approx_eq(b.phase, tol)
    return a.cycle == b.cycle


def decompose_cycle(g: Graph, w: Path, phase: Phase) -> list[tuple[Atom, Multiplicity]]:
    """Split a cycle-type family along the primitive root of its cycle.

    For w = u^p with u primitive, the family splits into the p atoms built
    on u whose phases are the p-th roots of the full-cycle phase.
    """
    u, p = primitive_root(g, w)
    u_canon = cyclic_canonical_form(g, u)
    return [(CycleAtom(u_canon, theta), 1) for theta in phase.roots(p)]


_TAIL_NOTE = (
    "tail atoms on a periodic backward orbit carry a direct-integral "
    "identity: the family is equivalent to the integral over the unit "
    "circle of the cycle families on its primitive period, and it never "
    "splits into a countable direct sum of atoms"
)


def classify(g: Graph, fam: AnyFamily) -> AtomDecomposition:
    """Decompose a family into irreducible atoms with multiplicities.

    Explicit data must be structurally valid and total; each component of H
    contributes either one left-regular atom (root component) or the cycle
    atoms of its unique cycle.  Canonical data decomposes symbolically.
    """
    if isinstance(fam, ExplicitAtomic):
        return _classify_explicit(fam)
    validate_canonical(g, fam)
    if isinstance(fam, LeftRegular):
        return AtomDecomposition([(LeftRegularAtom(fam.vertex), 1)])
    if isinstance(fam, CycleType):
        return AtomDecomposition(decompose_cycle(g, fam.cycle, fam.phase))
    if isinstance(fam, TailType):
        u = cyclic_canonical_form(g, fam.cycle)
        return AtomDecomposition([(TailAtom(u), 1)], notes=[_TAIL_NOTE])
    parts: list[tuple[Atom, Multiplicity]] = []
    notes: list[str] = []
    for part, mult in fam.parts:
        sub = classify(g, part)
        for atom, m in sub.atoms:
            parts.append((atom, mult_scale(m, mult)))
        for note in sub.notes:
            if note not in notes:
                notes.append(note)
    return AtomDecomposition(parts, notes=notes)


def _classify_explicit(a: ExplicitAtomic) -> AtomDecomposition:
    report = validate_atomic(a, require_total=True)
    structural = [f for f in report.errors if f.code != "non-total"]
    if structural:
        raise DomainError(
            "explicit atomic data is structurally invalid",
            findings=[f.message for f in structural],
        )
    if any(f.code == "non-total" for f in report.errors):
        raise NonTotalPresentation(
            "pi is not total; finite explicit data cannot present this family",
            findings=[f.message for f in report.errors if f.code == "non-total"],
        )
    g = a.graph
    h = build_H(a)
    atoms: list[tuple[Atom, Multiplicity]] = []
    for comp in h.components():
        outcome = trace_backward(h, comp[0])
        if isinstance(outcome, RootFound):
            v = outcome.root[0]
            if _reaches_cycle(g, v):
                raise UnboundedLeftRegularComponent(
                    "root vertex reaches a cycle, so its forward path space "
                    "is infinite and no finite explicit family contains it",
                    vertex=v,
                )
            atoms.append((LeftRegularAtom(v), 1))
        else:
            atoms.extend(decompose_cycle(g, outcome.cycle, outcome.phase))
    return AtomDecomposition(atoms)


def _reaches_cycle(g: Graph, v: str) -> bool:
    sub_vertices = directed_closure(g, [v])
    sub_edges = [e for e in g.edges if e.src in sub_vertices]
    g0, _, exhausted = source_elimination(
        Graph(tuple(sub_vertices), tuple(sub_edges))
    )
    return not exhausted


# ---------------------------------------------------------------------------
# Wold data


@dataclass
class WoldData:
    alpha: dict[str, Multiplicity]
    remainder_nodes: frozenset[Node]
    supported_on_g0: bool
    notes: list[str] = field(default_factory=list)


def wold_atomic(a: AnyFamily, g: Graph | None = None) -> WoldData:
    """Wold-type splitting data.

    For explicit data: alpha_v counts the in-degree-0 nodes at v (the
    wandering dimensions), the remainder collects every node whose backward
    trace closes on a cycle, and the remainder vertices are checked against
    the source-elimination core of the graph.

    For canonical data: left-regular families contribute one wandering
    dimension at their vertex; tails are fully coisometric (alpha = 0);
    cycle-type families report the multiplicities of the left-regular part
    that remains after compressing away the minimal cyclic subspace, the
    same numbers ``cycle_structure_multiplicities`` computes from the graph.
    """
    if isinstance(a, ExplicitAtomic):
        h = build_H(a)
        alpha: dict[str, Multiplicity] = {}
        remainder: set[Node] = set()
        for node in h.nodes:
            if h.pred[node] is None:
                alpha[node[0]] = mult_add(alpha.get(node[0], 0), 1)
            if isinstance(trace_backward(h, node), CycleFound):
                remainder.add(node)
        g0, _, _ = source_elimination(a.graph)
        g0_vertices = set(g0.vertices)
        supported = all(v in g0_vertices for v, _ in remainder)
        return WoldData(alpha, frozenset(remainder), supported)
    if g is None:
        raise DomainError("canonical wold data needs the host graph")
    validate_canonical(g, a)
    return _wold_canonical(g, a)


def _wold_canonical(g: Graph, fam: CanonicalAtomic) -> WoldData:
    g0, _, _ = source_elimination(g)
    g0_vertices = set(g0.vertices)
    if isinstance(fam, LeftRegular):
        return WoldData({fam.vertex: 1}, frozenset(), True)
    if isinstance(fam, CycleType):
        alpha = {
            v: m
            for v, m in cycle_structure_multiplicities(g, fam.cycle).items()
            if m
        }
        supported = all(v in g0_vertices for v in cycle_vertices(g, fam.cycle))
        return WoldData(
            alpha,
            frozenset(),
            supported,
            notes=[
                "multiplicities refer to the left-regular part left over "
                "after compressing away the minimal cyclic subspace; the "
                "family itself is fully coisometric"
            ],
        )
    if isinstance(fam, TailType):
        supported = all(v in g0_vertices for v in cycle_vertices(g, fam.cycle))
        return WoldData({}, frozenset(), supported, notes=["tail families are fully coisometric"])
    alpha: dict[str, Multiplicity] = {}
    supported = True
    notes: list[str] = []
    for part, mult in fam.parts:
        sub = _wold_canonical(g, part)
        for v, m in sub.alpha.items():
            alpha[v] = mult_add(alpha.get(v, 0), mult_scale(m, mult))
        supported = supported and sub.supported_on_g0
        for n in sub.notes:
            if n not in notes:
                notes.append(n)
    return WoldData(alpha, frozenset(), supported, notes=notes)


# ---------------------------------------------------------------------------
# structure multiplicity formulas


def cycle_structure_multiplicities(g: Graph, w: Path) -> dict[str, int]:
    """Left-regular multiplicities attached to a cycle w = e_k ... e_1.

    alpha_v counts, over the cycle positions j, the edges leaving the
    visited vertex s(e_j) other than e_j itself whose range is v.
    """
    validate_path(g, w)
    if not is_cycle(g, w) or len(w) == 0:
        raise NotACycle("structure multiplicities need a cycle of positive length")
    applied = list(reversed(w.edges))  # e_1, e_2, ..., e_k
    alpha = {v: 0 for v in g.vertices}
    for eid in applied:
        vj = g.src(eid)
        for fid in g.out_edges(vj):
            if fid != eid:
                alpha[g.dst(fid)] += 1
    return alpha


def finitely_correlated_multiplicities(
    g: Graph, rank: dict[str, int]
) -> dict[str, int]:
    """Evaluate alpha_v = -rank(A_v) + sum over edges into v of rank(A_{s(e)})."""
    for v in g.vertices:
        if v not in rank:
            raise DomainError("rank value missing for vertex", vertex=v)
    return {
        v: -rank[v] + sum(rank[g.src(eid)] for eid in g.in_edges(v))
        for v in g.vertices
    }


# ---------------------------------------------------------------------------
# unitary equivalence


@dataclass
class EquivalenceReport:
    equivalent: bool
    witness: str


def are_unitarily_equivalent(
    g: Graph, a: AnyFamily, b: AnyFamily, tol: float = 1e-9
) -> EquivalenceReport:
    """Compare the atom multisets of two families over one host graph.

    Left-regular atoms match by vertex, cycle atoms by the canonical
    rotation of their primitive cycle together with the phase, tail atoms
    by the canonical rotation of their period.
    """
    da = classify(g, a)
    db = classify(g, b)
    return compare_decompositions(da, db, tol)


def compare_decompositions(
    da: AtomDecomposition, db: AtomDecomposition, tol: float = 1e-9
) -> EquivalenceReport:
    left = list(da.atoms)
    right = list(db.atoms)
    for atom, mult in left:
        match = next((i for i, (o, _) in enumerate(right) if atoms_equal(atom, o, tol)), None)
        if match is None:
            return EquivalenceReport(False, f"unmatched atom {describe_atom(atom)}")
        other_mult = right[match][1]
        if mult != other_mult:
            return EquivalenceReport(
                False,
                f"multiplicity differs at {describe_atom(atom)}: {mult} vs {other_mult}",
            )
        right.pop(match)
    if right:
        return EquivalenceReport(False, f"unmatched atom {describe_atom(right[0][0])}")
    return EquivalenceReport(True, "atom multisets agree")


def describe_atom(atom: Atom) -> str:
    if isinstance(atom, LeftRegularAtom):
        return f"left-regular at {atom.vertex}"
    if isinstance(atom, CycleAtom):
        return f"cycle {list(atom.cycle.edges)} with phase {atom.phase}"
    return f"tail over {list(atom.cycle.edges)}"


# ---------------------------------------------------------------------------
# gauge and relabeling (used by tests and demos; invariance is a theorem)


def gauge_transform(a: ExplicitAtomic, gauge: dict[Node, Phase]) -> ExplicitAtomic:
    """Rescale each basis vector by a unimodular scalar.

    The arc phase for (e, i) becomes phase * gauge[s-node] * conj(gauge[t-node]):
    unitary equivalence is untouched, and every cycle's phase product is
    literally invariant.
    """
    g = a.graph
    new_phases: dict[tuple[str, str], Phase] = {}
    for eid, mapping in a.pi.items():
        for i, j in mapping.items():
            src_node = (g.src(eid), i)
            dst_node = (g.dst(eid), j)
            ph = a.phase(eid, i)
            ph = ph * gauge.get(src_node, Phase.one())
            ph = ph * gauge.get(dst_node, Phase.one()).conj()
            new_phases[(eid, i)] = ph
    return ExplicitAtomic(a.graph, dict(a.lam), {e: dict(m) for e, m in a.pi.items()}, new_phases)


def relabel(a: ExplicitAtomic, rename: dict[Node, str]) -> ExplicitAtomic:
    """Apply a bijective relabeling of the index sets (per vertex)."""
    g = a.graph

    def nm(v: str, i: str) -> str:
        return rename.get((v, i), i)

    lam = {v: tuple(nm(v, i) for i in labels) for v, labels in a.lam.items()}
    for v, labels in lam.items():
        if len(set(labels)) != len(labels):
            raise DomainError("relabeling is not injective at vertex", vertex=v)
    pi = {
        eid: {nm(g.src(eid), i): nm(g.dst(eid), j) for i, j in mapping.items()}
        for eid, mapping in a.pi.items()
    }
    phases = {
        (eid, nm(g.src(eid), i)): ph for (eid, i), ph in a.phases.items()
    }
    return ExplicitAtomic(a.graph, lam, pi, phases)


# ---------------------------------------------------------------------------
# condition (M): orbit analysis of S_mu on the vertex space at its base


class MClass(enum.Enum):
    NOT_UNITARY = "NotUnitary"
    SINGULAR = "Singular"
    DOMINATES_LEBESGUE = "DominatesLebesgue"


@dataclass
class MReport:
    kind: MClass
    detail: str


def orbit_condition_M(
    fam: AnyFamily, mu: Path, g: Graph | None = None, max_expansions: int = 10**6
) -> MReport:
    """Classify the spectral behavior of S_mu on the space at its base vertex.

    S_mu restricted to the range of S_v (v the base of the cycle mu) is
    unitary exactly when it permutes the basis vectors at v.  All orbits
    finite means the spectral measure is atomic, hence singular; an
    infinite orbit produces a bilateral shift summand, whose measure
    dominates Lebesgue measure on the circle.  Non-bijective action reports
    NotUnitary.
    """
    if isinstance(fam, ExplicitAtomic):
        host = fam.graph
    else:
        if g is None:
            raise DomainError("canonical condition-M analysis needs the host graph")
        host = g
        validate_canonical(host, fam)
    validate_path(host, mu)
    if not is_cycle(host, mu):
        raise NotACycle("condition (M) analyzes cycles only")
    if len(mu) == 0:
        return MReport(MClass.SINGULAR, "trivial cycle acts as the identity")
    if isinstance(fam, ExplicitAtomic):
        return _condM_explicit(fam, mu)
    return _condM_canonical(host, fam, mu, max_expansions)


def _condM_explicit(a: ExplicitAtomic, mu: Path) -> MReport:
    report = validate_atomic(a, require_total=False)
    structural = [f for f in report.errors if f.code != "non-total"]
    if structural:
        raise DomainError(
            "explicit atomic data is structurally invalid",
            findings=[f.message for f in structural],
        )
    g = a.graph
    v = mu.base
    labels = a.labels(v)
    if not labels:
        return MReport(MClass.SINGULAR, f"no basis vectors at {v}; the compression is zero")
    image: dict[str, str] = {}
    for i in labels:
        cur: str | None = i
        for eid in reversed(mu.edges):
            cur = a.pi.get(eid, {}).get(cur)
            if cur is None:
                return MReport(
                    MClass.NOT_UNITARY,
                    f"pi along the cycle is undefined starting from index {i} at {v}",
                )
        image[i] = cur
    if set(image.values()) != set(labels):
        return MReport(MClass.NOT_UNITARY, "pi_mu is not onto the index set at the base")
    orbits = _orbit_lengths(image)
    return MReport(
        MClass.SINGULAR,
        f"pi_mu is a permutation with orbit lengths {sorted(orbits)}; "
        "all orbits finite, so the spectral measure is atomic",
    )


def _orbit_lengths(perm: dict[str, str]) -> list[int]:
    seen: set[str] = set()
    lengths = []
    for start in perm:
        if start in seen:
            continue
        n = 0
        cur = start
        while cur not in seen:
            seen.add(cur)
            cur = perm[cur]
            n += 1
        lengths.append(n)
    return lengths


def _condM_canonical(
    g: Graph, fam: CanonicalAtomic, mu: Path, max_expansions: int
) -> MReport:
    if isinstance(fam, DirectSum):
        verdicts = [
            _condM_canonical(g, part, mu, max_expansions) for part, _ in fam.parts
        ]
        for rep in verdicts:
            if rep.kind is MClass.NOT_UNITARY:
                return rep
        for rep in verdicts:
            if rep.kind is MClass.DOMINATES_LEBESGUE:
                return rep
        return MReport(MClass.SINGULAR, "every summand acts with finite orbits")
    v = mu.base
    support = _support_vertices(g, fam)
    if v not in support:
        return MReport(MClass.SINGULAR, f"no basis vectors at {v}; the compression is zero")
    if isinstance(fam, LeftRegular):
        return MReport(
            MClass.NOT_UNITARY,
            "left-regular vectors of minimal length at the base escape the range of S_mu",
        )
    words = _incoming_words(g, v, len(mu), support, max_expansions)
    if words != {mu.edges}:
        extra = next(iter(words - {mu.edges}), None)
        if extra is None:
            return MReport(MClass.NOT_UNITARY, "S_mu annihilates part of the space at the base")
        return MReport(
            MClass.NOT_UNITARY,
            f"a second incoming word {list(extra)} lands at {v}, so S_mu is not onto",
        )
    if isinstance(fam, TailType):
        return MReport(
            MClass.DOMINATES_LEBESGUE,
            "S_mu shifts the backward-infinite chain, one infinite orbit",
        )
    trees_at_v = _has_tree_vectors_at(g, fam.cycle, v)
    if trees_at_v:
        return MReport(
            MClass.DOMINATES_LEBESGUE,
            "S_mu shifts an infinite ladder of off-cycle vectors at the base",
        )
    return MReport(
        MClass.SINGULAR,
        "S_mu permutes the finitely many cycle vectors at the base",
    )


def _support_vertices(g: Graph, fam: CanonicalAtomic) -> frozenset[str]:
    """Vertices whose compression of the family is nonzero."""
    if isinstance(fam, LeftRegular):
        return directed_closure(g, [fam.vertex])
    if isinstance(fam, (CycleType, TailType)):
        cyc = cycle_vertices(g, fam.cycle)
        extra: set[str] = set(cyc)
        for j, eid in enumerate(reversed(fam.cycle.edges)):
            vj = g.src(eid)
            for fid in g.out_edges(vj):
                if fid != eid:
                    extra.update(directed_closure(g, [g.dst(fid)]))
        return frozenset(extra)
    raise AssertionError("direct sums handled by the caller")


def _incoming_words(
    g: Graph, v: str, n: int, support: frozenset[str], max_expansions: int
) -> set[tuple[str, ...]]:
    """Edge tuples (product order) of length-n paths into v with supported source."""
    words: set[tuple[str, ...]] = set()
    budget = max_expansions

    def walk(at: str, acc: list[str]) -> None:
        nonlocal budget
        if len(acc) == n:
            if at in support:
                words.add(tuple(acc))
            return
        for eid in g.in_edges(at):
            budget -= 1
            if budget < 0:
                raise EnumerationOverflow(
                    "incoming-path enumeration exceeded the budget",
                    budget=max_expansions,
                )
            acc.append(eid)
            walk(g.src(eid), acc)
            acc.pop()

    walk(v, [])
    return words


def _has_tree_vectors_at(g: Graph, w: Path, v: str) -> bool:
    """Whether the cycle family on w has off-cycle basis vectors at v."""
    for eid in reversed(w.edges):
        vj = g.src(eid)
        for fid in g.out_edges(vj):
            if fid != eid and v in directed_closure(g, [g.dst(fid)]):
                return True
    return False


# ---------------------------------------------------------------------------
# helpers for building explicit families programmatically


def pure_cycle_family(
    g: Graph, laps: int = 1, phases: Iterable[Phase] | None = None
) -> ExplicitAtomic:
    """Explicit family on a cycle graph whose H is a single cycle of laps*n arcs.

    Index sets get ``laps`` labels per vertex; pi advances the lap counter
    on the edge closing the cycle.  Valid only on graphs where every vertex
    has exactly one outgoing and one incoming edge.
    """
    for v in g.vertices:
        if len(g.out_edges(v)) != 1 or len(g.in_edges(v)) != 1:
            raise DomainError(
                "pure cycle family needs a single-cycle graph", vertex=v
            )
    lam = {v: tuple(f"i{t}" for t in range(laps)) for v in g.vertices}
    start = min(g.vertices)
    order = [start]
    while True:
        nxt = g.dst(g.out_edges(order[-1])[0])
        if nxt == start:
            break
        order.append(nxt)
    pi: dict[str, dict[str, str]] = {}
    for pos, v in enumerate(order):
        eid = g.out_edges(v)[0]
        if pos < len(order) - 1:
            pi[eid] = {f"i{t}": f"i{t}" for t in range(laps)}
        else:
            pi[eid] = {f"i{t}": f"i{(t + 1) % laps}" for t in range(laps)}
    phase_map: dict[tuple[str, str], Phase] = {}
    if phases is not None:
        supplied = list(phases)
        arcs = [
            (eid, i) for eid in sorted(pi) for i in sorted(pi[eid])
        ]
        if len(supplied) != len(arcs):
            raise DomainError(
                "need one phase per arc", arcs=len(arcs), given=len(supplied)
            )
        phase_map = dict(zip(arcs, supplied))
    return ExplicitAtomic(g, lam, pi, phase_map)
