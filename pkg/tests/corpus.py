"""Seeded random generators for graphs and atomic families.

Families built here come with their construction data (root counts, cycle
phases) so tests can pin expected classifications without round-tripping
through the code under test.
"""

from __future__ import annotations

from fractions import Fraction

from semigroupoid_kit import ExplicitAtomic, Graph, Phase, cycle_graph


def random_graph(rng, max_v=6, max_e=10, acyclic=False):
    nv = rng.randint(2, max_v)
    vertices = [f"v{i}" for i in range(1, nv + 1)]
    ne = rng.randint(1, max_e)
    triples = []
    for k in range(ne):
        if acyclic:
            i = rng.randrange(nv - 1)
            j = rng.randrange(i + 1, nv)
            src, dst = vertices[i], vertices[j]
        else:
            src, dst = rng.choice(vertices), rng.choice(vertices)
        triples.append((f"e{k + 1}", src, dst))
    return Graph.build(vertices, triples)


def random_in_regular_graph(rng, nv, d):
    """Every vertex receives exactly d edges from random sources."""
    vertices = [f"v{i}" for i in range(1, nv + 1)]
    triples = []
    k = 0
    for v in vertices:
        for _ in range(d):
            k += 1
            triples.append((f"e{k}", rng.choice(vertices), v))
    return Graph.build(vertices, triples)


def random_phase(rng):
    den = rng.choice([1, 2, 3, 4, 6, 8])
    return Phase.from_turns(rng.randrange(den), den)


def topological_order(g):
    placed = []
    left = set(g.vertices)
    while left:
        ready = sorted(
            v for v in left if all(e.src not in left for e in g.edges if e.dst == v)
        )
        assert ready, "graph has a cycle"
        placed.extend(ready)
        left.difference_update(ready)
    return placed


def random_root_family(rng, g, max_fresh=2, with_phases=True):
    """Random total explicit family on an acyclic graph.

    Labels at each vertex are the images demanded by in-edges plus a few
    fresh root labels.  Returns (family, fresh counts per vertex): the fresh
    labels are exactly the in-degree-0 nodes of the label graph, hence the
    wandering multiplicities by construction.
    """
    order = topological_order(g)
    lam: dict[str, tuple[str, ...]] = {}
    pi: dict[str, dict[str, str]] = {e.id: {} for e in g.edges}
    fresh: dict[str, int] = {}
    for v in order:
        demand = sum(len(lam[g.src(eid)]) for eid in g.in_edges(v))
        fresh_v = rng.randint(0, max_fresh)
        if demand + fresh_v == 0 and rng.random() < 0.5:
            fresh_v = 1
        size = demand + fresh_v
        labels = tuple(f"i{k}" for k in range(size))
        lam[v] = labels
        slots = list(labels)
        rng.shuffle(slots)
        pos = 0
        for eid in g.in_edges(v):
            for i in lam[g.src(eid)]:
                pi[eid][i] = slots[pos]
                pos += 1
        fresh[v] = fresh_v
    phases = {}
    if with_phases:
        for eid, mapping in pi.items():
            for i in mapping:
                if rng.random() < 0.5:
                    phases[(eid, i)] = random_phase(rng)
    fam = ExplicitAtomic(g, lam, pi, phases)
    return fam, {v: c for v, c in fresh.items() if c}


def loop_sink_graph():
    """A loop at v plus an exit edge to a sink w."""
    return Graph.build(["v", "w"], [("loop", "v", "v"), ("out", "v", "w")])


def random_loop_sink_family(rng, laps=2, sink_roots=1):
    """Cycle of the given lap count at the loop, hanging labels at the sink.

    Returns (family, total cycle phase in turns, sink root count).  The sink
    receives one image per loop label plus the requested fresh roots.
    """
    g = loop_sink_graph()
    lam_v = tuple(f"i{k}" for k in range(laps))
    lam_w = tuple(f"j{k}" for k in range(laps + sink_roots))
    pi_loop = {f"i{k}": f"i{(k + 1) % laps}" for k in range(laps)}
    pi_out = {f"i{k}": f"j{k}" for k in range(laps)}
    phases = {}
    total = Fraction(0)
    for k in range(laps):
        if rng.random() < 0.7:
            ph = random_phase(rng)
            phases[("loop", f"i{k}")] = ph
            total += ph.turns
        if rng.random() < 0.5:
            phases[("out", f"i{k}")] = random_phase(rng)
    fam = ExplicitAtomic(g, {"v": lam_v, "w": lam_w}, {"loop": pi_loop, "out": pi_out}, phases)
    return fam, total % 1, sink_roots


def random_gauge(rng, fam):
    return {
        node: random_phase(rng)
        for node in fam.nodes()
        if rng.random() < 0.8
    }


def random_relabeling(rng, fam):
    rename = {}
    for v in sorted(fam.lam):
        labels = list(fam.lam[v])
        fresh_names = [f"r{k}" for k in range(len(labels))]
        rng.shuffle(fresh_names)
        for i, new in zip(labels, fresh_names):
            rename[(v, i)] = new
    return rename


def random_cycle_family(rng, n=None, laps=None):
    """pure-cycle style data with random per-arc phases, built by hand."""
    from semigroupoid_kit import pure_cycle_family

    n = n or rng.randint(1, 3)
    laps = laps or rng.randint(1, 2)
    g = cycle_graph(n)
    count = n * laps
    phases = [random_phase(rng) for _ in range(count)]
    fam = pure_cycle_family(g, laps, phases)
    total = sum((p.turns for p in phases), Fraction(0)) % 1
    return g, fam, laps, total
