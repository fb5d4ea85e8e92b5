"""JSON codecs for the file formats the command line accepts and emits.

Formats:
  graph          {"vertices": [...], "edges": [{"id","src","dst"}, ...]}
  path           {"base": "v", "edges": ["e2", "e1"]}   (product order)
  formal element {"terms": [{"path": {...}, "re": 1.0, "im": 0.0}, ...]}
  phase          {"angle": {"num": 1, "den": 4}} or {"re": ..., "im": ...}
  explicit atomic {"graph": ..., "lambda": {...}, "pi": [...], "phase": [...]}
  canonical atomic {"tag": "left_regular"|"cycle"|"tail"|"direct_sum", ...}
  coloring       {"d": 2, "color": {"e1": 1, ...}}
"""

from __future__ import annotations

import json
from typing import Any

from .atomic import (
    OMEGA,
    AtomDecomposition,
    CanonicalAtomic,
    CycleAtom,
    CycleType,
    DirectSum,
    ExplicitAtomic,
    LeftRegular,
    LeftRegularAtom,
    TailAtom,
    TailType,
    WoldData,
)
from .errors import DomainError
from .graph import Graph
from .paths import Path, validate_path
from .phases import Phase
from .roadcoloring import Coloring
from .series import FormalElement


def path_to_json(p: Path) -> dict:
    return {"base": p.base, "edges": list(p.edges)}


def path_from_json(g: Graph, data: dict) -> Path:
    try:
        edges = tuple(str(e) for e in data.get("edges", ()))
        base = data.get("base")
    except (TypeError, AttributeError) as exc:
        raise DomainError(f"path object needs 'base' and 'edges': {exc}")
    if base is None:
        if not edges:
            raise DomainError("path object without edges needs a base vertex")
        base = g.src(edges[-1])
    p = Path(str(base), edges)
    validate_path(g, p)
    return p


def formal_to_json(a: FormalElement) -> dict:
    return {
        "terms": [
            {"path": path_to_json(p), "re": c.real, "im": c.imag}
            for p, c in a.sorted_terms()
        ]
    }


def formal_from_json(g: Graph, data: dict) -> FormalElement:
    try:
        items = list(data["terms"])
    except (KeyError, TypeError) as exc:
        raise DomainError(f"formal element needs 'terms': {exc}")
    terms: dict[Path, complex] = {}
    for item in items:
        p = path_from_json(g, item["path"])
        c = complex(float(item.get("re", 0.0)), float(item.get("im", 0.0)))
        terms[p] = terms.get(p, 0) + c
    return FormalElement(g, terms)


def explicit_atomic_to_json(a: ExplicitAtomic) -> dict:
    pi_rows = [
        {"edge": eid, "from": i, "to": j}
        for eid in sorted(a.pi)
        for i, j in sorted(a.pi[eid].items())
    ]
    phase_rows = []
    for (eid, i), ph in sorted(a.phases.items(), key=lambda kv: kv[0]):
        row: dict[str, Any] = {"edge": eid, "from": i}
        row.update(ph.to_json())
        phase_rows.append(row)
    return {
        "graph": a.graph.to_json_dict(),
        "lambda": {v: list(labels) for v, labels in sorted(a.lam.items())},
        "pi": pi_rows,
        "phase": phase_rows,
    }


def explicit_atomic_from_json(data: dict) -> ExplicitAtomic:
    try:
        g = Graph.from_json_dict(data["graph"])
        lam_raw = dict(data.get("lambda", {}))
        pi_raw = list(data.get("pi", []))
        phase_raw = list(data.get("phase", []))
    except (KeyError, TypeError) as exc:
        raise DomainError(f"explicit atomic object malformed: {exc}")
    lam = {str(v): tuple(str(i) for i in labels) for v, labels in lam_raw.items()}
    pi: dict[str, dict[str, str]] = {}
    for row in pi_raw:
        try:
            eid, i, j = str(row["edge"]), str(row["from"]), str(row["to"])
        except (KeyError, TypeError) as exc:
            raise DomainError(f"pi row needs 'edge', 'from', 'to': {exc}")
        cell = pi.setdefault(eid, {})
        if i in cell:
            raise DomainError("duplicate pi row", edge=eid, index=i)
        cell[i] = j
    phases: dict[tuple[str, str], Phase] = {}
    for row in phase_raw:
        try:
            eid, i = str(row["edge"]), str(row["from"])
        except (KeyError, TypeError) as exc:
            raise DomainError(f"phase row needs 'edge' and 'from': {exc}")
        phases[(eid, i)] = Phase.from_json(row)
    return ExplicitAtomic(g, lam, pi, phases)


def canonical_to_json(fam: CanonicalAtomic) -> dict:
    if isinstance(fam, LeftRegular):
        return {"tag": "left_regular", "vertex": fam.vertex}
    if isinstance(fam, CycleType):
        out = {"tag": "cycle", "path": path_to_json(fam.cycle)}
        out["phase"] = fam.phase.to_json()
        return out
    if isinstance(fam, TailType):
        return {"tag": "tail", "path": path_to_json(fam.cycle)}
    if isinstance(fam, DirectSum):
        return {
            "tag": "direct_sum",
            "parts": [
                {"term": canonical_to_json(part), "multiplicity": mult}
                for part, mult in fam.parts
            ],
        }
    raise DomainError("unknown canonical family", got=type(fam).__name__)


def canonical_from_json(g: Graph, data: dict) -> CanonicalAtomic:
    tag = data.get("tag")
    if tag == "left_regular":
        return LeftRegular(str(data["vertex"]))
    if tag == "cycle":
        p = path_from_json(g, data["path"])
        phase = Phase.from_json(data["phase"]) if "phase" in data else Phase.one()
        return CycleType(p, phase)
    if tag == "tail":
        return TailType(path_from_json(g, data["path"]))
    if tag == "direct_sum":
        parts = []
        for item in data.get("parts", []):
            term = canonical_from_json(g, item["term"])
            mult = item.get("multiplicity", 1)
            mult = OMEGA if mult == OMEGA else int(mult)
            parts.append((term, mult))
        return DirectSum(tuple(parts))
    raise DomainError("unknown canonical tag", tag=tag)


def atomic_family_from_json(data: dict, g: Graph | None = None):
    """Accepts an explicit atomic object or, with a host graph, a canonical tag."""
    if "tag" in data:
        if g is None and "graph" in data:
            g = Graph.from_json_dict(data["graph"])
        if g is None:
            raise DomainError("canonical atomic JSON needs a host graph")
        return g, canonical_from_json(g, data)
    fam = explicit_atomic_from_json(data)
    return fam.graph, fam


def decomposition_to_json(dec: AtomDecomposition) -> dict:
    atoms = []
    for atom, mult in dec.atoms:
        if isinstance(atom, LeftRegularAtom):
            row: dict[str, Any] = {"kind": "left_regular", "vertex": atom.vertex}
        elif isinstance(atom, CycleAtom):
            row = {
                "kind": "cycle",
                "cycle": path_to_json(atom.cycle),
                "phase": atom.phase.to_json(),
            }
        elif isinstance(atom, TailAtom):
            row = {"kind": "tail", "cycle": path_to_json(atom.cycle)}
        else:
            raise DomainError("unknown atom kind", got=type(atom).__name__)
        row["multiplicity"] = mult
        atoms.append(row)
    return {"atoms": atoms, "notes": list(dec.notes)}


def wold_to_json(w: WoldData) -> dict:
    return {
        "alpha": {v: m for v, m in sorted(w.alpha.items())},
        "remainder": [[v, i] for v, i in sorted(w.remainder_nodes)],
        "supported_on_g0": w.supported_on_g0,
        "notes": list(w.notes),
    }


def coloring_to_json(c: Coloring) -> dict:
    return c.to_json_dict()


def coloring_from_json(data: dict) -> Coloring:
    return Coloring.from_json_dict(data)


def load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise DomainError("file not found", path=path)
    except json.JSONDecodeError as exc:
        raise DomainError(f"invalid JSON in {path}: {exc}")


def dump_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"
