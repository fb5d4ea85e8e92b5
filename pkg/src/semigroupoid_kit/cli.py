"""Command line interface.

Subcommands are grouped by module: graph, paths, series, atomic, color,
trunc.  Outputs are deterministic JSON by default (--format table for
aligned text, --format dot for GraphViz where it makes sense).  Exit codes:
0 success, 1 domain error (structured JSON on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from . import atomic as at
from . import graph as gr
from . import paths as pa
from . import roadcoloring as rc
from . import series as se
from . import serialize as io
from . import trunc as tr
from .errors import DomainError

DEFAULT_MAX_LEN = 6
DEFAULT_DEPTH = 4


def _load_graph(path: str) -> gr.Graph:
    return gr.Graph.from_json_dict(io.load_json(path))


def _load_coloring(path: str) -> rc.Coloring:
    return rc.Coloring.from_json_dict(io.load_json(path))


def _load_family(path: str):
    return io.atomic_family_from_json(io.load_json(path))


def _emit(args, data: dict, table_lines=None) -> None:
    if args.format == "table" and table_lines is not None:
        print("\n".join(table_lines))
    else:
        sys.stdout.write(io.dump_json(data))


def _report_table(report) -> list[str]:
    lines = []
    for f in report.findings:
        where = f" [{f.where}]" if f.where else ""
        lines.append(f"{f.severity:5s} {f.code}{where}: {f.message}")
    lines.append("valid" if report.valid else "INVALID")
    return lines


# ---------------------------------------------------------------------------
# graph


def cmd_graph_check(args) -> int:
    g = _load_graph(args.file)
    if args.format == "dot":
        sys.stdout.write(gr.graph_to_dot(g))
        return 0
    report = gr.validate_graph(g)
    _emit(args, report.to_json(), _report_table(report))
    return 0


def cmd_graph_period(args) -> int:
    g = _load_graph(args.file)
    p = gr.period(g, args.vertex)
    _emit(
        args,
        {"vertex": args.vertex, "period": p},
        [f"period({args.vertex}) = {p if p is not None else 'none (no cycle)'}"],
    )
    return 0


def cmd_graph_closure(args) -> int:
    g = _load_graph(args.file)
    subset = [v for v in args.set.split(",") if v]
    closure = sorted(gr.directed_closure(g, subset))
    _emit(args, {"closure": closure}, [", ".join(closure)])
    return 0


def cmd_graph_ses(args) -> int:
    g = _load_graph(args.file)
    g0, layers, ok = gr.source_elimination(g)
    data = {"has_ses": ok, "layers": layers, "g0": g0.to_json_dict()}
    lines = [f"has_ses: {ok}"]
    for i, layer in enumerate(layers, 1):
        lines.append(f"layer {i}: {', '.join(layer)}")
    lines.append(f"core vertices: {', '.join(g0.sorted_vertices()) or '(none)'}")
    _emit(args, data, lines)
    return 0


# ---------------------------------------------------------------------------
# paths


def cmd_paths_enum(args) -> int:
    g = _load_graph(args.file)
    sources = [v for v in args.source.split(",") if v]
    found = pa.enumerate_paths(g, sources, args.max_len)
    data = {"count": len(found), "paths": [io.path_to_json(p) for p in found]}
    lines = [f"{len(p)}: {p.base} {' '.join(p.edges) or '(vertex)'}" for p in found]
    lines.append(f"count: {len(found)}")
    _emit(args, data, lines)
    return 0


def cmd_paths_cycles(args) -> int:
    g = _load_graph(args.file)
    found = pa.irreducible_cycles_at(g, args.vertex, args.max_len)
    data = {"count": len(found), "cycles": [io.path_to_json(p) for p in found]}
    lines = [f"{len(p)}: {' '.join(p.edges)}" for p in found]
    lines.append(f"count: {len(found)}")
    _emit(args, data, lines)
    return 0


def cmd_paths_class(args) -> int:
    g = _load_graph(args.file)
    cls = pa.vertex_cycle_class(g, args.vertex)
    _emit(
        args,
        {"vertex": args.vertex, "class": cls.value},
        [f"{args.vertex}: {cls.value}"],
    )
    return 0


# ---------------------------------------------------------------------------
# series


def _formal_lines(a: se.FormalElement) -> list[str]:
    if a.is_zero():
        return ["0"]
    out = []
    for p, c in a.sorted_terms():
        word = " ".join(p.edges) if p.edges else p.base
        out.append(f"({c.real:+.6g}{c.imag:+.6g}i) * [{word}]")
    return out


def cmd_series_mul(args) -> int:
    g = _load_graph(args.graph)
    a = io.formal_from_json(g, io.load_json(args.left))
    b = io.formal_from_json(g, io.load_json(args.right))
    prod = se.formal_mul(a, b)
    _emit(args, io.formal_to_json(prod), _formal_lines(prod))
    return 0


def cmd_series_fourier(args) -> int:
    g = _load_graph(args.graph)
    a = io.formal_from_json(g, io.load_json(args.file))
    part = se.fourier_coeff(a, args.m)
    _emit(args, io.formal_to_json(part), _formal_lines(part))
    return 0


def cmd_series_cesaro(args) -> int:
    g = _load_graph(args.graph)
    a = io.formal_from_json(g, io.load_json(args.file))
    out = se.cesaro(a, args.k)
    _emit(args, io.formal_to_json(out), _formal_lines(out))
    return 0


def cmd_series_ideal_degree(args) -> int:
    g = _load_graph(args.graph)
    a = io.formal_from_json(g, io.load_json(args.file))
    deg = se.graded_ideal_degree(a)
    value = "infinity" if deg is None else deg
    _emit(args, {"degree": value}, [f"degree: {value}"])
    return 0


def cmd_series_rownorm(args) -> int:
    g = _load_graph(args.graph)
    a = io.formal_from_json(g, io.load_json(args.file))
    value = se.l2_row_norm(a, args.m, args.vertex)
    _emit(
        args,
        {"m": args.m, "vertex": args.vertex, "value": value},
        [f"l2 row norm at grade {args.m}, vertex {args.vertex}: {value}"],
    )
    return 0


# ---------------------------------------------------------------------------
# atomic


def cmd_atomic_validate(args) -> int:
    g, fam = _load_family(args.file)
    if isinstance(fam, at.ExplicitAtomic):
        if args.format == "dot":
            sys.stdout.write(at.build_H(fam).to_dot())
            return 0
        report = at.validate_atomic(fam)
        _emit(args, report.to_json(), _report_table(report))
    else:
        at.validate_canonical(g, fam)
        _emit(args, {"valid": True, "findings": []}, ["valid (canonical data)"])
    return 0


def cmd_atomic_classify(args) -> int:
    g, fam = _load_family(args.file)
    dec = at.classify(g, fam)
    data = io.decomposition_to_json(dec)
    lines = [
        f"{at.describe_atom(atom)}  x{mult}" for atom, mult in dec.atoms
    ] + [f"note: {n}" for n in dec.notes]
    _emit(args, data, lines or ["empty decomposition"])
    return 0


def cmd_atomic_equiv(args) -> int:
    ga, fa = _load_family(args.left)
    gb, fb = _load_family(args.right)
    if ga.to_json_dict() != gb.to_json_dict():
        raise DomainError("families live over different host graphs")
    verdict = at.are_unitarily_equivalent(ga, fa, fb, tol=args.tol)
    _emit(
        args,
        {"equivalent": verdict.equivalent, "witness": verdict.witness},
        [f"equivalent: {verdict.equivalent}", f"witness: {verdict.witness}"],
    )
    return 0


def cmd_atomic_wold(args) -> int:
    g, fam = _load_family(args.file)
    data = at.wold_atomic(fam, g if not isinstance(fam, at.ExplicitAtomic) else None)
    payload = io.wold_to_json(data)
    lines = [f"alpha[{v}] = {m}" for v, m in sorted(data.alpha.items())]
    lines.append(f"remainder nodes: {len(data.remainder_nodes)}")
    lines.append(f"supported on elimination core: {data.supported_on_g0}")
    _emit(args, payload, lines)
    return 0


def cmd_atomic_condm(args) -> int:
    import json as _json

    g, fam = _load_family(args.file)
    mu = io.path_from_json(g, _json.loads(args.mu))
    rep = at.orbit_condition_M(fam, mu, g)
    _emit(
        args,
        {"class": rep.kind.value, "detail": rep.detail},
        [f"{rep.kind.value}: {rep.detail}"],
    )
    return 0


# ---------------------------------------------------------------------------
# color


def cmd_color_validate(args) -> int:
    g = _load_graph(args.graph)
    c = _load_coloring(args.coloring)
    report = rc.validate_coloring(g, c)
    _emit(args, report.to_json(), _report_table(report))
    return 0


def cmd_color_sync_verify(args) -> int:
    g = _load_graph(args.graph)
    c = _load_coloring(args.coloring)
    target = rc.is_synchronizing_word(g, c, args.word)
    _emit(
        args,
        {"word": args.word, "synchronizing": target is not None, "target": target},
        [f"word {args.word!r}: " + (f"synchronizes to {target}" if target else "not synchronizing")],
    )
    return 0


def cmd_color_sync_find(args) -> int:
    g = _load_graph(args.graph)
    c = _load_coloring(args.coloring)
    word = rc.find_synchronizing_word(g, c)
    _emit(
        args,
        {"word": word},
        [f"shortest synchronizing word: {word!r}" if word is not None else "no synchronizing word"],
    )
    return 0


def cmd_color_search(args) -> int:
    g = _load_graph(args.graph)
    found = rc.search_synchronizing_coloring(g, jobs=args.jobs)
    if found is None:
        _emit(args, {"result": None}, ["no synchronizing coloring"])
        return 0
    coloring, word = found
    _emit(
        args,
        {"coloring": coloring.to_json_dict(), "word": word},
        [f"word: {word!r}", f"coloring: {coloring.to_json_dict()['color']}"],
    )
    return 0


def cmd_color_obrien(args) -> int:
    g = _load_graph(args.graph)
    coloring, word = rc.obrien_coloring(g, args.loop)
    _emit(
        args,
        {"coloring": coloring.to_json_dict(), "word": word},
        [f"word: {word!r}", f"coloring: {coloring.to_json_dict()['color']}"],
    )
    return 0


def cmd_color_syncdiag(args) -> int:
    g = _load_graph(args.graph)
    c = _load_coloring(args.coloring)
    diag = rc.syncdiag_paths(g, c, args.gamma, args.gamma2)
    data = {
        "vertex": diag.vertex,
        "mu_prime": io.path_to_json(diag.mu_prime),
        "mu": io.path_to_json(diag.mu),
        "lambda": io.path_to_json(diag.closed),
        "colors": diag.color_word(g, c),
    }
    lines = [
        f"vertex: {diag.vertex}",
        f"mu' = {' '.join(diag.mu_prime.edges) or '(vertex)'}",
        f"mu  = {' '.join(diag.mu.edges) or '(vertex)'}",
        f"lambda = {' '.join(diag.closed.edges) or '(vertex)'}",
        f"colors: {data['colors']}",
    ]
    _emit(args, data, lines)
    return 0


# ---------------------------------------------------------------------------
# trunc


def _build_rep(args) -> tr.TruncatedRep:
    g = _load_graph(args.graph)
    if getattr(args, "coloring", None):
        coloring = _load_coloring(args.coloring)
        return tr.build_colored_trunc(g, coloring, args.depth)
    if not getattr(args, "sources", None):
        raise DomainError("need --sources or --coloring")
    sources = [v for v in args.sources.split(",") if v]
    return tr.build_left_regular_trunc(g, sources, args.depth)


def _label_str(rep: tr.TruncatedRep, label) -> str:
    if rep.kind == "left_regular":
        return f"{label.base}:{' '.join(label.edges) or '()'}"
    v, w = label
    return f"{v}:{w or '()'}"


def cmd_trunc_build(args) -> int:
    rep = _build_rep(args)
    ops = {}
    for v, m in rep.vertex_ops.items():
        ops[f"v:{v}"] = tr.matrix_to_coordinates(m)
    for e, m in rep.edge_ops.items():
        ops[f"e:{e}"] = tr.matrix_to_coordinates(m)
    data = {
        "kind": rep.kind,
        "depth": rep.depth,
        "dim": rep.dim,
        "basis": [_label_str(rep, lab) for lab in rep.labels],
        "ops": ops,
    }
    lines = [f"kind: {rep.kind}", f"dim: {rep.dim}"]
    lines += [f"basis[{i}] = {_label_str(rep, lab)}" for i, lab in enumerate(rep.labels)]
    _emit(args, data, lines)
    return 0


def cmd_trunc_verify(args) -> int:
    rep = _build_rep(args)
    reports = tr.verify_tck(rep)
    data = {"dim": rep.dim, "relations": [r.to_json() for r in reports]}
    lines = []
    for r in reports:
        status = "exact" if r.exact_zero else f"residual {r.max_residual:.3e}"
        lines.append(
            f"{r.relation:3s} grades [{r.interior_lo},{r.interior_hi}]: {status}"
            + (f" (boundary {r.boundary_residual:.3e})" if r.boundary_residual else "")
        )
    _emit(args, data, lines)
    return 0


def cmd_trunc_cycle_lemma(args) -> int:
    report = tr.cycle_lemma_check(args.n, args.depth)
    _emit(
        args,
        report.to_json(),
        [f"n={report.n} depth={report.depth} ok={report.ok}"] + report.blocks,
    )
    return 0


def cmd_trunc_apply(args) -> int:
    rep = _build_rep(args)
    g = rep.graph
    elem = io.formal_from_json(g, io.load_json(args.element))
    mat = tr.apply_formal(rep, elem)
    entries = tr.matrix_to_coordinates(mat)
    data = {"dim": rep.dim, "entries": entries}
    lines = [f"({r},{c}) = {re:+.6g}{im:+.6g}i" for r, c, re, im in entries]
    lines.append(f"nnz: {len(entries)}")
    _emit(args, data, lines)
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_common(p: argparse.ArgumentParser, dot: bool = False) -> None:
    choices = ["json", "table"] + (["dot"] if dot else [])
    p.add_argument("--format", choices=choices, default="json")
    p.add_argument("--tol", type=float, default=1e-9)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semigroupoid-kit",
        description="Graphs, path spaces, atomic families, road colorings, truncations",
    )
    sub = parser.add_subparsers(dest="group", required=True)

    g_graph = sub.add_parser("graph", help="graph structure commands")
    gs = g_graph.add_subparsers(dest="cmd", required=True)
    p = gs.add_parser("check", help="validate a graph file, or export DOT")
    p.add_argument("file")
    _add_common(p, dot=True)
    p.set_defaults(func=cmd_graph_check)
    p = gs.add_parser("period", help="gcd of cycle lengths through a vertex")
    p.add_argument("file")
    p.add_argument("--vertex", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_graph_period)
    p = gs.add_parser("closure", help="directed closure of a vertex set")
    p.add_argument("file")
    p.add_argument("--set", required=True, help="comma-separated vertices")
    _add_common(p)
    p.set_defaults(func=cmd_graph_closure)
    p = gs.add_parser("ses", help="source elimination layers and core")
    p.add_argument("file")
    _add_common(p)
    p.set_defaults(func=cmd_graph_ses)

    g_paths = sub.add_parser("paths", help="path space commands")
    ps = g_paths.add_subparsers(dest="cmd", required=True)
    p = ps.add_parser("enum", help="enumerate paths from sources")
    p.add_argument("file")
    p.add_argument("--source", required=True, help="comma-separated vertices")
    p.add_argument("--max-len", type=int, default=DEFAULT_MAX_LEN)
    _add_common(p)
    p.set_defaults(func=cmd_paths_enum)
    p = ps.add_parser("cycles", help="irreducible cycles at a vertex")
    p.add_argument("file")
    p.add_argument("--vertex", required=True)
    p.add_argument("--max-len", type=int, default=DEFAULT_MAX_LEN)
    _add_common(p)
    p.set_defaults(func=cmd_paths_cycles)
    p = ps.add_parser("class", help="cycle trichotomy at a vertex")
    p.add_argument("file")
    p.add_argument("--vertex", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_paths_class)

    g_series = sub.add_parser("series", help="formal series commands")
    ss = g_series.add_subparsers(dest="cmd", required=True)
    p = ss.add_parser("mul", help="multiply two formal elements")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--graph", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_series_mul)
    p = ss.add_parser("fourier", help="grade-m homogeneous part")
    p.add_argument("file")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--graph", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_series_fourier)
    p = ss.add_parser("cesaro", help="Cesaro-weighted partial sum")
    p.add_argument("file")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--graph", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_series_cesaro)
    p = ss.add_parser("ideal-degree", help="minimum grade of a nonzero term")
    p.add_argument("file")
    p.add_argument("--graph", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_series_ideal_degree)
    p = ss.add_parser("rownorm", help="l2 norm of grade-m coefficients at a vertex")
    p.add_argument("file")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--vertex", required=True)
    p.add_argument("--graph", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_series_rownorm)

    g_atomic = sub.add_parser("atomic", help="atomic family commands")
    as_ = g_atomic.add_subparsers(dest="cmd", required=True)
    p = as_.add_parser("validate", help="validate explicit data, or export H as DOT")
    p.add_argument("file")
    _add_common(p, dot=True)
    p.set_defaults(func=cmd_atomic_validate)
    p = as_.add_parser("classify", help="decompose into irreducible atoms")
    p.add_argument("file")
    _add_common(p)
    p.set_defaults(func=cmd_atomic_classify)
    p = as_.add_parser("equiv", help="unitary equivalence of two families")
    p.add_argument("left")
    p.add_argument("right")
    _add_common(p)
    p.set_defaults(func=cmd_atomic_equiv)
    p = as_.add_parser("wold", help="wandering multiplicities and remainder")
    p.add_argument("file")
    _add_common(p)
    p.set_defaults(func=cmd_atomic_wold)
    p = as_.add_parser("condM", help="orbit analysis of S_mu at its base vertex")
    p.add_argument("file")
    p.add_argument("--mu", required=True, help='path JSON, e.g. {"base":"v","edges":["e"]}')
    _add_common(p)
    p.set_defaults(func=cmd_atomic_condm)

    g_color = sub.add_parser("color", help="road coloring commands")
    cs = g_color.add_subparsers(dest="cmd", required=True)
    p = cs.add_parser("validate", help="strong coloring report")
    p.add_argument("graph")
    p.add_argument("coloring")
    _add_common(p)
    p.set_defaults(func=cmd_color_validate)
    p = cs.add_parser("sync-verify", help="check a word synchronizes")
    p.add_argument("graph")
    p.add_argument("coloring")
    p.add_argument("--word", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_color_sync_verify)
    p = cs.add_parser("sync-find", help="shortest synchronizing word")
    p.add_argument("graph")
    p.add_argument("coloring")
    _add_common(p)
    p.set_defaults(func=cmd_color_sync_find)
    p = cs.add_parser("search", help="search all strong colorings for a synchronizing one")
    p.add_argument("graph")
    p.add_argument("--jobs", type=int, default=1)
    _add_common(p)
    p.set_defaults(func=cmd_color_search)
    p = cs.add_parser("obrien", help="loop plus spanning tree coloring")
    p.add_argument("graph")
    p.add_argument("--loop", required=True, help="id of a loop edge")
    _add_common(p)
    p.set_defaults(func=cmd_color_obrien)
    p = cs.add_parser("syncdiag", help="closed path realizing gamma' gamma")
    p.add_argument("graph")
    p.add_argument("coloring")
    p.add_argument("--gamma", required=True, help="synchronizing word")
    p.add_argument("--gamma2", required=True, help="prefix word")
    _add_common(p)
    p.set_defaults(func=cmd_color_syncdiag)

    g_trunc = sub.add_parser("trunc", help="finite truncation commands")
    ts = g_trunc.add_subparsers(dest="cmd", required=True)
    p = ts.add_parser("build", help="basis and matrices of a truncation")
    p.add_argument("graph")
    p.add_argument("--sources", help="comma-separated vertices")
    p.add_argument("--coloring", help="coloring file for the colored model")
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    _add_common(p)
    p.set_defaults(func=cmd_trunc_build)
    p = ts.add_parser("verify", help="interior-exact axiom checks")
    p.add_argument("graph")
    p.add_argument("--sources")
    p.add_argument("--coloring")
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    _add_common(p)
    p.set_defaults(func=cmd_trunc_verify)
    p = ts.add_parser("cycle-lemma", help="block identity of the cycle truncation")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    _add_common(p)
    p.set_defaults(func=cmd_trunc_cycle_lemma)
    p = ts.add_parser("apply", help="matrix of a formal element")
    p.add_argument("graph")
    p.add_argument("element")
    p.add_argument("--sources")
    p.add_argument("--coloring")
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    _add_common(p)
    p.set_defaults(func=cmd_trunc_apply)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        sys.stderr.write(io.dump_json(exc.to_json()))
        return 1


if __name__ == "__main__":
    sys.exit(main())
