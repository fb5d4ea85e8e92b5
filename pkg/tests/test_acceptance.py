"""Acceptance gate: one test per shipped guarantee, with runtime budgets.

Every criterion draws its randomness from a private seeded generator so the
suite is reproducible (override with SEMIGROUPOID_KIT_SEED) and each test
reports one PASS/FAIL line through the terminal-summary hook.
"""

import random
import time
from fractions import Fraction

import corpus
import oracles
from acceptance_report import record
from conftest import SEED
from semigroupoid_kit import (
    Coloring,
    CycleAtom,
    CycleType,
    ExplicitAtomic,
    FormalElement,
    Graph,
    MClass,
    Path,
    Phase,
    TailType,
    apply_formal,
    are_unitarily_equivalent,
    build_colored_trunc,
    build_left_regular_trunc,
    cesaro,
    classify,
    coisometric_defect,
    color_word,
    cycle_graph,
    cycle_lemma_check,
    cycle_structure_multiplicities,
    cycle_vertices,
    enumerate_paths,
    finitely_correlated_multiplicities,
    formal_mul,
    fourier_coeff,
    gauge_transform,
    has_ses,
    is_in_degree_regular,
    is_synchronizing_word,
    is_transitive,
    l2_row_norm,
    looped_triangle,
    obrien_coloring,
    orbit_condition_M,
    period,
    pure_cycle_family,
    relabel,
    search_synchronizing_coloring,
    syncdiag_paths,
    verify_tck,
    wold_atomic,
)


class Budget:
    def __init__(self, number: int, seconds: float, label: str):
        self.number = number
        self.seconds = seconds
        self.label = label

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        ok = exc_type is None and elapsed < self.seconds
        record(self.number, ok, elapsed, self.seconds, self.label)
        if exc_type is None:
            assert elapsed < self.seconds, (
                f"criterion {self.number} exceeded its {self.seconds}s budget: {elapsed:.2f}s"
            )
        return False


def test_acceptance_01_cycle_lemma_exact():
    with Budget(1, 1.0, "cycle matrix model exact for n in 1..5, N in n..12"):
        for n in range(1, 6):
            for depth in range(n, 13):
                report = cycle_lemma_check(n, depth)
                assert report.ok, (n, depth)
                assert report.max_residual == 0.0


def test_acceptance_02_wold_ses_equivalence():
    with Budget(2, 5.0, "acyclic Wold: SES holds; equivalent iff alpha match (200 graphs)"):
        rng = random.Random(SEED ^ 2)
        seen_equal = seen_diff = 0
        for _ in range(200):
            g = corpus.random_graph(rng, max_v=10, max_e=12, acyclic=True)
            assert has_ses(g)
            fam_a, fresh_a = corpus.random_root_family(rng, g)
            fam_b, fresh_b = corpus.random_root_family(rng, g)
            assert {v: m for v, m in wold_atomic(fam_a).alpha.items() if m} == fresh_a
            verdict = are_unitarily_equivalent(g, fam_a, fam_b)
            assert verdict.equivalent == (fresh_a == fresh_b), verdict.witness
            if fresh_a == fresh_b:
                seen_equal += 1
            else:
                seen_diff += 1
        assert seen_equal and seen_diff  # both directions of the iff exercised


def test_acceptance_03_root_splitting_exact():
    with Budget(3, 0.1, "cycle powers split into p atoms with exact p-th root phases"):
        g = cycle_graph(1)
        samples = [Fraction(0), Fraction(1, 2), Fraction(1, 3), Fraction(3, 4), Fraction(5, 6)]
        for p in range(1, 7):
            w = Path("v1", ("e1",) * p)
            for lam in samples:
                dec = classify(g, CycleType(w, Phase(turns=lam)))
                assert len(dec.atoms) == p
                turns = set()
                for atom, mult in dec.atoms:
                    assert isinstance(atom, CycleAtom) and mult == 1
                    assert len(atom.cycle) == 1
                    assert (atom.phase ** p).turns == lam  # exact root property
                    turns.add(atom.phase.turns)
                assert len(turns) == p


def test_acceptance_04_equivalence_soundness():
    with Budget(4, 10.0, "gauge+relabel always equivalent; injected mismatches never (500)"):
        rng = random.Random(SEED ^ 4)
        built = 0
        while built < 500:
            kind = built % 5
            if kind < 3:
                g = corpus.random_graph(rng, max_v=4, max_e=5, acyclic=True)
                fam, fresh = corpus.random_root_family(rng, g, max_fresh=1)
                if fam.dim() > 8 or fam.dim() == 0:
                    continue
                sink = next(
                    v for v in corpus.topological_order(g)[::-1] if not g.out_edges(v)
                )
                lam = dict(fam.lam)
                lam[sink] = lam[sink] + (f"x{len(lam[sink])}",)
                injected = ExplicitAtomic(g, lam, fam.pi, fam.phases)
            elif kind == 3:
                g, fam, laps, total = corpus.random_cycle_family(rng)
                arc = next(iter(sorted(fam.pi)))
                lbl = sorted(fam.pi[arc])[0]
                shifted = dict(fam.phases)
                shifted[(arc, lbl)] = fam.phase(arc, lbl) * Phase.from_turns(1, 2)
                injected = ExplicitAtomic(g, fam.lam, fam.pi, shifted)
            else:
                fam, total, roots = corpus.random_loop_sink_family(
                    rng, laps=rng.randint(1, 2), sink_roots=rng.randint(0, 1)
                )
                g = fam.graph
                lam = dict(fam.lam)
                lam["w"] = lam["w"] + (f"x{len(lam['w'])}",)
                injected = ExplicitAtomic(g, lam, fam.pi, fam.phases)
            moved = gauge_transform(fam, corpus.random_gauge(rng, fam))
            moved = relabel(moved, corpus.random_relabeling(rng, moved))
            verdict = are_unitarily_equivalent(g, fam, moved)
            assert verdict.equivalent, verdict.witness
            bad = are_unitarily_equivalent(g, fam, injected)
            assert not bad.equivalent
            built += 1


def test_acceptance_05_multiplicity_formulas_agree():
    with Budget(5, 2.0, "rank-based and cycle-structure multiplicities agree (100 graphs)"):
        rng = random.Random(SEED ^ 5)
        from semigroupoid_kit import irreducible_cycles_at

        done = 0
        while done < 100:
            g = corpus.random_graph(rng, max_v=6, max_e=10)
            start = rng.choice(sorted(g.vertices))
            cycles = irreducible_cycles_at(g, start, 5)
            if not cycles:
                continue
            w = rng.choice(cycles)
            visits = cycle_vertices(g, w)
            rank = {u: visits.count(u) for u in g.vertices}
            a = cycle_structure_multiplicities(g, w)
            b = finitely_correlated_multiplicities(g, rank)
            for u in g.vertices:
                assert a.get(u, 0) == b.get(u, 0), (g.to_json_dict(), w)
            done += 1


def _search_corpus(rng, count=19):
    graphs = []
    seen = set()
    singletons = 0
    tries = 0
    while len(graphs) < count and tries < 20000:
        tries += 1
        nv = rng.randint(1, 5)
        d = rng.randint(1, 3)
        g = corpus.random_in_regular_graph(rng, nv, d)
        if nv == 1 and singletons >= 1:
            continue
        key = str(g.to_json_dict())
        if key in seen:
            continue
        regular, got_d = is_in_degree_regular(g)
        if not regular or not is_transitive(g):
            continue
        if any(period(g, v) != 1 for v in g.vertices):
            continue
        seen.add(key)
        graphs.append(g)
        if nv == 1:
            singletons += 1
    return graphs


def test_acceptance_06_road_coloring_search():
    with Budget(6, 30.0, "synchronizing coloring found on 20 aperiodic graphs; none on periodic"):
        rng = random.Random(SEED ^ 6)
        graphs = [looped_triangle()] + _search_corpus(rng)
        assert len(graphs) == 20
        for g in graphs:
            found = search_synchronizing_coloring(g)
            assert found is not None, g.to_json_dict()
            coloring, word = found
            if len(g.vertices) > 1:
                assert oracles.sync_target(g, coloring, word) is not None
        two = Graph.build(
            ["p", "q"],
            [("a1", "p", "q"), ("a2", "p", "q"), ("b1", "q", "p"), ("b2", "q", "p")],
        )
        for g in [cycle_graph(2), cycle_graph(3), two]:
            assert search_synchronizing_coloring(g) is None


def test_acceptance_07_obrien_pipeline():
    with Budget(7, 1.0, "tree coloring gives gamma=1^depth; syncdiag words compose (100)"):
        g = looped_triangle()
        coloring, gamma = obrien_coloring(g, "loop_t")
        assert gamma == "1"  # spanning tree depth is 1
        assert is_synchronizing_word(g, coloring, gamma) == "t"
        rng = random.Random(SEED ^ 7)
        for _ in range(100):
            gamma_prime = "".join(rng.choice("12") for _ in range(rng.randint(0, 8)))
            diag = syncdiag_paths(g, coloring, gamma, gamma_prime)
            lam = diag.closed
            assert lam.base == "t"
            assert color_word(g, coloring, lam) == gamma_prime + gamma


def test_acceptance_08_colored_truncation_exact():
    with Budget(8, 2.0, "colored model at N=4: axioms exactly 0 inside; range sums = I for k<=3"):
        g = looped_triangle()
        coloring, _ = obrien_coloring(g, "loop_t")
        rep = build_colored_trunc(g, coloring, 4)
        for report in verify_tck(rep):
            assert report.max_residual == 0.0, report.relation
            assert report.exact_zero
        for k in range(0, 4):
            assert coisometric_defect(rep, k) == (0.0, 0.0)


def test_acceptance_09_series_calculus():
    with Budget(9, 5.0, "Fourier, Leibniz, Cesaro, row norms on 1000 polynomial pairs"):
        rng = random.Random(SEED ^ 9)
        g = looped_triangle()
        pool = enumerate_paths(g, g.vertices, 4)
        rep = build_left_regular_trunc(g, g.vertices, 4)
        index = rep.index()

        def poly():
            n = rng.randint(1, 10)
            picks = rng.sample(pool, n)
            return FormalElement(
                g,
                {p: complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for p in picks},
            )

        for trial in range(1000):
            a, b = poly(), poly()
            ab = formal_mul(a, b)
            # grade-0 parts multiply
            head = formal_mul(fourier_coeff(a, 0), fourier_coeff(b, 0))
            assert fourier_coeff(ab, 0).approx_eq(head, tol=1e-12)
            # graded Leibniz rule
            for m in range(0, 9):
                direct = fourier_coeff(ab, m)
                assembled = FormalElement.zero(g)
                for i in range(m + 1):
                    assembled = assembled + formal_mul(
                        fourier_coeff(a, i), fourier_coeff(b, m - i)
                    )
                assert direct.approx_eq(assembled, tol=1e-12)
            # Cesaro weights
            k = rng.randint(1, 5)
            smoothed = cesaro(a, k)
            for p, c in a.terms.items():
                want = c * (1 - len(p) / k) if len(p) < k else 0.0
                got = smoothed.terms.get(p, 0.0)
                assert abs(got - want) < 1e-12
            # row norm against the truncated matrix column
            if trial % 10 == 0:
                m = rng.randint(0, 4)
                v = rng.choice(sorted(g.vertices))
                part = fourier_coeff(a, m)
                mat = apply_formal(rep, part)
                col = mat.getcol(index[Path.vertex(v)]).toarray().ravel()
                norm = float((abs(col) ** 2).sum() ** 0.5)
                assert abs(norm - l2_row_norm(a, m, v)) < 1e-12


def test_acceptance_10_condition_m_trichotomy():
    with Budget(10, 0.1, "orbit analysis: Singular, DominatesLebesgue, NotUnitary as built"):
        two_cycle = Path("v1", ("e2", "e1"))
        fam = pure_cycle_family(cycle_graph(2), laps=3)
        assert orbit_condition_M(fam, two_cycle).kind is MClass.SINGULAR
        g1 = cycle_graph(1)
        loop = Path("v1", ("e1",))
        assert (
            orbit_condition_M(TailType(loop), loop, g1).kind
            is MClass.DOMINATES_LEBESGUE
        )
        g3 = cycle_graph(3)
        w3 = Path("v1", ("e3", "e2", "e1"))
        assert (
            orbit_condition_M(TailType(w3), w3, g3).kind is MClass.DOMINATES_LEBESGUE
        )
        broken_pi = {e: dict(m) for e, m in fam.pi.items()}
        del broken_pi["e1"]["i0"]
        partial = ExplicitAtomic(fam.graph, fam.lam, broken_pi, fam.phases)
        assert orbit_condition_M(partial, two_cycle).kind is MClass.NOT_UNITARY
