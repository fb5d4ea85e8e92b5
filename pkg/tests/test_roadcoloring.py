import itertools

import pytest

import corpus
import oracles
from semigroupoid_kit import (
    Coloring,
    DomainError,
    EnumerationOverflow,
    Graph,
    InvalidColoring,
    PartialAutomaton,
    backward_automaton,
    color_word,
    cycle_graph,
    find_synchronizing_word,
    follow_backward,
    is_synchronizing_word,
    looped_triangle,
    obrien_coloring,
    search_synchronizing_coloring,
    syncdiag_paths,
    synchronizing_guarantee,
    validate_coloring,
)

OBRIEN_FIG1 = {"loop_t": 1, "tl1": 1, "tr": 1, "tl2": 2, "lr": 2, "rt": 2}


def doubled_two_cycle():
    return Graph.build(
        ["p", "q"],
        [("a1", "p", "q"), ("a2", "p", "q"), ("b1", "q", "p"), ("b2", "q", "p")],
    )


def test_validate_strong_coloring(fig1):
    c = Coloring(2, OBRIEN_FIG1)
    report = validate_coloring(fig1, c)
    assert report.valid


def test_validate_rejects_shared_fiber_colors(fig1):
    bad = dict(OBRIEN_FIG1, rt=1)  # t now receives color 1 twice
    report = validate_coloring(fig1, Coloring(2, bad))
    assert not report.valid
    assert any(f.code == "not-strong" for f in report.findings)


def test_validate_flags_uncolored_and_out_of_range(fig1):
    partial = {k: v for k, v in OBRIEN_FIG1.items() if k != "lr"}
    report = validate_coloring(fig1, Coloring(2, partial))
    assert any(f.code == "uncolored-edge" for f in report.findings)
    report = validate_coloring(fig1, Coloring(2, dict(OBRIEN_FIG1, lr=7)))
    assert any(f.code == "color-out-of-range" for f in report.findings)


def test_backward_automaton_steps(fig1):
    c = Coloring(2, OBRIEN_FIG1)
    auto = backward_automaton(fig1, c)
    assert auto.step("t", 1) == ("t", "loop_t")
    assert auto.step("t", 2) == ("r", "rt")
    assert auto.step("l", 1) == ("t", "tl1")
    with pytest.raises(PartialAutomaton):
        auto.step("t", 9)


def test_backward_automaton_needs_strong_coloring(fig1):
    with pytest.raises(InvalidColoring):
        backward_automaton(fig1, Coloring(2, dict(OBRIEN_FIG1, rt=1)))


def test_follow_backward_reads_left_to_right(fig1):
    c = Coloring(2, OBRIEN_FIG1)
    src, path = follow_backward(fig1, c, "t", "12")
    # first letter is the edge applied last: loop_t at t, then rt into t
    assert src == "r"
    assert path.edges == ("loop_t", "rt")
    assert color_word(fig1, c, path) == "12"


def test_follow_backward_word_concatenation(rng, fig1):
    c = Coloring(2, OBRIEN_FIG1)
    for _ in range(30):
        w1 = "".join(rng.choice("12") for _ in range(rng.randint(0, 4)))
        w2 = "".join(rng.choice("12") for _ in range(rng.randint(0, 4)))
        v = rng.choice(sorted(fig1.vertices))
        mid, p1 = follow_backward(fig1, c, v, w1)
        end, p2 = follow_backward(fig1, c, mid, w2)
        whole_end, whole = follow_backward(fig1, c, v, w1 + w2)
        assert whole_end == end
        assert whole.edges == p1.edges + p2.edges


def test_is_synchronizing_word_matches_scan_oracle(rng, fig1):
    c = Coloring(2, OBRIEN_FIG1)
    for _ in range(40):
        word = "".join(rng.choice("12") for _ in range(rng.randint(0, 5)))
        assert is_synchronizing_word(fig1, c, word) == oracles.sync_target(
            fig1, c, word
        )


def test_find_synchronizing_word_is_shortest(fig1):
    c = Coloring(2, OBRIEN_FIG1)
    got = find_synchronizing_word(fig1, c)
    assert got is not None
    best = None
    for n in range(0, 6):
        for letters in itertools.product("12", repeat=n):
            word = "".join(letters)
            if oracles.sync_target(fig1, c, word):
                best = word
                break
        if best is not None:
            break
    assert len(got) == len(best)
    assert is_synchronizing_word(fig1, c, got)


def test_find_synchronizing_word_none_on_cycle():
    g = cycle_graph(2)
    c = Coloring(1, {"e1": 1, "e2": 1})
    assert find_synchronizing_word(g, c) is None


def test_greedy_merge_on_long_chain():
    # 25 vertices forces the pair-merge strategy; d = 1 so only one coloring
    n = 25
    verts = [f"w{i}" for i in range(n)]
    triples = [("loop", "w0", "w0")] + [
        (f"e{i}", f"w{i - 1}", f"w{i}") for i in range(1, n)
    ]
    g = Graph.build(verts, triples)
    c = Coloring(1, {eid: 1 for eid, _, _ in triples})
    word = find_synchronizing_word(g, c)
    assert word is not None
    assert oracles.sync_target(g, c, word) == "w0"


def test_search_on_figure_one(fig1):
    found = search_synchronizing_coloring(fig1)
    assert found is not None
    coloring, word = found
    assert validate_coloring(fig1, coloring).valid
    assert oracles.sync_target(fig1, coloring, word) is not None


def test_search_returns_none_on_periodic_graphs():
    for g in [cycle_graph(2), cycle_graph(3), doubled_two_cycle()]:
        assert search_synchronizing_coloring(g) is None


def test_search_requires_regular_in_degree():
    g = Graph.build(["a", "b"], [("e", "a", "b")])
    with pytest.raises(DomainError):
        search_synchronizing_coloring(g)


def test_obrien_coloring_frozen_expectation(fig1):
    coloring, word = obrien_coloring(fig1, "loop_t")
    assert word == "1"
    assert coloring.to_json_dict()["color"] == OBRIEN_FIG1
    assert oracles.sync_target(fig1, coloring, word) == "t"


def test_obrien_rejects_non_loop(fig1):
    with pytest.raises(DomainError):
        obrien_coloring(fig1, "tl1")


def test_syncdiag_produces_closed_path_with_word(rng, fig1):
    coloring, gamma = obrien_coloring(fig1, "loop_t")
    for _ in range(30):
        gamma_prime = "".join(rng.choice("12") for _ in range(rng.randint(0, 5)))
        diag = syncdiag_paths(fig1, coloring, gamma, gamma_prime)
        assert diag.vertex == "t"
        lam = diag.closed
        assert lam.base == "t"
        assert color_word(fig1, coloring, lam) == gamma_prime + gamma
        assert diag.color_word(fig1, coloring) == gamma_prime + gamma


def test_syncdiag_rejects_non_synchronizing_gamma(fig1):
    coloring, _ = obrien_coloring(fig1, "loop_t")
    with pytest.raises(DomainError):
        syncdiag_paths(fig1, coloring, "2", "1")


def test_synchronizing_guarantee_summary(fig1):
    out = synchronizing_guarantee(fig1)
    assert out["in_degree_regular"] and out["d"] == 2
    assert out["transitive"] and out["period"] == 1
    assert out["synchronizing_coloring"] is not None
    out2 = synchronizing_guarantee(cycle_graph(2))
    assert out2["period"] == 2
    assert out2["synchronizing_coloring"] is None


def test_coloring_json_round_trip(fig1):
    c = Coloring(2, OBRIEN_FIG1)
    assert Coloring.from_json_dict(c.to_json_dict()).to_json_dict() == c.to_json_dict()
