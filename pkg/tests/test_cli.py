import json

import pytest

from semigroupoid_kit import Coloring, Path, cycle_graph, looped_triangle
from semigroupoid_kit.cli import main
from semigroupoid_kit.serialize import (
    dump_json,
    explicit_atomic_to_json,
    formal_to_json,
)

OBRIEN_FIG1 = {"loop_t": 1, "tl1": 1, "tr": 1, "tl2": 2, "lr": 2, "rt": 2}


@pytest.fixture
def fig1_file(tmp_path, fig1):
    path = tmp_path / "fig1.json"
    path.write_text(dump_json(fig1.to_json_dict()))
    return str(path)


@pytest.fixture
def coloring_file(tmp_path):
    path = tmp_path / "coloring.json"
    path.write_text(dump_json(Coloring(2, OBRIEN_FIG1).to_json_dict()))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_graph_check_json(capsys, fig1_file):
    code, out, err = run(capsys, ["graph", "check", fig1_file])
    assert code == 0 and not err
    data = json.loads(out)
    assert data["valid"] is True


def test_graph_check_dot(capsys, fig1_file):
    code, out, _ = run(capsys, ["graph", "check", fig1_file, "--format", "dot"])
    assert code == 0
    assert out.startswith("digraph")
    assert '"t" -> "l"' in out


def test_graph_period_and_closure(capsys, fig1_file):
    code, out, _ = run(capsys, ["graph", "period", fig1_file, "--vertex", "t"])
    assert code == 0 and json.loads(out)["period"] == 1
    code, out, _ = run(capsys, ["graph", "closure", fig1_file, "--set", "l"])
    assert json.loads(out)["closure"] == ["l", "r", "t"]


def test_graph_ses(capsys, fig1_file):
    code, out, _ = run(capsys, ["graph", "ses", fig1_file])
    data = json.loads(out)
    assert data["has_ses"] is False
    assert data["g0"]["vertices"]


def test_paths_enum_table(capsys, fig1_file):
    code, out, _ = run(
        capsys,
        ["paths", "enum", fig1_file, "--source", "t", "--max-len", "1", "--format", "table"],
    )
    assert code == 0
    assert "count: 5" in out


def test_paths_cycles_json(capsys, fig1_file):
    code, out, _ = run(
        capsys, ["paths", "cycles", fig1_file, "--vertex", "t", "--max-len", "3"]
    )
    data = json.loads(out)
    assert data["count"] == 4


def test_paths_class(capsys, fig1_file):
    code, out, _ = run(capsys, ["paths", "class", fig1_file, "--vertex", "t"])
    assert json.loads(out)["class"] == "TwoPlus"


def test_series_pipeline(capsys, tmp_path, fig1, fig1_file):
    from semigroupoid_kit import FormalElement

    a = FormalElement(fig1, {Path.vertex("t"): 1.0, Path("t", ("tl1",)): 2.0})
    b = FormalElement(fig1, {Path.vertex("t"): 1.0})
    fa = tmp_path / "a.json"
    fb = tmp_path / "b.json"
    fa.write_text(dump_json(formal_to_json(a)))
    fb.write_text(dump_json(formal_to_json(b)))
    code, out, _ = run(
        capsys, ["series", "mul", str(fa), str(fb), "--graph", fig1_file]
    )
    assert code == 0
    data = json.loads(out)
    assert len(data["terms"]) == 2
    code, out, _ = run(
        capsys, ["series", "fourier", str(fa), "-m", "1", "--graph", fig1_file]
    )
    assert len(json.loads(out)["terms"]) == 1
    code, out, _ = run(
        capsys, ["series", "cesaro", str(fa), "-k", "2", "--graph", fig1_file]
    )
    assert code == 0
    code, out, _ = run(
        capsys, ["series", "ideal-degree", str(fa), "--graph", fig1_file]
    )
    assert json.loads(out)["degree"] == 0
    code, out, _ = run(
        capsys,
        ["series", "rownorm", str(fa), "-m", "1", "--vertex", "t", "--graph", fig1_file],
    )
    assert abs(json.loads(out)["value"] - 2.0) < 1e-12


def test_series_ideal_degree_of_zero_is_infinity(capsys, tmp_path, fig1, fig1_file):
    from semigroupoid_kit import FormalElement

    z = tmp_path / "z.json"
    z.write_text(dump_json(formal_to_json(FormalElement.zero(fig1))))
    code, out, _ = run(capsys, ["series", "ideal-degree", str(z), "--graph", fig1_file])
    assert json.loads(out)["degree"] == "infinity"


def test_atomic_subcommands(capsys, tmp_path, rng):
    import corpus

    g = corpus.random_graph(rng, max_v=4, max_e=5, acyclic=True)
    fam, fresh = corpus.random_root_family(rng, g)
    f = tmp_path / "fam.json"
    f.write_text(dump_json(explicit_atomic_to_json(fam)))
    code, out, _ = run(capsys, ["atomic", "validate", str(f)])
    assert code == 0 and json.loads(out)["valid"] is True
    code, out, _ = run(capsys, ["atomic", "classify", str(f)])
    atoms = json.loads(out)["atoms"]
    assert sum(a["multiplicity"] for a in atoms) == sum(fresh.values())
    code, out, _ = run(capsys, ["atomic", "wold", str(f)])
    data = json.loads(out)
    assert {v: m for v, m in data["alpha"].items() if m} == fresh
    code, out, _ = run(capsys, ["atomic", "equiv", str(f), str(f)])
    assert json.loads(out)["equivalent"] is True


def test_atomic_validate_dot_output(capsys, tmp_path, rng):
    import corpus

    g = corpus.random_graph(rng, max_v=3, max_e=3, acyclic=True)
    fam, _ = corpus.random_root_family(rng, g)
    f = tmp_path / "fam.json"
    f.write_text(dump_json(explicit_atomic_to_json(fam)))
    code, out, _ = run(capsys, ["atomic", "validate", str(f), "--format", "dot"])
    assert code == 0 and out.startswith("digraph")


def test_atomic_condm(capsys, tmp_path):
    from semigroupoid_kit import pure_cycle_family

    fam = pure_cycle_family(cycle_graph(2), laps=2)
    f = tmp_path / "cycle.json"
    f.write_text(dump_json(explicit_atomic_to_json(fam)))
    mu = json.dumps({"base": "v1", "edges": ["e2", "e1"]})
    code, out, _ = run(capsys, ["atomic", "condM", str(f), "--mu", mu])
    assert code == 0
    assert json.loads(out)["class"] == "Singular"


def test_color_subcommands(capsys, fig1_file, coloring_file):
    code, out, _ = run(capsys, ["color", "validate", fig1_file, coloring_file])
    assert code == 0 and json.loads(out)["valid"] is True
    code, out, _ = run(
        capsys, ["color", "sync-verify", fig1_file, coloring_file, "--word", "1"]
    )
    data = json.loads(out)
    assert data["synchronizing"] is True and data["target"] == "t"
    code, out, _ = run(capsys, ["color", "sync-find", fig1_file, coloring_file])
    assert json.loads(out)["word"] == "1"
    code, out, _ = run(capsys, ["color", "search", fig1_file])
    assert json.loads(out)["word"] is not None
    code, out, _ = run(capsys, ["color", "obrien", fig1_file, "--loop", "loop_t"])
    data = json.loads(out)
    assert data["word"] == "1"
    assert data["coloring"]["color"] == OBRIEN_FIG1
    code, out, _ = run(
        capsys,
        ["color", "syncdiag", fig1_file, coloring_file, "--gamma", "1", "--gamma2", "21"],
    )
    data = json.loads(out)
    assert data["colors"] == "211"
    assert data["vertex"] == "t"


def test_trunc_subcommands(capsys, tmp_path, fig1, fig1_file, coloring_file):
    code, out, _ = run(
        capsys, ["trunc", "build", fig1_file, "--sources", "t", "--depth", "2"]
    )
    data = json.loads(out)
    assert data["dim"] == 12 and data["kind"] == "left_regular"
    code, out, _ = run(
        capsys,
        ["trunc", "verify", fig1_file, "--coloring", coloring_file, "--depth", "3"],
    )
    data = json.loads(out)
    assert all(rel["max_residual"] == 0.0 for rel in data["relations"])
    code, out, _ = run(capsys, ["trunc", "cycle-lemma", "-n", "3", "--depth", "6"])
    assert json.loads(out)["ok"] is True
    from semigroupoid_kit import FormalElement

    elem = tmp_path / "elem.json"
    elem.write_text(
        dump_json(formal_to_json(FormalElement(fig1, {Path("t", ("tl1",)): 1.0})))
    )
    code, out, _ = run(
        capsys,
        ["trunc", "apply", fig1_file, str(elem), "--sources", "t", "--depth", "2"],
    )
    assert code == 0 and json.loads(out)["entries"]


def test_domain_error_exits_one_with_json(capsys, tmp_path):
    missing = str(tmp_path / "missing.json")
    code, out, err = run(capsys, ["graph", "check", missing])
    assert code == 1 and not out
    data = json.loads(err)
    assert data["error"]


def test_usage_error_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["graph", "nope"])
    assert exc.value.code == 2


def test_trunc_needs_sources_or_coloring(capsys, fig1_file):
    code, out, err = run(capsys, ["trunc", "verify", fig1_file])
    assert code == 1
    assert "sources" in json.loads(err)["message"]
